//! Parse a snapshot, drop leaves and keep the largest connected component.
//!
//! cargo run --example ingest_and_preprocess -- tests/fixtures/two_k5_bridge.json

use cnplace::graph::{connected_components, largest_component, parse_snapshot, prune_leaves, SnapshotFormat};

fn main() -> cnplace::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/two_k5_bridge.json").into());
    let format = if path.ends_with(".csv") { SnapshotFormat::Csv } else { SnapshotFormat::Json };
    let g = parse_snapshot(&std::fs::read(&path)?, format)?;
    println!("parsed: {} nodes, {} edges", g.node_count(), g.edge_count());

    let pruned = prune_leaves(&g);
    println!("after pruning leaves: {} nodes, {} edges", pruned.node_count(), pruned.edge_count());

    let sizes: Vec<usize> = connected_components(&pruned).iter().map(|c| c.len()).collect();
    println!("component sizes: {sizes:?}");
    let lcc = largest_component(&pruned)?;
    println!("largest component: {} nodes", lcc.node_count());
    Ok(())
}
