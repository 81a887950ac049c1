//! Fill in missing link and node measurements from fitted models.

use cnplace::graph::{parse_snapshot, SnapshotFormat};
use cnplace::metrics::pearson;
use cnplace::netmodel::{synthesize_attributes, GevParams, Kappa4Params, SynthesisParams};

fn main() -> cnplace::Result<()> {
    let raw = std::fs::read(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/mesh.json"))?;
    let g = parse_snapshot(&raw, SnapshotFormat::Json)?;
    let missing = g.edges().filter(|(_, _, e)| e.bandwidth_mbps.is_none() || e.rtt_ms.is_none()).count();
    println!("{} links, {missing} with a missing measurement", g.edge_count());

    let params = SynthesisParams::new(Kappa4Params::new(20.0, 15.0, 0.2, 0.4)?, GevParams::new(10.0, 3.0, -0.1)?);
    let filled = synthesize_attributes(&g, &params, 42);
    let (bw, rtt): (Vec<f64>, Vec<f64>) = filled
        .edges()
        .filter(|(_, _, e)| e.synthetic)
        .map(|(_, _, e)| (e.bandwidth_mbps.unwrap(), e.rtt_ms.unwrap()))
        .unzip();
    println!("synthesized {} links; corr(bw, rtt) = {:.3}", bw.len(), pearson(&bw, &rtt)?);
    let nodes = filled.node_ids().iter().filter(|&&id| filled.attributes(id).unwrap().synthetic).count();
    println!("synthesized attributes on {nodes} nodes");
    Ok(())
}
