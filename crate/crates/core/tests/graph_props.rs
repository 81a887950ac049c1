use std::collections::BTreeSet;

use cnplace::generate::gnp;
use cnplace::graph::{
    connected_components, graph_from_snapshot, largest_component, parse_snapshot, prune_leaves, NodeId, Snapshot,
    SnapshotFormat, SnapshotLink, SnapshotNode,
};
use cnplace::Error;
use proptest::prelude::*;

fn fixture(name: &str) -> Vec<u8> {
    std::fs::read(format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn fixture_ingest() {
    let g = parse_snapshot(&fixture("two_k5_bridge.json"), SnapshotFormat::Json).unwrap();
    // the non-working node and its link are dropped; the doubled bridge merges
    assert_eq!((g.node_count(), g.edge_count()), (11, 22));
    let (a, b) = (g.find_alias("n4").unwrap(), g.find_alias("n5").unwrap());
    let e = g.edge(a, b).unwrap();
    assert_eq!((e.bandwidth_mbps, e.rtt_ms), (Some(20.0), Some(8.5)));
    let pruned = prune_leaves(&g);
    assert_eq!((pruned.node_count(), pruned.edge_count()), (10, 21));
}

#[test]
fn csv_and_json_fixtures_agree_on_topology() {
    let j = parse_snapshot(&fixture("two_k5_bridge.json"), SnapshotFormat::Json).unwrap();
    let c = parse_snapshot(&fixture("two_k5_bridge.csv"), SnapshotFormat::Csv).unwrap();
    let names = |g: &cnplace::NetworkGraph| -> BTreeSet<(String, String)> {
        g.edges()
            .map(|(u, v, _)| {
                let (a, b) = (g.alias(u).unwrap().to_string(), g.alias(v).unwrap().to_string());
                if a < b { (a, b) } else { (b, a) }
            })
            .collect()
    };
    assert_eq!(names(&j), names(&c));
}

#[test]
fn malformed_fixture_is_a_parse_error() {
    assert!(matches!(parse_snapshot(&fixture("malformed.json"), SnapshotFormat::Json), Err(Error::Parse(_))));
}

#[test]
fn pruning_is_single_pass() {
    // path 0-1-2-3: one pass removes the ends, a second pass removes the rest
    let g = cnplace::graph::graph_from_edges(0..4, &[(0, 1), (1, 2), (2, 3)]);
    let once = prune_leaves(&g);
    assert_eq!(once.node_count(), 2);
    assert_eq!(prune_leaves(&once).node_count(), 0);
}

fn snapshot_strategy() -> impl Strategy<Value = Snapshot> {
    (1usize..12, prop::collection::vec((0usize..12, 0usize..12, any::<bool>()), 0..30), prop::collection::vec(any::<bool>(), 12))
        .prop_map(|(n, links, working)| Snapshot {
            manifest: None,
            nodes: (0..n)
                .map(|i| SnapshotNode {
                    id: format!("v{i}"),
                    working: working[i],
                    is_server: false,
                    device_count: 1,
                    availability_pct: None,
                    latency_ms: None,
                    synthetic: false,
                })
                .collect(),
            links: links
                .into_iter()
                .map(|(a, b, w)| SnapshotLink {
                    a: format!("v{}", a % n),
                    b: format!("v{}", b % n),
                    working: w,
                    bandwidth_mbps: None,
                    rtt_ms: None,
                    synthetic: false,
                })
                .collect(),
        })
}

proptest! {
    #[test]
    fn parsed_graphs_are_simple_and_symmetric(doc in snapshot_strategy()) {
        let g = graph_from_snapshot(&doc).unwrap();
        for &u in g.node_ids() {
            let nbrs: Vec<NodeId> = g.neighbors(u).collect();
            prop_assert!(!nbrs.contains(&u));
            for &v in &nbrs {
                prop_assert!(g.neighbors(v).any(|w| w == u));
            }
        }
        let working = doc.nodes.iter().filter(|n| n.working).count();
        prop_assert_eq!(g.node_count(), working);
    }

    #[test]
    fn components_partition_the_graph(n in 1u32..40, p in 0.0f64..0.3, seed in any::<u64>()) {
        let g = gnp(n, p, seed);
        let comps = connected_components(&g);
        let mut seen = BTreeSet::new();
        for c in &comps {
            for id in c {
                prop_assert!(seen.insert(*id));
            }
        }
        prop_assert_eq!(seen.len(), g.node_count());
        let lcc = largest_component(&g).unwrap();
        let members: BTreeSet<NodeId> = lcc.node_ids().iter().copied().collect();
        prop_assert_eq!(lcc.node_count(), comps[0].len());
        let expected = g.edges().filter(|(u, v, _)| members.contains(u) && members.contains(v)).count();
        prop_assert_eq!(lcc.edge_count(), expected);
    }
}
