use std::collections::{BTreeSet, VecDeque};

use cnplace::community::{check_partition, group_by_labels, propagate_labels, random_partition, LabelState};
use cnplace::generate::{bridged_cliques, gnp};
use cnplace::graph::{NetworkGraph, NodeId};
use proptest::prelude::*;

fn reachable(g: &NetworkGraph, from: NodeId) -> BTreeSet<NodeId> {
    let mut seen = BTreeSet::from([from]);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

#[test]
fn bridged_cliques_split_in_two() {
    for k in 3..8 {
        let g = bridged_cliques(k);
        let comms = group_by_labels(&g, &propagate_labels(&g, 10).unwrap()).unwrap();
        let sets: Vec<Vec<u32>> = comms.iter().map(|c| c.members.iter().map(|id| id.0).collect()).collect();
        assert_eq!(sets.len(), 2, "k={k}");
        assert!(sets.contains(&(0..k).collect()) && sets.contains(&(k..2 * k).collect()), "k={k}: {sets:?}");
    }
}

#[test]
fn random_partition_matches_sizes() {
    let g = gnp(30, 0.1, 4);
    let parts = random_partition(&g, &[10, 15, 5], 9).unwrap();
    assert_eq!(parts.iter().map(|c| c.size()).collect::<Vec<_>>(), vec![10, 15, 5]);
    check_partition(&g, &parts).unwrap();
    assert_eq!(parts, random_partition(&g, &[10, 15, 5], 9).unwrap());
}

proptest! {
    #[test]
    fn lpa_invariants(n in 1u32..60, p in 0.0f64..0.4, seed in any::<u64>(), max_iters in 1usize..12) {
        let g = gnp(n, p, seed);
        let s = propagate_labels(&g, max_iters).unwrap();
        prop_assert!(s.iteration <= max_iters);
        prop_assert_eq!(&s, &propagate_labels(&g, max_iters).unwrap());

        let comms = group_by_labels(&g, &s).unwrap();
        check_partition(&g, &comms).unwrap();
        let total: usize = comms.iter().map(|c| c.size()).sum();
        prop_assert_eq!(total, g.node_count());

        let initial = LabelState::initial(&g);
        for &v in g.node_ids() {
            let label = s.labels[&v];
            let origin = reachable(&g, v).into_iter().any(|u| initial.labels[&u] == label);
            prop_assert!(origin, "label {} of {} is not an initial label it can reach", label, v);
        }
    }
}
