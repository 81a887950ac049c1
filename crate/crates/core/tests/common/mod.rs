#![allow(dead_code)]

use std::collections::BTreeMap;

use cnplace::graph::{EdgeAttributes, GraphBuilder, NetworkGraph, NodeAttributes, NodeId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INF: usize = usize::MAX / 4;

/// All-pairs distances by Floyd-Warshall (independent of the BFS code).
pub fn all_pairs(g: &NetworkGraph) -> Vec<Vec<usize>> {
    let adj = g.adjacency();
    let n = adj.len();
    let mut d = vec![vec![INF; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = 0;
        for &v in &adj[u] {
            row[v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Brute force: list every shortest path of every unordered pair and count
/// how often each node sits strictly inside one.
pub fn oracle_betweenness(g: &NetworkGraph) -> BTreeMap<NodeId, f64> {
    let adj = g.adjacency();
    let d = all_pairs(g);
    let n = adj.len();
    let mut score = vec![0.0; n];
    for s in 0..n {
        for t in (s + 1)..n {
            if d[s][t] >= INF {
                continue;
            }
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut stack = vec![vec![s]];
            while let Some(path) = stack.pop() {
                let v = *path.last().unwrap();
                if v == t {
                    paths.push(path);
                    continue;
                }
                for &w in &adj[v] {
                    if d[s][w] == d[s][v] + 1 && d[w][t] + 1 == d[v][t] {
                        let mut next = path.clone();
                        next.push(w);
                        stack.push(next);
                    }
                }
            }
            let total = paths.len() as f64;
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    score[v] += 1.0 / total;
                }
            }
        }
    }
    g.node_ids().iter().copied().zip(score).collect()
}

pub fn oracle_closeness(g: &NetworkGraph) -> BTreeMap<NodeId, f64> {
    let d = all_pairs(g);
    let n = d.len();
    g.node_ids()
        .iter()
        .enumerate()
        .map(|(i, &id)| {
            let sum: usize = d[i].iter().filter(|&&x| x > 0 && x < INF).sum();
            (id, if sum == 0 { 0.0 } else { (n - 1) as f64 / sum as f64 })
        })
        .collect()
}

/// G(n, p) with random node attributes and no edge measurements.
pub fn random_attributed(rng: &mut ChaCha8Rng, n: u32, p: f64) -> NetworkGraph {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        let attrs = NodeAttributes {
            availability: Some(rng.random_range(0.8..1.0)),
            latency_ms: Some(rng.random_range(1.0..80.0)),
            device_count: rng.random_range(1..4),
            is_server: rng.random_bool(0.1),
            synthetic: false,
        };
        b.add_node(NodeId(i), i.to_string(), attrs).unwrap();
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                b.add_edge(NodeId(u), NodeId(v), EdgeAttributes::default()).unwrap();
            }
        }
    }
    b.build()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Raw heuristic values in "larger is better" orientation (latency negated).
pub fn raw_heuristics(g: &NetworkGraph) -> BTreeMap<NodeId, [f64; 5]> {
    let b = oracle_betweenness(g);
    let c = oracle_closeness(g);
    g.node_ids()
        .iter()
        .map(|&id| {
            let a = g.attributes(id).unwrap();
            (
                id,
                [b[&id], c[&id], a.availability.unwrap(), -a.latency_ms.unwrap(), a.comp_class().value()],
            )
        })
        .collect()
}

/// The node that weakly dominates every other node on all positively
/// weighted heuristics and strictly beats each of them on at least one.
pub fn dominator(h: &BTreeMap<NodeId, [f64; 5]>, w: &[f64; 5]) -> Option<NodeId> {
    let active: Vec<usize> = (0..5).filter(|&i| w[i] > 0.0).collect();
    'outer: for (&x, hx) in h {
        for (&y, hy) in h {
            if x == y {
                continue;
            }
            let weak = active.iter().all(|&i| hx[i] >= hy[i]);
            let strict = active.iter().any(|&i| hx[i] > hy[i]);
            if !(weak && strict) {
                continue 'outer;
            }
        }
        return Some(x);
    }
    None
}
