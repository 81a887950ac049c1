//! Seeded random graph generators used by the examples and test suites.

use rand::Rng;

use crate::graph::{graph_from_edges, NetworkGraph};
use crate::rng::{stream, stream_rng};

/// Erdős–Rényi G(n, p) on ids `0..n`.
pub fn gnp(n: u32, p: f64, seed: u64) -> NetworkGraph {
    let mut rng = stream_rng(seed, stream::GENERATOR);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    graph_from_edges(0..n, &edges)
}

/// Planted partition: `blocks` groups of `block_size` consecutive ids,
/// edge probability `p_in` inside a group and `p_out` across groups.
pub fn planted_partition(blocks: u32, block_size: u32, p_in: f64, p_out: f64, seed: u64) -> NetworkGraph {
    let n = blocks * block_size;
    let mut rng = stream_rng(seed, stream::GENERATOR);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let p = if u / block_size == v / block_size { p_in } else { p_out };
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    graph_from_edges(0..n, &edges)
}

/// Two cliques of size `k` (ids `0..k` and `k..2k`) joined by the edge `(k-1, k)`.
pub fn bridged_cliques(k: u32) -> NetworkGraph {
    let mut edges = Vec::new();
    for base in [0, k] {
        for u in 0..k {
            for v in (u + 1)..k {
                edges.push((base + u, base + v));
            }
        }
    }
    edges.push((k - 1, k));
    graph_from_edges(0..2 * k, &edges)
}
