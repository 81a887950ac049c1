//! Betweenness and closeness centrality on unweighted (hop-count) graphs.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;

use crate::graph::{NetworkGraph, NodeId};

/// Sources handled per parallel task. Partial sums are merged in chunk
/// order, so the result does not depend on thread scheduling.
const SOURCE_CHUNK: usize = 64;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CentralityScores {
    pub betweenness: BTreeMap<NodeId, f64>,
    pub closeness: BTreeMap<NodeId, f64>,
}

impl CentralityScores {
    pub fn compute(g: &NetworkGraph) -> Self {
        CentralityScores {
            betweenness: betweenness(g),
            closeness: closeness(g),
        }
    }
}

/// Brandes single-source pass: adds the dependencies of `s` into `acc`.
fn accumulate_source(adj: &[Vec<usize>], s: usize, acc: &mut [f64], scratch: &mut Scratch) {
    let Scratch {
        sigma,
        dist,
        delta,
        order,
        queue,
    } = scratch;
    sigma.fill(0.0);
    dist.fill(usize::MAX);
    delta.fill(0.0);
    order.clear();
    queue.clear();

    sigma[s] = 1.0;
    dist[s] = 0;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
            }
        }
    }
    for &w in order.iter().rev() {
        for &v in &adj[w] {
            if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
        }
        if w != s {
            acc[w] += delta[w];
        }
    }
}

struct Scratch {
    sigma: Vec<f64>,
    dist: Vec<usize>,
    delta: Vec<f64>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            sigma: vec![0.0; n],
            dist: vec![0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }
}

/// Exact unnormalized betweenness, counting each unordered pair `{u, v}` once.
/// Pairs in different components contribute nothing.
pub fn betweenness(g: &NetworkGraph) -> BTreeMap<NodeId, f64> {
    let adj = g.adjacency();
    let n = adj.len();
    let partials: Vec<Vec<f64>> = (0..n)
        .collect::<Vec<_>>()
        .par_chunks(SOURCE_CHUNK)
        .map(|sources| {
            let mut acc = vec![0.0; n];
            let mut scratch = Scratch::new(n);
            for &s in sources {
                accumulate_source(adj, s, &mut acc, &mut scratch);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    // Every unordered pair was visited from both endpoints.
    g.node_ids()
        .iter()
        .zip(total)
        .map(|(&id, b)| (id, b / 2.0))
        .collect()
}

fn bfs_distance_sum(adj: &[Vec<usize>], s: usize, dist: &mut [usize], queue: &mut VecDeque<usize>) -> (usize, usize) {
    dist.fill(usize::MAX);
    queue.clear();
    dist[s] = 0;
    queue.push_back(s);
    let (mut sum, mut reached) = (0, 0);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                sum += dist[w];
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    (sum, reached)
}

/// Closeness `(n - 1) / Σ d(i, v)` with `n` the node count of `g`. Unreachable
/// nodes are left out of the sum; a node that reaches nobody scores 0.
pub fn closeness(g: &NetworkGraph) -> BTreeMap<NodeId, f64> {
    let adj = g.adjacency();
    let n = adj.len();
    let scores: Vec<f64> = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0usize; n], VecDeque::new()),
            |(dist, queue), s| {
                let (sum, reached) = bfs_distance_sum(adj, s, dist, queue);
                if reached == 0 {
                    0.0
                } else {
                    (n - 1) as f64 / sum as f64
                }
            },
        )
        .collect();
    g.node_ids().iter().copied().zip(scores).collect()
}
