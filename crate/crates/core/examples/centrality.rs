//! Betweenness and closeness on a small graph.

use cnplace::graph::graph_from_edges;
use cnplace::CentralityScores;

fn main() {
    // a path 0-1-2-3 with a spur 1-4
    let g = graph_from_edges(0..5, &[(0, 1), (1, 2), (2, 3), (1, 4)]);
    let s = CentralityScores::compute(&g);
    println!("node  betweenness  closeness");
    for id in g.node_ids() {
        println!("{:>4}  {:>11.3}  {:>9.3}", id, s.betweenness[id], s.closeness[id]);
    }
}
