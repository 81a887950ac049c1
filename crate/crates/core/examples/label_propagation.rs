//! Phase One on a planted-partition graph: synchronous label propagation.

use cnplace::community::{group_by_labels, propagate_labels, DEFAULT_MAX_ITERS};
use cnplace::generate::planted_partition;

fn main() -> cnplace::Result<()> {
    let g = planted_partition(4, 25, 0.4, 0.02, 1);
    let state = propagate_labels(&g, DEFAULT_MAX_ITERS)?;
    println!("supersteps: {} (still changing: {})", state.iteration, state.changed);
    for c in group_by_labels(&g, &state)? {
        let first: Vec<u32> = c.members.iter().take(8).map(|id| id.0).collect();
        println!("label {:>3}: {:>3} nodes, starts {first:?}", c.label, c.size());
    }
    Ok(())
}
