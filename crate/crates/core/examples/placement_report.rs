//! Compare hops-to-leader under Phase One communities and a random partition.

use cnplace::community::{group_by_labels, propagate_labels, random_equal_partition};
use cnplace::election::{ElectionMode, Heuristic, WeightConfig};
use cnplace::generate::planted_partition;
use cnplace::metrics::{compare_partitions, ReportOptions};

fn main() -> cnplace::Result<()> {
    let g = planted_partition(10, 100, 0.2, 0.002, 3);
    let phase_one = group_by_labels(&g, &propagate_labels(&g, 10)?)?;
    let random = random_equal_partition(&g, phase_one.len(), 3)?;
    let mode = ElectionMode::Weighted(WeightConfig::absolute(Heuristic::Betweenness));
    let cmp = compare_partitions(&g, &phase_one, &random, &mode, ReportOptions::default())?;

    print!("{}", cmp.a.to_csv()?);
    println!("phase one: {:?}", cmp.summary_a);
    println!("random:    {:?}", cmp.summary_b);
    Ok(())
}
