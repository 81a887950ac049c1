//! Phase Two: rank the nodes of each community under a few weight configurations.

use cnplace::community::{group_by_labels, propagate_labels};
use cnplace::election::{elect_in_community, ElectionMode, Heuristic, WeightConfig};
use cnplace::graph::{parse_snapshot, prune_leaves, SnapshotFormat};

fn main() -> cnplace::Result<()> {
    let raw = std::fs::read(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/two_k5_bridge.json"))?;
    let g = prune_leaves(&parse_snapshot(&raw, SnapshotFormat::Json)?);
    let comms = group_by_labels(&g, &propagate_labels(&g, 10)?)?;

    let modes = [
        ("betweenness", ElectionMode::Weighted(WeightConfig::absolute(Heuristic::Betweenness))),
        ("device class", ElectionMode::Weighted(WeightConfig::absolute(Heuristic::CompClass))),
        ("latency + class", ElectionMode::Weighted(WeightConfig::combined(Heuristic::Latency, Heuristic::CompClass, 0.3)?)),
        ("random", ElectionMode::Random { seed: 7 }),
    ];
    for (name, mode) in &modes {
        let leaders: Vec<String> = comms
            .iter()
            .map(|c| {
                let r = elect_in_community(c, mode)?;
                Ok(g.alias(r.leader()).unwrap_or_default().to_string())
            })
            .collect::<cnplace::Result<_>>()?;
        println!("{name:>16}: leaders {leaders:?}");
    }
    Ok(())
}
