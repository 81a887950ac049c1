//! Leader election inside a community.
//!
//! Every node of the community's largest connected component gets five
//! heuristic values: betweenness (`a1`), closeness (`a2`), availability
//! (`b1`), latency (`b2`) and computational class (`b3`). Each heuristic is
//! min-max normalized over the component so that higher is better (latency
//! is inverted), and a node's score is the weighted sum of its normalized
//! values. Nodes are ranked by decreasing score, ties by ascending id.
//!
//! Centralities are computed per community by the caller (see
//! [`elect_in_community`]) rather than by each vertex, which yields the same
//! numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::centrality::CentralityScores;
use crate::community::Community;
use crate::error::{Error, Result};
use crate::graph::{largest_component, NetworkGraph, NodeId};
use crate::rng::{derive_seed, stream, stream_rng};

/// Scores closer than this (on the weight-sum-normalized scale) rank as ties.
const SCORE_RESOLUTION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Heuristic {
    #[serde(rename = "a1")]
    Betweenness,
    #[serde(rename = "a2")]
    Closeness,
    #[serde(rename = "b1")]
    Availability,
    #[serde(rename = "b2")]
    Latency,
    #[serde(rename = "b3")]
    CompClass,
}

impl Heuristic {
    pub const ALL: [Heuristic; 5] = [
        Heuristic::Betweenness,
        Heuristic::Closeness,
        Heuristic::Availability,
        Heuristic::Latency,
        Heuristic::CompClass,
    ];

    /// 1-based position in the weight vector.
    pub fn index(self) -> usize {
        self as usize + 1
    }

    pub fn from_index(h: usize) -> Result<Self> {
        h.checked_sub(1)
            .and_then(|i| Self::ALL.get(i).copied())
            .ok_or_else(|| Error::InvalidArgument(format!("heuristic index {h} is outside 1..=5")))
    }

    pub fn code(self) -> &'static str {
        ["a1", "a2", "b1", "b2", "b3"][self as usize]
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|h| h.code() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown heuristic `{s}` (expected a1, a2, b1, b2 or b3)")))
    }
}

/// Non-negative weights over `[a1, a2, b1, b2, b3]`, not all zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WeightConfig([f64; 5]);

impl WeightConfig {
    pub fn new(w: [f64; 5]) -> Result<Self> {
        if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::InvalidArgument(format!("weights must be finite and non-negative: {w:?}")));
        }
        if w.iter().all(|&x| x == 0.0) {
            return Err(Error::InvalidArgument("at least one weight must be positive".into()));
        }
        Ok(WeightConfig(w))
    }

    pub fn weights(&self) -> [f64; 5] {
        self.0
    }

    pub fn weight(&self, h: Heuristic) -> f64 {
        self.0[h as usize]
    }

    /// Whether scoring reads node availability or latency.
    pub fn needs_attributes(&self) -> bool {
        self.weight(Heuristic::Availability) > 0.0 || self.weight(Heuristic::Latency) > 0.0
    }

    pub fn absolute(h: Heuristic) -> Self {
        let mut w = [0.0; 5];
        w[h as usize] = 1.0;
        WeightConfig(w)
    }

    /// `(1 - f)` on `m1`, `f` on `m2`.
    pub fn combined(m1: Heuristic, m2: Heuristic, f: f64) -> Result<Self> {
        if m1 == m2 {
            return Err(Error::InvalidArgument(format!("combined heuristics must differ, got {m1} twice")));
        }
        if !(f > 0.0 && f < 1.0) {
            return Err(Error::InvalidArgument(format!("combination fraction must lie in (0, 1), got {f}")));
        }
        let mut w = [0.0; 5];
        w[m1 as usize] = 1.0 - f;
        w[m2 as usize] = f;
        Ok(WeightConfig(w))
    }

    /// Multiply every weight by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::InvalidArgument(format!("scale factor must be positive, got {factor}")));
        }
        WeightConfig::new(self.0.map(|w| w * factor))
    }
}

/// Weight vector selecting a single heuristic by 1-based index.
pub fn absolute_config(h: usize) -> Result<WeightConfig> {
    Heuristic::from_index(h).map(WeightConfig::absolute)
}

pub fn combined_config(m1: usize, m2: usize, f: f64) -> Result<WeightConfig> {
    WeightConfig::combined(Heuristic::from_index(m1)?, Heuristic::from_index(m2)?, f)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeScore {
    pub node: NodeId,
    pub score: f64,
    /// Normalized heuristic values in weight-vector order.
    pub components: [f64; 5],
}

/// Nodes of a community's largest component, best first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ranking {
    pub ordered: Vec<NodeScore>,
}

impl Ranking {
    pub fn leader(&self) -> NodeId {
        self.ordered[0].node
    }

    pub fn order(&self) -> Vec<NodeId> {
        self.ordered.iter().map(|s| s.node).collect()
    }
}

/// List of `node:field` pairs lacking a value needed for scoring.
pub fn missing_attributes(g: &NetworkGraph) -> Vec<String> {
    let mut missing = Vec::new();
    for &id in g.node_ids() {
        let a = g.attributes(id).expect("id comes from the graph");
        let name = g.alias(id).unwrap_or_default();
        if a.availability.is_none() {
            missing.push(format!("{name}:availability"));
        }
        if a.latency_ms.is_none() {
            missing.push(format!("{name}:latency_ms"));
        }
    }
    missing
}

fn min_max(values: &mut [f64]) {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    let range = hi - lo;
    let scale = lo.abs().max(hi.abs()).max(1.0);
    if range <= 1e-12 * scale {
        values.fill(0.5);
    } else {
        for v in values.iter_mut() {
            *v = (*v - lo) / range;
        }
    }
}

/// Per-node heuristic vectors over the community's largest component,
/// min-max normalized to `[0, 1]` with latency inverted. A heuristic that is
/// constant over the component maps to 0.5 everywhere.
pub fn normalize_heuristics(c: &Community, cent: &CentralityScores) -> Result<BTreeMap<NodeId, [f64; 5]>> {
    normalize_with(c, cent, true)
}

/// With `require_attributes` off, a missing availability or latency value
/// makes that whole column constant (0.5).
fn normalize_with(c: &Community, cent: &CentralityScores, require_attributes: bool) -> Result<BTreeMap<NodeId, [f64; 5]>> {
    let comp = largest_component(&c.subgraph)?;
    let missing = missing_attributes(&comp);
    if require_attributes && !missing.is_empty() {
        return Err(Error::MissingAttributes(missing));
    }
    let ids = comp.node_ids();
    let mut columns: [Vec<f64>; 5] = Default::default();
    for &id in ids {
        let score = |m: &BTreeMap<NodeId, f64>, what: &str| {
            m.get(&id)
                .copied()
                .ok_or_else(|| Error::Consistency(format!("no {what} score for node {id}")))
        };
        let a = comp.attributes(id).expect("id comes from the component");
        columns[0].push(score(&cent.betweenness, "betweenness")?);
        columns[1].push(score(&cent.closeness, "closeness")?);
        columns[2].push(a.availability.unwrap_or(f64::NAN));
        columns[3].push(a.latency_ms.unwrap_or(f64::NAN));
        columns[4].push(a.comp_class().value());
    }
    for col in columns.iter_mut() {
        if col.iter().any(|x| x.is_nan()) {
            col.fill(0.5);
        } else {
            min_max(col);
        }
    }
    for v in columns[Heuristic::Latency as usize].iter_mut() {
        *v = 1.0 - *v;
    }
    Ok(ids
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, std::array::from_fn(|k| columns[k][i])))
        .collect())
}

fn dot(w: &[f64; 5], x: &[f64; 5]) -> f64 {
    w.iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Score and rank the largest component of `c`.
pub fn elect(c: &Community, cent: &CentralityScores, w: &WeightConfig) -> Result<Ranking> {
    let normalized = normalize_with(c, cent, w.needs_attributes())?;
    let weights = w.weights();
    let total: f64 = weights.iter().sum();
    let unit = weights.map(|x| x / total);

    let mut keyed: Vec<(i64, NodeScore)> = normalized
        .into_iter()
        .map(|(node, components)| {
            // Rank on a scale-free, quantized key so that rescaling the
            // weights cannot reorder nodes through rounding noise.
            let key = (dot(&unit, &components) / SCORE_RESOLUTION).round() as i64;
            let score = dot(&weights, &components);
            (key, NodeScore { node, score, components })
        })
        .collect();
    keyed.sort_by(|(ka, a), (kb, b)| kb.cmp(ka).then(a.node.cmp(&b.node)));
    Ok(Ranking {
        ordered: keyed.into_iter().map(|(_, s)| s).collect(),
    })
}

/// Baseline: uniformly random order of the largest component, seeded per
/// community. Scores are positional (`len - position`) and components zero.
pub fn elect_random(c: &Community, seed: u64) -> Result<Ranking> {
    let comp = largest_component(&c.subgraph)?;
    let mut ids = comp.node_ids().to_vec();
    let mut rng = stream_rng(derive_seed(seed, u64::from(c.label)), stream::ELECTION);
    ids.shuffle(&mut rng);
    let n = ids.len();
    Ok(Ranking {
        ordered: ids
            .into_iter()
            .enumerate()
            .map(|(pos, node)| NodeScore {
                node,
                score: (n - pos) as f64,
                components: [0.0; 5],
            })
            .collect(),
    })
}

/// How leaders are chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ElectionMode {
    Weighted(WeightConfig),
    Random { seed: u64 },
}

impl ElectionMode {
    pub fn needs_attributes(&self) -> bool {
        matches!(self, ElectionMode::Weighted(w) if w.needs_attributes())
    }
}

/// Run Phase Two for one community: centralities on its largest component,
/// then [`elect`] (or the random baseline).
pub fn elect_in_community(c: &Community, mode: &ElectionMode) -> Result<Ranking> {
    match mode {
        ElectionMode::Weighted(w) => {
            let comp = largest_component(&c.subgraph)?;
            let cent = CentralityScores::compute(&comp);
            elect(c, &cent, w)
        }
        ElectionMode::Random { seed } => elect_random(c, *seed),
    }
}

/// Weight configuration file.
///
/// ```json
/// {"mode": "combined", "m1": "a1", "m2": "b2", "f": 0.6}
/// ```
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightFile {
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heuristic: Option<Heuristic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m1: Option<Heuristic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m2: Option<Heuristic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<[f64; 5]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl WeightFile {
    /// Turn the file into an election mode. Random mode takes its seed from
    /// the file, else from `fallback_seed`.
    pub fn resolve(&self, fallback_seed: Option<u64>) -> Result<ElectionMode> {
        let need = |field: &str| Error::InvalidArgument(format!("mode `{}` requires field `{field}`", self.mode));
        match self.mode.as_str() {
            "absolute" => {
                let h = self.heuristic.ok_or_else(|| need("heuristic"))?;
                Ok(ElectionMode::Weighted(WeightConfig::absolute(h)))
            }
            "combined" => {
                let m1 = self.m1.ok_or_else(|| need("m1"))?;
                let m2 = self.m2.ok_or_else(|| need("m2"))?;
                let f = self.f.ok_or_else(|| need("f"))?;
                Ok(ElectionMode::Weighted(WeightConfig::combined(m1, m2, f)?))
            }
            "explicit" => {
                let w = self.weights.ok_or_else(|| need("weights"))?;
                Ok(ElectionMode::Weighted(WeightConfig::new(w)?))
            }
            "random" => {
                let seed = self.seed.or(fallback_seed).ok_or_else(|| need("seed"))?;
                Ok(ElectionMode::Random { seed })
            }
            other => Err(Error::InvalidArgument(format!(
                "unknown weight mode `{other}` (expected absolute, combined, explicit or random)"
            ))),
        }
    }

    /// Compact command-line form:
    ///
    /// * `b3` or `absolute:b3`
    /// * `combined:a1,b2,0.6`
    /// * `explicit:1,0,0,0.5,0`
    /// * `random` or `random:7` (seed; otherwise the run's seed is used)
    pub fn from_spec(spec: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse weight spec `{spec}`"));
        let (mode, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let parts: Vec<&str> = rest.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let mut file = WeightFile::default();
        match mode {
            "random" if parts.len() <= 1 => {
                file.mode = "random".into();
                if let Some(seed) = parts.first() {
                    file.seed = Some(seed.parse().map_err(|_| bad())?);
                }
            }
            "absolute" if parts.len() == 1 => {
                file.mode = "absolute".into();
                file.heuristic = Some(parts[0].parse()?);
            }
            "combined" if parts.len() == 3 => {
                file.mode = "combined".into();
                file.m1 = Some(parts[0].parse()?);
                file.m2 = Some(parts[1].parse()?);
                file.f = Some(parts[2].parse().map_err(|_| bad())?);
            }
            "explicit" if parts.len() == 5 => {
                file.mode = "explicit".into();
                let mut w = [0.0; 5];
                for (slot, p) in w.iter_mut().zip(&parts) {
                    *slot = p.parse().map_err(|_| bad())?;
                }
                file.weights = Some(w);
            }
            h if rest.is_empty() && h.parse::<Heuristic>().is_ok() => {
                file.mode = "absolute".into();
                file.heuristic = h.parse().ok();
            }
            _ => return Err(bad()),
        }
        Ok(file)
    }
}
