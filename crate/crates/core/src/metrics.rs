//! Placement quality measures.
//!
//! Path quantities are taken along the BFS tree rooted at the leader inside
//! the community's largest component (neighbors visited in ascending id
//! order). Bandwidth to the leader is the bottleneck (minimum) along that
//! path and RTT is the sum.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::community::{check_partition, Community, Label};
use crate::election::{elect_in_community, ElectionMode, Ranking};
use crate::error::{Error, Result};
use crate::graph::{largest_component, NetworkGraph, NodeId};

/// One member's route to its leader.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathSample {
    pub node: NodeId,
    pub hops: usize,
    /// `None` when some link on the path has no bandwidth value.
    pub bottleneck_bw: Option<f64>,
    pub total_rtt: Option<f64>,
}

/// Paths from every node of `comp` (including the leader, at 0 hops) to
/// `leader`, in id order. `comp` must be connected.
pub fn leader_paths(comp: &NetworkGraph, leader: NodeId) -> Result<Vec<PathSample>> {
    let root = comp
        .index_of(leader)
        .ok_or_else(|| Error::InvalidArgument(format!("leader {leader} is not in the component")))?;
    let ids = comp.node_ids();
    let adj = comp.adjacency();
    let mut out: Vec<Option<PathSample>> = vec![None; ids.len()];
    out[root] = Some(PathSample {
        node: leader,
        hops: 0,
        bottleneck_bw: Some(f64::INFINITY),
        total_rtt: Some(0.0),
    });
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let here = out[v].clone().expect("queued nodes are labelled");
        for &w in &adj[v] {
            if out[w].is_some() {
                continue;
            }
            let e = comp.edge(ids[v], ids[w]).expect("adjacent nodes share an edge");
            out[w] = Some(PathSample {
                node: ids[w],
                hops: here.hops + 1,
                bottleneck_bw: here.bottleneck_bw.zip(e.bandwidth_mbps).map(|(a, b)| a.min(b)),
                total_rtt: here.total_rtt.zip(e.rtt_ms).map(|(a, b)| a + b),
            });
            queue.push_back(w);
        }
    }
    out.into_iter()
        .map(|s| s.ok_or_else(|| Error::InvalidArgument("component is not connected".into())))
        .collect()
}

/// Mean BFS hop distance to `leader` over the other nodes of the community's
/// largest component. A singleton component gives 0.
pub fn hops_to_leader(c: &Community, leader: NodeId) -> Result<f64> {
    hops_to_leader_with(c, leader, false)
}

/// As [`hops_to_leader`], optionally counting the leader itself (at 0 hops)
/// in the mean.
pub fn hops_to_leader_with(c: &Community, leader: NodeId, include_leader: bool) -> Result<f64> {
    let comp = largest_component(&c.subgraph)?;
    if !comp.contains(leader) {
        return Err(Error::InvalidArgument(format!(
            "leader {leader} is not in the largest component of community {}",
            c.label
        )));
    }
    let paths = leader_paths(&comp, leader)?;
    let total: usize = paths.iter().map(|p| p.hops).sum();
    let count = if include_leader { paths.len() } else { paths.len() - 1 };
    Ok(if count == 0 { 0.0 } else { total as f64 / count as f64 })
}

/// `(max degree, 2m/n)` of the community's induced subgraph.
pub fn degree_stats(c: &Community) -> (usize, f64) {
    let g = &c.subgraph;
    let max = g.adjacency().iter().map(Vec::len).max().unwrap_or(0);
    let avg = if g.is_empty() {
        0.0
    } else {
        2.0 * g.edge_count() as f64 / g.node_count() as f64
    };
    (max, avg)
}

/// Right-continuous empirical CDF with duplicate values merged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ecdf {
    /// `(value, fraction of samples <= value)`, values strictly increasing.
    pub points: Vec<(f64, f64)>,
}

impl Ecdf {
    pub fn eval(&self, x: f64) -> f64 {
        let i = self.points.partition_point(|&(v, _)| v <= x);
        if i == 0 {
            0.0
        } else {
            self.points[i - 1].1
        }
    }

    /// Two-column `value,cumulative_fraction` CSV.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("value,cumulative_fraction\n");
        for (v, f) in &self.points {
            s.push_str(&format!("{v},{f}\n"));
        }
        s
    }
}

pub fn ecdf(xs: &[f64]) -> Result<Ecdf> {
    if xs.is_empty() {
        return Err(Error::InvalidArgument("ECDF of an empty sample".into()));
    }
    if xs.iter().any(|x| x.is_nan()) {
        return Err(Error::InvalidArgument("ECDF input contains NaN".into()));
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut points: Vec<(f64, f64)> = Vec::new();
    for (i, &x) in sorted.iter().enumerate() {
        let frac = (i + 1) as f64 / n;
        match points.last_mut() {
            Some(last) if last.0 == x => last.1 = frac,
            _ => points.push((x, frac)),
        }
    }
    Ok(Ecdf { points })
}

/// Kolmogorov–Smirnov statistic `sup |ECDF - cdf|`.
pub fn gof_ks(xs: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::InvalidArgument("KS statistic of an empty sample".into()));
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(d.clamp(0.0, 1.0))
}

/// Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "correlation needs two equal-length samples of size >= 2 (got {} and {})",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Degenerate("correlation of a constant sample".into()));
    }
    Ok(sxy / (sxx * syy).sqrt())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReportOptions {
    /// Count the leader (0 hops) in the hops mean.
    pub include_leader: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub label: Label,
    pub size: usize,
    pub leader: String,
    pub avg_hops: f64,
    pub max_degree: usize,
    pub avg_degree: f64,
    pub avg_bw_to_leader: Option<f64>,
    pub avg_rtt_to_leader: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct PlacementReport {
    pub rows: Vec<ReportRow>,
}

impl PlacementReport {
    /// Mean over communities of their `avg_hops`.
    pub fn mean_avg_hops(&self) -> f64 {
        mean(self.rows.iter().map(|r| r.avg_hops))
    }

    pub fn mean_avg_degree(&self) -> f64 {
        mean(self.rows.iter().map(|r| r.avg_degree))
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Io(std::io::Error::other(e)))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn mean(it: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = it.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

fn mean_of(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let known: Vec<f64> = values.flatten().collect();
    (!known.is_empty()).then(|| known.iter().sum::<f64>() / known.len() as f64)
}

/// Election outcome and metrics for one community.
#[derive(Debug, Clone, PartialEq)]
pub struct CommunityPlacement {
    pub label: Label,
    pub ranking: Ranking,
    pub row: ReportRow,
    /// Non-leader members of the largest component and their paths.
    pub paths: Vec<PathSample>,
}

fn place_community(g: &NetworkGraph, c: &Community, mode: &ElectionMode, opts: ReportOptions) -> Result<CommunityPlacement> {
    let ranking = elect_in_community(c, mode)?;
    let leader = ranking.leader();
    let comp = largest_component(&c.subgraph)?;
    let mut paths = leader_paths(&comp, leader)?;
    paths.retain(|p| p.node != leader);
    let avg_hops = hops_to_leader_with(c, leader, opts.include_leader)?;
    let (max_degree, avg_degree) = degree_stats(c);
    let row = ReportRow {
        label: c.label,
        size: c.size(),
        leader: g.alias(leader).unwrap_or_default().to_string(),
        avg_hops,
        max_degree,
        avg_degree,
        avg_bw_to_leader: mean_of(paths.iter().map(|p| p.bottleneck_bw)),
        avg_rtt_to_leader: mean_of(paths.iter().map(|p| p.total_rtt)),
    };
    Ok(CommunityPlacement {
        label: c.label,
        ranking,
        row,
        paths,
    })
}

/// Elect a leader in every community (concurrently) and measure the
/// placement. Output order follows the input order.
pub fn place_all(
    g: &NetworkGraph,
    communities: &[Community],
    mode: &ElectionMode,
    opts: ReportOptions,
) -> Result<Vec<CommunityPlacement>> {
    communities
        .par_iter()
        .map(|c| place_community(g, c, mode, opts))
        .collect()
}

pub fn placement_report(
    g: &NetworkGraph,
    communities: &[Community],
    mode: &ElectionMode,
    opts: ReportOptions,
) -> Result<PlacementReport> {
    Ok(PlacementReport {
        rows: place_all(g, communities, mode, opts)?.into_iter().map(|p| p.row).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionSummary {
    pub communities: usize,
    pub mean_avg_hops: f64,
    pub mean_avg_degree: f64,
    pub mean_bw_to_leader: Option<f64>,
    pub mean_rtt_to_leader: Option<f64>,
}

impl PartitionSummary {
    pub fn of(report: &PlacementReport) -> Self {
        PartitionSummary {
            communities: report.rows.len(),
            mean_avg_hops: report.mean_avg_hops(),
            mean_avg_degree: report.mean_avg_degree(),
            mean_bw_to_leader: mean_of(report.rows.iter().map(|r| r.avg_bw_to_leader)),
            mean_rtt_to_leader: mean_of(report.rows.iter().map(|r| r.avg_rtt_to_leader)),
        }
    }
}

/// Side-by-side placement of two partitions of the same graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionComparison {
    pub a: PlacementReport,
    pub b: PlacementReport,
    pub summary_a: PartitionSummary,
    pub summary_b: PartitionSummary,
}

impl PartitionComparison {
    pub fn swapped(self) -> Self {
        PartitionComparison {
            a: self.b,
            b: self.a,
            summary_a: self.summary_b,
            summary_b: self.summary_a,
        }
    }
}

pub fn compare_partitions(
    g: &NetworkGraph,
    part_a: &[Community],
    part_b: &[Community],
    mode: &ElectionMode,
    opts: ReportOptions,
) -> Result<PartitionComparison> {
    check_partition(g, part_a)?;
    check_partition(g, part_b)?;
    let a = placement_report(g, part_a, mode, opts)?;
    let b = placement_report(g, part_b, mode, opts)?;
    Ok(PartitionComparison {
        summary_a: PartitionSummary::of(&a),
        summary_b: PartitionSummary::of(&b),
        a,
        b,
    })
}
