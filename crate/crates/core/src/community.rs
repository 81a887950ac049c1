//! Community finding by synchronous label propagation.
//!
//! Each node starts with its own id as label. In every superstep all nodes
//! read their neighbors' labels from the previous superstep, and adopt the
//! most frequent one, breaking ties towards the numerically highest label.
//! A node's own label is not counted. Propagation stops after a superstep in
//! which nothing changed, or after `max_iters` supersteps.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{NetworkGraph, NodeId};
use crate::rng::{stream, stream_rng};

/// Community labels are drawn from the initial node ids.
pub type Label = u32;

pub const DEFAULT_MAX_ITERS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelState {
    pub labels: BTreeMap<NodeId, Label>,
    /// Supersteps executed, including a final no-change superstep.
    pub iteration: usize,
    /// Whether the last executed superstep changed any label. `true` means
    /// propagation was cut off by `max_iters`.
    pub changed: bool,
}

impl LabelState {
    /// Unique label per node: label = id.
    pub fn initial(g: &NetworkGraph) -> Self {
        LabelState {
            labels: g.node_ids().iter().map(|&id| (id, id.0)).collect(),
            iteration: 0,
            changed: false,
        }
    }
}

/// Most frequent label among `labels`, ties resolved to the highest label.
/// `None` for an empty slice.
fn dominant_label(labels: &mut [Label]) -> Option<Label> {
    labels.sort_unstable();
    let mut best: Option<(usize, Label)> = None;
    let mut i = 0;
    while i < labels.len() {
        let mut j = i;
        while j < labels.len() && labels[j] == labels[i] {
            j += 1;
        }
        let count = j - i;
        // ascending scan, so `>=` lets later (higher) labels win ties
        if best.is_none_or(|(c, _)| count >= c) {
            best = Some((count, labels[i]));
        }
        i = j;
    }
    best.map(|(_, l)| l)
}

pub fn propagate_labels(g: &NetworkGraph, max_iters: usize) -> Result<LabelState> {
    if max_iters < 1 {
        return Err(Error::InvalidArgument("max_iters must be at least 1".into()));
    }
    let adj = g.adjacency();
    let mut current: Vec<Label> = g.node_ids().iter().map(|id| id.0).collect();
    let mut iteration = 0;
    let mut changed = false;
    while iteration < max_iters {
        let next: Vec<Label> = (0..current.len())
            .into_par_iter()
            .map(|i| {
                let mut inbound: Vec<Label> = adj[i].iter().map(|&j| current[j]).collect();
                dominant_label(&mut inbound).unwrap_or(current[i])
            })
            .collect();
        iteration += 1;
        changed = next != current;
        current = next;
        if !changed {
            break;
        }
    }
    Ok(LabelState {
        labels: g.node_ids().iter().copied().zip(current).collect(),
        iteration,
        changed,
    })
}

/// A label-identified group of nodes with its induced subgraph.
#[derive(Debug, Clone, PartialEq)]
pub struct Community {
    pub label: Label,
    pub members: Vec<NodeId>,
    pub subgraph: NetworkGraph,
}

impl Community {
    pub fn from_members(g: &NetworkGraph, label: Label, mut members: Vec<NodeId>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Consistency(format!("community {label} has no members")));
        }
        members.sort_unstable();
        members.dedup();
        if let Some(missing) = members.iter().find(|id| !g.contains(**id)) {
            return Err(Error::Consistency(format!(
                "community {label} references node {missing} which is not in the graph"
            )));
        }
        let subgraph = g.induced_subgraph(members.iter().copied());
        Ok(Community {
            label,
            members,
            subgraph,
        })
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// One community per distinct label, ordered by label.
pub fn group_by_labels(g: &NetworkGraph, s: &LabelState) -> Result<Vec<Community>> {
    let mut groups: BTreeMap<Label, Vec<NodeId>> = BTreeMap::new();
    for &id in g.node_ids() {
        let label = s
            .labels
            .get(&id)
            .ok_or_else(|| Error::Consistency(format!("label map has no entry for node {id}")))?;
        groups.entry(*label).or_default().push(id);
    }
    if s.labels.len() != g.node_count() {
        return Err(Error::Consistency(format!(
            "label map covers {} nodes but the graph has {}",
            s.labels.len(),
            g.node_count()
        )));
    }
    groups
        .into_iter()
        .map(|(label, members)| Community::from_members(g, label, members))
        .collect()
}

/// Check that `communities` partitions the nodes of `g`.
pub fn check_partition(g: &NetworkGraph, communities: &[Community]) -> Result<()> {
    let mut seen = HashSet::with_capacity(g.node_count());
    for c in communities {
        for &id in &c.members {
            if !g.contains(id) {
                return Err(Error::Consistency(format!("node {id} is not in the graph")));
            }
            if !seen.insert(id) {
                return Err(Error::Consistency(format!("node {id} belongs to more than one community")));
            }
        }
    }
    if seen.len() != g.node_count() {
        return Err(Error::Consistency(format!(
            "partition covers {} of {} nodes",
            seen.len(),
            g.node_count()
        )));
    }
    Ok(())
}

/// Random partition whose group sizes are given by `sizes` (which must sum to
/// the node count). Labels are `0..sizes.len()`.
pub fn random_partition(g: &NetworkGraph, sizes: &[usize], seed: u64) -> Result<Vec<Community>> {
    let total: usize = sizes.iter().sum();
    if total != g.node_count() || sizes.contains(&0) {
        return Err(Error::InvalidArgument(format!(
            "partition sizes must be positive and sum to {}, got {sizes:?}",
            g.node_count()
        )));
    }
    let mut ids = g.node_ids().to_vec();
    ids.shuffle(&mut stream_rng(seed, stream::PARTITION));
    let mut out = Vec::with_capacity(sizes.len());
    let mut rest = ids.as_slice();
    for (label, &size) in sizes.iter().enumerate() {
        let (head, tail) = rest.split_at(size);
        out.push(Community::from_members(g, label as Label, head.to_vec())?);
        rest = tail;
    }
    Ok(out)
}

/// Random partition into `k` groups whose sizes differ by at most one.
pub fn random_equal_partition(g: &NetworkGraph, k: usize, seed: u64) -> Result<Vec<Community>> {
    let n = g.node_count();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("cannot split {n} nodes into {k} groups")));
    }
    let sizes: Vec<usize> = (0..k).map(|i| n / k + usize::from(i < n % k)).collect();
    random_partition(g, &sizes, seed)
}

/// Serialized community: label plus external node ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommunityRecord {
    pub label: Label,
    pub members: Vec<String>,
}

pub fn to_records(g: &NetworkGraph, communities: &[Community]) -> Vec<CommunityRecord> {
    communities
        .iter()
        .map(|c| CommunityRecord {
            label: c.label,
            members: c
                .members
                .iter()
                .map(|&id| g.alias(id).unwrap_or_default().to_string())
                .collect(),
        })
        .collect()
}

/// Resolve serialized communities against `g`. Members that are absent from
/// `g` are an error unless `skip_unknown` is set, in which case they are
/// dropped (and communities left empty disappear).
pub fn from_records(g: &NetworkGraph, records: &[CommunityRecord], skip_unknown: bool) -> Result<Vec<Community>> {
    let lookup = g.alias_map();
    let mut out = Vec::with_capacity(records.len());
    for r in records {
        let mut members = Vec::with_capacity(r.members.len());
        for m in &r.members {
            match lookup.get(m.as_str()) {
                Some(&id) => members.push(id),
                None if skip_unknown => {}
                None => {
                    return Err(Error::Consistency(format!(
                        "community {} lists unknown node `{m}`",
                        r.label
                    )))
                }
            }
        }
        if !members.is_empty() {
            out.push(Community::from_members(g, r.label, members)?);
        }
    }
    Ok(out)
}
