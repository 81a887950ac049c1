//! Service placement for community networks.
//!
//! The pipeline has two phases. Phase One splits the network graph into
//! communities with synchronous label propagation ([`community`]). Phase Two
//! elects a leader inside each community by scoring nodes on a weighted sum
//! of topological ([`centrality`]) and system heuristics ([`election`]).
//! [`netmodel`] fits bandwidth and round-trip-time distributions from
//! L-moments and fills in missing link attributes, and [`metrics`] measures
//! placement quality (hops to leader, degree statistics, ECDFs).
//!
//! The [`cli`] module backs the `cnplace` binary; each subcommand is also a
//! plain function.

pub mod centrality;
pub mod cli;
pub mod community;
pub mod election;
pub mod error;
pub mod generate;
pub mod graph;
pub mod metrics;
pub mod netmodel;
pub mod rng;

pub use centrality::{betweenness, closeness, CentralityScores};
pub use community::{group_by_labels, propagate_labels, Community, LabelState};
pub use election::{absolute_config, combined_config, elect, ElectionMode, Heuristic, Ranking, WeightConfig};
pub use error::{Error, Result};
pub use graph::{
    connected_components, largest_component, parse_snapshot, prune_leaves, NetworkGraph, NodeAttributes, NodeId,
    SnapshotFormat,
};
