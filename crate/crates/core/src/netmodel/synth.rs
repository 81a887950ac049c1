use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{GevParams, Kappa4Params};
use crate::graph::NetworkGraph;
use crate::rng::{open01, stream, stream_rng};

/// Draws that stay non-positive after this many retries are clamped.
pub const MAX_RESAMPLES: usize = 100;
/// Value used when resampling gives up.
pub const POSITIVE_FLOOR: f64 = 1e-6;

/// Models used to fill in missing attributes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthesisParams {
    /// Link bandwidth (Mbit/s).
    pub bandwidth: Kappa4Params,
    /// Link round-trip time (ms); also used for node latency.
    pub rtt: GevParams,
    /// Node availability is drawn uniformly from this range.
    pub availability_range: (f64, f64),
}

impl SynthesisParams {
    pub fn new(bandwidth: Kappa4Params, rtt: GevParams) -> Self {
        SynthesisParams {
            bandwidth,
            rtt,
            availability_range: (0.9, 1.0),
        }
    }
}

fn positive_draw<R: Rng>(rng: &mut R, quantile: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..=MAX_RESAMPLES {
        let x = quantile(open01(rng));
        if x > 0.0 && x.is_finite() {
            return x;
        }
    }
    POSITIVE_FLOOR
}

/// Fill every missing link bandwidth/RTT and node availability/latency with
/// independent draws. Each attribute kind uses its own stream of `seed`;
/// edges are visited in sorted order and nodes in id order. Measured values
/// are left alone, and every filled entity gets its `synthetic` flag set.
pub fn synthesize_attributes(g: &NetworkGraph, params: &SynthesisParams, seed: u64) -> NetworkGraph {
    let mut out = g.clone();
    let mut bw_rng = stream_rng(seed, stream::BANDWIDTH);
    let mut rtt_rng = stream_rng(seed, stream::RTT);
    let mut avail_rng = stream_rng(seed, stream::AVAILABILITY);
    let mut lat_rng = stream_rng(seed, stream::LATENCY);

    let edges: Vec<_> = g.edges().map(|(u, v, _)| (u, v)).collect();
    for (u, v) in edges {
        let e = out.edge_attributes_mut(u, v).expect("edge taken from the graph");
        if e.bandwidth_mbps.is_none() {
            e.bandwidth_mbps = Some(positive_draw(&mut bw_rng, |p| params.bandwidth.quantile(p)));
            e.synthetic = true;
        }
        if e.rtt_ms.is_none() {
            e.rtt_ms = Some(positive_draw(&mut rtt_rng, |p| params.rtt.quantile(p)));
            e.synthetic = true;
        }
    }
    let (lo, hi) = params.availability_range;
    for &id in g.node_ids() {
        let a = out.node_attributes_mut(id).expect("node taken from the graph");
        if a.availability.is_none() {
            a.availability = Some(lo + (hi - lo) * open01(&mut avail_rng));
            a.synthetic = true;
        }
        if a.latency_ms.is_none() {
            a.latency_ms = Some(positive_draw(&mut lat_rng, |p| params.rtt.quantile(p)));
            a.synthetic = true;
        }
    }
    out
}
