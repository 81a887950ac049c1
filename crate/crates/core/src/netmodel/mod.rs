//! Statistical link model: sample L-moments, GEV and four-parameter Kappa
//! fits, inverse-CDF samplers, and synthesis of missing link/node attributes.
//!
//! Shape parameters follow Hosking's sign convention throughout: for the GEV,
//! `k > 0` means a bounded upper tail (the common `ξ_shape` equals `-k`).

mod gev;
mod kappa;
mod lmoments;
mod special;
mod synth;

pub use gev::{fit_gev, sample_gev, GevParams};
pub use kappa::{fit_kappa4, kappa_region_contains, sample_kappa4, Kappa4Fit, Kappa4Params};
pub use lmoments::{sample_lmoments, LMoments};
pub use synth::{synthesize_attributes, SynthesisParams, POSITIVE_FLOOR, MAX_RESAMPLES};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
