use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// First four L-moments, with the higher two as ratios to `l2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LMoments {
    pub l1: f64,
    pub l2: f64,
    /// L-skewness `λ3/λ2`; `None` when `l2 == 0`.
    pub t3: Option<f64>,
    /// L-kurtosis `λ4/λ2`; `None` when `l2 == 0`.
    pub t4: Option<f64>,
    /// Sample size, 0 for population values.
    pub n: usize,
}

impl LMoments {
    pub fn population(l1: f64, l2: f64, t3: f64, t4: f64) -> Self {
        LMoments {
            l1,
            l2,
            t3: Some(t3),
            t4: Some(t4),
            n: 0,
        }
    }

    /// `(t3, t4)`, failing for a sample without dispersion.
    pub fn ratios(&self) -> Result<(f64, f64)> {
        match (self.t3, self.t4) {
            (Some(t3), Some(t4)) if self.l2 > 0.0 => Ok((t3, t4)),
            _ => Err(Error::Degenerate("L-moment ratios are undefined because l2 = 0".into())),
        }
    }
}

/// Unbiased sample L-moments via probability-weighted moments of the sorted
/// sample.
pub fn sample_lmoments(xs: &[f64]) -> Result<LMoments> {
    let n = xs.len();
    if n < 4 {
        return Err(Error::SampleSize { got: n, min: 4 });
    }
    if let Some(bad) = xs.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(format!("sample contains non-finite value {bad}")));
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);

    let nf = n as f64;
    let (mut b0, mut b1, mut b2, mut b3) = (0.0, 0.0, 0.0, 0.0);
    for (i, &x) in sorted.iter().enumerate() {
        let j = i as f64; // j - 1 in 1-based terms
        let w1 = j / (nf - 1.0);
        let w2 = w1 * (j - 1.0) / (nf - 2.0);
        let w3 = w2 * (j - 2.0) / (nf - 3.0);
        b0 += x;
        b1 += x * w1;
        b2 += x * w2;
        b3 += x * w3;
    }
    b0 /= nf;
    b1 /= nf;
    b2 /= nf;
    b3 /= nf;

    let l1 = b0;
    if sorted[0] == sorted[n - 1] {
        return Ok(LMoments {
            l1,
            l2: 0.0,
            t3: None,
            t4: None,
            n,
        });
    }
    let l2 = 2.0 * b1 - b0;
    let l3 = 6.0 * b2 - 6.0 * b1 + b0;
    let l4 = 20.0 * b3 - 30.0 * b2 + 12.0 * b1 - b0;
    Ok(LMoments {
        l1,
        l2,
        t3: Some(l3 / l2),
        t4: Some(l4 / l2),
        n,
    })
}
