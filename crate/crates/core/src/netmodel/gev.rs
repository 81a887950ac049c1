use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use super::special::shape_terms;
use super::{LMoments, EULER_GAMMA};
use crate::error::{Error, Result};
use crate::rng::{open01, stream, stream_rng};

/// Below this |k| the Gumbel limit is used.
const GUMBEL_K: f64 = 1e-8;

/// Generalized extreme value distribution, quantile
/// `x(F) = mu + sigma (1 - (-ln F)^k) / k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GevParams {
    pub mu: f64,
    pub sigma: f64,
    pub k: f64,
}

/// `(1 - y^k) / k`, continuous through `k = 0` where it is `-ln y`.
pub(super) fn box_cox_neg(y: f64, k: f64) -> f64 {
    if k.abs() < GUMBEL_K {
        -y.ln()
    } else {
        -(k * y.ln()).exp_m1() / k
    }
}

impl GevParams {
    pub fn new(mu: f64, sigma: f64, k: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite() && mu.is_finite() && k.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "GEV needs finite parameters and sigma > 0 (mu={mu}, sigma={sigma}, k={k})"
            )));
        }
        Ok(GevParams { mu, sigma, k })
    }

    pub fn quantile(&self, u: f64) -> f64 {
        self.mu + self.sigma * box_cox_neg(-u.ln(), self.k)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let z = (x - self.mu) / self.sigma;
        let y = if self.k.abs() < GUMBEL_K {
            z
        } else {
            let t = 1.0 - self.k * z;
            if t <= 0.0 {
                return if self.k > 0.0 { 1.0 } else { 0.0 };
            }
            -t.ln() / self.k
        };
        (-(-y).exp()).exp()
    }

    /// Population L-moments; they exist for `k > -1`.
    pub fn lmoments(&self) -> Result<LMoments> {
        if self.k <= -1.0 {
            return Err(Error::InvalidArgument(format!("GEV L-moments need k > -1, got {}", self.k)));
        }
        let s = shape_terms(self.k, 0.0);
        Ok(LMoments::population(self.mu + self.sigma * s.b, self.sigma * s.a, s.t3, s.t4))
    }
}

/// Hosking's L-moment estimator for the GEV.
pub fn fit_gev(lm: &LMoments) -> Result<GevParams> {
    let (t3, _) = lm.ratios()?;
    if t3.is_nan() || t3.abs() >= 1.0 || lm.l2.is_nan() || lm.l2 <= 0.0 {
        return Err(Error::Degenerate(format!("cannot fit GEV to l2={}, t3={t3}", lm.l2)));
    }
    let c = 2.0 / (3.0 + t3) - 2f64.ln() / 3f64.ln();
    let k = 7.8590 * c + 2.9554 * c * c;
    let (mu, sigma) = if k.abs() < GUMBEL_K {
        let sigma = lm.l2 / 2f64.ln();
        (lm.l1 - EULER_GAMMA * sigma, sigma)
    } else {
        let g = gamma(1.0 + k);
        // 1 - 2^-k, written to keep precision for small k
        let one_minus = -(-k * 2f64.ln()).exp_m1();
        let sigma = lm.l2 * k / (one_minus * g);
        (lm.l1 - sigma * (1.0 - g) / k, sigma)
    };
    GevParams::new(mu, sigma, k).map_err(|e| Error::Degenerate(format!("GEV fit failed: {e}")))
}

/// `n` inverse-CDF draws from stream `SAMPLER` of `seed`.
pub fn sample_gev(p: &GevParams, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = stream_rng(seed, stream::SAMPLER);
    (0..n).map(|_| p.quantile(open01(&mut rng))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmodel::sample_lmoments;

    #[test]
    fn gumbel_median_at_inverse_e() {
        let p = GevParams::new(2.5, 3.0, 0.0).unwrap();
        assert_eq!(p.quantile((-1.0f64).exp()), 2.5);
    }

    #[test]
    fn empty_sample() {
        assert!(sample_gev(&GevParams::new(0.0, 1.0, 0.2).unwrap(), 0, 1).is_empty());
    }

    #[test]
    fn quantile_inverts_cdf() {
        for &k in &[-0.3, 0.0, 0.2] {
            let p = GevParams::new(1.0, 2.0, k).unwrap();
            for &u in &[0.01, 0.3, 0.5, 0.9, 0.999] {
                assert!((p.cdf(p.quantile(u)) - u).abs() < 1e-12, "k={k} u={u}");
            }
        }
    }

    #[test]
    fn gumbel_shape_from_skewness() {
        let t3 = (9.0f64 / 8.0).ln() / 2f64.ln();
        let p = fit_gev(&LMoments::population(0.0, 2f64.ln(), t3, 0.15)).unwrap();
        assert!(p.k.abs() < 1e-4);
        assert!((p.mu + EULER_GAMMA).abs() < 1e-6);
        assert!((p.sigma - 1.0).abs() < 1e-6);
    }

    #[test]
    fn population_lmoments_closed_form() {
        // Hosking: λ2 = σ (1 - 2^-k) Γ(1+k) / k,  τ3 = 2 (1 - 3^-k)/(1 - 2^-k) - 3
        let k: f64 = 0.2;
        let lm = GevParams::new(0.0, 1.0, k).unwrap().lmoments().unwrap();
        let l2 = (1.0 - 2f64.powf(-k)) * gamma(1.0 + k) / k;
        let t3 = 2.0 * (1.0 - 3f64.powf(-k)) / (1.0 - 2f64.powf(-k)) - 3.0;
        assert!((lm.l2 - l2).abs() < 1e-12);
        assert!((lm.t3.unwrap() - t3).abs() < 1e-12);
    }

    #[test]
    fn sampled_lmoments_match_population() {
        let p = GevParams::new(0.0, 1.0, 0.2).unwrap();
        let pop = p.lmoments().unwrap();
        let lm = sample_lmoments(&sample_gev(&p, 100_000, 5)).unwrap();
        assert!((lm.l1 - pop.l1).abs() < 0.02);
        assert!((lm.l2 - pop.l2).abs() < 0.02);
        assert!((lm.t3.unwrap() - pop.t3.unwrap()).abs() < 0.02);
        assert!((lm.t4.unwrap() - pop.t4.unwrap()).abs() < 0.02);
    }

    #[test]
    fn degenerate_input() {
        let lm = sample_lmoments(&[1.0; 5]).unwrap();
        assert!(fit_gev(&lm).is_err());
    }
}
