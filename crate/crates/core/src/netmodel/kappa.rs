use serde::{Deserialize, Serialize};

use super::gev::box_cox_neg;
use super::special::{lmoments_exist, shape_terms};
use super::{fit_gev, LMoments};
use crate::error::{Error, Result};
use crate::rng::{open01, stream, stream_rng};

const NEWTON_TOL: f64 = 1e-8;
const NEWTON_MAX_ITERS: usize = 50;
const MAX_HALVINGS: usize = 40;
const JACOBIAN_STEP: f64 = 1e-6;

/// Four-parameter Kappa distribution, quantile
/// `x(F) = xi + (alpha / k) (1 - ((1 - F^h) / h)^k)`.
///
/// `h = 0` is the GEV, `h = 1` the generalized Pareto, `h = -1` the
/// generalized logistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kappa4Params {
    pub xi: f64,
    pub alpha: f64,
    pub k: f64,
    pub h: f64,
}

impl Kappa4Params {
    pub fn new(xi: f64, alpha: f64, k: f64, h: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite() && xi.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "Kappa needs finite location and alpha > 0 (xi={xi}, alpha={alpha})"
            )));
        }
        if !lmoments_exist(k, h) {
            return Err(Error::InvalidArgument(format!(
                "Kappa shape (k={k}, h={h}) is outside the region where L-moments exist"
            )));
        }
        Ok(Kappa4Params { xi, alpha, k, h })
    }

    pub fn quantile(&self, u: f64) -> f64 {
        // (1 - u^h) / h, with -ln u at h = 0
        let y = if self.h == 0.0 {
            -u.ln()
        } else {
            -(self.h * u.ln()).exp_m1() / self.h
        };
        self.xi + self.alpha * box_cox_neg(y, self.k)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let z = (x - self.xi) / self.alpha;
        let y = if self.k == 0.0 {
            z
        } else {
            let t = 1.0 - self.k * z;
            if t <= 0.0 {
                return if self.k > 0.0 { 1.0 } else { 0.0 };
            }
            -t.ln() / self.k
        };
        let e = (-y).exp();
        if self.h == 0.0 {
            (-e).exp()
        } else {
            let s = -self.h * e;
            if s <= -1.0 {
                return 0.0;
            }
            (s.ln_1p() / self.h).exp()
        }
    }

    pub fn lmoments(&self) -> LMoments {
        let s = shape_terms(self.k, self.h);
        LMoments::population(self.xi + self.alpha * s.b, self.alpha * s.a, s.t3, s.t4)
    }
}

/// Outcome of a Kappa fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kappa4Fit {
    pub params: Kappa4Params,
    pub converged: bool,
    pub iterations: usize,
    /// The Newton solve failed and `params` is the GEV fit (h = 0).
    pub fallback: bool,
}

/// Whether `(t3, t4)` lies strictly between the lower bound of all
/// distributions and the generalized logistic line, the Kappa-attainable
/// region.
pub fn kappa_region_contains(t3: f64, t4: f64) -> bool {
    t3.abs() < 1.0 && t4 >= (5.0 * t3 * t3 - 1.0) / 4.0 && t4 < (5.0 * t3 * t3 + 1.0) / 6.0
}

fn residual(k: f64, h: f64, t3: f64, t4: f64) -> [f64; 2] {
    let s = shape_terms(k, h);
    [s.t3 - t3, s.t4 - t4]
}

fn norm(r: [f64; 2]) -> f64 {
    r[0].abs().max(r[1].abs())
}

/// Damped Newton–Raphson on `(k, h)`. Returns the root and the iteration
/// count, or `None` if it stalls or runs out of iterations.
fn solve_shape(t3: f64, t4: f64, k0: f64, h0: f64) -> Option<(f64, f64, usize)> {
    let (mut k, mut h) = (k0, h0);
    if !lmoments_exist(k, h) {
        return None;
    }
    let mut r = residual(k, h, t3, t4);
    for iter in 0..=NEWTON_MAX_ITERS {
        if !(r[0].is_finite() && r[1].is_finite()) {
            return None;
        }
        if norm(r) < NEWTON_TOL {
            return Some((k, h, iter));
        }
        if iter == NEWTON_MAX_ITERS {
            break;
        }
        let eps = JACOBIAN_STEP;
        let rk_p = residual(k + eps, h, t3, t4);
        let rk_m = residual(k - eps, h, t3, t4);
        let rh_p = residual(k, h + eps, t3, t4);
        let rh_m = residual(k, h - eps, t3, t4);
        let j = [
            [(rk_p[0] - rk_m[0]) / (2.0 * eps), (rh_p[0] - rh_m[0]) / (2.0 * eps)],
            [(rk_p[1] - rk_m[1]) / (2.0 * eps), (rh_p[1] - rh_m[1]) / (2.0 * eps)],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if !(det.abs() > 0.0 && det.is_finite()) {
            return None;
        }
        let dk = (j[1][1] * r[0] - j[0][1] * r[1]) / det;
        let dh = (j[0][0] * r[1] - j[1][0] * r[0]) / det;

        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..MAX_HALVINGS {
            let (nk, nh) = (k - step * dk, h - step * dh);
            if lmoments_exist(nk, nh) {
                let nr = residual(nk, nh, t3, t4);
                if nr[0].is_finite() && nr[1].is_finite() && norm(nr) < norm(r) {
                    k = nk;
                    h = nh;
                    r = nr;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    None
}

/// Fit the four-parameter Kappa distribution by matching L-moments.
///
/// Newton–Raphson on `(k, h)` against the sample `(t3, t4)`, started at
/// `h = 0` and the GEV shape estimate; then `alpha` and `xi` follow from
/// `l2` and `l1`. If the solve fails the GEV fit is returned with
/// `fallback = true`.
pub fn fit_kappa4(lm: &LMoments) -> Result<Kappa4Fit> {
    let (t3, t4) = lm
        .ratios()
        .map_err(|_| Error::Infeasible("sample has no dispersion (l2 = 0)".into()))?;
    if !kappa_region_contains(t3, t4) {
        return Err(Error::Infeasible(format!(
            "(t3, t4) = ({t3}, {t4}) is outside the Kappa region"
        )));
    }
    let gev = fit_gev(lm)?;
    let k0 = gev.k.max(-0.99);

    let solved = solve_shape(t3, t4, k0, 0.0).and_then(|(k, h, iters)| {
        let s = shape_terms(k, h);
        let alpha = lm.l2 / s.a;
        let xi = lm.l1 - alpha * s.b;
        Kappa4Params::new(xi, alpha, k, h).ok().map(|p| (p, iters))
    });
    Ok(match solved {
        Some((params, iterations)) => Kappa4Fit {
            params,
            converged: true,
            iterations,
            fallback: false,
        },
        None => Kappa4Fit {
            params: Kappa4Params::new(gev.mu, gev.sigma, gev.k, 0.0)?,
            converged: false,
            iterations: NEWTON_MAX_ITERS,
            fallback: true,
        },
    })
}

/// `n` inverse-CDF draws from stream `SAMPLER` of `seed` (the same uniforms
/// [`sample_gev`](super::sample_gev) uses for that seed).
pub fn sample_kappa4(p: &Kappa4Params, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = stream_rng(seed, stream::SAMPLER);
    (0..n).map(|_| p.quantile(open01(&mut rng))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmodel::{sample_gev, sample_lmoments, GevParams};

    #[test]
    fn unit_shapes_give_uniform() {
        let p = Kappa4Params::new(2.0, 3.0, 1.0, 1.0).unwrap();
        for &u in &[0.1, 0.5, 0.75] {
            assert!((p.quantile(u) - (2.0 + 3.0 * u)).abs() < 1e-12);
        }
        let xs = sample_kappa4(&p, 1000, 3);
        assert!(xs.iter().all(|&x| (2.0..5.0).contains(&x)));
        assert!(sample_kappa4(&p, 0, 3).is_empty());
    }

    #[test]
    fn vanishing_h_matches_gev() {
        let g = GevParams::new(1.0, 2.0, 0.2).unwrap();
        let k = Kappa4Params::new(1.0, 2.0, 0.2, 1e-12).unwrap();
        let a = sample_gev(&g, 1000, 9);
        let b = sample_kappa4(&k, 1000, 9);
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-6));
    }

    #[test]
    fn quantile_inverts_cdf() {
        for &(k, h) in &[(0.2, 0.0), (0.1, 0.5), (-0.2, -0.4), (0.0, 0.3), (1.0, 1.0)] {
            let p = Kappa4Params::new(0.0, 1.0, k, h).unwrap();
            for &u in &[0.02, 0.4, 0.8, 0.995] {
                assert!((p.cdf(p.quantile(u)) - u).abs() < 1e-10, "k={k} h={h} u={u}");
            }
        }
    }

    #[test]
    fn fit_uniform_population() {
        let fit = fit_kappa4(&LMoments::population(0.5, 1.0 / 6.0, 0.0, 0.0)).unwrap();
        assert!(fit.converged, "{fit:?}");
        let p = fit.params;
        for (got, want) in [(p.k, 1.0), (p.h, 1.0), (p.xi, 0.0), (p.alpha, 1.0)] {
            assert!((got - want).abs() < 1e-3, "{p:?}");
        }
    }

    #[test]
    fn fit_gev_population_recovers_zero_h() {
        let lm = GevParams::new(0.0, 1.0, 0.1).unwrap().lmoments().unwrap();
        let fit = fit_kappa4(&lm).unwrap();
        assert!(fit.converged);
        assert!(fit.params.h.abs() < 1e-3, "{fit:?}");
        assert!((fit.params.k - 0.1).abs() < 1e-3, "{fit:?}");
    }

    #[test]
    fn round_trip_interior_shapes() {
        for &(k, h) in &[(0.3, 0.4), (-0.2, -0.3), (0.5, 1.5), (0.05, -0.5)] {
            let truth = Kappa4Params::new(3.0, 2.0, k, h).unwrap();
            let fit = fit_kappa4(&truth.lmoments()).unwrap();
            assert!(fit.converged, "k={k} h={h}: {fit:?}");
            let p = fit.params;
            assert!((p.k - k).abs() < 1e-4 && (p.h - h).abs() < 1e-4, "{p:?}");
            assert!((p.xi - 3.0).abs() < 1e-4 && (p.alpha - 2.0).abs() < 1e-4, "{p:?}");
        }
    }

    #[test]
    fn constant_sample_is_infeasible() {
        let lm = sample_lmoments(&[4.0; 8]).unwrap();
        assert!(matches!(fit_kappa4(&lm), Err(Error::Infeasible(_))));
    }

    #[test]
    fn outside_region_is_infeasible() {
        // above the generalized logistic line
        assert!(matches!(
            fit_kappa4(&LMoments::population(0.0, 1.0, 0.0, 0.5)),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn rejects_shapes_without_lmoments() {
        assert!(Kappa4Params::new(0.0, 1.0, -1.5, 0.5).is_err());
        assert!(Kappa4Params::new(0.0, 1.0, 2.0, -0.6).is_err());
        assert!(Kappa4Params::new(0.0, 0.0, 0.1, 0.1).is_err());
    }
}
