//! Kappa-family L-moment terms evaluated stably near `k = 0` and `h = 0`.

use statrs::function::gamma::ln_gamma;

/// Below this |h| the GEV (h = 0) expression is used directly.
const H_ZERO: f64 = 1e-10;
/// Half-width of the window around `k = 0` bridged by linear interpolation.
const K_WINDOW: f64 = 1e-6;

/// `ln Γ(a + b) - ln Γ(a)` for `a > 0`, `a + b > 0`.
///
/// Large `a` uses the Stirling series on the difference so that the two big
/// log-gamma values never get subtracted directly.
pub(crate) fn ln_gamma_diff(a: f64, b: f64) -> f64 {
    if a < 12.0 || (a + b) < 12.0 {
        return ln_gamma(a + b) - ln_gamma(a);
    }
    // Stirling remainder: Σ B_2n / (2n (2n-1) x^(2n-1))
    fn phi(x: f64) -> f64 {
        const C: [f64; 7] = [
            1.0 / 12.0,
            -1.0 / 360.0,
            1.0 / 1260.0,
            -1.0 / 1680.0,
            1.0 / 1188.0,
            -691.0 / 360_360.0,
            1.0 / 156.0,
        ];
        let inv = 1.0 / x;
        let inv2 = inv * inv;
        let mut term = inv;
        let mut sum = 0.0;
        for c in C {
            sum += c * term;
            term *= inv2;
        }
        sum
    }
    (a - 0.5) * (b / a).ln_1p() + b * (a + b).ln() - b + (phi(a + b) - phi(a))
}

/// `ln g_r(k, h)` where the Kappa L-moments are
/// `λ1 = ξ + α(1 - g1)/k` and `λ2 = α(g1 - g2)/k`.
pub(crate) fn ln_g(k: f64, h: f64, r: f64) -> f64 {
    if h.abs() < H_ZERO {
        // GEV: g_r = Γ(1+k) r^(-k)
        ln_gamma(1.0 + k) - k * r.ln()
    } else if h > 0.0 {
        // r Γ(1+k) Γ(r/h) / (h^(1+k) Γ(1+k+r/h))
        r.ln() + ln_gamma(1.0 + k) - (1.0 + k) * h.ln() - ln_gamma_diff(r / h, 1.0 + k)
    } else {
        // r Γ(1+k) Γ(-k-r/h) / ((-h)^(1+k) Γ(1-r/h))
        let a = -r / h;
        r.ln() + ln_gamma(1.0 + k) - (1.0 + k) * (-h).ln() - ln_gamma_diff(a - k, 1.0 + k)
    }
}

/// Shape-only L-moment terms of the Kappa family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ShapeTerms {
    /// `(g1 - g2) / k`, so `λ2 = α · a`.
    pub a: f64,
    /// `(1 - g1) / k`, so `λ1 = ξ + α · b`.
    pub b: f64,
    pub t3: f64,
    pub t4: f64,
}

fn raw_terms(k: f64, h: f64) -> ShapeTerms {
    let l: [f64; 4] = std::array::from_fn(|i| ln_g(k, h, (i + 1) as f64));
    // g_r - g_s = g_s (exp(L_r - L_s) - 1), accurate when the difference is small
    let diff = |r: usize, s: usize| l[s].exp() * (l[r] - l[s]).exp_m1();
    let d12 = diff(0, 1);
    let d23 = diff(1, 2);
    let d34 = diff(2, 3);
    ShapeTerms {
        a: d12 / k,
        b: -l[0].exp_m1() / k,
        t3: (-d12 + 2.0 * d23) / d12,
        t4: (d12 - 5.0 * d23 + 5.0 * d34) / d12,
    }
}

/// L-moment shape terms, bridging the removable singularity at `k = 0`.
pub(crate) fn shape_terms(k: f64, h: f64) -> ShapeTerms {
    if k.abs() >= K_WINDOW {
        return raw_terms(k, h);
    }
    let lo = raw_terms(-K_WINDOW, h);
    let hi = raw_terms(K_WINDOW, h);
    let t = (k + K_WINDOW) / (2.0 * K_WINDOW);
    let mix = |x: f64, y: f64| x + t * (y - x);
    ShapeTerms {
        a: mix(lo.a, hi.a),
        b: mix(lo.b, hi.b),
        t3: mix(lo.t3, hi.t3),
        t4: mix(lo.t4, hi.t4),
    }
}

/// Whether the Kappa L-moments exist: `k > -1`, and `hk > -1` when `h < 0`.
pub(crate) fn lmoments_exist(k: f64, h: f64) -> bool {
    k.is_finite() && h.is_finite() && k > -1.0 && (h >= 0.0 || h * k > -1.0)
}
