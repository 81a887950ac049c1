//! L-moment fits of GEV and four-parameter Kappa, checked by KS distance.

use cnplace::metrics::gof_ks;
use cnplace::netmodel::{fit_gev, fit_kappa4, sample_gev, sample_kappa4, sample_lmoments, GevParams, Kappa4Params};

fn main() -> cnplace::Result<()> {
    let rtt_truth = GevParams::new(10.0, 3.0, -0.1)?;
    let rtt = sample_gev(&rtt_truth, 20_000, 1);
    let lm = sample_lmoments(&rtt)?;
    let gev = fit_gev(&lm)?;
    println!("rtt   l-moments {lm:?}");
    println!("      GEV fit {gev:?}, KS {:.4}", gof_ks(&rtt, |x| gev.cdf(x))?);

    let bw_truth = Kappa4Params::new(20.0, 15.0, 0.2, 0.4)?;
    let bw = sample_kappa4(&bw_truth, 20_000, 2);
    let fit = fit_kappa4(&sample_lmoments(&bw)?)?;
    let p = fit.params;
    println!("bw    Kappa fit {p:?}");
    println!("      converged {} after {} iterations, KS {:.4}", fit.converged, fit.iterations, gof_ks(&bw, |x| p.cdf(x))?);
    Ok(())
}
