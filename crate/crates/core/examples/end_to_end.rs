//! The whole pipeline through the CLI layer: fit models, synthesize, detect,
//! elect and report. Outputs go to a directory given as the first argument.

use std::path::PathBuf;

use cnplace::cli::{cmd_communities, cmd_elect, cmd_fit, cmd_report, cmd_synth, Family, FitConfig, PipelineConfig};
use cnplace::netmodel::{sample_gev, sample_kappa4, GevParams, Kappa4Params};

fn write_samples(path: &PathBuf, xs: &[f64]) -> std::io::Result<()> {
    let body: String = xs.iter().map(|x| format!("{x}\n")).collect();
    std::fs::write(path, body)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/end_to_end".into()));
    std::fs::create_dir_all(&out)?;

    // stand-ins for measured bandwidth and RTT samples
    let bw = out.join("bw_samples.txt");
    let rtt = out.join("rtt_samples.txt");
    write_samples(&bw, &sample_kappa4(&Kappa4Params::new(20.0, 15.0, 0.2, 0.4)?, 5000, 1))?;
    write_samples(&rtt, &sample_gev(&GevParams::new(10.0, 3.0, -0.1)?, 5000, 2))?;
    cmd_fit(&FitConfig { samples: bw, family: Family::Kappa4, out_dir: Some(out.clone()) })?;
    cmd_fit(&FitConfig { samples: rtt, family: Family::Gev, out_dir: Some(out.clone()) })?;

    let mut cfg = PipelineConfig::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/mesh.json"), &out);
    cfg.seed = Some(42);
    cfg.bw_params = Some(out.join("fit_kappa4.json"));
    cfg.rtt_params = Some(out.join("fit_gev.json"));
    let synth = cmd_synth(&cfg)?;
    println!("synth: filled {} links, {} nodes", synth.filled_links, synth.filled_nodes);

    let c = cmd_communities(&cfg)?;
    println!("communities: sizes {:?} after {} supersteps", c.sizes, c.supersteps);

    cfg.weights = Some("combined:a1,b2,0.4".into());
    let e = cmd_elect(&cfg)?;
    println!("leaders: {:?}", e.leaders);

    cfg.baseline = Some("random".into());
    let r = cmd_report(&cfg)?;
    println!("phase one {:?}\nbaseline  {:?}", r.phase_one, r.baseline);
    println!("outputs in {}", out.display());
    Ok(())
}
