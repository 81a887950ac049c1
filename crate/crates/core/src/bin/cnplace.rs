use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cnplace::cli::{self, CliResult, Family, FitConfig, PipelineConfig};
use cnplace::graph::SnapshotFormat;

#[derive(Parser)]
#[command(name = "cnplace", version, about = "Community detection and service placement for mesh networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArgs {
    /// Network snapshot (JSON) or edge list (CSV).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "json")]
    format: SnapshotFormat,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, default_value_t = cnplace::community::DEFAULT_MAX_ITERS)]
    max_iters: usize,
    /// Weight file or spec: `b3`, `absolute:b3`, `combined:a1,b2,0.6`,
    /// `explicit:1,0,0,0,2`, `random`.
    #[arg(long)]
    weights: Option<String>,
    /// Communities file from a previous `communities` run.
    #[arg(long)]
    communities: Option<PathBuf>,
    /// Fitted bandwidth model (fit JSON).
    #[arg(long)]
    bw: Option<PathBuf>,
    /// Fitted RTT model (fit JSON).
    #[arg(long)]
    rtt: Option<PathBuf>,
    /// Count the leader itself (0 hops) in path averages.
    #[arg(long)]
    include_leader: bool,
    /// Do not prune degree <= 1 nodes.
    #[arg(long)]
    keep_leaves: bool,
}

impl GraphArgs {
    fn config(self, baseline: Option<String>) -> PipelineConfig {
        PipelineConfig {
            input: self.input,
            format: self.format,
            max_iters: self.max_iters,
            weights: self.weights,
            seed: self.seed,
            baseline,
            communities: self.communities,
            bw_params: self.bw,
            rtt_params: self.rtt,
            include_leader: self.include_leader,
            keep_leaves: self.keep_leaves,
            out_dir: self.out,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Detect communities by label propagation.
    Communities(GraphArgs),
    /// Elect a leader in every community.
    Elect(GraphArgs),
    /// Fit a GEV or four-parameter Kappa distribution to samples.
    Fit {
        #[arg(long)]
        samples: PathBuf,
        #[arg(long)]
        family: Family,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fill missing link and node attributes from fitted models.
    Synth(GraphArgs),
    /// Placement report, optionally against a baseline partition.
    Report {
        #[command(flatten)]
        graph: GraphArgs,
        /// Communities file, or `random` for a seeded random partition.
        #[arg(long)]
        baseline: Option<String>,
    },
}

fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Communities(a) => {
            let s = cli::cmd_communities(&a.config(None))?;
            println!("{} communities after {} supersteps -> {}", s.sizes.len(), s.supersteps, s.path.display());
        }
        Command::Elect(a) => {
            let s = cli::cmd_elect(&a.config(None))?;
            for (label, leader) in &s.leaders {
                println!("community {label}: leader {leader}");
            }
            println!("-> {}", s.json_path.display());
        }
        Command::Fit { samples, family, out } => {
            let doc = cli::cmd_fit(&FitConfig { samples, family, out_dir: out })?;
            println!("{}", serde_json::to_string_pretty(&doc).expect("fit serializes"));
        }
        Command::Synth(a) => {
            let s = cli::cmd_synth(&a.config(None))?;
            println!("filled {} links, {} nodes -> {}", s.filled_links, s.filled_nodes, s.path.display());
        }
        Command::Report { graph, baseline } => {
            let s = cli::cmd_report(&graph.config(baseline))?;
            println!("phase one: {:?}", s.phase_one);
            if let Some(b) = &s.baseline {
                println!("baseline:  {b:?}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
