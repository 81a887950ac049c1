//! Pipeline subcommands behind the `cnplace` binary.
//!
//! Each `cmd_*` function reads its inputs, writes its output files into the
//! configured directory and returns a short summary. Every output embeds a
//! manifest (tool version, config hash, input hash, seed); JSON files carry it
//! under `manifest`, CSV files as leading `#` lines. Nothing time- or
//! host-dependent is recorded, so equal inputs give byte-identical files.
//!
//! Exit codes: 0 ok, 1 usage or I/O, 2 parse/schema, 3 missing data,
//! 4 numeric or degenerate input.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::community::{self, CommunityRecord, Label, DEFAULT_MAX_ITERS};
use crate::election::{missing_attributes, ElectionMode, WeightConfig, WeightFile};
use crate::error::Error;
use crate::graph::{self, NetworkGraph, Snapshot, SnapshotFormat};
use crate::metrics::{self, compare_partitions, ecdf, gof_ks, place_all, PartitionSummary, ReportOptions, ReportRow};
use crate::netmodel::{self, GevParams, Kappa4Params, LMoments, SynthesisParams};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MISSING: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

/// An error together with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub error: Error,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.error.fmt(f)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        let code = match &error {
            Error::Parse(_) | Error::Schema(_) | Error::Consistency(_) => EXIT_PARSE,
            Error::MissingAttributes(_) | Error::EmptyGraph => EXIT_MISSING,
            Error::SampleSize { .. } | Error::Degenerate(_) | Error::Infeasible(_) => EXIT_NUMERIC,
            Error::InvalidArgument(_) | Error::Io(_) => EXIT_USAGE,
        };
        CliError { code, error }
    }
}

impl CliError {
    fn with_code(code: i32, error: Error) -> Self {
        CliError { code, error }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Settings shared by the graph subcommands.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineConfig {
    pub input: PathBuf,
    #[serde(serialize_with = "ser_format")]
    pub format: SnapshotFormat,
    pub max_iters: usize,
    /// Weight file path or compact spec (`b3`, `combined:a1,b2,0.6`, `random`, ...).
    pub weights: Option<String>,
    pub seed: Option<u64>,
    /// Baseline partition for `report`: a communities file or `random`.
    pub baseline: Option<String>,
    /// Reuse a communities file instead of running Phase One again.
    pub communities: Option<PathBuf>,
    /// Fitted bandwidth (Kappa) and RTT (GEV) models for synthesis.
    pub bw_params: Option<PathBuf>,
    pub rtt_params: Option<PathBuf>,
    pub include_leader: bool,
    /// Skip the degree <= 1 pruning pass.
    pub keep_leaves: bool,
    #[serde(skip)]
    pub out_dir: PathBuf,
}

fn ser_format<S: serde::Serializer>(f: &SnapshotFormat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(match f {
        SnapshotFormat::Json => "json",
        SnapshotFormat::Csv => "csv",
    })
}

impl PipelineConfig {
    pub fn new(input: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        PipelineConfig {
            input: input.into(),
            format: SnapshotFormat::Json,
            max_iters: DEFAULT_MAX_ITERS,
            weights: None,
            seed: None,
            baseline: None,
            communities: None,
            bw_params: None,
            rtt_params: None,
            include_leader: false,
            keep_leaves: false,
            out_dir: out_dir.into(),
        }
    }

    fn report_options(&self) -> ReportOptions {
        ReportOptions {
            include_leader: self.include_leader,
        }
    }

    fn require_seed(&self, why: &str) -> CliResult<u64> {
        self.seed
            .ok_or_else(|| Error::InvalidArgument(format!("--seed is required for {why}")).into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config_hash: String,
    pub input_sha256: Option<String>,
    pub seed: Option<u64>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Path-valued settings are hashed by file content (when readable), so the
/// config hash names the computation rather than where its files live.
fn canonical_config<C: Serialize>(config: &C) -> Vec<u8> {
    let mut v = serde_json::to_value(config).expect("config serializes");
    if let Some(map) = v.as_object_mut() {
        for key in ["input", "samples", "communities", "bw_params", "rtt_params", "weights", "baseline"] {
            let Some(serde_json::Value::String(path)) = map.get(key) else { continue };
            if let Ok(bytes) = fs::read(path) {
                map.insert(key.to_string(), format!("sha256:{}", sha256_hex(&bytes)).into());
            }
        }
    }
    serde_json::to_vec(&v).expect("config serializes")
}

fn manifest<C: Serialize>(command: &str, config: &C, input: Option<&[u8]>, seed: Option<u64>) -> Manifest {
    let canonical = canonical_config(config);
    Manifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        config_hash: sha256_hex(&canonical),
        input_sha256: input.map(sha256_hex),
        seed,
    }
}

impl Manifest {
    fn csv_header(&self) -> String {
        format!(
            "# tool={} version={} command={} config_hash={} input_sha256={} seed={}\n",
            self.tool,
            self.version,
            self.command,
            self.config_hash,
            self.input_sha256.as_deref().unwrap_or("-"),
            self.seed.map_or_else(|| "-".to_string(), |s| s.to_string()),
        )
    }
}

fn read_file(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))).into()
    })
}

fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(Error::from)?;
    Ok(path)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e).into()
    }
}

struct LoadedGraph {
    graph: NetworkGraph,
    raw: Vec<u8>,
}

/// Read, parse and (unless disabled) prune the input snapshot.
fn load_graph(cfg: &PipelineConfig) -> CliResult<LoadedGraph> {
    let raw = read_file(&cfg.input)?;
    let parsed = graph::parse_snapshot(&raw, cfg.format)?;
    let graph = if cfg.keep_leaves {
        parsed
    } else {
        graph::prune_leaves(&parsed)
    };
    Ok(LoadedGraph { graph, raw })
}

/// Communities file contents.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommunitiesFile {
    pub manifest: Manifest,
    pub supersteps: usize,
    pub converged: bool,
    pub node_count: usize,
    pub edge_count: usize,
    pub sizes: Vec<usize>,
    pub labels: BTreeMap<String, Label>,
    pub communities: Vec<CommunityRecord>,
}

/// Accepts either a communities file or a bare `[{label, members}]` array.
#[derive(Deserialize)]
#[serde(untagged)]
enum CommunitySource {
    File { communities: Vec<CommunityRecord> },
    Bare(Vec<CommunityRecord>),
}

fn read_community_records(path: &Path) -> CliResult<Vec<CommunityRecord>> {
    let raw = read_file(path)?;
    let src: CommunitySource = serde_json::from_slice(&raw)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(match src {
        CommunitySource::File { communities } | CommunitySource::Bare(communities) => communities,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommunitiesSummary {
    pub path: PathBuf,
    pub supersteps: usize,
    pub sizes: Vec<usize>,
}

fn run_phase_one(g: &NetworkGraph, max_iters: usize) -> CliResult<(Vec<community::Community>, community::LabelState)> {
    let state = community::propagate_labels(g, max_iters)?;
    let comms = community::group_by_labels(g, &state)?;
    Ok((comms, state))
}

/// Phase One: write `communities.json`.
pub fn cmd_communities(cfg: &PipelineConfig) -> CliResult<CommunitiesSummary> {
    let loaded = load_graph(cfg)?;
    let g = &loaded.graph;
    let (comms, state) = run_phase_one(g, cfg.max_iters)?;
    let labels = state
        .labels
        .iter()
        .map(|(&id, &l)| (g.alias(id).unwrap_or_default().to_string(), l))
        .collect();
    let file = CommunitiesFile {
        manifest: manifest("communities", cfg, Some(&loaded.raw), cfg.seed),
        supersteps: state.iteration,
        converged: !state.changed,
        node_count: g.node_count(),
        edge_count: g.edge_count(),
        sizes: comms.iter().map(|c| c.size()).collect(),
        labels,
        communities: community::to_records(g, &comms),
    };
    let path = write_file(&cfg.out_dir, "communities.json", &to_json(&file))?;
    Ok(CommunitiesSummary {
        path,
        supersteps: file.supersteps,
        sizes: file.sizes,
    })
}

/// Fitted distribution file, as written by [`cmd_fit`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "lowercase")]
pub enum FittedParams {
    Gev(GevParams),
    Kappa4(Kappa4Params),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<Manifest>,
    #[serde(flatten)]
    pub fitted: FittedParams,
    pub lmoments: LMoments,
    pub ks: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fallback: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gev,
    Kappa4,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "gev" => Ok(Family::Gev),
            "kappa4" | "kappa" => Ok(Family::Kappa4),
            other => Err(Error::InvalidArgument(format!("unknown family `{other}` (expected gev or kappa4)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitConfig {
    pub samples: PathBuf,
    pub family: Family,
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
}

/// Newline-delimited numbers; blank lines and `#` comments are skipped.
pub fn parse_samples(data: &[u8]) -> crate::error::Result<Vec<f64>> {
    let text = std::str::from_utf8(data).map_err(|e| Error::Parse(format!("samples are not utf-8: {e}")))?;
    let mut xs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let x: f64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: `{t}` is not a number", i + 1)))?;
        if !x.is_finite() {
            return Err(Error::Parse(format!("line {}: value is not finite", i + 1)));
        }
        xs.push(x);
    }
    Ok(xs)
}

/// Fit a family to a sample file. Writes `fit_<family>.json` when an output
/// directory is set and returns the document.
pub fn cmd_fit(cfg: &FitConfig) -> CliResult<FitFile> {
    let raw = read_file(&cfg.samples)?;
    let xs = parse_samples(&raw)?;
    let lm = netmodel::sample_lmoments(&xs)?;
    lm.ratios()?;
    let mut doc = match cfg.family {
        Family::Gev => {
            let p = netmodel::fit_gev(&lm)?;
            FitFile {
                manifest: None,
                fitted: FittedParams::Gev(p),
                lmoments: lm,
                ks: gof_ks(&xs, |x| p.cdf(x))?,
                converged: None,
                fallback: None,
            }
        }
        Family::Kappa4 => {
            let fit = netmodel::fit_kappa4(&lm)?;
            let p = fit.params;
            FitFile {
                manifest: None,
                fitted: FittedParams::Kappa4(p),
                lmoments: lm,
                ks: gof_ks(&xs, |x| p.cdf(x))?,
                converged: Some(fit.converged),
                fallback: Some(fit.fallback),
            }
        }
    };
    doc.manifest = Some(manifest("fit", cfg, Some(&raw), None));
    if let Some(dir) = &cfg.out_dir {
        let name = match cfg.family {
            Family::Gev => "fit_gev.json",
            Family::Kappa4 => "fit_kappa4.json",
        };
        write_file(dir, name, &to_json(&doc))?;
    }
    Ok(doc)
}

fn read_fit(path: &Path) -> CliResult<FittedParams> {
    let raw = read_file(path)?;
    let doc: FitFile =
        serde_json::from_slice(&raw).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(doc.fitted)
}

/// Load the bandwidth and RTT models named in the config. Invalid models
/// map to exit code 4.
fn synthesis_params(cfg: &PipelineConfig) -> CliResult<Option<SynthesisParams>> {
    let (Some(bw), Some(rtt)) = (&cfg.bw_params, &cfg.rtt_params) else {
        if cfg.bw_params.is_some() || cfg.rtt_params.is_some() {
            return Err(Error::InvalidArgument("--bw and --rtt must be given together".into()).into());
        }
        return Ok(None);
    };
    let numeric = |e: Error| CliError::with_code(EXIT_NUMERIC, e);
    let bandwidth = match read_fit(bw)? {
        FittedParams::Kappa4(p) => Kappa4Params::new(p.xi, p.alpha, p.k, p.h).map_err(numeric)?,
        FittedParams::Gev(p) => Kappa4Params::new(p.mu, p.sigma, p.k, 0.0).map_err(numeric)?,
    };
    let rtt = match read_fit(rtt)? {
        FittedParams::Gev(p) => GevParams::new(p.mu, p.sigma, p.k).map_err(numeric)?,
        FittedParams::Kappa4(_) => {
            return Err(numeric(Error::InvalidArgument("the RTT model must be a GEV fit".into())));
        }
    };
    Ok(Some(SynthesisParams::new(bandwidth, rtt)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSummary {
    pub path: PathBuf,
    pub filled_links: usize,
    pub filled_nodes: usize,
}

/// Fill missing attributes of the input snapshot. The output keeps the
/// input document (including non-working entries) and only adds values and
/// `synthetic` flags, plus a manifest.
pub fn cmd_synth(cfg: &PipelineConfig) -> CliResult<SynthSummary> {
    let seed = cfg.require_seed("synthesis")?;
    let params = synthesis_params(cfg)?
        .ok_or_else(|| CliError::from(Error::InvalidArgument("synth needs --bw and --rtt fit files".into())))?;
    let raw = read_file(&cfg.input)?;
    let mut doc: Snapshot = match cfg.format {
        SnapshotFormat::Json => serde_json::from_slice(&raw).map_err(|e| Error::Parse(e.to_string()))?,
        SnapshotFormat::Csv => graph::graph_to_snapshot(&graph::parse_snapshot(&raw, SnapshotFormat::Csv)?),
    };
    let g = graph::graph_from_snapshot(&doc)?;
    let filled = netmodel::synthesize_attributes(&g, &params, seed);
    let ids = filled.alias_map();

    let (mut filled_links, mut filled_nodes) = (0, 0);
    for link in doc.links.iter_mut() {
        let (Some(&a), Some(&b)) = (ids.get(link.a.as_str()), ids.get(link.b.as_str())) else {
            continue;
        };
        let Some(e) = filled.edge(a, b) else { continue };
        if link.bandwidth_mbps.is_none() || link.rtt_ms.is_none() {
            link.bandwidth_mbps = link.bandwidth_mbps.or(e.bandwidth_mbps);
            link.rtt_ms = link.rtt_ms.or(e.rtt_ms);
            link.synthetic = true;
            filled_links += 1;
        }
    }
    for node in doc.nodes.iter_mut() {
        let Some(&id) = ids.get(node.id.as_str()) else { continue };
        let a = filled.attributes(id).expect("alias maps into the graph");
        if node.availability_pct.is_none() || node.latency_ms.is_none() {
            node.availability_pct = node.availability_pct.or(a.availability.map(|f| f * 100.0));
            node.latency_ms = node.latency_ms.or(a.latency_ms);
            node.synthetic = true;
            filled_nodes += 1;
        }
    }
    doc.manifest = Some(serde_json::to_value(manifest("synth", cfg, Some(&raw), Some(seed))).expect("manifest serializes"));
    let path = write_file(&cfg.out_dir, "snapshot_synth.json", &to_json(&doc))?;
    Ok(SynthSummary {
        path,
        filled_links,
        filled_nodes,
    })
}

/// Resolve `--weights` (path or spec). Defaults to absolute betweenness.
fn election_mode(cfg: &PipelineConfig) -> CliResult<ElectionMode> {
    let spec = cfg.weights.as_deref().unwrap_or("a1");
    let file = if Path::new(spec).is_file() {
        let raw = read_file(Path::new(spec))?;
        serde_json::from_slice::<WeightFile>(&raw).map_err(|e| Error::Parse(format!("{spec}: {e}")))?
    } else {
        WeightFile::from_spec(spec)?
    };
    Ok(file.resolve(cfg.seed)?)
}

/// Graph with attributes ready for scoring: synthesized if models are
/// configured, otherwise checked for completeness (exit 3 on gaps).
fn prepare_attributes(cfg: &PipelineConfig, g: NetworkGraph, mode: &ElectionMode) -> CliResult<NetworkGraph> {
    if let Some(params) = synthesis_params(cfg)? {
        let seed = cfg.require_seed("attribute synthesis")?;
        return Ok(netmodel::synthesize_attributes(&g, &params, seed));
    }
    if mode.needs_attributes() {
        let missing = missing_attributes(&g);
        if !missing.is_empty() {
            return Err(CliError::with_code(EXIT_MISSING, Error::MissingAttributes(missing)));
        }
    }
    Ok(g)
}

fn partition_for(cfg: &PipelineConfig, g: &NetworkGraph) -> CliResult<Vec<community::Community>> {
    match &cfg.communities {
        Some(path) => Ok(community::from_records(g, &read_community_records(path)?, false)?),
        None => Ok(run_phase_one(g, cfg.max_iters)?.0),
    }
}

#[derive(Debug, Clone, Serialize)]
struct RankedNode {
    node: String,
    score: f64,
    components: [f64; 5],
}

#[derive(Debug, Clone, Serialize)]
struct CommunityElection {
    label: Label,
    size: usize,
    component_size: usize,
    leader: String,
    ranking: Vec<RankedNode>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
enum ModeRecord {
    Weighted { weights: WeightConfig },
    Random { seed: u64 },
}

impl From<&ElectionMode> for ModeRecord {
    fn from(m: &ElectionMode) -> Self {
        match *m {
            ElectionMode::Weighted(w) => ModeRecord::Weighted { weights: w },
            ElectionMode::Random { seed } => ModeRecord::Random { seed },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct PlacementFile {
    manifest: Manifest,
    election: ModeRecord,
    communities: Vec<CommunityElection>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElectSummary {
    pub json_path: PathBuf,
    pub csv_path: PathBuf,
    /// `(community label, leader alias)`, ordered by label.
    pub leaders: Vec<(Label, String)>,
}

fn rows_csv(manifest: &Manifest, rows: &[(&str, &ReportRow)]) -> CliResult<String> {
    #[derive(Serialize)]
    struct Row<'a> {
        partition: &'a str,
        label: Label,
        size: usize,
        leader: &'a str,
        avg_hops: f64,
        max_degree: usize,
        avg_degree: f64,
        avg_bw_to_leader: Option<f64>,
        avg_rtt_to_leader: Option<f64>,
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for &(partition, r) in rows {
        w.serialize(Row {
            partition,
            label: r.label,
            size: r.size,
            leader: &r.leader,
            avg_hops: r.avg_hops,
            max_degree: r.max_degree,
            avg_degree: r.avg_degree,
            avg_bw_to_leader: r.avg_bw_to_leader,
            avg_rtt_to_leader: r.avg_rtt_to_leader,
        })
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    let body = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    let mut out = manifest.csv_header();
    out.push_str(std::str::from_utf8(&body).expect("csv output is utf-8"));
    Ok(out)
}

/// Phase Two: write `placement.json` (rankings) and `placement.csv`
/// (per-community metrics).
pub fn cmd_elect(cfg: &PipelineConfig) -> CliResult<ElectSummary> {
    let loaded = load_graph(cfg)?;
    let mode = election_mode(cfg)?;
    let g = prepare_attributes(cfg, loaded.graph, &mode)?;
    let mut comms = partition_for(cfg, &g)?;
    comms.sort_by_key(|c| c.label);
    let placed = place_all(&g, &comms, &mode, cfg.report_options())?;

    let alias = |id| g.alias(id).unwrap_or_default().to_string();
    let communities: Vec<CommunityElection> = placed
        .iter()
        .zip(&comms)
        .map(|(p, c)| CommunityElection {
            label: p.label,
            size: c.size(),
            component_size: p.ranking.ordered.len(),
            leader: alias(p.ranking.leader()),
            ranking: p
                .ranking
                .ordered
                .iter()
                .map(|s| RankedNode {
                    node: alias(s.node),
                    score: s.score,
                    components: s.components,
                })
                .collect(),
        })
        .collect();
    let man = manifest("elect", cfg, Some(&loaded.raw), cfg.seed);
    let leaders = communities.iter().map(|c| (c.label, c.leader.clone())).collect();
    let file = PlacementFile {
        manifest: man.clone(),
        election: (&mode).into(),
        communities,
    };
    let json_path = write_file(&cfg.out_dir, "placement.json", &to_json(&file))?;
    let rows: Vec<(&str, &ReportRow)> = placed.iter().map(|p| ("phase_one", &p.row)).collect();
    let csv_path = write_file(&cfg.out_dir, "placement.csv", &rows_csv(&man, &rows)?)?;
    Ok(ElectSummary {
        json_path,
        csv_path,
        leaders,
    })
}

#[derive(Debug, Clone, Serialize)]
struct ReportFile {
    manifest: Manifest,
    phase_one: PartitionSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    baseline: Option<PartitionSummary>,
    rows_phase_one: Vec<ReportRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rows_baseline: Option<Vec<ReportRow>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportSummary {
    pub files: Vec<PathBuf>,
    pub phase_one: PartitionSummary,
    pub baseline: Option<PartitionSummary>,
}

fn baseline_partition(cfg: &PipelineConfig, g: &NetworkGraph, phase_one: &[community::Community]) -> CliResult<Option<Vec<community::Community>>> {
    match cfg.baseline.as_deref() {
        None => Ok(None),
        Some("random") => {
            let seed = cfg.require_seed("a random baseline")?;
            let sizes: Vec<usize> = phase_one.iter().map(|c| c.size()).collect();
            Ok(Some(community::random_partition(g, &sizes, seed)?))
        }
        Some(path) => {
            // zone files may list nodes removed by preprocessing
            let recs = read_community_records(Path::new(path))?;
            Ok(Some(community::from_records(g, &recs, true)?))
        }
    }
}

/// Placement report for the Phase One partition, optionally side by side
/// with a baseline partition, plus ECDF data of per-node paths to leaders.
pub fn cmd_report(cfg: &PipelineConfig) -> CliResult<ReportSummary> {
    let loaded = load_graph(cfg)?;
    let mode = election_mode(cfg)?;
    let g = prepare_attributes(cfg, loaded.graph, &mode)?;
    let mut phase_one = partition_for(cfg, &g)?;
    phase_one.sort_by_key(|c| c.label);
    let baseline = baseline_partition(cfg, &g, &phase_one)?;
    let opts = cfg.report_options();
    let man = manifest("report", cfg, Some(&loaded.raw), cfg.seed);

    let placed = place_all(&g, &phase_one, &mode, opts)?;
    let report_a = metrics::PlacementReport {
        rows: placed.iter().map(|p| p.row.clone()).collect(),
    };
    let (summary_a, summary_b, report_b) = match &baseline {
        Some(base) => {
            let cmp = compare_partitions(&g, &phase_one, base, &mode, opts)?;
            (cmp.summary_a, Some(cmp.summary_b), Some(cmp.b))
        }
        None => (PartitionSummary::of(&report_a), None, None),
    };

    let mut files = Vec::new();
    let mut rows: Vec<(&str, &ReportRow)> = report_a.rows.iter().map(|r| ("phase_one", r)).collect();
    if let Some(b) = &report_b {
        rows.extend(b.rows.iter().map(|r| ("baseline", r)));
    }
    files.push(write_file(&cfg.out_dir, "report.csv", &rows_csv(&man, &rows)?)?);
    let file = ReportFile {
        manifest: man.clone(),
        phase_one: summary_a.clone(),
        baseline: summary_b.clone(),
        rows_phase_one: report_a.rows.clone(),
        rows_baseline: report_b.map(|r| r.rows),
    };
    files.push(write_file(&cfg.out_dir, "report.json", &to_json(&file))?);

    let samples: Vec<&metrics::PathSample> = placed.iter().flat_map(|p| &p.paths).collect();
    let series: [(&str, Vec<f64>); 3] = [
        ("ecdf_hops.csv", samples.iter().map(|s| s.hops as f64).collect()),
        ("ecdf_bw.csv", samples.iter().filter_map(|s| s.bottleneck_bw).collect()),
        ("ecdf_rtt.csv", samples.iter().filter_map(|s| s.total_rtt).collect()),
    ];
    for (name, xs) in series {
        if xs.is_empty() {
            continue;
        }
        let body = man.csv_header() + &ecdf(&xs)?.to_csv();
        files.push(write_file(&cfg.out_dir, name, &body)?);
    }
    Ok(ReportSummary {
        files,
        phase_one: summary_a,
        baseline: summary_b,
    })
}
