//! The `hyperrec` command line.
//!
//! Every command writes `run_config.json` into its output directory before
//! anything else, then its outputs. Exit codes: 0 ok, 1 internal or output
//! failure, 2 bad input, 3 bad parameters or an exceeded search budget.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperrec_core::analytics::{
    balance_curve, ks_d_statistic, mean_gap, quartiles, reciprocity_table, robustness_correlations, significance_test,
    zero_nonzero_degree_split, CurveData, SmoothingConfig,
};
use hyperrec_core::axioms::satisfaction_matrix;
use hyperrec_core::generators::{
    baseline_generate, estimate_distributions, null_model, redi_generate, AttachmentMode, GeneratorParams,
};
use hyperrec_core::hypergraph::OverlapPolicy;
use hyperrec_core::search::{brute_force_reciprocity, profile, SearchProfile};
use hyperrec_core::{ArcId, DirectedHypergraph, ReciprocityConfig, SearchConfig, SearchMode};
use serde::Serialize;

use crate::io::{read_path, resolve_input, write_path, Dataset, Format, IngestOptions, IoError};
use crate::parallel;
use crate::report::{
    curve_rows, matrix_table, write_csv, write_json, AlphaTableRow, ArcRow, MatrixRow, QuartileSummary, ReportError,
};

#[derive(Parser, Debug)]
#[command(name = "hyperrec", version, about = "Reciprocity of directed hypergraphs")]
pub struct Cli {
    /// Worker threads; 0 uses every core, 1 runs serially
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Per-arc and hypergraph reciprocity
    Measure(MeasureArgs),
    /// Null, baseline or ReDi hypergraphs
    Generate(GenerateArgs),
    /// Level-wise tables, degree relations, node curves and comparisons
    Analyze(AnalyzeArgs),
    /// Which measures satisfy which axioms, on fuzzed configurations
    CompareMeasures(CompareArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct IngestArgs {
    /// Input format; taken from the extension when omitted
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Drop shared nodes from the tail instead of rejecting the arc
    #[arg(long)]
    pub repair_overlaps: bool,
    /// Skip arcs with more head nodes than this
    #[arg(long)]
    pub max_head_size: Option<usize>,
}

impl IngestArgs {
    fn options(&self) -> IngestOptions {
        IngestOptions {
            overlap: if self.repair_overlaps { OverlapPolicy::RepairTail } else { OverlapPolicy::Reject },
            max_head_size: self.max_head_size,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SearchArg {
    /// One representative per group (FastHyperRec)
    Psi,
    /// Any number of members per group; exact for every alpha
    Groups,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SearchArgs {
    #[arg(long, value_enum, default_value_t = SearchArg::Psi)]
    pub search: SearchArg,
    /// Largest reduced search space accepted per arc
    #[arg(long, default_value_t = 25)]
    pub max_psi: usize,
}

impl SearchArgs {
    fn config(&self) -> Result<SearchConfig, CliError> {
        let mode = match self.search {
            SearchArg::Psi => SearchMode::Representatives,
            SearchArg::Groups => SearchMode::Groups,
        };
        let c = SearchConfig { max_psi: self.max_psi, mode, ..SearchConfig::default() };
        c.validate()?;
        Ok(c)
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct MeasureArgs {
    /// Hypergraph file (.tsv or .json)
    #[arg(long, short)]
    pub input: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    pub ingest: IngestArgs,
    /// Size-penalty exponents; repeat for several
    #[arg(long, num_args = 1.., default_values_t = [1.0])]
    pub alpha: Vec<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub search: SearchArgs,
    /// Keep going when an arc exceeds the search budget
    #[arg(long)]
    pub lenient: bool,
    /// Compare against brute force on the first --max-arcs arcs
    #[arg(long)]
    pub oracle_check: bool,
    #[arg(long, default_value_t = 10)]
    pub max_arcs: usize,
    #[arg(long, short, default_value = "hyperrec-out")]
    pub out: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Redi,
    /// ReDi with both betas forced to zero
    Baseline,
    /// Every arc redrawn uniformly, sizes kept
    Null,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Attachment {
    Group,
    Node,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    /// Reference hypergraph: the one to randomize, or the source of size distributions
    #[arg(long = "ref")]
    pub reference: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    pub ingest: IngestArgs,
    /// Node count; defaults to the reference's
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 5)]
    pub initial_arcs: usize,
    #[arg(long, default_value_t = 0.0)]
    pub beta1: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta2: f64,
    /// First seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of hypergraphs, seeds seed..seed+seeds
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long, value_enum, default_value_t = Attachment::Group)]
    pub attachment: Attachment,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub out_format: Format,
    /// Alpha for the r(G) statistics in stats.json
    #[arg(long, default_value_t = 1e-4)]
    pub alpha: f64,
    /// Write the hypergraphs only
    #[arg(long)]
    pub skip_measure: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub search: SearchArgs,
    #[arg(long, short, default_value = "hyperrec-out")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct AnalyzeArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    pub ingest: IngestArgs,
    /// Alpha for the arc- and node-level analyses
    #[arg(long, default_value_t = 1e-4)]
    pub alpha: f64,
    /// Alphas for the hypergraph-level table and robustness correlations
    #[arg(long, num_args = 1.., value_delimiter = ',', default_values_t = [1e-4, 0.5, 1.0])]
    pub alphas: Vec<f64>,
    /// `null:mean` for randomized copies of the input, or a path to another hypergraph
    #[arg(long)]
    pub against: Option<String>,
    #[arg(long, default_value_t = 30)]
    pub null_seeds: u64,
    /// First null-model seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 11)]
    pub window: usize,
    #[arg(long, default_value_t = 3)]
    pub polyorder: usize,
    #[arg(long, default_value_t = 100)]
    pub bins: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub search: SearchArgs,
    #[arg(long, short, default_value = "hyperrec-out")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CompareArgs {
    /// Random configurations per axiom
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, num_args = 1.., default_values_t = [1.0])]
    pub alpha: Vec<f64>,
    #[arg(long, short, default_value = "hyperrec-out")]
    pub out: PathBuf,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub const INTERNAL: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const PARAMETER: i32 = 3;

    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<hyperrec_core::Error> for CliError {
    fn from(e: hyperrec_core::Error) -> Self {
        use hyperrec_core::Error::*;
        let code = match &e {
            InvalidArc { .. } | OverlappingArc { .. } | NodeOutOfRange { .. } | Undefined(_) | NotNormalized(_) => {
                Self::INPUT
            }
            Parameter(_) | SearchBudget { .. } | StateBudget { .. } | OracleLimit { .. } | Generation { .. } => {
                Self::PARAMETER
            }
            ArcOutOfRange(_) | Precondition(_) => Self::INTERNAL,
        };
        Self::new(code, e.to_string())
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        let code = if matches!(e, IoError::Write(_)) { Self::INTERNAL } else { Self::INPUT };
        Self::new(code, e.to_string())
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        Self::new(Self::INTERNAL, e.to_string())
    }
}

#[derive(Serialize)]
struct RunConfig<'a, T: Serialize> {
    command: &'static str,
    version: &'static str,
    threads: usize,
    args: &'a T,
}

fn prepare_out<T: Serialize>(out: &Path, command: &'static str, threads: usize, args: &T) -> Result<(), CliError> {
    std::fs::create_dir_all(out)
        .map_err(|e| CliError::new(CliError::INTERNAL, format!("{}: {e}", out.display())))?;
    write_json(&out.join("run_config.json"), &RunConfig { command, version: env!("CARGO_PKG_VERSION"), threads, args })?;
    Ok(())
}

fn alpha_config(alpha: f64) -> Result<ReciprocityConfig, CliError> {
    Ok(ReciprocityConfig::new(alpha)?)
}

fn load(path: &Path, ingest: &IngestArgs) -> Result<Dataset, CliError> {
    Ok(read_path(&resolve_input(path), ingest.format, &ingest.options())?)
}

fn mean_sd(v: &[f64]) -> (f64, Option<f64>) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let sd = (v.len() > 1).then(|| (v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0)).sqrt());
    (m, sd)
}

/// Parses arguments from the process and runs; returns the exit code.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { CliError::PARAMETER } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let pool = parallel::pool(cli.threads).map_err(|e| CliError::new(CliError::INTERNAL, e.to_string()))?;
    match &cli.command {
        Command::Measure(a) => measure(a, &pool),
        Command::Generate(a) => generate(a, &pool),
        Command::Analyze(a) => analyze(a, &pool),
        Command::CompareMeasures(a) => compare_measures(a, &pool),
    }
}

#[derive(Serialize)]
struct AlphaResult {
    alpha: f64,
    r_g: f64,
    r_g_percent: f64,
    file: String,
}

#[derive(Serialize)]
struct OracleRow {
    arc_id: u32,
    alpha: f64,
    search: f64,
    brute_force: f64,
    agrees: bool,
}

#[derive(Serialize)]
struct OracleSummary {
    arcs: usize,
    comparisons: usize,
    mismatches: usize,
}

#[derive(Serialize)]
struct MeasureSummary {
    input: String,
    nodes: usize,
    arcs: usize,
    duplicates: usize,
    filtered: usize,
    failed_arcs: usize,
    max_omega: usize,
    max_psi: usize,
    total_searched: u64,
    results: Vec<AlphaResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleSummary>,
}

fn measure(a: &MeasureArgs, pool: &rayon::ThreadPool) -> Result<(), CliError> {
    let cfgs = a.alpha.iter().map(|&x| alpha_config(x)).collect::<Result<Vec<_>, _>>()?;
    let scfg = a.search.config()?;
    if a.oracle_check && a.max_arcs > 20 {
        return Err(CliError::new(CliError::PARAMETER, "--max-arcs above 20 makes the brute-force check too slow"));
    }
    prepare_out(&a.out, "measure", pool.current_num_threads(), a)?;
    let data = load(&a.input, &a.ingest)?;
    let g = &data.graph;
    let started = Instant::now();

    let profiles: Vec<Result<SearchProfile, hyperrec_core::Error>> = parallel::profiles(pool, g, &scfg);
    let mut failed = 0;
    for p in &profiles {
        if let Err(e) = p {
            if !a.lenient {
                return Err(e.clone().into());
            }
            failed += 1;
        }
    }
    let ok: Vec<&SearchProfile> = profiles.iter().filter_map(|p| p.as_ref().ok()).collect();
    if ok.is_empty() {
        return Err(hyperrec_core::Error::Undefined("reciprocity of a hypergraph without arcs").into());
    }

    let mut results = Vec::new();
    for cfg in &cfgs {
        let file = format!("arcs_alpha_{}.csv", cfg.alpha);
        let rows = profiles.iter().enumerate().map(|(k, p)| match p {
            Ok(p) => ArcRow::ok(&p.resolve(cfg.alpha)),
            Err(e) => ArcRow::failed(k as u32, e.to_string()),
        });
        write_csv(&a.out.join(&file), rows)?;
        let r_g = ok.iter().map(|p| p.resolve(cfg.alpha).value).sum::<f64>() / ok.len() as f64;
        println!("alpha={}\tr(G)={r_g:.6}\tr(G)*100={:.3}", cfg.alpha, r_g * 100.0);
        results.push(AlphaResult { alpha: cfg.alpha, r_g, r_g_percent: r_g * 100.0, file });
    }
    if failed > 0 {
        eprintln!("warning: {failed} arcs failed and are left out of r(G)");
    }

    let oracle = if a.oracle_check { Some(oracle_check(a, g, &cfgs, &scfg)?) } else { None };
    let summary = MeasureSummary {
        input: a.input.display().to_string(),
        nodes: g.num_nodes(),
        arcs: g.num_arcs(),
        duplicates: data.duplicates,
        filtered: data.filtered,
        failed_arcs: failed,
        max_omega: ok.iter().map(|p| p.omega).max().unwrap_or(0),
        max_psi: ok.iter().map(|p| p.psi).max().unwrap_or(0),
        total_searched: ok.iter().map(|p| p.searched).sum(),
        results,
        oracle,
    };
    write_json(&a.out.join("summary.json"), &summary)?;
    println!("{} arcs in {:.3}s", g.num_arcs(), started.elapsed().as_secs_f64());
    Ok(())
}

fn oracle_check(
    a: &MeasureArgs,
    g: &DirectedHypergraph,
    cfgs: &[ReciprocityConfig],
    scfg: &SearchConfig,
) -> Result<OracleSummary, CliError> {
    let ids: Vec<ArcId> = g.arc_ids().take(a.max_arcs).collect();
    let sub = g.restrict_to(&ids);
    let oracle_cfg = SearchConfig { oracle_limit: a.max_arcs.max(1), ..*scfg };
    let mut rows = Vec::new();
    for t in sub.arc_ids() {
        let p = profile(&sub, t, scfg)?;
        for cfg in cfgs {
            let fast = p.resolve(cfg.alpha).value;
            let brute = brute_force_reciprocity(&sub, t, cfg, &oracle_cfg)?.value;
            let agrees = (fast - brute).abs() <= 1e-12;
            if !agrees {
                eprintln!("warning: oracle mismatch on arc {t} at alpha={}: search {fast} brute force {brute}", cfg.alpha);
            }
            rows.push(OracleRow { arc_id: t.0, alpha: cfg.alpha, search: fast, brute_force: brute, agrees });
        }
    }
    let summary = OracleSummary {
        arcs: sub.num_arcs(),
        comparisons: rows.len(),
        mismatches: rows.iter().filter(|r| !r.agrees).count(),
    };
    write_csv(&a.out.join("oracle.csv"), rows)?;
    println!("oracle check: {} comparisons, {} mismatches", summary.comparisons, summary.mismatches);
    Ok(summary)
}

#[derive(Serialize)]
struct GeneratedFile {
    file: String,
    seed: u64,
    nodes: usize,
    arcs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    r_g: Option<f64>,
}

#[derive(Serialize)]
struct GenerateStats {
    model: Model,
    reference: String,
    alpha: f64,
    files: Vec<GeneratedFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r_g_mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r_g_sd: Option<f64>,
}

fn graph_reciprocity(
    pool: &rayon::ThreadPool,
    g: &DirectedHypergraph,
    cfg: &ReciprocityConfig,
    scfg: &SearchConfig,
) -> Result<Vec<f64>, CliError> {
    Ok(parallel::reciprocities(pool, g, cfg, scfg)?.into_iter().map(|a| a.value).collect())
}

fn generate(a: &GenerateArgs, pool: &rayon::ThreadPool) -> Result<(), CliError> {
    let cfg = alpha_config(a.alpha)?;
    let scfg = a.search.config()?;
    if a.seeds == 0 {
        return Err(CliError::new(CliError::PARAMETER, "--seeds must be at least 1"));
    }
    prepare_out(&a.out, "generate", pool.current_num_threads(), a)?;
    let reference = load(&a.reference, &a.ingest)?;
    let base = GeneratorParams {
        n: a.n.unwrap_or(reference.graph.num_nodes()),
        initial_arcs: a.initial_arcs,
        beta1: a.beta1,
        beta2: a.beta2,
        attachment: match a.attachment {
            Attachment::Group => AttachmentMode::GroupDegree,
            Attachment::Node => AttachmentMode::NodeDegree,
        },
        ..GeneratorParams::default()
    };
    let dists = match a.model {
        Model::Null => None,
        Model::Redi | Model::Baseline => Some(estimate_distributions(&reference.graph)?),
    };
    let model_name = match a.model {
        Model::Redi => "redi",
        Model::Baseline => "baseline",
        Model::Null => "null",
    };

    let mut files = Vec::new();
    for seed in a.seed..a.seed + a.seeds {
        let data = match (a.model, &dists) {
            (Model::Null, _) => Dataset {
                graph: null_model(&reference.graph, seed)?,
                labels: reference.labels.clone(),
                duplicates: 0,
                filtered: 0,
            },
            (Model::Redi, Some(d)) => Dataset::unlabeled(redi_generate(&GeneratorParams { seed, ..base.clone() }, d)?),
            (Model::Baseline, Some(d)) => {
                Dataset::unlabeled(baseline_generate(&GeneratorParams { seed, ..base.clone() }, d)?)
            }
            _ => unreachable!("distributions are estimated for every generative model"),
        };
        let file = format!("{model_name}_seed{seed}.{}", a.out_format.extension());
        write_path(&data, &a.out.join(&file), a.out_format)?;
        let r_g = if a.skip_measure || data.graph.is_empty() {
            None
        } else {
            let per_arc = graph_reciprocity(pool, &data.graph, &cfg, &scfg)?;
            Some(per_arc.iter().sum::<f64>() / per_arc.len() as f64)
        };
        files.push(GeneratedFile { file, seed, nodes: data.graph.num_nodes(), arcs: data.graph.num_arcs(), r_g });
    }

    let values: Vec<f64> = files.iter().filter_map(|f| f.r_g).collect();
    let (r_g_mean, r_g_sd) = if values.is_empty() {
        (None, None)
    } else {
        let (m, sd) = mean_sd(&values);
        (Some(m), sd)
    };
    if let Some(m) = r_g_mean {
        match r_g_sd {
            Some(sd) => println!("{} hypergraphs: mean r(G)*100 = {:.3} (sd {:.3})", files.len(), m * 100.0, sd * 100.0),
            None => println!("{} hypergraph: r(G)*100 = {:.3}", files.len(), m * 100.0),
        }
    }
    let stats = GenerateStats {
        model: a.model,
        reference: a.reference.display().to_string(),
        alpha: a.alpha,
        files,
        r_g_mean,
        r_g_sd,
    };
    write_json(&a.out.join("stats.json"), &stats)?;
    Ok(())
}

#[derive(Serialize)]
struct Robustness {
    alpha_a: f64,
    alpha_b: f64,
    pearson: Option<f64>,
    spearman: Option<f64>,
}

#[derive(Serialize)]
struct SideSummary {
    head_out: Option<QuartileSummary>,
    tail_in: Option<QuartileSummary>,
}

#[derive(Serialize)]
struct DegreeSummary {
    zero: SideSummary,
    nonzero: SideSummary,
    /// KS D between the zero and non-zero samples, IQR-trimmed.
    ks_head_out: Option<f64>,
    ks_tail_in: Option<f64>,
}

#[derive(Serialize)]
struct ZSummary {
    z: f64,
    p: f64,
}

#[derive(Serialize)]
struct Comparison {
    against: String,
    samples: usize,
    real_r_g: f64,
    other_r_g_mean: f64,
    other_r_g_sd: Option<f64>,
    /// KS D between real and pooled arc-level values.
    ks_d: Option<f64>,
    /// Real arc-level values against the pooled ones.
    z_test: Option<ZSummary>,
    /// Mean absolute gap between smoothed balance curves, averaged over samples.
    curve_gap: Option<f64>,
}

#[derive(Serialize)]
struct Analysis {
    input: String,
    nodes: usize,
    arcs: usize,
    alpha: f64,
    r_g: f64,
    alpha_table: Vec<AlphaTableRow>,
    robustness: Vec<Robustness>,
    degrees: DegreeSummary,
    curve_peak: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comparison: Option<Comparison>,
}

fn side(values_h: Vec<f64>, values_t: Vec<f64>) -> SideSummary {
    let q = |v: &[f64]| quartiles(v).ok().map(|q| QuartileSummary::of(v.len(), &q));
    SideSummary { head_out: q(&values_h), tail_in: q(&values_t) }
}

fn analyze(a: &AnalyzeArgs, pool: &rayon::ThreadPool) -> Result<(), CliError> {
    let cfg = alpha_config(a.alpha)?;
    for &x in &a.alphas {
        alpha_config(x)?;
    }
    let scfg = a.search.config()?;
    let smoothing = SmoothingConfig { window: a.window, polyorder: a.polyorder, bins: a.bins };
    smoothing.validate()?;
    let against = match a.against.as_deref() {
        None => None,
        Some("null:mean") => {
            if a.null_seeds == 0 {
                return Err(CliError::new(CliError::PARAMETER, "--null-seeds must be at least 1"));
            }
            Some(None)
        }
        Some(s) if s.starts_with("null:") => {
            return Err(CliError::new(CliError::PARAMETER, format!("unknown comparison {s:?}; use null:mean or a path")));
        }
        Some(path) => Some(Some(PathBuf::from(path))),
    };
    prepare_out(&a.out, "analyze", pool.current_num_threads(), a)?;
    let data = load(&a.input, &a.ingest)?;
    let g = &data.graph;
    if g.is_empty() {
        return Err(hyperrec_core::Error::Undefined("analysis of a hypergraph without arcs").into());
    }

    let profiles = parallel::profiles_strict(pool, g, &scfg)?;
    let table = reciprocity_table(&profiles, &a.alphas)?;
    let alpha_table: Vec<AlphaTableRow> = table.iter().map(AlphaTableRow::from).collect();
    write_csv(&a.out.join("alpha_table.csv"), alpha_table.iter())?;
    for row in &alpha_table {
        println!("alpha={}\tr(G)*100={:.3}", row.alpha, row.r_g_percent);
    }

    let per_alpha: Vec<Vec<f64>> =
        a.alphas.iter().map(|&x| profiles.iter().map(|p| p.resolve(x).value).collect()).collect();
    let mut robustness = Vec::new();
    for i in 0..a.alphas.len() {
        for j in i + 1..a.alphas.len() {
            let c = robustness_correlations(&per_alpha[i], &per_alpha[j]).ok();
            robustness.push(Robustness {
                alpha_a: a.alphas[i],
                alpha_b: a.alphas[j],
                pearson: c.map(|c| c.0),
                spearman: c.map(|c| c.1),
            });
        }
    }

    let per_arc: Vec<f64> = profiles.iter().map(|p| p.resolve(cfg.alpha).value).collect();
    let r_g = per_arc.iter().sum::<f64>() / per_arc.len() as f64;
    let split = zero_nonzero_degree_split(g, &per_arc)?;
    let ks = |x: Vec<f64>, y: Vec<f64>| ks_d_statistic(&x, &y).ok();
    let degrees = DegreeSummary {
        ks_head_out: ks(split.head_out(false, true), split.head_out(true, true)),
        ks_tail_in: ks(split.tail_in(false, true), split.tail_in(true, true)),
        zero: side(split.head_out(false, false), split.tail_in(false, false)),
        nonzero: side(split.head_out(true, false), split.tail_in(true, false)),
    };

    let curve = balance_curve(g, &per_arc, &smoothing).ok();
    if let Some(c) = &curve {
        write_csv(&a.out.join("node_curve.csv"), curve_rows(c))?;
    }

    let comparison = match against {
        None => None,
        Some(target) => Some(compare(a, pool, &cfg, &scfg, &smoothing, g, target, r_g, &per_arc, curve.as_ref())?),
    };
    if let Some(c) = &comparison {
        println!(
            "real r(G)*100={:.3}\t{} mean r(G)*100={:.3}\tKS D={}",
            c.real_r_g * 100.0,
            c.against,
            c.other_r_g_mean * 100.0,
            c.ks_d.map_or("n/a".into(), |d| format!("{d:.3}"))
        );
    }

    let analysis = Analysis {
        input: a.input.display().to_string(),
        nodes: g.num_nodes(),
        arcs: g.num_arcs(),
        alpha: cfg.alpha,
        r_g,
        alpha_table,
        robustness,
        degrees,
        curve_peak: curve.as_ref().and_then(CurveData::argmax),
        comparison,
    };
    write_json(&a.out.join("analysis.json"), &analysis)?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn compare(
    a: &AnalyzeArgs,
    pool: &rayon::ThreadPool,
    cfg: &ReciprocityConfig,
    scfg: &SearchConfig,
    smoothing: &SmoothingConfig,
    g: &DirectedHypergraph,
    target: Option<PathBuf>,
    real_r_g: f64,
    real: &[f64],
    real_curve: Option<&CurveData>,
) -> Result<Comparison, CliError> {
    let is_null = target.is_none();
    let (label, others): (String, Vec<DirectedHypergraph>) = match target {
        None => {
            let graphs = (a.seed..a.seed + a.null_seeds).map(|s| null_model(g, s)).collect::<Result<_, _>>()?;
            ("null".into(), graphs)
        }
        Some(path) => {
            let other = load(&path, &a.ingest)?.graph;
            if other.is_empty() {
                return Err(hyperrec_core::Error::Undefined("comparison against a hypergraph without arcs").into());
            }
            (path.display().to_string(), vec![other])
        }
    };
    let mut pooled = Vec::new();
    let mut means = Vec::new();
    let mut gaps = Vec::new();
    for (i, other) in others.iter().enumerate() {
        let values = graph_reciprocity(pool, other, cfg, scfg)?;
        means.push(values.iter().sum::<f64>() / values.len() as f64);
        if let (Some(rc), Ok(oc)) = (real_curve, balance_curve(other, &values, smoothing)) {
            if i == 0 && is_null {
                write_csv(&a.out.join("null_curve.csv"), curve_rows(&oc))?;
            }
            if let Ok(gap) = mean_gap(rc, &oc) {
                gaps.push(gap);
            }
        }
        pooled.extend(values);
    }
    let (other_r_g_mean, other_r_g_sd) = mean_sd(&means);
    Ok(Comparison {
        against: label,
        samples: others.len(),
        real_r_g,
        other_r_g_mean,
        other_r_g_sd,
        ks_d: ks_d_statistic(real, &pooled).ok(),
        z_test: significance_test(real, &pooled).ok().map(|t| ZSummary { z: t.z, p: t.p }),
        curve_gap: (!gaps.is_empty()).then(|| gaps.iter().sum::<f64>() / gaps.len() as f64),
    })
}

fn compare_measures(a: &CompareArgs, pool: &rayon::ThreadPool) -> Result<(), CliError> {
    for &x in &a.alpha {
        alpha_config(x)?;
    }
    prepare_out(&a.out, "compare-measures", pool.current_num_threads(), a)?;
    let mut rows = Vec::new();
    for &alpha in &a.alpha {
        let cells = satisfaction_matrix(a.trials, a.seed, alpha)?;
        println!("alpha={alpha}");
        print!("{}", matrix_table(&cells));
        rows.extend(cells.iter().map(|c| MatrixRow::new(alpha, c)));
    }
    write_csv(&a.out.join("matrix.csv"), rows)?;
    Ok(())
}
