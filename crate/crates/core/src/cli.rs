//! Command-line interface: argument types, dispatch and exit codes.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | I/O or other error |
//! | 2 | usage error (reported by the argument parser) |
//! | 3 | input parse error |
//! | 4 | precondition violated (disconnected input, three-component parent set, ...) |
//! | 5 | verification failure: a distance bound or certificate failed |
//! | 6 | inconclusive: a search ran out of budget |
//! | 7 | recognition found a forbidden structure |
//!
//! Reports are JSON objects with a `facts` part that is a function of the
//! configuration alone and a `timings` part that is dropped under
//! `--deterministic`.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::checks::{check_host, CheckOptions, CheckReport, DEFAULT_BUDGET};
use crate::diameter::{diameter_exact, diameter_via_embedding, DiameterError};
use crate::embed::{embed, EmbedError, EmbedMode, EmbeddingResult};
use crate::generators::{generate, Family, GenError, GenSpec};
use crate::graph::{Graph, GraphError};
use crate::layering::{build_layering, check_layering_invariants, LayeringError};
use crate::oracles::{find_truemper_configuration, is_universally_signable, k23_free_by_minor_search, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_VERIFICATION: i32 = 5;
pub const EXIT_INCONCLUSIVE: i32 = 6;
pub const EXIT_NOT_FREE: i32 = 7;

/// Largest `n` for which suite instances of `K_{2,3}`-free families are
/// certified by the configuration search.
pub const CERTIFY_MAX_N: usize = 30;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: GraphError },
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Other(_) => EXIT_OTHER,
            CliError::Parse { .. } | CliError::Gen(GenError::Parse { .. }) => EXIT_PARSE,
            CliError::Gen(GenError::InvalidParameter(_)) | CliError::Precondition(_) => EXIT_PRECONDITION,
        }
    }
}

impl From<EmbedError> for CliError {
    fn from(e: EmbedError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<LayeringError> for CliError {
    fn from(e: LayeringError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<DiameterError> for CliError {
    fn from(e: DiameterError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

/// A complete, serializable description of one run.
#[derive(Debug, Clone, PartialEq, Parser, Serialize, Deserialize)]
#[command(name = "k23embed", version, about = "Embed K_{2,3}-induced-minor-free graphs into tree-width-2 graphs and verify the result")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Command {
    /// Generate a graph and print its edge list.
    Gen(GenArgs),
    /// Embed a graph; writes the host graph edge list and the branch trace.
    Embed(EmbedArgs),
    /// Embed (or read a host graph) and run every check.
    Check(CheckArgs),
    /// Search for forbidden induced structures in the input.
    Recognize(RecognizeArgs),
    /// Diameter of the input through its embedding.
    Diam(DiamArgs),
    /// Generate, embed and check a corpus.
    Suite(SuiteArgs),
    /// Time the embedding on a doubling size ladder.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct FamilyArgs {
    /// tree, cycle, chordal, split, outerplanar, k23, broken_wheel or erdos_renyi.
    #[arg(long)]
    pub family: String,
    /// Clique size bound for chordal graphs.
    #[arg(long)]
    pub max_clique: Option<usize>,
    /// Clique size for split graphs.
    #[arg(long)]
    pub clique: Option<usize>,
    /// Edge probability for split and random graphs.
    #[arg(long)]
    pub p: Option<f64>,
    /// Diagonal drop probability for outerplanar graphs.
    #[arg(long)]
    pub drop: Option<f64>,
}

impl FamilyArgs {
    pub fn spec(&self, n: usize, seed: u64) -> Result<GenSpec, CliError> {
        let mut family = Family::default_for(&self.family, n)?;
        match &mut family {
            Family::Chordal { max_clique } => *max_clique = self.max_clique.unwrap_or(*max_clique),
            Family::Split { clique, p } => {
                *clique = self.clique.unwrap_or(*clique);
                *p = self.p.unwrap_or(*p);
            }
            Family::Outerplanar { drop } => *drop = self.drop.unwrap_or(*drop),
            Family::ErdosRenyi { p } => *p = self.p.unwrap_or(*p),
            _ => {}
        }
        Ok(GenSpec::new(family, n, seed))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeArg {
    General,
    Fast,
}

impl From<ModeArg> for EmbedMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::General => EmbedMode::General,
            ModeArg::Fast => EmbedMode::UniversallySignableFast,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct GenArgs {
    /// Full generator spec, e.g. `split:n=40,seed=3,clique=10`; replaces the
    /// family flags.
    #[arg(long, conflicts_with_all = ["family", "n", "seed"])]
    pub spec: Option<String>,
    /// tree, cycle, chordal, split, outerplanar, k23, broken_wheel or erdos_renyi.
    #[arg(long, required_unless_present = "spec")]
    pub family: Option<String>,
    #[arg(long)]
    pub max_clique: Option<usize>,
    #[arg(long)]
    pub clique: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub drop: Option<f64>,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output edge list (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct EmbedArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::General)]
    pub mode: ModeArg,
    /// Host graph edge list (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Branch trace JSON.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub deterministic: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct CheckArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Host graph to check instead of embedding the input.
    #[arg(long)]
    pub host: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::General)]
    pub mode: ModeArg,
    /// Node-expansion budget for each structure search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Also check induced cycles of the host graph up to this length.
    #[arg(long)]
    pub cycles: Option<usize>,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub deterministic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecognizeMethod {
    /// Theta, pyramid, long prism, broken wheel.
    Truemper,
    /// Theta, pyramid, prism, wheel.
    UniversallySignable,
    /// Exhaustive induced-minor search for K_{2,3} (at most 12 vertices).
    DirectMinor,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct RecognizeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = RecognizeMethod::Truemper)]
    pub method: RecognizeMethod,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct DiamArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::General)]
    pub mode: ModeArg,
    /// Also compute the exact diameter and the gap.
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub deterministic: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SuiteArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    /// Instance `i` uses seed `seed + i`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    /// Embed from every root instead of `--root`.
    #[arg(long)]
    pub sweep_roots: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::General)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub deterministic: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct BenchArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', default_values_t = vec![1000, 2000, 4000, 8000])]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::General)]
    pub mode: ModeArg,
    /// Repetitions per size; the fastest is reported.
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    /// CSV table with header `phase,n,m,millis` (stdout if absent).
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Parses arguments and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}

/// Dispatches one command and returns its exit code.
pub fn run(config: &RunConfig) -> i32 {
    let result = match &config.command {
        Command::Gen(a) => run_gen(a),
        Command::Embed(a) => run_embed(a),
        Command::Check(a) => run_check(a),
        Command::Recognize(a) => run_recognize(a),
        Command::Diam(a) => run_diam(a),
        Command::Suite(a) => run_suite(a),
        Command::Bench(a) => run_bench(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    Graph::parse(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_report(path: Option<&Path>, facts: Value, timings: Option<Value>) -> Result<(), CliError> {
    let mut report = json!({ "facts": facts });
    if let Some(t) = timings {
        report["timings"] = t;
    }
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    match path {
        Some(p) => write_text(Some(p), &text),
        None => {
            eprint!("{text}");
            Ok(())
        }
    }
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn run_gen(a: &GenArgs) -> Result<i32, CliError> {
    let spec = match (&a.spec, &a.family) {
        (Some(s), _) => s.parse::<GenSpec>()?,
        (None, Some(family)) => FamilyArgs {
            family: family.clone(),
            max_clique: a.max_clique,
            clique: a.clique,
            p: a.p,
            drop: a.drop,
        }
        .spec(a.n, a.seed)?,
        (None, None) => return Err(CliError::Precondition("either --spec or --family is required".into())),
    };
    let g = generate(&spec)?;
    let text = format!("# {spec}\n{}", g.to_edge_list());
    write_text(a.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn run_embed(a: &EmbedArgs) -> Result<i32, CliError> {
    let g = read_graph(&a.input)?;
    let t = Instant::now();
    let res = embed(&g, a.root, a.mode.into())?;
    let embed_ms = millis(t);
    write_text(a.out.as_deref(), &res.h.to_edge_list())?;
    if let Some(p) = &a.trace {
        let text = serde_json::to_string_pretty(&res.trace).expect("trace serializes") + "\n";
        write_text(Some(p), &text)?;
    }
    if a.report.is_some() {
        let facts = json!({
            "n": g.n(), "m": g.m(), "h_m": res.h.m(), "root": a.root,
            "mode": EmbedMode::from(a.mode), "clusters": res.layering.clusters.len(), "stats": res.stats,
        });
        let timings = (!a.deterministic).then(|| json!({ "embed_ms": embed_ms }));
        write_report(a.report.as_deref(), facts, timings)?;
    }
    Ok(EXIT_OK)
}

fn check_code(rep: &CheckReport) -> i32 {
    if rep.failed() {
        EXIT_VERIFICATION
    } else if rep.inconclusive() {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

fn run_check(a: &CheckArgs) -> Result<i32, CliError> {
    let g = read_graph(&a.input)?;
    let t = Instant::now();
    let (h, layering) = match &a.host {
        Some(p) => (read_graph(p)?, build_layering(&g, a.root)?),
        None => {
            let res = embed(&g, a.root, a.mode.into())?;
            (res.h, res.layering)
        }
    };
    let opts = CheckOptions { budget: a.budget, structural: true, cycle_len: a.cycles };
    let rep = check_host(&g, &h, &layering, &opts).map_err(|e| CliError::Precondition(e.to_string()))?;
    let check_ms = millis(t);
    let code = check_code(&rep);
    let facts = serde_json::to_value(&rep).expect("report serializes");
    let timings = (!a.deterministic).then(|| json!({ "check_ms": check_ms }));
    write_report(a.report.as_deref(), facts, timings)?;
    println!("{}", if code == EXIT_OK { "pass" } else if code == EXIT_INCONCLUSIVE { "inconclusive" } else { "FAIL" });
    Ok(code)
}

fn run_recognize(a: &RecognizeArgs) -> Result<i32, CliError> {
    let g = read_graph(&a.input)?;
    let rep = match a.method {
        RecognizeMethod::Truemper => find_truemper_configuration(&g, a.budget),
        RecognizeMethod::UniversallySignable => is_universally_signable(&g, a.budget),
        RecognizeMethod::DirectMinor => k23_free_by_minor_search(&g).map_err(|e| CliError::Precondition(e.to_string()))?,
    };
    let kind = rep.witness.as_ref().map(|w| w.kind_name(&g));
    let facts = json!({ "report": rep, "witness_kind": kind });
    write_report(a.report.as_deref(), facts, None)?;
    let label = match rep.verdict {
        Verdict::Free => "free".to_string(),
        Verdict::NotFree => format!("not-free ({})", kind.unwrap_or("induced minor")),
        Verdict::Inconclusive => "inconclusive".to_string(),
    };
    println!("{label}");
    Ok(match rep.verdict {
        Verdict::Free => EXIT_OK,
        Verdict::NotFree => EXIT_NOT_FREE,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn run_diam(a: &DiamArgs) -> Result<i32, CliError> {
    let g = read_graph(&a.input)?;
    let r = diameter_via_embedding(&g, a.root, a.mode.into(), a.exact)?;
    println!("approx {}{}", r.approx, r.exact.map(|e| format!(" exact {e}")).unwrap_or_default());
    let facts = json!({ "exact": r.exact, "approx": r.approx, "gap": r.gap, "mode": r.mode });
    let timings = (!a.deterministic).then(|| serde_json::to_value(&r.phase_timings).expect("timings serialize"));
    write_report(a.report.as_deref(), facts, timings)?;
    let within = r.gap.is_none_or(|gap| gap.unsigned_abs() <= crate::DISTORTION_BOUND as u64);
    Ok(if within { EXIT_OK } else { EXIT_VERIFICATION })
}

/// Outcome of one embedding inside a suite instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootOutcome {
    pub root: usize,
    pub max_abs_gap: u32,
    pub diameter_gap: i64,
    pub passed: bool,
    pub inconclusive: bool,
    pub layering_ok: bool,
    /// Fast mode produced the same host graph (only checked when the
    /// family is universally signable).
    pub fast_matches: Option<bool>,
    /// Present only when a check failed.
    pub report: Option<CheckReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteInstance {
    pub id: usize,
    pub spec: String,
    pub n: usize,
    pub m: usize,
    /// `free`, `not_free` or `inconclusive` when the input was certified.
    pub certified: Option<Verdict>,
    pub status: String,
    pub roots: Vec<RootOutcome>,
    pub error: Option<String>,
}

/// Generates, embeds and checks one suite instance.
pub fn suite_instance(spec: &GenSpec, id: usize, a: &SuiteArgs) -> SuiteInstance {
    let g = match generate(spec) {
        Ok(g) => g,
        Err(e) => {
            return SuiteInstance {
                id,
                spec: spec.to_string(),
                n: spec.n,
                m: 0,
                certified: None,
                status: "precondition".into(),
                roots: Vec::new(),
                error: Some(e.to_string()),
            }
        }
    };
    let mut inst = SuiteInstance {
        id,
        spec: spec.to_string(),
        n: g.n(),
        m: g.m(),
        certified: None,
        status: "pass".into(),
        roots: Vec::new(),
        error: None,
    };
    if spec.family.is_k23_free() && g.n() <= CERTIFY_MAX_N {
        let verdict = find_truemper_configuration(&g, a.budget).verdict;
        inst.certified = Some(verdict);
        if verdict == Verdict::NotFree {
            inst.status = "fail".into();
            inst.error = Some("generated member of a K_{2,3}-free family contains a configuration".into());
            return inst;
        }
    }
    let roots: Vec<usize> = if a.sweep_roots { (0..g.n()).collect() } else { vec![a.root] };
    let universally_signable = !matches!(spec.family, Family::K23 | Family::BrokenWheel | Family::ErdosRenyi { .. });
    let exact_diam = match diameter_exact(&g) {
        Ok(d) => d,
        Err(e) => {
            inst.status = "precondition".into();
            inst.error = Some(e.to_string());
            return inst;
        }
    };
    let opts = CheckOptions { budget: a.budget, structural: true, cycle_len: None };
    for root in roots {
        let res: EmbeddingResult = match embed(&g, root, a.mode.into()) {
            Ok(r) => r,
            Err(e) => {
                inst.status = "precondition".into();
                inst.error = Some(e.to_string());
                return inst;
            }
        };
        let rep = match check_host(&g, &res.h, &res.layering, &opts) {
            Ok(r) => r,
            Err(e) => {
                inst.status = "fail".into();
                inst.error = Some(e.to_string());
                return inst;
            }
        };
        let layering_ok = check_layering_invariants(&g, &res.layering).is_ok();
        let fast_matches = universally_signable.then(|| {
            let other = match EmbedMode::from(a.mode) {
                EmbedMode::General => EmbedMode::UniversallySignableFast,
                EmbedMode::UniversallySignableFast => EmbedMode::General,
            };
            embed(&g, root, other).is_ok_and(|o| o.h == res.h)
        });
        let host_diam = diameter_exact(&res.h).map(|d| d as i64).unwrap_or(i64::MAX);
        let passed = rep.passed() && layering_ok && fast_matches != Some(false);
        let failed = rep.failed() || !layering_ok || fast_matches == Some(false);
        if failed {
            inst.status = "fail".into();
        } else if rep.inconclusive() && inst.status == "pass" {
            inst.status = "inconclusive".into();
        }
        inst.roots.push(RootOutcome {
            root,
            max_abs_gap: rep.max_abs_gap,
            diameter_gap: exact_diam as i64 - host_diam,
            passed,
            inconclusive: rep.inconclusive(),
            layering_ok,
            fast_matches,
            report: failed.then_some(rep),
        });
    }
    inst
}

fn run_suite(a: &SuiteArgs) -> Result<i32, CliError> {
    let specs: Vec<GenSpec> =
        (0..a.count).map(|i| a.family.spec(a.n, a.seed.wrapping_add(i as u64))).collect::<Result<_, _>>()?;
    let t = Instant::now();
    let work = || -> Vec<SuiteInstance> {
        specs.par_iter().enumerate().map(|(i, s)| suite_instance(s, i, a)).collect()
    };
    let instances = if a.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(a.jobs)
            .build()
            .map_err(|e| CliError::Other(e.to_string()))?
            .install(work)
    } else {
        work()
    };
    let suite_ms = millis(t);
    let count = |s: &str| instances.iter().filter(|i| i.status == s).count();
    let (failures, inconclusive, preconditions) = (count("fail"), count("inconclusive"), count("precondition"));
    let max_gap = instances.iter().flat_map(|i| &i.roots).map(|r| r.max_abs_gap).max().unwrap_or(0);
    let max_diam_gap = instances.iter().flat_map(|i| &i.roots).map(|r| r.diameter_gap.abs()).max().unwrap_or(0);
    let mut config = serde_json::to_value(a).expect("config serializes");
    // where the report goes is not a fact about the run
    config.as_object_mut().expect("config is an object").remove("report");
    let facts = json!({
        "config": config,
        "instances": instances,
        "embeddings": instances.iter().map(|i| i.roots.len()).sum::<usize>(),
        "max_abs_gap": max_gap,
        "max_diameter_gap": max_diam_gap,
        "failures": failures,
        "inconclusive": inconclusive,
        "preconditions": preconditions,
    });
    let timings = (!a.deterministic).then(|| json!({ "suite_ms": suite_ms }));
    write_report(a.report.as_deref(), facts, timings)?;
    println!(
        "{} instances, max distortion {max_gap}, {failures} failed, {inconclusive} inconclusive, {preconditions} precondition errors",
        instances.len()
    );
    Ok(if failures > 0 {
        EXIT_VERIFICATION
    } else if preconditions > 0 {
        EXIT_PRECONDITION
    } else if inconclusive > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub phase: String,
    pub n: usize,
    pub m: usize,
    pub millis: f64,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_exponent(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Times the layering and the full embedding on each size. Repetitions run
/// round-robin over the sizes so that background load affects all sizes
/// alike, and the fastest run of each is reported.
pub fn bench_rows(family: &FamilyArgs, sizes: &[usize], seed: u64, mode: EmbedMode, reps: usize) -> Result<Vec<BenchRow>, CliError> {
    let graphs: Vec<Graph> =
        sizes.iter().map(|&n| Ok(generate(&family.spec(n, seed)?)?)).collect::<Result<_, CliError>>()?;
    let mut best = vec![(f64::INFINITY, f64::INFINITY); graphs.len()];
    for _ in 0..reps.max(1) {
        for (g, b) in graphs.iter().zip(&mut best) {
            let t = Instant::now();
            build_layering(g, 0)?;
            b.0 = b.0.min(millis(t));
            let t = Instant::now();
            embed(g, 0, mode)?;
            b.1 = b.1.min(millis(t));
        }
    }
    let mut rows = Vec::new();
    for (g, (layer, full)) in graphs.iter().zip(best) {
        rows.push(BenchRow { phase: "layering".into(), n: g.n(), m: g.m(), millis: layer });
        rows.push(BenchRow { phase: "embed".into(), n: g.n(), m: g.m(), millis: full });
    }
    Ok(rows)
}

fn run_bench(a: &BenchArgs) -> Result<i32, CliError> {
    let mode = EmbedMode::from(a.mode);
    let rows = bench_rows(&a.family, &a.sizes, a.seed, mode, a.reps)?;
    let mut csv = String::from("phase,n,m,millis\n");
    for r in &rows {
        csv.push_str(&format!("{},{},{},{:.3}\n", r.phase, r.n, r.m, r.millis));
    }
    write_text(a.csv.as_deref(), &csv)?;
    let exponent = |phase: &str| {
        let pts: Vec<(f64, f64)> =
            rows.iter().filter(|r| r.phase == phase).map(|r| ((r.n + r.m) as f64, r.millis)).collect();
        fit_exponent(&pts)
    };
    let facts = json!({ "family": a.family.family, "mode": mode, "sizes": a.sizes });
    let timings = json!({
        "rows": rows,
        "exponent_vs_size": { "layering": exponent("layering"), "embed": exponent("embed") },
    });
    write_report(a.report.as_deref(), facts, Some(timings))?;
    Ok(EXIT_OK)
}
