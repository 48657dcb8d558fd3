//! The `twolift` command line.
//!
//! Every subcommand prints one report (`--format json` or `text`). Exit
//! status is 0 on success, 1 when a checked property fails, and 2 for
//! usage errors and unreadable input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::builder::{build_expander, outer_product_matrix, tightness_family, tightness_measure, BuildParams, Strategy};
use crate::discrepancy::{
    alpha_star, centered_form, converse_bound, discrepancy_witness, jumbledness_alpha_exact, jumbledness_alpha_sampled,
    matrix_ratio_sampled, sparse_check, EXACT_MAX_VERTICES,
};
use crate::error::{invalid, Error, Result};
use crate::graph::{disjoint_cliques, io, make_complete, make_railway, two_lift, Graph, Signing};
use crate::report::Report;
use crate::signing::{
    conjecture_probe, derandomize_conditional, epsilon_biased_space, exhaustive_best_signing, is_good_signing,
    local_refinement, random_signing, search_sample_space, LiftChain, SampleObjective, SearchParams,
};
use crate::spectral::{
    adjacency, eigen_decompose, eigenvalues_sym, lift_spectrum_decompose, signed_adjacency, DEFAULT_TOL,
};

const USAGE: i32 = 2;
const VIOLATION: i32 = 1;

#[derive(Parser, Debug)]
#[command(name = "twolift", version, about = "Expander graphs from iterated 2-lifts, signed spectra and discrepancy audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lift K_{d+1} up to --target-n vertices.
    Build(BuildArgs),
    /// Spectrum, λ and optional jumbledness and sparsity of a graph file.
    Analyze(AnalyzeArgs),
    /// Find a signing of a regular graph.
    Sign(SignArgs),
    /// Apply a signed graph file and write the 2-lift.
    Lift(LiftArgs),
    /// Extract a discrepancy witness.
    Witness(WitnessArgs),
    /// Goodness report of a signed graph.
    Verify(VerifyArgs),
    /// Generate an example graph or matrix.
    Example(ExampleArgs),
    /// Adjacency queries on a lift chain without materialising it.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Serialize)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Eigen-residual tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args, Debug, Serialize)]
struct Search {
    #[arg(long, default_value_t = 1000)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Walk length for the derandomized estimator.
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    t_sparse: Option<usize>,
    /// Sparsity threshold; defaults to 10·√(d log d).
    #[arg(long)]
    gamma: Option<f64>,
}

impl Search {
    fn params(&self, graph: &Graph) -> Result<SearchParams> {
        let mut p = SearchParams::for_graph(graph)?;
        p.budget = self.budget;
        p.seed = self.seed;
        if let Some(l) = self.l {
            p.l = l;
        }
        if let Some(t) = self.t_sparse {
            p.t_sparse = t;
        }
        if let Some(g) = self.gamma {
            p.gamma = g;
        }
        p.validate()?;
        Ok(p)
    }
}

#[derive(Args, Debug, Serialize)]
struct BuildArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    target_n: usize,
    #[arg(long, default_value = "random", value_parser = parse_strategy)]
    strategy: Strategy,
    #[command(flatten)]
    search: Search,
    /// Random pairs used for the sampled jumbledness of the final graph.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Where to write the final graph.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Also measure jumbledness (regular graphs only).
    #[arg(long)]
    jumbled: bool,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also check (gamma, t)-sparsity with this t.
    #[arg(long)]
    t_sparse: Option<usize>,
    #[arg(long)]
    gamma: Option<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct SignArgs {
    file: PathBuf,
    /// random, derandomized, sample-space, local-refine or exhaustive.
    #[arg(long, default_value = "random", value_parser = parse_method)]
    strategy: Method,
    #[command(flatten)]
    search: Search,
    /// Where to write the signed graph.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct LiftArgs {
    /// A signed graph file.
    file: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct WitnessArgs {
    file: PathBuf,
    /// Use A − (d/n)J instead of the (signed) adjacency matrix.
    #[arg(long)]
    centered: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    /// A signed graph file.
    file: PathBuf,
    #[command(flatten)]
    search: Search,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct ExampleArgs {
    #[command(subcommand)]
    kind: ExampleKind,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum ExampleKind {
    /// Rails of length k with the canonical signing.
    Railway {
        #[arg(long, default_value_t = 8)]
        k: usize,
    },
    /// Disjoint copies of K_{d+1} with one random signing.
    Cliques {
        #[arg(long, default_value_t = 16)]
        copies: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The matrix 1/√(ij).
    Outer {
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A member of the tightness family.
    Tight {
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 12)]
        delta: usize,
        #[arg(long, default_value_t = 32)]
        n_base: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Args, Debug, Serialize)]
struct OracleArgs {
    /// A chain file.
    chain: PathBuf,
    /// Level to query; defaults to the top.
    #[arg(long)]
    level: Option<usize>,
    /// Vertex pairs as `i,j`.
    pairs: Vec<String>,
    /// Also compare every answer with the materialised level.
    #[arg(long)]
    check: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Lift(Strategy),
    Exhaustive,
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Method::Lift(x) => x.serialize(s),
            Method::Exhaustive => s.serialize_str("exhaustive"),
        }
    }
}

fn parse_strategy(s: &str) -> std::result::Result<Strategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    if s == "exhaustive" {
        Ok(Method::Exhaustive)
    } else {
        parse_strategy(s).map(Method::Lift)
    }
}

/// What a subcommand produced: a report and whether a checked property failed.
struct Outcome {
    report: Report,
    format: Format,
    violated: bool,
}

/// Runs the CLI on `args` (including the program name), writing to the
/// process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => {
            let text = match outcome.format {
                Format::Json => outcome.report.to_json(),
                Format::Text => outcome.report.to_text(),
            };
            if out.write_all(text.as_bytes()).is_err() {
                return VIOLATION;
            }
            if outcome.violated {
                VIOLATION
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidParameter(_) | Error::Parse { .. } | Error::Io(_) => USAGE,
                _ => VIOLATION,
            }
        }
    }
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Build(a) => build(&a),
        Command::Analyze(a) => analyze(&a),
        Command::Sign(a) => sign(&a),
        Command::Lift(a) => lift(&a),
        Command::Witness(a) => witness(&a),
        Command::Verify(a) => verify(&a),
        Command::Example(a) => example(&a),
        Command::Oracle(a) => oracle(&a),
    }
}

fn save(path: &Option<PathBuf>, graph: &Graph, signing: Option<&Signing>) -> Result<Option<String>> {
    match path {
        Some(p) => {
            io::save(p, graph, signing)?;
            Ok(Some(p.display().to_string()))
        }
        None => Ok(None),
    }
}

fn signed_file(path: &Path) -> Result<(Graph, Signing)> {
    let file = io::load(path)?;
    let signing = file.signing.ok_or_else(|| invalid(format!("{} has no sign column", path.display())))?;
    Ok((file.graph, signing))
}

fn build(a: &BuildArgs) -> Result<Outcome> {
    let params = BuildParams {
        budget: a.search.budget,
        seed: a.search.seed,
        l: a.search.l,
        t_sparse: a.search.t_sparse,
        target_radius: None,
        tol: a.output.tol,
    };
    let (graph, mut record) = build_expander(a.d, a.target_n, a.strategy, &params)?;
    record.graph_path = save(&a.out, &graph, None)?;
    let alpha_sampled = if a.samples > 0 { Some(jumbledness_alpha_sampled(&graph, a.samples, a.search.seed)?.score) } else { None };
    let warnings: Vec<String> = record
        .levels
        .iter()
        .filter(|l| !l.met_target)
        .map(|l| format!("level {} new radius {} above target {}", l.level, l.radius_new, record.target_radius))
        .collect();
    let violated = record.final_lambda >= a.d as f64 - 1e-9;
    let report = Report::new("build", a)?
        .field("levels", &record.levels)?
        .field(
            "final",
            &BuildFinal {
                n: graph.n(),
                d: a.d,
                lambda: record.final_lambda,
                alpha_sampled,
                converged: record.converged,
                connected: record.connected,
                target_radius: record.target_radius,
                graph_path: record.graph_path.clone(),
            },
        )?
        .field("warnings", &warnings)?;
    Ok(Outcome { report, format: a.output.format, violated })
}

#[derive(Serialize)]
struct BuildFinal {
    n: usize,
    d: usize,
    lambda: f64,
    alpha_sampled: Option<f64>,
    converged: bool,
    connected: bool,
    target_radius: f64,
    graph_path: Option<String>,
}

#[derive(Serialize)]
struct Sparsity {
    gamma: f64,
    t: usize,
    report: crate::discrepancy::SparseReport,
}

#[derive(Serialize, Default)]
struct SignDetail {
    examined: Option<usize>,
    initial_expectation: Option<f64>,
    final_value: Option<f64>,
    trace: Option<f64>,
    violations: Option<f64>,
    field_log: Option<u32>,
    point: Option<(u64, u64)>,
    iterations: Option<usize>,
    radius_trace: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct Jumbled {
    method: &'static str,
    alpha: f64,
    s: Vec<usize>,
    t: Vec<usize>,
    lambda: f64,
    forward_ok: bool,
    converse_bound: Option<f64>,
    converse_ok: Option<bool>,
}

fn analyze(a: &AnalyzeArgs) -> Result<Outcome> {
    let file = io::load(&a.file)?;
    let g = &file.graph;
    let d = g.regular_degree();
    if a.jumbled && d.is_none() {
        return Err(invalid("--jumbled needs a regular graph"));
    }
    let spectrum = eigenvalues_sym(&adjacency(g), a.output.tol)?;
    let mut report = Report::new("analyze", a)?.field(
        "graph",
        &serde_json::json!({ "n": g.n(), "m": g.m(), "regular_degree": d, "connected": g.is_connected() }),
    )?;
    report = report.field("adjacency", &spectrum)?;
    if let Some(s) = &file.signing {
        report = report.field("signed", &eigenvalues_sym(&signed_adjacency(g, s)?, a.output.tol)?)?;
    }
    let mut violated = false;
    if a.jumbled {
        let d = d.expect("checked above") as f64;
        let (method, pair) = if g.n() <= EXACT_MAX_VERTICES {
            ("exact", jumbledness_alpha_exact(g, false)?)
        } else {
            ("sampled", jumbledness_alpha_sampled(g, a.samples, a.seed)?)
        };
        let forward_ok = pair.score <= spectrum.lambda2 + 1e-7;
        let (bound, converse_ok) = if method == "exact" && g.n() >= 2 {
            let disjoint = jumbledness_alpha_exact(g, true)?.score;
            match converse_bound(disjoint.min(d), d) {
                Ok(b) => (Some(b), Some(spectrum.lambda2 <= b + 1e-9)),
                Err(_) => (None, None),
            }
        } else {
            (None, None)
        };
        violated |= !forward_ok || converse_ok == Some(false);
        report = report.field(
            "jumbled",
            &Jumbled {
                method,
                alpha: pair.score,
                s: pair.s,
                t: pair.t,
                lambda: spectrum.lambda2,
                forward_ok,
                converse_bound: bound,
                converse_ok,
            },
        )?;
    }
    if let Some(t) = a.t_sparse {
        let gamma = match (a.gamma, d) {
            (Some(g), _) => g,
            (None, Some(_)) => SearchParams::for_graph(g)?.gamma,
            (None, None) => return Err(invalid("--gamma is required for sparsity of a non-regular graph")),
        };
        let sparse = sparse_check(g, gamma, t)?;
        violated |= !sparse.sparse;
        report = report.field("sparsity", &Sparsity { gamma, t, report: sparse })?;
    }
    Ok(Outcome { report, format: a.output.format, violated })
}

fn sign(a: &SignArgs) -> Result<Outcome> {
    let g = io::load(&a.file)?.graph;
    let params = a.search.params(&g)?;
    let (signing, detail) = match a.strategy {
        Method::Exhaustive => (exhaustive_best_signing(&g)?.0, SignDetail::default()),
        Method::Lift(Strategy::Random) => {
            let mut p = params.clone();
            p.exhaustive_max_edges = 0;
            let probe = conjecture_probe(&g, &p)?;
            (probe.best, SignDetail { examined: Some(probe.examined), ..SignDetail::default() })
        }
        Method::Lift(Strategy::Derandomized) => {
            let out = derandomize_conditional(&g, &params)?;
            let detail = SignDetail {
                initial_expectation: Some(out.initial_expectation),
                final_value: Some(out.final_value),
                trace: Some(out.trace),
                violations: Some(out.violations),
                ..SignDetail::default()
            };
            (out.signing, detail)
        }
        Method::Lift(Strategy::SampleSpace) => {
            let s = (crate::signing::ceil_log2(g.m().max(2)) + 1) as u32;
            let space = epsilon_biased_space(g.m(), s)?;
            let found = search_sample_space(&g, &space, &params, SampleObjective::Radius)?;
            (found.signing, SignDetail { field_log: Some(s), point: Some(found.point), examined: Some(found.points as usize), ..SignDetail::default() })
        }
        Method::Lift(Strategy::LocalRefine) => {
            let r = local_refinement(&g, &params)?;
            (r.signing, SignDetail { iterations: Some(r.iterations), radius_trace: Some(r.trace), ..SignDetail::default() })
        }
    };
    let spectrum = eigenvalues_sym(&signed_adjacency(&g, &signing)?, DEFAULT_TOL)?;
    let met = spectrum.radius <= params.target_radius + 1e-9;
    let written = save(&a.out, &g, Some(&signing))?;
    let report = Report::new("sign", a)?
        .field("radius", &spectrum.radius)?
        .field("target_radius", &params.target_radius)?
        .field("met_target", &met)?
        .field("negative_edges", &signing.negative_count())?
        .field("detail", &detail)?
        .field("written", &written)?;
    Ok(Outcome { report, format: a.output.format, violated: !met })
}

fn lift(a: &LiftArgs) -> Result<Outcome> {
    let (g, s) = signed_file(&a.file)?;
    let (lifted, _) = two_lift(&g, &s)?;
    let written = save(&a.out, &lifted, None)?;
    let split = lift_spectrum_decompose(&g, &s, a.output.tol);
    let (mismatch, ok) = match &split {
        Ok(x) => (x.mismatch, true),
        Err(Error::InternalConsistency(_)) => (f64::NAN, false),
        Err(_) => return split.map(|_| unreachable!()),
    };
    let report = Report::new("lift", a)?
        .field("n", &lifted.n())?
        .field("m", &lifted.m())?
        .field("spectrum_mismatch", &mismatch)?
        .field("spectrum_ok", &ok)?
        .field("written", &written)?;
    Ok(Outcome { report, format: a.output.format, violated: !ok })
}

fn witness(a: &WitnessArgs) -> Result<Outcome> {
    let file = io::load(&a.file)?;
    let matrix = match (&file.signing, a.centered) {
        (_, true) => centered_form(&file.graph)?.without_diagonal(),
        (Some(s), false) => signed_adjacency(&file.graph, s)?,
        (None, false) => adjacency(&file.graph),
    };
    let d = matrix.max_row_l1();
    let eig = eigen_decompose(&matrix, a.output.tol)?;
    let rho = eig.report.radius;
    let w = discrepancy_witness(&matrix, d, Some(&eig.vectors[eig.extremal_index()]))?;
    let report = Report::new("witness", a)?
        .field("rho", &rho)?
        .field("row_l1", &d)?
        .field("alpha_star", &alpha_star(rho, d)?)?
        .field("witness", &w)?;
    Ok(Outcome { report, format: a.output.format, violated: false })
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let (g, s) = signed_file(&a.file)?;
    let params = a.search.params(&g)?;
    let good = is_good_signing(&g, &s, &params)?;
    let violated = !good.is_good;
    let report = Report::new("verify", a)?.field("gamma", &params.gamma)?.field("goodness", &good)?;
    Ok(Outcome { report, format: a.output.format, violated })
}

fn example(a: &ExampleArgs) -> Result<Outcome> {
    let report = Report::new("example", a)?;
    let (report, violated) = match &a.kind {
        ExampleKind::Railway { k } => {
            let (g, s) = make_railway(*k)?;
            let written = save(&a.out, &g, Some(&s))?;
            let radius = eigenvalues_sym(&signed_adjacency(&g, &s)?, a.tol)?.radius;
            let r = report.field("n", &g.n())?.field("radius", &radius)?.field("expected", &5f64.sqrt())?.field("written", &written)?;
            (r, false)
        }
        ExampleKind::Cliques { copies, d, seed } => {
            let g = disjoint_cliques(*copies, *d)?;
            let s = random_signing(&g, *seed);
            let written = save(&a.out, &g, Some(&s))?;
            let target = SearchParams::for_graph(&g)?.target_radius;
            let clique = make_complete(d + 1)?;
            let per_clique = clique.m();
            let radii = (0..*copies)
                .map(|c| {
                    let part = Signing::new(s.as_slice()[c * per_clique..(c + 1) * per_clique].to_vec())?;
                    Ok(eigenvalues_sym(&signed_adjacency(&clique, &part)?, a.tol)?.radius)
                })
                .collect::<Result<Vec<f64>>>()?;
            let radius = radii.iter().copied().fold(0.0, f64::max);
            let failing = radii.iter().filter(|&&r| r > target + 1e-9).count();
            let best = exhaustive_best_signing(&clique).map(|x| x.1).ok();
            let r = report
                .field("radius", &radius)?
                .field("target_radius", &target)?
                .field("copies_over_target", &failing)?
                .field("best_single_copy", &best)?
                .field("written", &written)?;
            (r, false)
        }
        ExampleKind::Outer { n, samples, seed } => {
            let m = outer_product_matrix(*n)?;
            let top = eigenvalues_sym(&m, a.tol)?.max();
            let harmonic: f64 = (1..=*n).map(|i| 1.0 / i as f64).sum();
            let ratio = matrix_ratio_sampled(&m, *samples, *seed, false)?;
            let violated = ratio.score > 4.0 || (top - harmonic).abs() > 1e-8;
            let r = report
                .field("top_eigenvalue", &top)?
                .field("harmonic", &harmonic)?
                .field("sampled_ratio", &ratio.score)?
                .field("ratio_bound", &4.0)?;
            (r, violated)
        }
        ExampleKind::Tight { t, delta, n_base, seed, samples } => {
            let (g, family) = tightness_family(*delta, *t, *n_base, *seed)?;
            let written = save(&a.out, &g, None)?;
            let measured = tightness_measure(&g, &family, *samples, *seed, a.tol)?;
            let r = report.field("family", &family)?.field("measured", &measured)?.field("written", &written)?;
            (r, false)
        }
    };
    Ok(Outcome { report, format: a.format, violated })
}

fn oracle(a: &OracleArgs) -> Result<Outcome> {
    let chain = LiftChain::load(&a.chain)?;
    let level = a.level.unwrap_or(chain.depth());
    let pairs = a
        .pairs
        .iter()
        .map(|p| {
            let (i, j) = p.split_once(',').ok_or_else(|| invalid(format!("pair {p:?} is not `i,j`")))?;
            let num = |x: &str| x.trim().parse::<usize>().map_err(|_| invalid(format!("pair {p:?} is not `i,j`")));
            Ok((num(i)?, num(j)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let materialized = if a.check { Some(chain.materialize(level)?) } else { None };
    let mut answers = Vec::with_capacity(pairs.len());
    let mut violated = false;
    for (i, j) in pairs {
        let adjacent = chain.oracle_adjacent(level, i, j)?;
        if let Some(g) = &materialized {
            violated |= g.has_edge(i, j) != adjacent;
        }
        answers.push(serde_json::json!({ "i": i, "j": j, "adjacent": adjacent }));
    }
    let report = Report::new("oracle", a)?
        .field("level", &level)?
        .field("order", &chain.order(level))?
        .field("answers", &answers)?
        .field("checked", &a.check)?;
    Ok(Outcome { report, format: a.format, violated })
}
