use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tabipol::hyper::{hyper_convert, HyperOptions};
use tabipol::interpolate::{interpolate, synthesize_definition, verify_interpolant, InterpolateError, InterpolationOptions, Requirement};
use tabipol::logic::{Clause, Formula, Signature};
use tabipol::normalize::{equality_axioms, freeze_free_vars, skolemize_clausify, ClausePolarity, DEFAULT_MAX_CLAUSES};
use tabipol::proof::{parse_proof, ProofDoc, HEADER as PROOF_HEADER};
use tabipol::restriction::{
    check_vx_preconditions, is_horn, is_horn_like, is_u_range_restricted, is_vgt_range_restricted, prop4_check,
    RestrictionReport,
};
use tabipol::stats::collect_dir;
use tabipol::symbol::{FreshNames, Symbol};
use tabipol::syntax::{parse_clause_list, parse_problem, Problem};
use tabipol::tableau::{parse_tableau, print_tableau, prove, GroundingPolicy, ProveError, ProverLimits, Side, Tableau};

/// `println!` that stops quietly when stdout is closed early.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

const OK: u8 = 0;
const NOT_PROVED: u8 = 1;
const FAILED_CHECK: u8 = 2;
const PARSE_ERROR: u8 = 3;
const RESOURCE_LIMIT: u8 = 4;

#[derive(Parser)]
#[command(name = "tabipol", version, about = "Craig-Lyndon interpolation from clausal tableaux")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Limits {
    /// Maximal tableau path length for iterative deepening.
    #[arg(long, env = "TABIPOL_MAX_DEPTH", default_value_t = tabipol::tableau::DEFAULT_MAX_DEPTH)]
    max_depth: usize,
    #[arg(long, env = "TABIPOL_MAX_INFERENCES", default_value_t = tabipol::tableau::DEFAULT_MAX_INFERENCES)]
    max_inferences: u64,
    /// Prover timeout in milliseconds.
    #[arg(long, env = "TABIPOL_TIMEOUT_MS")]
    timeout: Option<u64>,
    #[arg(long, env = "TABIPOL_MAX_CLAUSES", default_value_t = DEFAULT_MAX_CLAUSES)]
    max_clauses: usize,
    /// Node limit for hyper conversion and proof expansion.
    #[arg(long, env = "TABIPOL_MAX_NODES", default_value_t = tabipol::hyper::DEFAULT_MAX_NODES)]
    max_nodes: usize,
}

impl Limits {
    fn prover(&self) -> ProverLimits {
        ProverLimits {
            max_depth: self.max_depth,
            max_inferences: self.max_inferences,
            timeout: self.timeout.map(Duration::from_millis),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    TptpFof,
    Clauses,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    F,
    G,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::F => Side::F,
            SideArg::G => Side::G,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    URr,
    VgtRr,
    Horn,
    HornLike,
    VxPreconditions,
    Prop4,
}

/// F and G: either `--f`/`--g` files (all statements conjoined), or one
/// `--input` problem whose axioms are F and conjectures G.
#[derive(Args, Clone)]
struct Pair {
    #[arg(long)]
    f: Option<PathBuf>,
    #[arg(long)]
    g: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["f", "g"])]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Prove axioms entail the conjecture (or refute a clause set); writes a tableau.
    Prove {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "tptp-fof")]
        format: InputFormat,
        #[arg(long)]
        equality_axioms: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Compute an interpolant H with F |= H |= G.
    Interpolate {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_delimiter = ',')]
        require: Vec<Requirement>,
        /// Expected free variables shared by F and G.
        #[arg(long, value_delimiter = ',')]
        free_vars: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "f")]
        side_tie: SideArg,
        /// Side that receives the constants introduced by grounding.
        #[arg(long, value_enum, default_value = "f")]
        ground_side: SideArg,
        #[arg(long)]
        verify: bool,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Convert a closed tableau or a resolution proof to a hyper tableau.
    Hyper {
        #[arg(long)]
        proof: PathBuf,
        /// Print a run report with sizes and timings.
        #[arg(long)]
        stats: bool,
        /// Print the termination measure of every round to stderr.
        #[arg(long)]
        trace: bool,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Check a syntactic property; exit 2 with witnesses if it fails.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
        #[arg(long, value_delimiter = ',')]
        free_vars: Vec<String>,
    },
    /// Check that H is an interpolant of F and G.
    Verify {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        h: PathBuf,
        #[arg(long, value_delimiter = ',')]
        require: Vec<Requirement>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Find a definition of the conjecture Q over the target predicates under the axioms K.
    Define {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        require: Vec<Requirement>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Translate a resolution proof to a tableau in cut normal form.
    Import {
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Conversion metrics over a directory of `*.proof` files.
    Stats {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        json: bool,
        /// Include the conversion time column.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Serialize, Default)]
struct RunReport {
    command: String,
    inputs: Vec<String>,
    /// Wall-clock milliseconds per stage; left out unless asked for, so
    /// reports are reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    timings_ms: Option<BTreeMap<String, f64>>,
    size_before: Option<usize>,
    size_after: Option<usize>,
    size_ratio: Option<f64>,
    rounds: Option<usize>,
    verdicts: BTreeMap<String, String>,
    interpolant: Option<String>,
}

impl RunReport {
    fn new(command: &str, inputs: &[&Path], timings: bool) -> Self {
        RunReport {
            command: command.into(),
            timings_ms: timings.then(BTreeMap::new),
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
            ..Default::default()
        }
    }

    fn sizes(&mut self, before: usize, after: usize, rounds: usize) {
        self.size_before = Some(before);
        self.size_after = Some(after);
        self.size_ratio = (before > 0).then(|| after as f64 / before as f64);
        self.rounds = Some(rounds);
    }

    fn time(&mut self, stage: &str, start: Instant) {
        self.record(stage, start.elapsed().as_secs_f64() * 1000.0);
    }

    fn record(&mut self, stage: &str, ms: f64) {
        if let Some(t) = &mut self.timings_ms {
            t.insert(stage.into(), ms);
        }
    }

    fn print(&self) {
        say!("{}", serde_json::to_string_pretty(self).expect("report serializes"));
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type Run = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(PARSE_ERROR, format!("{}: {e}", path.display())))
}

fn problem(path: &Path) -> Result<Problem, Failure> {
    parse_problem(&read(path)?).map_err(|e| fail(PARSE_ERROR, format!("{}:{e}", path.display())))
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| fail(PARSE_ERROR, format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

impl Pair {
    fn load(&self) -> Result<(Formula, Formula, Vec<&Path>), Failure> {
        match (&self.input, &self.f, &self.g) {
            (Some(p), _, _) => {
                let pr = problem(p)?;
                let g = pr.conjecture().ok_or_else(|| fail(PARSE_ERROR, format!("{}: no conjecture", p.display())))?;
                Ok((pr.axioms(), g, vec![p.as_path()]))
            }
            (None, Some(f), Some(g)) => Ok((problem(f)?.all(), problem(g)?.all(), vec![f.as_path(), g.as_path()])),
            _ => Err(fail(PARSE_ERROR, "give --input, or both --f and --g")),
        }
    }
}

fn options(require: &[Requirement], limits: &Limits) -> InterpolationOptions {
    InterpolationOptions {
        limits: limits.prover(),
        max_clauses: limits.max_clauses,
        max_nodes: limits.max_nodes,
        ..InterpolationOptions::requiring(require)
    }
}

fn prove_error(e: &ProveError) -> Failure {
    fail(NOT_PROVED, format!("not proved: {e}"))
}

fn cmd_prove(input: &Path, format: InputFormat, eq: bool, out: &Option<PathBuf>, limits: &Limits) -> Run {
    let src = read(input)?;
    let located = |e: tabipol::syntax::ParseError| fail(PARSE_ERROR, format!("{}:{e}", input.display()));
    let mut clauses: Vec<Clause> = match format {
        InputFormat::Clauses => parse_clause_list(&src).map_err(located)?,
        InputFormat::TptpFof => {
            let pr = parse_problem(&src).map_err(located)?;
            let (f, g) = (pr.axioms(), pr.conjecture().unwrap_or(Formula::False));
            let mut fresh = FreshNames::new();
            fresh.reserve_all(f.all_names().iter().chain(g.all_names().iter()).map(|s| s.as_str()));
            let frozen = freeze_free_vars(&f, &g, &mut fresh);
            let norm = |e: tabipol::normalize::NormalizeError| fail(RESOURCE_LIMIT, e.to_string());
            let mut cs = skolemize_clausify(&frozen.f, ClausePolarity::AsStated, &mut fresh, limits.max_clauses).map_err(norm)?.clauses;
            cs.extend(skolemize_clausify(&frozen.g, ClausePolarity::Negated, &mut fresh, limits.max_clauses).map_err(norm)?.clauses);
            cs
        }
    };
    if eq {
        let mut sig = Signature::new();
        for c in &clauses {
            sig.add_clause(c).map_err(|e| fail(PARSE_ERROR, e.to_string()))?;
        }
        clauses.extend(equality_axioms(&sig));
    }
    let t = prove(&clauses, &limits.prover()).map_err(|e| prove_error(&e))?;
    write_out(out, &print_tableau(&t))?;
    Ok(OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_interpolate(
    pair: &Pair,
    require: &[Requirement],
    free_vars: &Option<Vec<String>>,
    side_tie: SideArg,
    ground_side: SideArg,
    verify: bool,
    timings: bool,
    out: &Option<PathBuf>,
    limits: &Limits,
) -> Run {
    let (f, g, inputs) = pair.load()?;
    let mut report = RunReport::new("interpolate", &inputs, timings);
    if let Some(names) = free_vars {
        let want: BTreeSet<Symbol> = names.iter().map(|n| Symbol::new(n)).collect();
        let shared: BTreeSet<Symbol> = f.free_vars().intersection(&g.free_vars()).copied().collect();
        if shared != want {
            return Err(fail(FAILED_CHECK, format!("F and G share free variables {shared:?}, expected {want:?}")));
        }
    }
    let mut opts = options(require, limits);
    opts.side_tie = side_tie.into();
    opts.grounding = match ground_side {
        SideArg::F => GroundingPolicy::AllF,
        SideArg::G => GroundingPolicy::AllG,
    };
    let start = Instant::now();
    let r = interpolate(&f, &g, &opts).map_err(|e| match e {
        InterpolateError::NotProved(p) => prove_error(&p),
        e if e.is_resource_limit() => fail(RESOURCE_LIMIT, e.to_string()),
        e => fail(FAILED_CHECK, e.to_string()),
    })?;
    report.time("total", start);
    let t = &r.report.timings;
    for (stage, ms) in [("normalize", t.normalize_ms), ("prove", t.prove_ms), ("hyper", t.hyper_ms), ("extract", t.extract_ms)] {
        report.record(stage, ms);
    }
    match r.report.hyper_size {
        Some(after) => report.sizes(r.report.proof_size, after, r.report.hyper_rounds.unwrap_or(0)),
        None => report.size_before = Some(r.report.proof_size),
    }
    let mut code = OK;
    for (req, ok) in &r.report.requirements {
        report.verdicts.insert(req.to_string(), if *ok { "pass" } else { "fail" }.into());
        if !ok {
            code = FAILED_CHECK;
        }
    }
    if verify {
        let start = Instant::now();
        let v = verify_interpolant(&f, &g, &r.interpolant, &opts.require, &opts);
        report.time("verify", start);
        for (name, check) in v.rows() {
            report.verdicts.insert(format!("verify {name}"), check.to_string());
        }
        if !v.passed() {
            code = FAILED_CHECK;
        }
    }
    report.interpolant = Some(r.interpolant.to_string());
    write_out(out, &format!("{}\n", r.interpolant))?;
    report.print();
    Ok(code)
}

fn load_tableau(path: &Path, limits: &Limits) -> Result<(Tableau, Option<ProofDoc>), Failure> {
    let src = read(path)?;
    let first = src.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('%')).unwrap_or("");
    let located = |e: String| fail(PARSE_ERROR, format!("{}:{e}", path.display()));
    if first == PROOF_HEADER {
        let doc = parse_proof(&src).map_err(|e| match e {
            tabipol::proof::ProofError::Parse(p) => located(p.to_string()),
            e => fail(PARSE_ERROR, format!("{}: {e}", path.display())),
        })?;
        let t = doc.import(limits.max_nodes).map_err(|e| {
            let code = if e.is_resource_limit() { RESOURCE_LIMIT } else { PARSE_ERROR };
            fail(code, format!("{}: {e}", path.display()))
        })?;
        Ok((t, Some(doc)))
    } else {
        Ok((parse_tableau(&src).map_err(|e| located(e.to_string()))?, None))
    }
}

fn cmd_hyper(path: &Path, stats: bool, trace: bool, timings: bool, out: &Option<PathBuf>, limits: &Limits) -> Run {
    let mut report = RunReport::new("hyper", &[path], timings);
    let start = Instant::now();
    let (t, _) = load_tableau(path, limits)?;
    report.time("import", start);
    let start = Instant::now();
    let opts = HyperOptions { max_nodes: limits.max_nodes, trace };
    let (h, tr) = hyper_convert(&t, &opts).map_err(|e| {
        let code = if matches!(e, tabipol::hyper::HyperError::SizeLimit { .. }) { RESOURCE_LIMIT } else { FAILED_CHECK };
        fail(code, e.to_string())
    })?;
    report.time("hyper", start);
    if trace {
        for (i, r) in tr.rounds.iter().enumerate() {
            eprintln!("round {}: measure {} at {:?}, size {}", i + 1, r.measure, r.selected, r.size_after);
        }
    }
    report.sizes(t.size(), h.size(), tr.total_rounds);
    write_out(out, &print_tableau(&h))?;
    if stats {
        report.print();
    }
    Ok(OK)
}

fn witnesses(r: &RestrictionReport) -> u8 {
    for w in &r.witnesses {
        say!("witness {w}");
    }
    if r.verdict {
        say!("holds");
        OK
    } else {
        say!("fails");
        FAILED_CHECK
    }
}

fn cmd_check(input: &Path, property: Property, free_vars: &[String]) -> Run {
    let pr = problem(input)?;
    let restriction = |e: tabipol::restriction::RestrictionError| fail(FAILED_CHECK, e.to_string());
    let f = pr.all();
    let yes_no = |ok: bool| {
        say!("{}", if ok { "holds" } else { "fails" });
        if ok {
            OK
        } else {
            FAILED_CHECK
        }
    };
    Ok(match property {
        Property::URr => witnesses(&is_u_range_restricted(&f).map_err(restriction)?),
        Property::VgtRr => witnesses(&is_vgt_range_restricted(&f).map_err(restriction)?),
        Property::Horn => yes_no(is_horn(&f)),
        Property::HornLike => yes_no(is_horn_like(&f)),
        Property::VxPreconditions => {
            let g = pr.conjecture().ok_or_else(|| fail(PARSE_ERROR, format!("{}: no conjecture", input.display())))?;
            let x: BTreeSet<Symbol> = free_vars.iter().map(|v| Symbol::new(v)).collect();
            witnesses(&check_vx_preconditions(&pr.axioms(), &g, &x).map_err(restriction)?)
        }
        Property::Prop4 => {
            let r = prop4_check(&f).map_err(restriction)?;
            say!("vgt-rr {}, u-rr {}, negation u-rr {}", r.vgt, r.u, r.u_negated);
            yes_no(r.agrees)
        }
    })
}

fn cmd_verify(pair: &Pair, h: &Path, require: &[Requirement], limits: &Limits) -> Run {
    let (f, g, _) = pair.load()?;
    let h = problem(h)?.all();
    let opts = options(require, limits);
    let v = verify_interpolant(&f, &g, &h, &opts.require, &opts);
    for (name, check) in v.rows() {
        say!("{name}: {check}");
    }
    Ok(if v.passed() { OK } else { FAILED_CHECK })
}

fn cmd_define(input: &Path, targets: &[String], require: &[Requirement], limits: &Limits) -> Run {
    let pr = problem(input)?;
    let q = pr.conjecture().ok_or_else(|| fail(PARSE_ERROR, format!("{}: no conjecture", input.display())))?;
    let targets: BTreeSet<Symbol> = targets.iter().map(|t| Symbol::new(t)).collect();
    let r = synthesize_definition(&pr.axioms(), &q, &targets, &options(require, limits)).map_err(|e| match e {
        tabipol::interpolate::DefinitionError::Interpolate(InterpolateError::NotProved(p)) => prove_error(&p),
        tabipol::interpolate::DefinitionError::Interpolate(i) if i.is_resource_limit() => fail(RESOURCE_LIMIT, i.to_string()),
        e => fail(FAILED_CHECK, e.to_string()),
    })?;
    say!("{}", r.interpolant);
    Ok(if r.unmet().is_empty() { OK } else { FAILED_CHECK })
}

fn cmd_import(path: &Path, out: &Option<PathBuf>, limits: &Limits) -> Run {
    let src = read(path)?;
    let doc = parse_proof(&src).map_err(|e| fail(PARSE_ERROR, format!("{}: {e}", path.display())))?;
    let t = doc.import(limits.max_nodes).map_err(|e| {
        let code = if e.is_resource_limit() { RESOURCE_LIMIT } else { PARSE_ERROR };
        fail(code, format!("{}: {e}", path.display()))
    })?;
    write_out(out, &print_tableau(&t))?;
    Ok(OK)
}

fn cmd_stats(dir: &Path, json: bool, timings: bool, limits: &Limits) -> Run {
    let opts = HyperOptions { max_nodes: limits.max_nodes, trace: false };
    let mut r = collect_dir(dir, &opts).map_err(|e| fail(PARSE_ERROR, format!("{}: {e}", dir.display())))?;
    if !timings {
        r.rows.iter_mut().for_each(|row| row.hyper_ms = 0.0);
        r.summary.hyper_ms = None;
    }
    if json {
        say!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
    } else {
        let ms = |v: f64| if timings { format!("{v:.3}") } else { "-".into() };
        say!("{:<16} {:>6} {:>6} {:>6} {:>10} {:>6}", "name", "S2", "S3", "S4", "T2 ms", "ratio");
        for row in &r.rows {
            say!(
                "{:<16} {:>6} {:>6} {:>6} {:>10} {:>6.2}",
                row.name,
                row.steps,
                row.cut_size,
                row.hyper_size,
                ms(row.hyper_ms),
                row.ratio
            );
        }
        for f in &r.failures {
            say!("{:<16} failed: {}", f.name, f.error);
        }
        let s = &r.summary;
        for (label, pick) in [("median", 0), ("min", 1), ("max", 2)] {
            let get = |sp: Option<tabipol::stats::Spread>| sp.map_or(f64::NAN, |x| [x.median, x.min, x.max][pick]);
            let t = if timings { ms(get(s.hyper_ms)) } else { "-".into() };
            say!(
                "{:<16} {:>6} {:>6.1} {:>6.1} {:>10} {:>6.2}",
                label,
                "",
                get(s.cut_size),
                get(s.hyper_size),
                t,
                get(s.ratio)
            );
        }
        say!("{}/{} converted, {} not larger", s.converted, s.proofs, s.not_larger);
    }
    Ok(if r.failures.is_empty() { OK } else { FAILED_CHECK })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Prove { input, format, equality_axioms, out, limits } => cmd_prove(input, *format, *equality_axioms, out, limits),
        Command::Interpolate { pair, require, free_vars, side_tie, ground_side, verify, timings, out, limits } => {
            cmd_interpolate(pair, require, free_vars, *side_tie, *ground_side, *verify, *timings, out, limits)
        }
        Command::Hyper { proof, stats, trace, timings, out, limits } => cmd_hyper(proof, *stats, *trace, *timings, out, limits),
        Command::Check { input, property, free_vars } => cmd_check(input, *property, free_vars),
        Command::Verify { pair, h, require, limits } => cmd_verify(pair, h, require, limits),
        Command::Define { input, targets, require, limits } => cmd_define(input, targets, require, limits),
        Command::Import { proof, out, limits } => cmd_import(proof, out, limits),
        Command::Stats { dir, json, timings, limits } => cmd_stats(dir, *json, *timings, limits),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
