//! The `sgfl` command line: argument parsing, dispatch and rendering.
//!
//! [`run`] never exits the process; it returns the exit code and the text
//! destined for stdout and stderr, which keeps the binary trivial and the
//! whole front end testable in-process.

mod examples;
mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use sgfl_core::corpus::{random_numerical, CorpusSpec};
use sgfl_core::factorization::length_summary;
use sgfl_core::kunz::{self, KunzContext, KunzPoint};
use sgfl_core::minrepl::{self, ReplSolver};
use sgfl_core::verdict::{candidate_atoms, check_formula, check_formula_with, embdim3_check, oracle_scan};
use sgfl_core::{input, CandidateMode, Element, Error, Formula, Semigroup, Verdict, DEFAULT_BUDGET};

pub use examples::{worked_examples, Row, RowResult, Status};
pub use render::Table;

/// Version tag carried by every JSON report.
pub const SCHEMA_ID: &str = "sgfl/1";

/// JSON schema for all reports.
pub const SCHEMA: &str = include_str!("../schema/sgfl-1.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
    Pretty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Node limit for each factorization or MinRepl search.
    pub budget: u64,
    pub output: OutputFormat,
    /// Worker threads for parallel work items.
    pub parallelism: usize,
    /// Seed for random corpora.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            budget: DEFAULT_BUDGET,
            output: OutputFormat::Json,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
            seed: 0,
        }
    }
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(name = "sgfl", version, about = "Factorization length formulas in affine semigroups")]
struct Cli {
    /// Node limit for each search.
    #[arg(long, global = true, env = "SGFL_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    output: OutputFormat,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    parallelism: Option<u64>,
    /// Seed for random corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check both formulas at every candidate atom.
    #[command(group(ArgGroup::new("source").required(true).args(["gens", "file", "random"])))]
    Analyze(AnalyzeArgs),
    /// Minimal replaceable factorizations and the derived candidate sets.
    Minrepl(MinreplArgs),
    /// Decide one formula at one atom.
    Verdict(VerdictArgs),
    /// Brute-force scan of one formula at one atom.
    Oracle(OracleArgs),
    /// Kunz polytope points.
    Kunz {
        #[command(subcommand)]
        command: KunzCommand,
    },
    /// Re-run the worked examples and compare with their stated values.
    PaperExamples(ExamplesArgs),
}

#[derive(Args)]
struct GensArgs {
    /// Generators: `10,12,21,38` or `(2,0),(3,1),(0,5)`.
    #[arg(long, allow_hyphen_values = true)]
    gens: String,
    /// Dimension (inferred from the first generator by default).
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long, allow_hyphen_values = true)]
    gens: Option<String>,
    #[arg(long, requires = "gens")]
    dim: Option<usize>,
    /// File with one `dim=<d>; gens=<list>` line per semigroup.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Analyze N random numerical semigroups drawn with `--seed`.
    #[arg(long, value_name = "N")]
    random: Option<usize>,
    /// Also report the factorization lengths of this element.
    #[arg(long, requires = "gens", allow_hyphen_values = true)]
    element: Option<String>,
    #[arg(long, value_enum, default_value = "full")]
    candidates: CandidatesArg,
}

#[derive(Args)]
struct MinreplArgs {
    #[command(flatten)]
    gens: GensArgs,
    #[arg(long, allow_hyphen_values = true)]
    m: String,
    #[arg(long, value_enum, default_value = "auto")]
    solver: SolverArg,
}

#[derive(Args)]
struct ScanArgs {
    /// Largest base element scanned (w(s) for affine semigroups).
    #[arg(long, allow_hyphen_values = true)]
    bound: Option<i64>,
    /// Keep scanning past the first counterexample.
    #[arg(long)]
    all: bool,
    /// Use the default affine bound when none is given.
    #[arg(long)]
    allow_default: bool,
}

#[derive(Args)]
struct VerdictArgs {
    #[command(flatten)]
    gens: GensArgs,
    /// The atom (defaults to the only candidate atom of a numerical semigroup).
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, value_enum)]
    formula: FormulaArg,
    #[arg(long, value_enum, default_value = "minrepl")]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "full")]
    candidates: CandidatesArg,
    #[command(flatten)]
    scan: ScanArgs,
    /// Exit with code 1 when the formula fails.
    #[arg(long)]
    assert_holds: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    gens: GensArgs,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, value_enum)]
    formula: FormulaArg,
    #[command(flatten)]
    scan: ScanArgs,
    #[arg(long)]
    assert_holds: bool,
}

#[derive(Subcommand)]
enum KunzCommand {
    /// Describe one integer point.
    Point(PointArgs),
}

#[derive(Args)]
struct PointArgs {
    #[arg(long)]
    m: i64,
    /// Coordinates `x_0,…,x_{m-1}`.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Evaluate the inequality criterion for this formula.
    #[arg(long, value_enum)]
    verdict: Option<FormulaArg>,
    /// Compare pseudominimal sets with another point of the same face.
    #[arg(long, allow_hyphen_values = true)]
    cominimal: Option<String>,
}

#[derive(Args)]
struct ExamplesArgs {
    /// Replace the expected value of a row, as `ID=JSON`.
    #[arg(long = "expect", value_name = "ID=JSON")]
    expect: Vec<String>,
    /// Only run rows whose id starts with this prefix.
    #[arg(long)]
    only: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaArg {
    Longest,
    Shortest,
}

impl From<FormulaArg> for Formula {
    fn from(f: FormulaArg) -> Self {
        match f {
            FormulaArg::Longest => Formula::LongestPlusOne,
            FormulaArg::Shortest => Formula::ShortestPlusOne,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Minrepl,
    Embdim3,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum CandidatesArg {
    Full,
    Reduced,
}

impl From<CandidatesArg> for CandidateMode {
    fn from(c: CandidatesArg) -> Self {
        match c {
            CandidatesArg::Full => CandidateMode::Full,
            CandidatesArg::Reduced => CandidateMode::Reduced,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Auto,
    ContejeanDevie,
    BoundedFrontier,
}

impl From<SolverArg> for ReplSolver {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Auto => ReplSolver::Auto,
            SolverArg::ContejeanDevie => ReplSolver::ContejeanDevie,
            SolverArg::BoundedFrontier => ReplSolver::BoundedFrontier,
        }
    }
}

/// A finished report before rendering.
pub struct Report {
    pub command: &'static str,
    pub body: Map<String, Value>,
    pub table: Option<Table>,
    pub code: i32,
}

impl Report {
    fn new(command: &'static str, body: Value) -> Self {
        let body = match body {
            Value::Object(map) => map,
            other => Map::from_iter([("result".to_string(), other)]),
        };
        Report { command, body, table: None, code: 0 }
    }

    fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    /// The JSON document printed for this report.
    pub fn to_json(&self) -> Value {
        let mut map = self.body.clone();
        map.insert("schema".into(), json!(SCHEMA_ID));
        map.insert("command".into(), json!(self.command));
        Value::Object(map)
    }
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Fallible<T> = std::result::Result<T, Failure>;

fn error_document(command: Option<&str>, kind: &str, message: &str) -> String {
    let doc = json!({
        "schema": SCHEMA_ID,
        "command": command,
        "error": {"kind": kind, "message": message},
    });
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, stdout: text, stderr: String::new() };
            }
            return Outcome {
                code: 2,
                stdout: error_document(None, "usage", &usage_message(&text)),
                stderr: text,
            };
        }
    };
    let defaults = RunConfig::default();
    let config = RunConfig {
        budget: cli.budget.unwrap_or(defaults.budget),
        output: cli.output,
        parallelism: cli.parallelism.map_or(defaults.parallelism, |p| p as usize),
        seed: cli.seed,
    };
    let name = command_name(&cli.command);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .expect("thread pool");
    let result = pool.install(|| dispatch(cli.command, &config));
    let (kind, message) = match result {
        Ok(report) => return finish(report, &config),
        Err(Failure::Usage(m)) => ("usage", m),
        Err(Failure::Input(m)) => ("input", m),
    };
    let stdout = match config.output {
        OutputFormat::Json => error_document(Some(name), kind, &message),
        _ => String::new(),
    };
    Outcome { code: 2, stdout, stderr: format!("error: {message}\n") }
}

/// The clap message without the usage synopsis, on one line.
fn usage_message(rendered: &str) -> String {
    rendered
        .lines()
        .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
        .trim_start_matches("error: ")
        .to_string()
}

fn finish(report: Report, config: &RunConfig) -> Outcome {
    let stdout = match config.output {
        OutputFormat::Json => serde_json::to_string_pretty(&report.to_json()).expect("serializable") + "\n",
        OutputFormat::Tsv => match &report.table {
            Some(t) => t.tsv(),
            None => {
                let message = format!("tsv output is not available for `{}`", report.command);
                return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {message}\n") };
            }
        },
        OutputFormat::Pretty => match &report.table {
            Some(t) => t.aligned(),
            None => serde_json::to_string_pretty(&report.to_json()).expect("serializable") + "\n",
        },
    };
    Outcome { code: report.code, stdout, stderr: String::new() }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze(_) => "analyze",
        Command::Minrepl(_) => "minrepl",
        Command::Verdict(_) => "verdict",
        Command::Oracle(_) => "oracle",
        Command::Kunz { .. } => "kunz point",
        Command::PaperExamples(_) => "paper-examples",
    }
}

fn dispatch(command: Command, config: &RunConfig) -> Fallible<Report> {
    match command {
        Command::Analyze(a) => analyze(a, config),
        Command::Minrepl(a) => minrepl_cmd(a, config),
        Command::Verdict(a) => verdict_cmd(a, config),
        Command::Oracle(a) => oracle_cmd(a),
        Command::Kunz { command: KunzCommand::Point(a) } => kunz_point(a, config),
        Command::PaperExamples(a) => paper_examples(a, config),
    }
}

impl GensArgs {
    fn semigroup(&self) -> Fallible<Semigroup> {
        Ok(input::parse_generators(&self.gens, self.dim)?)
    }
}

fn atom(s: &Semigroup, text: &str) -> Fallible<Element> {
    let m = input::parse_element(text, s.dim())?;
    if s.index_of(&m).is_none() {
        return Err(Error::MNotAtom(m).into());
    }
    Ok(m)
}

/// `--m`, or the single candidate atom when there is exactly one.
fn atom_or_candidate(s: &Semigroup, m: Option<&str>, formula: Formula) -> Fallible<Element> {
    match m {
        Some(text) => atom(s, text),
        None => match candidate_atoms(s, formula).as_slice() {
            [only] => Ok(only.clone()),
            _ => Err(Failure::Usage("--m is required for this semigroup".into())),
        },
    }
}

fn with_generators(s: &Semigroup, value: Value) -> Value {
    let mut map = match value {
        Value::Object(map) => map,
        other => Map::from_iter([("result".to_string(), other)]),
    };
    map.insert("generators".into(), json!(s.generators()));
    Value::Object(map)
}

fn analyze(a: AnalyzeArgs, config: &RunConfig) -> Fallible<Report> {
    let semigroups = if let Some(gens) = &a.gens {
        vec![input::parse_generators(gens, a.dim)?]
    } else if let Some(path) = &a.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        input::parse_file(&text)?
    } else {
        random_numerical(a.random.unwrap_or(0), config.seed, CorpusSpec::default())
    };
    let element = match &a.element {
        Some(text) => Some(input::parse_element(text, semigroups[0].dim())?),
        None => None,
    };
    let mode: CandidateMode = a.candidates.into();
    let results: Vec<sgfl_core::Result<(Value, Vec<Verdict>)>> = semigroups
        .par_iter()
        .map(|s| analyze_one(s, mode, element.as_ref(), config.budget))
        .collect();
    let mut table = Table::new(&["generators", "formula", "m", "holds", "method", "counterexample"]);
    let mut docs = Vec::with_capacity(results.len());
    for (s, r) in semigroups.iter().zip(results) {
        let (doc, verdicts) = r?;
        for v in &verdicts {
            table.push(verdict_row(s, v));
        }
        docs.push(doc);
    }
    Ok(Report::new("analyze", json!({"semigroups": docs})).with_table(table))
}

fn analyze_one(
    s: &Semigroup,
    mode: CandidateMode,
    element: Option<&Element>,
    budget: u64,
) -> sgfl_core::Result<(Value, Vec<Verdict>)> {
    let mut verdicts = Vec::new();
    let mut holds_at = Map::new();
    for formula in [Formula::LongestPlusOne, Formula::ShortestPlusOne] {
        let mut holding = Vec::new();
        for m in candidate_atoms(s, formula) {
            let v = check_formula_with(s, &m, formula, mode, budget)?;
            if v.holds {
                holding.push(m);
            }
            verdicts.push(v);
        }
        holds_at.insert(formula.name().into(), json!(holding));
    }
    let mut doc = json!({
        "generators": s.generators(),
        "dim": s.dim(),
        "numerical": s.is_numerical(),
        "verdicts": verdicts,
        "holds_at": holds_at,
    });
    if s.is_numerical() {
        doc["frobenius"] = json!(s.frobenius()?);
    }
    if let Some(v) = element {
        doc["element"] = json!(length_summary(s, v, None, budget)?);
    }
    Ok((doc, verdicts))
}

fn generators_text(s: &Semigroup) -> String {
    s.generators().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn verdict_row(s: &Semigroup, v: &Verdict) -> Vec<String> {
    vec![
        generators_text(s),
        v.formula.name().into(),
        v.m.to_string(),
        v.holds.to_string(),
        serde_json::to_value(v.method).expect("serializable").as_str().unwrap_or("").into(),
        v.counterexamples.first().map_or(String::new(), |c| c.s.to_string()),
    ]
}

fn verdict_report(command: &'static str, s: &Semigroup, v: Verdict, assert_holds: bool) -> Report {
    let table = {
        let mut t = Table::new(&["generators", "formula", "m", "holds", "method", "counterexample"]);
        t.push(verdict_row(s, &v));
        t
    };
    let holds = v.holds;
    let mut report =
        Report::new(command, with_generators(s, serde_json::to_value(&v).expect("serializable"))).with_table(table);
    if assert_holds && !holds {
        report.code = 1;
    }
    report
}

fn minrepl_cmd(a: MinreplArgs, config: &RunConfig) -> Fallible<Report> {
    let s = a.gens.semigroup()?;
    let m = atom(&s, &a.m)?;
    let raw = minrepl::min_repl_with(&s, &m, a.solver.into(), config.budget)?;
    let report = minrepl::candidate_sets(&s, &m, &raw)?;
    let doc = with_generators(&s, serde_json::to_value(&report).expect("serializable"));
    Ok(Report::new("minrepl", doc))
}

fn verdict_cmd(a: VerdictArgs, config: &RunConfig) -> Fallible<Report> {
    let s = a.gens.semigroup()?;
    let formula: Formula = a.formula.into();
    if a.method != MethodArg::Oracle && (a.scan.bound.is_some() || a.scan.all || a.scan.allow_default) {
        return Err(Failure::Usage("--bound, --all and --allow-default apply to --method oracle".into()));
    }
    let v = match a.method {
        MethodArg::Minrepl => {
            let m = atom_or_candidate(&s, a.m.as_deref(), formula)?;
            check_formula_with(&s, &m, formula, a.candidates.into(), config.budget)?
        }
        MethodArg::Embdim3 => {
            let v = embdim3_check(&s, formula, config.budget)?;
            if let Some(text) = &a.m {
                if atom(&s, text)? != v.m {
                    let which = if formula == Formula::LongestPlusOne { "smallest" } else { "largest" };
                    return Err(Failure::Usage(format!("embdim3 tests the {which} generator, {}", v.m)));
                }
            }
            v
        }
        MethodArg::Oracle => {
            let m = atom_or_candidate(&s, a.m.as_deref(), formula)?;
            oracle_scan(&s, &m, formula, a.scan.bound, a.scan.allow_default, a.scan.all)?
        }
    };
    Ok(verdict_report("verdict", &s, v, a.assert_holds))
}

fn oracle_cmd(a: OracleArgs) -> Fallible<Report> {
    let s = a.gens.semigroup()?;
    let formula: Formula = a.formula.into();
    let m = atom_or_candidate(&s, a.m.as_deref(), formula)?;
    let v = oracle_scan(&s, &m, formula, a.scan.bound, a.scan.allow_default, a.scan.all)?;
    Ok(verdict_report("oracle", &s, v, a.assert_holds))
}

fn kunz_point(a: PointArgs, config: &RunConfig) -> Fallible<Report> {
    let ctx = KunzContext::numerical(a.m)?;
    let x = KunzPoint::parse(&ctx, &a.x)?;
    let s = kunz::semigroup_of_point(&x);
    let m = Element::scalar(a.m);
    let m_atom = x.is_m_atom();
    let mut doc = json!({
        "m": a.m,
        "x": x.coords(),
        "semigroup": s.generators(),
        "apery": (0..ctx.modulus()).map(|r| x.apery_element(r)).collect::<Vec<_>>(),
        "reduced": x.is_reduced(),
        "m_atom": m_atom,
        "relations": x.relations(),
        "covers": x.covers(),
        "atoms": x.atoms(),
        "min_inf_factorizations": x.min_inf_factorizations(),
        "pseudomin": x.pseudomin(),
    });
    if let Some(f) = a.verdict {
        let formula: Formula = f.into();
        doc["verdict"] = match x.main_verdict(formula) {
            Ok(kv) => {
                let direct = check_formula(&s, &m, formula, config.budget)?;
                let agrees = direct.holds == kv.holds;
                let mut v = serde_json::to_value(&kv).expect("serializable");
                v["status"] = json!("applicable");
                v["direct"] = serde_json::to_value(&direct).expect("serializable");
                v["agrees_with_direct"] = json!(agrees);
                v
            }
            Err(e @ (Error::NotReduced | Error::MNotAtomAtPoint { .. })) => {
                json!({"formula": formula, "status": "inapplicable", "reason": e.to_string()})
            }
            Err(e) => return Err(e.into()),
        };
    }
    if let Some(text) = &a.cominimal {
        let y = KunzPoint::parse(&ctx, text)?;
        let same_face = x.same_face(&y);
        let cominimal = if same_face { Some(kunz::cominimal(&x, &y)?) } else { None };
        doc["cominimal"] = json!({"y": y.coords(), "same_face": same_face, "cominimal": cominimal});
    }
    Ok(Report::new("kunz point", doc))
}

fn paper_examples(a: ExamplesArgs, config: &RunConfig) -> Fallible<Report> {
    let mut rows = worked_examples();
    if let Some(prefix) = &a.only {
        rows.retain(|r| r.id.starts_with(prefix.as_str()));
    }
    for spec in &a.expect {
        let (id, text) = spec
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--expect needs ID=JSON, got {spec:?}")))?;
        let value: Value =
            serde_json::from_str(text).map_err(|e| Failure::Usage(format!("--expect {id}: {e}")))?;
        let row = rows
            .iter_mut()
            .find(|r| r.id == id)
            .ok_or_else(|| Failure::Usage(format!("no example row {id:?}")))?;
        row.set_expected(value);
    }
    let results: Vec<RowResult> = rows.par_iter().map(|r| r.evaluate(config.budget)).collect();
    let count = |st: Status| results.iter().filter(|r| r.status == st).count();
    let (pass, fail, error) = (count(Status::Pass), count(Status::Fail), count(Status::Error));
    let mut table = Table::new(&["id", "status", "expected", "actual"]);
    for r in &results {
        table.push(vec![
            r.id.to_string(),
            r.status.name().to_string(),
            r.expected.to_string(),
            r.actual.as_ref().map_or_else(|| r.error.clone().unwrap_or_default(), Value::to_string),
        ]);
    }
    let mut report = Report::new(
        "paper-examples",
        json!({"rows": results, "summary": {"pass": pass, "fail": fail, "error": error}}),
    )
    .with_table(table);
    report.code = if error > 0 {
        2
    } else if fail > 0 {
        1
    } else {
        0
    };
    Ok(report)
}
