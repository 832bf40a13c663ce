//! Input parsing and command orchestration for the `sfs-fillings` binary.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::error::Category;
use sfs_fillings::census::{build_census_with, CensusOptions, CensusReport};
use sfs_fillings::dualgraph::{build_dual, config_to_dot, verify_duality, DualGraph};
use sfs_fillings::homology::HomRep;
use sfs_fillings::monodromy::{
    canonical_word, hole_degree, prove_equivalent, rep_to_word, TwistWord, Verdict, WordsError,
    DEFAULT_BUDGET,
};
use sfs_fillings::plumbing::{graph_from_seifert, parse_rational, SeifertData, StarGraph};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("syntax error at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("invalid field `{field}`: {msg}")]
    Validation { field: String, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Seifert(SeifertData),
    Graph(StarGraph),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputOptions {
    pub symmetry_quotient: Option<bool>,
    pub budget: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDoc {
    pub source: Source,
    pub options: InputOptions,
}

impl InputDoc {
    pub fn graph(&self) -> Result<StarGraph, InputError> {
        match &self.source {
            Source::Graph(g) => Ok(g.clone()),
            Source::Seifert(s) => graph_from_seifert(s).map_err(|e| invalid("seifert", e)),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    seifert: Option<RawSeifert>,
    graph: Option<RawGraph>,
    #[serde(default)]
    options: InputOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeifert {
    e0: i64,
    r: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    e0: i64,
    arms: Vec<Vec<i64>>,
}

fn invalid(field: impl Into<String>, e: impl ToString) -> InputError {
    InputError::Validation { field: field.into(), msg: e.to_string() }
}

pub fn parse_input(text: &str) -> Result<InputDoc, InputError> {
    let raw: RawDoc = serde_json::from_str(text).map_err(|e| match e.classify() {
        Category::Data => invalid(format!("line {} column {}", e.line(), e.column()), e),
        _ => InputError::Syntax { line: e.line(), column: e.column(), msg: e.to_string() },
    })?;
    let source = match (raw.seifert, raw.graph) {
        (Some(s), None) => {
            let mut rs = Vec::with_capacity(s.r.len());
            for (i, r) in s.r.iter().enumerate() {
                rs.push(parse_rational(r).map_err(|e| invalid(format!("seifert.r[{i}]"), e))?);
            }
            Source::Seifert(SeifertData::new(s.e0, rs).map_err(|e| invalid("seifert.r", e))?)
        }
        (None, Some(g)) => Source::Graph(StarGraph::new(g.e0, g.arms).map_err(|e| invalid("graph.arms", e))?),
        _ => return Err(invalid("seifert|graph", "exactly one of `seifert` and `graph` is required")),
    };
    Ok(InputDoc { source, options: raw.options })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
    Dot,
}

#[derive(Debug, Clone, Default)]
pub struct Flags {
    pub format: Format,
    pub no_symmetry_quotient: bool,
    pub budget: Option<usize>,
    pub fixtures: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Census,
    Dual,
    Monodromy,
    Verify { left: String, right: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn fail(code: i32, msg: impl ToString) -> Self {
        Output { stdout: String::new(), stderr: format!("error: {}\n", msg.to_string()), code }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Runs one command. `input` is the JSON document for every command but
/// `verify`, which takes its two words from the command itself.
pub fn run(cmd: &Command, input: Option<&str>, flags: &Flags) -> Output {
    if let Command::Verify { left, right } = cmd {
        return verify(left, right, flags);
    }
    let doc = match input.map(parse_input) {
        Some(Ok(d)) => d,
        Some(Err(e)) => return Output::fail(EXIT_INVALID, e),
        None => return Output::fail(EXIT_INVALID, "missing input document"),
    };
    let g = match doc.graph() {
        Ok(g) => g,
        Err(e) => return Output::fail(EXIT_INVALID, e),
    };
    let quotient = !flags.no_symmetry_quotient && doc.options.symmetry_quotient.unwrap_or(true);
    let budget = flags.budget.or(doc.options.budget).unwrap_or(DEFAULT_BUDGET);
    let opts = CensusOptions { symmetry_quotient: quotient, fixtures: flags.fixtures, timing: false };
    match cmd {
        Command::Census => census(&g, &opts, flags.format),
        Command::Dual => dual(&g, flags.format),
        Command::Monodromy => monodromy(&g, &opts, budget, flags.format),
        Command::Verify { .. } => unreachable!("handled above"),
    }
}

fn census(g: &StarGraph, opts: &CensusOptions, format: Format) -> Output {
    let report = match build_census_with(g, opts) {
        Ok(r) => r,
        Err(e) => return Output::fail(EXIT_INVALID, e),
    };
    Output::ok(match format {
        Format::Json => json(&report),
        Format::Text => census_text(&report),
        Format::Dot => report.dual_graph.to_dot(),
    })
}

pub fn census_text(r: &CensusReport) -> String {
    let mut s = format!("{} = {}\ndual: {}\n", r.input, r.seifert, dual_text(&r.dual_graph));
    let _ = writeln!(s, "{} candidate(s)", r.candidates.len());
    for c in &r.candidates {
        let name = c.configuration.name.as_deref().unwrap_or("-");
        let _ = write!(s, "  χ={} |σ|≤{} M={} config={name}", c.euler, c.sigma_abs_bound, c.basis_size);
        if let Some(a) = c.annotation {
            let _ = write!(s, " ({a})");
        }
        s.push('\n');
    }
    for f in &r.fixtures {
        let verdict = if f.pass { "pass" } else { "FAIL" };
        let _ = writeln!(
            s,
            "fixture {}: {verdict} (expected {:?}, got {:?})",
            f.family, f.expected.chis, f.got.chis
        );
    }
    s
}

fn dual_text(dg: &DualGraph) -> String {
    let arms: Vec<String> = dg.arms.iter().map(|a| format!("{a:?}")).collect();
    format!("(+{}; {})", dg.central_weight, arms.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualReport {
    pub input: StarGraph,
    pub dual_graph: DualGraph,
    pub verified: bool,
    pub dot: String,
}

fn dual(g: &StarGraph, format: Format) -> Output {
    let dg = match build_dual(g) {
        Ok(d) => d,
        Err(e) => return Output::fail(EXIT_INVALID, e),
    };
    let check = verify_duality(&dg, g);
    let dot = config_to_dot(&dg).unwrap_or_else(|| dg.to_dot());
    Output::ok(match format {
        Format::Json => json(&DualReport { input: g.clone(), dual_graph: dg, verified: check.ok, dot }),
        Format::Text => {
            let mut s = format!("{g}\ndual: {}\n", dual_text(&dg));
            let _ = writeln!(
                s,
                "blow-ups: {}, duality {}",
                check.steps,
                if check.ok { "verified" } else { "FAILED" }
            );
            for d in &check.diagnostics {
                let _ = writeln!(s, "  {d}");
            }
            s
        }
        Format::Dot => dot,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateWord {
    pub chi: i64,
    pub config: Option<String>,
    pub word: String,
    pub hole_degree: Vec<i64>,
    /// `proven`, `disproven` or `unknown` against the canonical word
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_moves: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyReport {
    pub input: StarGraph,
    pub canonical: String,
    pub budget: usize,
    pub candidates: Vec<CandidateWord>,
}

fn verdict_name(v: &Verdict) -> (&'static str, Option<usize>) {
    match v {
        Verdict::Proven { trace } => ("proven", Some(trace.moves.len())),
        Verdict::Disproven { .. } => ("disproven", None),
        Verdict::Unknown { .. } => ("unknown", None),
    }
}

/// The word order depends on the hole labels, so each relabeling of the rep
/// by a dual automorphism is tried until one connects to `canonical`.
fn labeled_word(
    dg: &DualGraph,
    rep: &HomRep,
    canonical: &TwistWord,
    budget: usize,
) -> Result<(TwistWord, Verdict), WordsError> {
    let mut first = None;
    let mut tried = HashSet::new();
    for ap in dg.automorphisms() {
        let perm = dg.vertex_permutation(&ap);
        let classes = perm.iter().map(|&v| rep.classes[v].clone()).collect();
        let w = rep_to_word(dg, &HomRep { basis_size: rep.basis_size, classes })?;
        if !tried.insert(w.clone()) {
            continue;
        }
        let v = prove_equivalent(&w, canonical, budget);
        if v.is_proven() {
            return Ok((w, v));
        }
        first.get_or_insert((w, v));
    }
    Ok(first.expect("identity automorphism"))
}

fn monodromy(g: &StarGraph, opts: &CensusOptions, budget: usize, format: Format) -> Output {
    let report = match build_census_with(g, opts) {
        Ok(r) => r,
        Err(e) => return Output::fail(EXIT_INVALID, e),
    };
    let dg = &report.dual_graph;
    let n: Vec<i64> = dg.arms.iter().map(|a| -a[0]).collect();
    let canonical = match canonical_word(dg.arm_count(), &n) {
        Ok(w) if dg.arms.iter().all(|a| a.len() == 1) => w,
        _ => {
            return Output::fail(
                EXIT_INVALID,
                format!(
                    "monodromy words need a dual with at least 3 arms of length 1, got {}",
                    dual_text(dg)
                ),
            )
        }
    };
    let mut out = Vec::new();
    for c in &report.candidates {
        let (w, v) = match labeled_word(dg, &c.rep, &canonical, budget) {
            Ok(x) => x,
            Err(e) => return Output::fail(EXIT_INVALID, e),
        };
        let (verdict, trace_moves) = verdict_name(&v);
        out.push(CandidateWord {
            chi: c.euler,
            config: c.configuration.name.clone(),
            hole_degree: hole_degree(&w),
            word: w.to_string(),
            verdict: verdict.into(),
            trace_moves,
        });
    }
    let rep = MonodromyReport { input: g.clone(), canonical: canonical.to_string(), budget, candidates: out };
    Output::ok(match format {
        Format::Json => json(&rep),
        Format::Text | Format::Dot => {
            let mut s = format!("{}\ncanonical: {}\n", rep.input, rep.canonical);
            for c in &rep.candidates {
                let _ = writeln!(s, "  χ={} {}: {}", c.chi, c.word, c.verdict);
            }
            s
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub left: String,
    pub right: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

fn verify(left: &str, right: &str, flags: &Flags) -> Output {
    let parse = |s: &str| TwistWord::parse_any(s).map_err(|e| format!("{s:?}: {e}"));
    let (a, b) = match (parse(left), parse(right)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Output::fail(EXIT_INVALID, e),
    };
    let verdict = prove_equivalent(&a, &b, flags.budget.unwrap_or(DEFAULT_BUDGET));
    let code = if matches!(verdict, Verdict::Unknown { .. }) { EXIT_UNKNOWN } else { EXIT_OK };
    let rep = VerifyReport { left: a.to_string(), right: b.to_string(), verdict };
    let stdout = match flags.format {
        Format::Json => json(&rep),
        Format::Text | Format::Dot => {
            let (name, moves) = verdict_name(&rep.verdict);
            match moves {
                Some(m) => format!("{name} ({m} moves)\n"),
                None => format!("{name}\n"),
            }
        }
    };
    Output { stdout, stderr: String::new(), code }
}
