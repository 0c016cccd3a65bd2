//! Command surface of the `invsr` binary.
//!
//! Exit codes: `0` when every asserted property holds (a negative verdict of
//! a decision command is still `0`), `1` when an asserted property fails, `2`
//! on malformed input or usage.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::checks::{run_algebra_check, run_semimodule_check, SEMIMODULE_CHECKS};
use crate::corpus::{self, Subject};
use crate::decide::{ideal_lattice_check, is_injective, is_projective, Decision};
use crate::enumerate::{
    enumerate_algebras, smallest_nondistributive, theorem_battery, with_threads, AlgebraClass,
    Filter, SearchOptions, SearchSpec,
};
use crate::error::{Error, Result};
use crate::format::{emit, emit_semimodule, parse};
use crate::homs::{enumerate_homs, HomKind};
use crate::ideals::{id_semimodule, ideals};
use crate::report::{all_of, Report};
use crate::semimodule::{cyclic, free, regular, SemimoduleTable};
use crate::table::{AlgebraTable, Semilattice};
use crate::termeq::{galois_check, identity_battery, roundtrip_check, unit_interval};
use crate::theorems::Scope;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "invsr",
    version,
    about = "Exact checks on finite involutive semirings and their semimodules"
)]
struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for enumeration and batteries.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Axiom checks on an algebra, or on a semimodule with --module.
    Check {
        input: String,
        /// Assert membership in a class.
        #[arg(long)]
        class: Option<AlgebraClassArg>,
        /// Named checks to run instead of the default catalogue.
        #[arg(long = "check")]
        checks: Vec<String>,
        #[arg(long)]
        module: Option<String>,
    },
    /// Term-equivalence round trip and identity battery.
    Termeq { input: String },
    /// Closure of the interval [0, 1].
    Interval { input: String },
    /// Ideals of the additive semilattice.
    Ideals {
        input: String,
        #[arg(long)]
        module: Option<String>,
    },
    /// Homomorphisms between two semimodules, given as REF or REF@MODULE.
    Homs {
        dom: String,
        cod: String,
        #[arg(long, default_value = "linear")]
        kind: String,
    },
    Injective {
        input: String,
        #[arg(long)]
        module: Option<String>,
    },
    Projective {
        input: String,
        #[arg(long)]
        module: Option<String>,
    },
    /// Runs named checks over every enumerated algebra.
    Battery {
        #[arg(long)]
        class: AlgebraClassArg,
        #[arg(long)]
        max_size: usize,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        checks: Vec<String>,
        #[arg(long = "filter")]
        filters: Vec<String>,
        #[arg(long, default_value_t = 2)]
        max_rank: usize,
    },
    /// Lists algebras of a class up to isomorphism.
    Enumerate {
        #[arg(long)]
        class: AlgebraClassArg,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long = "filter")]
        filters: Vec<String>,
        /// Print only names and sizes.
        #[arg(long)]
        names_only: bool,
    },
    /// Runs every expectation of the built-in corpus.
    Corpus {
        /// Restrict to one entry.
        #[arg(long)]
        entry: Option<String>,
    },
    /// Smallest non-distributive 1-bounded involutive semiring.
    Nondist {
        #[arg(long, default_value_t = 7)]
        max_size: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug)]
struct AlgebraClassArg(AlgebraClass);

impl std::str::FromStr for AlgebraClassArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.parse()
            .map(AlgebraClassArg)
            .map_err(|e: Error| e.to_string())
    }
}

/// What a command produced, before rendering.
struct Outcome {
    verdict: String,
    exit: i32,
    reports: Vec<Report>,
    lines: Vec<String>,
    witness: Option<Value>,
    certificate: Option<Value>,
}

impl Outcome {
    fn verdict(verdict: impl Into<String>) -> Self {
        Outcome {
            verdict: verdict.into(),
            exit: EXIT_OK,
            reports: Vec::new(),
            lines: Vec::new(),
            witness: None,
            certificate: None,
        }
    }

    /// An asserted property: exit 1 unless it passed.
    fn assertion(report: Report) -> Self {
        let mut o = Outcome::verdict(report.verdict.to_string());
        if !report.passed() {
            o.exit = EXIT_FAIL;
            o.witness = report.witness.clone().map(|w| json!(w));
        }
        o.reports.push(report);
        o
    }
}

/// Captured result of one invocation.
#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.to_string();
            let exit = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return if exit == EXIT_OK {
                CommandOutput {
                    exit_code: exit,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CommandOutput {
                    exit_code: exit,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let start = Instant::now();
    let (name, inputs) = describe(&cli.command);
    let threads = cli.threads;
    let result = with_threads(threads, || dispatch(cli.command, threads));
    let seconds = start.elapsed().as_secs_f64();
    match result {
        Ok(o) => {
            let stdout = if cli.json {
                let mut v = json!({
                    "command": name,
                    "inputs": inputs,
                    "verdict": o.verdict,
                    "reports": o.reports,
                    "timing": {"seconds": seconds},
                });
                if let Some(w) = o.witness {
                    v["witness"] = w;
                }
                if let Some(c) = o.certificate {
                    v["certificate"] = c;
                }
                format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
            } else {
                let mut s = format!("{name}: {}\n", o.verdict);
                for r in &o.reports {
                    s.push_str(&format!("  {r}\n"));
                }
                for l in &o.lines {
                    s.push_str(l);
                    s.push('\n');
                }
                s
            };
            CommandOutput {
                exit_code: o.exit,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            // an unmet precondition means the input is outside the command's domain
            let exit = match &e {
                Error::Check(r) if !r.check.starts_with("precondition") => EXIT_FAIL,
                _ => EXIT_INPUT,
            };
            let verdict = if exit == EXIT_FAIL { "fail" } else { "error" };
            let stdout = if cli.json {
                let v = json!({
                    "command": name,
                    "inputs": inputs,
                    "verdict": verdict,
                    "error": e.to_string(),
                    "timing": {"seconds": seconds},
                });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
            } else {
                String::new()
            };
            CommandOutput {
                exit_code: exit,
                stdout,
                stderr: format!("invsr {name}: {e}\n"),
            }
        }
    }
}

fn describe(c: &Command) -> (&'static str, Vec<String>) {
    match c {
        Command::Check { input, .. } => ("check", vec![input.clone()]),
        Command::Termeq { input } => ("termeq", vec![input.clone()]),
        Command::Interval { input } => ("interval", vec![input.clone()]),
        Command::Ideals { input, .. } => ("ideals", vec![input.clone()]),
        Command::Homs { dom, cod, .. } => ("homs", vec![dom.clone(), cod.clone()]),
        Command::Injective { input, .. } => ("injective", vec![input.clone()]),
        Command::Projective { input, .. } => ("projective", vec![input.clone()]),
        Command::Battery {
            class, max_size, ..
        } => ("battery", vec![class.0.to_string(), max_size.to_string()]),
        Command::Enumerate {
            class, max_size, ..
        } => ("enumerate", vec![class.0.to_string(), max_size.to_string()]),
        Command::Corpus { entry } => ("corpus", entry.iter().cloned().collect()),
        Command::Nondist { max_size, .. } => ("nondist", vec![max_size.to_string()]),
    }
}

/// An input reference resolved to an algebra and any semimodules over it.
struct Resolved {
    algebra: Arc<AlgebraTable>,
    modules: Vec<SemimoduleTable>,
    /// The reference itself names a semimodule.
    is_module: bool,
}

/// `corpus:NAME`, `PATH` or `PATH#ALGEBRA`.
fn resolve(reference: &str) -> Result<Resolved> {
    if let Some(name) = reference.strip_prefix("corpus:") {
        let subject = corpus::lookup(name)
            .ok_or_else(|| Error::input(format!("no corpus entry `{name}`")))?;
        return Ok(match subject {
            Subject::Algebra(a) => Resolved {
                algebra: Arc::new(a),
                modules: Vec::new(),
                is_module: false,
            },
            Subject::Semimodule(m) => Resolved {
                algebra: m.over().clone(),
                modules: vec![m],
                is_module: true,
            },
        });
    }
    let (path, pick) = match reference.split_once('#') {
        Some((p, n)) => (p, Some(n)),
        None => (reference, None),
    };
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("{path}: {e}")))?;
    let doc = parse(&text).map_err(|e| match e {
        Error::Parse { line, msg } => Error::input(format!("{path}:{line}: {msg}")),
        other => other,
    })?;
    let algebra = match pick {
        Some(n) => doc
            .algebra(n)
            .cloned()
            .ok_or_else(|| Error::input(format!("{path}: no algebra `{n}`")))?,
        None => doc.algebras[0].clone(),
    };
    let modules: Vec<SemimoduleTable> = doc
        .semimodules
        .into_iter()
        .filter(|m| m.over().name() == algebra.name())
        .collect();
    Ok(Resolved {
        algebra: Arc::new(algebra),
        modules,
        is_module: false,
    })
}

fn element(a: &AlgebraTable, token: &str) -> Result<usize> {
    if let Ok(i) = token.parse::<usize>() {
        if i < a.size() {
            return Ok(i);
        }
    }
    (0..a.size())
        .find(|&x| a.element_name(x) == token)
        .ok_or_else(|| Error::input(format!("no element `{token}` in {}", a.name())))
}

/// `regular`, `id`, `free:k`, `cyclic:x` or the name of a semimodule in the
/// input. Without a selector: the input's own semimodule, else `regular`.
fn select_module(r: &Resolved, selector: Option<&str>) -> Result<SemimoduleTable> {
    let a = &r.algebra;
    let Some(sel) = selector else {
        return match r.modules.first() {
            Some(m) => Ok(m.clone()),
            None => regular(a),
        };
    };
    if sel == "regular" {
        return regular(a);
    }
    if sel == "id" {
        return id_semimodule(a);
    }
    if let Some(k) = sel.strip_prefix("free:") {
        let k = k
            .parse::<usize>()
            .ok()
            .filter(|&k| k >= 1)
            .ok_or_else(|| Error::input(format!("bad rank in `{sel}`")))?;
        return free(a, k);
    }
    if let Some(x) = sel.strip_prefix("cyclic:") {
        return cyclic(a, element(a, x)?);
    }
    r.modules
        .iter()
        .find(|m| m.name() == sel)
        .cloned()
        .ok_or_else(|| Error::input(format!("unknown module selector `{sel}`")))
}

fn module_ref(reference: &str) -> Result<SemimoduleTable> {
    // corpus names may contain ':', so only '@' separates the selector
    let (base, sel) = match reference.rsplit_once('@') {
        Some((b, s)) => (b, Some(s)),
        None => (reference, None),
    };
    select_module(&resolve(base)?, sel)
}

/// The default `check` catalogue; checks needing absent structure are shown
/// as not applicable.
const CATALOGUE: &[&str] = &[
    "validate",
    "is_idempotent_semiring",
    "is_one_bounded",
    "is_commutative",
    "is_involutive_semiring",
    "is_one_bounded_involutive",
    "is_involutive_rl",
    "is_mv_semiring",
    "is_nilpotent_semiring",
    "is_mult_idempotent",
    "is_boolean_algebra",
    "is_lattice_distributive",
    "is_self_injective",
];

fn tolerant(name: &str, r: Result<Report>) -> Result<Report> {
    match r {
        Ok(r) => Ok(r),
        Err(Error::Unsupported(msg)) => {
            Ok(Report::fail(name, vec![], format!("not applicable: {msg}")))
        }
        Err(Error::Check(r)) => Ok(Report::fail(
            name,
            r.witness.clone().unwrap_or_default(),
            r.to_string(),
        )),
        Err(e) => Err(e),
    }
}

fn decision(d: Decision, yes: &str, no: &str, m: &SemimoduleTable) -> Outcome {
    let mut o = Outcome::verdict(if d.holds { yes } else { no });
    if let Some(r) = &d.retraction {
        o.lines.push(format!(
            "  certificate: factor {} to the power {}",
            r.factor.name(),
            r.exponent()
        ));
        let roundtrip: Vec<usize> = (0..m.size()).map(|x| r.round_trip(m, x)).collect();
        o.lines.push(format!("  round trip: {roundtrip:?}"));
        o.certificate = Some(json!({
            "factor": r.factor.name(),
            "exponent": r.exponent(),
            "section": r.section,
            "retract": r.retract,
        }));
    }
    o.reports.push(d.report);
    o
}

fn parse_filters(filters: &[String]) -> Result<Vec<Filter>> {
    filters.iter().map(|f| f.parse()).collect()
}

fn dispatch(command: Command, threads: Option<usize>) -> Result<Outcome> {
    match command {
        Command::Check {
            input,
            class,
            checks,
            module,
        } => {
            let r = resolve(&input)?;
            if module.is_some() || r.is_module {
                let m = select_module(&r, module.as_deref())?;
                let names: Vec<String> = if checks.is_empty() {
                    SEMIMODULE_CHECKS.iter().map(|s| s.to_string()).collect()
                } else {
                    checks
                };
                let reports = names
                    .iter()
                    .map(|c| tolerant(c, run_semimodule_check(c, &m)))
                    .collect::<Result<Vec<_>>>()?;
                let mut o = Outcome::verdict(m.name().to_string());
                o.reports = reports;
                return Ok(o);
            }
            let a = &r.algebra;
            if let Some(c) = class {
                let mut o = Outcome::assertion(tolerant(c.0.name(), c.0.predicate(a))?);
                o.verdict = if o.exit == EXIT_OK {
                    format!("member of {}", c.0)
                } else {
                    format!("not a member of {}", c.0)
                };
                return Ok(o);
            }
            let names: Vec<String> = if checks.is_empty() {
                CATALOGUE.iter().map(|s| s.to_string()).collect()
            } else {
                checks
            };
            let reports = names
                .iter()
                .map(|c| tolerant(c, run_algebra_check(c, a)))
                .collect::<Result<Vec<_>>>()?;
            let mut o = Outcome::verdict(a.name().to_string());
            o.reports = reports;
            Ok(o)
        }
        Command::Termeq { input } => {
            let a = resolve(&input)?.algebra;
            let report = all_of(
                "termeq",
                [
                    roundtrip_check(&a)?,
                    identity_battery(&a)?,
                    galois_check(&a)?,
                ],
            );
            Ok(Outcome::assertion(report))
        }
        Command::Interval { input } => {
            let a = resolve(&input)?.algebra;
            let iv = unit_interval(&a)?;
            let mut o = Outcome::assertion(iv.report.clone());
            o.verdict = if iv.closed {
                "subalgebra"
            } else {
                "not-subalgebra"
            }
            .to_string();
            let names: Vec<String> = iv.members.iter().map(|&x| a.element_name(x)).collect();
            o.lines.push(format!("  members: {{{}}}", names.join(", ")));
            o.lines.push(format!("  0·0 = 0: {}", iv.zero_idempotent));
            o.certificate = Some(
                json!({"members": iv.members, "closed": iv.closed, "zero_idempotent": iv.zero_idempotent}),
            );
            if let Some(w) = iv.witness {
                o.witness = Some(json!(w));
            }
            Ok(o)
        }
        Command::Ideals { input, module } => {
            let r = resolve(&input)?;
            let (s, names): (Semilattice, Vec<String>) = if module.is_some() || r.is_module {
                let m = select_module(&r, module.as_deref())?;
                (
                    m.semilattice()?,
                    (0..m.size()).map(|x| m.element_name(x)).collect(),
                )
            } else {
                let a = &r.algebra;
                (
                    Semilattice::of_algebra(a)?,
                    (0..a.size()).map(|x| a.element_name(x)).collect(),
                )
            };
            let list = ideals(&s);
            let mut o = Outcome::assertion(ideal_lattice_check(&s));
            o.verdict = format!("{} ideals", list.len());
            for i in &list {
                let members: Vec<&str> = i.iter().map(|x| names[x].as_str()).collect();
                o.lines.push(format!(
                    "  ↓{}: {{{}}}",
                    names[i.generator(&s)],
                    members.join(", ")
                ));
            }
            o.certificate = Some(json!(list
                .iter()
                .map(|i| i.iter().collect::<Vec<_>>())
                .collect::<Vec<_>>()));
            Ok(o)
        }
        Command::Homs { dom, cod, kind } => {
            let kind: HomKind = kind.parse()?;
            let (d, c) = (module_ref(&dom)?, module_ref(&cod)?);
            let homs = enumerate_homs(&d, &c, kind, &[])?;
            let mut o = Outcome::verdict(format!("{} homomorphisms", homs.len()));
            for h in &homs {
                o.lines.push(format!("  {:?}", h.map));
            }
            o.certificate = Some(json!(homs.iter().map(|h| &h.map).collect::<Vec<_>>()));
            Ok(o)
        }
        Command::Injective { input, module } => {
            let m = select_module(&resolve(&input)?, module.as_deref())?;
            Ok(decision(
                is_injective(&m)?,
                "injective",
                "not-injective",
                &m,
            ))
        }
        Command::Projective { input, module } => {
            let m = select_module(&resolve(&input)?, module.as_deref())?;
            Ok(decision(
                is_projective(&m)?,
                "projective",
                "not-projective",
                &m,
            ))
        }
        Command::Battery {
            class,
            max_size,
            checks,
            filters,
            max_rank,
        } => {
            let spec = SearchSpec {
                max_size,
                class: class.0,
                filters: parse_filters(&filters)?,
                limit: None,
            };
            let out = theorem_battery(&spec, &checks, Scope { max_rank })?;
            let mut o = Outcome::assertion(out.report);
            for t in &out.checks {
                o.lines.push(format!(
                    "  {}: {} passed, {} failed",
                    t.check, t.passed, t.failed
                ));
            }
            o.certificate = Some(json!({"instances": out.instances, "checks": out.checks}));
            Ok(o)
        }
        Command::Enumerate {
            class,
            max_size,
            limit,
            filters,
            names_only,
        } => {
            let spec = SearchSpec {
                max_size,
                class: class.0,
                filters: parse_filters(&filters)?,
                limit,
            };
            let found = enumerate_algebras(&spec)?;
            let mut o = Outcome::verdict(format!("{} algebras", found.len()));
            for a in &found {
                if names_only {
                    o.lines.push(format!("{} size {}", a.name(), a.size()));
                } else {
                    o.lines.push(emit(a));
                }
            }
            o.certificate = Some(json!(found.iter().map(emit).collect::<Vec<_>>()));
            Ok(o)
        }
        Command::Corpus { entry } => {
            let entries: Vec<_> = corpus::builtin_corpus()
                .into_iter()
                .filter(|e| {
                    entry
                        .as_deref()
                        .is_none_or(|n| e.name.eq_ignore_ascii_case(n))
                })
                .collect();
            if entries.is_empty() {
                return Err(Error::input(format!(
                    "no corpus entry `{}`",
                    entry.unwrap_or_default()
                )));
            }
            let outcomes: Vec<_> = entries.iter().flat_map(|e| e.evaluate()).collect();
            let mismatches = outcomes.iter().filter(|o| !o.matches()).count();
            let mut o = Outcome::verdict(if mismatches == 0 { "pass" } else { "fail" });
            if mismatches > 0 {
                o.exit = EXIT_FAIL;
            }
            for oc in &outcomes {
                let actual = match (&oc.actual, &oc.error) {
                    (Some(v), _) => v.to_string(),
                    (None, Some(e)) => format!("error: {e}"),
                    (None, None) => "missing".to_string(),
                };
                let mark = if oc.matches() { "ok  " } else { "FAIL" };
                o.lines.push(format!(
                    "  {mark} {} {}: expected {}, got {} [{:?}]",
                    oc.entry, oc.check, oc.expected, actual, oc.source
                ));
            }
            o.lines.push(format!(
                "  {} expectations, {mismatches} mismatches",
                outcomes.len()
            ));
            o.certificate = Some(json!(outcomes));
            Ok(o)
        }
        Command::Nondist {
            max_size,
            checkpoint,
            budget,
        } => {
            if budget.is_some_and(|b| !b.is_finite() || b < 0.0) {
                return Err(Error::input(
                    "budget must be a non-negative number of seconds",
                ));
            }
            let opts = SearchOptions {
                threads,
                checkpoint,
                budget: budget.map(Duration::from_secs_f64),
            };
            let out = smallest_nondistributive(max_size, &opts)?;
            let verdict = match (out.complete, out.size) {
                (false, _) => "incomplete".to_string(),
                (true, Some(n)) => format!("smallest size {n}"),
                (true, None) => format!("none up to size {max_size}"),
            };
            let mut o = Outcome::verdict(verdict);
            o.lines.push(format!(
                "  tasks: {} of {}",
                out.tasks_done, out.tasks_total
            ));
            if let Some(w) = &out.witness {
                o.lines
                    .push(format!("  isomorphism classes: {}", out.count));
                o.lines.push(emit(w));
                o.witness = Some(json!(emit(w)));
            }
            o.certificate = Some(
                json!({"complete": out.complete, "count": out.count, "tasks_done": out.tasks_done, "tasks_total": out.tasks_total}),
            );
            o.reports.push(out.report);
            Ok(o)
        }
    }
}

/// Text of a semimodule selection, for scripting.
pub fn render_module(reference: &str) -> Result<String> {
    Ok(emit_semimodule(&module_ref(reference)?))
}
