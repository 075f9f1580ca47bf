//! Command-line driver.
//!
//! ```text
//! tmdiamond simulate <tm> [--steps N]
//! tmdiamond compile <tm> [-o <trs>]
//! tmdiamond encode <tm> [--config "s@0 0=a 1=c"]
//! tmdiamond rewrite <trs> --term T [--steps N]
//! tmdiamond graph <trs> --seed T [--budget B] [-o <dot>]
//! tmdiamond check (<trs> (--peak T ... | --seed T) | --machine <tm> [--cross-check])
//!                 --shape S [--budget B]
//! ```
//!
//! `B` is `steps=N,terms=N,size=N` with any subset of the keys. Every
//! command takes `--json`. Exit codes: 0 success or holds, 1 counterexample,
//! 2 unknown, 3 usage, format or consistency errors.

mod dot;
mod format;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_bigint::BigInt;

pub use dot::{export_graph, graph_to_dot};
pub use format::{emit_machine, emit_trs, parse_machine, parse_trs, FormatError};
pub use report::{Certificate, CounterexampleReport, CrossCheckReport, Report, StepReport, TraceReport, Verdict};

use crate::diamond::{check_shape_from_seed, check_shape_on_derived, check_shape_on_trs, cross_check, parse_shape, CheckOutcome, DiamondShape};
use crate::encode::CompiledMachine;
use crate::reach::Budget;
use crate::term::{one_step_rewrites, parse_term_extending, RewriteTrace, Term, Trs};
use crate::turing::{Configuration, RunOutcome, TuringMachine};

#[derive(Parser, Debug)]
#[command(name = "tmdiamond", version, about = "Turing machines as rewrite systems, and diamond-like shape checking")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a machine from the blank tape.
    Simulate {
        /// Machine file (`.tm`).
        machine: PathBuf,
        #[arg(long, default_value_t = 100)]
        steps: u64,
    },
    /// Compile a machine into a rewrite-system file.
    Compile {
        /// Machine file (`.tm`).
        machine: PathBuf,
        /// Write here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Encode a configuration as a term (default: the initial one).
    Encode {
        /// Machine file (`.tm`).
        machine: PathBuf,
        /// `state@pos cell=symbol ...`, e.g. `s@0 0=a 1=c`.
        #[arg(long)]
        config: Option<String>,
    },
    /// Rewrite leftmost-outermost, first applicable rule.
    Rewrite {
        /// Rewrite-system file (`.trs`).
        trs: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long, default_value_t = 100)]
        steps: u64,
    },
    /// Export the reduction graph from a seed as DOT.
    Graph {
        /// Rewrite-system file (`.trs`).
        trs: PathBuf,
        #[arg(long)]
        seed: String,
        /// `steps=N,terms=N,size=N`; omitted keys keep their defaults.
        #[arg(long, value_parser = parse_budget, default_value = "")]
        budget: Budget,
        /// Write here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a diamond-like shape.
    Check {
        /// Rewrite-system file; peaks come from `--peak` or `--seed`.
        #[arg(required_unless_present = "machine", conflicts_with = "machine")]
        trs: Option<PathBuf>,
        /// Check the derived relation of a machine instead.
        #[arg(long)]
        machine: Option<PathBuf>,
        /// A named shape or a label list such as `*,=`.
        #[arg(long, value_parser = parse_shape_arg)]
        shape: DiamondShape,
        /// Ground peak term; repeatable.
        #[arg(long = "peak", conflicts_with_all = ["seed", "machine"])]
        peaks: Vec<String>,
        /// Use every term reachable from this ground term as a peak.
        #[arg(long, conflicts_with = "machine")]
        seed: Option<String>,
        /// `steps=N,terms=N,size=N`; omitted keys keep their defaults.
        #[arg(long, value_parser = parse_budget, default_value = "")]
        budget: Budget,
        /// Also enumerate peaks over the cone of `init` and compare.
        #[arg(long, requires = "machine")]
        cross_check: bool,
    },
}

/// `steps=N,terms=N,size=N`; missing keys keep their defaults.
pub fn parse_budget(text: &str) -> Result<Budget, String> {
    let mut b = Budget::default();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got `{}`", part))?;
        let bad = |_| format!("`{}` is not a non-negative integer", value);
        match key.trim() {
            "steps" => b.max_rewrite_steps = value.trim().parse().map_err(bad)?,
            "terms" => b.max_distinct_terms = value.trim().parse().map_err(bad)?,
            "size" => b.max_term_size = value.trim().parse().map_err(bad)?,
            other => return Err(format!("unknown budget key `{}` (expected steps, terms, size)", other)),
        }
    }
    Budget::new(b.max_rewrite_steps, b.max_distinct_terms, b.max_term_size).map_err(|e| e.to_string())
}

fn parse_shape_arg(text: &str) -> Result<DiamondShape, String> {
    parse_shape(text).map_err(|e| e.to_string())
}

/// `state@pos cell=symbol ...`; the position defaults to 0.
pub fn parse_config(text: &str, tm: &TuringMachine) -> Result<Configuration, String> {
    let mut words = text.split_whitespace();
    let head = words.next().ok_or("empty configuration")?;
    let (state, pos) = head.split_once('@').unwrap_or((head, "0"));
    if !tm.states.iter().any(|q| q == state) {
        return Err(format!("unknown state `{}`", state));
    }
    let pos: BigInt = pos.parse().map_err(|_| format!("bad head position `{}`", pos))?;
    let mut cells = Vec::new();
    for w in words {
        let (p, a) = w
            .split_once('=')
            .ok_or_else(|| format!("expected cell=symbol, got `{}`", w))?;
        let p: BigInt = p.parse().map_err(|_| format!("bad cell position `{}`", p))?;
        if !tm.alphabet.iter().any(|s| s == a) {
            return Err(format!("unknown symbol `{}`", a));
        }
        if cells.iter().any(|(q, _)| *q == p) {
            return Err(format!("cell {} given twice", p));
        }
        cells.push((p, a.to_string()));
    }
    Ok(Configuration::new(state, pos, cells, &tm.blank))
}

type Outcome = Result<Report, String>;

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {}", path.display(), e))
}

fn load_machine(path: &Path) -> Result<TuringMachine, String> {
    parse_machine(&read(path)?, &path.display().to_string()).map_err(|e| e.to_string())
}

fn load_trs(path: &Path) -> Result<Trs, String> {
    parse_trs(&read(path)?, &path.display().to_string()).map_err(|e| e.to_string())
}

fn compile(tm: &TuringMachine) -> Result<CompiledMachine, String> {
    CompiledMachine::new(tm).map_err(|e| e.to_string())
}

/// A ground term over the system's signature; fresh constants are allowed.
fn ground_term(text: &str, trs: &Trs) -> Result<Term, String> {
    let mut sig = trs.signature().clone();
    let t = parse_term_extending(text, &mut sig).map_err(|e| format!("term `{}`: {}", text, e))?;
    if !t.is_ground() {
        return Err(format!("term `{}` is not ground", text));
    }
    Ok(t)
}

fn simulate(argv: &[String], path: &Path, steps: u64) -> Outcome {
    let tm = load_machine(path)?;
    let run = tm.run(steps).map_err(|e| e.to_string())?;
    let message = match &run {
        RunOutcome::Halted { steps, .. } => format!("halted after {} step(s)", steps),
        RunOutcome::Cycled { prefix, period } => {
            format!("never halts: configuration {} recurs with period {}", prefix, period)
        }
        RunOutcome::Exceeded { budget } => format!("still running after {} step(s)", budget),
    };
    let mut r = Report::new(argv, Verdict::Success, message);
    r.configurations = Some(tm.computation(steps).iter().map(|k| k.to_string()).collect());
    Ok(r)
}

fn compile_cmd(argv: &[String], path: &Path, output: Option<&Path>) -> Outcome {
    let c = compile(&load_machine(path)?)?;
    let text = emit_trs(c.trs());
    let mut r = Report::new(argv, Verdict::Success, format!("{} rules", c.trs().len()));
    match output {
        Some(out) => {
            std::fs::write(out, &text).map_err(|e| format!("cannot write {}: {}", out.display(), e))?;
            r.message = format!("wrote {} rules to {}", c.trs().len(), out.display());
        }
        None => r.output = Some(text),
    }
    Ok(r)
}

fn encode_cmd(argv: &[String], path: &Path, config: Option<&str>) -> Outcome {
    let tm = load_machine(path)?;
    let c = compile(&tm)?;
    let k = match config {
        Some(text) => parse_config(text, &tm)?,
        None => tm.initial(),
    };
    let mut r = Report::new(argv, Verdict::Success, format!("configuration {}", k));
    r.term = Some(c.encode(&k).to_string());
    Ok(r)
}

fn rewrite_cmd(argv: &[String], path: &Path, term: &str, steps: u64) -> Outcome {
    let trs = load_trs(path)?;
    let mut t = ground_term(term, &trs)?;
    let mut trace = RewriteTrace::new(t.clone());
    let mut normal = false;
    for _ in 0..steps {
        let Some(rw) = one_step_rewrites(&trs, &t).into_iter().next() else {
            normal = true;
            break;
        };
        t = rw.result.clone();
        trace.push(rw.rule, rw.position, rw.result);
    }
    normal |= one_step_rewrites(&trs, &t).is_empty();
    let message = if normal {
        format!("normal form after {} step(s)", trace.len())
    } else {
        format!("stopped after {} step(s)", trace.len())
    };
    let mut r = Report::new(argv, Verdict::Success, message);
    r.term = Some(t.to_string());
    r.traces.push(TraceReport::new("reduction", &trace));
    Ok(r)
}

fn graph_cmd(argv: &[String], path: &Path, seed: &str, budget: &Budget, output: Option<&Path>) -> Outcome {
    let trs = load_trs(path)?;
    let seed = ground_term(seed, &trs)?;
    let text = export_graph(&trs, &seed, budget);
    let mut r = Report::new(argv, Verdict::Success, String::new());
    r.budget = Some(*budget);
    match output {
        Some(out) => {
            std::fs::write(out, &text).map_err(|e| format!("cannot write {}: {}", out.display(), e))?;
            r.message = format!("wrote {}", out.display());
        }
        None => r.output = Some(text),
    }
    Ok(r)
}

fn brief(out: &CheckOutcome) -> (Verdict, Option<bool>, String) {
    match out {
        CheckOutcome::Holds { .. } => (Verdict::Holds, Some(out.is_exact_holds()), out.verdict().to_string()),
        CheckOutcome::Counterexample(cx) => (
            Verdict::Counterexample,
            Some(true),
            format!("peak {} with {} branch(es)", cx.peak, cx.branches.len()),
        ),
        CheckOutcome::Unknown { reason, .. } => (Verdict::Unknown, Some(false), reason.clone()),
    }
}

#[allow(clippy::too_many_arguments)]
fn check_cmd(
    argv: &[String],
    trs: Option<&Path>,
    machine: Option<&Path>,
    shape: &DiamondShape,
    peaks: &[String],
    seed: Option<&str>,
    budget: &Budget,
    with_cross_check: bool,
) -> Outcome {
    if let Some(path) = machine {
        let tm = load_machine(path)?;
        if !with_cross_check {
            let out = check_shape_on_derived(&tm, shape, budget).map_err(|e| e.to_string())?;
            return Ok(Report::from_outcome(argv, &out, budget));
        }
        let cc = cross_check(&tm, shape, budget).map_err(|e| e.to_string())?;
        let mut r = Report::from_outcome(argv, &cc.exact, budget);
        let (verdict, exact, message) = brief(&cc.direct);
        let consistent = cc.consistent();
        r.cross_check = Some(CrossCheckReport {
            verdict,
            exact,
            message,
            consistent,
        });
        if !consistent {
            r.verdict = Verdict::Error;
            r.exit_code = Verdict::Error.exit_code();
            r.message = format!("cross-check contradicts the exact verdict: {}", r.message);
        }
        return Ok(r);
    }
    let trs = load_trs(trs.expect("clap requires a system or a machine"))?;
    let out = match (seed, peaks) {
        (Some(seed), _) => check_shape_from_seed(&trs, shape, &ground_term(seed, &trs)?, budget),
        (None, []) => return Err("give --peak or --seed".to_string()),
        (None, peaks) => {
            let peaks = peaks
                .iter()
                .map(|p| ground_term(p, &trs))
                .collect::<Result<Vec<_>, _>>()?;
            check_shape_on_trs(&trs, shape, &peaks, budget)
        }
    };
    Ok(Report::from_outcome(argv, &out, budget))
}

fn dispatch(argv: &[String], cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Simulate { machine, steps } => simulate(argv, machine, *steps),
        Command::Compile { machine, output } => compile_cmd(argv, machine, output.as_deref()),
        Command::Encode { machine, config } => encode_cmd(argv, machine, config.as_deref()),
        Command::Rewrite { trs, term, steps } => rewrite_cmd(argv, trs, term, *steps),
        Command::Graph {
            trs,
            seed,
            budget,
            output,
        } => graph_cmd(argv, trs, seed, budget, output.as_deref()),
        Command::Check {
            trs,
            machine,
            shape,
            peaks,
            seed,
            budget,
            cross_check,
        } => check_cmd(
            argv,
            trs.as_deref(),
            machine.as_deref(),
            shape,
            peaks,
            seed.as_deref(),
            budget,
            *cross_check,
        ),
    }
}

/// Runs one command (`argv` without the program name), writes its report to
/// `out` and returns the exit code.
pub fn run_command(argv: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(std::iter::once("tmdiamond".to_string()).chain(argv.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => Verdict::Error.exit_code(),
            };
        }
    };
    let report = dispatch(argv, &cli).unwrap_or_else(|msg| Report::error(argv, msg));
    let text = if cli.json {
        report.to_json()
    } else if report.verdict == Verdict::Error {
        format!("error: {}\n", report.message)
    } else if let Some(raw) = &report.output {
        // generated files go out verbatim so they can be piped
        raw.clone()
    } else {
        report.to_text()
    };
    if out.write_all(text.as_bytes()).is_err() {
        return Verdict::Error.exit_code();
    }
    report.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;

    fn run(args: &[&str]) -> (i32, String) {
        let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut out = Vec::new();
        let code = run_command(&argv, &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn budget_argument() {
        assert_eq!(parse_budget("").unwrap(), Budget::default());
        let b = parse_budget("steps=7, size=9").unwrap();
        assert_eq!((b.max_rewrite_steps, b.max_distinct_terms, b.max_term_size), (7, 10_000, 9));
        assert!(parse_budget("steps=0").is_err());
        assert!(parse_budget("depth=3").is_err());
        assert!(parse_budget("steps=x").is_err());
    }

    #[test]
    fn config_argument() {
        let tm = count3();
        let k = parse_config("b@-1 0=one 1=_", &tm).unwrap();
        assert_eq!(k.to_string(), "<b, -1, {0:one}>");
        assert_eq!(parse_config("a", &tm).unwrap(), tm.initial());
        assert!(parse_config("z@0", &tm).is_err());
        assert!(parse_config("a@0 0=two", &tm).is_err());
        assert!(parse_config("a@0 0=one 0=_", &tm).is_err());
    }

    #[test]
    fn usage_errors_exit_3() {
        assert_eq!(run(&["frobnicate"]).0, 3);
        assert_eq!(run(&[]).0, 3);
        assert_eq!(run(&["check", "--shape", "diamond"]).0, 3);
        assert_eq!(run(&["check", "--machine", "x.tm", "--shape", "nope"]).0, 3);
        let (code, text) = run(&["simulate", "/nonexistent/m.tm"]);
        assert_eq!(code, 3);
        assert!(text.starts_with("error: cannot read /nonexistent/m.tm"));
        assert_eq!(run(&["--help"]).0, 0);
        assert_eq!(run(&["--version"]).0, 0);
    }
}
