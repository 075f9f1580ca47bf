//! Structured results of a command, printed as text or JSON.
//!
//! JSON schema (every key is always present, absent values are `null`):
//!
//! | key | type |
//! |-----|------|
//! | `command` | array of strings, the arguments after the program name |
//! | `verdict` | `"success"`, `"holds"`, `"counterexample"`, `"unknown"` or `"error"` |
//! | `exact` | bool or null; for `check`, whether the verdict is exact |
//! | `exit_code` | integer |
//! | `message` | string |
//! | `budget` | `{max_rewrite_steps, max_distinct_terms, max_term_size}` or null |
//! | `usage` | `{explored_terms, deepest, depth_limited, term_limited, size_limited, relation_limited}` or null |
//! | `certificate` | object tagged by `kind` or null |
//! | `counterexample` | `{peak, branches, basis}` or null |
//! | `traces` | array of `{name, terms, steps: [{rule, position}]}` |
//! | `configurations` | array of strings or null |
//! | `term` | string or null |
//! | `output` | string or null |
//! | `cross_check` | `{verdict, exact, message, consistent}` or null |

use serde::Serialize;

use crate::diamond::{CheckOutcome, CounterexampleBasis, Evidence, Exactness};
use crate::reach::{Budget, BudgetReport, NoCertificate};
use crate::term::RewriteTrace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Success,
    Holds,
    Counterexample,
    Unknown,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Success | Verdict::Holds => 0,
            Verdict::Counterexample => 1,
            Verdict::Unknown => 2,
            Verdict::Error => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Verdict::Success => "success",
            Verdict::Holds => "holds",
            Verdict::Counterexample => "counterexample",
            Verdict::Unknown => "unknown",
            Verdict::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub rule: usize,
    pub position: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub name: String,
    pub terms: Vec<String>,
    pub steps: Vec<StepReport>,
}

impl TraceReport {
    pub fn new(name: impl Into<String>, trace: &RewriteTrace) -> TraceReport {
        TraceReport {
            name: name.into(),
            terms: trace.terms().iter().map(|t| t.to_string()).collect(),
            steps: trace
                .steps()
                .iter()
                .map(|s| StepReport {
                    rule: s.rule,
                    position: s.position.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    /// The machine halts; the trace is reported as `termination`.
    Terminates { trace_steps: usize },
    /// A complete closure that never reaches the target.
    Closure { terms: usize },
    /// The machine's run repeats a configuration.
    Cycle { prefix: u64, period: u64 },
    /// One branch whose label allows zero steps.
    Trivial,
    /// Every branch tuple at every listed peak joined.
    Enumerated { peaks: usize, tuples: usize },
    /// The labeled cones of the branches were computed completely.
    CompleteCones,
}

impl Certificate {
    pub fn from_no(cert: &NoCertificate) -> Certificate {
        match cert {
            NoCertificate::Closure(set) => Certificate::Closure { terms: set.terms.len() },
            NoCertificate::Cycle { prefix, period } => Certificate::Cycle {
                prefix: *prefix,
                period: *period,
            },
        }
    }

    fn describe(&self) -> String {
        match self {
            Certificate::Terminates { trace_steps } => {
                format!("machine halts: init reaches term in {} rewrite steps", trace_steps)
            }
            Certificate::Closure { terms } => format!("complete closure of {} terms without the target", terms),
            Certificate::Cycle { prefix, period } => {
                format!("run repeats a configuration after {} step(s), period {}", prefix, period)
            }
            Certificate::Trivial => "single branch with a reflexive label".to_string(),
            Certificate::Enumerated { peaks, tuples } => {
                format!("{} peak(s), {} branch tuple(s) joined", peaks, tuples)
            }
            Certificate::CompleteCones => "labeled cones of the branches are complete".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub peak: String,
    pub branches: Vec<String>,
    pub basis: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub verdict: Verdict,
    pub exact: Option<bool>,
    pub message: String,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub verdict: Verdict,
    pub exact: Option<bool>,
    pub exit_code: i32,
    pub message: String,
    pub budget: Option<Budget>,
    pub usage: Option<BudgetReport>,
    pub certificate: Option<Certificate>,
    pub counterexample: Option<CounterexampleReport>,
    pub traces: Vec<TraceReport>,
    pub configurations: Option<Vec<String>>,
    pub term: Option<String>,
    pub output: Option<String>,
    pub cross_check: Option<CrossCheckReport>,
}

impl Report {
    pub fn new(command: &[String], verdict: Verdict, message: impl Into<String>) -> Report {
        Report {
            command: command.to_vec(),
            verdict,
            exact: None,
            exit_code: verdict.exit_code(),
            message: message.into(),
            budget: None,
            usage: None,
            certificate: None,
            counterexample: None,
            traces: Vec::new(),
            configurations: None,
            term: None,
            output: None,
            cross_check: None,
        }
    }

    pub fn error(command: &[String], message: impl Into<String>) -> Report {
        Report::new(command, Verdict::Error, message)
    }

    /// Report of a shape check. Branch traces are named `branch 1`, ...
    pub fn from_outcome(command: &[String], out: &CheckOutcome, budget: &Budget) -> Report {
        let mut r = match out {
            CheckOutcome::Holds { exactness, evidence } => {
                let mut r = Report::new(command, Verdict::Holds, "the shape holds");
                r.exact = Some(*exactness == Exactness::Exact);
                match evidence {
                    Evidence::Terminates(trace) => {
                        r.certificate = Some(Certificate::Terminates { trace_steps: trace.len() });
                        r.message = "the machine halts, so every branch joins at term".to_string();
                        r.traces.push(TraceReport::new("termination", trace));
                    }
                    Evidence::Trivial => r.certificate = Some(Certificate::Trivial),
                    Evidence::Enumerated { peaks, tuples } => {
                        r.certificate = Some(Certificate::Enumerated {
                            peaks: *peaks,
                            tuples: *tuples,
                        });
                        r.message = "the shape holds at every listed peak".to_string();
                    }
                }
                r
            }
            CheckOutcome::Counterexample(cx) => {
                let mut r = Report::new(command, Verdict::Counterexample, cx.explanation.clone());
                let (cert, basis) = match &cx.basis {
                    CounterexampleBasis::NonTermination(no) => (Certificate::from_no(no), "non-termination"),
                    CounterexampleBasis::CompleteCones => (Certificate::CompleteCones, "complete cones"),
                };
                r.exact = Some(true);
                r.certificate = Some(cert);
                r.counterexample = Some(CounterexampleReport {
                    peak: cx.peak.to_string(),
                    branches: cx.branches.iter().map(|b| b.to_string()).collect(),
                    basis: basis.to_string(),
                });
                for (i, tr) in cx.branch_traces.iter().enumerate() {
                    if let Some(tr) = tr {
                        r.traces.push(TraceReport::new(format!("branch {}", i + 1), tr));
                    }
                }
                r
            }
            CheckOutcome::Unknown { reason, report } => {
                let mut r = Report::new(command, Verdict::Unknown, reason.clone());
                r.exact = Some(false);
                r.usage = Some(report.clone());
                r
            }
        };
        r.budget = Some(*budget);
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let exact = match self.exact {
            Some(true) => " (exact)",
            Some(false) if self.verdict == Verdict::Holds => " (bounded)",
            _ => "",
        };
        out += &format!("verdict: {}{}\n", self.verdict.name(), exact);
        if !self.message.is_empty() {
            out += &format!("{}\n", self.message);
        }
        if let Some(b) = &self.budget {
            out += &format!("budget: {}\n", b);
        }
        if let Some(u) = &self.usage {
            out += &format!("usage: {}\n", u);
        }
        if let Some(c) = &self.certificate {
            out += &format!("certificate: {}\n", c.describe());
        }
        if let Some(cx) = &self.counterexample {
            out += &format!("peak: {}\n", cx.peak);
            for (i, b) in cx.branches.iter().enumerate() {
                out += &format!("branch {}: {}\n", i + 1, b);
            }
        }
        if let Some(t) = &self.term {
            out += &format!("term: {}\n", t);
        }
        if let Some(cs) = &self.configurations {
            for (i, c) in cs.iter().enumerate() {
                out += &format!("K{}: {}\n", i, c);
            }
        }
        for tr in &self.traces {
            out += &format!("trace {}:\n", tr.name);
            out += &format!("  {}\n", tr.terms[0]);
            for (s, t) in tr.steps.iter().zip(&tr.terms[1..]) {
                out += &format!("  -> {}   [rule {} at {}]\n", t, s.rule, s.position);
            }
        }
        if let Some(cc) = &self.cross_check {
            out += &format!(
                "cross-check: {} ({}), {}\n",
                cc.verdict.name(),
                cc.message,
                if cc.consistent { "consistent" } else { "CONTRADICTS the exact verdict" }
            );
        }
        if let Some(o) = &self.output {
            out += o;
        }
        out
    }
}
