//! Shape checks on the derived relation of a machine.
//!
//! The derived relation has every shape whose branch count exceeds one or
//! whose label demands a step exactly when the machine halts. The exact
//! check reads the answer off the termination verdict; the direct check
//! enumerates peaks in the explored cone and serves as a cross-check.

use thiserror::Error;

use super::check::{check_shape_in, CheckOutcome, Counterexample, CounterexampleBasis, Evidence, Exactness};
use super::DiamondShape;
use crate::encode::init_term;
use crate::reach::{Budget, BudgetReport, DerivedRelation, NoCertificate, ReachError, ThreeValued};
use crate::term::Term;
use crate::turing::TuringMachine;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error(transparent)]
    Reach(#[from] ReachError),
}

fn describe_certificate(cert: &NoCertificate) -> String {
    match cert {
        NoCertificate::Closure(set) => format!(
            "the closure of init ({} terms) never reaches term",
            set.terms.len()
        ),
        NoCertificate::Cycle { prefix, period } => format!(
            "the run repeats a configuration after {} step(s) with period {}",
            prefix, period
        ),
    }
}

/// Branches for a counterexample out of `init` when the machine never halts.
/// Outside `init` nothing has a successor, so any branch under a label that
/// needs a step is stuck; with only reflexive labels two distinct branches
/// suffice.
fn stuck_branches(successors: &[Term], shape: &DiamondShape) -> Option<Vec<Term>> {
    let n = shape.branches();
    let needs_two = shape.labels().iter().all(|l| l.allows_zero());
    if successors.is_empty() || (needs_two && successors.len() < 2) {
        return None;
    }
    Some((0..n).map(|i| successors[i % successors.len()].clone()).collect())
}

fn exact_outcome(rel: &DerivedRelation, shape: &DiamondShape) -> CheckOutcome {
    if shape.is_trivial() {
        return CheckOutcome::Holds {
            exactness: Exactness::Exact,
            evidence: Evidence::Trivial,
        };
    }
    match &rel.evidence().verdict {
        ThreeValued::Yes(trace) => CheckOutcome::Holds {
            exactness: Exactness::Exact,
            evidence: Evidence::Terminates(trace.clone()),
        },
        ThreeValued::Unknown(report) => CheckOutcome::Unknown {
            reason: format!("termination of the machine is undecided within budget: {}", report),
            report: report.clone(),
        },
        ThreeValued::No(cert) => {
            let init = init_term();
            let succ = rel.successors(&init);
            let Some(branches) = stuck_branches(&succ.terms, shape) else {
                return CheckOutcome::Unknown {
                    reason: format!(
                        "the machine never halts ({}) but too few successors of init were explored",
                        describe_certificate(cert)
                    ),
                    report: rel.cone().report().clone(),
                };
            };
            let branch_traces = branches.iter().map(|b| rel.step_trace(&init, b)).collect();
            let explanation = format!(
                "{}; so only init has successors and the branches cannot be joined",
                describe_certificate(cert)
            );
            CheckOutcome::Counterexample(Box::new(Counterexample {
                peak: init,
                branches,
                branch_traces,
                explanation,
                basis: CounterexampleBasis::NonTermination(cert.clone()),
            }))
        }
    }
}

/// Decides the shape on the derived relation of `tm` through its
/// termination verdict.
pub fn check_shape_on_derived(
    tm: &TuringMachine,
    shape: &DiamondShape,
    budget: &Budget,
) -> Result<CheckOutcome, CheckError> {
    let rel = DerivedRelation::new(tm, budget)?;
    Ok(exact_outcome(&rel, shape))
}

fn direct_outcome(rel: &DerivedRelation, shape: &DiamondShape, budget: &Budget) -> CheckOutcome {
    let cone = rel.cone();
    let out = check_shape_in(rel, shape, cone.nodes(), budget);
    match out {
        CheckOutcome::Holds { .. } if !cone.complete() => CheckOutcome::Unknown {
            reason: "every explored peak joins but the cone of init is incomplete".to_string(),
            report: cone.report().clone(),
        },
        other => other,
    }
}

/// Enumerates every peak in the cone of `init` and every branch tuple.
pub fn check_shape_direct(
    tm: &TuringMachine,
    shape: &DiamondShape,
    budget: &Budget,
) -> Result<CheckOutcome, CheckError> {
    let rel = DerivedRelation::new(tm, budget)?;
    Ok(direct_outcome(&rel, shape, budget))
}

#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub exact: CheckOutcome,
    pub direct: CheckOutcome,
}

impl CrossCheck {
    /// No definite answer of one check contradicts the other.
    pub fn consistent(&self) -> bool {
        let contradicts = |a: &CheckOutcome, b: &CheckOutcome| a.holds() && b.counterexample().is_some();
        !contradicts(&self.exact, &self.direct) && !contradicts(&self.direct, &self.exact)
    }

    /// Both checks reached the same definite answer.
    pub fn agree(&self) -> bool {
        (self.exact.holds() && self.direct.holds())
            || (self.exact.counterexample().is_some() && self.direct.counterexample().is_some())
    }
}

pub fn cross_check(
    tm: &TuringMachine,
    shape: &DiamondShape,
    budget: &Budget,
) -> Result<CrossCheck, CheckError> {
    let rel = DerivedRelation::new(tm, budget)?;
    Ok(CrossCheck {
        exact: exact_outcome(&rel, shape),
        direct: direct_outcome(&rel, shape, budget),
    })
}

/// Report of the exploration behind an outcome, if any.
pub fn outcome_report(out: &CheckOutcome) -> Option<&BudgetReport> {
    match out {
        CheckOutcome::Unknown { report, .. } => Some(report),
        _ => None,
    }
}
