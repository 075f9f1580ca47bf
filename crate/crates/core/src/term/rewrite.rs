use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use super::{Position, Signature, SignatureError, Substitution, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Term,
    pub rhs: Term,
}

impl Rule {
    pub fn new(lhs: Term, rhs: Term) -> Rule {
        Rule { lhs, rhs }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrsError {
    #[error("rule {index}: left-hand side is a variable")]
    VariableLhs { index: usize },
    #[error("rule {index}: variable `{var}` occurs on the right but not on the left")]
    FreshRhsVariable { index: usize, var: String },
    #[error("rule {index}: `{name}` is not declared in the signature")]
    Undeclared { index: usize, name: String },
    #[error("rule {index}: {source}")]
    Signature {
        index: usize,
        #[source]
        source: SignatureError,
    },
}

/// A finite list of rules over a signature. Rule order is significant: it
/// fixes the enumeration order of rewrites at a given position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trs {
    signature: Signature,
    rules: Vec<Rule>,
}

impl Trs {
    pub fn new(signature: Signature, rules: Vec<Rule>) -> Result<Trs, TrsError> {
        for (index, rule) in rules.iter().enumerate() {
            if rule.lhs.is_var() {
                return Err(TrsError::VariableLhs { index });
            }
            let lvars = rule.lhs.variables();
            if let Some(v) = rule.rhs.variables().into_iter().find(|v| !lvars.contains(v)) {
                return Err(TrsError::FreshRhsVariable {
                    index,
                    var: v.to_string(),
                });
            }
            for side in [&rule.lhs, &rule.rhs] {
                check_well_formed(side, &signature, index)?;
            }
        }
        Ok(Trs { signature, rules })
    }

    /// A system whose signature is inferred from the rules; every `Var` in
    /// the rules is declared as a variable.
    pub fn from_rules(rules: Vec<Rule>) -> Result<Trs, TrsError> {
        let mut sig = Signature::new();
        for (index, rule) in rules.iter().enumerate() {
            for side in [&rule.lhs, &rule.rhs] {
                declare(side, &mut sig).map_err(|source| TrsError::Signature { index, source })?;
            }
        }
        Trs::new(sig, rules)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

fn declare(t: &Term, sig: &mut Signature) -> Result<(), SignatureError> {
    match t {
        Term::Var(v) => sig.add_variable(v),
        Term::App(op, args) => {
            sig.add_symbol(op, args.len())?;
            args.iter().try_for_each(|a| declare(a, sig))
        }
    }
}

fn check_well_formed(t: &Term, sig: &Signature, index: usize) -> Result<(), TrsError> {
    match t {
        Term::Var(v) if sig.is_variable(v) => Ok(()),
        Term::Var(v) => Err(TrsError::Undeclared {
            index,
            name: v.clone(),
        }),
        Term::App(op, args) => match sig.arity(op) {
            None => Err(TrsError::Undeclared {
                index,
                name: op.clone(),
            }),
            Some(a) if a != args.len() => Err(TrsError::Signature {
                index,
                source: SignatureError::ArityConflict {
                    name: op.clone(),
                    declared: a,
                    found: args.len(),
                },
            }),
            Some(_) => args.iter().try_for_each(|a| check_well_formed(a, sig, index)),
        },
    }
}

/// Syntactic matching of `pattern` against `subject`. Repeated pattern
/// variables must bind structurally equal subterms.
pub fn match_pattern(pattern: &Term, subject: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    if match_into(pattern, subject, &mut sigma) {
        Some(sigma)
    } else {
        None
    }
}

fn match_into(pattern: &Term, subject: &Term, sigma: &mut Substitution) -> bool {
    match pattern {
        Term::Var(v) => match sigma.get(v) {
            Some(bound) => bound == subject,
            None => {
                sigma.insert(v.clone(), subject.clone());
                true
            }
        },
        Term::App(op, args) => match subject {
            Term::App(sop, sargs) if sop == op && sargs.len() == args.len() => args
                .iter()
                .zip(sargs)
                .all(|(p, s)| match_into(p, s, sigma)),
            _ => false,
        },
    }
}

pub fn apply_substitution(t: &Term, sigma: &Substitution) -> Term {
    match t {
        Term::Var(v) => sigma.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::App(op, args) => Term::App(
            op.clone(),
            args.iter().map(|a| apply_substitution(a, sigma)).collect(),
        ),
    }
}

/// One rewrite step out of a term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub rule: usize,
    pub position: Position,
    pub result: Term,
}

/// Every one-step rewrite of `t`: positions in pre-order (leftmost-outermost
/// first), then rules in system order. Duplicate results are kept.
pub fn one_step_rewrites(trs: &Trs, t: &Term) -> Vec<Rewrite> {
    let mut out = Vec::new();
    for position in t.positions() {
        let sub = t.subterm(&position).expect("position of t");
        if sub.is_var() {
            continue;
        }
        for (rule, r) in trs.rules().iter().enumerate() {
            if let Some(sigma) = match_pattern(&r.lhs, sub) {
                let contractum = apply_substitution(&r.rhs, &sigma);
                let result = t.replace(&position, contractum).expect("position of t");
                out.push(Rewrite {
                    rule,
                    position: position.clone(),
                    result,
                });
            }
        }
    }
    out
}

/// Distinct one-step successors, in first-occurrence order of
/// [`one_step_rewrites`].
pub fn one_step_successors(trs: &Trs, t: &Term) -> Vec<Term> {
    let mut seen = HashSet::new();
    one_step_rewrites(trs, t)
        .into_iter()
        .filter_map(|r| seen.insert(r.result.clone()).then_some(r.result))
        .collect()
}

/// Applies rule `rule` at `position`, if it matches there.
pub fn rewrite_at(trs: &Trs, t: &Term, rule: usize, position: &Position) -> Option<Term> {
    let r = trs.rules().get(rule)?;
    let sub = t.subterm(position)?;
    let sigma = match_pattern(&r.lhs, sub)?;
    t.replace(position, apply_substitution(&r.rhs, &sigma))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: usize,
    pub position: Position,
}

/// A rewrite sequence `terms[0] -> terms[1] -> ...` with the rule and redex
/// position used for each step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteTrace {
    terms: Vec<Term>,
    steps: Vec<TraceStep>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error("step {step}: rule {rule} does not apply at position {position}")]
    NoMatch {
        step: usize,
        rule: usize,
        position: Position,
    },
    #[error("step {step}: rewriting gives {actual}, trace records {recorded}")]
    WrongResult {
        step: usize,
        actual: Term,
        recorded: Term,
    },
}

impl RewriteTrace {
    pub fn new(start: Term) -> RewriteTrace {
        RewriteTrace {
            terms: vec![start],
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, rule: usize, position: Position, result: Term) {
        self.steps.push(TraceStep { rule, position });
        self.terms.push(result);
    }

    /// Appends `other`, whose first term must equal this trace's last term.
    pub fn extend(&mut self, other: &RewriteTrace) {
        assert_eq!(self.last(), other.first(), "traces do not connect");
        self.terms.extend(other.terms[1..].iter().cloned());
        self.steps.extend(other.steps.iter().cloned());
    }

    pub fn first(&self) -> &Term {
        &self.terms[0]
    }

    pub fn last(&self) -> &Term {
        self.terms.last().expect("nonempty trace")
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    /// Number of rewrite steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-executes every step under `trs`.
    pub fn replay(&self, trs: &Trs) -> Result<(), TraceError> {
        for (i, step) in self.steps.iter().enumerate() {
            let actual = rewrite_at(trs, &self.terms[i], step.rule, &step.position).ok_or(
                TraceError::NoMatch {
                    step: i,
                    rule: step.rule,
                    position: step.position.clone(),
                },
            )?;
            if actual != self.terms[i + 1] {
                return Err(TraceError::WrongResult {
                    step: i,
                    actual,
                    recorded: self.terms[i + 1].clone(),
                });
            }
        }
        Ok(())
    }
}
