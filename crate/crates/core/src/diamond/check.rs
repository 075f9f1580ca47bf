use std::collections::{HashMap, HashSet, VecDeque};
use std::rc::Rc;

use super::{DiamondShape, ShapeError, ShapeLabel};
use crate::reach::{reachable_terms, Budget, BudgetReport, DerivedRelation, NoCertificate, Successors};
use crate::term::{one_step_rewrites, one_step_successors, RewriteTrace, Term, Trs};

/// A one-step relation on ground terms.
pub trait StepRelation {
    fn successors(&self, t: &Term) -> Successors;

    /// Rewrite evidence for `from -> to`, when the relation has any.
    fn step_trace(&self, from: &Term, to: &Term) -> Option<RewriteTrace>;
}

impl StepRelation for Trs {
    fn successors(&self, t: &Term) -> Successors {
        Successors {
            terms: one_step_successors(self, t),
            complete: true,
        }
    }

    fn step_trace(&self, from: &Term, to: &Term) -> Option<RewriteTrace> {
        let rw = one_step_rewrites(self, from)
            .into_iter()
            .find(|rw| rw.result == *to)?;
        let mut tr = RewriteTrace::new(from.clone());
        tr.push(rw.rule, rw.position, rw.result);
        Some(tr)
    }
}

impl StepRelation for DerivedRelation {
    fn successors(&self, t: &Term) -> Successors {
        DerivedRelation::successors(self, t)
    }

    fn step_trace(&self, from: &Term, to: &Term) -> Option<RewriteTrace> {
        DerivedRelation::step_trace(self, from, to)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Joinability {
    Joinable(Term),
    NotJoinable,
    Unknown(BudgetReport),
}

impl Joinability {
    pub fn witness(&self) -> Option<&Term> {
        match self {
            Joinability::Joinable(y) => Some(y),
            _ => None,
        }
    }

    pub fn is_definite(&self) -> bool {
        !matches!(self, Joinability::Unknown(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    Bounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// The machine halts (trace `init ->+ term`), so every branch reaches
    /// `term` in one derived step.
    Terminates(RewriteTrace),
    /// One branch with a label that admits zero steps.
    Trivial,
    /// Every successor tuple of every listed peak joined.
    Enumerated { peaks: usize, tuples: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CounterexampleBasis {
    /// The machine provably never halts; branches are taken out of `init`.
    NonTermination(NoCertificate),
    /// The labeled cones of the branches were computed completely.
    CompleteCones,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub peak: Term,
    pub branches: Vec<Term>,
    /// One trace per branch justifying `peak -> branch`.
    pub branch_traces: Vec<Option<RewriteTrace>>,
    pub explanation: String,
    pub basis: CounterexampleBasis,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Holds {
        exactness: Exactness,
        evidence: Evidence,
    },
    Counterexample(Box<Counterexample>),
    Unknown {
        reason: String,
        report: BudgetReport,
    },
}

impl CheckOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, CheckOutcome::Holds { .. })
    }

    pub fn is_exact_holds(&self) -> bool {
        matches!(
            self,
            CheckOutcome::Holds {
                exactness: Exactness::Exact,
                ..
            }
        )
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            CheckOutcome::Counterexample(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, CheckOutcome::Unknown { .. })
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            CheckOutcome::Holds {
                exactness: Exactness::Exact,
                ..
            } => "holds (exact)",
            CheckOutcome::Holds { .. } => "holds (bounded)",
            CheckOutcome::Counterexample(_) => "counterexample",
            CheckOutcome::Unknown { .. } => "unknown",
        }
    }
}

/// Terms reachable under a label, in BFS order.
#[derive(Debug)]
struct Cone {
    order: Vec<Term>,
    members: HashSet<Term>,
    report: BudgetReport,
}

impl Cone {
    fn complete(&self) -> bool {
        !self.report.truncated()
    }
}

/// Checks shapes on one relation under one budget, caching successor sets
/// and labeled cones across calls.
pub struct Checker<'a, R: ?Sized> {
    rel: &'a R,
    budget: Budget,
    succ: HashMap<Term, Rc<Successors>>,
    cones: HashMap<(Term, ShapeLabel), Rc<Cone>>,
}

impl<'a, R: StepRelation + ?Sized> Checker<'a, R> {
    pub fn new(rel: &'a R, budget: &Budget) -> Self {
        Checker {
            rel,
            budget: *budget,
            succ: HashMap::new(),
            cones: HashMap::new(),
        }
    }

    fn successors(&mut self, t: &Term) -> Rc<Successors> {
        if let Some(s) = self.succ.get(t) {
            return s.clone();
        }
        let s = Rc::new(self.rel.successors(t));
        self.succ.insert(t.clone(), s.clone());
        s
    }

    fn cone(&mut self, x: &Term, label: ShapeLabel) -> Rc<Cone> {
        let key = (x.clone(), label);
        if let Some(c) = self.cones.get(&key) {
            return c.clone();
        }
        let cone = Rc::new(self.compute_cone(x, label));
        self.cones.insert(key, cone.clone());
        cone
    }

    fn compute_cone(&mut self, x: &Term, label: ShapeLabel) -> Cone {
        let mut cone = Cone {
            order: Vec::new(),
            members: HashSet::new(),
            report: BudgetReport::default(),
        };
        if label.allows_zero() {
            cone.members.insert(x.clone());
            cone.order.push(x.clone());
        }
        let first = self.successors(x);
        cone.report.relation_limited |= !first.complete;
        let bounded = matches!(label, ShapeLabel::Plus | ShapeLabel::Star);
        let mut queue = VecDeque::new();
        for s in &first.terms {
            if cone.members.contains(s) {
                continue;
            }
            if bounded && !self.admit(&mut cone, s) {
                continue;
            }
            cone.members.insert(s.clone());
            cone.order.push(s.clone());
            queue.push_back((s.clone(), 1u64));
        }
        cone.report.deepest = u64::from(!first.terms.is_empty());
        if bounded {
            while let Some((t, d)) = queue.pop_front() {
                cone.report.deepest = cone.report.deepest.max(d);
                let next = self.successors(&t);
                cone.report.relation_limited |= !next.complete;
                for s in &next.terms {
                    if cone.members.contains(s) {
                        continue;
                    }
                    if d >= self.budget.max_rewrite_steps {
                        cone.report.depth_limited = true;
                        continue;
                    }
                    if !self.admit(&mut cone, s) {
                        continue;
                    }
                    cone.members.insert(s.clone());
                    cone.order.push(s.clone());
                    queue.push_back((s.clone(), d + 1));
                }
            }
        }
        cone.report.explored_terms = cone.order.len();
        cone
    }

    fn admit(&self, cone: &mut Cone, s: &Term) -> bool {
        if s.size() > self.budget.max_term_size {
            cone.report.size_limited = true;
            false
        } else if cone.order.len() >= self.budget.max_distinct_terms {
            cone.report.term_limited = true;
            false
        } else {
            true
        }
    }

    /// See [`joinable_in`].
    pub fn joinable(&mut self, branches: &[Term], labels: &[ShapeLabel]) -> Result<Joinability, ShapeError> {
        check_arity(branches, labels)?;
        Ok(self.join(branches, labels))
    }

    fn join(&mut self, branches: &[Term], labels: &[ShapeLabel]) -> Joinability {
        let cones: Vec<Rc<Cone>> = branches
            .iter()
            .zip(labels)
            .map(|(b, &l)| self.cone(b, l))
            .collect();
        for y in &cones[0].order {
            if cones[1..].iter().all(|c| c.members.contains(y)) {
                return Joinability::Joinable(y.clone());
            }
        }
        if cones.iter().all(|c| c.complete()) {
            return Joinability::NotJoinable;
        }
        let mut report = BudgetReport::default();
        for c in &cones {
            report.absorb(&c.report);
        }
        Joinability::Unknown(report)
    }

    fn describe_failure(&mut self, branches: &[Term], labels: &[ShapeLabel]) -> String {
        let parts: Vec<String> = branches
            .iter()
            .zip(labels)
            .enumerate()
            .map(|(i, (b, &l))| {
                let c = self.cone(b, l);
                let shown: Vec<String> = c.order.iter().take(6).map(|t| t.to_string()).collect();
                let more = if c.order.len() > 6 { ", ..." } else { "" };
                format!("x{} ->^{} {{{}{}}}", i + 1, l, shown.join(", "), more)
            })
            .collect();
        format!("labeled cones share no term: {}", parts.join("; "))
    }

    /// Checks the shape at every listed peak against every tuple of its
    /// successors; see [`check_shape_in`].
    pub fn check(&mut self, shape: &DiamondShape, peaks: &[Term]) -> CheckOutcome {
        let labels = shape.labels();
        let mut unknown: Option<(String, BudgetReport)> = None;
        let mut tuple_count = 0;
        for peak in peaks {
            let succ = self.successors(peak);
            if !succ.complete && unknown.is_none() {
                let report = BudgetReport {
                    relation_limited: true,
                    ..Default::default()
                };
                unknown = Some((format!("successors of {} are incomplete", peak), report));
            }
            let all: Vec<usize> = (0..succ.terms.len()).collect();
            // Only tuples whose cones are all complete can fail, so those go
            // first; the rest are scanned until one is undecided.
            let complete: Vec<Vec<usize>> = labels
                .iter()
                .map(|&l| {
                    all.iter()
                        .copied()
                        .filter(|&j| self.cone(&succ.terms[j], l).complete())
                        .collect()
                })
                .collect();
            let branches_of = |tuple: &[usize]| -> Vec<Term> { tuple.iter().map(|&j| succ.terms[j].clone()).collect() };

            for tuple in Tuples::new(complete.iter().map(|l| l.as_slice()).collect(), labels) {
                tuple_count += 1;
                let branches = branches_of(&tuple);
                if self.join(&branches, labels) == Joinability::NotJoinable {
                    let explanation = self.describe_failure(&branches, labels);
                    let branch_traces = branches.iter().map(|b| self.rel.step_trace(peak, b)).collect();
                    return CheckOutcome::Counterexample(Box::new(Counterexample {
                        peak: peak.clone(),
                        branches,
                        branch_traces,
                        explanation,
                        basis: CounterexampleBasis::CompleteCones,
                    }));
                }
            }
            if unknown.is_some() || complete.iter().all(|l| l.len() == all.len()) {
                continue;
            }
            for tuple in Tuples::new(vec![all.as_slice(); labels.len()], labels) {
                let partial = tuple
                    .iter()
                    .zip(labels)
                    .any(|(&j, &l)| !self.cone(&succ.terms[j], l).complete());
                if !partial {
                    continue;
                }
                tuple_count += 1;
                let branches = branches_of(&tuple);
                if let Joinability::Unknown(report) = self.join(&branches, labels) {
                    let shown: Vec<String> = branches.iter().map(|b| b.to_string()).collect();
                    unknown = Some((
                        format!("peak {}, branches ({}): {}", peak, shown.join(", "), report),
                        report,
                    ));
                    break;
                }
            }
        }
        match unknown {
            Some((reason, report)) => CheckOutcome::Unknown { reason, report },
            None => CheckOutcome::Holds {
                exactness: Exactness::Bounded,
                evidence: Evidence::Enumerated {
                    peaks: peaks.len(),
                    tuples: tuple_count,
                },
            },
        }
    }
}

fn check_arity(branches: &[Term], labels: &[ShapeLabel]) -> Result<(), ShapeError> {
    if branches.len() != labels.len() || labels.is_empty() {
        return Err(ShapeError::ArityMismatch {
            branches: branches.len(),
            labels: labels.len(),
        });
    }
    Ok(())
}

/// Whether some `y` has `branches[i] ->^{labels[i]} y` for all `i`. The
/// witness is the first such `y` in BFS order of the first branch's cone.
pub fn joinable_in<R: StepRelation + ?Sized>(
    rel: &R,
    branches: &[Term],
    labels: &[ShapeLabel],
    budget: &Budget,
) -> Result<Joinability, ShapeError> {
    Checker::new(rel, budget).joinable(branches, labels)
}

pub fn joinable(
    trs: &Trs,
    branches: &[Term],
    labels: &[ShapeLabel],
    budget: &Budget,
) -> Result<Joinability, ShapeError> {
    joinable_in(trs, branches, labels, budget)
}

/// Tuples picking `lists[i][v[i]]` at each position, in lexicographic order
/// of `v`. Positions with the same `group` share a list and only
/// non-decreasing choices within a group are produced: permuting branches
/// that carry the same label does not change joinability, and the sorted
/// representative is the lexicographically least of its permutations.
pub(crate) struct Tuples<'a> {
    lists: Vec<&'a [usize]>,
    prev: Vec<Option<usize>>,
    next: Option<Vec<usize>>,
}

impl<'a> Tuples<'a> {
    pub(crate) fn new(lists: Vec<&'a [usize]>, groups: &[ShapeLabel]) -> Self {
        let prev: Vec<Option<usize>> = (0..groups.len())
            .map(|i| (0..i).rev().find(|&j| groups[j] == groups[i]))
            .collect();
        let next = lists.iter().all(|l| !l.is_empty()).then(|| vec![0; lists.len()]);
        Tuples { lists, prev, next }
    }
}

impl Iterator for Tuples<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if let Some(i) = (0..succ.len()).rev().find(|&i| succ[i] + 1 < self.lists[i].len()) {
            succ[i] += 1;
            for j in i + 1..succ.len() {
                succ[j] = self.prev[j].map_or(0, |p| succ[p]);
            }
            self.next = Some(succ);
        }
        Some(cur.iter().enumerate().map(|(i, &v)| self.lists[i][v]).collect())
    }
}

/// Checks the shape at every listed peak against every tuple of its
/// successors. The first definite failure is returned; `Holds` is always
/// bounded because only the listed peaks are examined.
pub fn check_shape_in<R: StepRelation + ?Sized>(
    rel: &R,
    shape: &DiamondShape,
    peaks: &[Term],
    budget: &Budget,
) -> CheckOutcome {
    Checker::new(rel, budget).check(shape, peaks)
}

pub fn check_shape_on_trs(
    trs: &Trs,
    shape: &DiamondShape,
    peaks: &[Term],
    budget: &Budget,
) -> CheckOutcome {
    check_shape_in(trs, shape, peaks, budget)
}

/// Checks every peak in the explored cone of `seed`. `Holds` turns into
/// `Unknown` when the cone itself was cut short.
pub fn check_shape_from_seed(trs: &Trs, shape: &DiamondShape, seed: &Term, budget: &Budget) -> CheckOutcome {
    let cone = reachable_terms(trs, seed, budget);
    match check_shape_in(trs, shape, &cone.terms, budget) {
        CheckOutcome::Holds { .. } if !cone.complete => CheckOutcome::Unknown {
            reason: format!("every explored peak joins but the cone of {} is incomplete", seed),
            report: cone.report,
        },
        other => other,
    }
}
