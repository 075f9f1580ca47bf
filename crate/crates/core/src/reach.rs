//! Budgeted reachability over a rewrite system, the termination query
//! `init ->+ term`, and the derived relation built on the cone of `init`.
//!
//! Every semi-decidable question answers [`ThreeValued`]: `Yes` carries a
//! replayable trace, `No` a certificate, and `Unknown` the budget report of
//! the search that ran out.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::encode::{init_term, term_term, CompiledMachine, EncodeError};
use crate::term::{one_step_rewrites, Position, RewriteTrace, Term, Trs};
use crate::turing::{RunOutcome, TuringMachine};

/// Search limits. `max_rewrite_steps` bounds the rewrite distance from the
/// seed (and the number of machine steps in a direct run).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_rewrite_steps: u64,
    pub max_distinct_terms: usize,
    pub max_term_size: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("budget limits must be positive")]
pub struct ZeroBudget;

impl Budget {
    pub fn new(
        max_rewrite_steps: u64,
        max_distinct_terms: usize,
        max_term_size: usize,
    ) -> Result<Budget, ZeroBudget> {
        if max_rewrite_steps == 0 || max_distinct_terms == 0 || max_term_size == 0 {
            return Err(ZeroBudget);
        }
        Ok(Budget {
            max_rewrite_steps,
            max_distinct_terms,
            max_term_size,
        })
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_rewrite_steps: 200,
            max_distinct_terms: 10_000,
            max_term_size: 512,
        }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(
            f,
            "steps={},terms={},size={}",
            self.max_rewrite_steps, self.max_distinct_terms, self.max_term_size
        )
    }
}

/// What a search explored and which limits cut it short.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BudgetReport {
    pub explored_terms: usize,
    pub deepest: u64,
    pub depth_limited: bool,
    pub term_limited: bool,
    pub size_limited: bool,
    /// Some successor set of the underlying relation was itself incomplete.
    pub relation_limited: bool,
}

impl BudgetReport {
    pub fn truncated(&self) -> bool {
        self.depth_limited || self.term_limited || self.size_limited || self.relation_limited
    }

    pub(crate) fn absorb(&mut self, other: &BudgetReport) {
        self.explored_terms += other.explored_terms;
        self.deepest = self.deepest.max(other.deepest);
        self.depth_limited |= other.depth_limited;
        self.term_limited |= other.term_limited;
        self.size_limited |= other.size_limited;
        self.relation_limited |= other.relation_limited;
    }
}

impl fmt::Display for BudgetReport {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{} terms explored, depth {}", self.explored_terms, self.deepest)?;
        let limits: Vec<&str> = [
            (self.depth_limited, "step limit"),
            (self.term_limited, "term limit"),
            (self.size_limited, "size limit"),
            (self.relation_limited, "incomplete successor sets"),
        ]
        .into_iter()
        .filter_map(|(hit, name)| hit.then_some(name))
        .collect();
        if !limits.is_empty() {
            write!(f, "; hit {}", limits.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub rule: usize,
    pub position: Position,
}

/// Breadth-first exploration from a seed. Node 0 is the seed; nodes are in
/// discovery order.
#[derive(Clone, Debug)]
pub struct ReachGraph {
    nodes: Vec<Term>,
    index: HashMap<Term, usize>,
    parent: Vec<Option<usize>>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    report: BudgetReport,
}

impl ReachGraph {
    pub fn explore(trs: &Trs, seed: &Term, budget: &Budget) -> ReachGraph {
        let mut g = ReachGraph {
            nodes: vec![seed.clone()],
            index: HashMap::from([(seed.clone(), 0)]),
            parent: vec![None],
            edges: Vec::new(),
            out: vec![Vec::new()],
            report: BudgetReport::default(),
        };
        let mut depth = vec![0u64];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let d = depth[i];
            g.report.deepest = g.report.deepest.max(d);
            if g.nodes[i].size() > budget.max_term_size {
                g.report.size_limited = true;
                continue;
            }
            let at_limit = d >= budget.max_rewrite_steps;
            let current = g.nodes[i].clone();
            for rw in one_step_rewrites(trs, &current) {
                let to = match g.index.get(&rw.result) {
                    Some(&j) => j,
                    None if at_limit => {
                        g.report.depth_limited = true;
                        continue;
                    }
                    None if rw.result.size() > budget.max_term_size => {
                        g.report.size_limited = true;
                        continue;
                    }
                    None if g.nodes.len() >= budget.max_distinct_terms => {
                        g.report.term_limited = true;
                        continue;
                    }
                    None => {
                        let j = g.nodes.len();
                        g.index.insert(rw.result.clone(), j);
                        g.nodes.push(rw.result);
                        g.parent.push(Some(g.edges.len()));
                        g.out.push(Vec::new());
                        depth.push(d + 1);
                        queue.push_back(j);
                        j
                    }
                };
                g.out[i].push(g.edges.len());
                g.edges.push(Edge {
                    from: i,
                    to,
                    rule: rw.rule,
                    position: rw.position,
                });
            }
        }
        g.report.explored_terms = g.nodes.len();
        g
    }

    pub fn nodes(&self) -> &[Term] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn index_of(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn complete(&self) -> bool {
        !self.report.truncated()
    }

    pub fn report(&self) -> &BudgetReport {
        &self.report
    }

    /// Shortest (BFS tree) trace from the seed to node `i`.
    pub fn trace_to(&self, i: usize) -> RewriteTrace {
        let mut path = Vec::new();
        let mut cur = i;
        while let Some(e) = self.parent[cur] {
            path.push(e);
            cur = self.edges[e].from;
        }
        let mut trace = RewriteTrace::new(self.nodes[0].clone());
        for &e in path.iter().rev() {
            let edge = &self.edges[e];
            trace.push(edge.rule, edge.position.clone(), self.nodes[edge.to].clone());
        }
        trace
    }

    /// Trace of at least one step from the seed to node `i`, if the explored
    /// graph has one.
    pub fn trace_plus(&self, i: usize) -> Option<RewriteTrace> {
        if i != 0 {
            return Some(self.trace_to(i));
        }
        // back edge into the seed
        let e = self.edges.iter().position(|e| e.to == 0)?;
        let edge = &self.edges[e];
        let mut trace = self.trace_to(edge.from);
        trace.push(edge.rule, edge.position.clone(), self.nodes[0].clone());
        Some(trace)
    }

    /// Nodes reachable from node `i` in zero or more steps along explored
    /// edges, in BFS order.
    pub fn closure_from(&self, i: usize) -> Vec<usize> {
        let mut seen = HashSet::from([i]);
        let mut order = vec![i];
        let mut k = 0;
        while k < order.len() {
            for &e in &self.out[order[k]] {
                let to = self.edges[e].to;
                if seen.insert(to) {
                    order.push(to);
                }
            }
            k += 1;
        }
        order
    }

    /// Shortest trace from node `i` to node `j` (zero steps when equal) along
    /// explored edges.
    pub fn trace_between(&self, i: usize, j: usize) -> Option<RewriteTrace> {
        let mut via: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([i]);
        let mut seen = HashSet::from([i]);
        while let Some(k) = queue.pop_front() {
            if k == j {
                break;
            }
            for &e in &self.out[k] {
                let to = self.edges[e].to;
                if seen.insert(to) {
                    via.insert(to, e);
                    queue.push_back(to);
                }
            }
        }
        if !seen.contains(&j) {
            return None;
        }
        let mut path = Vec::new();
        let mut cur = j;
        while cur != i {
            let e = via[&cur];
            path.push(e);
            cur = self.edges[e].from;
        }
        let mut trace = RewriteTrace::new(self.nodes[i].clone());
        for &e in path.iter().rev() {
            let edge = &self.edges[e];
            trace.push(edge.rule, edge.position.clone(), self.nodes[edge.to].clone());
        }
        Some(trace)
    }

    pub fn into_reach_set(self) -> ReachSet {
        let complete = self.complete();
        ReachSet {
            terms: self.nodes,
            complete,
            report: self.report,
        }
    }
}

/// Terms reachable from a seed. When `complete`, the set is closed under
/// one-step rewriting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachSet {
    pub terms: Vec<Term>,
    pub complete: bool,
    pub report: BudgetReport,
}

impl ReachSet {
    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains(t)
    }

    /// Re-checks closure under `trs` from scratch.
    pub fn verify_closed(&self, trs: &Trs) -> bool {
        let members: HashSet<&Term> = self.terms.iter().collect();
        self.terms.iter().all(|t| {
            one_step_rewrites(trs, t)
                .iter()
                .all(|rw| members.contains(&rw.result))
        })
    }
}

pub fn reachable_terms(trs: &Trs, seed: &Term, budget: &Budget) -> ReachSet {
    ReachGraph::explore(trs, seed, budget).into_reach_set()
}

/// Why something is definitely not reachable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoCertificate {
    /// A complete closure from the source that does not reach the target.
    Closure(ReachSet),
    /// The machine's run repeats a configuration and never halts.
    Cycle { prefix: u64, period: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThreeValued {
    Yes(RewriteTrace),
    No(NoCertificate),
    Unknown(BudgetReport),
}

impl ThreeValued {
    pub fn is_yes(&self) -> bool {
        matches!(self, ThreeValued::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, ThreeValued::No(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, ThreeValued::Unknown(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            ThreeValued::Yes(_) => "yes",
            ThreeValued::No(_) => "no",
            ThreeValued::Unknown(_) => "unknown",
        }
    }
}

/// `from ->+ t` for some `t` satisfying `target`.
pub fn reaches_plus_where(
    trs: &Trs,
    from: &Term,
    target: impl Fn(&Term) -> bool,
    budget: &Budget,
) -> ThreeValued {
    let g = ReachGraph::explore(trs, from, budget);
    reaches_plus_in(&g, target)
}

fn reaches_plus_in(g: &ReachGraph, target: impl Fn(&Term) -> bool) -> ThreeValued {
    for (i, t) in g.nodes().iter().enumerate() {
        if target(t) {
            if let Some(trace) = g.trace_plus(i) {
                return ThreeValued::Yes(trace);
            }
        }
    }
    if g.complete() {
        ThreeValued::No(NoCertificate::Closure(g.clone().into_reach_set()))
    } else {
        ThreeValued::Unknown(g.report().clone())
    }
}

/// `from ->+ to`: at least one step, even when `from == to`.
pub fn reaches_plus(trs: &Trs, from: &Term, to: &Term, budget: &Budget) -> ThreeValued {
    reaches_plus_where(trs, from, |t| t == to, budget)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReachError {
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error("direct run says {run:?} but the rewrite search answered {rewriting}")]
    Disagreement { run: RunOutcome, rewriting: String },
}

/// Both routes to the termination question and the combined verdict.
#[derive(Clone, Debug)]
pub struct TerminationEvidence {
    pub run: RunOutcome,
    pub rewriting: ThreeValued,
    pub verdict: ThreeValued,
}

pub fn termination_evidence(
    tm: &TuringMachine,
    budget: &Budget,
) -> Result<TerminationEvidence, ReachError> {
    let compiled = CompiledMachine::new(tm)?;
    let g = ReachGraph::explore(compiled.trs(), &init_term(), budget);
    termination_from_cone(&compiled, &g, budget)
}

fn termination_from_cone(
    compiled: &CompiledMachine,
    cone: &ReachGraph,
    budget: &Budget,
) -> Result<TerminationEvidence, ReachError> {
    let tm = compiled.machine();
    let run = tm
        .run(budget.max_rewrite_steps)
        .map_err(EncodeError::from)?;
    let term = term_term();
    let rewriting = reaches_plus_in(cone, |t| *t == term);

    let disagree = matches!(
        (&run, &rewriting),
        (RunOutcome::Halted { .. }, ThreeValued::No(_)) | (RunOutcome::Cycled { .. }, ThreeValued::Yes(_))
    );
    if disagree {
        return Err(ReachError::Disagreement {
            run,
            rewriting: rewriting.label().to_string(),
        });
    }

    let verdict = match (&rewriting, &run) {
        (ThreeValued::Yes(_), _) | (ThreeValued::No(_), _) => rewriting.clone(),
        (ThreeValued::Unknown(_), RunOutcome::Halted { steps, .. }) => {
            ThreeValued::Yes(halting_trace(compiled, *steps)?)
        }
        (ThreeValued::Unknown(_), RunOutcome::Cycled { prefix, period }) => {
            ThreeValued::No(NoCertificate::Cycle {
                prefix: *prefix,
                period: *period,
            })
        }
        (ThreeValued::Unknown(_), RunOutcome::Exceeded { .. }) => rewriting.clone(),
    };
    Ok(TerminationEvidence {
        run,
        rewriting,
        verdict,
    })
}

/// `init -> st_qs(nil,nil) ->* ... -> term` built from the machine's run.
fn halting_trace(compiled: &CompiledMachine, steps: u64) -> Result<RewriteTrace, EncodeError> {
    let tm = compiled.machine();
    let last_rule = compiled.trs().len() - 1;
    let mut trace = RewriteTrace::new(init_term());
    trace.push(last_rule, Position::root(), compiled.encode(&tm.initial()));
    trace.extend(&compiled.simulation_trace(&tm.initial(), steps)?);
    trace.push(last_rule - 1, Position::root(), term_term());
    Ok(trace)
}

/// `Yes` iff the machine halts, decided by a direct run or by the rewrite
/// search from `init`, whichever certifies first.
pub fn terminates_via_trs(tm: &TuringMachine, budget: &Budget) -> Result<ThreeValued, ReachError> {
    Ok(termination_evidence(tm, budget)?.verdict)
}

/// A successor set, possibly cut short by a budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Successors {
    pub terms: Vec<Term>,
    pub complete: bool,
}

/// The derived relation: `t => t'` iff
/// 1. `t = init` and `init ->+ t'`, or
/// 2. `init ->+ term` and `init ->+ t ->* t'`.
///
/// The cone of `init` and the termination verdict are computed once.
#[derive(Clone, Debug)]
pub struct DerivedRelation {
    compiled: CompiledMachine,
    budget: Budget,
    cone: ReachGraph,
    evidence: TerminationEvidence,
}

impl DerivedRelation {
    pub fn new(tm: &TuringMachine, budget: &Budget) -> Result<DerivedRelation, ReachError> {
        let compiled = CompiledMachine::new(tm)?;
        let cone = ReachGraph::explore(compiled.trs(), &init_term(), budget);
        let evidence = termination_from_cone(&compiled, &cone, budget)?;
        Ok(DerivedRelation {
            compiled,
            budget: *budget,
            cone,
            evidence,
        })
    }

    pub fn compiled(&self) -> &CompiledMachine {
        &self.compiled
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    /// Exploration of the compiled system from `init`.
    pub fn cone(&self) -> &ReachGraph {
        &self.cone
    }

    pub fn evidence(&self) -> &TerminationEvidence {
        &self.evidence
    }

    /// A rewrite trace justifying `from => to`: `init ->+ to` for clause 1,
    /// `from ->* to` for clause 2. Only found within the explored cone.
    pub fn step_trace(&self, from: &Term, to: &Term) -> Option<RewriteTrace> {
        let j = self.cone.index_of(to)?;
        if *from == init_term() {
            if let Some(tr) = self.cone.trace_plus(j) {
                return Some(tr);
            }
        }
        self.cone.trace_between(self.cone.index_of(from)?, j)
    }

    pub fn successors(&self, t: &Term) -> Successors {
        let mut terms = Vec::new();
        let mut complete = true;
        let init = init_term();

        if *t == init {
            complete &= self.cone.complete();
            for (i, u) in self.cone.nodes().iter().enumerate() {
                if i != 0 || self.cone.trace_plus(0).is_some() {
                    terms.push(u.clone());
                }
            }
        }

        match &self.evidence.verdict {
            ThreeValued::No(_) => {}
            ThreeValued::Unknown(_) => complete = false,
            ThreeValued::Yes(_) => {
                let reached = self.cone.index_of(t).and_then(|i| self.cone.trace_plus(i));
                match reached {
                    Some(_) => {
                        let i = self.cone.index_of(t).unwrap();
                        if self.cone.complete() {
                            terms.extend(self.cone.closure_from(i).into_iter().map(|j| self.cone.nodes()[j].clone()));
                        } else {
                            let own = reachable_terms(self.compiled.trs(), t, &self.budget);
                            complete &= own.complete;
                            terms.extend(own.terms);
                        }
                    }
                    None if self.cone.complete() => {}
                    None => complete = false,
                }
            }
        }

        let mut seen = HashSet::new();
        terms.retain(|u| seen.insert(u.clone()));
        Successors { terms, complete }
    }
}

pub fn derived_successors(
    tm: &TuringMachine,
    t: &Term,
    budget: &Budget,
) -> Result<Successors, ReachError> {
    Ok(DerivedRelation::new(tm, budget)?.successors(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::term::parse_term;

    fn generous() -> Budget {
        Budget::new(1_000, 10_000, 256).unwrap()
    }

    fn parse(c: &CompiledMachine, s: &str) -> Term {
        parse_term(s, c.trs().signature()).unwrap()
    }

    fn texts(ts: &[Term]) -> Vec<String> {
        ts.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn budget_rejects_zero() {
        assert_eq!(Budget::new(0, 1, 1), Err(ZeroBudget));
        assert!(Budget::new(1, 1, 1).is_ok());
    }

    #[test]
    fn halt1_cone() {
        let c = CompiledMachine::new(&halt1()).unwrap();
        let set = reachable_terms(c.trs(), &init_term(), &generous());
        assert!(set.complete);
        assert!(set.verify_closed(c.trs()));
        assert_eq!(
            texts(&set.terms),
            vec![
                "init",
                "st_s(nil,nil)",
                "st_s(nil,cons(blank,nil))",
                "st_s(cons(blank,nil),nil)",
                "st_s(cons(blank,nil),cons(blank,nil))",
                "st_e(cons(blank,cons(blank,nil)),nil)",
                "st_e(cons(blank,cons(blank,nil)),cons(blank,nil))",
                "term",
            ]
        );
    }

    #[test]
    fn loop2_cone_is_closed_without_term() {
        let c = CompiledMachine::new(&loop2()).unwrap();
        let set = reachable_terms(c.trs(), &init_term(), &generous());
        assert!(set.complete);
        assert_eq!(set.terms.len(), 8);
        assert!(!set.contains(&term_term()));
        assert!(set.contains(&parse(&c, "st_s(cons(blank,nil),cons(blank,cons(blank,nil)))")));
    }

    #[test]
    fn loop1_cone_is_truncated() {
        let c = CompiledMachine::new(&loop1()).unwrap();
        let set = reachable_terms(c.trs(), &init_term(), &Budget::new(1_000, 50, 256).unwrap());
        assert!(!set.complete);
        assert!(set.report.term_limited);
        assert_eq!(set.terms.len(), 50);
    }

    #[test]
    fn reaches_plus_examples() {
        let c = CompiledMachine::new(&halt1()).unwrap();
        let ThreeValued::Yes(tr) = reaches_plus(c.trs(), &init_term(), &term_term(), &generous()) else {
            panic!()
        };
        assert_eq!(tr.len(), 5);
        assert_eq!(tr.replay(c.trs()), Ok(()));

        let c2 = CompiledMachine::new(&loop2()).unwrap();
        let ans = reaches_plus(c2.trs(), &init_term(), &term_term(), &generous());
        let ThreeValued::No(NoCertificate::Closure(set)) = ans else { panic!() };
        assert!(set.verify_closed(c2.trs()));

        let c1 = CompiledMachine::new(&loop1()).unwrap();
        let small = Budget::new(20, 100, 256).unwrap();
        assert!(reaches_plus(c1.trs(), &init_term(), &term_term(), &small).is_unknown());
    }

    #[test]
    fn reaches_plus_needs_a_step() {
        let c = CompiledMachine::new(&halt1()).unwrap();
        assert!(reaches_plus(c.trs(), &term_term(), &term_term(), &generous()).is_no());
        assert!(reaches_plus(c.trs(), &init_term(), &init_term(), &generous()).is_no());
        // in the LOOP2 cycle a term reaches itself
        let c = CompiledMachine::new(&loop2()).unwrap();
        let t = parse(&c, "st_s(cons(blank,nil),cons(blank,cons(blank,nil)))");
        let ThreeValued::Yes(tr) = reaches_plus(c.trs(), &t, &t, &generous()) else { panic!() };
        assert_eq!(tr.len(), 2);
        assert_eq!(tr.replay(c.trs()), Ok(()));
    }

    #[test]
    fn termination_verdicts() {
        let b = Budget::new(200, 500, 512).unwrap();
        let ev = termination_evidence(&halt1(), &b).unwrap();
        assert!(ev.verdict.is_yes() && ev.rewriting.is_yes());
        let ev = termination_evidence(&loop2(), &b).unwrap();
        assert!(matches!(ev.run, RunOutcome::Cycled { .. }));
        assert!(matches!(ev.verdict, ThreeValued::No(NoCertificate::Closure(_))));
        assert!(terminates_via_trs(&loop1(), &b).unwrap().is_unknown());
        assert!(terminates_via_trs(&count3(), &b).unwrap().is_yes());
    }

    #[test]
    fn run_path_decides_when_search_cannot() {
        // too few terms for the rewrite search, plenty of machine steps
        let b = Budget::new(50, 3, 512).unwrap();
        let c = CompiledMachine::new(&count3()).unwrap();
        let ev = termination_evidence(&count3(), &b).unwrap();
        assert!(ev.rewriting.is_unknown());
        let ThreeValued::Yes(tr) = ev.verdict else { panic!() };
        assert_eq!(tr.replay(c.trs()), Ok(()));
        assert_eq!(tr.last(), &term_term());
        let ev = termination_evidence(&loop2(), &b).unwrap();
        assert_eq!(ev.verdict, ThreeValued::No(NoCertificate::Cycle { prefix: 0, period: 2 }));
    }

    #[test]
    fn derived_examples() {
        let b = generous();
        let rel = DerivedRelation::new(&halt1(), &b).unwrap();
        let c = rel.compiled();
        let t = parse(c, "st_s(nil,nil)");
        let s = rel.successors(&t);
        assert!(s.complete);
        assert!(s.terms.contains(&t) && s.terms.contains(&term_term()));
        assert_eq!(s.terms.len(), 7);
        let s = rel.successors(&init_term());
        assert_eq!(s.terms.len(), 7);
        assert!(!s.terms.contains(&init_term()));
        assert_eq!(rel.successors(&term_term()).terms, vec![term_term()]);

        let rel = DerivedRelation::new(&loop2(), &b).unwrap();
        let t = parse(rel.compiled(), "st_s(nil,nil)");
        assert_eq!(rel.successors(&t), Successors { terms: vec![], complete: true });
        assert_eq!(rel.successors(&term_term()), Successors { terms: vec![], complete: true });
        assert_eq!(rel.successors(&init_term()).terms.len(), 7);

        let rel = DerivedRelation::new(&loop1(), &Budget::new(200, 500, 512).unwrap()).unwrap();
        let t = parse(rel.compiled(), "st_s(nil,nil)");
        assert!(!rel.successors(&t).complete);
    }
}
