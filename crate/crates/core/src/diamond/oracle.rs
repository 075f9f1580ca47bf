//! A deliberately naive reference for joinability, sharing no code with the
//! main checker beyond the term type. It enumerates the terms reachable in
//! exactly `k` steps for `k = 0..=L` and declares a labeled set complete
//! only when level `L + 1` adds nothing new.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use super::{DiamondShape, ShapeLabel};
use crate::term::{Term, Trs};

fn bind(pattern: &Term, t: &Term, env: &mut Vec<(String, Term)>) -> bool {
    match pattern {
        Term::Var(v) => match env.iter().find(|(w, _)| w == v) {
            Some((_, bound)) => bound == t,
            None => {
                env.push((v.clone(), t.clone()));
                true
            }
        },
        Term::App(f, ps) => match t {
            Term::App(g, ts) if f == g && ps.len() == ts.len() => {
                ps.iter().zip(ts).all(|(p, s)| bind(p, s, env))
            }
            _ => false,
        },
    }
}

fn instantiate(t: &Term, env: &[(String, Term)]) -> Term {
    match t {
        Term::Var(v) => env
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| t.clone()),
        Term::App(f, ts) => Term::App(f.clone(), ts.iter().map(|s| instantiate(s, env)).collect()),
    }
}

/// All one-step reducts of `t`, as a set.
pub fn oracle_step(trs: &Trs, t: &Term) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    for rule in trs.rules() {
        let mut env = Vec::new();
        if bind(&rule.lhs, t, &mut env) {
            out.insert(instantiate(&rule.rhs, &env));
        }
    }
    if let Term::App(f, ts) = t {
        for (i, s) in ts.iter().enumerate() {
            for r in oracle_step(trs, s) {
                let mut args = ts.clone();
                args[i] = r;
                out.insert(Term::App(f.clone(), args));
            }
        }
    }
    out
}

/// Memoizes level sets for one system and step limit. Free functions below
/// build a fresh one per call.
pub struct Oracle<'a> {
    trs: &'a Trs,
    limit: u64,
    levels: RefCell<HashMap<Term, Rc<Vec<BTreeSet<Term>>>>>,
}

impl<'a> Oracle<'a> {
    pub fn new(trs: &'a Trs, limit: u64) -> Oracle<'a> {
        Oracle {
            trs,
            limit,
            levels: RefCell::new(HashMap::new()),
        }
    }

    /// `levels[k]` holds the terms reachable in exactly `k` steps, `k <= limit + 1`.
    fn levels(&self, t: &Term) -> Rc<Vec<BTreeSet<Term>>> {
        if let Some(lv) = self.levels.borrow().get(t) {
            return lv.clone();
        }
        let mut levels = vec![BTreeSet::from([t.clone()])];
        for _ in 0..=self.limit {
            let next = levels
                .last()
                .unwrap()
                .iter()
                .flat_map(|u| oracle_step(self.trs, u))
                .collect();
            levels.push(next);
        }
        let lv = Rc::new(levels);
        self.levels.borrow_mut().insert(t.clone(), lv.clone());
        lv
    }

    /// Terms `t ->^label y`, and whether the set is known to be complete.
    fn endpoints(&self, t: &Term, label: ShapeLabel) -> (BTreeSet<Term>, bool) {
        let lv = self.levels(t);
        let limit = self.limit as usize;
        match label {
            ShapeLabel::One => (lv[1].clone(), true),
            ShapeLabel::Eq => (lv[0].union(&lv[1]).cloned().collect(), true),
            ShapeLabel::Plus | ShapeLabel::Star => {
                let from = usize::from(label == ShapeLabel::Plus);
                let set: BTreeSet<Term> = lv[from..=limit].iter().flatten().cloned().collect();
                let closed = lv[limit + 1].is_subset(&set);
                (set, closed)
            }
        }
    }

    /// Whether `from ->^label to` is visible within the step limit.
    pub fn admits(&self, from: &Term, label: ShapeLabel, to: &Term) -> bool {
        let lv = self.levels(from);
        let (lo, hi) = match label {
            ShapeLabel::One => (1, 1),
            ShapeLabel::Eq => (0, 1),
            ShapeLabel::Plus => (1, self.limit as usize),
            ShapeLabel::Star => (0, self.limit as usize),
        };
        lv[lo..=hi].iter().any(|level| level.contains(to))
    }

    /// `Some(true)` when the branches join, `Some(false)` when they provably
    /// do not, `None` when the step limit does not settle it.
    pub fn joinable(&self, branches: &[Term], labels: &[ShapeLabel]) -> Option<bool> {
        assert_eq!(branches.len(), labels.len());
        let sets: Vec<(BTreeSet<Term>, bool)> = branches
            .iter()
            .zip(labels)
            .map(|(b, &l)| self.endpoints(b, l))
            .collect();
        let mut common = sets[0].0.clone();
        for (s, _) in &sets[1..] {
            common = common.intersection(s).cloned().collect();
        }
        if !common.is_empty() {
            Some(true)
        } else if sets.iter().all(|(_, closed)| *closed) {
            Some(false)
        } else {
            None
        }
    }

    /// The shape at one peak: every tuple of one-step reducts must join.
    pub fn check_peak(&self, shape: &DiamondShape, peak: &Term) -> OracleVerdict {
        let succ: Vec<Term> = oracle_step(self.trs, peak).into_iter().collect();
        let n = shape.branches();
        let mut undetermined = false;
        let total = succ.len().pow(n as u32);
        for code in 0..total {
            let mut rest = code;
            let mut branches = vec![succ[0].clone(); n];
            for slot in branches.iter_mut().rev() {
                *slot = succ[rest % succ.len()].clone();
                rest /= succ.len();
            }
            match self.joinable(&branches, shape.labels()) {
                Some(true) => {}
                Some(false) => return OracleVerdict::Fails(branches),
                None => undetermined = true,
            }
        }
        if undetermined {
            OracleVerdict::Undetermined
        } else {
            OracleVerdict::Holds
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Holds,
    Fails(Vec<Term>),
    Undetermined,
}

pub fn oracle_admits(trs: &Trs, from: &Term, label: ShapeLabel, to: &Term, limit: u64) -> bool {
    Oracle::new(trs, limit).admits(from, label, to)
}

pub fn oracle_joinable(trs: &Trs, branches: &[Term], labels: &[ShapeLabel], limit: u64) -> Option<bool> {
    Oracle::new(trs, limit).joinable(branches, labels)
}

pub fn oracle_check_peak(trs: &Trs, shape: &DiamondShape, peak: &Term, limit: u64) -> OracleVerdict {
    Oracle::new(trs, limit).check_peak(shape, peak)
}
