//! Compiling a Turing machine into a rewrite system over configuration terms.
//!
//! A configuration `⟨q, p, b⟩` is the term `st_q(L, R)` where `L` lists
//! `b(p), b(p-1), ...` and `R` lists `b(p+1), b(p+2), ...` as `cons`/`nil`
//! lists, each with its trailing run of blanks removed. The compiled system
//! contains, in order:
//!
//! 1. per state `q`: `st_q(xs,nil) -> st_q(xs,cons(blank,nil))` and
//!    `st_q(nil,ys) -> st_q(cons(blank,nil),ys)`;
//! 2. per δ entry `δ(q,a) = ⟨q',d,b⟩`: for `d = L`
//!    `st_q(cons(a,l),cons(x,r)) -> st_q'(l,cons(b,cons(x,r)))`, for `d = R`
//!    `st_q(cons(a,l),cons(x,r)) -> st_q'(cons(x,cons(b,l)),r)`;
//! 3. `st_qe(x,y) -> term` and `init -> st_qs(nil,nil)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::term::{is_identifier, rewrite_at, Position, RewriteTrace, Rule, Signature, Term, Trs};
use crate::turing::{Configuration, Direction, InvalidMachine, TuringMachine};

pub const CONS: &str = "cons";
pub const NIL: &str = "nil";
pub const BLANK: &str = "blank";
pub const INIT: &str = "init";
pub const TERM: &str = "term";
pub const STATE_PREFIX: &str = "st_";

const RESERVED: [&str; 5] = [CONS, NIL, BLANK, INIT, TERM];
const RULE_VARS: [&str; 6] = ["l", "r", "x", "xs", "y", "ys"];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EncodeError {
    #[error(transparent)]
    InvalidMachine(#[from] InvalidMachine),
    #[error("`{0}` cannot be used as a term identifier")]
    BadName(String),
    #[error("alphabet symbol `{symbol}` collides with generated name `{with}`")]
    Collision { symbol: String, with: String },
    #[error("machine halts after {halted_after} step(s), before the requested {requested}")]
    HaltedEarly { halted_after: u64, requested: u64 },
}

/// Which schema a compiled rule instantiates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleKind {
    PadRight { state: String },
    PadLeft { state: String },
    Transition { state: String, symbol: String },
    Finish,
    Start,
}

pub fn init_term() -> Term {
    Term::constant(INIT)
}

pub fn term_term() -> Term {
    Term::constant(TERM)
}

fn nil() -> Term {
    Term::constant(NIL)
}

fn cons(head: Term, tail: Term) -> Term {
    Term::app(CONS, vec![head, tail])
}

fn v(name: &str) -> Term {
    Term::var(name)
}

/// A machine together with its compiled system and rule layout.
#[derive(Clone, Debug)]
pub struct CompiledMachine {
    tm: TuringMachine,
    trs: Trs,
    kinds: Vec<RuleKind>,
    transition_rules: HashMap<(String, String), usize>,
}

impl CompiledMachine {
    pub fn new(tm: &TuringMachine) -> Result<CompiledMachine, EncodeError> {
        tm.validate()?;
        check_names(tm)?;

        let mut sig = Signature::new();
        let mut declare = |name: &str, arity| {
            sig.add_symbol(name, arity)
                .map_err(|_| EncodeError::BadName(name.to_string()))
        };
        for (name, arity) in [(CONS, 2), (NIL, 0), (INIT, 0), (TERM, 0)] {
            declare(name, arity)?;
        }
        for q in &tm.states {
            declare(&state_symbol(q), 2)?;
        }
        for a in &tm.alphabet {
            declare(symbol_constant(tm, a), 0)?;
        }
        for var in RULE_VARS {
            sig.add_variable(var)
                .map_err(|_| EncodeError::BadName(var.to_string()))?;
        }

        let mut rules = Vec::new();
        let mut kinds = Vec::new();
        for q in &tm.states {
            let f = state_symbol(q);
            rules.push(Rule::new(
                Term::app(&f, vec![v("xs"), nil()]),
                Term::app(&f, vec![v("xs"), cons(Term::constant(BLANK), nil())]),
            ));
            kinds.push(RuleKind::PadRight { state: q.clone() });
            rules.push(Rule::new(
                Term::app(&f, vec![nil(), v("ys")]),
                Term::app(&f, vec![cons(Term::constant(BLANK), nil()), v("ys")]),
            ));
            kinds.push(RuleKind::PadLeft { state: q.clone() });
        }
        let mut transition_rules = HashMap::new();
        for (q, a, act) in tm.transitions() {
            let read = Term::constant(symbol_constant(tm, a));
            let write = Term::constant(symbol_constant(tm, &act.write));
            let lhs = Term::app(
                state_symbol(q),
                vec![cons(read, v("l")), cons(v("x"), v("r"))],
            );
            let target = state_symbol(&act.next);
            let rhs = match act.direction {
                Direction::Left => {
                    Term::app(target, vec![v("l"), cons(write, cons(v("x"), v("r")))])
                }
                Direction::Right => {
                    Term::app(target, vec![cons(v("x"), cons(write, v("l"))), v("r")])
                }
            };
            transition_rules.insert((q.to_string(), a.to_string()), rules.len());
            rules.push(Rule::new(lhs, rhs));
            kinds.push(RuleKind::Transition {
                state: q.to_string(),
                symbol: a.to_string(),
            });
        }
        rules.push(Rule::new(
            Term::app(state_symbol(&tm.final_state), vec![v("x"), v("y")]),
            term_term(),
        ));
        kinds.push(RuleKind::Finish);
        rules.push(Rule::new(
            init_term(),
            Term::app(state_symbol(&tm.start), vec![nil(), nil()]),
        ));
        kinds.push(RuleKind::Start);

        let trs = Trs::new(sig, rules).expect("compiled rules are well-formed");
        Ok(CompiledMachine {
            tm: tm.clone(),
            trs,
            kinds,
            transition_rules,
        })
    }

    pub fn machine(&self) -> &TuringMachine {
        &self.tm
    }

    pub fn trs(&self) -> &Trs {
        &self.trs
    }

    pub fn rule_kind(&self, index: usize) -> Option<&RuleKind> {
        self.kinds.get(index)
    }

    fn state_index(&self, q: &str) -> usize {
        self.tm.states.iter().position(|s| s == q).expect("known state")
    }

    /// `G(K)`, with canonical trimming of blanks.
    pub fn encode(&self, k: &Configuration) -> Term {
        let blank = self.tm.blank.as_str();
        let cells: Vec<(&BigInt, &str)> = k.cells().collect();
        let constant = |s: &str| Term::constant(symbol_constant(&self.tm, s));

        // leftmost non-blank cell at or before the head bounds L
        let left_end = cells.iter().map(|(p, _)| *p).filter(|p| **p <= k.position).min();
        let mut left = nil();
        if let Some(end) = left_end {
            let mut p = end.clone();
            while p <= k.position {
                left = cons(constant(k.symbol_at(&p, blank)), left);
                p += 1;
            }
        }
        let right_end = cells.iter().map(|(p, _)| *p).filter(|p| **p > k.position).max();
        let mut right = nil();
        if let Some(end) = right_end {
            let mut p = end.clone();
            while p > k.position {
                right = cons(constant(k.symbol_at(&p, blank)), right);
                p -= 1;
            }
        }
        Term::app(state_symbol(&k.state), vec![left, right])
    }

    /// Inverse of [`CompiledMachine::encode`] up to translation: the head is
    /// placed at position 0. Explicit blanks are ignored, so padded terms
    /// decode like their trimmed forms. `init`, `term` and malformed terms
    /// give `None`.
    pub fn decode(&self, t: &Term) -> Option<Configuration> {
        let Term::App(op, args) = t else { return None };
        let q = op.strip_prefix(STATE_PREFIX)?;
        if args.len() != 2 || !self.tm.states.iter().any(|s| s == q) {
            return None;
        }
        let left = self.decode_list(&args[0])?;
        let right = self.decode_list(&args[1])?;
        let cells = left
            .into_iter()
            .enumerate()
            .map(|(i, s)| (-BigInt::from(i), s))
            .chain(
                right
                    .into_iter()
                    .enumerate()
                    .map(|(j, s)| (BigInt::from(j + 1), s)),
            );
        Some(Configuration::new(q, 0, cells, &self.tm.blank))
    }

    fn decode_list(&self, mut t: &Term) -> Option<Vec<String>> {
        let mut out = Vec::new();
        loop {
            match t {
                Term::App(op, args) if op == NIL && args.is_empty() => return Some(out),
                Term::App(op, args) if op == CONS && args.len() == 2 => {
                    out.push(self.constant_symbol(&args[0])?.to_string());
                    t = &args[1];
                }
                _ => return None,
            }
        }
    }

    fn constant_symbol(&self, t: &Term) -> Option<&str> {
        let Term::App(c, args) = t else { return None };
        if !args.is_empty() {
            return None;
        }
        if c == BLANK {
            return Some(&self.tm.blank);
        }
        self.tm
            .alphabet
            .iter()
            .find(|a| **a != self.tm.blank && *a == c)
            .map(String::as_str)
    }

    /// Realizes `n` ⊢-steps from `k` as a rewrite sequence starting at
    /// `G(k)`. Each ⊢-step is up to two blank insertions (only on a `nil`
    /// side, left first) followed by exactly one transition rule.
    pub fn simulation_trace(&self, k: &Configuration, n: u64) -> Result<RewriteTrace, EncodeError> {
        let mut trace = RewriteTrace::new(self.encode(k));
        let mut config = k.clone();
        for done in 0..n {
            let next = self.tm.step(&config).ok_or(EncodeError::HaltedEarly {
                halted_after: done,
                requested: n,
            })?;
            let qi = self.state_index(&config.state);
            let root = Position::root();
            let apply = |trace: &mut RewriteTrace, rule: usize| {
                let t = rewrite_at(&self.trs, trace.last(), rule, &root)
                    .expect("simulated step matches its rule");
                trace.push(rule, root.clone(), t);
            };
            if is_nil(&trace.last().args()[0]) {
                apply(&mut trace, 2 * qi + 1);
            }
            if is_nil(&trace.last().args()[1]) {
                apply(&mut trace, 2 * qi);
            }
            let read = config.read(&self.tm.blank).to_string();
            let rule = self.transition_rules[&(config.state.clone(), read)];
            apply(&mut trace, rule);
            config = next;
        }
        Ok(trace)
    }
}

fn is_nil(t: &Term) -> bool {
    matches!(t, Term::App(op, args) if op == NIL && args.is_empty())
}

pub fn state_symbol(q: &str) -> String {
    format!("{STATE_PREFIX}{q}")
}

/// Term constant for an alphabet symbol: the blank becomes `blank`, every
/// other symbol keeps its name.
pub fn symbol_constant<'a>(tm: &TuringMachine, a: &'a str) -> &'a str {
    if a == tm.blank {
        BLANK
    } else {
        a
    }
}

fn check_names(tm: &TuringMachine) -> Result<(), EncodeError> {
    for q in &tm.states {
        if !is_identifier(&state_symbol(q)) {
            return Err(EncodeError::BadName(q.clone()));
        }
    }
    for a in tm.alphabet.iter().filter(|a| **a != tm.blank) {
        if !is_identifier(a) {
            return Err(EncodeError::BadName(a.clone()));
        }
        let clash = RESERVED
            .iter()
            .chain(RULE_VARS.iter())
            .map(|s| s.to_string())
            .chain(tm.states.iter().map(|q| state_symbol(q)))
            .find(|n| n == a);
        if let Some(with) = clash {
            return Err(EncodeError::Collision {
                symbol: a.clone(),
                with,
            });
        }
    }
    Ok(())
}

pub fn compile_trs(tm: &TuringMachine) -> Result<Trs, EncodeError> {
    Ok(CompiledMachine::new(tm)?.trs)
}

pub fn encode_config(tm: &TuringMachine, k: &Configuration) -> Result<Term, EncodeError> {
    Ok(CompiledMachine::new(tm)?.encode(k))
}

pub fn decode_term(tm: &TuringMachine, t: &Term) -> Result<Option<Configuration>, EncodeError> {
    Ok(CompiledMachine::new(tm)?.decode(t))
}

pub fn simulation_trace(
    tm: &TuringMachine,
    k: &Configuration,
    n: u64,
) -> Result<RewriteTrace, EncodeError> {
    CompiledMachine::new(tm)?.simulation_trace(k, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::term::{one_step_successors, parse_term};

    fn parse(c: &CompiledMachine, s: &str) -> Term {
        parse_term(s, c.trs().signature()).unwrap()
    }

    fn rules_text(c: &CompiledMachine) -> Vec<String> {
        c.trs().rules().iter().map(|r| r.to_string()).collect()
    }

    #[test]
    fn halt1_rules() {
        let c = CompiledMachine::new(&halt1()).unwrap();
        assert_eq!(
            rules_text(&c),
            vec![
                "st_s(xs,nil) -> st_s(xs,cons(blank,nil))",
                "st_s(nil,ys) -> st_s(cons(blank,nil),ys)",
                "st_e(xs,nil) -> st_e(xs,cons(blank,nil))",
                "st_e(nil,ys) -> st_e(cons(blank,nil),ys)",
                "st_s(cons(blank,l),cons(x,r)) -> st_e(cons(x,cons(blank,l)),r)",
                "st_e(x,y) -> term",
                "init -> st_s(nil,nil)",
            ]
        );
        assert_eq!(c.rule_kind(4), Some(&RuleKind::Transition { state: "s".into(), symbol: "_".into() }));
    }

    #[test]
    fn loop2_left_move_rule() {
        let c = CompiledMachine::new(&loop2()).unwrap();
        // 2*3 padding rules, then δ(s,_), δ(t,_)
        assert_eq!(c.trs().len(), 2 * 3 + 2 + 2);
        assert_eq!(
            c.trs().rules()[7].to_string(),
            "st_t(cons(blank,l),cons(x,r)) -> st_s(l,cons(blank,cons(x,r)))"
        );
    }

    #[test]
    fn rule_count_formula() {
        for tm in [halt1(), loop1(), loop2(), count3()] {
            let c = CompiledMachine::new(&tm).unwrap();
            assert_eq!(c.trs().len(), 2 * tm.states.len() + tm.delta.len() + 2);
        }
    }

    #[test]
    fn compiled_successors_of_init_and_start() {
        let c = CompiledMachine::new(&halt1()).unwrap();
        let succ = one_step_successors(c.trs(), &init_term());
        assert_eq!(succ, vec![parse(&c, "st_s(nil,nil)")]);
        let succ = one_step_successors(c.trs(), &parse(&c, "st_s(nil,nil)"));
        assert_eq!(
            succ,
            vec![parse(&c, "st_s(nil,cons(blank,nil))"), parse(&c, "st_s(cons(blank,nil),nil)")]
        );
        assert!(one_step_successors(c.trs(), &term_term()).is_empty());
    }

    #[test]
    fn name_collisions_are_rejected() {
        let mut tm = count3();
        tm.alphabet[1] = "nil".into();
        for act in tm.delta.values_mut() {
            act.write = "nil".into();
        }
        tm.delta = tm
            .delta
            .into_iter()
            .map(|((q, a), act)| ((q, if a == "one" { "nil".into() } else { a }), act))
            .collect();
        assert!(tm.validate().is_ok());
        assert!(matches!(
            CompiledMachine::new(&tm).unwrap_err(),
            EncodeError::Collision { .. }
        ));

        let mut tm = halt1();
        tm.alphabet.push("st_s".into());
        tm.delta.insert(("s".into(), "st_s".into()), tm.delta[&("s".into(), "_".into())].clone());
        assert!(matches!(
            CompiledMachine::new(&tm).unwrap_err(),
            EncodeError::Collision { with, .. } if with == "st_s"
        ));

        let mut tm = halt1();
        tm.alphabet.push("0".into());
        tm.delta.insert(("s".into(), "0".into()), tm.delta[&("s".into(), "_".into())].clone());
        assert_eq!(CompiledMachine::new(&tm).unwrap_err(), EncodeError::BadName("0".into()));

        let mut tm = halt1();
        tm.delta.clear();
        assert!(matches!(
            CompiledMachine::new(&tm).unwrap_err(),
            EncodeError::InvalidMachine(_)
        ));
    }

    #[test]
    fn encoding_examples() {
        let tm = machine(
            &["s", "e"],
            &["_", "a", "c"],
            &[
                ("s", "_", "e", Direction::Right, "_"),
                ("s", "a", "e", Direction::Right, "a"),
                ("s", "c", "e", Direction::Right, "c"),
            ],
        );
        let c = CompiledMachine::new(&tm).unwrap();
        assert_eq!(c.encode(&tm.initial()).to_string(), "st_s(nil,nil)");
        assert_eq!(c.encode(&Configuration::new("e", 1, [], "_")).to_string(), "st_e(nil,nil)");
        let k = Configuration::new(
            "s",
            0,
            [(BigInt::from(0), "a".to_string()), (BigInt::from(1), "c".to_string())],
            "_",
        );
        assert_eq!(c.encode(&k).to_string(), "st_s(cons(a,nil),cons(c,nil))");
        // interior blanks survive, trailing ones do not
        let k = Configuration::new(
            "s",
            5,
            [(BigInt::from(3), "a".to_string()), (BigInt::from(8), "c".to_string())],
            "_",
        );
        assert_eq!(
            c.encode(&k).to_string(),
            "st_s(cons(blank,cons(blank,cons(a,nil))),cons(blank,cons(blank,cons(c,nil))))"
        );
        assert!(c.decode(&c.encode(&k)).unwrap().equivalent(&k));
    }

    #[test]
    fn decoding_examples() {
        let c = CompiledMachine::new(&halt1()).unwrap();
        let blank_s = Configuration::new("s", 0, [], "_");
        assert_eq!(c.decode(&parse(&c, "st_s(nil,nil)")), Some(blank_s.clone()));
        assert_eq!(c.decode(&parse(&c, "st_s(cons(blank,nil),nil)")), Some(blank_s));
        assert_eq!(c.decode(&term_term()), None);
        assert_eq!(c.decode(&init_term()), None);
        assert_eq!(c.decode(&parse(&c, "st_s(cons(nil,nil),nil)")), None);
        assert_eq!(c.decode(&parse(&c, "cons(nil,nil)")), None);
        assert_eq!(c.decode(&Term::app("st_q", vec![nil(), nil()])), None);
        assert_eq!(c.decode(&Term::app("st_s", vec![v("x"), nil()])), None);
    }

    #[test]
    fn halt1_simulation_trace() {
        let tm = halt1();
        let c = CompiledMachine::new(&tm).unwrap();
        let tr = c.simulation_trace(&tm.initial(), 1).unwrap();
        let shown: Vec<String> = tr.terms().iter().map(|t| t.to_string()).collect();
        assert_eq!(
            shown,
            vec![
                "st_s(nil,nil)",
                "st_s(cons(blank,nil),nil)",
                "st_s(cons(blank,nil),cons(blank,nil))",
                "st_e(cons(blank,cons(blank,nil)),nil)",
            ]
        );
        assert_eq!(tr.replay(c.trs()), Ok(()));
        let empty = c.simulation_trace(&tm.initial(), 0).unwrap();
        assert_eq!(empty.terms(), &[c.encode(&tm.initial())]);
        assert_eq!(
            c.simulation_trace(&tm.initial(), 2).unwrap_err(),
            EncodeError::HaltedEarly { halted_after: 1, requested: 2 }
        );
    }

    #[test]
    fn loop2_simulation_returns_home() {
        let tm = loop2();
        let c = CompiledMachine::new(&tm).unwrap();
        let tr = c.simulation_trace(&tm.initial(), 2).unwrap();
        assert_eq!(tr.replay(c.trs()), Ok(()));
        assert_eq!(c.decode(tr.last()), Some(tm.initial()));
        assert!(tr.terms().iter().all(Term::is_ground));
    }
}
