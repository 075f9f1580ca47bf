//! Deterministic single-tape Turing machines over a two-way infinite tape.
//!
//! A run always starts from the all-blank tape with the head at position 0 in
//! the start state. Positions are unbounded integers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Left,
    Right,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(match self {
            Direction::Left => "L",
            Direction::Right => "R",
        })
    }
}

/// Right-hand side of a transition: next state, head move, written symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Action {
    pub next: String,
    pub direction: Direction,
    pub write: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMachine {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub blank: String,
    pub start: String,
    pub final_state: String,
    pub delta: BTreeMap<(String, String), Action>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Defect {
    #[error("state `{0}` listed twice")]
    DuplicateState(String),
    #[error("symbol `{0}` listed twice")]
    DuplicateSymbol(String),
    #[error("blank symbol `{0}` is not in the alphabet")]
    BlankNotInAlphabet(String),
    #[error("start state `{0}` is not a state")]
    StartNotAState(String),
    #[error("final state `{0}` is not a state")]
    FinalNotAState(String),
    #[error("delta undefined at ({0},{1})")]
    Undefined(String, String),
    #[error("delta defined at final state: ({0},{1})")]
    DefinedAtFinal(String, String),
    #[error("delta entry ({0},{1}) mentions unknown state `{2}`")]
    UnknownState(String, String, String),
    #[error("delta entry ({0},{1}) mentions unknown symbol `{2}`")]
    UnknownSymbol(String, String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid machine: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct InvalidMachine(pub Vec<Defect>);

impl TuringMachine {
    /// Lists every violated well-formedness clause; empty means valid.
    pub fn defects(&self) -> Vec<Defect> {
        let mut out = Vec::new();
        for (i, q) in self.states.iter().enumerate() {
            if self.states[..i].contains(q) {
                out.push(Defect::DuplicateState(q.clone()));
            }
        }
        for (i, a) in self.alphabet.iter().enumerate() {
            if self.alphabet[..i].contains(a) {
                out.push(Defect::DuplicateSymbol(a.clone()));
            }
        }
        if !self.alphabet.contains(&self.blank) {
            out.push(Defect::BlankNotInAlphabet(self.blank.clone()));
        }
        if !self.states.contains(&self.start) {
            out.push(Defect::StartNotAState(self.start.clone()));
        }
        if !self.states.contains(&self.final_state) {
            out.push(Defect::FinalNotAState(self.final_state.clone()));
        }
        for q in self.states.iter().filter(|q| **q != self.final_state) {
            for a in &self.alphabet {
                if !self.delta.contains_key(&(q.clone(), a.clone())) {
                    out.push(Defect::Undefined(q.clone(), a.clone()));
                }
            }
        }
        for ((q, a), act) in &self.delta {
            if *q == self.final_state {
                out.push(Defect::DefinedAtFinal(q.clone(), a.clone()));
            }
            for s in [q, &act.next] {
                if !self.states.contains(s) {
                    out.push(Defect::UnknownState(q.clone(), a.clone(), s.clone()));
                }
            }
            for s in [a, &act.write] {
                if !self.alphabet.contains(s) {
                    out.push(Defect::UnknownSymbol(q.clone(), a.clone(), s.clone()));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), InvalidMachine> {
        let d = self.defects();
        if d.is_empty() {
            Ok(())
        } else {
            Err(InvalidMachine(d))
        }
    }

    /// δ entries in canonical order: states as listed, then alphabet as
    /// listed.
    pub fn transitions(&self) -> Vec<(&str, &str, &Action)> {
        let mut out = Vec::new();
        for q in &self.states {
            for a in &self.alphabet {
                if let Some(act) = self.delta.get(&(q.clone(), a.clone())) {
                    out.push((q.as_str(), a.as_str(), act));
                }
            }
        }
        out
    }

    pub fn action(&self, state: &str, symbol: &str) -> Option<&Action> {
        self.delta.get(&(state.to_string(), symbol.to_string()))
    }

    pub fn initial(&self) -> Configuration {
        Configuration {
            state: self.start.clone(),
            position: BigInt::from(0),
            tape: BTreeMap::new(),
        }
    }

    /// The ⊢ relation as a partial function. `None` at the final state (or
    /// when δ has no entry, which a valid machine rules out).
    pub fn step(&self, k: &Configuration) -> Option<Configuration> {
        if k.state == self.final_state {
            return None;
        }
        let read = k.read(&self.blank);
        let act = self.action(&k.state, read)?;
        let mut tape = k.tape.clone();
        if act.write == self.blank {
            tape.remove(&k.position);
        } else {
            tape.insert(k.position.clone(), act.write.clone());
        }
        let position = match act.direction {
            Direction::Right => &k.position + 1,
            Direction::Left => &k.position - 1,
        };
        Some(Configuration {
            state: act.next.clone(),
            position,
            tape,
        })
    }

    /// Iterates ⊢ from the initial configuration for at most `max_steps`
    /// steps, detecting exact configuration recurrences.
    pub fn run(&self, max_steps: u64) -> Result<RunOutcome, InvalidMachine> {
        self.validate()?;
        let mut seen: HashMap<Configuration, u64> = HashMap::new();
        let mut k = self.initial();
        let mut steps = 0u64;
        loop {
            if k.state == self.final_state {
                return Ok(RunOutcome::Halted { steps, config: k });
            }
            if let Some(&first) = seen.get(&k) {
                return Ok(RunOutcome::Cycled {
                    prefix: first,
                    period: steps - first,
                });
            }
            if steps == max_steps {
                return Ok(RunOutcome::Exceeded { budget: max_steps });
            }
            let next = self.step(&k).expect("valid machine steps outside the final state");
            seen.insert(k, steps);
            k = next;
            steps += 1;
        }
    }

    /// `K_S, K_1, ..., K_m` where `m ≤ max_steps` and the run stops early at
    /// the final state.
    pub fn computation(&self, max_steps: u64) -> Vec<Configuration> {
        let mut out = vec![self.initial()];
        while (out.len() as u64) <= max_steps {
            match self.step(out.last().unwrap()) {
                Some(next) => out.push(next),
                None => break,
            }
        }
        out
    }
}

/// `⟨q, p, b⟩`. The tape stores non-blank cells only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: String,
    pub position: BigInt,
    tape: BTreeMap<BigInt, String>,
}

impl Configuration {
    /// Builds a configuration, dropping cells that hold `blank`.
    pub fn new(
        state: impl Into<String>,
        position: impl Into<BigInt>,
        cells: impl IntoIterator<Item = (BigInt, String)>,
        blank: &str,
    ) -> Configuration {
        Configuration {
            state: state.into(),
            position: position.into(),
            tape: cells.into_iter().filter(|(_, s)| s != blank).collect(),
        }
    }

    pub fn read<'a>(&'a self, blank: &'a str) -> &'a str {
        self.symbol_at(&self.position, blank)
    }

    pub fn symbol_at<'a>(&'a self, p: &BigInt, blank: &'a str) -> &'a str {
        self.tape.get(p).map(String::as_str).unwrap_or(blank)
    }

    /// Non-blank cells in increasing position order.
    pub fn cells(&self) -> impl Iterator<Item = (&BigInt, &str)> {
        self.tape.iter().map(|(p, s)| (p, s.as_str()))
    }

    /// Same configuration translated so the head is at position 0.
    pub fn normalized(&self) -> Configuration {
        let shift = &self.position;
        Configuration {
            state: self.state.clone(),
            position: BigInt::from(0),
            tape: self.tape.iter().map(|(p, s)| (p - shift, s.clone())).collect(),
        }
    }

    /// Equality up to translation of the tape.
    pub fn equivalent(&self, other: &Configuration) -> bool {
        self.normalized() == other.normalized()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "<{}, {}, {{", self.state, self.position)?;
        for (i, (p, s)) in self.tape.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:{}", p, s)?;
        }
        f.write_str("}>")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    /// The final state was reached after `steps` steps.
    Halted { steps: u64, config: Configuration },
    /// `K_{prefix} = K_{prefix + period}`; the machine never halts.
    Cycled { prefix: u64, period: u64 },
    /// Neither halted nor repeated within `budget` steps.
    Exceeded { budget: u64 },
}
