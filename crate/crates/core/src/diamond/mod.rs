//! Diamond-like shapes and their checking.
//!
//! A shape with labels `k_1..k_n` states: whenever `x_0 -> x_i` for every
//! `i`, some `y` has `x_i ->^{k_i} y` for every `i`. Labels:
//!
//! | label | steps  |
//! |-------|--------|
//! | `1`   | exactly one |
//! | `=`   | zero or one |
//! | `+`   | one or more |
//! | `*`   | zero or more |
//!
//! The branches `x_1..x_n` range over successors of the peak independently,
//! so repeated successors are part of the hypothesis.

mod check;
mod derived;
pub mod oracle;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use check::{
    check_shape_from_seed, check_shape_in, check_shape_on_trs, joinable, joinable_in, Checker, CheckOutcome, Counterexample,
    CounterexampleBasis, Evidence, Exactness, Joinability, StepRelation,
};
pub use derived::{check_shape_direct, check_shape_on_derived, cross_check, outcome_report, CheckError, CrossCheck};
pub use oracle::{oracle_admits, oracle_check_peak, oracle_joinable, oracle_step, Oracle, OracleVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShapeLabel {
    Star,
    Plus,
    Eq,
    One,
}

impl ShapeLabel {
    pub const ALL: [ShapeLabel; 4] = [ShapeLabel::One, ShapeLabel::Eq, ShapeLabel::Plus, ShapeLabel::Star];

    /// Whether zero steps satisfy the label.
    pub fn allows_zero(self) -> bool {
        matches!(self, ShapeLabel::Star | ShapeLabel::Eq)
    }

    /// Whether a join using exactly `steps` steps satisfies the label.
    pub fn admits(self, steps: u64) -> bool {
        match self {
            ShapeLabel::One => steps == 1,
            ShapeLabel::Eq => steps <= 1,
            ShapeLabel::Plus => steps >= 1,
            ShapeLabel::Star => true,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            ShapeLabel::Star => "*",
            ShapeLabel::Plus => "+",
            ShapeLabel::Eq => "=",
            ShapeLabel::One => "1",
        }
    }
}

impl fmt::Display for ShapeLabel {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShapeError {
    #[error("empty shape")]
    Empty,
    #[error("unknown shape label `{0}` (expected one of * + = 1)")]
    BadToken(String),
    #[error("unknown shape name `{0}`")]
    UnknownName(String),
    #[error("{branches} branch(es) but {labels} label(s)")]
    ArityMismatch { branches: usize, labels: usize },
}

/// Labels of a diamond-like property; the branch count is their number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiamondShape {
    labels: Vec<ShapeLabel>,
}

pub const NAMED_SHAPES: [(&str, &str); 5] = [
    ("local-confluence", "*,*"),
    ("strong-confluence", "*,="),
    ("diamond", "1,1"),
    ("subcommutative", "=,="),
    ("successor", "1"),
];

impl DiamondShape {
    pub fn new(labels: Vec<ShapeLabel>) -> Result<DiamondShape, ShapeError> {
        if labels.is_empty() {
            return Err(ShapeError::Empty);
        }
        Ok(DiamondShape { labels })
    }

    pub fn labels(&self) -> &[ShapeLabel] {
        &self.labels
    }

    pub fn branches(&self) -> usize {
        self.labels.len()
    }

    /// True when every instance holds for any relation: one branch whose
    /// label allows zero steps (take `y = x_1`).
    pub fn is_trivial(&self) -> bool {
        self.labels.len() == 1 && self.labels[0].allows_zero()
    }

    pub fn named() -> Vec<(&'static str, DiamondShape)> {
        NAMED_SHAPES
            .iter()
            .map(|(n, s)| (*n, parse_labels(s).expect("valid named shape")))
            .collect()
    }
}

impl fmt::Display for DiamondShape {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let parts: Vec<&str> = self.labels.iter().map(|l| l.token()).collect();
        f.write_str(&parts.join(","))
    }
}

fn parse_labels(text: &str) -> Result<DiamondShape, ShapeError> {
    if text.trim().is_empty() {
        return Err(ShapeError::Empty);
    }
    let labels = text
        .split(',')
        .map(|tok| match tok.trim() {
            "*" => Ok(ShapeLabel::Star),
            "+" => Ok(ShapeLabel::Plus),
            "=" => Ok(ShapeLabel::Eq),
            "1" => Ok(ShapeLabel::One),
            other => Err(ShapeError::BadToken(other.to_string())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    DiamondShape::new(labels)
}

/// A named shape (`local-confluence`, `strong-confluence`, `diamond`,
/// `subcommutative`, `successor`) or a comma-separated label list.
pub fn parse_shape(text: &str) -> Result<DiamondShape, ShapeError> {
    let t = text.trim();
    if let Some((_, spec)) = NAMED_SHAPES.iter().find(|(n, _)| *n == t) {
        return parse_labels(spec);
    }
    if t.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
        return Err(ShapeError::UnknownName(t.to_string()));
    }
    parse_labels(t)
}

impl FromStr for DiamondShape {
    type Err = ShapeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_shape(s)
    }
}
