//! First-order terms, substitutions, matching and one-step rewriting.
//!
//! Subjects of rewriting are always ground: rules are matched syntactically
//! against ground terms, so no unification is ever needed.

mod parse;
mod rewrite;
mod signature;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use parse::{parse_term, parse_term_extending, ParseError, ParseErrorKind};
pub use rewrite::{
    apply_substitution, match_pattern, one_step_rewrites, one_step_successors, rewrite_at, Rewrite,
    RewriteTrace, Rule, TraceError, TraceStep, Trs, TrsError,
};
pub use signature::{is_identifier, Signature, SignatureError, Symbol};

/// A first-order term. Applications carry the symbol name; the arity is the
/// length of the argument list and is checked against a [`Signature`] when
/// terms are parsed or assembled into a [`Trs`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Head symbol, `None` for variables.
    pub fn head(&self) -> Option<&str> {
        match self {
            Term::Var(_) => None,
            Term::App(op, _) => Some(op),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    /// Node count.
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Term::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.args().iter().map(Term::depth).max().unwrap_or(0)
    }

    /// Variables in left-to-right order of first occurrence.
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// All positions in pre-order (root first, then arguments left to right).
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_positions(&mut path, &mut out);
        out
    }

    fn collect_positions(&self, path: &mut Vec<usize>, out: &mut Vec<Position>) {
        out.push(Position(path.clone()));
        for (i, a) in self.args().iter().enumerate() {
            path.push(i + 1);
            a.collect_positions(path, out);
            path.pop();
        }
    }

    pub fn subterm(&self, pos: &Position) -> Option<&Term> {
        let mut t = self;
        for &i in &pos.0 {
            t = t.args().get(i.checked_sub(1)?)?;
        }
        Some(t)
    }

    /// Copy of `self` with the subterm at `pos` replaced. `None` if `pos` is
    /// not a position of `self`.
    pub fn replace(&self, pos: &Position, with: Term) -> Option<Term> {
        fn go(t: &Term, path: &[usize], with: Term) -> Option<Term> {
            match path.split_first() {
                None => Some(with),
                Some((&i, rest)) => match t {
                    Term::Var(_) => None,
                    Term::App(op, args) => {
                        let idx = i.checked_sub(1)?;
                        let child = go(args.get(idx)?, rest, with)?;
                        let mut args = args.clone();
                        args[idx] = child;
                        Some(Term::App(op.clone(), args))
                    }
                },
            }
        }
        go(self, &pos.0, with)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(op, args) => {
                f.write_str(op)?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{}", a)?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// Canonical text of a term: no whitespace, `op(arg,...)`.
pub fn format_term(t: &Term) -> String {
    t.to_string()
}

/// A position as a path of 1-based argument indices; the empty path is the
/// root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}

/// Finite mapping from variable names to terms. Application is simultaneous.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution(BTreeMap<String, Term>);

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.0.get(var)
    }

    pub fn insert(&mut self, var: impl Into<String>, t: Term) -> Option<Term> {
        self.0.insert(var.into(), t)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.0.iter()
    }
}

impl FromIterator<(String, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Term)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}
