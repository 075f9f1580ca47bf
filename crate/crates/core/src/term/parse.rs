use thiserror::Error;

use super::{Signature, SignatureError, Term};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{kind} at column {column}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unexpected trailing input")]
    Trailing,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{name}` expects {expected} argument(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("variable `{0}` cannot take arguments")]
    AppliedVariable(String),
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

/// Parses `term := ident | ident "(" term ("," term)* ")"` against a fixed
/// signature. Identifiers declared as variables become [`Term::Var`].
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let mut p = Parser::new(text);
    let t = p.term(&mut Resolve::Fixed(sig))?;
    p.finish()?;
    Ok(t)
}

/// Like [`parse_term`] but unknown symbols are added to `sig` with the arity
/// at which they are first used.
pub fn parse_term_extending(text: &str, sig: &mut Signature) -> Result<Term, ParseError> {
    let mut p = Parser::new(text);
    let t = p.term(&mut Resolve::Extend(sig))?;
    p.finish()?;
    Ok(t)
}

enum Resolve<'a> {
    Fixed(&'a Signature),
    Extend(&'a mut Signature),
}

impl Resolve<'_> {
    fn sig(&self) -> &Signature {
        match self {
            Resolve::Fixed(s) => s,
            Resolve::Extend(s) => s,
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn err(&self, at: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            column: at + 1,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == '_' => self.pos += 1,
            _ => return Err(self.err(start, ParseErrorKind::Expected("identifier"))),
        }
        while let Some(c) = self.chars.get(self.pos) {
            if c.is_ascii_alphanumeric() || *c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn term(&mut self, resolve: &mut Resolve) -> Result<Term, ParseError> {
        let (start, name) = self.ident()?;
        let mut args = Vec::new();
        if self.peek() == Some('(') {
            self.pos += 1;
            loop {
                args.push(self.term(resolve)?);
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err(self.pos, ParseErrorKind::Expected("`,` or `)`"))),
                }
            }
        }
        if resolve.sig().is_variable(&name) {
            if !args.is_empty() {
                return Err(self.err(start, ParseErrorKind::AppliedVariable(name)));
            }
            return Ok(Term::Var(name));
        }
        match resolve {
            Resolve::Fixed(sig) => match sig.arity(&name) {
                None => return Err(self.err(start, ParseErrorKind::UnknownSymbol(name))),
                Some(expected) if expected != args.len() => {
                    return Err(self.err(
                        start,
                        ParseErrorKind::Arity {
                            name,
                            expected,
                            found: args.len(),
                        },
                    ))
                }
                Some(_) => {}
            },
            Resolve::Extend(sig) => {
                if let Err(e) = sig.add_symbol(&name, args.len()) {
                    let kind = match e {
                        SignatureError::ArityConflict {
                            name,
                            declared,
                            found,
                        } => ParseErrorKind::Arity {
                            name,
                            expected: declared,
                            found,
                        },
                        other => ParseErrorKind::Signature(other),
                    };
                    return Err(self.err(start, kind));
                }
            }
        }
        Ok(Term::App(name, args))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.err(self.pos, ParseErrorKind::Trailing)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::format_term;

    fn list_sig() -> Signature {
        let mut sig = Signature::new();
        for (n, a) in [("init", 0), ("nil", 0), ("blank", 0), ("cons", 2), ("st_s", 2)] {
            sig.add_symbol(n, a).unwrap();
        }
        sig.add_variable("x").unwrap();
        sig
    }

    #[test]
    fn parses_constants_and_applications() {
        let sig = list_sig();
        assert_eq!(parse_term("init", &sig).unwrap(), Term::constant("init"));
        assert_eq!(
            parse_term("st_s(nil,nil)", &sig).unwrap(),
            Term::app("st_s", vec![Term::constant("nil"), Term::constant("nil")])
        );
        let l = parse_term("cons(blank,cons(blank,nil))", &sig).unwrap();
        assert_eq!(l.size(), 5);
        assert_eq!(format_term(&l), "cons(blank,cons(blank,nil))");
        assert_eq!(parse_term(" cons( x , nil ) ", &sig).unwrap().to_string(), "cons(x,nil)");
        assert!(parse_term("x", &sig).unwrap().is_var());
    }

    #[test]
    fn reports_errors_with_columns() {
        let sig = list_sig();
        let e = parse_term("cons(nil)", &sig).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Arity { expected: 2, found: 1, .. }));
        assert_eq!(e.column, 1);
        let e = parse_term("foo", &sig).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownSymbol("foo".into()));
        let e = parse_term("cons(nil,", &sig).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Expected("identifier"));
        assert_eq!(e.column, 10);
        let e = parse_term("nil nil", &sig).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Trailing);
        assert_eq!(e.column, 5);
        let e = parse_term("x(nil)", &sig).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::AppliedVariable(_)));
        assert!(parse_term("", &sig).is_err());
    }

    #[test]
    fn extending_infers_arities() {
        let mut sig = Signature::new();
        parse_term_extending("f(a,g(b))", &mut sig).unwrap();
        assert_eq!(sig.arity("f"), Some(2));
        assert_eq!(sig.arity("g"), Some(1));
        let e = parse_term_extending("g(a,a)", &mut sig).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Arity { expected: 1, found: 2, .. }));
    }
}
