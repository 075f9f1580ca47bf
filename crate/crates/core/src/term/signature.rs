use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("`{0}` is not a valid identifier")]
    BadIdentifier(String),
    #[error("symbol `{name}` used with arity {found}, declared with arity {declared}")]
    ArityConflict {
        name: String,
        declared: usize,
        found: usize,
    },
    #[error("`{0}` is both a symbol and a variable")]
    SymbolVariableClash(String),
}

/// `[A-Za-z_][A-Za-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Function symbols with fixed arities plus the declared variable names.
/// The two name spaces are disjoint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    symbols: BTreeMap<String, usize>,
    variables: BTreeSet<String>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn add_symbol(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        if !is_identifier(name) {
            return Err(SignatureError::BadIdentifier(name.to_string()));
        }
        if self.variables.contains(name) {
            return Err(SignatureError::SymbolVariableClash(name.to_string()));
        }
        match self.symbols.get(name) {
            Some(&declared) if declared != arity => Err(SignatureError::ArityConflict {
                name: name.to_string(),
                declared,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.symbols.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }

    pub fn add_variable(&mut self, name: &str) -> Result<(), SignatureError> {
        if !is_identifier(name) {
            return Err(SignatureError::BadIdentifier(name.to_string()));
        }
        if self.symbols.contains_key(name) {
            return Err(SignatureError::SymbolVariableClash(name.to_string()));
        }
        self.variables.insert(name.to_string());
        Ok(())
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.symbols.get(name).copied()
    }

    pub fn is_variable(&self, name: &str) -> bool {
        self.variables.contains(name)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols.iter().map(|(name, &arity)| Symbol {
            name: name.clone(),
            arity,
        })
    }

    /// Constants, i.e. the arity-0 slice.
    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.symbols
            .iter()
            .filter(|(_, &a)| a == 0)
            .map(|(n, _)| n.as_str())
    }

    /// Variables in sorted order.
    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.variables.iter().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers() {
        assert!(is_identifier("st_s"));
        assert!(is_identifier("_"));
        assert!(is_identifier("x1"));
        assert!(!is_identifier("1x"));
        assert!(!is_identifier(""));
        assert!(!is_identifier("a-b"));
    }

    #[test]
    fn clashes_and_arity() {
        let mut sig = Signature::new();
        sig.add_symbol("f", 2).unwrap();
        sig.add_symbol("f", 2).unwrap();
        assert!(matches!(
            sig.add_symbol("f", 1),
            Err(SignatureError::ArityConflict { declared: 2, .. })
        ));
        sig.add_variable("x").unwrap();
        assert!(sig.add_symbol("x", 0).is_err());
        assert!(sig.add_variable("f").is_err());
        assert_eq!(sig.constants().count(), 0);
    }
}
