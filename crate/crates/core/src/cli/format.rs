//! Machine files and rewrite-system files.
//!
//! Machine file, one key per line, `#` starts a comment:
//!
//! ```text
//! states: s t e
//! alphabet: _ one
//! blank: _
//! start: s
//! final: e
//! delta: s _ -> t R one
//! ```
//!
//! The blank may be omitted from `alphabet:`; it is then put first.
//!
//! Rewrite-system file (COPS style), one rule per line:
//!
//! ```text
//! (VAR x y)
//! (RULES
//!   f(x,y) -> x
//!   a -> b
//! )
//! ```
//!
//! `(COMMENT ...)` blocks are skipped.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::term::{parse_term_extending, Rule, Signature, Trs, TrsError};
use crate::turing::{Action, Direction, TuringMachine};

/// A diagnostic naming the file and the 1-based line (0 when the problem is
/// not tied to a line).
#[derive(Debug, Error, PartialEq, Eq)]
pub struct FormatError {
    pub file: String,
    pub line: usize,
    pub message: String,
}

impl FormatError {
    fn at(file: &str, line: usize, message: impl Into<String>) -> FormatError {
        FormatError {
            file: file.to_string(),
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}: {}", self.file, self.message)
        } else {
            write!(f, "{}:{}: {}", self.file, self.line, self.message)
        }
    }
}

const TM_KEYS: [&str; 5] = ["states", "alphabet", "blank", "start", "final"];

/// Parses a machine file. `file` is only used in diagnostics. The machine
/// is validated; the first defect is reported.
pub fn parse_machine(text: &str, file: &str) -> Result<TuringMachine, FormatError> {
    let mut fields: BTreeMap<&str, (usize, Vec<String>)> = BTreeMap::new();
    let mut delta = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, rest)) = content.split_once(':') else {
            return Err(FormatError::at(file, line, "expected `key: value`"));
        };
        let key = key.trim();
        let words: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        if key == "delta" {
            let (q, a, action) = parse_delta(&words)
                .ok_or_else(|| FormatError::at(file, line, "expected `delta: q a -> q' L|R b`"))?;
            if delta.insert((q.clone(), a.clone()), action).is_some() {
                return Err(FormatError::at(file, line, format!("duplicate delta entry for ({},{})", q, a)));
            }
            continue;
        }
        let Some(&key) = TM_KEYS.iter().find(|&&k| k == key) else {
            return Err(FormatError::at(file, line, format!("unknown key `{}`", key)));
        };
        if let Some((first, _)) = fields.get(key) {
            return Err(FormatError::at(
                file,
                line,
                format!("`{}` already given on line {}", key, first),
            ));
        }
        let single = !matches!(key, "states" | "alphabet");
        if words.is_empty() || (single && words.len() != 1) {
            let want = if single { "exactly one name" } else { "at least one name" };
            return Err(FormatError::at(file, line, format!("`{}` takes {}", key, want)));
        }
        fields.insert(key, (line, words));
    }

    let mut take = |key: &str| -> Result<Vec<String>, FormatError> {
        fields
            .remove(key)
            .map(|(_, w)| w)
            .ok_or_else(|| FormatError::at(file, 0, format!("missing `{}:`", key)))
    };
    let states = take("states")?;
    let mut alphabet = take("alphabet")?;
    let blank = take("blank")?.remove(0);
    let start = take("start")?.remove(0);
    let final_state = take("final")?.remove(0);
    if !alphabet.contains(&blank) {
        alphabet.insert(0, blank.clone());
    }
    let tm = TuringMachine {
        states,
        alphabet,
        blank,
        start,
        final_state,
        delta,
    };
    if let Some(d) = tm.defects().first() {
        return Err(FormatError::at(file, 0, d.to_string()));
    }
    Ok(tm)
}

fn parse_delta(words: &[String]) -> Option<(String, String, Action)> {
    let [q, a, arrow, next, dir, write] = words else {
        return None;
    };
    if arrow != "->" {
        return None;
    }
    let direction = match dir.as_str() {
        "L" => Direction::Left,
        "R" => Direction::Right,
        _ => return None,
    };
    Some((
        q.clone(),
        a.clone(),
        Action {
            next: next.clone(),
            direction,
            write: write.clone(),
        },
    ))
}

/// Normalized machine file: fixed key order, transitions in canonical order.
pub fn emit_machine(tm: &TuringMachine) -> String {
    let mut out = String::new();
    out += &format!("states: {}\n", tm.states.join(" "));
    out += &format!("alphabet: {}\n", tm.alphabet.join(" "));
    out += &format!("blank: {}\n", tm.blank);
    out += &format!("start: {}\n", tm.start);
    out += &format!("final: {}\n", tm.final_state);
    for (q, a, act) in tm.transitions() {
        out += &format!("delta: {} {} -> {} {} {}\n", q, a, act.next, act.direction, act.write);
    }
    out
}

struct Block<'a> {
    name: &'a str,
    body: &'a str,
    /// Line on which `body` starts.
    line: usize,
}

fn blocks<'a>(text: &'a str, file: &str) -> Result<Vec<Block<'a>>, FormatError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut iter = text.char_indices().peekable();
    while let Some((i, c)) = iter.next() {
        match c {
            '\n' => line += 1,
            c if c.is_whitespace() => {}
            ';' => {
                // line comment
                while iter.peek().is_some_and(|&(_, c)| c != '\n') {
                    iter.next();
                }
            }
            '(' => {
                let open_line = line;
                let mut depth = 1;
                let mut end = None;
                for (j, c) in iter.by_ref() {
                    match c {
                        '\n' => line += 1,
                        '(' => depth += 1,
                        ')' => {
                            depth -= 1;
                            if depth == 0 {
                                end = Some(j);
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                let end = end.ok_or_else(|| FormatError::at(file, open_line, "unbalanced `(`"))?;
                let inner = &text[i + 1..end];
                let name_len = inner
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(inner.len());
                out.push(Block {
                    name: &inner[..name_len],
                    body: &inner[name_len..],
                    line: open_line,
                });
            }
            _ => return Err(FormatError::at(file, line, format!("unexpected `{}` outside a block", c))),
        }
    }
    Ok(out)
}

/// Parses a COPS-style rewrite-system file. Function symbols and their
/// arities are inferred from the rules.
pub fn parse_trs(text: &str, file: &str) -> Result<Trs, FormatError> {
    let mut sig = Signature::new();
    let mut rules = Vec::new();
    let mut rule_lines = Vec::new();
    let mut seen_vars = false;
    let mut seen_rules = false;
    for block in blocks(text, file)? {
        match block.name {
            "VAR" => {
                if seen_vars || seen_rules {
                    return Err(FormatError::at(file, block.line, "(VAR ...) must come once, before (RULES ...)"));
                }
                seen_vars = true;
                for v in block.body.split_whitespace() {
                    sig.add_variable(v)
                        .map_err(|e| FormatError::at(file, block.line, e.to_string()))?;
                }
            }
            "RULES" => {
                if seen_rules {
                    return Err(FormatError::at(file, block.line, "second (RULES ...) block"));
                }
                seen_rules = true;
                for (k, raw) in block.body.split('\n').enumerate() {
                    let line = block.line + k;
                    let content = raw.trim();
                    if content.is_empty() {
                        continue;
                    }
                    let Some((lhs, rhs)) = content.split_once("->") else {
                        return Err(FormatError::at(file, line, "expected `lhs -> rhs`"));
                    };
                    let side = |s: &str, sig: &mut Signature| {
                        parse_term_extending(s.trim(), sig).map_err(|e| FormatError::at(file, line, e.to_string()))
                    };
                    let lhs = side(lhs, &mut sig)?;
                    let rhs = side(rhs, &mut sig)?;
                    rules.push(Rule::new(lhs, rhs));
                    rule_lines.push(line);
                }
            }
            "COMMENT" => {}
            other => {
                return Err(FormatError::at(file, block.line, format!("unsupported block `({}`", other)));
            }
        }
    }
    if !seen_rules {
        return Err(FormatError::at(file, 0, "missing (RULES ...) block"));
    }
    Trs::new(sig, rules).map_err(|e| {
        let index = match &e {
            TrsError::VariableLhs { index }
            | TrsError::FreshRhsVariable { index, .. }
            | TrsError::Undeclared { index, .. }
            | TrsError::Signature { index, .. } => *index,
        };
        let line = rule_lines.get(index).copied().unwrap_or(0);
        FormatError::at(file, line, e.to_string())
    })
}

/// Canonical text of a rewrite system; `parse_trs` of it gives back the
/// same rules and variables.
pub fn emit_trs(trs: &Trs) -> String {
    let vars: Vec<&str> = trs.signature().variables().collect();
    let mut out = String::new();
    if vars.is_empty() {
        out += "(VAR)\n";
    } else {
        out += &format!("(VAR {})\n", vars.join(" "));
    }
    out += "(RULES\n";
    for r in trs.rules() {
        out += &format!("  {}\n", r);
    }
    out += ")\n";
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::encode::compile_trs;

    const HALT1: &str = "\
# one step then halt
states: s e
alphabet: _
blank: _
start: s
final: e
delta: s _ -> e R _
";

    #[test]
    fn machine_file_round_trip() {
        let tm = parse_machine(HALT1, "halt1.tm").unwrap();
        assert_eq!(tm, halt1());
        let once = emit_machine(&tm);
        assert_eq!(emit_machine(&parse_machine(&once, "x").unwrap()), once);
        for tm in [loop1(), loop2(), count3()] {
            assert_eq!(parse_machine(&emit_machine(&tm), "x").unwrap(), tm);
        }
    }

    #[test]
    fn blank_is_added_to_alphabet() {
        let text = "states: s e\nalphabet: one\nblank: _\nstart: s\nfinal: e\n\
                    delta: s _ -> e R one\ndelta: s one -> e L _\n";
        let tm = parse_machine(text, "m").unwrap();
        assert_eq!(tm.alphabet, vec!["_", "one"]);
        assert!(emit_machine(&tm).contains("alphabet: _ one\n"));
    }

    #[test]
    fn machine_file_errors() {
        let dup = format!("{HALT1}delta: s _ -> s L _\n");
        let e = parse_machine(&dup, "dup.tm").unwrap_err();
        assert_eq!((e.file.as_str(), e.line), ("dup.tm", 8));
        assert!(e.message.contains("duplicate"));

        let e = parse_machine("states: s e\nwhat: x\n", "m.tm").unwrap_err();
        assert_eq!(e.to_string(), "m.tm:2: unknown key `what`");

        let e = parse_machine(&HALT1.replace("R _", "X _"), "m.tm").unwrap_err();
        assert_eq!(e.line, 7);

        let e = parse_machine(&HALT1.replace("delta: s _ -> e R _\n", ""), "m.tm").unwrap_err();
        assert_eq!(e.to_string(), "m.tm: delta undefined at (s,_)");

        let e = parse_machine("states: s\n", "m.tm").unwrap_err();
        assert_eq!(e.to_string(), "m.tm: missing `alphabet:`");
    }

    #[test]
    fn trs_file_round_trip() {
        let text = "(VAR x y)\n(RULES\n  f(x,y) -> x\n  a -> b\n)\n";
        let trs = parse_trs(text, "r.trs").unwrap();
        assert_eq!(trs.len(), 2);
        assert_eq!(emit_trs(&trs), text);
        for tm in [halt1(), loop2(), count3()] {
            let once = emit_trs(&compile_trs(&tm).unwrap());
            let again = emit_trs(&parse_trs(&once, "c.trs").unwrap());
            assert_eq!(once, again);
        }
    }

    #[test]
    fn trs_file_accepts_comments_and_loose_layout() {
        let text = "; header\n(COMMENT from somewhere (nested))\n(VAR\n x)\n(RULES\n\n f(x)->x\n)\n";
        let trs = parse_trs(text, "r.trs").unwrap();
        assert_eq!(emit_trs(&trs), "(VAR x)\n(RULES\n  f(x) -> x\n)\n");
        let empty = parse_trs("(RULES\n)", "e.trs").unwrap();
        assert!(empty.is_empty());
        assert_eq!(emit_trs(&empty), "(VAR)\n(RULES\n)\n");
    }

    #[test]
    fn trs_file_errors() {
        let e = parse_trs("(VAR x)\n(RULES\n  f(x) -> x\n  g(x,) -> x\n)\n", "bad.trs").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.to_string().starts_with("bad.trs:4: "));
        let e = parse_trs("(VAR x y)\n(RULES\n  f(x) -> y\n)\n", "bad.trs").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_trs("(VAR x)\n(RULES\n  x -> a\n)\n", "bad.trs").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_trs("(RULES\n  f(a) -> a\n  f(a,b) -> a\n)\n", "bad.trs").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_trs("(RULES\n  a -> b\n", "bad.trs").unwrap_err();
        assert_eq!((e.line, e.message.as_str()), (1, "unbalanced `(`"));
        assert!(parse_trs("(VAR x)", "bad.trs").is_err());
        assert!(parse_trs("(STRATEGY INNERMOST)\n(RULES\n)", "bad.trs").is_err());
    }
}
