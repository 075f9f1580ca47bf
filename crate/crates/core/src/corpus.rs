//! Small reference machines used by tests, examples and the acceptance suite.

use crate::turing::{Action, Direction, TuringMachine};

pub fn machine(states: &[&str], alphabet: &[&str], delta: &[(&str, &str, &str, Direction, &str)]) -> TuringMachine {
    TuringMachine {
        states: states.iter().map(|s| s.to_string()).collect(),
        alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
        blank: alphabet[0].to_string(),
        start: states[0].to_string(),
        final_state: states[states.len() - 1].to_string(),
        delta: delta
            .iter()
            .map(|(q, a, n, d, w)| {
                (
                    (q.to_string(), a.to_string()),
                    Action {
                        next: n.to_string(),
                        direction: *d,
                        write: w.to_string(),
                    },
                )
            })
            .collect(),
    }
}

/// One right move into the final state.
pub fn halt1() -> TuringMachine {
    machine(&["s", "e"], &["_"], &[("s", "_", "e", Direction::Right, "_")])
}

/// Right, left, right, ... forever between two cells.
pub fn loop2() -> TuringMachine {
    machine(
        &["s", "t", "e"],
        &["_"],
        &[
            ("s", "_", "t", Direction::Right, "_"),
            ("t", "_", "s", Direction::Left, "_"),
        ],
    )
}

/// Walks right forever over blanks.
pub fn loop1() -> TuringMachine {
    machine(&["s", "e"], &["_"], &[("s", "_", "s", Direction::Right, "_")])
}

/// Writes three `one`s moving right, then halts.
pub fn count3() -> TuringMachine {
    use Direction::Right;
    machine(
        &["a", "b", "c", "h"],
        &["_", "one"],
        &[
            ("a", "_", "b", Right, "one"),
            ("a", "one", "h", Right, "one"),
            ("b", "_", "c", Right, "one"),
            ("b", "one", "h", Right, "one"),
            ("c", "_", "h", Right, "one"),
            ("c", "one", "h", Right, "one"),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_machine;

    #[test]
    fn machine_files_match_builders() {
        let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/machines");
        for (name, tm) in [("halt1", halt1()), ("loop1", loop1()), ("loop2", loop2()), ("count3", count3())] {
            let path = format!("{dir}/{name}.tm");
            let text = std::fs::read_to_string(&path).unwrap();
            assert_eq!(parse_machine(&text, &path).unwrap(), tm, "{name}");
        }
    }
}
