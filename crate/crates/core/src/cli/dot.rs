//! Graphviz export of an explored reduction graph.

use std::collections::BTreeSet;

use crate::reach::{Budget, ReachGraph};
use crate::term::{Term, Trs};

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Nodes `n0, n1, ...` in discovery order (`n0` is the seed) labeled with
/// their terms; one edge per (source, target, rule) labeled with the 0-based
/// rule index. A comment records truncation.
pub fn graph_to_dot(g: &ReachGraph) -> String {
    let mut out = String::from("digraph reduction {\n");
    if !g.complete() {
        out += &format!("  // truncated: {}\n", g.report());
    }
    for (i, t) in g.nodes().iter().enumerate() {
        out += &format!("  n{} [label={}];\n", i, quote(&t.to_string()));
    }
    let mut seen = BTreeSet::new();
    for e in g.edges() {
        if seen.insert((e.from, e.to, e.rule)) {
            out += &format!("  n{} -> n{} [label=\"{}\"];\n", e.from, e.to, e.rule);
        }
    }
    out += "}\n";
    out
}

pub fn export_graph(trs: &Trs, seed: &Term, budget: &Budget) -> String {
    graph_to_dot(&ReachGraph::explore(trs, seed, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::encode::{compile_trs, init_term};

    #[test]
    fn halt1_graph() {
        let dot = export_graph(&compile_trs(&halt1()).unwrap(), &init_term(), &Budget::default());
        assert!(dot.starts_with("digraph reduction {\n  n0 [label=\"init\"];\n"));
        assert!(dot.contains("  n7 [label=\"term\"];\n"));
        assert!(!dot.contains("truncated"));
        // `term` has no outgoing edge and nothing points back to `init`
        assert!(!dot.contains("n7 ->"));
        assert!(!dot.contains("-> n0 "));
        assert_eq!(dot.matches(" -> ").count(), 9);
    }

    #[test]
    fn loop2_graph_has_a_cycle() {
        let trs = compile_trs(&loop2()).unwrap();
        let g = ReachGraph::explore(&trs, &init_term(), &Budget::default());
        let dot = graph_to_dot(&g);
        assert!(!dot.contains("\"term\""));
        assert!(g.edges().iter().any(|e| e.to <= e.from));
    }

    #[test]
    fn edgeless_graph() {
        let trs = Trs::from_rules(vec![]).unwrap();
        let dot = export_graph(&trs, &Term::constant("a"), &Budget::default());
        assert_eq!(dot, "digraph reduction {\n  n0 [label=\"a\"];\n}\n");
    }

    #[test]
    fn truncation_is_noted() {
        let trs = compile_trs(&loop1()).unwrap();
        let dot = export_graph(&trs, &init_term(), &Budget::new(200, 10, 512).unwrap());
        assert!(dot.contains("// truncated: 10 terms explored"));
    }
}
