mod common;

use std::fs;

use serde_json::Value;

use tmdiamond::cli::{parse_trs, Verdict};

use common::{machine_file, run_cli};

fn json(args: &[&str]) -> (i32, Value) {
    let mut args = args.to_vec();
    args.push("--json");
    let (code, out) = run_cli(&args);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

#[test]
fn halting_machine_holds_exactly() {
    let (code, out) = run_cli(&["check", "--machine", &machine_file("halt1"), "--shape", "local-confluence"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("verdict: holds (exact)\n"), "{out}");
}

#[test]
fn looping_machine_has_counterexample_at_init() {
    let (code, v) = json(&["check", "--machine", &machine_file("loop2"), "--shape", "successor"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "counterexample");
    assert_eq!(v["exact"], true);
    assert_eq!(v["counterexample"]["peak"], "init");
    assert_eq!(v["traces"][0]["name"], "branch 1");
    assert_eq!(v["traces"][0]["terms"][0], "init");
}

#[test]
fn wandering_machine_is_unknown() {
    let (code, out) = run_cli(&[
        "check",
        "--machine",
        &machine_file("loop1"),
        "--shape",
        "diamond",
        "--budget",
        "steps=200",
    ]);
    assert_eq!(code, 2);
    assert!(out.starts_with("verdict: unknown\n"), "{out}");
    assert!(out.contains("hit step limit"));
}

#[test]
fn exit_code_matches_report_verdict() {
    let cases: Vec<Vec<String>> = vec![
        vec!["check".into(), "--machine".into(), machine_file("count3"), "--shape".into(), "1,1,1,1".into()],
        vec!["check".into(), "--machine".into(), machine_file("loop2"), "--shape".into(), "=,=".into(), "--cross-check".into()],
        vec!["check".into(), "--machine".into(), machine_file("loop1"), "--shape".into(), "*".into()],
        vec!["simulate".into(), machine_file("count3")],
        vec!["encode".into(), machine_file("count3"), "--config".into(), "b@1 0=one".into()],
        vec!["check".into(), "/no/such.trs".into(), "--seed".into(), "a".into(), "--shape".into(), "diamond".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, v) = json(&args);
        let verdict: Verdict = match v["verdict"].as_str().unwrap() {
            "success" => Verdict::Success,
            "holds" => Verdict::Holds,
            "counterexample" => Verdict::Counterexample,
            "unknown" => Verdict::Unknown,
            _ => Verdict::Error,
        };
        assert_eq!(code, verdict.exit_code(), "{args:?}");
        assert_eq!(v["exit_code"], code, "{args:?}");
    }
}

#[test]
fn report_schema_keys_are_stable() {
    let (_, v) = json(&["check", "--machine", &machine_file("halt1"), "--shape", "diamond"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = vec![
        "command", "verdict", "exact", "exit_code", "message", "budget", "usage", "certificate",
        "counterexample", "traces", "configurations", "term", "output", "cross_check",
    ];
    expected.sort();
    let mut keys = keys;
    keys.sort();
    assert_eq!(keys, expected);
    assert_eq!(v["certificate"]["kind"], "terminates");
    assert_eq!(v["budget"]["max_rewrite_steps"], 200);
}

#[test]
fn compile_then_work_on_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let trs = dir.path().join("count3.trs");
    let trs = trs.to_str().unwrap();
    let (code, out) = run_cli(&["compile", &machine_file("count3"), "-o", trs]);
    assert_eq!(code, 0, "{out}");
    let text = fs::read_to_string(trs).unwrap();
    assert_eq!(parse_trs(&text, trs).unwrap().len(), 4 * 2 + 6 + 2);

    // stdout compile is the same file
    let (_, printed) = run_cli(&["compile", &machine_file("count3")]);
    assert_eq!(printed, text);

    let (code, v) = json(&["rewrite", trs, "--term", "init", "--steps", "100"]);
    assert_eq!(code, 0);
    assert_eq!(v["term"], "term");
    assert!(v["message"].as_str().unwrap().starts_with("normal form"));

    let (code, v) = json(&["check", trs, "--seed", "init", "--shape", "diamond"]);
    assert_eq!(code, 1, "padding steps from a shared term do not commute in one step");
    assert_eq!(v["counterexample"]["basis"], "complete cones");

    let (code, v) = json(&["check", trs, "--peak", "term", "--peak", "init", "--shape", "local-confluence"]);
    assert_eq!(code, 0);
    assert_eq!(v["exact"], false);
}

#[test]
fn graph_export_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let trs = dir.path().join("halt1.trs");
    let trs = trs.to_str().unwrap();
    run_cli(&["compile", &machine_file("halt1"), "-o", trs]);
    let (code, dot) = run_cli(&["graph", trs, "--seed", "init"]);
    assert_eq!(code, 0);
    assert_eq!(dot.matches("[label=\"").count(), 8 + 9);
    assert_eq!(run_cli(&["graph", trs, "--seed", "init"]).1, dot);
    let out = dir.path().join("g.dot");
    run_cli(&["graph", trs, "--seed", "init", "-o", out.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(out).unwrap(), dot);
}

#[test]
fn format_errors_name_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let tm = dir.path().join("dup.tm");
    fs::write(&tm, "states: s e\nalphabet: _\nblank: _\nstart: s\nfinal: e\ndelta: s _ -> e R _\ndelta: s _ -> e L _\n").unwrap();
    let tm = tm.to_str().unwrap();
    let (code, out) = run_cli(&["simulate", tm]);
    assert_eq!(code, 3);
    assert_eq!(out, format!("error: {tm}:7: duplicate delta entry for (s,_)\n"));

    let trs = dir.path().join("bad.trs");
    fs::write(&trs, "(VAR x y)\n(RULES\n  f(x) -> y\n)\n").unwrap();
    let trs = trs.to_str().unwrap();
    let (code, out) = run_cli(&["rewrite", trs, "--term", "f(a)"]);
    assert_eq!(code, 3);
    assert!(out.starts_with(&format!("error: {trs}:3: ")), "{out}");
}

#[test]
fn bad_arguments_are_usage_errors() {
    let halt1 = machine_file("halt1");
    for args in [
        vec!["check", "--machine", halt1.as_str(), "--shape", "1,2"],
        vec!["check", "--machine", halt1.as_str(), "--shape", "diamond", "--budget", "terms=0"],
        vec!["check", "--machine", halt1.as_str(), "--shape", "diamond", "--seed", "init"],
        vec!["encode", halt1.as_str(), "--config", "q@0"],
        vec!["nonsense"],
    ] {
        assert_eq!(run_cli(&args).0, 3, "{args:?}");
    }
}
