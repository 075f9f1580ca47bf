#![allow(dead_code)]

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tmdiamond::term::{Rule, Term, Trs};
use tmdiamond::turing::{Configuration, TuringMachine};

pub const SEED: u64 = 0x05ee_dd1a_0001;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Signature of a small random system: constants and unary symbols.
#[derive(Clone, Debug)]
pub struct SmallSig {
    pub constants: Vec<&'static str>,
    pub unary: Vec<&'static str>,
}

fn random_term(rng: &mut ChaCha8Rng, sig: &SmallSig, depth: usize, var: Option<&str>) -> Term {
    let leaf = depth == 0 || sig.unary.is_empty() || rng.gen_bool(0.4);
    if leaf {
        match var {
            Some(v) if rng.gen_bool(0.5) => Term::var(v),
            _ => Term::constant(*sig.constants.choose(rng).unwrap()),
        }
    } else {
        let f = *sig.unary.choose(rng).unwrap();
        Term::app(f, vec![random_term(rng, sig, depth - 1, var)])
    }
}

/// At most 3 constants, 2 unary symbols and 3 rules; rules use the single
/// variable `x`, left-hand sides are never variables.
pub fn random_trs(rng: &mut ChaCha8Rng) -> (SmallSig, Trs) {
    let sig = SmallSig {
        constants: ["a", "b", "c"][..rng.gen_range(1..=3)].to_vec(),
        unary: ["f", "g"][..rng.gen_range(0..=2)].to_vec(),
    };
    let n = rng.gen_range(1..=3);
    let mut rules = Vec::new();
    while rules.len() < n {
        let lhs = random_term(rng, &sig, 2, Some("x"));
        if lhs.is_var() {
            continue;
        }
        let var = (!lhs.variables().is_empty()).then_some("x");
        let rhs = random_term(rng, &sig, 2, var);
        rules.push(Rule::new(lhs, rhs));
    }
    (sig, Trs::from_rules(rules).expect("well-formed random rules"))
}

/// Every ground term over `sig` with at most `max_size` symbols.
pub fn ground_terms(sig: &SmallSig, max_size: usize) -> Vec<Term> {
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(), sig.constants.iter().map(|c| Term::constant(*c)).collect()];
    for size in 2..=max_size {
        let next = by_size[size - 1]
            .iter()
            .flat_map(|t| sig.unary.iter().map(move |f| Term::app(*f, vec![t.clone()])))
            .collect();
        by_size.push(next);
    }
    by_size.into_iter().flatten().collect()
}

pub fn random_config(rng: &mut ChaCha8Rng, tm: &TuringMachine) -> Configuration {
    let state = tm.states.choose(rng).unwrap().clone();
    let pos: i64 = rng.gen_range(-1_000..=1_000);
    let width = rng.gen_range(0..8);
    let cells: Vec<(BigInt, String)> = (0..width)
        .map(|_| {
            let p = pos + rng.gen_range(-6..=6);
            (BigInt::from(p), tm.alphabet.choose(rng).unwrap().clone())
        })
        .collect();
    Configuration::new(state, pos, cells, &tm.blank)
}

pub fn machine_file(name: &str) -> String {
    format!("{}/machines/{}.tm", env!("CARGO_MANIFEST_DIR"), name)
}

pub fn run_cli(args: &[&str]) -> (i32, String) {
    let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let code = tmdiamond::cli::run_command(&argv, &mut out);
    (code, String::from_utf8(out).expect("utf-8 output"))
}
