#![allow(dead_code)]

use std::path::PathBuf;

use nfa_bisim::automaton::Nfa;
use nfa_bisim::format::{parse_nfa, parse_rel};
use nfa_bisim::relcalc::BoolRel;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn load(name: &str) -> Nfa {
    parse_nfa(&std::fs::read_to_string(data(&format!("{name}.nfa"))).unwrap()).unwrap()
}

pub fn load_rel(name: &str) -> BoolRel {
    parse_rel(&std::fs::read_to_string(data(&format!("{name}.rel"))).unwrap()).unwrap()
}
