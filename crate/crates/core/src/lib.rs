pub mod automaton;
pub mod bisim;
pub mod cli;
pub mod equivalence;
pub mod error;
pub mod format;
pub mod gen;
pub mod nerode;
pub mod relcalc;
pub mod samples;
pub mod selftest;

pub use error::{Error, Result};
