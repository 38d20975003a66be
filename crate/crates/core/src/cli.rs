//! Command-line front end. Exit codes: 0 for a positive verdict, 1 for a
//! negative one, 2 for usage, input and internal errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::automaton::{random_nfa, Nfa};
use crate::bisim::{check, greatest, BisimKind};
use crate::equivalence::{fb_equivalent, language_equivalent, reduce, wfb_equivalent, ReduceMode, Witness};
use crate::error::{Error, Result};
use crate::format::{parse_nfa, parse_rel, print_dfa, print_nfa, print_rel};
use crate::nerode::{nerode, reverse_nerode};
use crate::selftest::{self, SelftestConfig};

#[derive(Parser, Debug)]
#[command(name = "nfa-bisim", version, about = "Bisimulations and state reduction for nondeterministic automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EquivMode {
    Fb,
    Wfb,
    Lang,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the greatest relation of a kind between two automata
    Bisim {
        #[arg(long, value_parser = parse_kind)]
        kind: BisimKind,
        a: PathBuf,
        b: PathBuf,
    },
    /// Check a given relation against the definition of a kind
    Check {
        #[arg(long, value_parser = parse_kind)]
        kind: BisimKind,
        #[arg(long)]
        relation: PathBuf,
        a: PathBuf,
        b: PathBuf,
    },
    /// Decide equivalence of two automata
    Equiv {
        #[arg(long, value_enum)]
        mode: EquivMode,
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
        a: PathBuf,
        b: PathBuf,
    },
    /// Factor an automaton by its greatest equivalence of a kind
    Reduce {
        #[arg(long, value_parser = parse_mode)]
        mode: ReduceMode,
        a: PathBuf,
    },
    /// Accessible subset construction
    Determinize {
        /// Build over the sets of states that can reach a terminal state
        #[arg(long)]
        reverse: bool,
        a: PathBuf,
    },
    /// Generate a random automaton
    Gen {
        #[arg(long)]
        states: usize,
        #[arg(long, value_delimiter = ',', default_value = "x,y")]
        alphabet: Vec<String>,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the property suite on random automata
    Selftest {
        #[arg(long, default_value_t = 5)]
        states: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
}

fn parse_kind(s: &str) -> std::result::Result<BisimKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> std::result::Result<ReduceMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Nfa> {
    parse_nfa(&read(path)?).map_err(|e| in_file(path, e))
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, column, message } => {
            Error::Parse { line, column, message: format!("{}: {message}", path.display()) }
        }
        e => e,
    }
}

fn list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    let mut text = String::new();
    let code = match command {
        Command::Bisim { kind, a, b } => {
            let report = greatest(kind, &load(&a)?, &load(&b)?)?;
            match report.relation() {
                Some(r) => {
                    text.push_str(&print_rel(r));
                    0
                }
                None => {
                    text.push_str("NONE\n");
                    for c in report.failure().unwrap_or_default() {
                        text.push_str(&format!("violated: {c}\n"));
                    }
                    1
                }
            }
        }
        Command::Check { kind, relation, a, b } => {
            let phi = parse_rel(&read(&relation)?).map_err(|e| in_file(&relation, e))?;
            let report = check(kind, &load(&a)?, &load(&b)?, &phi)?;
            text.push_str(&format!("{report}\n"));
            text.push_str(if report.holds() { "HOLDS\n" } else { "FAILS\n" });
            i32::from(!report.holds())
        }
        Command::Equiv { mode, maxlen, a, b } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let verdict = match mode {
                EquivMode::Fb => fb_equivalent(&a, &b)?,
                EquivMode::Wfb => wfb_equivalent(&a, &b)?,
                EquivMode::Lang => language_equivalent(&a, &b, maxlen)?,
            };
            text.push_str(&format!("{verdict}\n"));
            match &verdict.witness {
                Some(Witness::Fb { relation, factor_iso }) => {
                    text.push_str(&format!("relation:\n{relation}\nfactor isomorphism: {}\n", list(factor_iso)));
                }
                Some(Witness::Wfb { relation, weak_iso }) => {
                    text.push_str(&format!("relation:\n{relation}\nweak isomorphism: {}\n", list(weak_iso)));
                }
                Some(Witness::BoundedLanguage { words }) => {
                    text.push_str(&format!("words up to length {maxlen}: {}\n", words.len()));
                }
                None => {}
            }
            if let Some(u) = &verdict.distinguishing_word {
                text.push_str(&format!("distinguishing word: {}\n", a.format_word(u)));
            }
            i32::from(!verdict.equivalent)
        }
        Command::Reduce { mode, a } => {
            text.push_str(&print_nfa(&reduce(&load(&a)?, mode)?));
            0
        }
        Command::Determinize { reverse, a } => {
            let a = load(&a)?;
            text.push_str(&print_dfa(&if reverse { reverse_nerode(&a) } else { nerode(&a) }));
            0
        }
        Command::Gen { states, alphabet, density, seed } => {
            let symbols: Vec<&str> = alphabet.iter().map(String::as_str).collect();
            text.push_str(&print_nfa(&random_nfa(states, &symbols, density, seed)?));
            0
        }
        Command::Selftest { states, seed, trials, workers } => {
            let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, usize::from));
            let results = selftest::run(SelftestConfig { max_states: states, seed, trials, workers });
            let failed = results.iter().filter(|r| !r.passed()).count();
            for r in &results {
                text.push_str(&format!("{r}\n"));
            }
            text.push_str(&format!("{} of {} trials passed\n", results.len() - failed, results.len()));
            i32::from(failed > 0)
        }
    };
    out.write_all(text.as_bytes()).map_err(|e| Error::Io(format!("writing output: {e}")))?;
    Ok(code)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
