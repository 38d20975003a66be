//! Line-oriented text formats for automata (`.nfa`) and relations (`.rel`).
//!
//! ```text
//! # comment
//! states 3
//! alphabet x y
//! initial 0
//! terminal 2
//! x: 0->1 1->2
//! y: 2->2
//! ```
//!
//! Symbol lines may be omitted, meaning no transitions on that symbol.

use std::fmt::Write as _;

use crate::automaton::{Dfa, Nfa};
use crate::error::{Error, Result};
use crate::relcalc::{BoolRel, BoolVec};

#[derive(Clone, Copy, Debug)]
struct Tok<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Tok<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.column, message: message.into() }
    }

    fn number(&self, what: &str) -> Result<usize> {
        self.text.parse().map_err(|_| self.error(format!("expected {what}, found `{}`", self.text)))
    }

    fn state(&self, n: usize) -> Result<usize> {
        let s = self.number("a state index")?;
        if s >= n {
            return Err(self.error(format!("state {s} out of range for {n} states")));
        }
        Ok(s)
    }
}

/// Whitespace-separated tokens of one line with 1-based columns, comments stripped.
fn tokens(line: &str, line_no: usize) -> Vec<Tok<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Tok { text: &body[s..i], line: line_no, column: body[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    out
}

#[derive(Default)]
struct Sections<'a> {
    states: Option<(Tok<'a>, Vec<Tok<'a>>)>,
    alphabet: Option<(Tok<'a>, Vec<Tok<'a>>)>,
    initial: Option<(Tok<'a>, Vec<Tok<'a>>)>,
    terminal: Option<(Tok<'a>, Vec<Tok<'a>>)>,
    symbols: Vec<(Tok<'a>, Vec<Tok<'a>>)>,
}

pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let mut sec = Sections::default();
    let mut last_line = 0;
    for (i, line) in text.lines().enumerate() {
        last_line = i + 1;
        let toks = tokens(line, i + 1);
        let Some((&head, rest)) = toks.split_first() else { continue };
        let slot = match head.text {
            "states" => &mut sec.states,
            "alphabet" => &mut sec.alphabet,
            "initial" => &mut sec.initial,
            "terminal" => &mut sec.terminal,
            t if t.ends_with(':') && t.len() > 1 => {
                let name = Tok { text: &t[..t.len() - 1], ..head };
                if let Some((prev, _)) = sec.symbols.iter().find(|(p, _)| p.text == name.text) {
                    return Err(head.error(format!("duplicate section `{}:` (first at line {})", name.text, prev.line)));
                }
                sec.symbols.push((name, rest.to_vec()));
                continue;
            }
            t => return Err(head.error(format!("unknown section `{t}`"))),
        };
        if let Some((prev, _)) = slot {
            return Err(head.error(format!("duplicate section `{}` (first at line {})", head.text, prev.line)));
        }
        *slot = Some((head, rest.to_vec()));
    }
    let missing =
        |name: &str| Error::Parse { line: last_line + 1, column: 1, message: format!("missing section `{name}`") };

    let (states_head, states) = sec.states.ok_or_else(|| missing("states"))?;
    let n = match states.as_slice() {
        [t] => t.number("a state count")?,
        [] => return Err(states_head.error("`states` needs a count")),
        [_, extra, ..] => return Err(extra.error("unexpected token after state count")),
    };
    if n == 0 {
        return Err(states[0].error("an automaton needs at least one state"));
    }
    let (alpha_head, alphabet) = sec.alphabet.ok_or_else(|| missing("alphabet"))?;
    if alphabet.is_empty() {
        return Err(alpha_head.error("`alphabet` needs at least one symbol"));
    }
    for (i, t) in alphabet.iter().enumerate() {
        if alphabet[..i].iter().any(|p| p.text == t.text) {
            return Err(t.error(format!("symbol `{}` declared twice", t.text)));
        }
        if t.text.contains([':', ',']) {
            return Err(t.error(format!("invalid symbol name `{}`", t.text)));
        }
    }
    let set = |(_, toks): (Tok, Vec<Tok>)| -> Result<BoolVec> {
        let idx = toks.iter().map(|t| t.state(n)).collect::<Result<Vec<_>>>()?;
        Ok(BoolVec::from_indices(n, idx))
    };
    let sigma = set(sec.initial.ok_or_else(|| missing("initial"))?)?;
    let tau = set(sec.terminal.ok_or_else(|| missing("terminal"))?)?;

    let mut delta = vec![BoolRel::empty(n, n); alphabet.len()];
    for (name, edges) in &sec.symbols {
        let x = alphabet
            .iter()
            .position(|t| t.text == name.text)
            .ok_or_else(|| name.error(format!("unknown symbol `{}`", name.text)))?;
        for e in edges {
            let Some((src, dst)) = e.text.split_once("->") else {
                return Err(e.error(format!("expected `src->dst`, found `{}`", e.text)));
            };
            let src_tok = Tok { text: src, ..*e };
            let dst_tok = Tok { text: dst, column: e.column + src.chars().count() + 2, ..*e };
            delta[x].set(src_tok.state(n)?, dst_tok.state(n)?, true);
        }
    }
    Nfa::new(alphabet.iter().map(|t| t.text), delta, sigma, tau)
}

fn write_header(out: &mut String, n: usize, alphabet: &[String], sigma: &BoolVec, tau: &BoolVec) {
    let list = |v: &BoolVec| v.iter_ones().map(|i| format!(" {i}")).collect::<String>();
    let _ = writeln!(out, "states {n}");
    let _ = writeln!(out, "alphabet {}", alphabet.join(" "));
    let _ = writeln!(out, "initial{}", list(sigma));
    let _ = writeln!(out, "terminal{}", list(tau));
}

/// Canonical text: symbols in declaration order, transitions sorted by (src, dst).
pub fn print_nfa(a: &Nfa) -> String {
    let mut out = String::new();
    write_header(&mut out, a.num_states(), a.alphabet(), a.sigma(), a.tau());
    for (name, d) in a.alphabet().iter().zip(a.deltas()) {
        out.push_str(name);
        out.push(':');
        for (p, q) in d.pairs() {
            let _ = write!(out, " {p}->{q}");
        }
        out.push('\n');
    }
    out
}

/// A deterministic automaton in `.nfa` form, preceded by one comment per
/// state naming the subset it stands for.
pub fn print_dfa(d: &Dfa) -> String {
    let mut out = String::new();
    for s in 0..d.num_states() {
        let members: Vec<String> = d.subset(s).iter_ones().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "# subset: {s} = {{{}}}", members.join(" "));
    }
    out.push_str(&print_nfa(&d.to_nfa()));
    out
}

/// `rows cols` followed by one line of `0`/`1` entries per row. Entries may be
/// space-separated or written as one run of digits.
pub fn parse_rel(text: &str) -> Result<BoolRel> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, tokens(l, i + 1))).filter(|(_, t)| !t.is_empty());
    let Some((_, header)) = lines.next() else {
        return Err(Error::Parse { line: 1, column: 1, message: "missing `rows cols` header".into() });
    };
    let (rows, cols) = match header.as_slice() {
        [r, c] => (r.number("a row count")?, c.number("a column count")?),
        [t] => return Err(t.error("header needs `rows cols`")),
        [_, _, extra, ..] => return Err(extra.error("unexpected token in header")),
        [] => unreachable!(),
    };
    let mut rel = BoolRel::empty(rows, cols);
    let mut seen = 0;
    for (line, toks) in lines {
        if seen == rows {
            return Err(toks[0].error(format!("more than {rows} rows")));
        }
        let mut bits = Vec::new();
        for t in &toks {
            for (k, c) in t.text.chars().enumerate() {
                match c {
                    '0' | '1' => bits.push((c == '1', t.column + k)),
                    _ => {
                        return Err(Error::Parse {
                            line,
                            column: t.column + k,
                            message: format!("expected 0 or 1, found `{c}`"),
                        })
                    }
                }
            }
        }
        if bits.len() != cols {
            return Err(Error::Parse {
                line,
                column: bits.get(cols).map_or(1, |b| b.1),
                message: format!("row has {} entries, expected {cols}", bits.len()),
            });
        }
        for (b, (bit, _)) in bits.into_iter().enumerate() {
            rel.set(seen, b, bit);
        }
        seen += 1;
    }
    if seen < rows {
        let line = text.lines().count() + 1;
        return Err(Error::Parse { line, column: 1, message: format!("expected {rows} rows, found {seen}") });
    }
    Ok(rel)
}

pub fn print_rel(r: &BoolRel) -> String {
    format!("{} {}\n{r}\n", r.rows(), r.cols())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::random_nfa;
    use crate::nerode::nerode;
    use crate::samples;

    const A: &str = "\
# three states
states 3
alphabet x y
initial 0
terminal 2
x: 0->1 0->2
y: 1->2   # trailing comment
";

    fn err_at(r: Result<impl std::fmt::Debug>) -> (usize, usize, String) {
        match r {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_example() {
        let a = parse_nfa(A).unwrap();
        assert_eq!(a.num_states(), 3);
        assert_eq!(*a.delta(0), BoolRel::from_rows(&[&[0, 1, 1], &[0, 0, 0], &[0, 0, 0]]));
        assert_eq!(*a.delta(1), BoolRel::from_pairs(3, 3, [(1, 2)]));
        assert_eq!(*a.sigma(), BoolVec::from_bits(&[1, 0, 0]));
    }

    #[test]
    fn round_trips() {
        for (name, a) in samples::all() {
            assert_eq!(parse_nfa(&print_nfa(&a)).unwrap(), a, "{name}");
        }
        for seed in 0..50 {
            let a = random_nfa(1 + seed as usize % 7, &["x", "y", "z"], 0.3, seed).unwrap();
            let text = print_nfa(&a);
            assert_eq!(parse_nfa(&text).unwrap(), a);
            assert_eq!(print_nfa(&parse_nfa(&text).unwrap()), text);
        }
    }

    #[test]
    fn canonical_text() {
        let a = parse_nfa("states 2\nalphabet b a\nterminal 1 0\ninitial\na: 1->0 0->1 0->0\n").unwrap();
        assert_eq!(print_nfa(&a), "states 2\nalphabet b a\ninitial\nterminal 0 1\nb:\na: 0->0 0->1 1->0\n");
    }

    #[test]
    fn out_of_range_state() {
        let text = A.replace("y: 1->2", "y: 1->5");
        let (line, column, message) = err_at(parse_nfa(&text));
        assert_eq!((line, column), (7, 7));
        assert!(message.contains("out of range"), "{message}");
        let (line, column, _) = err_at(parse_nfa(&A.replace("initial 0", "initial 0 3")));
        assert_eq!((line, column), (4, 11));
    }

    #[test]
    fn unknown_symbol() {
        let (line, column, message) = err_at(parse_nfa(&format!("{A}z: 0->0\n")));
        assert_eq!((line, column), (8, 1));
        assert!(message.contains("unknown symbol `z`"));
    }

    #[test]
    fn duplicate_and_missing_sections() {
        let (line, _, message) = err_at(parse_nfa(&format!("{A}initial 1\n")));
        assert_eq!(line, 8);
        assert!(message.contains("duplicate section `initial`"));
        let (line, _, message) = err_at(parse_nfa(&format!("{A}x: 1->1\n")));
        assert_eq!(line, 8);
        assert!(message.contains("duplicate"));
        let (line, _, message) = err_at(parse_nfa(&A.replace("terminal 2\n", "")));
        assert_eq!(line, 7);
        assert!(message.contains("missing section `terminal`"));
    }

    #[test]
    fn other_errors() {
        let (l, c, _) = err_at(parse_nfa(&A.replace("0->1 0->2", "0->1 02")));
        assert_eq!((l, c), (6, 9));
        let (l, c, _) = err_at(parse_nfa(&A.replace("states 3", "states three")));
        assert_eq!((l, c), (2, 8));
        let (l, _, _) = err_at(parse_nfa(&A.replace("alphabet x y", "alphabet x x")));
        assert_eq!(l, 3);
        let (l, c, _) = err_at(parse_nfa(&A.replace("states 3", "stats 3")));
        assert_eq!((l, c), (2, 1));
    }

    #[test]
    fn relation_files() {
        let (_, phi2) = samples::forward_pair_trace();
        assert_eq!(parse_rel(&print_rel(&phi2)).unwrap(), phi2);
        assert_eq!(parse_rel("2 3\n101\n0 1 1\n").unwrap(), BoolRel::from_rows(&[&[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(err_at(parse_rel("2 2\n1 0\n1 2\n")).0, 3);
        assert_eq!(err_at(parse_rel("2 2\n1 0\n")).0, 3);
        assert_eq!(err_at(parse_rel("1 2\n1 0 1\n")).1, 5);
        assert_eq!(err_at(parse_rel("1 2\n1 0\n0 0\n")).0, 3);
    }

    #[test]
    fn dfa_text_parses_back() {
        let (a, _) = samples::language_pair();
        let d = nerode(&a);
        let text = print_dfa(&d);
        assert!(text.starts_with("# subset: 0 = {1}\n# subset: 1 = {2}\n# subset: 2 = {}\n"));
        assert_eq!(parse_nfa(&text).unwrap(), d.to_nfa());
    }
}
