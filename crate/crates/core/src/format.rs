//! Plain-text formats.
//!
//! An election file looks like
//!
//! ```text
//! # comments and blank lines are skipped
//! election 3 2
//! a b c
//! 011
//! 001
//! 000
//! 010
//! 001
//! 100
//! ```
//!
//! Row `i`, column `j` of a vote block is `1` iff candidate `i` beats `j`.
//! Instance, witness, X3C and TDS files are key lines followed by the same
//! blocks; see the parsers below for their exact shape.

use std::fmt;

use thiserror::Error;

use crate::election::{Election, ElectionError, Roster};
use crate::set::CandidateId;
use crate::tournament::Tournament;

/// A parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `{0}`")]
    BadHeader(String),
    #[error("expected {expected} {what}, found {got}")]
    SizeMismatch { what: &'static str, expected: usize, got: usize },
    #[error("unexpected character `{0}` (expected 0 or 1)")]
    BadCell(char),
    #[error("diagonal entry must be 0")]
    Diagonal,
    #[error("candidates {0} and {1} beat each other")]
    BothBeat(usize, usize),
    #[error("neither of candidates {0} and {1} beats the other")]
    NeitherBeats(usize, usize),
    #[error("an election needs at least one vote")]
    ZeroVotes,
    #[error("unexpected end of input")]
    Eof,
    #[error("trailing content")]
    Trailing,
    #[error("{0}")]
    Invalid(String),
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

/// Significant lines (comments and blanks dropped) with their 1-based numbers.
pub(crate) struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .collect();
        let last_line = text.lines().count().max(1);
        Lines { lines, pos: 0, last_line }
    }

    pub(crate) fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    pub(crate) fn next(&mut self) -> Result<(usize, &'a str), ParseError> {
        let l = self.peek().ok_or_else(|| self.eof())?;
        self.pos += 1;
        Ok(l)
    }

    pub(crate) fn eof(&self) -> ParseError {
        ParseError::new(self.last_line, 1, ParseErrorKind::Eof)
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Some((n, _)) => Err(ParseError::new(n, 1, ParseErrorKind::Trailing)),
            None => Ok(()),
        }
    }

    /// Next line split into whitespace tokens, checking the first token is `key`.
    pub(crate) fn keyed(&mut self, key: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        let (n, l) = self.next()?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.first() != Some(&key) {
            return Err(ParseError::new(n, 1, ParseErrorKind::BadHeader(key.to_string())));
        }
        Ok((n, toks[1..].to_vec()))
    }
}

pub(crate) fn parse_num(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| ParseError::new(line, 1, ParseErrorKind::Invalid(format!("`{tok}` is not a nonnegative integer"))))
}

pub(crate) fn invalid(line: usize, msg: impl fmt::Display) -> ParseError {
    ParseError::new(line, 1, ParseErrorKind::Invalid(msg.to_string()))
}

/// Reads an m×m adjacency block.
pub(crate) fn read_matrix(lines: &mut Lines<'_>, m: usize) -> Result<Tournament, ParseError> {
    let mut cells = vec![vec![false; m]; m];
    let mut numbers = vec![0; m];
    for (i, row) in cells.iter_mut().enumerate() {
        let (n, l) = lines.next()?;
        numbers[i] = n;
        let l = l.trim();
        let chars: Vec<char> = l.chars().collect();
        if chars.len() != m {
            return Err(ParseError::new(n, 1, ParseErrorKind::SizeMismatch { what: "columns", expected: m, got: chars.len() }));
        }
        for (j, ch) in chars.into_iter().enumerate() {
            row[j] = match ch {
                '0' => false,
                '1' => true,
                other => return Err(ParseError::new(n, j + 1, ParseErrorKind::BadCell(other))),
            };
        }
        if row[i] {
            return Err(ParseError::new(n, i + 1, ParseErrorKind::Diagonal));
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            match (cells[i][j], cells[j][i]) {
                (true, true) => return Err(ParseError::new(numbers[j], i + 1, ParseErrorKind::BothBeat(i, j))),
                (false, false) => return Err(ParseError::new(numbers[j], i + 1, ParseErrorKind::NeitherBeats(i, j))),
                _ => {}
            }
        }
    }
    Ok(Tournament::from_fn(m, |i, j| cells[i][j]))
}

pub(crate) fn write_matrix(out: &mut String, t: &Tournament) {
    for a in t.candidates() {
        for b in t.candidates() {
            out.push(if t.beats(a, b) { '1' } else { '0' });
        }
        out.push('\n');
    }
}

/// Reads `election m n`, the names line and the vote blocks.
pub(crate) fn read_election(lines: &mut Lines<'_>) -> Result<Election, ParseError> {
    let (hn, l) = lines.next()?;
    let toks: Vec<&str> = l.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "election" {
        return Err(ParseError::new(hn, 1, ParseErrorKind::BadHeader("election <m> <n>".into())));
    }
    let m = parse_num(hn, toks[1])?;
    let n = parse_num(hn, toks[2])?;
    if m == 0 {
        return Err(invalid(hn, "an election needs at least one candidate"));
    }
    if m > crate::tournament::MAX_CANDIDATES {
        return Err(invalid(hn, format!("at most {} candidates are supported", crate::tournament::MAX_CANDIDATES)));
    }
    if n == 0 {
        return Err(ParseError::new(hn, 1, ParseErrorKind::ZeroVotes));
    }
    let (nn, names) = lines.next()?;
    let names: Vec<&str> = names.split_whitespace().collect();
    if names.len() != m {
        return Err(ParseError::new(nn, 1, ParseErrorKind::SizeMismatch { what: "names", expected: m, got: names.len() }));
    }
    let roster = Roster::new(names).map_err(|e| invalid(nn, e))?;
    let mut votes = Vec::with_capacity(n);
    for _ in 0..n {
        votes.push(read_matrix(lines, m)?);
    }
    Election::new(roster, votes).map_err(|e| invalid(hn, e))
}

pub fn parse_election(text: &str) -> Result<Election, ParseError> {
    let mut lines = Lines::new(text);
    let e = read_election(&mut lines)?;
    lines.finish()?;
    Ok(e)
}

pub(crate) fn write_election(out: &mut String, e: &Election) {
    out.push_str(&format!("election {} {}\n", e.num_candidates(), e.num_votes()));
    out.push_str(&e.roster().names().join(" "));
    out.push('\n');
    for v in e.votes() {
        write_matrix(out, v);
    }
}

/// Canonical form: the header, one names line, then the vote rows.
pub fn print_election(e: &Election) -> String {
    let mut out = String::new();
    write_election(&mut out, e);
    out
}

/// Resolves a candidate token: a roster name, or `#i` for a raw index.
pub fn resolve_candidate(roster: &Roster, tok: &str) -> Result<CandidateId, ElectionError> {
    if let Some(i) = tok.strip_prefix('#').and_then(|s| s.parse::<usize>().ok()) {
        if i < roster.len() {
            return Ok(CandidateId(i));
        }
        return Err(ElectionError::UnknownCandidate(i));
    }
    roster.id(tok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solutions::SolutionRule;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const FOUR_CYCLE: &str = "election 4 1\na b c d\n0100\n0011\n1001\n1000\n";

    #[test]
    fn four_cycle_file() {
        let e = parse_election(FOUR_CYCLE).unwrap();
        assert_eq!(e.roster().names_of(&e.winners(SolutionRule::Copeland)), vec!["b", "c"]);
        assert_eq!(print_election(&e), FOUR_CYCLE);
    }

    #[test]
    fn comments_and_blanks() {
        let text = "# four candidates\n\nelection 4 1\n# names\na b c d\n\n0100\n0011\n1001\n1000\n";
        assert_eq!(print_election(&parse_election(text).unwrap()), FOUR_CYCLE);
    }

    #[test]
    fn symmetry_errors() {
        let both = "election 3 1\na b c\n011\n101\n000\n";
        let e = parse_election(both).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BothBeat(0, 1));
        assert_eq!((e.line, e.column), (4, 1));
        let neither = "election 3 1\na b c\n001\n001\n000\n";
        assert_eq!(parse_election(neither).unwrap_err().kind, ParseErrorKind::NeitherBeats(0, 1));
    }

    #[test]
    fn other_errors() {
        assert_eq!(parse_election("election 3 0\na b c\n").unwrap_err().kind, ParseErrorKind::ZeroVotes);
        assert!(matches!(parse_election("elect 3 1\n").unwrap_err().kind, ParseErrorKind::BadHeader(_)));
        let diag = parse_election("election 2 1\na b\n11\n00\n").unwrap_err();
        assert_eq!((diag.kind, diag.line, diag.column), (ParseErrorKind::Diagonal, 3, 1));
        assert!(matches!(
            parse_election("election 3 1\na b\n").unwrap_err().kind,
            ParseErrorKind::SizeMismatch { what: "names", expected: 3, got: 2 }
        ));
        assert!(matches!(
            parse_election("election 2 1\na b\n01\n1\n").unwrap_err().kind,
            ParseErrorKind::SizeMismatch { what: "columns", .. }
        ));
        assert_eq!(parse_election("election 2 2\na b\n01\n00\n").unwrap_err().kind, ParseErrorKind::Eof);
        let bad = parse_election("election 2 1\na b\n0x\n10\n").unwrap_err();
        assert_eq!((bad.kind, bad.column), (ParseErrorKind::BadCell('x'), 2));
        assert_eq!(parse_election("election 1 1\na\n0\n0\n").unwrap_err().kind, ParseErrorKind::Trailing);
    }

    #[test]
    fn candidate_tokens() {
        let r = Roster::default_names(3);
        assert_eq!(resolve_candidate(&r, "b").unwrap(), CandidateId(1));
        assert_eq!(resolve_candidate(&r, "#2").unwrap(), CandidateId(2));
        assert!(resolve_candidate(&r, "#3").is_err());
        assert!(resolve_candidate(&r, "z").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(seed in any::<u64>(), m in 1usize..9, n in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let e = Election::from_votes((0..n).map(|_| Tournament::random(m, &mut rng)).collect()).unwrap();
            let text = print_election(&e);
            let back = parse_election(&text).unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert_eq!(print_election(&back), text);
        }
    }
}
