//! Textual pattern notation.
//!
//! ```text
//! pattern  := base "|" setlist "|" ytriples "|" setlist
//! base     := digit+ | nat ("," nat)+
//! setlist  := set ("," set)*
//! set      := term ("+" term)*
//! term     := "P" | "E" | "O" | nat "P" | "{" nat ("," nat)* "}"
//! ytriples := "-" | ytriple (";" ytriple)*
//! ytriple  := "(" nat "," nat "," set ")"
//! ```
//!
//! Whitespace is ignored everywhere. Dashed patterns such as `2-31` have their
//! own short form, see [`parse_gp`].

use std::fmt::Write as _;

use thiserror::Error;

use crate::intset::{Atom, IntSet};
use crate::pattern::{make_gp, DiffConstraint, Mode, PatternError, Pdvp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: expected {expected}, found {found}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub expected: String,
    pub found: String,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser { chars: src.chars().collect(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        }
    }

    fn error(&mut self, expected: impl Into<String>) -> ParseError {
        let found = self.found();
        ParseError { position: self.pos, expected: expected.into(), found }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("'{c}'")))
        }
    }

    /// A run of digits; whitespace may precede it but not split it.
    fn digits(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, self.chars[start..self.pos].iter().collect()))
    }

    fn nat(&mut self) -> Result<u32, ParseError> {
        match self.digits() {
            Some((start, s)) => s.parse().map_err(|_| ParseError {
                position: start,
                expected: "a natural number that fits in 32 bits".into(),
                found: s,
            }),
            None => Err(self.error("a natural number")),
        }
    }

    fn base(&mut self) -> Result<Vec<u32>, ParseError> {
        let Some((start, first)) = self.digits() else {
            return Err(self.error("pattern letters"));
        };
        if self.peek() == Some(',') {
            let mut letters = vec![first.parse().map_err(|_| ParseError {
                position: start,
                expected: "a letter that fits in 32 bits".into(),
                found: first.clone(),
            })?];
            while self.eat(',') {
                letters.push(self.nat()?);
            }
            Ok(letters)
        } else {
            let mut letters: Vec<u32> = first.chars().map(|c| c.to_digit(10).unwrap()).collect();
            // "1 2 3" reads as "123".
            while let Some((_, more)) = self.digits() {
                letters.extend(more.chars().map(|c| c.to_digit(10).unwrap()));
            }
            Ok(letters)
        }
    }

    fn term(&mut self) -> Result<Atom, ParseError> {
        match self.peek() {
            Some('P') => {
                self.pos += 1;
                Ok(Atom::AllPositive)
            }
            Some('E') => {
                self.pos += 1;
                Ok(Atom::Evens)
            }
            Some('O') => {
                self.pos += 1;
                Ok(Atom::Odds)
            }
            Some('{') => {
                self.pos += 1;
                let mut xs = vec![self.nat()?];
                while self.eat(',') {
                    xs.push(self.nat()?);
                }
                self.expect('}')?;
                Ok(Atom::Finite(xs))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let k = self.nat()?;
                if !self.eat('P') {
                    return Err(self.error("'P' after a multiplier"));
                }
                match k {
                    0 => Err(ParseError {
                        position: start,
                        expected: "a positive multiplier".into(),
                        found: "0".into(),
                    }),
                    1 => Ok(Atom::AllPositive),
                    k => Ok(Atom::Multiples(k)),
                }
            }
            _ => Err(self.error("a set term (P, E, O, kP or {...})")),
        }
    }

    fn set(&mut self) -> Result<IntSet, ParseError> {
        let mut atoms = vec![self.term()?];
        while self.eat('+') {
            atoms.push(self.term()?);
        }
        Ok(IntSet::from_atoms(atoms))
    }

    fn setlist(&mut self) -> Result<Vec<IntSet>, ParseError> {
        let mut sets = vec![self.set()?];
        while self.eat(',') {
            sets.push(self.set()?);
        }
        Ok(sets)
    }

    fn triples(&mut self) -> Result<Vec<(usize, DiffConstraint)>, ParseError> {
        if self.eat('-') {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            self.expect('(')?;
            let s = self.nat()? as usize;
            self.expect(',')?;
            let t = self.nat()? as usize;
            self.expect(',')?;
            let diff = self.set()?;
            self.expect(')')?;
            out.push((start, DiffConstraint::new(s, t, diff)));
            if !self.eat(';') {
                break;
            }
        }
        Ok(out)
    }

    fn end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("end of input")),
        }
    }
}

/// Parses the full quadruple notation.
pub fn parse_pattern(text: &str, mode: Mode) -> Result<Pdvp, ParseError> {
    let mut p = Parser::new(text);
    let base = p.base()?;
    p.expect('|')?;
    p.skip_ws();
    let places_at = p.pos;
    let places = p.setlist()?;
    p.expect('|')?;
    let triples = p.triples()?;
    p.expect('|')?;
    p.skip_ws();
    let values_at = p.pos;
    let values = p.setlist()?;
    p.end()?;

    let m = base.len();
    if places.len() != m + 1 {
        return Err(ParseError {
            position: places_at,
            expected: format!("{} place sets for a pattern of length {m}", m + 1),
            found: format!("{} sets", places.len()),
        });
    }
    if values.len() != m {
        return Err(ParseError {
            position: values_at,
            expected: format!("{m} value sets for a pattern of length {m}"),
            found: format!("{} sets", values.len()),
        });
    }
    for (at, d) in &triples {
        if d.s >= d.t || d.t > m + 1 {
            return Err(ParseError {
                position: *at,
                expected: format!("a triple (s,t,..) with 0 <= s < t <= {}", m + 1),
                found: format!("({},{},..)", d.s, d.t),
            });
        }
    }
    let diffs = triples.into_iter().map(|(_, d)| d).collect();
    Pdvp::new(mode, base, places, diffs, values).map_err(|e| pattern_error(e, 0))
}

fn pattern_error(e: PatternError, position: usize) -> ParseError {
    ParseError { position, expected: "a valid pattern".into(), found: e.to_string() }
}

/// Parses dashed notation: letters `1..9`, with `-` between letters that
/// need not be adjacent. Undashed neighbours must be adjacent.
pub fn parse_gp(text: &str, mode: Mode) -> Result<Pdvp, ParseError> {
    let mut base = Vec::new();
    let mut adjacent = Vec::new();
    let mut pending_dash = false;
    for (pos, c) in text.chars().enumerate() {
        match c {
            c if c.is_whitespace() => {}
            '1'..='9' => {
                if !base.is_empty() {
                    adjacent.push(!pending_dash);
                }
                pending_dash = false;
                base.push(c.to_digit(10).unwrap());
            }
            '-' if !base.is_empty() && !pending_dash => pending_dash = true,
            other => {
                return Err(ParseError {
                    position: pos,
                    expected: if base.is_empty() { "a letter 1-9".into() } else { "a letter 1-9 or '-'".into() },
                    found: format!("'{other}'"),
                })
            }
        }
    }
    if base.is_empty() || pending_dash {
        return Err(ParseError {
            position: text.chars().count(),
            expected: "a letter 1-9".into(),
            found: "end of input".into(),
        });
    }
    make_gp(mode, base, &adjacent).map_err(|e| pattern_error(e, 0))
}

/// Accepts either the quadruple notation or `gp:` followed by dashed notation.
pub fn parse_any(text: &str, mode: Mode) -> Result<Pdvp, ParseError> {
    let trimmed = text.trim_start();
    match trimmed.strip_prefix("gp:") {
        Some(rest) => parse_gp(rest, mode).map_err(|mut e| {
            e.position += text.chars().count() - rest.chars().count();
            e
        }),
        None => parse_pattern(text, mode),
    }
}

/// Canonical quadruple notation for `p`.
pub fn render_pattern(p: &Pdvp) -> String {
    let mut out = String::new();
    if p.base().iter().all(|&v| v <= 9) {
        for v in p.base() {
            write!(out, "{v}").unwrap();
        }
    } else {
        out.push_str(&join(p.base(), ","));
    }
    out.push('|');
    out.push_str(&join(p.places(), ","));
    out.push('|');
    if p.diffs().is_empty() {
        out.push('-');
    } else {
        let triples: Vec<String> = p.diffs().iter().map(|d| format!("({},{},{})", d.s, d.t, d.diff)).collect();
        out.push_str(&triples.join(";"));
    }
    out.push('|');
    out.push_str(&join(p.values(), ","));
    out
}

fn join<T: std::fmt::Display>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}
