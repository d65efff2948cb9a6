//! Text form of linear systems: `(d_1,...,d_n)(m_1^e_1,...,m_k^e_k)`.
//!
//! `m^e` repeats the multiplicity `m` exactly `e` times; `^1` may be
//! omitted. Whitespace is ignored. The multiplicity group may be empty,
//! `(2,2)()`, for a system without base points.

use std::fmt::Write;

use crate::lattice::{DivisorClassX, DivisorClassY};
use crate::{Error, Result};

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
    allow_negative: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, allow_negative: bool) -> Self {
        let chars = src.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
        Self { chars, pos: 0, src, allow_negative }
    }

    fn column(&self) -> usize {
        self.chars.get(self.pos).map(|(i, _)| i + 1).unwrap_or_else(|| self.src.chars().count() + 1)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { column: self.column(), message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.err(format!("expected '{want}', found '{c}'")),
            None => self.err(format!("expected '{want}', found end of input")),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        let negative = self.peek() == Some('-');
        if negative {
            if !self.allow_negative {
                return self.err("negative values are not allowed here");
            }
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return match self.peek() {
                Some(c) => self.err(format!("expected an integer, found '{c}'")),
                None => self.err("expected an integer, found end of input"),
            };
        }
        let text: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        text.parse::<i64>().or_else(|_| {
            self.pos = start;
            self.err(format!("integer '{text}' out of range"))
        })
    }

    fn group(&mut self, with_powers: bool, allow_empty: bool) -> Result<Vec<i64>> {
        self.expect('(')?;
        let mut out = Vec::new();
        if allow_empty && self.peek() == Some(')') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            let v = self.int()?;
            let mut reps = 1;
            if with_powers && self.peek() == Some('^') {
                self.pos += 1;
                let at = self.pos;
                let save = self.allow_negative;
                self.allow_negative = false;
                reps = self.int()?;
                self.allow_negative = save;
                if reps > 10_000 {
                    self.pos = at;
                    return self.err("repetition count too large");
                }
            }
            out.extend(std::iter::repeat_n(v, reps as usize));
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(c) => return self.err(format!("expected ',' or ')', found '{c}'")),
                None => return self.err("unterminated group"),
            }
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected trailing '{c}'")),
        }
    }
}

fn parse_pair(text: &str, allow_negative: bool) -> Result<(Vec<i64>, Vec<i64>)> {
    let mut p = Parser::new(text, allow_negative);
    let d = p.group(false, false)?;
    let m = p.group(true, true)?;
    p.finish()?;
    Ok((d, m))
}

/// Parses a linear system; every entry must be non-negative.
pub fn parse_system(text: &str) -> Result<DivisorClassY> {
    let (d, m) = parse_pair(text, false)?;
    if d.len() < 2 {
        return Err(Error::Parse { column: 1, message: format!("need at least two degrees, got {}", d.len()) });
    }
    DivisorClassY::new(d, m)
}

/// Parses a lattice class on the `(P^1)^n` side; negative entries allowed.
pub fn parse_class_y(text: &str) -> Result<DivisorClassY> {
    let (d, m) = parse_pair(text, true)?;
    if d.len() < 2 {
        return Err(Error::Parse { column: 1, message: "need at least two degrees".into() });
    }
    DivisorClassY::new(d, m)
}

/// Parses a class `(d0)(m_1,...,m_s)` on the blow-up of `P^n`.
pub fn parse_class_x(n: usize, text: &str) -> Result<DivisorClassX> {
    let (d, m) = parse_pair(text, true)?;
    if d.len() != 1 {
        return Err(Error::Parse { column: 1, message: format!("expected a single degree, got {}", d.len()) });
    }
    DivisorClassX::new(n, d[0], m)
}

fn render_group(out: &mut String, vals: &[i64], grouped: bool) {
    out.push('(');
    let mut i = 0;
    let mut first = true;
    while i < vals.len() {
        let mut j = i + 1;
        if grouped {
            while j < vals.len() && vals[j] == vals[i] {
                j += 1;
            }
        }
        if !first {
            out.push(',');
        }
        first = false;
        let _ = write!(out, "{}", vals[i]);
        if j - i > 1 {
            let _ = write!(out, "^{}", j - i);
        }
        i = j;
    }
    out.push(')');
}

/// Canonical text: degrees in stored order, multiplicities sorted
/// non-increasing and run-length grouped, e.g. `(5,5,5)(3^6)`.
pub fn render(class: &DivisorClassY) -> String {
    let mut m = class.m().to_vec();
    m.sort_by(|a, b| b.cmp(a));
    let mut out = String::new();
    render_group(&mut out, class.d(), false);
    render_group(&mut out, &m, true);
    out
}

/// Text form keeping the stored multiplicity order (needed where the order
/// of the exceptional classes matters).
pub fn render_ordered(class: &DivisorClassY) -> String {
    let mut out = String::new();
    render_group(&mut out, class.d(), false);
    render_group(&mut out, class.m(), true);
    out
}

pub fn render_x(class: &DivisorClassX) -> String {
    let mut out = String::new();
    render_group(&mut out, &[class.d0()], false);
    render_group(&mut out, class.m(), true);
    out
}
