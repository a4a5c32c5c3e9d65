//! Plain-text parsing for compositions, symbols, fractions and their linear
//! combinations.
//!
//! A linear combination is a `+`/`-` separated list of terms. A term is an
//! optional rational coefficient (`3`, `1/2`), an optional `*`, and a basis
//! element; a bare coefficient is a multiple of the unit, so `1` is the unit
//! and `0` is zero.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::free_algebra::lincomb::{LinComb, Monomial, Rational};
use crate::Composition;

pub struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    pub fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    /// 1-based column of the current position.
    pub fn column(&self) -> usize {
        self.pos + 1
    }

    /// Error located at the current position.
    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    pub fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    pub fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected trailing '{c}'"))),
        }
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a digit, found '{c}'")),
                None => self.error("expected a digit, found end of input"),
            });
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    pub fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let digits = self.digits()?;
        let text = if neg { format!("-{digits}") } else { digits };
        text.parse().map_err(|_| Error::Parse {
            column: start + 1,
            message: format!("integer {text} out of range"),
        })
    }

    /// Nonnegative rational `p` or `p/q`.
    pub fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        let num = self.digits()?;
        let text = if self.peek() == Some('/') {
            self.pos += 1;
            format!("{num}/{}", self.digits()?)
        } else {
            num
        };
        Rational::from_str(&text).map_err(|_| Error::Parse {
            column: start + 1,
            message: format!("invalid rational {text}"),
        })
    }

    /// `[a, b, ...]`, possibly empty.
    pub fn int_list(&mut self) -> Result<Vec<i64>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    pub fn label_list(&mut self) -> Result<Vec<u32>> {
        let start = self.pos;
        self.int_list()?
            .into_iter()
            .map(|x| {
                u32::try_from(x).map_err(|_| Error::Parse {
                    column: start + 1,
                    message: format!("label {x} is not a positive integer"),
                })
            })
            .collect()
    }
}

/// Basis types that can appear in a textual linear combination.
pub trait TextBasis: Monomial {
    fn unit() -> Self;

    /// Whether a basis element (other than the unit) starts with `c`.
    fn starts_basis(c: char) -> bool;

    fn parse_basis(cur: &mut Cursor) -> Result<Self>;
}

impl TextBasis for Composition {
    fn unit() -> Self {
        Composition::unit()
    }

    fn starts_basis(c: char) -> bool {
        c == '['
    }

    fn parse_basis(cur: &mut Cursor) -> Result<Self> {
        Ok(Composition::new(cur.int_list()?))
    }
}

pub fn parse_lincomb<K: TextBasis>(src: &str) -> Result<LinComb<K>> {
    let mut cur = Cursor::new(src);
    let mut out = LinComb::zero();
    cur.skip_ws();
    if cur.at_end() {
        return Err(cur.error("empty expression"));
    }
    let mut first = true;
    loop {
        cur.skip_ws();
        let negative = match cur.peek() {
            Some('-') => {
                cur.bump();
                true
            }
            Some('+') if !first => {
                cur.bump();
                false
            }
            _ if first => false,
            Some(c) => return Err(cur.error(format!("expected '+' or '-', found '{c}'"))),
            None => break,
        };
        first = false;
        cur.skip_ws();
        let (basis, coef) = parse_term::<K>(&mut cur)?;
        out.add_term(basis, if negative { -coef } else { coef });
        cur.skip_ws();
        if cur.at_end() {
            break;
        }
    }
    Ok(out)
}

fn parse_term<K: TextBasis>(cur: &mut Cursor) -> Result<(K, Rational)> {
    match cur.peek() {
        Some(c) if K::starts_basis(c) => Ok((K::parse_basis(cur)?, Rational::from_integer(1.into()))),
        Some(c) if c.is_ascii_digit() => {
            let coef = cur.rational()?;
            cur.skip_ws();
            let had_star = cur.eat('*');
            cur.skip_ws();
            match cur.peek() {
                Some(c) if K::starts_basis(c) => Ok((K::parse_basis(cur)?, coef)),
                Some('1') if had_star => {
                    cur.bump();
                    Ok((K::unit(), coef))
                }
                _ if had_star => Err(cur.error("expected a basis element after '*'")),
                _ => Ok((K::unit(), coef)),
            }
        }
        Some(c) => Err(cur.error(format!("expected a term, found '{c}'"))),
        None => Err(cur.error("expected a term, found end of input")),
    }
}

impl<K: TextBasis> FromStr for LinComb<K> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_lincomb(s)
    }
}
