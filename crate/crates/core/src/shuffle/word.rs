//! Words over `{x0, x1}` and the classical shuffle product.
//!
//! The classical shuffle is computed here directly on words and shares no code
//! with the extended product, so it can act as an oracle for the extended
//! product restricted to positive compositions.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::free_algebra::lincomb::{LinComb, Monomial};
use crate::Composition;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    X0,
    X1,
}

#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Serialization over `{0, 1}` with `x0 -> 0`, `x1 -> 1`.
    pub fn to_bits(&self) -> String {
        self.0
            .iter()
            .map(|l| match l {
                Letter::X0 => '0',
                Letter::X1 => '1',
            })
            .collect()
    }

    pub fn from_bits(bits: &str) -> Result<Self> {
        bits.chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                '0' => Ok(Letter::X0),
                '1' => Ok(Letter::X1),
                other => Err(Error::Parse {
                    column: i + 1,
                    message: format!("expected '0' or '1', found '{other}'"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `x0x1x1`; the empty word prints as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::X0 => "x0",
                Letter::X1 => "x1",
            })?;
        }
        Ok(())
    }
}

impl Monomial for Word {
    fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

/// `[s1, ..., sk] -> x0^(s1-1) x1 ... x0^(sk-1) x1`.
pub fn rho_encode(c: &Composition) -> Result<Word> {
    let mut letters = Vec::new();
    for (position, &s) in c.entries().iter().enumerate() {
        if s < 1 {
            return Err(Error::NonPositiveEntry { position, entry: s });
        }
        letters.extend(std::iter::repeat_n(Letter::X0, (s - 1) as usize));
        letters.push(Letter::X1);
    }
    Ok(Word(letters))
}

pub fn rho_decode(w: &Word) -> Result<Composition> {
    if w.0.last() == Some(&Letter::X0) {
        return Err(Error::WordEndsInX0);
    }
    let mut entries = Vec::new();
    let mut run = 1;
    for l in &w.0 {
        match l {
            Letter::X0 => run += 1,
            Letter::X1 => {
                entries.push(run);
                run = 1;
            }
        }
    }
    Ok(Composition::new(entries))
}

/// Termwise encoding of a linear combination of positive compositions.
pub fn rho_encode_lin(x: &LinComb<Composition>) -> Result<LinComb<Word>> {
    let mut out = LinComb::zero();
    for (c, k) in x {
        out.add_term(rho_encode(c)?, k.clone());
    }
    Ok(out)
}

/// Classical shuffle `a u ⧢ b v = a (u ⧢ b v) + b (a u ⧢ v)` with the empty word
/// as unit.
pub fn word_shuffle(u: &Word, v: &Word) -> LinComb<Word> {
    let mut memo = HashMap::new();
    suffix_shuffle(&u.0, &v.0, 0, 0, &mut memo)
}

// Shuffle of the suffixes u[i..] and v[j..].
fn suffix_shuffle(
    u: &[Letter],
    v: &[Letter],
    i: usize,
    j: usize,
    memo: &mut HashMap<(usize, usize), LinComb<Word>>,
) -> LinComb<Word> {
    if i == u.len() {
        return LinComb::basis(Word(v[j..].to_vec()));
    }
    if j == v.len() {
        return LinComb::basis(Word(u[i..].to_vec()));
    }
    if let Some(hit) = memo.get(&(i, j)) {
        return hit.clone();
    }
    let prefixed = |letter: Letter, x: &LinComb<Word>| {
        x.map_basis(|w| {
            let mut letters = Vec::with_capacity(w.len() + 1);
            letters.push(letter);
            letters.extend_from_slice(&w.0);
            Word(letters)
        })
    };
    let left = suffix_shuffle(u, v, i + 1, j, memo);
    let right = suffix_shuffle(u, v, i, j + 1, memo);
    let out = prefixed(u[i], &left) + prefixed(v[j], &right);
    memo.insert((i, j), out.clone());
    out
}
