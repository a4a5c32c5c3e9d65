use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::free_algebra::lincomb::{json_int_array, JsonBasis, Monomial};
use crate::free_algebra::Basis;
use crate::text::Cursor;

/// A finite sequence of integers `[s1, ..., sk]`. The empty sequence is the
/// unit `1` of the algebra.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Composition(Vec<i64>);

impl Composition {
    pub fn new(entries: Vec<i64>) -> Self {
        Composition(entries)
    }

    pub fn unit() -> Self {
        Composition(Vec::new())
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<i64> {
        self.0.first().copied()
    }

    /// `s1 + ... + si`, with `w0 = 0`.
    pub fn partial_weight(&self, i: usize) -> Result<i64> {
        if i > self.depth() {
            return Err(Error::IndexOutOfRange {
                index: i,
                depth: self.depth(),
            });
        }
        Ok(self.0[..i].iter().sum())
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `[head, tail...]`.
    pub fn prepend(head: i64, tail: &Composition) -> Composition {
        let mut entries = Vec::with_capacity(tail.depth() + 1);
        entries.push(head);
        entries.extend_from_slice(&tail.0);
        Composition(entries)
    }

    pub fn all_entries(&self, pred: impl Fn(i64) -> bool) -> bool {
        self.0.iter().all(|&s| pred(s))
    }
}

impl From<Vec<i64>> for Composition {
    fn from(entries: Vec<i64>) -> Self {
        Composition(entries)
    }
}

impl From<&[i64]> for Composition {
    fn from(entries: &[i64]) -> Self {
        Composition(entries.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for Composition {
    fn from(entries: [i64; N]) -> Self {
        Composition(entries.to_vec())
    }
}

// Shorter compositions first, then entrywise.
impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Basis for Composition {
    fn unit() -> Self {
        Composition::unit()
    }

    fn depth(&self) -> usize {
        self.0.len()
    }

    fn lead(&self) -> Option<i64> {
        self.first()
    }

    fn shift_lead(&self, delta: i64) -> Self {
        let mut entries = self.0.clone();
        entries[0] += delta;
        Composition(entries)
    }

    fn split_head(&self) -> Option<(Self, Self)> {
        let (&head, tail) = self.0.split_first()?;
        Some((Composition(vec![head]), Composition(tail.to_vec())))
    }

    fn concat(head: &Self, tail: &Self) -> Self {
        let mut entries = head.0.clone();
        entries.extend_from_slice(&tail.0);
        Composition(entries)
    }
}

impl Monomial for Composition {
    fn is_one(&self) -> bool {
        self.is_unit()
    }
}

impl JsonBasis for Composition {
    fn write_fields(&self, obj: &mut serde_json::Map<String, serde_json::Value>) {
        obj.insert("comp".into(), self.0.clone().into());
    }

    fn read_fields(obj: &serde_json::Map<String, serde_json::Value>) -> Result<Self> {
        Ok(Composition(json_int_array(obj, "comp")?))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        write_int_list(f, &self.0)
    }
}

pub(crate) fn write_int_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

/// Accepts `[s1,...,sk]` with optional spaces, and `1` or `[]` for the unit.
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        cur.skip_ws();
        let comp = if cur.peek() == Some('[') {
            Composition(cur.int_list()?)
        } else {
            cur.expect('1')?;
            Composition::unit()
        };
        cur.finish()?;
        Ok(comp)
    }
}
