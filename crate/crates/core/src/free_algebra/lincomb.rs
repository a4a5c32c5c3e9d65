use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Exact coefficients.
pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A basis type that knows which element is the algebra unit, for printing.
pub trait Monomial: Ord + Clone + fmt::Display {
    fn is_one(&self) -> bool;
}

/// A finite formal sum `Σ c_k · k` with nonzero rational coefficients.
///
/// Terms iterate in the order of `K`, which for every basis type in this crate
/// is the canonical print order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Rational> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Rational> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, a) in &other.terms {
            self.add_term(k.clone(), a * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(k, a)| (k.clone(), a * c)).collect(),
        }
    }

    /// Applies `f` to every basis element, merging coefficients of collisions.
    pub fn map_basis<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Linear extension of `f`.
    pub fn flat_map<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2>) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn try_flat_map<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Result<LinComb<K2>>) -> Result<LinComb<K2>> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = LinComb::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, i64)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, i64)>>(iter: I) -> Self {
        iter.into_iter().map(|(k, c)| (k, rational(c))).collect()
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Rational);
    type IntoIter = btree_map::Iter<'a, K, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> AddAssign<&LinComb<K>> for LinComb<K> {
    fn add_assign(&mut self, rhs: &LinComb<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Ord + Clone> SubAssign<&LinComb<K>> for LinComb<K> {
    fn sub_assign(&mut self, rhs: &LinComb<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c);
        }
    }
}

impl<K: Ord + Clone> Add for LinComb<K> {
    type Output = LinComb<K>;

    fn add(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone> Sub for LinComb<K> {
    type Output = LinComb<K>;

    fn sub(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self -= &rhs;
        self
    }
}

impl<K: Ord + Clone> Neg for LinComb<K> {
    type Output = LinComb<K>;

    fn neg(mut self) -> LinComb<K> {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

/// `[-1,1] - [0,0]`, `2[2,2] + 4[3,1]`, `1/2 - 3[0]`. Multiples of the unit
/// print as the bare coefficient and zero prints as `0`.
impl<K: Monomial> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if k.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{mag}{k}")?;
            }
        }
        Ok(())
    }
}

/// Basis types with a JSON object representation.
pub trait JsonBasis: Sized {
    fn write_fields(&self, obj: &mut Map<String, Value>);
    fn read_fields(obj: &Map<String, Value>) -> Result<Self>;
}

impl<K: Ord + Clone + JsonBasis> LinComb<K> {
    /// `{"terms":[{"coef":"p/q", ...basis fields}]}` in canonical term order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut obj = Map::new();
                obj.insert("coef".into(), Value::String(c.to_string()));
                k.write_fields(&mut obj);
                Value::Object(obj)
            })
            .collect();
        let mut root = Map::new();
        root.insert("terms".into(), Value::Array(terms));
        Value::Object(root)
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| json_error("missing \"terms\" array"))?;
        let mut out = LinComb::zero();
        for term in terms {
            let obj = term.as_object().ok_or_else(|| json_error("term is not an object"))?;
            let coef = obj
                .get("coef")
                .and_then(Value::as_str)
                .ok_or_else(|| json_error("term without string \"coef\""))?;
            let coef: Rational = coef
                .parse()
                .map_err(|_| json_error(&format!("bad coefficient {coef:?}")))?;
            out.add_term(K::read_fields(obj)?, coef);
        }
        Ok(out)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(s).map_err(|e| Error::Parse {
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_json(&value)
    }
}

pub(crate) fn json_error(message: &str) -> Error {
    Error::Parse {
        column: 0,
        message: message.to_string(),
    }
}

pub(crate) fn json_int_array<T: TryFrom<i64>>(obj: &Map<String, Value>, key: &str) -> Result<Vec<T>> {
    let arr = obj
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| json_error(&format!("missing array {key:?}")))?;
    arr.iter()
        .map(|v| {
            v.as_i64()
                .and_then(|x| T::try_from(x).ok())
                .ok_or_else(|| json_error(&format!("bad entry {v} in {key:?}")))
        })
        .collect()
}
