//! Generalized Chen fractions
//!
//! `f(s1,...,sk; x_i1,...,x_ik) = Π_j (x_ij + ... + x_ik)^(-s_j)`
//!
//! Fractions are kept formal. They are not linearly independent as functions
//! (for instance `f(0; x_i) = 1`), so equality of fraction combinations is
//! decided by evaluating at rational points rather than by comparing terms.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

use super::symbol::{symbol_product, validate_rows, ChenSymbol, Label, SymbolLinComb};
use crate::error::{Error, Result};
use crate::free_algebra::composition::write_int_list;
use crate::free_algebra::lincomb::{json_int_array, JsonBasis, LinComb, Monomial, Rational};
use crate::free_algebra::Basis;
use crate::text::{Cursor, TextBasis};
use crate::Composition;

pub type FractionLinComb = LinComb<ChenFraction>;

/// An assignment of rational values to variables `x_i`.
pub type Point = BTreeMap<Label, Rational>;

/// Number of points in an evaluation panel.
pub const PANEL_SIZE: usize = 8;
/// Panel coordinates are `p/q` with `1 <= p <= PANEL_MAX_NUMERATOR` and
/// `1 <= q <= PANEL_MAX_DENOMINATOR`.
pub const PANEL_MAX_NUMERATOR: i64 = 9;
pub const PANEL_MAX_DENOMINATOR: i64 = 7;
pub const DEFAULT_PANEL_SEED: u64 = 0x5eed_c4e2;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ChenFraction {
    exponents: Composition,
    vars: Vec<Label>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    /// Multiply by the leading linear form: `s1 -> s1 - 1`.
    Down,
    /// Divide by the leading linear form: `s1 -> s1 + 1`.
    Up,
}

impl ChenFraction {
    pub fn new(exponents: impl Into<Composition>, vars: Vec<Label>) -> Result<Self> {
        let exponents = exponents.into();
        validate_rows(&exponents, &vars)?;
        Ok(ChenFraction { exponents, vars })
    }

    /// The constant function 1.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn exponents(&self) -> &Composition {
        &self.exponents
    }

    pub fn vars(&self) -> &[Label] {
        &self.vars
    }

    pub fn depth(&self) -> usize {
        self.vars.len()
    }

    pub fn from_symbol(s: &ChenSymbol) -> Self {
        ChenFraction {
            exponents: s.exponents().clone(),
            vars: s.labels().to_vec(),
        }
    }

    pub fn to_symbol(&self) -> ChenSymbol {
        ChenSymbol::new(self.exponents.clone(), self.vars.clone()).expect("rows already validated")
    }

    /// Multiplies (`Down`) or divides (`Up`) by `x_i1 + ... + x_ik`.
    pub fn mult_by_linear(&self, direction: Direction) -> Result<ChenFraction> {
        if self.vars.is_empty() {
            return Err(Error::DepthZero);
        }
        let delta = match direction {
            Direction::Down => -1,
            Direction::Up => 1,
        };
        Ok(ChenFraction {
            exponents: self.exponents.shift_lead(delta),
            vars: self.vars.clone(),
        })
    }

    pub fn evaluate(&self, point: &Point) -> Result<Rational> {
        let coords = self
            .vars
            .iter()
            .map(|v| point.get(v).ok_or(Error::MissingVariable(*v)))
            .collect::<Result<Vec<_>>>()?;
        let mut value = Rational::one();
        let mut form = Rational::zero();
        // Suffix sums x_ij + ... + x_ik, innermost first.
        for (j, &s) in self.exponents.entries().iter().enumerate().rev() {
            form += coords[j];
            if s == 0 {
                continue;
            }
            if form.is_zero() {
                if s > 0 {
                    return Err(Error::VanishingDenominator {
                        form: linear_form_text(&self.vars[j..]),
                    });
                }
                return Ok(Rational::zero());
            }
            let exp = i32::try_from(-s).expect("exponent fits in i32");
            value *= form.pow(exp);
        }
        Ok(value)
    }
}

fn linear_form_text(vars: &[Label]) -> String {
    vars.iter().map(|v| format!("x{v}")).collect::<Vec<_>>().join("+")
}

// Variables first, then exponents.
impl Ord for ChenFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vars
            .cmp(&other.vars)
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for ChenFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The map from symbols to fractions, `<s; i> -> f(s; x_i)`.
pub fn symbols_to_fractions(x: &SymbolLinComb) -> FractionLinComb {
    x.map_basis(ChenFraction::from_symbol)
}

pub fn evaluate(x: &FractionLinComb, point: &Point) -> Result<Rational> {
    let mut total = Rational::zero();
    for (f, c) in x {
        total += f.evaluate(point)? * c;
    }
    Ok(total)
}

/// Product of fractions in disjoint variables, expanded through the symbol
/// product.
pub fn fraction_product(a: &ChenFraction, b: &ChenFraction) -> Result<FractionLinComb> {
    Ok(symbols_to_fractions(&symbol_product(&a.to_symbol(), &b.to_symbol())?))
}

pub fn variables(x: &FractionLinComb) -> BTreeSet<Label> {
    x.keys().flat_map(|f| f.vars.iter().copied()).collect()
}

/// The deterministic panel of positive rational points over `vars`. Every
/// linear form in positive coordinates is positive, so no fraction has a pole
/// on the panel.
pub fn panel_points(seed: u64, vars: &BTreeSet<Label>) -> Vec<Point> {
    (0..PANEL_SIZE as u64)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            vars.iter()
                .map(|&v| {
                    let p = rng.gen_range(1..=PANEL_MAX_NUMERATOR);
                    let q = rng.gen_range(1..=PANEL_MAX_DENOMINATOR);
                    (v, Rational::new(BigInt::from(p), BigInt::from(q)))
                })
                .collect()
        })
        .collect()
}

/// The point with every coordinate equal to 1.
pub fn symmetric_point(vars: &BTreeSet<Label>) -> Point {
    vars.iter().map(|&v| (v, Rational::one())).collect()
}

/// Compares two fraction combinations as functions on the panel for `seed`
/// and on the symmetric point.
pub fn semantically_equal(x: &FractionLinComb, y: &FractionLinComb, seed: u64) -> Result<bool> {
    let mut vars = variables(x);
    vars.extend(variables(y));
    let mut points = panel_points(seed, &vars);
    points.push(symmetric_point(&vars));
    for p in &points {
        if evaluate(x, p)? != evaluate(y, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl Monomial for ChenFraction {
    fn is_one(&self) -> bool {
        self.vars.is_empty()
    }
}

/// `f([s1,...,sk];[i1,...,ik])`, or `1`.
impl fmt::Display for ChenFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return f.write_str("1");
        }
        f.write_str("f(")?;
        write_int_list(f, self.exponents.entries())?;
        f.write_str(";")?;
        write_int_list(f, &self.vars)?;
        f.write_str(")")
    }
}

impl TextBasis for ChenFraction {
    fn unit() -> Self {
        ChenFraction::one()
    }

    fn starts_basis(c: char) -> bool {
        c == 'f'
    }

    fn parse_basis(cur: &mut Cursor) -> Result<Self> {
        cur.expect('f')?;
        cur.expect('(')?;
        let exponents = Composition::new(cur.int_list()?);
        cur.expect(';')?;
        let vars = cur.label_list()?;
        let column = cur.column();
        cur.expect(')')?;
        ChenFraction::new(exponents, vars).map_err(|e| Error::Parse {
            column,
            message: e.to_string(),
        })
    }
}

impl JsonBasis for ChenFraction {
    fn write_fields(&self, obj: &mut Map<String, Value>) {
        obj.insert("comp".into(), self.exponents.entries().to_vec().into());
        obj.insert("vars".into(), self.vars.clone().into());
    }

    fn read_fields(obj: &Map<String, Value>) -> Result<Self> {
        ChenFraction::new(
            Composition::new(json_int_array(obj, "comp")?),
            json_int_array(obj, "vars")?,
        )
    }
}

/// Parses `i=p/q` (or `i=p`, `i=-p/q`) assignments.
pub fn parse_assignment(s: &str) -> Result<(Label, Rational)> {
    let (var, value) = s.split_once('=').ok_or_else(|| Error::Parse {
        column: 1,
        message: format!("expected i=p/q, found {s:?}"),
    })?;
    let var = var.trim().trim_start_matches('x');
    let label: Label = var.parse().map_err(|_| Error::Parse {
        column: 1,
        message: format!("bad variable index {var:?}"),
    })?;
    let value: Rational = value.trim().parse().map_err(|_| Error::Parse {
        column: s.find('=').unwrap_or(0) + 2,
        message: format!("bad rational {:?}", value.trim()),
    })?;
    Ok((label, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chen::symbol::symbol_product;
    use crate::free_algebra::lincomb::rational;
    use crate::free_algebra::operators::op_j;

    fn frac(e: &[i64], v: &[Label]) -> ChenFraction {
        ChenFraction::new(Composition::from(e), v.to_vec()).unwrap()
    }

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    fn point(coords: &[(Label, i64)]) -> Point {
        coords.iter().map(|&(v, x)| (v, rational(x))).collect()
    }

    #[test]
    fn map_from_symbols() {
        let s = ChenSymbol::new([1, 1], vec![1, 2]).unwrap();
        assert_eq!(
            symbols_to_fractions(&LinComb::basis(s)),
            LinComb::basis(frac(&[1, 1], &[1, 2]))
        );
        let unit = symbols_to_fractions(&LinComb::basis(ChenSymbol::unit()));
        assert_eq!(unit, LinComb::basis(ChenFraction::one()));
        // f(0; x5) = 1 and f(-1; x3) = x3 as functions.
        let p = point(&[(3, 7), (5, 4)]);
        assert_eq!(frac(&[0], &[5]).evaluate(&p), Ok(rational(1)));
        assert_eq!(frac(&[-1], &[3]).evaluate(&p), Ok(rational(7)));
    }

    #[test]
    fn evaluation_examples() {
        let f = LinComb::basis(frac(&[1, 1], &[1, 2]));
        assert_eq!(evaluate(&f, &point(&[(1, 1), (2, 1)])), Ok(q(1, 2)));
        let a = ChenSymbol::new([1], vec![1]).unwrap();
        let b = ChenSymbol::new([1], vec![2]).unwrap();
        let prod = symbols_to_fractions(&symbol_product(&a, &b).unwrap());
        assert_eq!(evaluate(&prod, &point(&[(1, 2), (2, 3)])), Ok(q(1, 6)));
        assert_eq!(
            evaluate(&LinComb::basis(ChenFraction::one()), &Point::new()),
            Ok(rational(1))
        );
    }

    #[test]
    fn evaluation_errors() {
        let f = LinComb::basis(frac(&[1, 1], &[1, 2]));
        assert_eq!(evaluate(&f, &point(&[(1, 1)])), Err(Error::MissingVariable(2)));
        assert_eq!(
            evaluate(&f, &point(&[(1, 2), (2, -2)])),
            Err(Error::VanishingDenominator { form: "x1+x2".into() })
        );
        // A vanishing form with a nonpositive exponent is harmless.
        let g = LinComb::basis(frac(&[-2, 1], &[1, 2]));
        assert_eq!(evaluate(&g, &point(&[(1, 3), (2, -3)])), Ok(rational(0)));
    }

    #[test]
    fn linear_form_recursions() {
        assert_eq!(frac(&[1], &[1]).mult_by_linear(Direction::Down), Ok(frac(&[0], &[1])));
        assert_eq!(frac(&[0], &[1]).mult_by_linear(Direction::Up), Ok(frac(&[1], &[1])));
        let f = frac(&[3, -1, 2], &[4, 1, 2]);
        let round = f.mult_by_linear(Direction::Up).unwrap().mult_by_linear(Direction::Down);
        assert_eq!(round, Ok(f.clone()));
        assert_eq!(
            ChenFraction::one().mult_by_linear(Direction::Down),
            Err(Error::DepthZero)
        );
        // Down really is multiplication by the leading form.
        let p = point(&[(1, 2), (2, 5), (4, 3)]);
        let down = f.mult_by_linear(Direction::Down).unwrap();
        assert_eq!(down.evaluate(&p).unwrap(), f.evaluate(&p).unwrap() * rational(10));
    }

    #[test]
    fn product_examples() {
        assert_eq!(
            fraction_product(&frac(&[1], &[1]), &frac(&[1], &[2])),
            Ok([(frac(&[1, 1], &[1, 2]), 1), (frac(&[1, 1], &[2, 1]), 1)]
                .into_iter()
                .collect())
        );
        for t in -2..=2 {
            assert_eq!(
                fraction_product(&frac(&[0], &[1]), &frac(&[t], &[2])),
                Ok(LinComb::basis(frac(&[0, t], &[1, 2])))
            );
        }
        let prod = fraction_product(&frac(&[-1], &[1]), &frac(&[0], &[2])).unwrap();
        let expect: FractionLinComb = [(frac(&[-1, 0], &[1, 2]), 1), (frac(&[0, -1], &[1, 2]), -1)]
            .into_iter()
            .collect();
        assert_eq!(prod, expect);
        let p = point(&[(1, 4), (2, 9)]);
        assert_eq!(evaluate(&prod, &p), Ok(rational(4)));
        assert_eq!(
            fraction_product(&frac(&[1], &[1]), &frac(&[1], &[1])),
            Err(Error::NotIndependent(1))
        );
    }

    #[test]
    fn fractions_are_dependent_but_equal_as_functions() {
        let x: FractionLinComb = LinComb::basis(frac(&[0], &[3]));
        let one = LinComb::basis(ChenFraction::one());
        assert_ne!(x, one);
        assert_eq!(semantically_equal(&x, &one, DEFAULT_PANEL_SEED), Ok(true));
        let y = LinComb::basis(frac(&[1], &[3]));
        assert_eq!(semantically_equal(&y, &one, DEFAULT_PANEL_SEED), Ok(false));
    }

    #[test]
    fn decrement_is_multiplication_by_leading_form() {
        let s = ChenSymbol::new([2, -1, 3], vec![2, 5, 1]).unwrap();
        let lowered = symbols_to_fractions(&op_j(&LinComb::basis(s.clone())));
        let f = ChenFraction::from_symbol(&s);
        for p in panel_points(7, &[1, 2, 5].into_iter().collect()) {
            let form: Rational = [1, 2, 5].iter().map(|v| p[v].clone()).sum();
            assert_eq!(evaluate(&lowered, &p).unwrap(), f.evaluate(&p).unwrap() * form);
        }
    }

    #[test]
    fn panel_is_deterministic_and_positive() {
        let vars: BTreeSet<Label> = [1, 2, 3].into_iter().collect();
        let a = panel_points(42, &vars);
        assert_eq!(a, panel_points(42, &vars));
        assert_eq!(a.len(), PANEL_SIZE);
        assert_ne!(a, panel_points(43, &vars));
        for p in &a {
            for x in p.values() {
                assert!(x > &Rational::zero());
                assert!(x.denom() <= &BigInt::from(PANEL_MAX_DENOMINATOR));
            }
        }
    }

    #[test]
    fn text_forms() {
        let x: FractionLinComb = "f([1,1];[1,2]) - 2*1".parse().unwrap();
        assert_eq!(x.to_string(), "-2 + f([1,1];[1,2])");
        assert_eq!(parse_assignment("2=3/4"), Ok((2, q(3, 4))));
        assert_eq!(parse_assignment("x1=-5"), Ok((1, rational(-5))));
        assert!(parse_assignment("1:3").is_err());
        assert_eq!(FractionLinComb::from_json_str(&x.to_json_string()), Ok(x));
    }
}
