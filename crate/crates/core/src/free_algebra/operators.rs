//! The shift operators on the leading exponent.
//!
//! `I` raises the first entry by one and `J` lowers it. They are mutually
//! inverse on positive-depth elements; `J` is extended to the unit by
//! `J(1) = 0`, while `I(1)` is left undefined.

use crate::error::{Error, Result};
use crate::free_algebra::lincomb::LinComb;
use crate::free_algebra::Basis;

/// `I`: increments the first entry of every term.
pub fn op_i<B: Basis>(x: &LinComb<B>) -> Result<LinComb<B>> {
    if x.keys().any(Basis::is_unit) {
        return Err(Error::IncrementOnUnit);
    }
    Ok(shift_positive_depth(x, 1))
}

/// `J`: decrements the first entry of every term; unit terms are sent to 0.
pub fn op_j<B: Basis>(x: &LinComb<B>) -> LinComb<B> {
    let mut out = LinComb::zero();
    for (k, c) in x {
        if !k.is_unit() {
            out.add_term(k.shift_lead(-1), c.clone());
        }
    }
    out
}

/// Shift of the leading exponent for input known to have no unit term.
pub(crate) fn shift_positive_depth<B: Basis>(x: &LinComb<B>, delta: i64) -> LinComb<B> {
    // Shifting the first entry is injective, so no coefficients merge.
    x.map_basis(|k| {
        debug_assert!(!k.is_unit());
        k.shift_lead(delta)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Composition;
    use proptest::prelude::*;

    fn lc(terms: &[(&[i64], i64)]) -> LinComb<Composition> {
        terms.iter().map(|&(e, c)| (Composition::from(e), c)).collect()
    }

    #[test]
    fn increment_examples() {
        assert_eq!(op_i(&lc(&[(&[1, 3], 1)])), Ok(lc(&[(&[2, 3], 1)])));
        assert_eq!(op_i(&lc(&[(&[0], 2), (&[-1], -1)])), Ok(lc(&[(&[1], 2), (&[0], -1)])));
        assert_eq!(op_i(&op_j(&lc(&[(&[5], 1)]))), Ok(lc(&[(&[5], 1)])));
    }

    #[test]
    fn increment_rejects_unit() {
        assert_eq!(op_i(&lc(&[(&[], 1), (&[2], 1)])), Err(Error::IncrementOnUnit));
    }

    #[test]
    fn decrement_examples() {
        assert_eq!(op_j(&lc(&[(&[2, 3], 1)])), lc(&[(&[1, 3], 1)]));
        assert_eq!(op_j(&lc(&[(&[], 1)])), LinComb::zero());
        assert_eq!(op_j(&lc(&[(&[0], 1)])), lc(&[(&[-1], 1)]));
    }

    proptest! {
        #[test]
        fn mutually_inverse_on_positive_depth(e in prop::collection::vec(-9i64..9, 1..5)) {
            let x = LinComb::basis(Composition::new(e));
            prop_assert_eq!(op_j(&op_i(&x).unwrap()), x.clone());
            prop_assert_eq!(op_i(&op_j(&x)).unwrap(), x.clone());
        }

        #[test]
        fn depth_is_preserved(e in prop::collection::vec(-9i64..9, 1..5)) {
            let x = LinComb::basis(Composition::new(e.clone()));
            for y in [op_i(&x).unwrap(), op_j(&x)] {
                prop_assert!(y.keys().all(|k| k.depth() == e.len()));
            }
        }
    }
}
