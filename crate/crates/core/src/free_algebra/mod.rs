//! The free vector space on compositions and the shift operators.

pub mod composition;
pub mod lincomb;
pub mod operators;

use std::fmt::Debug;
use std::hash::Hash;

/// A basis element of a depth-graded free algebra whose letters carry an
/// integer exponent. Compositions and Chen symbols both implement this, which
/// lets the shuffle recursion and the shift operators be written once.
pub trait Basis: Clone + Ord + Hash + Debug {
    /// The empty word.
    fn unit() -> Self;

    fn depth(&self) -> usize;

    fn is_unit(&self) -> bool {
        self.depth() == 0
    }

    /// Exponent of the first letter, `None` for the unit.
    fn lead(&self) -> Option<i64>;

    /// Adds `delta` to the exponent of the first letter.
    ///
    /// Callers must not pass the unit.
    fn shift_lead(&self, delta: i64) -> Self;

    /// Splits off the first letter as a depth-one element.
    fn split_head(&self) -> Option<(Self, Self)>;

    /// Concatenation `head · tail`.
    fn concat(head: &Self, tail: &Self) -> Self;
}
