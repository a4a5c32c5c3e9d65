//! Extended shuffle algebra on integer compositions.
//!
//! The crate covers:
//!
//! * the free vector space spanned by integer compositions with exact rational
//!   coefficients, together with the first-entry shift operators `I` and `J`;
//! * the extended shuffle product, which makes `J` a derivation and agrees with
//!   the classical word shuffle on positive compositions, plus the stuffle
//!   (quasi-shuffle) product;
//! * Chen symbols (compositions decorated with distinct variable labels), their
//!   locality product, and the generalized Chen fractions they map to;
//! * the convergent subspace, modified partial weights and the weight bound for
//!   product terms;
//! * numerical evaluation of convergent multiple zeta series and the
//!   double-shuffle relations between them.

pub mod chen;
pub mod convergence;
pub mod error;
pub mod free_algebra;
pub mod relations;
pub mod shuffle;
pub mod text;
pub mod zeta;

pub use chen::{
    fraction::{ChenFraction, Direction, FractionLinComb},
    symbol::{ChenSymbol, Label, SymbolLinComb},
};
pub use error::{Error, Result};
pub use free_algebra::{
    composition::Composition,
    lincomb::{LinComb, Rational},
    operators::{op_i, op_j},
    Basis,
};
pub use shuffle::{ext_shuffle, ext_shuffle_lin, stuffle::stuffle, word::Word};
pub use zeta::ZetaEstimate;
