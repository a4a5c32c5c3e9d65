//! Chen symbols and generalized Chen fractions.

pub mod fraction;
pub mod symbol;
