//! Exact computer algebra for the rank-r quantum Q-system algebra.
//!
//! * [`exactnum`]: q-Laurent and x-Laurent polynomials over big integers.
//! * [`ncalgebra`]: normal-ordered noncommutative polynomials in `M_n`, `A`, `Δ`.
//! * [`ctengine`]: constant-term kernels and their realization as `M_{α,n}`.
//! * [`repdiff`]: the difference-operator representation on `x_1..x_{r+1}`.
//! * [`verify`]: named identity suites producing [`verify::CheckReport`]s.

// algebraic containers test emptiness with `is_zero`
#![allow(clippy::len_without_is_empty)]

pub mod ctengine;
pub mod exactnum;
pub mod ncalgebra;
pub mod repdiff;
pub mod verify;

use num_bigint::BigInt;

pub use exactnum::{Laurent, QtExp};

/// Laurent polynomials in `q` with big-integer coefficients.
pub type QLaurent = Laurent<i32, BigInt>;
/// Laurent polynomials in `q` and `t`.
pub type QtLaurent = Laurent<QtExp, BigInt>;
/// Laurent polynomials in `x_1..x_{r+1}` over [`QLaurent`].
pub type XPoly = exactnum::XPolyOf<i32, BigInt>;
pub type QtXPoly = exactnum::XPolyOf<QtExp, BigInt>;
/// Fractions with denominators factored into `x_i - q^c x_j`.
pub type XRat = exactnum::XRatOf<i32, BigInt>;
pub type QtXRat = exactnum::XRatOf<QtExp, BigInt>;
/// Skew difference operators with [`QLaurent`] coefficients.
pub type ShiftOp = repdiff::ShiftOpOf<i32, BigInt>;
pub type QtShiftOp = repdiff::ShiftOpOf<QtExp, BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("the Δ·A reordering needs a rank; none was supplied")]
    RankRequired,
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
