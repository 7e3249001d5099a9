//! Exact arithmetic: q-Laurent polynomials over big integers, Laurent
//! polynomials in x-variables, and fractions with factored denominators.

mod laurent;
mod scalar;
mod xpoly;
mod xrat;

use std::fmt;

pub use laurent::Laurent;
pub use scalar::{Exponent, MonomialText, QExponent, QtExp, Scalar};
pub use xpoly::{xvec, XExp, XPolyOf, XVec, MAX_VARS};
pub use xrat::{Den, LinFactor, Unit, XRatOf};

use crate::{Error, QLaurent, XPoly};

/// `a · b` in `Z[q, q^-1]`.
pub fn ql_mul(a: &QLaurent, b: &QLaurent) -> QLaurent {
    a.mul_ref(b)
}

/// Exact quotient `a / b` in `Z[q, q^-1]`.
pub fn ql_divexact(a: &QLaurent, b: &QLaurent) -> Result<QLaurent, Error> {
    a.div_exact(b)
}

/// Exact quotient `p / (x_i - x_j)` (zero-based indices).
pub fn xp_divlinear(p: &XPoly, i: usize, j: usize) -> Result<XPoly, Error> {
    p.divlinear(i, j)
}

/// Writes one summand `coeff · body` of a sum, handling signs and unit coefficients.
pub(crate) fn write_term<K: MonomialText, C: Scalar>(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &Laurent<K, C>,
    body: &str,
    sep: &str,
) -> fmt::Result {
    if let Some((k, c)) = coeff.as_monomial() {
        let negative = c.is_negative();
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        let mag = Laurent::<K, C>::monomial(k, c.abs());
        if body.is_empty() {
            write!(f, "{mag}")
        } else if mag.is_one() {
            f.write_str(body)
        } else {
            write!(f, "{mag}{sep}{body}")
        }
    } else {
        if !first {
            f.write_str(" + ")?;
        }
        if body.is_empty() {
            write!(f, "({coeff})")
        } else {
            write!(f, "({coeff}){sep}{body}")
        }
    }
}
