//! Coefficient and exponent traits shared by every polynomial type.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Signed;

/// Exact signed integers usable as polynomial coefficients.
///
/// Reference arithmetic is exposed as methods because `for<'a> &'a T: Op`
/// bounds are not implied by a supertrait list.
pub trait Scalar:
    Integer + Signed + Clone + Hash + fmt::Debug + fmt::Display + FromStr + Send + Sync + 'static
{
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn from_i64(v: i64) -> Self;
}

impl<T> Scalar for T
where
    T: Integer
        + Signed
        + Clone
        + Hash
        + fmt::Debug
        + fmt::Display
        + FromStr
        + Send
        + Sync
        + 'static
        + From<i64>
        + for<'a> AddAssign<&'a T>
        + for<'a> SubAssign<&'a T>,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    #[inline]
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    #[inline]
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    #[inline]
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    #[inline]
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    #[inline]
    fn from_i64(v: i64) -> Self {
        T::from(v)
    }
}

/// An additive exponent monoid (actually a group) used as a term key.
///
/// The derived `Ord` must be translation invariant: `a < b` implies
/// `a + c < b + c`. Sorted term lists then stay sorted under monomial shifts.
pub trait Exponent: Copy + Ord + Hash + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn neg(self) -> Self;
    fn is_zero(self) -> bool {
        self == Self::zero()
    }
}

/// Exponents with a distinguished `q` direction.
pub trait QExponent: Exponent {
    fn from_q(e: i32) -> Self;
    fn q_part(self) -> i32;
}

/// Text and JSON-key forms of a coefficient-ring monomial such as `q^2` or `q^2*t`.
pub trait MonomialText: Exponent {
    /// Writes the monomial; callers never pass the zero exponent.
    fn write_monomial(self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
    /// Interprets `var^pow`; `None` for an unknown variable.
    fn from_factor(var: &str, pow: i32) -> Option<Self>;
    fn key(self) -> String;
    fn from_key(s: &str) -> Option<Self>;
}

impl Exponent for i32 {
    #[inline]
    fn zero() -> Self {
        0
    }
    #[inline]
    fn add(self, other: Self) -> Self {
        self + other
    }
    #[inline]
    fn neg(self) -> Self {
        -self
    }
}

impl QExponent for i32 {
    #[inline]
    fn from_q(e: i32) -> Self {
        e
    }
    #[inline]
    fn q_part(self) -> i32 {
        self
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: &str, e: i32) -> fmt::Result {
    if e == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{e}")
    }
}

impl MonomialText for i32 {
    fn write_monomial(self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_power(f, "q", self)
    }
    fn from_factor(var: &str, pow: i32) -> Option<Self> {
        (var == "q").then_some(pow)
    }
    fn key(self) -> String {
        self.to_string()
    }
    fn from_key(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
}

/// Exponent of a monomial `q^q t^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QtExp {
    pub q: i32,
    pub t: i32,
}

impl QtExp {
    pub const fn new(q: i32, t: i32) -> Self {
        QtExp { q, t }
    }
}

impl Exponent for QtExp {
    #[inline]
    fn zero() -> Self {
        QtExp { q: 0, t: 0 }
    }
    #[inline]
    fn add(self, other: Self) -> Self {
        QtExp {
            q: self.q + other.q,
            t: self.t + other.t,
        }
    }
    #[inline]
    fn neg(self) -> Self {
        QtExp {
            q: -self.q,
            t: -self.t,
        }
    }
}

impl QExponent for QtExp {
    #[inline]
    fn from_q(e: i32) -> Self {
        QtExp { q: e, t: 0 }
    }
    #[inline]
    fn q_part(self) -> i32 {
        self.q
    }
}

impl MonomialText for QtExp {
    fn write_monomial(self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q != 0 {
            write_power(f, "q", self.q)?;
            if self.t != 0 {
                f.write_str("*")?;
            }
        }
        if self.t != 0 {
            write_power(f, "t", self.t)?;
        }
        Ok(())
    }
    fn from_factor(var: &str, pow: i32) -> Option<Self> {
        match var {
            "q" => Some(QtExp::new(pow, 0)),
            "t" => Some(QtExp::new(0, pow)),
            _ => None,
        }
    }
    fn key(self) -> String {
        format!("{},{}", self.q, self.t)
    }
    fn from_key(s: &str) -> Option<Self> {
        let (a, b) = s.split_once(',')?;
        Some(QtExp::new(a.trim().parse().ok()?, b.trim().parse().ok()?))
    }
}
