//! Sparse Laurent polynomials `Σ c_k X^k` over an exponent group.
//!
//! Terms are kept sorted by exponent with no zero coefficients, so structural
//! equality is ring equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{Exponent, MonomialText, QExponent, Scalar};
use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<K, C> {
    terms: Vec<(K, C)>,
}

impl<K: Exponent, C: Scalar> Default for Laurent<K, C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Exponent, C: Scalar> Laurent<K, C> {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(K::zero(), c)
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }

    pub fn monomial(k: K, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Laurent {
                terms: vec![(k, c)],
            }
        }
    }

    /// Collects arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (K, C)>>(iter: I) -> Self {
        let mut terms: Vec<(K, C)> = iter.into_iter().collect();
        terms.sort_unstable_by_key(|a| a.0);
        Self::from_sorted_with_duplicates(terms)
    }

    fn from_sorted_with_duplicates(terms: Vec<(K, C)>) -> Self {
        let mut out: Vec<(K, C)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => lc.add_assign_ref(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((k, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Laurent { terms: out }
    }

    /// Wraps terms that are already strictly sorted and zero-free.
    pub(crate) fn from_canonical(terms: Vec<(K, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Laurent { terms }
    }

    pub fn terms(&self) -> &[(K, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(K, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1.is_one()
    }

    pub fn coeff(&self, k: K) -> C {
        match self.terms.binary_search_by(|t| t.0.cmp(&k)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    /// The single term, if this is a monomial.
    pub fn as_monomial(&self) -> Option<(K, &C)> {
        match self.terms.as_slice() {
            [(k, c)] => Some((*k, c)),
            _ => None,
        }
    }

    pub fn neg_ref(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(k, v)| (*k, v.mul_ref(c))).collect(),
        }
    }

    /// Multiplies by `c·X^k`; order is preserved so no sort is needed.
    pub fn mul_monomial(&self, k: K, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let one = c.is_one();
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.add(k), if one { v.clone() } else { v.mul_ref(c) }))
                .collect(),
        }
    }

    pub fn shift(&self, k: K) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.add(k), v.clone()))
                .collect(),
        }
    }

    /// Applies an exponent map that preserves the term order.
    pub(crate) fn map_exponents_monotone<F: Fn(K) -> K>(&self, f: F) -> Self {
        let terms: Vec<(K, C)> = self.terms.iter().map(|(e, v)| (f(*e), v.clone())).collect();
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        Laurent { terms }
    }

    /// Applies an arbitrary exponent map, re-collecting terms.
    pub fn map_exponents<K2: Exponent, F: Fn(K) -> K2>(&self, f: F) -> Laurent<K2, C> {
        Laurent::from_terms(self.terms.iter().map(|(e, v)| (f(*e), v.clone())))
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_other {
                        -b[j].1.clone()
                    } else {
                        b[j].1.clone()
                    };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    if negate_other {
                        c.sub_assign_ref(&b[j].1);
                    } else {
                        c.add_assign_ref(&b[j].1);
                    }
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate_other {
                -t.1.clone()
            } else {
                t.1.clone()
            };
            out.push((t.0, c));
        }
        Laurent { terms: out }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        self.merge(other, false)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, true)
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let (k, c) = &small.terms[0];
            return large.mul_monomial(*k, c);
        }
        if small.terms.len() <= 4 {
            let mut acc = large.mul_monomial(small.terms[0].0, &small.terms[0].1);
            for (k, c) in &small.terms[1..] {
                acc = acc.merge(&large.mul_monomial(*k, c), false);
            }
            return acc;
        }
        let mut prods = Vec::with_capacity(small.terms.len() * large.terms.len());
        for (ka, ca) in &small.terms {
            for (kb, cb) in &large.terms {
                prods.push((ka.add(*kb), ca.mul_ref(cb)));
            }
        }
        Self::from_terms(prods)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    pub fn min_exponent(&self) -> Option<K> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exponent(&self) -> Option<K> {
        self.terms.last().map(|t| t.0)
    }
}

impl<K: QExponent, C: Scalar> Laurent<K, C> {
    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(K::from_q(e), C::one())
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// Multiplies by `q^e`.
    pub fn mul_q_pow(&self, e: i32) -> Self {
        if e == 0 {
            return self.clone();
        }
        self.shift(K::from_q(e))
    }
}

impl<C: Scalar> Laurent<i32, C> {
    /// Exact quotient in `Z[q, q^-1]`, or `NotDivisible`.
    pub fn div_exact(&self, b: &Self) -> Result<Self, Error> {
        if b.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let lb = b.terms[0].0;
        let la = self.terms[0].0;
        // Normalize both to polynomials with nonzero constant term.
        let bn: Vec<C> = dense(b, lb);
        let mut rem: Vec<C> = dense(self, la);
        let db = bn.len() - 1;
        if rem.len() < bn.len() {
            return Err(not_divisible(self, b));
        }
        let lead = bn[db].clone();
        let mut quot = vec![C::zero(); rem.len() - db];
        for top in (db..rem.len()).rev() {
            let c = rem[top].clone();
            if c.is_zero() {
                continue;
            }
            let (qc, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return Err(not_divisible(self, b));
            }
            let shift = top - db;
            for (i, bc) in bn.iter().enumerate() {
                rem[shift + i].sub_assign_ref(&qc.mul_ref(bc));
            }
            quot[shift] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(not_divisible(self, b));
        }
        Ok(Self::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(i, c)| (la - lb + i as i32, c)),
        ))
    }
}

fn dense<C: Scalar>(p: &Laurent<i32, C>, low: i32) -> Vec<C> {
    let high = p.terms.last().map(|t| t.0).unwrap_or(low);
    let mut v = vec![C::zero(); (high - low + 1) as usize];
    for (k, c) in &p.terms {
        v[(k - low) as usize] = c.clone();
    }
    v
}

fn not_divisible<C: Scalar>(a: &Laurent<i32, C>, b: &Laurent<i32, C>) -> Error {
    Error::NotDivisible(format!("({a}) / ({b})"))
}

macro_rules! forward_binop {
    ($Tr:ident, $m:ident, $inner:ident) => {
        impl<'a, K: Exponent, C: Scalar> $Tr<&'a Laurent<K, C>> for &'a Laurent<K, C> {
            type Output = Laurent<K, C>;
            fn $m(self, rhs: &'a Laurent<K, C>) -> Laurent<K, C> {
                self.$inner(rhs)
            }
        }
        impl<K: Exponent, C: Scalar> $Tr for Laurent<K, C> {
            type Output = Laurent<K, C>;
            fn $m(self, rhs: Laurent<K, C>) -> Laurent<K, C> {
                self.$inner(&rhs)
            }
        }
        impl<'a, K: Exponent, C: Scalar> $Tr<&'a Laurent<K, C>> for Laurent<K, C> {
            type Output = Laurent<K, C>;
            fn $m(self, rhs: &'a Laurent<K, C>) -> Laurent<K, C> {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl<K: Exponent, C: Scalar> Neg for Laurent<K, C> {
    type Output = Laurent<K, C>;
    fn neg(mut self) -> Self {
        for t in &mut self.terms {
            t.1 = -std::mem::replace(&mut t.1, C::zero());
        }
        self
    }
}

impl<K: Exponent, C: Scalar> Neg for &Laurent<K, C> {
    type Output = Laurent<K, C>;
    fn neg(self) -> Laurent<K, C> {
        self.neg_ref()
    }
}

impl<'a, K: Exponent, C: Scalar> AddAssign<&'a Laurent<K, C>> for Laurent<K, C> {
    fn add_assign(&mut self, rhs: &'a Laurent<K, C>) {
        *self = self.add_ref(rhs);
    }
}

impl<'a, K: Exponent, C: Scalar> SubAssign<&'a Laurent<K, C>> for Laurent<K, C> {
    fn sub_assign(&mut self, rhs: &'a Laurent<K, C>) {
        *self = self.sub_ref(rhs);
    }
}

impl<K: Exponent, C: Scalar> Zero for Laurent<K, C> {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<K: Exponent, C: Scalar> One for Laurent<K, C> {
    fn one() -> Self {
        Laurent::one()
    }
}

impl<K: MonomialText, C: Scalar> fmt::Display for Laurent<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mag = c.abs();
            if k.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                k.write_monomial(f)?;
            }
        }
        Ok(())
    }
}

impl<K: MonomialText, C: Scalar> fmt::Debug for Laurent<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<K: MonomialText, C: Scalar> FromStr for Laurent<K, C> {
    type Err = Error;

    /// Parses sums such as `-q^-1 + 2 + 3*q^3` or `q^2*t - 1`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid Laurent polynomial `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        let mut terms = Vec::new();
        for piece in pieces {
            let (neg, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let mut coeff = C::one();
            let mut exp = K::zero();
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(bad());
                }
                if factor.as_bytes()[0].is_ascii_digit() {
                    let v: C = factor.parse().map_err(|_| bad())?;
                    coeff = coeff.mul_ref(&v);
                } else {
                    let (var, pow) = match factor.split_once('^') {
                        Some((v, p)) => (v, p.parse::<i32>().map_err(|_| bad())?),
                        None => (factor, 1),
                    };
                    exp = exp.add(K::from_factor(var, pow).ok_or_else(bad)?);
                }
            }
            if neg {
                coeff = -coeff;
            }
            terms.push((exp, coeff));
        }
        Ok(Self::from_terms(terms))
    }
}

impl<K: MonomialText, C: Scalar> Serialize for Laurent<K, C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.terms.iter().map(|(k, c)| (k.key(), c.to_string())))
    }
}

impl<'de, K: MonomialText, C: Scalar> Deserialize<'de> for Laurent<K, C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let e =
                K::from_key(&k).ok_or_else(|| D::Error::custom(format!("bad exponent `{k}`")))?;
            let c: C = v
                .parse()
                .map_err(|_| D::Error::custom(format!("bad integer `{v}`")))?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QLaurent, QtLaurent};

    fn ql(s: &str) -> QLaurent {
        s.parse().unwrap()
    }

    #[test]
    fn products_from_examples() {
        assert_eq!(ql("1 - q") * ql("1 + q"), ql("1 - q^2"));
        assert_eq!(ql("q^-1 + 1") * ql("q"), ql("1 + q"));
        assert_eq!(ql("-q") * ql("-q"), ql("q^2"));
    }

    #[test]
    fn exact_division() {
        assert_eq!(ql("1 - q^2").div_exact(&ql("1 - q")).unwrap(), ql("1 + q"));
        let qm1 = ql("q - 1");
        let a = qm1.clone() * qm1.clone() * ql("q + 3");
        assert_eq!(a.div_exact(&qm1).unwrap(), qm1 * ql("q + 3"));
        assert!(matches!(
            ql("1 - q^2").div_exact(&ql("1 + q^2")),
            Err(Error::NotDivisible(_))
        ));
        assert_eq!(
            ql("q^-3 - q^-1").div_exact(&ql("q^-2")).unwrap(),
            ql("q^-1 - q")
        );
        assert!(ql("3").div_exact(&ql("2")).is_err());
    }

    #[test]
    fn text_round_trip() {
        let p = ql("-q^-1 + 2 + q^3");
        assert_eq!(p.to_string(), "-q^-1 + 2 + q^3");
        assert_eq!(ql("3*q^2 - 5").to_string(), "-5 + 3*q^2");
        assert_eq!(QLaurent::zero().to_string(), "0");
        let t: QtLaurent = "q^2*t - t^-1 + 1".parse().unwrap();
        assert_eq!(t.to_string().parse::<QtLaurent>().unwrap(), t);
        assert!("q^".parse::<QLaurent>().is_err());
        assert!("x".parse::<QLaurent>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = ql("-q^-1 + 2 + 12345678901234567890123*q^3");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"-1":"-1","0":"2","3":"12345678901234567890123"}"#);
        let back: QLaurent = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn generic_over_machine_integers() {
        let a: Laurent<i32, i64> = Laurent::from_terms([(0, 1), (1, -1)]);
        let b: Laurent<i32, i64> = Laurent::from_terms([(0, 1), (1, 1)]);
        assert_eq!(a.mul_ref(&b), Laurent::from_terms([(0, 1), (2, -1)]));
    }
}
