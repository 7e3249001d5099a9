//! Laurent polynomials in `x_1..x_N` with coefficients in a q-Laurent ring.
//!
//! The x-exponents and the coefficient-ring exponent are fused into a single
//! key, so a polynomial is one flat sorted term list over integers.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::laurent::Laurent;
use super::scalar::{Exponent, MonomialText, QExponent, Scalar};
use super::write_term;
use crate::Error;

/// Largest supported number of x-variables (rank `r <= MAX_VARS - 1`).
pub const MAX_VARS: usize = 6;

/// Fixed-width integer vector used for x-exponents and shift vectors.
pub type XVec = [i16; MAX_VARS];

pub fn xvec(v: &[i32]) -> XVec {
    assert!(
        v.len() <= MAX_VARS,
        "at most {MAX_VARS} variables are supported"
    );
    let mut out = [0i16; MAX_VARS];
    for (o, &e) in out.iter_mut().zip(v) {
        *o = i16::try_from(e).expect("exponent out of range");
    }
    out
}

/// Key of a term: x-exponents first, then the coefficient-ring exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XExp<K> {
    pub x: XVec,
    pub base: K,
}

impl<K: Exponent> Exponent for XExp<K> {
    #[inline]
    fn zero() -> Self {
        XExp {
            x: [0; MAX_VARS],
            base: K::zero(),
        }
    }
    #[inline]
    fn add(self, other: Self) -> Self {
        let mut x = self.x;
        for (a, b) in x.iter_mut().zip(other.x) {
            *a += b;
        }
        XExp {
            x,
            base: self.base.add(other.base),
        }
    }
    #[inline]
    fn neg(self) -> Self {
        XExp {
            x: self.x.map(|a| -a),
            base: self.base.neg(),
        }
    }
}

impl<K: QExponent> QExponent for XExp<K> {
    fn from_q(e: i32) -> Self {
        XExp {
            x: [0; MAX_VARS],
            base: K::from_q(e),
        }
    }
    fn q_part(self) -> i32 {
        self.base.q_part()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XPolyOf<K, C> {
    nvars: usize,
    poly: Laurent<XExp<K>, C>,
}

impl<K: QExponent, C: Scalar> XPolyOf<K, C> {
    pub fn zero(nvars: usize) -> Self {
        assert!(
            nvars <= MAX_VARS,
            "at most {MAX_VARS} variables are supported"
        );
        XPolyOf {
            nvars,
            poly: Laurent::zero(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Laurent::one())
    }

    pub fn constant(nvars: usize, c: Laurent<K, C>) -> Self {
        Self::monomial(nvars, &[], c)
    }

    /// `c · x^e`; missing trailing exponents are zero.
    pub fn monomial(nvars: usize, e: &[i32], c: Laurent<K, C>) -> Self {
        assert!(e.len() <= nvars);
        let x = xvec(e);
        let mut out = Self::zero(nvars);
        out.poly = Laurent::from_canonical(
            c.into_terms()
                .into_iter()
                .map(|(k, v)| (XExp { x, base: k }, v))
                .collect(),
        );
        out
    }

    /// The variable `x_i` (zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, &e, Laurent::one())
    }

    pub fn from_terms<'a, I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (&'a [i32], Laurent<K, C>)>,
    {
        let mut raw = Vec::new();
        for (e, c) in terms {
            assert!(e.len() <= nvars);
            let x = xvec(e);
            raw.extend(
                c.into_terms()
                    .into_iter()
                    .map(|(k, v)| (XExp { x, base: k }, v)),
            );
        }
        XPolyOf {
            nvars,
            poly: Laurent::from_terms(raw),
        }
    }

    pub fn raw(&self) -> &Laurent<XExp<K>, C> {
        &self.poly
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_one()
    }

    /// Number of (x-monomial, q-power) terms.
    pub fn len(&self) -> usize {
        self.poly.len()
    }

    /// Terms grouped by x-monomial, in ascending monomial order.
    pub fn grouped(&self) -> Vec<(Vec<i32>, Laurent<K, C>)> {
        let mut out: Vec<(Vec<i32>, Vec<(K, C)>)> = Vec::new();
        let mut last: Option<XVec> = None;
        for (e, c) in self.poly.terms() {
            if last != Some(e.x) {
                out.push((
                    e.x[..self.nvars].iter().map(|&v| v as i32).collect(),
                    Vec::new(),
                ));
                last = Some(e.x);
            }
            out.last_mut().unwrap().1.push((e.base, c.clone()));
        }
        out.into_iter()
            .map(|(e, t)| (e, Laurent::from_canonical(t)))
            .collect()
    }

    /// Coefficient of `x^e`.
    pub fn coeff(&self, e: &[i32]) -> Laurent<K, C> {
        let x = xvec(e);
        Laurent::from_canonical(
            self.poly
                .terms()
                .iter()
                .filter(|(k, _)| k.x == x)
                .map(|(k, c)| (k.base, c.clone()))
                .collect(),
        )
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        self.check(other);
        XPolyOf {
            nvars: self.nvars,
            poly: self.poly.add_ref(&other.poly),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.check(other);
        XPolyOf {
            nvars: self.nvars,
            poly: self.poly.sub_ref(&other.poly),
        }
    }

    pub fn neg_ref(&self) -> Self {
        XPolyOf {
            nvars: self.nvars,
            poly: self.poly.neg_ref(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.check(other);
        XPolyOf {
            nvars: self.nvars,
            poly: self.poly.mul_ref(&other.poly),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        XPolyOf {
            nvars: self.nvars,
            poly: self.poly.pow(e),
        }
    }

    /// Multiplies by a coefficient-ring element.
    pub fn scale(&self, c: &Laurent<K, C>) -> Self {
        let lifted = Laurent::from_canonical(
            c.terms()
                .iter()
                .map(|(k, v)| {
                    (
                        XExp {
                            x: [0; MAX_VARS],
                            base: *k,
                        },
                        v.clone(),
                    )
                })
                .collect(),
        );
        XPolyOf {
            nvars: self.nvars,
            poly: self.poly.mul_ref(&lifted),
        }
    }

    pub fn scale_int(&self, c: &C) -> Self {
        XPolyOf {
            nvars: self.nvars,
            poly: self.poly.scale(c),
        }
    }

    /// Multiplies by `sign · q^e · x^mono`.
    pub fn mul_term(&self, mono: &XVec, q_exp: i32, negate: bool) -> Self {
        let k = XExp {
            x: *mono,
            base: K::from_q(q_exp),
        };
        let c = if negate { -C::one() } else { C::one() };
        XPolyOf {
            nvars: self.nvars,
            poly: self.poly.mul_monomial(k, &c),
        }
    }

    pub fn mul_q_pow(&self, e: i32) -> Self {
        XPolyOf {
            nvars: self.nvars,
            poly: self.poly.mul_q_pow(e),
        }
    }

    /// Substitutes `x_i -> q^{eps_i} x_i`.
    pub fn subst_q_shift(&self, eps: &XVec) -> Self {
        if eps.iter().all(|&e| e == 0) {
            return self.clone();
        }
        let poly = self.poly.map_exponents_monotone(|k| {
            let s: i32 =
                k.x.iter()
                    .zip(eps)
                    .map(|(&a, &b)| a as i32 * b as i32)
                    .sum();
            XExp {
                x: k.x,
                base: k.base.add(K::from_q(s)),
            }
        });
        XPolyOf {
            nvars: self.nvars,
            poly,
        }
    }

    /// Multiplies by `x_i - q^c x_j`.
    pub fn mul_linear(&self, i: usize, j: usize, c: i32) -> Self {
        let mut ei = [0i16; MAX_VARS];
        ei[i] = 1;
        let mut ej = [0i16; MAX_VARS];
        ej[j] = 1;
        let a = self.poly.mul_monomial(
            XExp {
                x: ei,
                base: K::zero(),
            },
            &C::one(),
        );
        let b = self.poly.mul_monomial(
            XExp {
                x: ej,
                base: K::from_q(c),
            },
            &C::one(),
        );
        XPolyOf {
            nvars: self.nvars,
            poly: a.sub_ref(&b),
        }
    }

    /// Exact quotient by `x_i - q^c x_j`, by synthetic division in `x_i`.
    pub fn div_linear(&self, i: usize, j: usize, c: i32) -> Result<Self, Error> {
        assert!(
            i != j && i < self.nvars && j < self.nvars,
            "invalid variable pair"
        );
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut levels: BTreeMap<i16, Vec<(XExp<K>, C)>> = BTreeMap::new();
        for (e, v) in self.poly.terms() {
            let mut key = *e;
            let lvl = key.x[i];
            key.x[i] = 0;
            levels.entry(lvl).or_default().push((key, v.clone()));
        }
        let lo = *levels.keys().next().unwrap();
        let hi = *levels.keys().next_back().unwrap();
        let mut ej = [0i16; MAX_VARS];
        ej[j] = 1;
        let a = XExp {
            x: ej,
            base: K::from_q(c),
        };
        let one = C::one();
        let mut carry: Laurent<XExp<K>, C> = Laurent::zero();
        let mut out = Vec::new();
        for k in ((lo + 1)..=hi).rev() {
            let pk = levels
                .remove(&k)
                .map(Laurent::from_canonical)
                .unwrap_or_default();
            carry = pk.add_ref(&carry.mul_monomial(a, &one));
            for (e, v) in carry.terms() {
                let mut key = *e;
                key.x[i] = k - 1;
                out.push((key, v.clone()));
            }
        }
        let p_lo = levels
            .remove(&lo)
            .map(Laurent::from_canonical)
            .unwrap_or_default();
        let rem = p_lo.add_ref(&carry.mul_monomial(a, &one));
        if !rem.is_zero() {
            return Err(Error::NotDivisible(format!(
                "polynomial is not divisible by (x{} - q^{}*x{})",
                i + 1,
                c,
                j + 1
            )));
        }
        Ok(XPolyOf {
            nvars: self.nvars,
            poly: Laurent::from_terms(out),
        })
    }

    /// Exact quotient by `x_i - x_j`.
    pub fn divlinear(&self, i: usize, j: usize) -> Result<Self, Error> {
        self.div_linear(i, j, 0)
    }

    /// Renames variables: `x_k -> x_{perm[k]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let poly = self.poly.map_exponents(|k| {
            let mut x = [0i16; MAX_VARS];
            for (idx, &p) in perm.iter().enumerate() {
                x[p] = k.x[idx];
            }
            XExp { x, base: k.base }
        });
        XPolyOf {
            nvars: self.nvars,
            poly,
        }
    }

    /// Total x-degree if every term has the same one.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut degs = self
            .poly
            .terms()
            .iter()
            .map(|(k, _)| k.x.iter().map(|&v| v as i32).sum::<i32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Maps every coefficient-ring exponent, e.g. to extract a `t`-slice.
    pub fn map_base<K2: QExponent, F: Fn(K) -> Option<K2>>(&self, f: F) -> XPolyOf<K2, C> {
        let terms = self
            .poly
            .terms()
            .iter()
            .filter_map(|(k, v)| f(k.base).map(|b| (XExp { x: k.x, base: b }, v.clone())));
        XPolyOf {
            nvars: self.nvars,
            poly: Laurent::from_terms(terms),
        }
    }

    /// Elementary symmetric polynomial `e_m`.
    pub fn elementary(nvars: usize, m: usize) -> Self {
        let mut terms = Vec::new();
        for subset in 0u32..(1 << nvars) {
            if subset.count_ones() as usize == m {
                let e: Vec<i32> = (0..nvars).map(|i| ((subset >> i) & 1) as i32).collect();
                terms.push(e);
            }
        }
        Self::from_terms(nvars, terms.iter().map(|e| (e.as_slice(), Laurent::one())))
    }

    /// Complete homogeneous symmetric polynomial `h_m`.
    pub fn complete(nvars: usize, m: usize) -> Self {
        let mut terms = Vec::new();
        let mut cur = vec![0i32; nvars];
        fn rec(pos: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(cur.clone());
                return;
            }
            for v in 0..=left {
                cur[pos] = v;
                rec(pos + 1, left - v, cur, out);
            }
        }
        if nvars > 0 {
            rec(0, m as i32, &mut cur, &mut terms);
        } else if m == 0 {
            terms.push(Vec::new());
        }
        Self::from_terms(nvars, terms.iter().map(|e| (e.as_slice(), Laurent::one())))
    }

    /// Power sum `p_k` (any integer k).
    pub fn power_sum(nvars: usize, k: i32) -> Self {
        let terms: Vec<Vec<i32>> = (0..nvars)
            .map(|i| {
                let mut e = vec![0; nvars];
                e[i] = k;
                e
            })
            .collect();
        Self::from_terms(nvars, terms.iter().map(|e| (e.as_slice(), Laurent::one())))
    }

    /// `(x_1 ⋯ x_N)^k`.
    pub fn prod_power(nvars: usize, k: i32) -> Self {
        Self::monomial(nvars, &vec![k; nvars], Laurent::one())
    }

    /// Inverts every x-exponent (`x_i -> 1/x_i`).
    pub fn invert_vars(&self) -> Self {
        let poly = self.poly.map_exponents(|k| XExp {
            x: k.x.map(|v| -v),
            base: k.base,
        });
        XPolyOf {
            nvars: self.nvars,
            poly,
        }
    }
}

impl<K: QExponent + MonomialText, C: Scalar> XPolyOf<K, C> {
    pub(crate) fn monomial_text(e: &[i32]) -> String {
        let mut parts = Vec::new();
        for (i, &v) in e.iter().enumerate() {
            match v {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{}", i + 1, v)),
            }
        }
        parts.join("*")
    }
}

impl<K: QExponent + MonomialText, C: Scalar> fmt::Display for XPolyOf<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.grouped().iter().rev().enumerate() {
            write_term(f, idx == 0, c, &Self::monomial_text(e), "*")?;
        }
        Ok(())
    }
}

impl<K: QExponent + MonomialText, C: Scalar> fmt::Debug for XPolyOf<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct XTermJson<K: MonomialText, C: Scalar> {
    x: Vec<i32>,
    coeff: Laurent<K, C>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct XPolyJson<K: MonomialText, C: Scalar> {
    nvars: usize,
    terms: Vec<XTermJson<K, C>>,
}

impl<K: QExponent + MonomialText, C: Scalar> Serialize for XPolyOf<K, C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        XPolyJson {
            nvars: self.nvars,
            terms: self
                .grouped()
                .into_iter()
                .map(|(x, coeff)| XTermJson { x, coeff })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, K: QExponent + MonomialText, C: Scalar> Deserialize<'de> for XPolyOf<K, C> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = XPolyJson::<K, C>::deserialize(d)?;
        if raw.nvars > MAX_VARS || raw.terms.iter().any(|t| t.x.len() != raw.nvars) {
            return Err(D::Error::custom("bad x-exponent vector"));
        }
        Ok(Self::from_terms(
            raw.nvars,
            raw.terms.iter().map(|t| (t.x.as_slice(), t.coeff.clone())),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QLaurent, XPoly};

    fn x(n: usize, i: usize) -> XPoly {
        XPoly::var(n, i)
    }

    #[test]
    fn divlinear_examples() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let p = x1.mul_ref(&x1).sub_ref(&x2.mul_ref(&x2));
        assert_eq!(p.divlinear(0, 1).unwrap(), x1.add_ref(&x2));
        assert!(x1.sub_ref(&x2).divlinear(0, 1).unwrap().is_one());
        assert!(matches!(
            x1.mul_ref(&x2).divlinear(0, 1),
            Err(Error::NotDivisible(_))
        ));
        // reversed pair divides by x2 - x1
        assert_eq!(
            x1.sub_ref(&x2).divlinear(1, 0).unwrap(),
            XPoly::one(2).neg_ref()
        );
    }

    #[test]
    fn shifted_division_and_laurent_exponents() {
        let n = 3;
        let f = XPoly::monomial(n, &[-2, 1, 3], QLaurent::from_int(5)).add_ref(&XPoly::monomial(
            n,
            &[0, -1, 0],
            "q - q^-2".parse().unwrap(),
        ));
        let g = f.mul_linear(0, 2, -3);
        assert_eq!(g.div_linear(0, 2, -3).unwrap(), f);
        assert!(g.div_linear(0, 2, 1).is_err());
        let h = f.mul_linear(2, 1, 4);
        assert_eq!(h.div_linear(2, 1, 4).unwrap(), f);
    }

    #[test]
    fn substitution_scales_by_degree() {
        let p = XPoly::monomial(2, &[1, 2], QLaurent::one());
        let s = p.subst_q_shift(&xvec(&[1, -1]));
        assert_eq!(s, XPoly::monomial(2, &[1, 2], QLaurent::q_pow(-1)));
    }

    #[test]
    fn symmetric_functions() {
        assert_eq!(XPoly::elementary(3, 2).len(), 3);
        assert_eq!(XPoly::complete(3, 2).len(), 6);
        assert!(XPoly::complete(2, 0).is_one());
        assert_eq!(XPoly::power_sum(2, 2).to_string(), "x1^2 + x2^2");
        assert_eq!(x(2, 0).add_ref(&x(2, 1)).to_string(), "x1 + x2");
    }
}
