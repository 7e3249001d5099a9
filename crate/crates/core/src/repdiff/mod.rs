//! The difference-operator representation on Laurent polynomials in
//! `x_1..x_{r+1}`: operators `Σ_ε R_ε(x) D^ε` with `D_i` acting by `x_i -> q x_i`.

mod hom;
mod ops;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::{
    xvec, Den, LinFactor, MonomialText, QExponent, Scalar, XPolyOf, XRatOf, XVec, MAX_VARS,
};
use crate::{Error, Laurent, Result};

pub use hom::{nc_to_op, word_to_op};
pub use ops::{leading_t, op_f, op_m, op_m_qt, op_sym, psi_minus, psi_plus, SymSpec};

/// A skew shift operator; coefficients are kept reduced and nonzero.
#[derive(Clone)]
pub struct ShiftOpOf<K, C> {
    nvars: usize,
    terms: BTreeMap<XVec, XRatOf<K, C>>,
}

fn shift_slice(e: &XVec, nvars: usize) -> Vec<i32> {
    e[..nvars].iter().map(|&v| v as i32).collect()
}

impl<K: QExponent, C: Scalar> ShiftOpOf<K, C> {
    pub fn zero(nvars: usize) -> Self {
        assert!(
            (1..=MAX_VARS).contains(&nvars),
            "between 1 and {MAX_VARS} variables"
        );
        ShiftOpOf {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(nvars: usize) -> Self {
        Self::mult(XRatOf::one(nvars))
    }

    /// Multiplication by a rational function.
    pub fn mult(c: XRatOf<K, C>) -> Self {
        let mut op = Self::zero(c.nvars());
        op.insert(xvec(&[]), c);
        op
    }

    pub fn mult_poly(p: XPolyOf<K, C>) -> Self {
        Self::mult(XRatOf::from_poly(p))
    }

    /// The pure shift `D^eps`.
    pub fn shift(nvars: usize, eps: &[i32]) -> Self {
        assert_eq!(eps.len(), nvars);
        let mut op = Self::zero(nvars);
        op.insert(xvec(eps), XRatOf::one(nvars));
        op
    }

    /// `Δ^d = (D_1 ⋯ D_N)^d`.
    pub fn delta_pow(nvars: usize, d: i32) -> Self {
        Self::shift(nvars, &vec![d; nvars])
    }

    /// Builds an operator from `(shift, coefficient)` pairs, summing repeated shifts.
    pub fn from_terms<I: IntoIterator<Item = (XVec, XRatOf<K, C>)>>(nvars: usize, it: I) -> Self {
        let mut groups: BTreeMap<XVec, Vec<XRatOf<K, C>>> = BTreeMap::new();
        for (e, c) in it {
            assert_eq!(c.nvars(), nvars);
            groups.entry(e).or_default().push(c);
        }
        let mut op = Self::zero(nvars);
        for (e, cs) in groups {
            let c = if cs.len() == 1 {
                cs.into_iter().next().unwrap().reduce()
            } else {
                XRatOf::sum(nvars, cs)
            };
            op.insert(e, c);
        }
        op
    }

    fn insert(&mut self, e: XVec, c: XRatOf<K, C>) {
        if !c.is_zero() {
            self.terms.insert(e, c);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.nvars - 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<i32>, &XRatOf<K, C>)> {
        self.terms
            .iter()
            .map(|(e, c)| (shift_slice(e, self.nvars), c))
    }

    pub fn coeff(&self, eps: &[i32]) -> XRatOf<K, C> {
        self.terms
            .get(&xvec(eps))
            .cloned()
            .unwrap_or_else(|| XRatOf::zero(self.nvars))
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        assert_eq!(
            self.nvars, other.nvars,
            "operators on different variable sets"
        );
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .chain(&other.terms)
                .map(|(e, c)| (*e, c.clone())),
        )
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        ShiftOpOf {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, c: &Laurent<K, C>) -> Self {
        let mut op = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            op.insert(*e, v.scale(c));
        }
        op
    }

    /// `self ∘ other`, using `(R D^ε)(S D^φ) = R · S(q^ε x) · D^{ε+φ}`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.nvars, other.nvars,
            "operators on different variable sets"
        );
        let mut items = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (e, r) in &self.terms {
            for (f, s) in &other.terms {
                let mut ef = *e;
                for (a, b) in ef.iter_mut().zip(f) {
                    *a += b;
                }
                items.push((ef, r.mul_ref(&s.subst_q_shift(e))));
            }
        }
        Self::from_terms(self.nvars, items)
    }

    /// Product of several operators, left to right.
    pub fn product(nvars: usize, factors: &[&Self]) -> Self {
        factors
            .iter()
            .fold(Self::identity(nvars), |acc, f| acc.compose(f))
    }

    /// `a∘b - q^k b∘a`.
    pub fn q_comm(&self, other: &Self, k: i32) -> Self {
        self.compose(other)
            .sub_ref(&other.compose(self).scale(&Laurent::q_pow(k)))
    }

    /// Coefficient-wise equality of rational functions.
    pub fn equals(&self, other: &Self) -> bool {
        if self.nvars != other.nvars {
            return false;
        }
        let keys: std::collections::BTreeSet<&XVec> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .all(|e| match (self.terms.get(e), other.terms.get(e)) {
                (Some(a), Some(b)) => a.equals(b),
                _ => false,
            })
    }

    /// `Σ_ε R_ε · f(q^ε x)`.
    pub fn apply(&self, f: &XPolyOf<K, C>) -> XRatOf<K, C> {
        XRatOf::sum(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| c.mul_poly(&f.subst_q_shift(e))),
        )
    }

    /// As [`apply`](Self::apply), insisting that the result is a polynomial.
    pub fn apply_poly(&self, f: &XPolyOf<K, C>) -> Result<XPolyOf<K, C>> {
        self.apply(f).into_poly()
    }

    /// Maps every coefficient (numerator-wise) into another coefficient ring.
    pub fn map_num<K2: QExponent, F: Fn(&XPolyOf<K, C>) -> XPolyOf<K2, C>>(
        &self,
        f: F,
    ) -> ShiftOpOf<K2, C> {
        let mut op = ShiftOpOf::zero(self.nvars);
        for (e, c) in &self.terms {
            op.insert(*e, XRatOf::from_parts(f(c.num()), c.den().clone()).reduce());
        }
        op
    }
}

impl<K: QExponent, C: Scalar> PartialEq for ShiftOpOf<K, C> {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl<K: QExponent + MonomialText, C: Scalar> fmt::Display for ShiftOpOf<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if e.iter().all(|&v| v == 0) {
                write!(f, "mult({c})")?;
            } else {
                let s: Vec<String> = shift_slice(e, self.nvars)
                    .iter()
                    .map(|v| v.to_string())
                    .collect();
                write!(f, "({c}) D^[{}]", s.join(","))?;
            }
        }
        Ok(())
    }
}

impl<K: QExponent + MonomialText, C: Scalar> fmt::Debug for ShiftOpOf<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Denominator factor `(x_i - q^shift x_j)^pow`, 1-based.
#[derive(Serialize, Deserialize)]
struct DenJson {
    i: usize,
    j: usize,
    pow: u32,
    #[serde(default)]
    shift: i32,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct OpTermJson<K: QExponent + MonomialText, C: Scalar> {
    eps: Vec<i32>,
    num: XPolyOf<K, C>,
    den: Vec<DenJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct OpJson<K: QExponent + MonomialText, C: Scalar> {
    r: usize,
    terms: Vec<OpTermJson<K, C>>,
}

impl<K: QExponent + MonomialText, C: Scalar> Serialize for ShiftOpOf<K, C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OpJson {
            r: self.rank(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| OpTermJson {
                    eps: shift_slice(e, self.nvars),
                    num: c.num().clone(),
                    den: c
                        .den()
                        .iter()
                        .map(|(f, k)| DenJson {
                            i: f.i as usize + 1,
                            j: f.j as usize + 1,
                            pow: *k,
                            shift: f.shift,
                        })
                        .collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, K: QExponent + MonomialText, C: Scalar> Deserialize<'de> for ShiftOpOf<K, C> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = OpJson::<K, C>::deserialize(d)?;
        let nvars = raw.r + 1;
        if nvars > MAX_VARS {
            return Err(D::Error::custom("rank too large"));
        }
        let mut items = Vec::new();
        for t in raw.terms {
            if t.eps.len() != nvars || t.num.nvars() != nvars {
                return Err(D::Error::custom("term does not match the rank"));
            }
            let mut den = Den::new();
            for f in &t.den {
                if !(1 <= f.i && f.i < f.j && f.j <= nvars) || f.pow == 0 {
                    return Err(D::Error::custom("bad denominator factor"));
                }
                den.push((
                    LinFactor {
                        i: (f.i - 1) as u8,
                        j: (f.j - 1) as u8,
                        shift: f.shift,
                    },
                    f.pow,
                ));
            }
            den.sort();
            items.push((xvec(&t.eps), XRatOf::from_parts(t.num, den)));
        }
        Ok(ShiftOpOf::from_terms(nvars, items))
    }
}

pub(crate) fn check_rank(r: usize) -> Result<usize> {
    if r == 0 || r + 1 > MAX_VARS {
        return Err(Error::UnsupportedParams(format!(
            "rank must be in 1..={}",
            MAX_VARS - 1
        )));
    }
    Ok(r + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QLaurent, ShiftOp, XPoly, XRat};

    fn x(n: usize, i: usize) -> XPoly {
        XPoly::var(n, i)
    }

    #[test]
    fn twist_rule() {
        let d1 = ShiftOp::shift(2, &[1, 0]);
        let x1 = ShiftOp::mult_poly(x(2, 0));
        let lhs = d1.compose(&x1);
        let rhs = ShiftOp::mult_poly(x(2, 0).scale(&QLaurent::q())).compose(&d1);
        assert_eq!(lhs, rhs);
        assert_eq!(ShiftOp::identity(2).compose(&lhs), lhs);
    }

    #[test]
    fn sign_normalized_coefficients() {
        let a = XRat::new(
            x(2, 0),
            [LinFactor {
                i: 0,
                j: 1,
                shift: 0,
            }],
        );
        let (f, u) = LinFactor::normalize(1, 0, 0, 0);
        let b = XRat::from_poly(x(2, 0)).div_factor(f, u).neg_ref();
        assert!(ShiftOp::mult(a).equals(&ShiftOp::mult(b)));
    }

    #[test]
    fn apply_and_json() {
        let delta = ShiftOp::delta_pow(2, 1);
        let f = x(2, 0).mul_ref(&x(2, 1));
        assert_eq!(delta.apply_poly(&f).unwrap(), f.scale(&QLaurent::q_pow(2)));
        let op = op_m::<i32, num_bigint::BigInt>(1, 1, 0);
        let s = serde_json::to_string(&op).unwrap();
        assert!(
            s.contains(r#""den":[{"i":1,"j":2,"pow":1,"shift":0}]"#),
            "{s}"
        );
        let back: ShiftOp = serde_json::from_str(&s).unwrap();
        assert_eq!(back, op);
    }
}
