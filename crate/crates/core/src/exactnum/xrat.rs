//! Fractions `N / ∏ (x_i - q^c x_j)^k` with a factored denominator.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::laurent::Laurent;
use super::scalar::{MonomialText, QExponent, Scalar};
use super::xpoly::{XPolyOf, XVec};
use crate::Error;

/// The linear form `x_i - q^shift · x_j` with zero-based `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinFactor {
    pub i: u8,
    pub j: u8,
    pub shift: i32,
}

/// A unit `±q^e` of the coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Unit {
    pub negate: bool,
    pub q_exp: i32,
}

impl LinFactor {
    /// Writes `q^a x_i - q^b x_j` as `unit · factor`.
    pub fn normalize(i: usize, a: i32, j: usize, b: i32) -> (LinFactor, Unit) {
        assert_ne!(i, j);
        if i < j {
            (
                LinFactor {
                    i: i as u8,
                    j: j as u8,
                    shift: b - a,
                },
                Unit {
                    negate: false,
                    q_exp: a,
                },
            )
        } else {
            (
                LinFactor {
                    i: j as u8,
                    j: i as u8,
                    shift: a - b,
                },
                Unit {
                    negate: true,
                    q_exp: b,
                },
            )
        }
    }

    /// Image under `x_k -> q^{eps_k} x_k`, as `unit · factor`.
    pub fn subst(self, eps: &XVec) -> (LinFactor, Unit) {
        let (ei, ej) = (eps[self.i as usize] as i32, eps[self.j as usize] as i32);
        let f = LinFactor {
            i: self.i,
            j: self.j,
            shift: self.shift + ej - ei,
        };
        (
            f,
            Unit {
                negate: false,
                q_exp: ei,
            },
        )
    }

    pub fn expand<K: QExponent, C: Scalar>(self, nvars: usize) -> XPolyOf<K, C> {
        XPolyOf::one(nvars).mul_linear(self.i as usize, self.j as usize, self.shift)
    }
}

impl fmt::Display for LinFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shift {
            0 => write!(f, "x{} - x{}", self.i + 1, self.j + 1),
            1 => write!(f, "x{} - q*x{}", self.i + 1, self.j + 1),
            s => write!(f, "x{} - q^{}*x{}", self.i + 1, s, self.j + 1),
        }
    }
}

/// Sorted multiset of denominator factors.
pub type Den = SmallVec<[(LinFactor, u32); 8]>;

fn den_insert(den: &mut Den, f: LinFactor, pow: u32) {
    match den.binary_search_by(|t| t.0.cmp(&f)) {
        Ok(i) => den[i].1 += pow,
        Err(i) => den.insert(i, (f, pow)),
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XRatOf<K, C> {
    num: XPolyOf<K, C>,
    den: Den,
}

impl<K: QExponent, C: Scalar> XRatOf<K, C> {
    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(XPolyOf::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(XPolyOf::one(nvars))
    }

    pub fn from_poly(num: XPolyOf<K, C>) -> Self {
        XRatOf {
            num,
            den: Den::new(),
        }
    }

    /// `num / ∏ factors` (factors may repeat); no cancellation is attempted.
    pub fn new<I: IntoIterator<Item = LinFactor>>(num: XPolyOf<K, C>, factors: I) -> Self {
        let mut den = Den::new();
        for f in factors {
            assert!(
                f.i < f.j && (f.j as usize) < num.nvars(),
                "invalid factor {f:?}"
            );
            den_insert(&mut den, f, 1);
        }
        if num.is_zero() {
            den.clear();
        }
        XRatOf { num, den }
    }

    pub fn from_parts(num: XPolyOf<K, C>, den: Den) -> Self {
        if num.is_zero() {
            return Self::from_poly(num);
        }
        XRatOf { num, den }
    }

    pub fn num(&self) -> &XPolyOf<K, C> {
        &self.num
    }

    pub fn den(&self) -> &Den {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_empty()
    }

    pub fn den_poly(&self) -> XPolyOf<K, C> {
        let mut p = XPolyOf::one(self.nvars());
        for (f, k) in &self.den {
            for _ in 0..*k {
                p = p.mul_linear(f.i as usize, f.j as usize, f.shift);
            }
        }
        p
    }

    pub fn neg_ref(&self) -> Self {
        XRatOf {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Laurent<K, C>) -> Self {
        Self::from_parts(self.num.scale(c), self.den.clone())
    }

    pub fn mul_poly(&self, p: &XPolyOf<K, C>) -> Self {
        Self::from_parts(self.num.mul_ref(p), self.den.clone())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let num = self.num.mul_ref(&other.num);
        if num.is_zero() {
            return Self::from_poly(num);
        }
        let mut den = self.den.clone();
        for (f, k) in &other.den {
            den_insert(&mut den, *f, *k);
        }
        XRatOf { num, den }
    }

    /// Divides by `unit · factor`.
    pub fn div_factor(&self, f: LinFactor, unit: Unit) -> Self {
        let mut den = self.den.clone();
        den_insert(&mut den, f, 1);
        let num = self
            .num
            .mul_term(&[0; super::xpoly::MAX_VARS], -unit.q_exp, unit.negate);
        Self::from_parts(num, den)
    }

    /// Substitutes `x_i -> q^{eps_i} x_i`.
    pub fn subst_q_shift(&self, eps: &XVec) -> Self {
        if eps.iter().all(|&e| e == 0) {
            return self.clone();
        }
        let mut num = self.num.subst_q_shift(eps);
        let mut den = Den::new();
        let mut q_exp = 0;
        for (f, k) in &self.den {
            let (g, u) = f.subst(eps);
            q_exp -= u.q_exp * *k as i32;
            den_insert(&mut den, g, *k);
        }
        num = num.mul_q_pow(q_exp);
        XRatOf { num, den }
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn reduce(&self) -> Self {
        let mut num = self.num.clone();
        let mut den = Den::new();
        for (f, k) in &self.den {
            let mut left = *k;
            while left > 0 {
                match num.div_linear(f.i as usize, f.j as usize, f.shift) {
                    Ok(q) => {
                        num = q;
                        left -= 1;
                    }
                    Err(_) => break,
                }
            }
            if left > 0 {
                den.push((*f, left));
            }
        }
        Self::from_parts(num, den)
    }

    /// The polynomial value, if the fraction reduces to one.
    pub fn into_poly(self) -> Result<XPolyOf<K, C>, Error> {
        let r = self.reduce();
        if r.den.is_empty() {
            Ok(r.num)
        } else {
            Err(Error::NotDivisible(format!(
                "fraction does not reduce to a polynomial: {}",
                r.den_text()
            )))
        }
    }

    fn den_text(&self) -> String {
        self.den
            .iter()
            .map(|(f, k)| {
                if *k == 1 {
                    format!("({f})")
                } else {
                    format!("({f})^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Sum over the least common denominator, without final cancellation.
    pub fn sum_unreduced<I: IntoIterator<Item = Self>>(nvars: usize, items: I) -> Self {
        let mut groups: BTreeMap<Den, XPolyOf<K, C>> = BTreeMap::new();
        for it in items {
            if it.num.is_zero() {
                continue;
            }
            match groups.get_mut(&it.den) {
                Some(acc) => *acc = acc.add_ref(&it.num),
                None => {
                    groups.insert(it.den, it.num);
                }
            }
        }
        groups.retain(|_, v| !v.is_zero());
        if groups.len() > 1 {
            // Partial sums often cancel factors; shrinking them first keeps the LCD small.
            let mut regrouped: BTreeMap<Den, XPolyOf<K, C>> = BTreeMap::new();
            for (den, num) in groups {
                let r = XRatOf { num, den }.reduce();
                match regrouped.get_mut(&r.den) {
                    Some(acc) => *acc = acc.add_ref(&r.num),
                    None => {
                        regrouped.insert(r.den, r.num);
                    }
                }
            }
            regrouped.retain(|_, v| !v.is_zero());
            groups = regrouped;
        }
        match groups.len() {
            0 => return Self::zero(nvars),
            1 => {
                let (den, num) = groups.into_iter().next().unwrap();
                return XRatOf { num, den };
            }
            _ => {}
        }
        let mut lcd: BTreeMap<LinFactor, u32> = BTreeMap::new();
        for den in groups.keys() {
            for (f, k) in den {
                let e = lcd.entry(*f).or_insert(0);
                *e = (*e).max(*k);
            }
        }
        let mut total = XPolyOf::zero(nvars);
        for (den, num) in groups {
            let mut p = num;
            for (f, k) in &lcd {
                let have = den.iter().find(|t| t.0 == *f).map(|t| t.1).unwrap_or(0);
                for _ in have..*k {
                    p = p.mul_linear(f.i as usize, f.j as usize, f.shift);
                }
            }
            total = total.add_ref(&p);
        }
        Self::from_parts(total, lcd.into_iter().collect())
    }

    /// Sum with cancellation of common factors.
    pub fn sum<I: IntoIterator<Item = Self>>(nvars: usize, items: I) -> Self {
        Self::sum_unreduced(nvars, items).reduce()
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        Self::sum(self.nvars(), [self.clone(), other.clone()])
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        Self::sum(self.nvars(), [self.clone(), other.neg_ref()])
    }

    /// Equality by cross-multiplication over the common denominator.
    pub fn equals(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        Self::sum_unreduced(self.nvars(), [self.clone(), other.neg_ref()]).is_zero()
    }
}

impl<K: QExponent + MonomialText, C: Scalar> fmt::Display for XRatOf<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / ({})", self.num, self.den_text())
    }
}

impl<K: QExponent + MonomialText, C: Scalar> fmt::Debug for XRatOf<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QLaurent, XPoly, XRat};

    fn x(i: usize) -> XPoly {
        XPoly::var(2, i)
    }

    fn f01(shift: i32) -> LinFactor {
        LinFactor { i: 0, j: 1, shift }
    }

    #[test]
    fn sign_normalization_equality() {
        let a = XRat::new(x(0), [f01(0)]);
        // -x1 / (x2 - x1)
        let (f, u) = LinFactor::normalize(1, 0, 0, 0);
        let b = XRat::from_poly(x(0).neg_ref()).div_factor(f, u);
        assert!(a.equals(&b));
        assert_eq!(a, b);
    }

    #[test]
    fn partial_fractions_collapse() {
        // x1/(x1-x2) + x2/(x2-x1) = 1
        let a = XRat::new(x(0), [f01(0)]);
        let (f, u) = LinFactor::normalize(1, 0, 0, 0);
        let b = XRat::from_poly(x(1)).div_factor(f, u);
        let s = XRat::sum(2, [a, b]);
        assert!(s.is_poly());
        assert!(s.num().is_one());
    }

    #[test]
    fn substitution_moves_units() {
        let a = XRat::new(x(0), [f01(0)]);
        let s = a.subst_q_shift(&crate::exactnum::xvec(&[1, 0]));
        // q x1 / (q x1 - x2) = x1 / (x1 - q^-1 x2)
        let expect = XRat::new(x(0), [f01(-1)]);
        assert!(s.equals(&expect));
        assert_eq!(s, expect);
    }

    #[test]
    fn reduce_cancels_and_reports() {
        let p = x(0).mul_linear(0, 1, 2).scale(&QLaurent::from_int(3));
        let r = XRat::new(p, [f01(2), f01(2)]).reduce();
        assert_eq!(r.den().len(), 1);
        assert!(r.clone().into_poly().is_err());
        assert!(XRat::new(x(0).mul_linear(0, 1, 2), [f01(2)])
            .into_poly()
            .is_ok());
    }
}
