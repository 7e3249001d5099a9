//! Generators of the representation: `M_{α,n}`, symmetric multiplications,
//! the Cartan currents and the `(q,t)` deformation.

use std::fmt;
use std::str::FromStr;

use super::{check_rank, ShiftOpOf};
use crate::exactnum::{xvec, LinFactor, QExponent, QtExp, Scalar, XPolyOf, XRatOf};
use crate::{Error, Laurent, Result};

fn subsets(nvars: usize, alpha: usize) -> impl Iterator<Item = u32> {
    (0u32..(1 << nvars)).filter(move |s| s.count_ones() as usize == alpha)
}

/// `∏_{i∈I, j∉I} (x_i - x_j)` as a denominator, dividing `num` by it.
fn over_cross_factors<K: QExponent, C: Scalar>(
    num: XPolyOf<K, C>,
    nvars: usize,
    set: u32,
) -> XRatOf<K, C> {
    let mut rat = XRatOf::from_poly(num);
    for i in (0..nvars).filter(|i| set >> i & 1 == 1) {
        for j in (0..nvars).filter(|j| set >> j & 1 == 0) {
            let (f, u) = LinFactor::normalize(i, 0, j, 0);
            rat = rat.div_factor(f, u);
        }
    }
    rat
}

fn indicator(nvars: usize, set: u32, value: i32) -> Vec<i32> {
    (0..nvars)
        .map(|i| if set >> i & 1 == 1 { value } else { 0 })
        .collect()
}

/// `M_{α,n} = Σ_{|I|=α} x_I^n ∏_{i∈I,j∉I} x_i/(x_i - x_j) · D_I`.
pub fn op_m<K: QExponent, C: Scalar>(r: usize, alpha: usize, n: i32) -> ShiftOpOf<K, C> {
    let nvars = r + 1;
    let outside = nvars.saturating_sub(alpha) as i32;
    let items = subsets(nvars, alpha).map(|set| {
        let num = XPolyOf::monomial(nvars, &indicator(nvars, set, n + outside), Laurent::one());
        (
            xvec(&indicator(nvars, set, 1)),
            over_cross_factors(num, nvars, set),
        )
    });
    ShiftOpOf::from_terms(nvars, items.collect::<Vec<_>>())
}

/// The `(q,t)` version with weights `∏ (t x_i - x_j)/(x_i - x_j)`.
pub fn op_m_qt<C: Scalar>(r: usize, alpha: usize, n: i32) -> ShiftOpOf<QtExp, C> {
    let nvars = r + 1;
    let t = Laurent::monomial(QtExp::new(0, 1), C::one());
    let items = subsets(nvars, alpha).map(|set| {
        let mut num = XPolyOf::monomial(nvars, &indicator(nvars, set, n), Laurent::one());
        for i in (0..nvars).filter(|i| set >> i & 1 == 1) {
            for j in (0..nvars).filter(|j| set >> j & 1 == 0) {
                let lin = XPolyOf::var(nvars, i)
                    .scale(&t)
                    .sub_ref(&XPolyOf::var(nvars, j));
                num = num.mul_ref(&lin);
            }
        }
        (
            xvec(&indicator(nvars, set, 1)),
            over_cross_factors(num, nvars, set),
        )
    });
    ShiftOpOf::from_terms(nvars, items.collect::<Vec<_>>())
}

/// Coefficient of `t^deg` in a `(q,t)` operator.
pub fn leading_t<C: Scalar>(op: &ShiftOpOf<QtExp, C>, deg: i32) -> ShiftOpOf<i32, C> {
    op.map_num(|p| p.map_base(|k| (k.t == deg).then_some(k.q)))
}

/// Multiplication operators available through [`op_sym`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymSpec {
    /// Elementary symmetric `e_m`, the conserved quantity `C_m`.
    E(usize),
    /// Power sum `p_k`, `k >= 1`.
    P(i32),
    /// Complete homogeneous `h_m`.
    H(usize),
    /// `A^k = (x_1 ⋯ x_{r+1})^k`.
    APow(i32),
    /// Rescaled Cartan coefficient `ψ̃⁺_p`, supported on `p >= r+1`.
    PsiPlus(i32),
    /// Rescaled Cartan coefficient `ψ̃⁻_p`, supported on `p <= -(r+1)`.
    PsiMinus(i32),
}

impl FromStr for SymSpec {
    type Err = Error;

    /// Accepts `e2`, `p3`, `h1`, `A^2`, `psi+3`, `psi-(-3)` or `psi--3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown symmetric function spec {s:?}"));
        let s = s.trim();
        let int = |t: &str| {
            t.trim_matches(|c| c == '(' || c == ')')
                .parse::<i32>()
                .map_err(|_| bad())
        };
        if let Some(rest) = s.strip_prefix("psi+") {
            return Ok(SymSpec::PsiPlus(int(rest)?));
        }
        if let Some(rest) = s.strip_prefix("psi-") {
            return Ok(SymSpec::PsiMinus(int(rest)?));
        }
        if let Some(rest) = s.strip_prefix("A^") {
            return Ok(SymSpec::APow(int(rest)?));
        }
        if s == "A" {
            return Ok(SymSpec::APow(1));
        }
        let (head, tail) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        let v = int(tail)?;
        let nonneg = |v: i32| usize::try_from(v).map_err(|_| bad());
        match head {
            "e" => Ok(SymSpec::E(nonneg(v)?)),
            "p" => Ok(SymSpec::P(v)),
            "h" => Ok(SymSpec::H(nonneg(v)?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for SymSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SymSpec::E(m) => write!(f, "e{m}"),
            SymSpec::P(k) => write!(f, "p{k}"),
            SymSpec::H(m) => write!(f, "h{m}"),
            SymSpec::APow(k) => write!(f, "A^{k}"),
            SymSpec::PsiPlus(p) => write!(f, "psi+{p}"),
            SymSpec::PsiMinus(p) => write!(f, "psi-{p}"),
        }
    }
}

fn sign<K: QExponent, C: Scalar>(p: XPolyOf<K, C>, negative: bool) -> XPolyOf<K, C> {
    if negative {
        p.neg_ref()
    } else {
        p
    }
}

/// `ψ̃⁺_p = (-1)^{r+1} (∏x) Σ_{a+b=p-r-1} h_a h_b q^{-(b+r+1)}`; zero below `r+1`.
pub fn psi_plus<K: QExponent, C: Scalar>(r: usize, p: i32) -> XPolyOf<K, C> {
    let nvars = r + 1;
    let s = p - nvars as i32;
    if s < 0 {
        return XPolyOf::zero(nvars);
    }
    let h: Vec<XPolyOf<K, C>> = (0..=s as usize)
        .map(|m| XPolyOf::complete(nvars, m))
        .collect();
    let mut acc = XPolyOf::zero(nvars);
    for a in 0..=s as usize {
        let b = s as usize - a;
        acc = acc.add_ref(&h[a].mul_ref(&h[b]).mul_q_pow(-(b as i32 + nvars as i32)));
    }
    sign(acc.mul_ref(&XPolyOf::prod_power(nvars, 1)), nvars % 2 == 1)
}

/// `ψ̃⁻_p = (-1)^{r+1} (∏x)^{-1} Σ_{a+b=-p-r-1} ĥ_a ĥ_b q^b` with `ĥ_m = h_m(1/x)`; zero above `-(r+1)`.
pub fn psi_minus<K: QExponent, C: Scalar>(r: usize, p: i32) -> XPolyOf<K, C> {
    let nvars = r + 1;
    let s = -p - nvars as i32;
    if s < 0 {
        return XPolyOf::zero(nvars);
    }
    let h: Vec<XPolyOf<K, C>> = (0..=s as usize)
        .map(|m| XPolyOf::complete(nvars, m).invert_vars())
        .collect();
    let mut acc = XPolyOf::zero(nvars);
    for a in 0..=s as usize {
        let b = s as usize - a;
        acc = acc.add_ref(&h[a].mul_ref(&h[b]).mul_q_pow(b as i32));
    }
    sign(acc.mul_ref(&XPolyOf::prod_power(nvars, -1)), nvars % 2 == 1)
}

/// Multiplication by a symmetric function of `x_1..x_{r+1}`.
pub fn op_sym<K: QExponent, C: Scalar>(r: usize, spec: SymSpec) -> Result<ShiftOpOf<K, C>> {
    let nvars = check_rank(r)?;
    let invalid = || Error::InvalidSpec(format!("{spec} is not defined at rank {r}"));
    let p = match spec {
        SymSpec::E(m) if m <= nvars => XPolyOf::elementary(nvars, m),
        SymSpec::P(k) if k >= 1 => XPolyOf::power_sum(nvars, k),
        SymSpec::H(m) => XPolyOf::complete(nvars, m),
        SymSpec::APow(k) => XPolyOf::prod_power(nvars, k),
        SymSpec::PsiPlus(p) if p >= nvars as i32 => psi_plus(r, p),
        SymSpec::PsiMinus(p) if p <= -(nvars as i32) => psi_minus(r, p),
        _ => return Err(invalid()),
    };
    Ok(ShiftOpOf::mult_poly(p))
}

/// `f̃_n = A^{-n} M_{r,n} Δ^{-1}`.
pub fn op_f<K: QExponent, C: Scalar>(r: usize, n: i32) -> ShiftOpOf<K, C> {
    let nvars = r + 1;
    let a = ShiftOpOf::mult_poly(XPolyOf::prod_power(nvars, -n));
    a.compose(&op_m(r, r, n))
        .compose(&ShiftOpOf::delta_pow(nvars, -1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QLaurent, QtShiftOp, ShiftOp, XPoly, XRat};
    use num_bigint::BigInt;

    fn m(r: usize, alpha: usize, n: i32) -> ShiftOp {
        op_m(r, alpha, n)
    }

    #[test]
    fn first_generators() {
        let one = XPoly::one(2);
        assert_eq!(m(1, 1, 0).apply_poly(&one).unwrap(), one);
        let e1 = XPoly::elementary(2, 1);
        assert_eq!(m(1, 1, 1).apply_poly(&one).unwrap(), e1);
        assert_eq!(m(1, 2, 0), ShiftOp::delta_pow(2, 1));
        assert_eq!(m(2, 0, 5), ShiftOp::identity(3));
        assert!(m(1, 3, 0).is_zero());
        let d1 = m(1, 1, 0).coeff(&[1, 0]);
        let x1 = XPoly::var(2, 0);
        assert!(d1.equals(&XRat::new(
            x1,
            [LinFactor {
                i: 0,
                j: 1,
                shift: 0
            }]
        )));
    }

    #[test]
    fn low_relations() {
        // M_{1,0} M_{1,1} = q M_{1,1} M_{1,0}
        let (a, b) = (m(1, 1, 0), m(1, 1, 1));
        assert_eq!(a.compose(&b), b.compose(&a).scale(&QLaurent::q()));
        // q M_1 M_{-1} = M_0^2 - M_{2,0}
        let lhs = m(1, 1, 1).compose(&m(1, 1, -1)).scale(&QLaurent::q());
        assert_eq!(lhs, m(1, 1, 0).compose(&m(1, 1, 0)).sub_ref(&m(1, 2, 0)));
    }

    #[test]
    fn qt_reduces() {
        for r in 1..=2usize {
            for alpha in 0..=r + 1 {
                let qt: QtShiftOp = op_m_qt(r, alpha, 1);
                let top = (alpha * (r + 1 - alpha)) as i32;
                assert_eq!(leading_t(&qt, top), m(r, alpha, 1));
                assert!(leading_t(&qt, top + 1).is_zero());
            }
        }
    }

    #[test]
    fn sym_specs() {
        assert_eq!("e2".parse::<SymSpec>().unwrap(), SymSpec::E(2));
        assert_eq!("psi--3".parse::<SymSpec>().unwrap(), SymSpec::PsiMinus(-3));
        assert_eq!("A^-1".parse::<SymSpec>().unwrap(), SymSpec::APow(-1));
        assert!("z1".parse::<SymSpec>().is_err());
        let p2: ShiftOp = op_sym(1, SymSpec::P(2)).unwrap();
        assert_eq!(p2, ShiftOp::mult_poly(XPoly::power_sum(2, 2)));
        let psi: ShiftOp = op_sym(2, SymSpec::PsiPlus(3)).unwrap();
        let expect = XPoly::prod_power(3, 1)
            .scale(&QLaurent::q_pow(-3))
            .neg_ref();
        assert_eq!(psi, ShiftOp::mult_poly(expect));
        assert!(op_sym::<i32, BigInt>(1, SymSpec::PsiPlus(1)).is_err());
        assert!(op_sym::<i32, BigInt>(1, SymSpec::PsiMinus(-1)).is_err());
        assert!(op_sym::<i32, BigInt>(1, SymSpec::E(3)).is_err());
    }

    #[test]
    fn f_operator() {
        let f0: ShiftOp = op_f(1, 0);
        assert_eq!(f0, m(1, 1, 0).compose(&ShiftOp::delta_pow(2, -1)));
    }
}
