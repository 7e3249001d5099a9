//! The homomorphism from normal-ordered polynomials to operators.
//!
//! Composing `M_{w_1} ⋯ M_{w_k}` picks one `D_{i_t}` per factor. Along such a
//! path the weight `∏_t ∏_{j≠i_t} y_{i_t}/(y_{i_t} - y_j)`, with `y = q^{s_t} x`
//! and `s_t` the shift accumulated so far, does not depend on the word. So all
//! words of the same length are summed per path first, and only then divided
//! by the path's denominator.

use std::collections::BTreeMap;

use super::{check_rank, ShiftOpOf};
use crate::exactnum::{Den, LinFactor, XVec, MAX_VARS};
use crate::ncalgebra::{NcPoly, NcWord};
use crate::{QLaurent, Result, ShiftOp, XPoly, XRat};

struct PathWeight {
    /// Shifts `s_0..s_{k-1}` in force before each step.
    prefix: Vec<XVec>,
    last: XVec,
    choice: Vec<usize>,
    num_mono: XVec,
    num_q: i32,
    negate: bool,
    den: Den,
}

fn path_weight(nvars: usize, choice: Vec<usize>) -> PathWeight {
    let r = nvars as i32 - 1;
    let mut s = [0i16; MAX_VARS];
    let mut prefix = Vec::with_capacity(choice.len());
    let mut mono = [0i16; MAX_VARS];
    let (mut q, mut negate) = (0i32, false);
    let mut den: BTreeMap<LinFactor, u32> = BTreeMap::new();
    for &i in &choice {
        prefix.push(s);
        mono[i] += r as i16;
        q += r * s[i] as i32;
        for j in (0..nvars).filter(|&j| j != i) {
            let (f, u) = LinFactor::normalize(i, s[i] as i32, j, s[j] as i32);
            q -= u.q_exp;
            negate ^= u.negate;
            *den.entry(f).or_insert(0) += 1;
        }
        s[i] += 1;
    }
    PathWeight {
        prefix,
        last: s,
        choice,
        num_mono: mono,
        num_q: q,
        negate,
        den: den.into_iter().collect(),
    }
}

fn all_paths(nvars: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..nvars).map(move |i| {
                    let mut v = p.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// Image of a normal-ordered polynomial in the rank-`r` representation.
pub fn nc_to_op(r: usize, p: &NcPoly) -> Result<ShiftOp> {
    let nvars = check_rank(r)?;
    let mut groups: BTreeMap<(usize, i32, i32), Vec<(&NcWord, &QLaurent)>> = BTreeMap::new();
    for (w, c) in p.terms() {
        groups
            .entry((w.m.len(), w.a, w.d))
            .or_default()
            .push((w, c));
    }
    let mut items: Vec<(XVec, XRat)> = Vec::new();
    for ((k, a, d), words) in groups {
        for choice in all_paths(nvars, k) {
            let pw = path_weight(nvars, choice);
            let mut terms: Vec<(Vec<i32>, QLaurent)> = Vec::with_capacity(words.len());
            for (w, c) in &words {
                let mut mono = vec![a; nvars];
                let mut q = a * k as i32;
                for (t, &n) in w.m.iter().enumerate() {
                    let i = pw.choice[t];
                    mono[i] += n;
                    q += n * pw.prefix[t][i] as i32;
                }
                terms.push((mono, c.mul_q_pow(q)));
            }
            let poly =
                XPoly::from_terms(nvars, terms.iter().map(|(m, c)| (m.as_slice(), c.clone())));
            let num = poly.mul_term(&pw.num_mono, pw.num_q, pw.negate);
            let mut eps = pw.last;
            for v in eps.iter_mut().take(nvars) {
                *v += d as i16;
            }
            items.push((eps, XRat::from_parts(num, pw.den)));
        }
    }
    Ok(ShiftOpOf::from_terms(nvars, items))
}

/// Image of one normal word by plain left-to-right composition.
pub fn word_to_op(r: usize, w: &NcWord) -> Result<ShiftOp> {
    let nvars = check_rank(r)?;
    let mut op = ShiftOp::identity(nvars);
    for &n in w.m.iter() {
        op = op.compose(&super::op_m(r, 1, n));
    }
    let a = ShiftOp::mult_poly(XPoly::prod_power(nvars, w.a));
    Ok(op.compose(&a).compose(&ShiftOp::delta_pow(nvars, w.d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ctengine::m_alpha;
    use crate::ncalgebra::normal_form;
    use crate::repdiff::op_m;

    fn nf(s: &str) -> NcPoly {
        normal_form(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn generators() {
        for r in 1..=2 {
            let nv = r + 1;
            assert_eq!(nc_to_op(r, &NcPoly::m(3)).unwrap(), op_m(r, 1, 3));
            assert_eq!(
                nc_to_op(r, &NcPoly::a_pow(1)).unwrap(),
                ShiftOp::mult_poly(XPoly::prod_power(nv, 1))
            );
            assert_eq!(
                nc_to_op(r, &NcPoly::delta_pow(-1)).unwrap(),
                ShiftOp::delta_pow(nv, -1)
            );
        }
    }

    #[test]
    fn matches_naive_composition() {
        let p = nf(
            "2 * M[2] M[-1] A^1 D^-1 - q * M[0] M[0] M[1] + M[3] A^-2 D^1 + (1 + q) * M[-1] M[-1]",
        );
        for r in 1..=2 {
            let mut naive = ShiftOp::zero(r + 1);
            for (w, c) in p.terms() {
                naive = naive.add_ref(&word_to_op(r, w).unwrap().scale(c));
            }
            assert_eq!(nc_to_op(r, &p).unwrap(), naive);
        }
    }

    #[test]
    fn determinants_and_rank_quotient() {
        for r in 1..=2 {
            assert_eq!(
                nc_to_op(r, &nf("M[0] M[0] - q * M[1] M[-1]")).unwrap(),
                op_m(r, 2, 0)
            );
            for n in -1..=1 {
                assert_eq!(nc_to_op(r, &m_alpha(r + 1, n)).unwrap(), op_m(r, r + 1, n));
                assert!(nc_to_op(r, &m_alpha(r + 2, n)).unwrap().is_zero());
            }
        }
    }
}
