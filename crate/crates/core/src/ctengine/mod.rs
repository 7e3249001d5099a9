//! Constant-term calculus: kernels in `u_1..u_α` and their realization as
//! normal-ordered polynomials in the `M_n`.
//!
//! A kernel monomial `∏ u_i^{e_i}` taken at `z`-degree `n` becomes the word
//! `M_{n-e_1} M_{n-e_2} ⋯ M_{n-e_α}`, slots read left to right.

mod kernel;

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub use kernel::{defect_kernel, p_kernel, qvandermonde, UExp, UKernel};

use crate::ncalgebra::{normal_order, FormalExpr, Letter, NcAlgebra, NcPoly, NcWord};
use crate::{Error, QLaurent, Result};

/// The formal (unordered) sum of words a kernel stands for at degree `n`.
pub fn ct_expand(k: &UKernel, n: i32) -> FormalExpr {
    let mut out = FormalExpr::zero();
    for (e, c) in k.terms() {
        out.push(c.clone(), e.iter().map(|v| Letter::M(n - v)).collect());
    }
    out
}

/// `CT(k · ∏ m(u_i) · δ(u_1⋯u_α / z))` at `z^n`, normal ordered.
pub fn ct_realize(k: &UKernel, n: i32) -> NcPoly {
    let mut out = NcPoly::zero();
    for (e, c) in k.terms() {
        let word: Vec<i32> = e.iter().map(|v| n - v).collect();
        for (w, v) in normal_order(&word) {
            out.add_term(NcWord::new(&w, 0, 0), c.mul_ref(&v));
        }
    }
    out
}

fn m_alpha_cache() -> &'static Mutex<HashMap<usize, Arc<NcPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<NcPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `M_{α,n}` as the constant term of the q-Vandermonde kernel. `α = 0` gives 1.
pub fn m_alpha(alpha: usize, n: i32) -> NcPoly {
    if alpha == 0 {
        return NcPoly::one();
    }
    let hit = m_alpha_cache().lock().unwrap().get(&alpha).cloned();
    let base = match hit {
        Some(p) => p,
        None => {
            let p = Arc::new(ct_realize(&qvandermonde(alpha).expect("alpha >= 1"), 0));
            m_alpha_cache().lock().unwrap().insert(alpha, p.clone());
            p
        }
    };
    base.translate(n)
}

/// `s(α) = (-1)^{α(α+1)/2 - 1}`, the sign relating the nested commutator to
/// `(q-1)^{α-1} M_{α,n}`.
pub fn nested_sign(alpha: usize) -> i32 {
    let e = (alpha * (alpha + 1) / 2) as i64 - 1;
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `[⋯[[M_{n-α+1}, M_{n-α+3}]_{q^2}, M_{n-α+5}]_{q^3}, ⋯, M_{n+α-1}]_{q^α}`, normal ordered.
pub fn m_alpha_nested(alpha: usize, n: i32) -> Result<NcPoly> {
    if alpha == 0 {
        return Err(Error::InvalidSpec("nested form needs alpha >= 1".into()));
    }
    let a = alpha as i32;
    let alg = NcAlgebra::free();
    let mut x = NcPoly::m(n - a + 1);
    for k in 2..=a {
        x = alg.q_comm(&x, &NcPoly::m(n - a + 2 * k - 1), k)?;
    }
    Ok(x)
}

/// Representative of the conserved quantity `C_m`: `CT(Δ_q/(u_1⋯u_m)) · Δ^{-1}`.
pub fn c_m_defect(r: usize, m: usize) -> Result<NcPoly> {
    Ok(ct_realize(&defect_kernel(r, m)?, 0).mul_right_ad(0, -1))
}

/// `σ(M_n) = A^{-n} M_{r,n} Δ^{-1}`.
pub fn sigma_image(r: usize, n: i32) -> Result<NcPoly> {
    if r == 0 {
        return Err(Error::InvalidSpec("sigma needs r >= 1".into()));
    }
    let body = NcAlgebra::free().mul(&NcPoly::a_pow(-n), &m_alpha(r, n))?;
    Ok(body.mul_right_ad(0, -1))
}

/// Extends `σ` multiplicatively: `σ(A) = A^{-1}`, `σ(Δ) = Δ^{-1}`.
pub fn apply_sigma(r: usize, p: &NcPoly) -> Result<NcPoly> {
    let alg = NcAlgebra::with_rank(r as u32);
    let mut images: HashMap<i32, NcPoly> = HashMap::new();
    let mut out = NcPoly::zero();
    for (w, c) in p.terms() {
        let mut acc = NcPoly::scalar(c.clone());
        for &n in w.m.iter() {
            let img = match images.entry(n) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert(sigma_image(r, n)?),
            };
            acc = alg.mul(&acc, img)?;
        }
        acc = alg.mul(
            &acc,
            &NcPoly::term(NcWord::new(&[], -w.a, -w.d), QLaurent::one()),
        )?;
        out = out.add_ref(&acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalgebra::normal_form;

    fn ql(s: &str) -> QLaurent {
        s.parse().unwrap()
    }

    fn nf(s: &str) -> NcPoly {
        normal_form(&s.parse().unwrap()).unwrap()
    }

    fn kernel(arity: usize, terms: &[(&[i32], &str)]) -> UKernel {
        UKernel::from_terms(arity, terms.iter().map(|(e, c)| (e.to_vec(), ql(c))))
    }

    #[test]
    fn p_kernels_match_reference() {
        assert_eq!(p_kernel(1).unwrap(), UKernel::one(1));
        assert_eq!(
            p_kernel(2).unwrap(),
            kernel(2, &[(&[1, -1], "1"), (&[-1, 1], "-q^2")])
        );
        let p3 = kernel(
            3,
            &[
                (&[2, 0, -2], "1"),
                (&[2, -2, 0], "-q^2"),
                (&[0, -2, 2], "-q^3"),
                (&[-2, 0, 2], "q^5"),
            ],
        );
        assert_eq!(p_kernel(3).unwrap(), p3);
        let p4 = kernel(
            4,
            &[
                (&[3, 1, -1, -3], "1"),
                (&[3, 1, -3, -1], "-q^2"),
                (&[3, -1, -3, 1], "-q^3"),
                (&[3, -3, -1, 1], "q^5"),
                (&[1, -1, -3, 3], "-q^4"),
                (&[1, -3, -1, 3], "q^6"),
                (&[-1, -3, 1, 3], "q^7"),
                (&[-3, -1, 1, 3], "-q^9"),
            ],
        );
        assert_eq!(p_kernel(4).unwrap(), p4);
    }

    #[test]
    fn index_map() {
        let k = kernel(2, &[(&[1, -1], "1")]);
        assert_eq!(ct_realize(&k, 0), nf("M[-1] M[1]"));
        assert_eq!(ct_realize(&UKernel::one(1), 5), NcPoly::m(5));
    }

    #[test]
    fn small_m_alphas() {
        assert_eq!(m_alpha(0, 3), NcPoly::one());
        assert_eq!(m_alpha(1, -2), NcPoly::m(-2));
        for n in -2..=2 {
            let e = format!("M[{n}] M[{n}] - q * M[{}] M[{}]", n + 1, n - 1);
            assert_eq!(m_alpha(2, n), nf(&e));
        }
        let three = "M[0] M[0] M[0] - q * M[1] M[-1] M[0] + (-q + q^2) * M[1] M[0] M[-1] \
                     - q * M[0] M[1] M[-1] + q^2 * M[2] M[-1] M[-1] + q^2 * M[1] M[1] M[-2] \
                     - q^3 * M[2] M[0] M[-2]";
        assert_eq!(m_alpha(3, 0), nf(three));
    }

    #[test]
    fn nested_examples() {
        let q1 = ql("q - 1");
        for n in -1..=1 {
            assert_eq!(m_alpha_nested(2, n).unwrap(), m_alpha(2, n).scale(&q1));
            assert_eq!(
                m_alpha_nested(3, n).unwrap(),
                m_alpha(3, n).scale(&q1.pow(2)).neg_ref()
            );
        }
        // The q^7 and q^9 signs follow P_4; the opposite signs do not normal-order to the same element.
        let four =
            "M[-3] M[-1] M[1] M[3] - q^2 * M[-3] M[-1] M[3] M[1] - q^3 * M[-3] M[1] M[3] M[-1] \
                    + q^5 * M[-3] M[3] M[1] M[-1] - q^4 * M[-1] M[1] M[3] M[-3] \
                    + q^6 * M[-1] M[3] M[1] M[-3] + q^7 * M[1] M[3] M[-1] M[-3] \
                    - q^9 * M[3] M[1] M[-1] M[-3]";
        let flipped = four.replace("+ q^7", "- q^7").replace("- q^9", "+ q^9");
        let target = m_alpha(4, 0).scale(&q1.pow(3)).neg_ref();
        assert_eq!(m_alpha_nested(4, 0).unwrap(), target);
        assert_eq!(nf(four), target);
        assert_ne!(nf(&flipped), target);
        assert_eq!([1, 2, 3, 4, 5].map(nested_sign), [1, 1, -1, -1, 1]);
    }

    #[test]
    fn p_kernel_realizes_nested() {
        // CT(P_α) carries (-1)^{α(α-1)/2} (1-q)^{α-1}
        for alpha in 1..=4usize {
            let sign = if (alpha * (alpha - 1) / 2) % 2 == 0 {
                1
            } else {
                -1
            };
            let f = ql("1 - q")
                .pow(alpha as u32 - 1)
                .scale(&num_bigint::BigInt::from(sign));
            assert_eq!(
                ct_realize(&p_kernel(alpha).unwrap(), 1),
                m_alpha(alpha, 1).scale(&f)
            );
        }
    }

    #[test]
    fn a1_conserved() {
        assert_eq!(
            c_m_defect(1, 1).unwrap(),
            nf("M[1] M[0] D^-1 - q * M[2] M[-1] D^-1")
        );
        assert_eq!(
            c_m_defect(1, 0).unwrap(),
            nf("M[0] M[0] D^-1 - q * M[1] M[-1] D^-1")
        );
        assert_eq!(
            c_m_defect(1, 2).unwrap(),
            nf("M[1] M[1] D^-1 - q * M[2] M[0] D^-1")
        );
    }

    #[test]
    fn sigma_rank_one() {
        assert_eq!(sigma_image(1, 0).unwrap(), nf("M[0] D^-1"));
        assert_eq!(sigma_image(1, 1).unwrap(), nf("A^-1 M[1] D^-1"));
        let a = NcPoly::a_pow(1);
        assert_eq!(apply_sigma(1, &a).unwrap(), NcPoly::a_pow(-1));
        // σ² = id on generators at r = 1
        for n in -2..=2 {
            let s = apply_sigma(1, &NcPoly::m(n)).unwrap();
            assert_eq!(apply_sigma(1, &s).unwrap(), NcPoly::m(n));
        }
    }
}
