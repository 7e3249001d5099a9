use num_bigint::BigInt;
use proptest::prelude::*;

use qsys_core::ctengine::m_alpha;
use qsys_core::exactnum::xvec;
use qsys_core::ncalgebra::{apply_tau, nc_mul, normal_form, FormalExpr, Letter, NcAlgebra, NcPoly};
use qsys_core::repdiff::nc_to_op;
use qsys_core::{QLaurent, XPoly};

fn laurent() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-4i32..=4, -5i64..=5), 0..4)
        .prop_map(|v| QLaurent::from_terms(v.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn xpoly(nvars: usize) -> impl Strategy<Value = XPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, nvars), laurent()), 0..4).prop_map(
        move |v| XPoly::from_terms(nvars, v.iter().map(|(e, c)| (e.as_slice(), c.clone()))),
    )
}

fn m_word() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(-3i32..=3, 0..4).prop_map(|v| v.into_iter().map(Letter::M).collect())
}

/// Words with `A` letters; `Δ` only at the end so no rank is needed.
fn word() -> impl Strategy<Value = Vec<Letter>> {
    (prop::collection::vec((-3i32..=3, 0u8..6), 0..4), -1i32..=1).prop_map(|(v, d)| {
        let mut w: Vec<Letter> = v
            .into_iter()
            .map(|(n, k)| {
                if k == 0 {
                    Letter::A(n.signum().max(1))
                } else {
                    Letter::M(n)
                }
            })
            .collect();
        if d != 0 {
            w.push(Letter::D(d));
        }
        w
    })
}

fn poly_of(words: impl Strategy<Value = Vec<Letter>>) -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((words, laurent()), 1..3).prop_map(|ts| {
        let mut e = FormalExpr::zero();
        for (w, c) in ts {
            e.push(c, w);
        }
        normal_form(&e).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert!(a.sub_ref(&a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(a.mul_ref(&b).div_exact(&b).unwrap(), a);
        }
    }

    #[test]
    fn xpoly_ring_axioms(a in xpoly(3), b in xpoly(3), c in xpoly(3)) {
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
    }

    #[test]
    fn linear_division_inverts_multiplication(a in xpoly(3), i in 0usize..3, j in 0usize..3, s in -3i32..=3) {
        prop_assume!(i != j);
        prop_assert_eq!(a.mul_linear(i, j, s).div_linear(i, j, s).unwrap(), a);
    }

    #[test]
    fn q_shift_is_multiplicative(a in xpoly(2), b in xpoly(2), e in prop::collection::vec(-2i32..=2, 2)) {
        let eps = xvec(&e);
        prop_assert_eq!(a.mul_ref(&b).subst_q_shift(&eps), a.subst_q_shift(&eps).mul_ref(&b.subst_q_shift(&eps)));
        let back: Vec<i32> = e.iter().map(|v| -v).collect();
        prop_assert_eq!(a.subst_q_shift(&eps).subst_q_shift(&xvec(&back)), a);
    }

    #[test]
    fn normal_form_is_idempotent(p in poly_of(word())) {
        prop_assert_eq!(normal_form(&p.to_formal()).unwrap(), p);
    }

    #[test]
    fn normal_ordered_product_is_associative(a in poly_of(m_word()), b in poly_of(m_word()), c in poly_of(m_word())) {
        let left = nc_mul(&nc_mul(&a, &b).unwrap(), &c).unwrap();
        let right = nc_mul(&a, &nc_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn tau_is_an_involutive_anti_automorphism(a in poly_of(m_word()), b in poly_of(m_word())) {
        prop_assert_eq!(apply_tau(&apply_tau(&a).unwrap()).unwrap(), a.clone());
        let ab = nc_mul(&a, &b).unwrap();
        let rev = nc_mul(&apply_tau(&b).unwrap(), &apply_tau(&a).unwrap()).unwrap();
        prop_assert_eq!(apply_tau(&ab).unwrap(), rev);
    }

    #[test]
    fn grade_and_length_are_preserved(w in m_word()) {
        let grade: i32 = w.iter().map(|l| match l { Letter::M(n) => *n, _ => 0 }).sum();
        let p = normal_form(&FormalExpr::word(w.clone())).unwrap();
        for (t, _) in p.terms() {
            prop_assert_eq!(t.grade(), grade);
            prop_assert_eq!(t.m.len(), w.len());
        }
    }

    #[test]
    fn representation_is_multiplicative(a in poly_of(m_word()), b in poly_of(word())) {
        let alg = NcAlgebra::with_rank(1);
        let ab = alg.mul(&a, &b).unwrap();
        let lhs = nc_to_op(1, &ab).unwrap();
        let rhs = nc_to_op(1, &a).unwrap().compose(&nc_to_op(1, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn m_alpha_translates(alpha in 1usize..=3, n in -3i32..=3) {
        prop_assert_eq!(m_alpha(alpha, 0).translate(n), m_alpha(alpha, n));
        prop_assert_eq!(m_alpha(alpha, n).grade(), Some(alpha as i32 * n));
    }
}
