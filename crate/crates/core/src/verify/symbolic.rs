//! Rank-independent suites: everything here is an identity between normal forms.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{inst, Case, IntRange, Residual, SuiteParams, MAX_REP_RANK, MAX_SYMBOLIC_ALPHA};
use crate::ctengine::{ct_realize, m_alpha, m_alpha_nested, nested_sign, qvandermonde, UKernel};
use crate::ncalgebra::{reduce_with, FormalExpr, Letter, NcAlgebra, NcPoly, Strategy};
use crate::repdiff::op_m;
use crate::{Error, QLaurent, Result, ShiftOp};

type Suite = (Vec<Case>, Vec<String>);

fn q(e: i32) -> QLaurent {
    QLaurent::q_pow(e)
}

fn mul(a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
    NcAlgebra::free().mul(a, b)
}

fn check_alpha(range: IntRange, max: i32) -> Result<IntRange> {
    if range.lo < 1 || range.hi > max {
        return Err(Error::UnsupportedParams(format!(
            "alpha must lie in 1..{max}, got {range}"
        )));
    }
    Ok(range)
}

fn optional_rank(params: &SuiteParams) -> Result<Option<usize>> {
    match params.r {
        Some(r) if r == 0 || r > MAX_REP_RANK => Err(Error::UnsupportedParams(format!(
            "representation checks support 1 <= r <= {MAX_REP_RANK}"
        ))),
        r => Ok(r),
    }
}

fn default_alpha(params: &SuiteParams, r: Option<usize>) -> IntRange {
    params.alpha.unwrap_or_else(|| match r {
        Some(r) => IntRange::new(1, (r as i32 + 1).min(MAX_SYMBOLIC_ALPHA)),
        None => IntRange::new(1, MAX_SYMBOLIC_ALPHA),
    })
}

pub(crate) fn msys_symbolic(a: usize, n: i32) -> Result<NcPoly> {
    let lhs = mul(&m_alpha(a, n + 1), &m_alpha(a, n - 1))?.scale(&q(a as i32));
    let sq = mul(&m_alpha(a, n), &m_alpha(a, n))?;
    let low = mul(&m_alpha(a + 1, n), &m_alpha(a - 1, n))?;
    Ok(lhs.sub_ref(&sq).add_ref(&low))
}

fn msys_rep(r: usize, a: usize, n: i32) -> ShiftOp {
    let m = |a: usize, n: i32| -> ShiftOp { op_m(r, a, n) };
    let lhs = m(a, n + 1).compose(&m(a, n - 1)).scale(&q(a as i32));
    lhs.sub_ref(&m(a, n).compose(&m(a, n)))
        .add_ref(&m(a + 1, n).compose(&m(a - 1, n)))
}

/// `q^α M_{α,n+1} M_{α,n-1} = M_{α,n}^2 - M_{α+1,n} M_{α-1,n}`.
pub(crate) fn msystem(params: &SuiteParams) -> Result<Suite> {
    let r = optional_rank(params)?;
    let alpha = check_alpha(default_alpha(params, r), MAX_SYMBOLIC_ALPHA)?;
    let ns = params.n.unwrap_or(IntRange::new(-3, 3));
    let mut cases = Vec::new();
    for a in alpha.iter() {
        for n in ns.iter() {
            let a = a as usize;
            cases.push(Case::new(
                inst(&[("alpha", a as i64), ("n", n as i64)]),
                move || {
                    let mut out = vec![("msys".to_string(), Residual::Nc(msys_symbolic(a, n)?))];
                    if let Some(r) = r {
                        out.push(("msys-rep".to_string(), Residual::Op(msys_rep(r, a, n))));
                    }
                    Ok(out)
                },
            ));
        }
    }
    Ok((cases, Vec::new()))
}

pub(crate) fn mcom_symbolic(a: usize, b: usize, n: i32, p: i32) -> Result<NcPoly> {
    let (x, y) = (m_alpha(a, n), m_alpha(b, n + p));
    let twist = q(p * a.min(b) as i32);
    Ok(mul(&x, &y)?.sub_ref(&mul(&y, &x)?.scale(&twist)))
}

/// `M_{α,n} M_{β,n+p} = q^{p min(α,β)} M_{β,n+p} M_{α,n}` for `|p| <= |β-α|+1`.
pub(crate) fn mcom(params: &SuiteParams) -> Result<Suite> {
    let r = optional_rank(params)?;
    let alpha = check_alpha(default_alpha(params, r), MAX_SYMBOLIC_ALPHA)?;
    let ns = params.n.unwrap_or(IntRange::new(-3, 3));
    let mut cases = Vec::new();
    for a in alpha.iter() {
        for b in alpha.iter() {
            let reach = (b - a).abs() + 1;
            // an explicit --p is taken as asked, even outside the window
            let ps = params.p.unwrap_or(IntRange::new(-reach, reach));
            for p in ps.iter() {
                for n in ns.iter() {
                    let (a, b) = (a as usize, b as usize);
                    let id = inst(&[
                        ("alpha", a as i64),
                        ("beta", b as i64),
                        ("n", n as i64),
                        ("p", p as i64),
                    ]);
                    cases.push(Case::new(id, move || {
                        let mut out =
                            vec![("mcom".to_string(), Residual::Nc(mcom_symbolic(a, b, n, p)?))];
                        if let Some(r) = r {
                            let (x, y): (ShiftOp, ShiftOp) = (op_m(r, a, n), op_m(r, b, n + p));
                            let res = x.q_comm(&y, p * a.min(b) as i32);
                            out.push(("mcom-rep".to_string(), Residual::Op(res)));
                        }
                        Ok(out)
                    }));
                }
            }
        }
    }
    Ok((cases, Vec::new()))
}

pub(crate) fn quadratic(n: i32, p: i32) -> Result<NcPoly> {
    let alg = NcAlgebra::free();
    let m = NcPoly::m;
    Ok(alg
        .q_comm(&m(n), &m(n + p), 1)?
        .add_ref(&alg.q_comm(&m(n + p - 1), &m(n + 1), 1)?))
}

fn comm(a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
    NcAlgebra::free().q_comm(a, b, 0)
}

pub(crate) fn cubic(n: i32, p: i32, k: i32) -> Result<NcPoly> {
    let perms = [
        (n, p, k),
        (n, k, p),
        (p, n, k),
        (p, k, n),
        (k, n, p),
        (k, p, n),
    ];
    let mut acc = NcPoly::zero();
    for (a, b, c) in perms {
        let inner = comm(&NcPoly::m(b - 1), &NcPoly::m(c + 1))?;
        acc = acc.add_ref(&comm(&NcPoly::m(a), &inner)?);
    }
    Ok(acc)
}

/// Quadratic exchange relations and the symmetrized cubic relation.
pub(crate) fn exchange(params: &SuiteParams) -> Result<Suite> {
    let ns = params.n.unwrap_or(IntRange::new(-2, 2));
    let ps = params.p.unwrap_or(IntRange::new(1, 4));
    let mut cases = Vec::new();
    for n in ns.iter() {
        for p in ps.iter().filter(|&p| p >= 1) {
            cases.push(Case::one(
                "quadratic",
                inst(&[("n", n as i64), ("p", p as i64)]),
                move || Ok(Residual::Nc(quadratic(n, p)?)),
            ));
        }
    }
    for n in ns.iter() {
        for p in ns.iter() {
            for k in ns.iter() {
                let id = inst(&[("n", n as i64), ("p", p as i64), ("k", k as i64)]);
                cases.push(Case::one("cubic", id, move || {
                    Ok(Residual::Nc(cubic(n, p, k)?))
                }));
            }
        }
    }
    Ok((cases, Vec::new()))
}

pub(crate) fn nested_residual(a: usize, n: i32) -> Result<NcPoly> {
    let scale = QLaurent::from_int(nested_sign(a) as i64).mul_ref(
        &QLaurent::from_terms([(1, BigInt::from(1)), (0, BigInt::from(-1))]).pow(a as u32 - 1),
    );
    Ok(m_alpha_nested(a, n)?.sub_ref(&m_alpha(a, n).scale(&scale)))
}

/// Nested q-commutators against the q-Vandermonde constant term.
pub(crate) fn qdet_nested(params: &SuiteParams) -> Result<Suite> {
    let alpha = check_alpha(
        params.alpha.unwrap_or(IntRange::new(1, 4)),
        MAX_SYMBOLIC_ALPHA,
    )?;
    let ns = params.n.unwrap_or(IntRange::new(-3, 3));
    let mut cases = Vec::new();
    for a in alpha.iter() {
        for n in ns.iter() {
            let a = a as usize;
            cases.push(Case::one(
                "nested",
                inst(&[("alpha", a as i64), ("n", n as i64)]),
                move || Ok(Residual::Nc(nested_residual(a, n)?)),
            ));
        }
    }
    let notes = vec![
        "sign s(alpha) = (-1)^(alpha(alpha+1)/2 - 1); the prefactor (-1)^(alpha(alpha-1)/2) of the P_alpha constant term differs for even alpha".to_string(),
    ];
    Ok((cases, notes))
}

fn g_kernel(arity: usize, g: usize) -> UKernel {
    match g {
        0 => UKernel::one(arity),
        1 => UKernel::elementary(arity, 1, false),
        _ => UKernel::elementary(arity, 1, true),
    }
}

fn unit_vec(arity: usize, i: usize, e: i32) -> Vec<i32> {
    let mut v = vec![0; arity];
    v[i] = e;
    v
}

/// `<f>` at degree `n`: the constant term against the q-Vandermonde kernel.
fn bracket(arity: usize, f: &UKernel, n: i32) -> Result<NcPoly> {
    Ok(ct_realize(&qvandermonde(arity)?.mul_ref(f), n))
}

pub(crate) fn ct_range(a: usize, i: usize, m: i32, g: usize, n: i32) -> Result<NcPoly> {
    let f = g_kernel(a, g).shift(&unit_vec(a, i - 1, m));
    bracket(a, &f, n)
}

pub(crate) fn ct_negbound(a: usize, i: usize, g: usize, n: i32) -> Result<NcPoly> {
    let gk = g_kernel(a, g);
    let lhs = bracket(a, &gk.shift(&unit_vec(a, i - 1, -(i as i32))), n)?;
    let mut e = vec![0; a];
    for v in e.iter_mut().take(i) {
        *v = -1;
    }
    let sign = if (i - 1).is_multiple_of(2) { 1 } else { -1 };
    let rhs = bracket(a, &gk.shift(&e).scale(&QLaurent::from_int(sign)), n)?;
    Ok(lhs.sub_ref(&rhs))
}

pub(crate) fn ct_posbound(a: usize, i: usize, g: usize, n: i32) -> Result<NcPoly> {
    let gk = g_kernel(a, g);
    let lhs = bracket(a, &gk.shift(&unit_vec(a, i - 1, (a - i + 1) as i32)), n)?;
    let mut e = vec![0; a];
    for v in e.iter_mut().skip(i - 1) {
        *v = 1;
    }
    let sign = if (a - i).is_multiple_of(2) { 1 } else { -1 };
    let rhs = bracket(a, &gk.shift(&e).scale(&QLaurent::from_int(sign)), n)?;
    Ok(lhs.sub_ref(&rhs))
}

pub(crate) fn ct_otherqdet(a: usize, n: i32) -> Result<NcPoly> {
    let mut e = vec![-1; a];
    e[0] = a as i32 - 1;
    let sign = if (a - 1).is_multiple_of(2) { 1 } else { -1 };
    let k = UKernel::monomial(&e, QLaurent::from_int(sign));
    Ok(bracket(a, &k, n)?.sub_ref(&m_alpha(a, n)))
}

/// Constant-term vanishing and boundary identities for `g` in `{1, e_1(u), e_1(1/u)}`.
pub(crate) fn ct_lemmas(params: &SuiteParams) -> Result<Suite> {
    let alpha = check_alpha(
        params.alpha.unwrap_or(IntRange::new(1, 4)),
        MAX_SYMBOLIC_ALPHA,
    )?;
    let ns = params.n.unwrap_or(IntRange::new(-1, 1));
    let mut cases = Vec::new();
    for a in alpha.iter() {
        let a = a as usize;
        for n in ns.iter() {
            for i in 1..=a {
                for g in 0..3usize {
                    let ai = a as i32 - i as i32;
                    for m in ((1 - i as i32)..=ai).filter(|&m| m != 0) {
                        let id = inst(&[
                            ("alpha", a as i64),
                            ("i", i as i64),
                            ("m", m as i64),
                            ("g", g as i64),
                            ("n", n as i64),
                        ]);
                        cases.push(Case::one("range", id, move || {
                            Ok(Residual::Nc(ct_range(a, i, m, g, n)?))
                        }));
                    }
                    let id = inst(&[
                        ("alpha", a as i64),
                        ("i", i as i64),
                        ("g", g as i64),
                        ("n", n as i64),
                    ]);
                    cases.push(Case::new(id, move || {
                        Ok(vec![
                            (
                                "negbound".to_string(),
                                Residual::Nc(ct_negbound(a, i, g, n)?),
                            ),
                            (
                                "posbound".to_string(),
                                Residual::Nc(ct_posbound(a, i, g, n)?),
                            ),
                        ])
                    }));
                }
            }
            cases.push(Case::one(
                "otherqdet",
                inst(&[("alpha", a as i64), ("n", n as i64)]),
                move || Ok(Residual::Nc(ct_otherqdet(a, n)?)),
            ));
        }
    }
    let notes = vec![
        "g ranges over 0: 1, 1: e1(u), 2: e1(1/u)".to_string(),
        "the vanishing window excludes m = 0, where <g> is not zero (for g = 1 it is M_alpha)"
            .to_string(),
    ];
    Ok((cases, notes))
}

/// A random word of at most `max_len` letters: mostly `M_n` with `n` in
/// `[-4, 4]`, sometimes `A^{±1}` or `Δ^{±1}`.
pub(crate) fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| match rng.gen_range(0..10) {
            0 => Letter::A(if rng.gen_bool(0.5) { 1 } else { -1 }),
            1 => Letter::D(if rng.gen_bool(0.5) { 1 } else { -1 }),
            _ => Letter::M(rng.gen_range(-4..=4)),
        })
        .collect()
}

/// All four reduction orders against the memoized normal form.
pub(crate) fn confluence(params: &SuiteParams) -> Result<Suite> {
    let rank = params.r.unwrap_or(1) as u32;
    let samples = params.samples.unwrap_or(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut cases = Vec::new();
    for idx in 0..samples {
        let word = random_word(&mut rng, 5);
        let seed = rng.gen::<u64>();
        let id = inst(&[("sample", idx as i64), ("seed", (seed >> 1) as i64)]);
        cases.push(Case::one("confluence", id, move || {
            let e = FormalExpr::word(word.clone());
            let reference = NcAlgebra::with_rank(rank).normal_form(&e)?;
            let plan = [
                Strategy::Leftmost,
                Strategy::Rightmost,
                Strategy::Random(seed),
                Strategy::Random(seed ^ 0x5555),
            ];
            for s in plan {
                let diff = reduce_with(&e, Some(rank), s)?.sub_ref(&reference);
                if !diff.is_zero() {
                    return Ok(Residual::Nc(diff));
                }
            }
            Ok(Residual::Nc(NcPoly::zero()))
        }));
    }
    let notes = vec![format!(
        "words of length <= 5 over M[-4..4], A^(+-1), D^(+-1); rank {rank} for the D-A twist"
    )];
    Ok((cases, notes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_identities() {
        for n in -1..=1 {
            assert!(msys_symbolic(1, n).unwrap().is_zero());
            assert!(msys_symbolic(2, n).unwrap().is_zero());
            assert!(mcom_symbolic(1, 2, n, 1).unwrap().is_zero());
            assert!(quadratic(n, 3).unwrap().is_zero());
            assert!(cubic(n, 0, 2).unwrap().is_zero());
            assert!(nested_residual(3, n).unwrap().is_zero());
        }
    }

    #[test]
    fn mcom_is_not_vacuous() {
        // outside the common-cluster range the relation genuinely fails
        assert!(!mcom_symbolic(1, 1, 0, 2).unwrap().is_zero());
    }

    #[test]
    fn ct_lemma_instances() {
        assert!(ct_range(3, 2, 1, 1, 0).unwrap().is_zero());
        assert!(ct_range(3, 2, -1, 2, 1).unwrap().is_zero());
        // m = 0 is not in the window: <1> is the determinant itself
        assert_eq!(ct_range(3, 2, 0, 0, 0).unwrap(), m_alpha(3, 0));
        assert!(ct_negbound(3, 2, 2, 1).unwrap().is_zero());
        assert!(ct_posbound(3, 1, 0, 0).unwrap().is_zero());
        assert!(ct_otherqdet(3, 0).unwrap().is_zero());
        // just outside the vanishing window the bracket is nonzero
        assert!(!ct_range(3, 1, 3, 0, 0).unwrap().is_zero());
    }
}
