//! Suites checked in the rank-r difference-operator representation. A pass
//! here means the identity holds in the representation, which is weaker than
//! holding in the algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::symbolic::random_word;
use super::{inst, ranks, Case, IntRange, Residual, SuiteParams};
use crate::ctengine::{apply_sigma, c_m_defect, ct_realize, defect_kernel, m_alpha, sigma_image};
use crate::ncalgebra::{FormalExpr, NcAlgebra, NcPoly};
use crate::repdiff::{nc_to_op, op_f, op_m, op_sym, psi_minus, psi_plus, SymSpec};
use crate::{QLaurent, Result, ShiftOp, XPoly};

type Suite = (Vec<Case>, Vec<String>);

const REP_NOTE: &str =
    "true in the representation; faithfulness of the representation is not claimed";

fn q(e: i32) -> QLaurent {
    QLaurent::q_pow(e)
}

fn m1(r: usize, n: i32) -> ShiftOp {
    op_m(r, 1, n)
}

fn e(r: usize, j: usize) -> ShiftOp {
    op_sym(r, SymSpec::E(j)).expect("e_j with j <= r+1")
}

fn comm(a: &ShiftOp, b: &ShiftOp) -> ShiftOp {
    a.q_comm(b, 0)
}

fn sgn(j: usize) -> QLaurent {
    QLaurent::from_int(if j.is_multiple_of(2) { 1 } else { -1 })
}

/// `1 - q^k`.
fn one_minus_q(k: i32) -> QLaurent {
    QLaurent::one().sub_ref(&q(k))
}

/// `M_{r+2,n}` vanishes and `M_{r+1,n}` is the quantum determinant.
pub(crate) fn rank(params: &SuiteParams) -> Result<Suite> {
    let rs = ranks(params, IntRange::new(1, 3))?;
    let ns = params.n.unwrap_or(IntRange::new(-2, 2));
    let mut cases = Vec::new();
    for &r in &rs {
        for n in ns.iter() {
            cases.push(Case::new(
                inst(&[("r", r as i64), ("n", n as i64)]),
                move || {
                    let top = nc_to_op(r, &m_alpha(r + 1, n))?.sub_ref(&op_m(r, r + 1, n));
                    Ok(vec![
                        (
                            "rank-vanish".to_string(),
                            Residual::Op(nc_to_op(r, &m_alpha(r + 2, n))?),
                        ),
                        ("qdet-image".to_string(), Residual::Op(top)),
                    ])
                },
            ));
        }
    }
    Ok((cases, vec![REP_NOTE.to_string()]))
}

fn consar(r: usize, n: i32) -> ShiftOp {
    let mut acc = ShiftOp::zero(r + 1);
    for j in 0..=r + 1 {
        acc = acc.add_ref(&e(r, j).compose(&m1(r, n - j as i32)).scale(&sgn(j)));
    }
    acc
}

fn rrec(r: usize, n: i32) -> ShiftOp {
    let mut acc = ShiftOp::zero(r + 1);
    for j in 0..=r + 1 {
        let c = sgn(j).mul_q_pow(-(j as i32));
        acc = acc.add_ref(&m1(r, n - j as i32).compose(&e(r, j)).scale(&c));
    }
    acc
}

fn commu_cm(r: usize, m: usize, n: i32) -> ShiftOp {
    let mut rhs = ShiftOp::zero(r + 1);
    for j in 1..=m {
        rhs = rhs.add_ref(&e(r, m - j).compose(&m1(r, n + j as i32)).scale(&sgn(j)));
    }
    let qm1 = q(1).sub_ref(&QLaurent::one());
    comm(&e(r, m), &m1(r, n)).sub_ref(&rhs.scale(&qm1))
}

fn a1_law(n: i32) -> Result<ShiftOp> {
    let alg = NcAlgebra::with_rank(1);
    let m = NcPoly::m;
    let lhs = alg
        .mul(&m(n + 1), &m(n))?
        .sub_ref(&alg.mul(&m(n + 2), &m(n - 1))?.scale(&q(1)));
    let base = alg
        .mul(&m(1), &m(0))?
        .sub_ref(&alg.mul(&m(2), &m(-1))?.scale(&q(1)));
    let rhs = alg.mul(&base, &NcPoly::a_pow(n))?.scale(&q(-2 * n));
    nc_to_op(1, &lhs.sub_ref(&rhs))
}

/// Conservation laws, recursions and commutators of the conserved quantities.
pub(crate) fn conserved(params: &SuiteParams) -> Result<Suite> {
    let rs = ranks(params, IntRange::new(1, 3))?;
    let ns = params.n.unwrap_or(IntRange::new(-2, 2));
    let mut cases = Vec::new();
    for &r in &rs {
        let nv = r + 1;
        for n in ns.iter() {
            let id = inst(&[("r", r as i64), ("n", n as i64)]);
            cases.push(Case::new(id, move || {
                let c1 = comm(&e(r, 1), &m1(r, n)).sub_ref(&m1(r, n + 1).scale(&one_minus_q(1)));
                let ainv = ShiftOp::mult_poly(XPoly::prod_power(nv, -1)).compose(&e(r, r));
                let cr = comm(&ainv, &m1(r, n)).sub_ref(&m1(r, n - 1).scale(&one_minus_q(-1)));
                let mut out = vec![
                    ("consar".to_string(), Residual::Op(consar(r, n))),
                    ("rrec".to_string(), Residual::Op(rrec(r, n))),
                    ("conscor-c1".to_string(), Residual::Op(c1)),
                    ("conscor-cr".to_string(), Residual::Op(cr)),
                ];
                for k in 1..=3 {
                    let pk = op_sym(r, SymSpec::P(k))?;
                    let res = comm(&pk, &m1(r, n)).sub_ref(&m1(r, n + k).scale(&one_minus_q(k)));
                    out.push((format!("transpk-{k}"), Residual::Op(res)));
                }
                if r == 1 {
                    out.push(("a1-law".to_string(), Residual::Op(a1_law(n)?)));
                }
                Ok(out)
            }));
            let ms = params.m.unwrap_or(IntRange::new(1, r as i32));
            for m in ms.iter().filter(|&m| m >= 1 && m as usize <= r) {
                let m = m as usize;
                let id = inst(&[("r", r as i64), ("m", m as i64), ("n", n as i64)]);
                cases.push(Case::one("commuCm", id, move || {
                    Ok(Residual::Op(commu_cm(r, m, n)))
                }));
            }
        }
        for i in 1..=nv {
            for j in (i + 1)..=nv {
                let id = inst(&[("r", r as i64), ("i", i as i64), ("j", j as i64)]);
                cases.push(Case::one("commutaC", id, move || {
                    let alg = NcAlgebra::with_rank(r as u32);
                    let (ci, cj) = (c_m_defect(r, i)?, c_m_defect(r, j)?);
                    Ok(Residual::Op(nc_to_op(r, &alg.q_comm(&ci, &cj, 0)?)?))
                }));
            }
        }
        for m in 0..=nv {
            let id = inst(&[("r", r as i64), ("m", m as i64)]);
            cases.push(Case::new(id, move || {
                let alg = NcAlgebra::with_rank(r as u32);
                let c = c_m_defect(r, m)?;
                let d = NcPoly::delta_pow(1);
                let sym = alg
                    .mul(&d, &c)?
                    .sub_ref(&alg.mul(&c, &d)?.scale(&q(m as i32)));
                let dop = ShiftOp::delta_pow(nv, 1);
                let rep = dop
                    .compose(&e(r, m))
                    .sub_ref(&e(r, m).compose(&dop).scale(&q(m as i32)));
                Ok(vec![
                    ("comCdelt".to_string(), Residual::Op(nc_to_op(r, &sym)?)),
                    ("comCdelt-mult".to_string(), Residual::Op(rep)),
                ])
            }));
        }
    }
    Ok((cases, vec![REP_NOTE.to_string()]))
}

/// Constant terms of the defect kernels against the elementary symmetric functions.
pub(crate) fn defect_qdet(params: &SuiteParams) -> Result<Suite> {
    let rs = ranks(params, IntRange::new(1, 3))?;
    let ns = params.n.unwrap_or(IntRange::new(-2, 2));
    let mut cases = Vec::new();
    for &r in &rs {
        let ms = params.m.unwrap_or(IntRange::new(0, r as i32 + 1));
        for m in ms.iter().filter(|&m| m >= 0 && m as usize <= r + 1) {
            let m = m as usize;
            cases.push(Case::one(
                "defect",
                inst(&[("r", r as i64), ("m", m as i64)]),
                move || {
                    Ok(Residual::Op(
                        nc_to_op(r, &c_m_defect(r, m)?)?.sub_ref(&e(r, m)),
                    ))
                },
            ));
            for n in ns.iter() {
                let id = inst(&[("r", r as i64), ("m", m as i64), ("n", n as i64)]);
                cases.push(Case::one("defect-component", id, move || {
                    let alg = NcAlgebra::with_rank(r as u32);
                    let ct = ct_realize(&defect_kernel(r, m)?, n);
                    let p = alg.product(&[&ct, &NcPoly::delta_pow(-1), &NcPoly::a_pow(-n)])?;
                    Ok(Residual::Op(nc_to_op(r, &p)?.sub_ref(&e(r, m))))
                }));
            }
        }
    }
    Ok((cases, vec![REP_NOTE.to_string()]))
}

/// `ρ̃_{n,p} = A^{-n} (M_{n+p} M_{r,n} - q^{-p} M_{r,n} M_{n+p}) Δ^{-1}`.
pub(crate) fn rho(r: usize, n: i32, p: i32) -> Result<ShiftOp> {
    let alg = NcAlgebra::free();
    let body = alg.q_comm(&NcPoly::m(n + p), &m_alpha(r, n), -p)?;
    let p = alg.mul(&NcPoly::a_pow(-n), &body)?.mul_right_ad(0, -1);
    nc_to_op(r, &p)
}

fn psi(r: usize, p: i32, plus: bool) -> ShiftOp {
    ShiftOp::mult_poly(if plus {
        psi_plus(r, p)
    } else {
        psi_minus(r, p)
    })
}

fn pmcom(r: usize, n: i32, p: i32, plus: bool) -> ShiftOp {
    let (a, b) = (psi(r, p - 1, plus), psi(r, p, plus));
    let (mn, mn1) = (m1(r, n), m1(r, n - 1));
    a.compose(&mn)
        .sub_ref(&mn.compose(&a).scale(&q(1)))
        .add_ref(&mn1.compose(&b))
        .sub_ref(&b.compose(&mn1).scale(&q(1)))
}

fn pncom(r: usize, n: i32, p: i32, plus: bool) -> ShiftOp {
    let (a, b) = (psi(r, p - 1, plus), psi(r, p, plus));
    let (f0, f1): (ShiftOp, ShiftOp) = (op_f(r, n), op_f(r, n + 1));
    a.compose(&f0)
        .sub_ref(&f0.compose(&a).scale(&q(-1)))
        .add_ref(&f1.compose(&b).scale(&q(1)))
        .sub_ref(&b.compose(&f1))
}

fn nmcom(r: usize, k: i32, l: i32) -> ShiftOp {
    let f = |n: i32| -> ShiftOp { op_f(r, n) };
    let qi = q(-1);
    f(1 - k)
        .compose(&f(-l))
        .sub_ref(&f(-k).compose(&f(1 - l)).scale(&qi))
        .add_ref(&f(1 - l).compose(&f(-k)))
        .sub_ref(&f(-l).compose(&f(1 - k)).scale(&qi))
}

/// Current relations: `ρ̃` against the Cartan currents and the mixed relations.
pub(crate) fn drinfeld(params: &SuiteParams) -> Result<Suite> {
    let rs = ranks(params, IntRange::new(1, 2))?;
    let ns = params.n.unwrap_or(IntRange::new(-2, 2));
    let mut cases = Vec::new();
    for &r in &rs {
        let nv = r as i32 + 1;
        let order = params.order.unwrap_or(nv + 2);
        let ps = params.p.unwrap_or(IntRange::new(-order, order));
        for n in ns.iter() {
            for p in ps.iter() {
                let id = inst(&[("r", r as i64), ("n", n as i64), ("p", p as i64)]);
                cases.push(Case::new(id, move || {
                    let rho = rho(r, n, p)?;
                    let expect = psi(r, p, true)
                        .sub_ref(&psi(r, p, false))
                        .scale(&one_minus_q(1));
                    let mut out = vec![("rho-psi".to_string(), Residual::Op(rho.sub_ref(&expect)))];
                    if p.abs() < nv {
                        out.push(("rho-vanish".to_string(), Residual::Op(rho.clone())));
                    }
                    let x = |k: i32| ShiftOp::mult_poly(XPoly::prod_power(nv as usize, k));
                    let qm1 = q(1).sub_ref(&QLaurent::one());
                    if p == nv {
                        let c = qm1.mul_q_pow(-nv).mul_ref(&sgn(r));
                        out.push((
                            "rho-boundary".to_string(),
                            Residual::Op(rho.sub_ref(&x(1).scale(&c))),
                        ));
                    }
                    if p == -nv {
                        let c = qm1.mul_ref(&sgn(r + 1));
                        out.push((
                            "rho-boundary".to_string(),
                            Residual::Op(rho.sub_ref(&x(-1).scale(&c))),
                        ));
                    }
                    out.push(("pmcom+".to_string(), Residual::Op(pmcom(r, n, p, true))));
                    out.push(("pmcom-".to_string(), Residual::Op(pmcom(r, n, p, false))));
                    out.push(("pncom+".to_string(), Residual::Op(pncom(r, n, p, true))));
                    out.push(("pncom-".to_string(), Residual::Op(pncom(r, n, p, false))));
                    out.push(("nmcom".to_string(), Residual::Op(nmcom(r, n, p))));
                    Ok(out)
                }));
            }
        }
    }
    Ok((cases, vec![REP_NOTE.to_string()]))
}

/// A relation as a combination of products of factors, so that `τ` can be
/// applied factorwise with the order reversed.
struct Relation {
    terms: Vec<(QLaurent, Vec<NcPoly>)>,
}

impl Relation {
    fn eval(&self, alg: NcAlgebra) -> Result<NcPoly> {
        let mut acc = NcPoly::zero();
        for (c, fs) in &self.terms {
            let refs: Vec<&NcPoly> = fs.iter().collect();
            acc = acc.add_ref(&alg.product(&refs)?.scale(c));
        }
        Ok(acc)
    }

    fn tau(&self, alg: NcAlgebra) -> Result<Relation> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, fs) in &self.terms {
            let img = fs
                .iter()
                .rev()
                .map(|f| alg.tau(f))
                .collect::<Result<Vec<_>>>()?;
            terms.push((c.clone(), img));
        }
        Ok(Relation { terms })
    }
}

fn random_relation(rng: &mut ChaCha8Rng) -> (String, Relation, Vec<(&'static str, i64)>) {
    let one = QLaurent::one();
    let neg = QLaurent::from_int(-1);
    let n = rng.gen_range(-3..=3);
    match rng.gen_range(0..3) {
        0 => {
            let p = rng.gen_range(1..=4);
            let m = NcPoly::m;
            let terms = vec![
                (one.clone(), vec![m(n), m(n + p)]),
                (q(1).neg_ref(), vec![m(n + p), m(n)]),
                (one.clone(), vec![m(n + p - 1), m(n + 1)]),
                (q(1).neg_ref(), vec![m(n + 1), m(n + p - 1)]),
            ];
            (
                "quadratic".into(),
                Relation { terms },
                vec![("n", n as i64), ("p", p as i64)],
            )
        }
        1 => {
            let a = rng.gen_range(1..=3usize);
            let terms = vec![
                (q(a as i32), vec![m_alpha(a, n + 1), m_alpha(a, n - 1)]),
                (neg.clone(), vec![m_alpha(a, n), m_alpha(a, n)]),
                (one.clone(), vec![m_alpha(a + 1, n), m_alpha(a - 1, n)]),
            ];
            (
                "msys".into(),
                Relation { terms },
                vec![("alpha", a as i64), ("n", n as i64)],
            )
        }
        _ => {
            let a = rng.gen_range(1..=3usize);
            let b = rng.gen_range(1..=3usize);
            let reach = (a as i32 - b as i32).abs() + 1;
            let p = rng.gen_range(-reach..=reach);
            let terms = vec![
                (one.clone(), vec![m_alpha(a, n), m_alpha(b, n + p)]),
                (
                    q(p * a.min(b) as i32).neg_ref(),
                    vec![m_alpha(b, n + p), m_alpha(a, n)],
                ),
            ];
            let id = vec![
                ("alpha", a as i64),
                ("beta", b as i64),
                ("n", n as i64),
                ("p", p as i64),
            ];
            ("mcom".into(), Relation { terms }, id)
        }
    }
}

fn word_poly(rng: &mut ChaCha8Rng, alg: NcAlgebra) -> Result<NcPoly> {
    alg.normal_form(&FormalExpr::word(random_word(rng, 4)))
}

fn random_poly(rng: &mut ChaCha8Rng, alg: NcAlgebra) -> Result<NcPoly> {
    let mut acc = NcPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = QLaurent::from_int(rng.gen_range(-3..=3)).mul_q_pow(rng.gen_range(-2..=2));
        acc = acc.add_ref(&word_poly(rng, alg)?.scale(&c));
    }
    Ok(acc)
}

/// Time reversal `τ` and the shift `σ`: involutions, images of relations, and
/// the invariance of the conserved quantities under `στ`.
pub(crate) fn automorphisms(params: &SuiteParams) -> Result<Suite> {
    let rs = ranks(params, IntRange::new(1, 2))?;
    let samples = params.samples.unwrap_or(50);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut cases = Vec::new();
    let free = NcAlgebra::free();

    for idx in 0..samples {
        let (name, rel, id) = random_relation(&mut rng);
        let mut id = inst(&id);
        id.insert("sample".into(), idx as i64);
        cases.push(Case::new(id, move || {
            Ok(vec![
                (name.clone(), Residual::Nc(rel.eval(free)?)),
                (
                    format!("tau-{name}"),
                    Residual::Nc(rel.tau(free)?.eval(free)?),
                ),
            ])
        }));
    }

    let rank_one = NcAlgebra::with_rank(1);
    for idx in 0..samples {
        let w = word_poly(&mut rng, rank_one)?;
        cases.push(Case::new(inst(&[("sample", idx as i64)]), move || {
            let tt = rank_one.tau(&rank_one.tau(&w)?)?;
            let ss = apply_sigma(1, &apply_sigma(1, &w)?)?;
            Ok(vec![
                ("tau-involution".to_string(), Residual::Nc(tt.sub_ref(&w))),
                (
                    "sigma-involution-r1".to_string(),
                    Residual::Nc(ss.sub_ref(&w)),
                ),
            ])
        }));
    }

    for &r in &rs {
        if r >= 2 {
            for n in -2..=2 {
                cases.push(Case::one(
                    "sigma-involution-rep",
                    inst(&[("r", r as i64), ("n", n as i64)]),
                    move || {
                        let twice = apply_sigma(r, &sigma_image(r, n)?)?;
                        Ok(Residual::Op(nc_to_op(r, &twice)?.sub_ref(&m1(r, n))))
                    },
                ));
            }
        }
        for m in 0..=r + 1 {
            cases.push(Case::one(
                "sigma-tau-invariance",
                inst(&[("r", r as i64), ("m", m as i64)]),
                move || {
                    let alg = NcAlgebra::with_rank(r as u32);
                    let img = apply_sigma(r, &alg.tau(&c_m_defect(r, m)?)?)?;
                    Ok(Residual::Op(nc_to_op(r, &img)?.sub_ref(&e(r, m))))
                },
            ));
        }
    }
    let notes = vec![
        "relation images under tau are checked in the free algebra; sigma at r >= 2 in the representation".to_string(),
    ];
    Ok((cases, notes))
}

/// `nc_to_op(a b) = nc_to_op(a) ∘ nc_to_op(b)` on random polynomials.
pub(crate) fn homomorphism(params: &SuiteParams) -> Result<Suite> {
    let rs = ranks(params, IntRange::new(1, 2))?;
    let samples = params.samples.unwrap_or(20);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut cases = Vec::new();
    for &r in &rs {
        let alg = NcAlgebra::with_rank(r as u32);
        for idx in 0..samples {
            let (a, b) = (random_poly(&mut rng, alg)?, random_poly(&mut rng, alg)?);
            cases.push(Case::one(
                "homomorphism",
                inst(&[("r", r as i64), ("sample", idx as i64)]),
                move || {
                    let lhs = nc_to_op(r, &alg.mul(&a, &b)?)?;
                    Ok(Residual::Op(
                        lhs.sub_ref(&nc_to_op(r, &a)?.compose(&nc_to_op(r, &b)?)),
                    ))
                },
            ));
        }
    }
    Ok((cases, vec![]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::symbolic::{mcom_symbolic, msys_symbolic, quadratic};

    #[test]
    fn symbolic_relations_hold_in_rep() {
        let r = 1;
        let m = msys_symbolic(2, 0).unwrap();
        assert!(nc_to_op(r, &m).unwrap().is_zero());
        assert!(nc_to_op(r, &mcom_symbolic(1, 2, 0, 2).unwrap())
            .unwrap()
            .is_zero());
        assert!(nc_to_op(r, &quadratic(0, 2).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn rho_boundaries() {
        for r in 1..=2 {
            for p in -(r as i32)..=(r as i32) {
                assert!(rho(r, 0, p).unwrap().is_zero(), "r={r} p={p}");
            }
            assert!(!rho(r, 0, r as i32 + 1).unwrap().is_zero());
        }
    }

    #[test]
    fn current_relations_are_not_vacuous() {
        let r = 1;
        for p in [-3, 3] {
            let plus = p > 0;
            let (a, f) = (psi(r, p - 1, plus), op_f::<i32, num_bigint::BigInt>(r, 0));
            assert!(!a.compose(&f).is_zero() && !f.compose(&a).is_zero());
            assert!(pncom(r, 0, p, plus).is_zero());
            // the same combination with the q^{-1} dropped does not vanish
            let wrong = a
                .compose(&f)
                .sub_ref(&f.compose(&a))
                .add_ref(&op_f(r, 1).compose(&psi(r, p, plus)).scale(&q(1)))
                .sub_ref(&psi(r, p, plus).compose(&op_f(r, 1)));
            assert!(!wrong.is_zero());
        }
        assert!(!op_f::<i32, num_bigint::BigInt>(r, 1)
            .compose(&op_f(r, -2))
            .is_zero());
        assert!(nmcom(r, 1, -2).is_zero());
    }
}
