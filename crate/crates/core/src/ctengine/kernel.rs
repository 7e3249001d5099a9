//! Laurent polynomials in commuting `u_1..u_α` used as constant-term kernels.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::exactnum::write_term;
use crate::{Error, QLaurent, Result};

pub type UExp = SmallVec<[i32; 8]>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct UKernel {
    arity: usize,
    terms: BTreeMap<UExp, QLaurent>,
}

impl UKernel {
    pub fn zero(arity: usize) -> Self {
        UKernel {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::monomial(&vec![0; arity], QLaurent::one())
    }

    /// `c · ∏ u_i^{e_i}`.
    pub fn monomial(e: &[i32], c: QLaurent) -> Self {
        let mut k = Self::zero(e.len());
        k.add_term(UExp::from_slice(e), c);
        k
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i32>, QLaurent)>>(arity: usize, it: I) -> Self {
        let mut k = Self::zero(arity);
        for (e, c) in it {
            assert_eq!(
                e.len(),
                arity,
                "exponent vector length must equal the arity"
            );
            k.add_term(UExp::from_vec(e), c);
        }
        k
    }

    fn add_term(&mut self, e: UExp, c: QLaurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UExp, &QLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i32]) -> QLaurent {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.scale(&QLaurent::from_int(-1)))
    }

    pub fn scale(&self, c: &QLaurent) -> Self {
        let mut out = Self::zero(self.arity);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.mul_ref(c));
        }
        out
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity);
        let mut out = Self::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: UExp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul_ref(c2));
            }
        }
        out
    }

    /// Multiplies by `∏ u_i^{e_i}`.
    pub fn shift(&self, e: &[i32]) -> Self {
        assert_eq!(e.len(), self.arity);
        UKernel {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Places the variables of `self` at slots `offset..offset+arity` of a wider kernel.
    pub fn embed(&self, arity: usize, offset: usize) -> Self {
        assert!(offset + self.arity <= arity);
        let mut out = Self::zero(arity);
        for (e, c) in &self.terms {
            let mut v = UExp::from_elem(0, arity);
            v[offset..offset + self.arity].copy_from_slice(e);
            out.add_term(v, c.clone());
        }
        out
    }

    /// Elementary symmetric polynomial `e_m(u)` (or of `1/u` if `inverse`).
    pub fn elementary(arity: usize, m: usize, inverse: bool) -> Self {
        let mut out = Self::zero(arity);
        for subset in 0u32..(1 << arity) {
            if subset.count_ones() as usize == m {
                let s = if inverse { -1 } else { 1 };
                let e: UExp = (0..arity).map(|i| s * ((subset >> i) & 1) as i32).collect();
                out.add_term(e, QLaurent::one());
            }
        }
        out
    }
}

/// `∏_{1<=a<b<=α} (1 - q u_b / u_a)`, collected after every factor.
pub fn qvandermonde(alpha: usize) -> Result<UKernel> {
    if alpha == 0 {
        return Err(Error::InvalidSpec("qvandermonde needs arity >= 1".into()));
    }
    let mut acc = UKernel::one(alpha);
    for a in 0..alpha {
        for b in (a + 1)..alpha {
            let mut e = vec![0; alpha];
            e[a] = -1;
            e[b] = 1;
            let mut next = acc.clone();
            let term = UKernel::monomial(&e, -QLaurent::q());
            next = next.add_ref(&acc.mul_ref(&term));
            acc = next;
        }
    }
    Ok(acc)
}

/// The kernels `P_α` of the nested-commutator constant-term formula.
pub fn p_kernel(alpha: usize) -> Result<UKernel> {
    if alpha == 0 {
        return Err(Error::InvalidSpec("p_kernel needs arity >= 1".into()));
    }
    let mut p = UKernel::one(1);
    for a in 1..alpha {
        let n = a + 1;
        // u_1^a / (u_2 ⋯ u_{a+1}) · P_a(u_2..u_{a+1})
        let mut e1 = vec![-1; n];
        e1[0] = a as i32;
        let first = p.embed(n, 1).shift(&e1);
        // q^{a+1} u_{a+1}^a / (u_1 ⋯ u_a) · P_a(u_1..u_a)
        let mut e2 = vec![-1; n];
        e2[n - 1] = a as i32;
        let second = p
            .embed(n, 0)
            .shift(&e2)
            .scale(&QLaurent::q_pow(a as i32 + 1));
        p = first.sub_ref(&second);
    }
    Ok(p)
}

/// `Δ_q(u_1..u_{r+1}) / (u_1 ⋯ u_m)`.
pub fn defect_kernel(r: usize, m: usize) -> Result<UKernel> {
    if r == 0 || m > r + 1 {
        return Err(Error::InvalidSpec(format!(
            "defect kernel needs r >= 1 and 0 <= m <= r+1 (r={r}, m={m})"
        )));
    }
    let mut e = vec![0; r + 1];
    for v in e.iter_mut().take(m) {
        *v = -1;
    }
    Ok(qvandermonde(r + 1)?.shift(&e))
}

fn monomial_text(e: &[i32]) -> String {
    let mut parts = Vec::new();
    for (i, &v) in e.iter().enumerate() {
        match v {
            0 => {}
            1 => parts.push(format!("u{}", i + 1)),
            _ => parts.push(format!("u{}^{}", i + 1, v)),
        }
    }
    parts.join("*")
}

impl fmt::Display for UKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            write_term(f, idx == 0, c, &monomial_text(e), "*")?;
        }
        Ok(())
    }
}

impl fmt::Debug for UKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct KernelTermJson {
    e: Vec<i32>,
    coeff: QLaurent,
}

#[derive(Serialize, Deserialize)]
struct KernelJson {
    arity: usize,
    terms: Vec<KernelTermJson>,
}

impl Serialize for UKernel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KernelJson {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| KernelTermJson {
                    e: e.to_vec(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UKernel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = KernelJson::deserialize(d)?;
        if raw.terms.iter().any(|t| t.e.len() != raw.arity) {
            return Err(D::Error::custom(
                "exponent vector length differs from arity",
            ));
        }
        Ok(UKernel::from_terms(
            raw.arity,
            raw.terms.into_iter().map(|t| (t.e, t.coeff)),
        ))
    }
}
