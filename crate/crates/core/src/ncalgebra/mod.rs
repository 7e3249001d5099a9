//! The algebra generated by `M_n`, `A^{±1}`, `Δ^{±1}` over `Z[q, q^-1]`.
//!
//! Elements are kept as combinations of normal words
//! `M_{n_1}⋯M_{n_k}·A^a·Δ^d` with `n_1 <= … <= n_k`. The rank quotient is not
//! imposed; only the `Δ·A` reordering depends on a rank.

mod confluence;
mod order;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactnum::write_term;
use crate::{Error, QLaurent, Result};

pub use confluence::{confluence_exhaustive, confluence_probe, reduce_with, Strategy};
pub use order::{clear_cache, normal_order, MWord};

/// A generator power appearing in a formal (not yet ordered) word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    M(i32),
    /// `A^k`
    A(i32),
    /// `Δ^k`
    D(i32),
}

/// A normal word `M_{n_1}⋯M_{n_k}·A^a·Δ^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcWord {
    pub m: MWord,
    pub a: i32,
    pub d: i32,
}

impl NcWord {
    pub fn new(m: &[i32], a: i32, d: i32) -> Self {
        assert!(
            m.windows(2).all(|p| p[0] <= p[1]),
            "word is not normal-ordered"
        );
        NcWord {
            m: MWord::from_slice(m),
            a,
            d,
        }
    }

    pub fn unit() -> Self {
        NcWord {
            m: MWord::new(),
            a: 0,
            d: 0,
        }
    }

    /// Sum of the `M` indices.
    pub fn grade(&self) -> i32 {
        self.m.iter().sum()
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = self.m.iter().map(|&n| Letter::M(n)).collect();
        if self.a != 0 {
            v.push(Letter::A(self.a));
        }
        if self.d != 0 {
            v.push(Letter::D(self.d));
        }
        v
    }

    fn text(&self) -> String {
        let mut parts: Vec<String> = self.m.iter().map(|n| format!("M[{n}]")).collect();
        if self.a != 0 {
            parts.push(format!("A^{}", self.a));
        }
        if self.d != 0 {
            parts.push(format!("D^{}", self.d));
        }
        parts.join(" ")
    }
}

impl Ord for NcWord {
    /// Display order: shorter words first, then larger index tuples first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.m
            .len()
            .cmp(&other.m.len())
            .then_with(|| other.m.cmp(&self.m))
            .then_with(|| self.a.cmp(&other.a))
            .then_with(|| self.d.cmp(&other.d))
    }
}

impl PartialOrd for NcWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A normal-ordered noncommutative polynomial.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<NcWord, QLaurent>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        Self::term(NcWord::unit(), QLaurent::one())
    }

    pub fn scalar(c: QLaurent) -> Self {
        Self::term(NcWord::unit(), c)
    }

    pub fn term(w: NcWord, c: QLaurent) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    /// The generator `M_n`.
    pub fn m(n: i32) -> Self {
        Self::term(NcWord::new(&[n], 0, 0), QLaurent::one())
    }

    /// `A^k`.
    pub fn a_pow(k: i32) -> Self {
        Self::term(NcWord::new(&[], k, 0), QLaurent::one())
    }

    /// `Δ^k`.
    pub fn delta_pow(k: i32) -> Self {
        Self::term(NcWord::new(&[], 0, k), QLaurent::one())
    }

    pub fn add_term(&mut self, w: NcWord, c: QLaurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    fn from_map(map: FxHashMap<NcWord, QLaurent>) -> Self {
        NcPoly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NcWord, &QLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &NcWord) -> QLaurent {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &QLaurent) -> Self {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.mul_ref(c)))
                .collect(),
        }
    }

    /// Adds `n` to every `M` index.
    pub fn translate(&self, n: i32) -> Self {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    (
                        NcWord {
                            m: w.m.iter().map(|v| v + n).collect(),
                            a: w.a,
                            d: w.d,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Multiplies every word on the right by `A^a Δ^d` (no reordering needed).
    pub fn mul_right_ad(&self, a: i32, d: i32) -> Self {
        if a != 0 {
            assert!(
                self.terms.keys().all(|w| w.d == 0),
                "A to the right of Δ needs reordering"
            );
        }
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    (
                        NcWord {
                            m: w.m.clone(),
                            a: w.a + a,
                            d: w.d + d,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Common `M`-grade of all terms, if homogeneous.
    pub fn grade(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(NcWord::grade);
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    /// The same element as an unreduced formal expression.
    pub fn to_formal(&self) -> FormalExpr {
        FormalExpr {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (c.clone(), w.letters()))
                .collect(),
        }
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            write_term(f, idx == 0, c, &w.text(), " * ")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: QLaurent,
    m: Vec<i32>,
    a: i32,
    d: i32,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl Serialize for NcPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    coeff: c.clone(),
                    m: w.m.to_vec(),
                    a: w.a,
                    d: w.d,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NcPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let mut out = NcPoly::zero();
        for t in raw.terms {
            if !t.m.windows(2).all(|p| p[0] <= p[1]) {
                return Err(D::Error::custom("word is not normal-ordered"));
            }
            out.add_term(NcWord::new(&t.m, t.a, t.d), t.coeff);
        }
        Ok(out)
    }
}

/// A linear combination of arbitrary words in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalExpr {
    pub terms: Vec<(QLaurent, Vec<Letter>)>,
}

impl FormalExpr {
    pub fn zero() -> Self {
        FormalExpr::default()
    }

    pub fn word(letters: Vec<Letter>) -> Self {
        FormalExpr {
            terms: vec![(QLaurent::one(), letters)],
        }
    }

    /// The word `M_{n_1}⋯M_{n_k}`.
    pub fn m_word(ns: &[i32]) -> Self {
        Self::word(ns.iter().map(|&n| Letter::M(n)).collect())
    }

    pub fn push(&mut self, c: QLaurent, letters: Vec<Letter>) {
        if !c.is_zero() {
            self.terms.push((c, letters));
        }
    }

    pub fn add(mut self, other: FormalExpr) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn scale(&self, c: &QLaurent) -> Self {
        FormalExpr {
            terms: self
                .terms
                .iter()
                .map(|(k, w)| (k.mul_ref(c), w.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&QLaurent::from_int(-1))
    }

    /// Concatenation product.
    pub fn mul(&self, other: &FormalExpr) -> Self {
        let mut out = FormalExpr::zero();
        for (c1, w1) in &self.terms {
            for (c2, w2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.push(c1.mul_ref(c2), w);
            }
        }
        out
    }

    /// `x·y - q^k·y·x`.
    pub fn q_comm(&self, other: &FormalExpr, k: i32) -> Self {
        self.mul(other)
            .add(other.mul(self).scale(&QLaurent::q_pow(k)).neg())
    }

    /// Letter-wise image under the time-reversal anti-automorphism.
    pub fn tau(&self) -> Self {
        let mut out = FormalExpr::zero();
        for (c, w) in &self.terms {
            let mut coeff = c.clone();
            let mut img = Vec::with_capacity(w.len());
            for l in w.iter().rev() {
                img.push(match *l {
                    Letter::M(n) => {
                        coeff = coeff.mul_q_pow(-n);
                        Letter::M(-n)
                    }
                    Letter::A(k) => Letter::A(-k),
                    Letter::D(k) => Letter::D(k),
                });
            }
            out.push(coeff, img);
        }
        out
    }
}

fn parse_letter(tok: &str) -> Result<Letter> {
    let bad = || Error::Parse(format!("invalid generator `{tok}`"));
    if let Some(rest) = tok.strip_prefix("M[") {
        let n = rest.strip_suffix(']').ok_or_else(bad)?;
        return Ok(Letter::M(n.trim().parse().map_err(|_| bad())?));
    }
    let (head, pow) = match tok.split_once('^') {
        Some((h, p)) => (h, p.parse::<i32>().map_err(|_| bad())?),
        None => (tok, 1),
    };
    match head {
        "A" => Ok(Letter::A(pow)),
        "D" => Ok(Letter::D(pow)),
        _ => Err(bad()),
    }
}

impl FromStr for FormalExpr {
    type Err = Error;

    /// Parses the text form `<coeff> * M[n1] M[n2] A^a D^d + …`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (mut negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.trim_start()),
            None => (false, s),
        };
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut rest = body;
        while let Some(ch) = rest.chars().next() {
            if depth == 0 && (rest.starts_with(" + ") || rest.starts_with(" - ")) {
                pieces.push((negative, cur.trim().to_string()));
                cur.clear();
                negative = rest.starts_with(" - ");
                rest = &rest[3..];
                continue;
            }
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            cur.push(ch);
            rest = &rest[ch.len_utf8()..];
        }
        pieces.push((negative, cur.trim().to_string()));
        if pieces.iter().any(|(_, p)| p.is_empty()) {
            return Err(Error::Parse(format!("invalid expression `{s}`")));
        }
        let mut out = FormalExpr::zero();
        for (neg, piece) in pieces {
            let (coeff_txt, body) = match piece.split_once(" * ") {
                Some((c, b)) => (Some(c.trim()), b.trim()),
                None if piece.starts_with("M[")
                    || piece.starts_with('A')
                    || piece.starts_with('D') =>
                {
                    (None, piece.as_str())
                }
                None => (Some(piece.as_str()), ""),
            };
            let mut coeff = match coeff_txt {
                Some(c) => c
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .parse::<QLaurent>()?,
                None => QLaurent::one(),
            };
            if neg {
                coeff = -coeff;
            }
            let letters = body
                .split_whitespace()
                .map(parse_letter)
                .collect::<Result<Vec<Letter>>>()?;
            out.push(coeff, letters);
        }
        Ok(out)
    }
}

/// Normal ordering, optionally aware of a rank for the `Δ·A` twist.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NcAlgebra {
    rank: Option<u32>,
}

impl NcAlgebra {
    /// Rank-independent algebra: `Δ` may not be moved past `A`.
    pub fn free() -> Self {
        NcAlgebra { rank: None }
    }

    pub fn with_rank(r: u32) -> Self {
        NcAlgebra { rank: Some(r) }
    }

    pub fn rank(&self) -> Option<u32> {
        self.rank
    }

    /// `q`-exponent of `Δ^d A^a = q^{(r+1)da} A^a Δ^d`.
    fn twist(&self, d: i32, a: i32) -> Result<i32> {
        if d == 0 || a == 0 {
            return Ok(0);
        }
        let r = self.rank.ok_or(Error::RankRequired)?;
        Ok((r as i32 + 1) * d * a)
    }

    /// Canonical form of a formal expression.
    pub fn normal_form(&self, e: &FormalExpr) -> Result<NcPoly> {
        let mut acc: FxHashMap<NcWord, QLaurent> = FxHashMap::default();
        for (c, letters) in &e.terms {
            let (mut cnt_m, mut sum_m, mut sum_a) = (0i32, 0i32, 0i32);
            let (mut q_exp, mut a_tot, mut d_tot) = (0i32, 0i32, 0i32);
            let mut mword: Vec<i32> = Vec::new();
            for l in letters.iter().rev() {
                match *l {
                    Letter::M(n) => {
                        cnt_m += 1;
                        sum_m += n;
                        mword.push(n);
                    }
                    Letter::A(k) => {
                        q_exp -= k * cnt_m;
                        sum_a += k;
                        a_tot += k;
                    }
                    Letter::D(k) => {
                        q_exp += k * sum_m + self.twist(k, sum_a)?;
                        d_tot += k;
                    }
                }
            }
            mword.reverse();
            let coeff = c.mul_q_pow(q_exp);
            for (w, k) in normal_order(&mword) {
                let key = NcWord {
                    m: w,
                    a: a_tot,
                    d: d_tot,
                };
                let v = coeff.mul_ref(&k);
                match acc.get_mut(&key) {
                    Some(x) => *x += &v,
                    None => {
                        acc.insert(key, v);
                    }
                }
            }
        }
        Ok(NcPoly::from_map(acc))
    }

    pub fn mul(&self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
        let mut acc: FxHashMap<NcWord, QLaurent> = FxHashMap::default();
        for (w1, c1) in &a.terms {
            for (w2, c2) in &b.terms {
                let q_exp =
                    -w1.a * w2.m.len() as i32 + w1.d * w2.grade() + self.twist(w1.d, w2.a)?;
                let coeff = c1.mul_ref(c2).mul_q_pow(q_exp);
                for (w, k) in order::multiply(&w1.m, &w2.m) {
                    let key = NcWord {
                        m: w,
                        a: w1.a + w2.a,
                        d: w1.d + w2.d,
                    };
                    let v = coeff.mul_ref(&k);
                    match acc.get_mut(&key) {
                        Some(x) => *x += &v,
                        None => {
                            acc.insert(key, v);
                        }
                    }
                }
            }
        }
        Ok(NcPoly::from_map(acc))
    }

    /// Product of several factors, left to right.
    pub fn product(&self, factors: &[&NcPoly]) -> Result<NcPoly> {
        let mut acc = NcPoly::one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// `a·b - q^k·b·a`.
    pub fn q_comm(&self, a: &NcPoly, b: &NcPoly, k: i32) -> Result<NcPoly> {
        let ab = self.mul(a, b)?;
        let ba = self.mul(b, a)?;
        Ok(ab.sub_ref(&ba.scale(&QLaurent::q_pow(k))))
    }

    /// Image under the time-reversal anti-automorphism.
    pub fn tau(&self, p: &NcPoly) -> Result<NcPoly> {
        self.normal_form(&p.to_formal().tau())
    }
}

/// [`NcAlgebra::normal_form`] without a rank.
pub fn normal_form(e: &FormalExpr) -> Result<NcPoly> {
    NcAlgebra::free().normal_form(e)
}

/// [`NcAlgebra::mul`] without a rank.
pub fn nc_mul(a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
    NcAlgebra::free().mul(a, b)
}

/// [`NcAlgebra::q_comm`] without a rank.
pub fn q_comm(a: &NcPoly, b: &NcPoly, k: i32) -> Result<NcPoly> {
    NcAlgebra::free().q_comm(a, b, k)
}

/// [`NcAlgebra::tau`] without a rank.
pub fn apply_tau(p: &NcPoly) -> Result<NcPoly> {
    NcAlgebra::free().tau(p)
}
