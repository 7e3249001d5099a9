//! Letter-level rewriting with explicit reduction strategies.
//!
//! This is deliberately naive: one rule application per step on whole
//! letter words. It exists to compare reduction orders against the memoized
//! normal form.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FormalExpr, Letter, NcAlgebra, NcPoly, NcWord};
use crate::{Error, QLaurent, Result};

/// Which redex to contract next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// Uniformly random redex, from a seeded generator.
    Random(u64),
}

type Word = Vec<Letter>;

fn is_redex(x: Letter, y: Letter) -> bool {
    match (x, y) {
        (Letter::M(b), Letter::M(a)) => b > a,
        (Letter::A(_), Letter::M(_))
        | (Letter::D(_), Letter::M(_))
        | (Letter::D(_), Letter::A(_)) => true,
        (Letter::A(_), Letter::A(_)) | (Letter::D(_), Letter::D(_)) => true,
        _ => false,
    }
}

fn redexes(w: &Word) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&p| is_redex(w[p], w[p + 1]))
        .collect()
}

/// Contracts the redex at `p`, returning the resulting combination.
fn rewrite(w: &Word, p: usize, rank: Option<u32>) -> Result<Vec<(QLaurent, Word)>> {
    let splice = |mid: &[Letter]| -> Word {
        let mut v = w[..p].to_vec();
        v.extend_from_slice(mid);
        v.extend_from_slice(&w[p + 2..]);
        v
    };
    let q = QLaurent::q_pow;
    Ok(match (w[p], w[p + 1]) {
        (Letter::M(b), Letter::M(a)) => {
            let mut out = vec![(q(-1), splice(&[Letter::M(a), Letter::M(b)]))];
            if b >= a + 2 {
                out.push((q(-1), splice(&[Letter::M(b - 1), Letter::M(a + 1)])));
                out.push((
                    QLaurent::from_int(-1),
                    splice(&[Letter::M(a + 1), Letter::M(b - 1)]),
                ));
            }
            out
        }
        (Letter::A(k), Letter::M(n)) => vec![(q(-k), splice(&[Letter::M(n), Letter::A(k)]))],
        (Letter::D(k), Letter::M(n)) => vec![(q(k * n), splice(&[Letter::M(n), Letter::D(k)]))],
        (Letter::D(k), Letter::A(l)) => {
            let r = rank.ok_or(Error::RankRequired)? as i32;
            vec![(q((r + 1) * k * l), splice(&[Letter::A(l), Letter::D(k)]))]
        }
        (Letter::A(k), Letter::A(l)) => {
            vec![(
                QLaurent::one(),
                if k + l == 0 {
                    splice(&[])
                } else {
                    splice(&[Letter::A(k + l)])
                },
            )]
        }
        (Letter::D(k), Letter::D(l)) => {
            vec![(
                QLaurent::one(),
                if k + l == 0 {
                    splice(&[])
                } else {
                    splice(&[Letter::D(k + l)])
                },
            )]
        }
        _ => unreachable!("not a redex"),
    })
}

fn to_poly(word: &Word, c: QLaurent) -> NcPoly {
    let mut m = Vec::new();
    let (mut a, mut d) = (0, 0);
    for l in word {
        match *l {
            Letter::M(n) => m.push(n),
            Letter::A(k) => a += k,
            Letter::D(k) => d += k,
        }
    }
    NcPoly::term(NcWord::new(&m, a, d), c)
}

fn strip_zero_powers(w: &[Letter]) -> Word {
    w.iter()
        .copied()
        .filter(|l| !matches!(l, Letter::A(0) | Letter::D(0)))
        .collect()
}

/// Reduces `e` to normal form one rule application at a time.
pub fn reduce_with(e: &FormalExpr, rank: Option<u32>, strategy: Strategy) -> Result<NcPoly> {
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut pending: BTreeMap<Word, QLaurent> = BTreeMap::new();
    let add = |map: &mut BTreeMap<Word, QLaurent>, w: Word, c: QLaurent| {
        let v = map.entry(w.clone()).or_default();
        *v += &c;
        if v.is_zero() {
            map.remove(&w);
        }
    };
    for (c, w) in &e.terms {
        add(&mut pending, strip_zero_powers(w), c.clone());
    }
    let mut out = NcPoly::zero();
    while let Some((w, c)) = pending.pop_first() {
        let spots = redexes(&w);
        if spots.is_empty() {
            out = out.add_ref(&to_poly(&w, c));
            continue;
        }
        let p = match (strategy, rng.as_mut()) {
            (Strategy::Leftmost, _) => spots[0],
            (Strategy::Rightmost, _) => spots[spots.len() - 1],
            (Strategy::Random(_), Some(g)) => spots[g.gen_range(0..spots.len())],
            (Strategy::Random(_), None) => unreachable!(),
        };
        for (k, v) in rewrite(&w, p, rank)? {
            add(&mut pending, v, c.mul_ref(&k));
        }
    }
    Ok(out)
}

/// True iff leftmost, rightmost and `strategies - 2` random reduction orders
/// all agree with the memoized normal form of `word`.
pub fn confluence_probe(
    word: &[Letter],
    rank: Option<u32>,
    strategies: usize,
    seed: u64,
) -> Result<bool> {
    let e = FormalExpr::word(word.to_vec());
    let reference = match rank {
        Some(r) => NcAlgebra::with_rank(r).normal_form(&e)?,
        None => NcAlgebra::free().normal_form(&e)?,
    };
    let mut plan = vec![Strategy::Leftmost, Strategy::Rightmost];
    for i in 0..strategies.saturating_sub(2) as u64 {
        plan.push(Strategy::Random(
            seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i),
        ));
    }
    plan.truncate(strategies.max(1));
    for s in plan {
        if reduce_with(&e, rank, s)? != reference {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks every word reachable from `word`: each one-step reduct must have
/// the same normal form as the word itself. Together with termination this
/// means all reduction orders agree.
pub fn confluence_exhaustive(word: &[Letter], rank: Option<u32>) -> Result<bool> {
    let alg = match rank {
        Some(r) => NcAlgebra::with_rank(r),
        None => NcAlgebra::free(),
    };
    let start = strip_zero_powers(word);
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut stack = vec![start];
    while let Some(w) = stack.pop() {
        if !seen.insert(w.clone()) {
            continue;
        }
        let here = alg.normal_form(&FormalExpr::word(w.clone()))?;
        for p in redexes(&w) {
            let step = rewrite(&w, p, rank)?;
            let mut e = FormalExpr::zero();
            for (c, v) in &step {
                e.push(c.clone(), v.clone());
            }
            if alg.normal_form(&e)? != here {
                return Ok(false);
            }
            stack.extend(step.into_iter().map(|(_, v)| v));
        }
    }
    Ok(true)
}
