//! Normal ordering of pure `M`-words.
//!
//! A letter is inserted into an already sorted word by rewriting the rightmost
//! inversion. Results are memoized per thread; the rules only see index
//! differences, so keys are translated to start at zero.

use std::cell::RefCell;
use std::rc::Rc;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::QLaurent;

pub type MWord = SmallVec<[i32; 8]>;

type Expansion = Rc<Vec<(MWord, QLaurent)>>;

const CACHE_LIMIT: usize = 400_000;

thread_local! {
    static INSERT_CACHE: RefCell<FxHashMap<(MWord, i32), Expansion>> =
        RefCell::new(FxHashMap::default());
}

/// Drops the per-thread memo table.
pub fn clear_cache() {
    INSERT_CACHE.with(|c| c.borrow_mut().clear());
}

fn translate(e: &Expansion, c: i32) -> Expansion {
    if c == 0 {
        return e.clone();
    }
    Rc::new(
        e.iter()
            .map(|(w, k)| (w.iter().map(|v| v + c).collect(), k.clone()))
            .collect(),
    )
}

/// Normal form of `M_{s_1}⋯M_{s_k}·M_a` for weakly increasing `s`.
pub fn insert(s: &[i32], a: i32) -> Expansion {
    if s.last().is_none_or(|&b| b <= a) {
        let mut w = MWord::from_slice(s);
        w.push(a);
        return Rc::new(vec![(w, QLaurent::one())]);
    }
    let c = s[0].min(a);
    let key: (MWord, i32) = (s.iter().map(|v| v - c).collect(), a - c);
    if let Some(hit) = INSERT_CACHE.with(|m| m.borrow().get(&key).cloned()) {
        return translate(&hit, c);
    }
    let res = Rc::new(compute_insert(&key.0, key.1));
    INSERT_CACHE.with(|m| {
        let mut m = m.borrow_mut();
        if m.len() >= CACHE_LIMIT {
            m.clear();
        }
        m.insert(key, res.clone());
    });
    translate(&res, c)
}

fn accumulate(acc: &mut FxHashMap<MWord, QLaurent>, w: &MWord, c: QLaurent) {
    match acc.get_mut(w) {
        Some(v) => *v += &c,
        None => {
            acc.insert(w.clone(), c);
        }
    }
}

fn finish(acc: FxHashMap<MWord, QLaurent>) -> Vec<(MWord, QLaurent)> {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn compute_insert(s: &[i32], a: i32) -> Vec<(MWord, QLaurent)> {
    let (&b, sp) = s.split_last().expect("nonempty word");
    debug_assert!(b > a);
    let qinv = QLaurent::q_pow(-1);
    let mut acc: FxHashMap<MWord, QLaurent> = FxHashMap::default();
    // M_b M_a -> q^-1 M_a M_b (+ q^-1 M_{b-1} M_{a+1} - M_{a+1} M_{b-1} if b >= a+2)
    for (t, ct) in insert(sp, a).iter() {
        let ct = ct.mul_q_pow(-1);
        for (u, cu) in insert(t, b).iter() {
            accumulate(&mut acc, u, ct.mul_ref(cu));
        }
    }
    if b >= a + 2 {
        for (t, ct) in insert(sp, b - 1).iter() {
            for (u, cu) in insert(t, a + 1).iter() {
                accumulate(&mut acc, u, ct.mul_ref(cu).mul_ref(&qinv));
            }
        }
        for (t, ct) in insert(sp, a + 1).iter() {
            for (u, cu) in insert(t, b - 1).iter() {
                accumulate(&mut acc, u, -ct.mul_ref(cu));
            }
        }
    }
    finish(acc)
}

/// Normal form of `M_{w_1}⋯M_{w_k}` for sorted `left` followed by arbitrary `right`.
pub fn multiply(left: &[i32], right: &[i32]) -> Vec<(MWord, QLaurent)> {
    debug_assert!(left.windows(2).all(|p| p[0] <= p[1]));
    if right.windows(2).all(|p| p[0] <= p[1])
        && (left.is_empty() || right.is_empty() || left[left.len() - 1] <= right[0])
    {
        let mut w = MWord::from_slice(left);
        w.extend_from_slice(right);
        return vec![(w, QLaurent::one())];
    }
    let mut cur: Vec<(MWord, QLaurent)> = vec![(MWord::from_slice(left), QLaurent::one())];
    for &a in right {
        if cur.len() == 1 && cur[0].0.last().is_none_or(|&b| b <= a) {
            cur[0].0.push(a);
            continue;
        }
        let mut next: FxHashMap<MWord, QLaurent> = FxHashMap::default();
        for (t, ct) in &cur {
            for (u, cu) in insert(t, a).iter() {
                accumulate(&mut next, u, ct.mul_ref(cu));
            }
        }
        cur = finish(next);
    }
    cur
}

/// Normal form of an arbitrary `M`-word.
pub fn normal_order(word: &[i32]) -> Vec<(MWord, QLaurent)> {
    multiply(&[], word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ql(s: &str) -> QLaurent {
        s.parse().unwrap()
    }

    fn as_map(v: Vec<(MWord, QLaurent)>) -> std::collections::BTreeMap<Vec<i32>, QLaurent> {
        v.into_iter().map(|(w, c)| (w.to_vec(), c)).collect()
    }

    #[test]
    fn adjacent_swap() {
        let r = as_map(normal_order(&[1, 0]));
        assert_eq!(r.len(), 1);
        assert_eq!(r[&vec![0, 1]], ql("q^-1"));
    }

    #[test]
    fn gap_two_rule() {
        // M2 M0 = q^-1 M0 M2 + q^-1 (1 - q) M1^2
        let r = as_map(normal_order(&[2, 0]));
        assert_eq!(r[&vec![0, 2]], ql("q^-1"));
        assert_eq!(r[&vec![1, 1]], ql("q^-1 - 1"));
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn translation_invariance() {
        let a = as_map(normal_order(&[5, 1, 3, 2]));
        let b = as_map(normal_order(&[2, -2, 0, -1]));
        let shifted: std::collections::BTreeMap<Vec<i32>, QLaurent> = b
            .into_iter()
            .map(|(w, c)| (w.iter().map(|v| v + 3).collect(), c))
            .collect();
        assert_eq!(a, shifted);
    }
}
