//! Betti pairs `(a, b)` of two-term resolutions
//! `0 -> ⊕ O(-a_i) -> ⊕ O(-b_i) -> E -> 0` on `P^n`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::IntSeq;

/// Source twists `a` (length `l`) and target twists `b` (length `l + r`) on
/// `P^n`, with `r >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct BettiPair {
    n: u32,
    a: IntSeq,
    b: IntSeq,
}

#[derive(Deserialize)]
struct RawPair {
    n: u32,
    a: IntSeq,
    b: IntSeq,
}

impl TryFrom<RawPair> for BettiPair {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        BettiPair::new(raw.n, raw.a, raw.b)
    }
}

impl BettiPair {
    pub fn new(n: u32, a: impl Into<IntSeq>, b: impl Into<IntSeq>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if n == 0 {
            return Err(Error::InvalidPair("ambient dimension n must be at least 1".into()));
        }
        if b.len() <= a.len() {
            return Err(Error::InvalidPair(format!(
                "b must be longer than a (got |a| = {}, |b| = {})",
                a.len(),
                b.len()
            )));
        }
        Ok(BettiPair { n, a, b })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> &IntSeq {
        &self.a
    }

    pub fn b(&self) -> &IntSeq {
        &self.b
    }

    /// Number of relations.
    pub fn l(&self) -> usize {
        self.a.len()
    }

    /// Rank of the cokernel.
    pub fn r(&self) -> usize {
        self.b.len() - self.a.len()
    }

    pub fn is_split(&self) -> bool {
        self.a.is_empty()
    }

    /// Either `a` is empty, or `r >= n` and `a_i > b_{n+i}` for every `i`.
    pub fn is_admissible(&self) -> bool {
        if self.a.is_empty() {
            return true;
        }
        let n = self.n as usize;
        if self.r() < n {
            return false;
        }
        let (a, b) = (self.a.as_slice(), self.b.as_slice());
        a.iter().enumerate().all(|(i, &ai)| ai > b[i + n])
    }

    pub fn ensure_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::NotAdmissible(self.to_string()))
        }
    }

    /// First Chern class `Σa − Σb` of the cokernel.
    pub fn c1(&self) -> i64 {
        self.a.total() - self.b.total()
    }

    /// Castelnuovo–Mumford regularity `max(b_last, a_last − 1)`.
    pub fn regularity(&self) -> i64 {
        let b_last = self.b.last().expect("b is never empty");
        match self.a.last() {
            Some(a_last) => b_last.max(a_last - 1),
            None => b_last,
        }
    }

    /// Number of entries shared by `a` and `b`, counted with multiplicity.
    pub fn grading_q(&self) -> usize {
        self.a.common_count(&self.b)
    }

    /// `(a + c, b + c)`.
    pub fn add(&self, c: &IntSeq) -> BettiPair {
        BettiPair {
            n: self.n,
            a: self.a.sum(c),
            b: self.b.sum(c),
        }
    }

    /// Removes a common sequence `c` from both sides.
    pub fn remove(&self, c: &IntSeq) -> Result<BettiPair> {
        BettiPair::new(self.n, self.a.diff(c)?, self.b.diff(c)?)
    }

    /// If `other = self + c` for some `c`, returns that `c`: `self` is then a
    /// generalization of `other`.
    pub fn generalizes(&self, other: &BettiPair) -> Option<IntSeq> {
        if self.n != other.n {
            return None;
        }
        let c = other.a.diff(&self.a).ok()?;
        let cb = other.b.diff(&self.b).ok()?;
        (c == cb).then_some(c)
    }
}

impl fmt::Display for BettiPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}; n={})", self.a, self.b, self.n)
    }
}

/// Every admissible pair on `P^n` of rank `r`, first Chern class `c1` and
/// regularity at most `d`, sorted.
///
/// The search box: writing `c1 = Σ(a_i − b_{n+i}) − Σ_{i<=n} b_i − Σ_{i>l+n} b_i`
/// and using `a_i − b_{n+i} >= 1`, `b_i <= d` gives `l <= c1 + r·d` and
/// `b_1 >= l − c1 − (r−1)·d`. Entries of `a` lie in `(b_{n+i}, d+1]`.
pub fn enumerate_admissible(n: u32, r: usize, c1: i64, d: i64) -> Vec<BettiPair> {
    assert!(n >= 1 && r >= 1, "need n >= 1 and r >= 1");
    let mut out = BTreeSet::new();
    let ri = r as i64;

    // split bundles: Σb = −c1, entries in [−c1 − (r−1)d, d]
    let lo = -c1 - (ri - 1) * d;
    let mut b = Vec::with_capacity(r);
    ascending_with_sum(lo, d, r, -c1, &mut b, &mut |b| {
        out.insert(BettiPair::new(n, IntSeq::empty(), b.to_vec()).unwrap());
    });

    if r >= n as usize {
        let max_l = c1 + ri * d;
        for l in 1..=max_l.max(0) as usize {
            let lo = l as i64 - c1 - (ri - 1) * d;
            if lo > d {
                continue;
            }
            let mut b = Vec::with_capacity(l + r);
            ascending(lo, d, l + r, &mut b, &mut |b| {
                let target = c1 + b.iter().sum::<i64>();
                let mut a = Vec::with_capacity(l);
                fill_a(b, n as usize, l, d + 1, target, &mut a, &mut |a| {
                    out.insert(BettiPair::new(n, a.to_vec(), b.to_vec()).unwrap());
                });
            });
        }
    }
    out.into_iter().collect()
}

fn ascending(lo: i64, hi: i64, len: usize, cur: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    if cur.len() == len {
        emit(cur);
        return;
    }
    let start = cur.last().copied().unwrap_or(lo);
    for v in start..=hi {
        cur.push(v);
        ascending(lo, hi, len, cur, emit);
        cur.pop();
    }
}

fn ascending_with_sum(lo: i64, hi: i64, len: usize, sum: i64, cur: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    let left = (len - cur.len()) as i64;
    if left == 0 {
        if sum == 0 {
            emit(cur);
        }
        return;
    }
    let start = cur.last().copied().unwrap_or(lo);
    for v in start..=hi {
        // remaining entries are all >= v and <= hi
        if v * left > sum {
            break;
        }
        if v + hi * (left - 1) < sum {
            continue;
        }
        cur.push(v);
        ascending_with_sum(lo, hi, len, sum - v, cur, emit);
        cur.pop();
    }
}

/// Ascending `a` of length `l` with `b[i+n] < a[i] <= hi` and `Σa = target`.
fn fill_a(b: &[i64], n: usize, l: usize, hi: i64, target: i64, cur: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    let i = cur.len();
    if i == l {
        if target == 0 {
            emit(cur);
        }
        return;
    }
    let left = (l - i) as i64;
    if hi * left < target {
        return;
    }
    let start = cur.last().copied().unwrap_or(i64::MIN).max(b[i + n] + 1);
    for v in start..=hi {
        if v * left > target {
            break;
        }
        cur.push(v);
        fill_a(b, n, l, hi, target - v, cur, emit);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pair(n: u32, a: &[i64], b: &[i64]) -> BettiPair {
        BettiPair::new(n, a.to_vec(), b.to_vec()).unwrap()
    }

    fn m1x5() -> Vec<i64> {
        vec![-1; 5]
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        assert_eq!(BettiPair::new(3, vec![0], vec![1]).unwrap_err().code(), "InvalidPair");
        assert_eq!(BettiPair::new(0, vec![], vec![1]).unwrap_err().code(), "InvalidPair");
        assert!(BettiPair::new(3, vec![], vec![]).is_err());
    }

    #[test]
    fn admissibility_examples() {
        assert!(pair(3, &[], &[-1, 0, 2]).is_admissible());
        assert!(pair(3, &[2], &[0, 0, 0, 1, 1]).is_admissible());
        assert!(!pair(3, &[1], &[0, 0, 0, 1]).is_admissible());
        // r < n with nonempty a
        assert!(!pair(3, &[5], &[0, 0, 0]).is_admissible());
    }

    #[test]
    fn c1_examples() {
        assert_eq!(pair(3, &[0], &m1x5()).c1(), 5);
        assert_eq!(pair(3, &[], &[0, 0]).c1(), 0);
        assert_eq!(pair(3, &[2], &[0, 0, 0, 1, 1]).c1(), 0);
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(pair(3, &[0], &m1x5()).regularity(), -1);
        assert_eq!(pair(3, &[0, 0, 1, 2], &[-1, -1, -1, -1, -1, 0, 1, 2]).regularity(), 2);
        assert_eq!(pair(3, &[], &[0, 3]).regularity(), 3);
    }

    #[test]
    fn grading_examples() {
        assert_eq!(pair(3, &[0], &m1x5()).grading_q(), 0);
        assert_eq!(pair(3, &[0, 1], &[-1, -1, -1, -1, -1, 1]).grading_q(), 1);
        assert_eq!(pair(3, &[0, 0, 1, 2], &[-1, -1, -1, -1, -1, 0, 1, 2]).grading_q(), 3);
    }

    #[test]
    fn generalization_examples() {
        let p = pair(3, &[0], &m1x5());
        let q = pair(3, &[0, 0, 1, 2], &[-1, -1, -1, -1, -1, 0, 1, 2]);
        assert_eq!(p.generalizes(&q), Some(IntSeq::from([0, 1, 2])));
        assert_eq!(p.generalizes(&p), Some(IntSeq::empty()));
        assert_eq!(p.generalizes(&pair(3, &[1], &m1x5())), None);
        assert_eq!(q.generalizes(&p), None);
        assert_eq!(pair(2, &[0], &m1x5()).generalizes(&p), None);
    }

    #[test]
    fn enumeration_examples() {
        let at_zero = enumerate_admissible(3, 4, 0, 0);
        assert!(at_zero.contains(&pair(3, &[], &[0, 0, 0, 0])));
        let at_minus_one = enumerate_admissible(3, 4, 0, -1);
        assert!(!at_minus_one.contains(&pair(3, &[], &[0, 0, 0, 0])));
        let five = enumerate_admissible(3, 4, 5, -1);
        assert!(five.contains(&pair(3, &[0], &m1x5())));
        for p in &five {
            assert!(p.is_admissible());
            assert_eq!(p.c1(), 5);
            assert_eq!(p.r(), 4);
            assert!(p.regularity() <= -1);
        }
    }

    #[test]
    fn enumeration_is_closed_under_generalization() {
        let all = enumerate_admissible(3, 4, 5, 1);
        let set: BTreeSet<_> = all.iter().cloned().collect();
        for p in &all {
            for (t, _) in p.a().seq_min(p.b()).runs() {
                let smaller = p.remove(&IntSeq::from([t])).unwrap();
                assert!(set.contains(&smaller), "{smaller} missing (from {p})");
            }
        }
    }

    /// Random admissible pair plus a random common sequence on top of it.
    fn arb_admissible() -> impl Strategy<Value = BettiPair> {
        (
            1u32..4,
            0usize..4,
            0usize..3,
            proptest::collection::vec(0i64..3, 12),
            proptest::collection::vec(0i64..3, 4),
        )
            .prop_map(|(n, l, extra, bsteps, asteps)| {
                let r = n as usize + extra;
                let mut b = Vec::new();
                let mut cur = -2;
                for k in 0..l + r {
                    cur += bsteps[k] % 2;
                    b.push(cur);
                }
                let mut a = Vec::new();
                let mut prev = i64::MIN;
                for i in 0..l {
                    let v = (b[i + n as usize] + 1).max(prev) + asteps[i];
                    a.push(v);
                    prev = v;
                }
                pair(n, &a, &b)
            })
    }

    proptest! {
        #[test]
        fn generator_is_admissible(p in arb_admissible()) {
            prop_assert!(p.is_admissible());
            if !p.a().is_empty() {
                prop_assert!(p.r() >= p.n() as usize);
            }
        }

        #[test]
        fn admissibility_is_downward_closed(
            p in arb_admissible(),
            c in proptest::collection::vec(-2i64..4, 0..4),
            mask in proptest::collection::vec(any::<bool>(), 4),
        ) {
            let q = p.add(&IntSeq::new(c.clone()));
            if !q.is_admissible() {
                return Ok(());
            }
            let sub = IntSeq::new(c.iter().zip(&mask).filter(|(_, &k)| k).map(|(&v, _)| v).collect());
            let smaller = q.remove(&sub).unwrap();
            prop_assert_eq!(smaller.generalizes(&q), Some(sub));
            prop_assert!(smaller.is_admissible());
            prop_assert!(smaller.regularity() <= q.regularity());
            prop_assert_eq!(smaller.c1(), q.c1());
            prop_assert!(smaller.grading_q() <= q.grading_q());
        }
    }
}
