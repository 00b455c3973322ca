//! Hilbert functions of bundles with short resolutions, encoded by their
//! bundle sequence.
//!
//! For such a bundle the `n`-th difference `∂ⁿH` is `0` far to the left, `r`
//! far to the right, and any descent lands at a value `>= n`. The finitely
//! many values in between form the bundle sequence `B`, and the position of
//! its first entry (the anchor `s0`) fixes the shift.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::betti::BettiPair;
use crate::error::{Error, Result};
use crate::seq::IntSeq;

/// A bundle sequence `B_1, …, B_m` of rank `r = B_m` on `P^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundleSeq {
    n: u32,
    entries: Vec<i64>,
}

impl BundleSeq {
    pub fn new(n: u32, entries: Vec<i64>) -> Result<Self> {
        let bad = |why: String| Err(Error::InvalidBundleSequence(why));
        if n == 0 {
            return bad("ambient dimension n must be at least 1".into());
        }
        let Some(&r) = entries.last() else {
            return bad("a bundle sequence has at least one entry".into());
        };
        if let Some(&x) = entries.iter().find(|&&x| x <= 0) {
            return bad(format!("entries must be positive, found {x}"));
        }
        if entries.len() >= 2 && entries[entries.len() - 2] == r {
            return bad(format!("the entry before the final {r} must differ from it"));
        }
        for w in entries.windows(2) {
            if w[1] < w[0] && w[1] < n as i64 {
                return bad(format!("descent {} -> {} lands below n = {n}", w[0], w[1]));
            }
        }
        Ok(BundleSeq { n, entries })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rank(&self) -> i64 {
        *self.entries.last().unwrap()
    }

    pub fn degree(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Caret form such as `1^3,2,4`; runs are collapsed left to right.
    pub fn to_caret(&self) -> String {
        let mut runs: Vec<(i64, usize)> = Vec::new();
        for &x in &self.entries {
            match runs.last_mut() {
                Some((v, k)) if *v == x => *k += 1,
                _ => runs.push((x, 1)),
            }
        }
        runs.into_iter()
            .map(|(v, k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for BundleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_caret())
    }
}

/// A finite window of `∂ⁿH` values: `0` before `start`, `values[k]` at
/// `start + k`, and the last value repeated forever to the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTable {
    pub start: i64,
    pub values: Vec<i64>,
}

impl DeltaTable {
    pub fn at(&self, t: i64) -> i64 {
        if t < self.start {
            return 0;
        }
        let k = (t - self.start) as usize;
        match self.values.get(k) {
            Some(&v) => v,
            None => self.values.last().copied().unwrap_or(0),
        }
    }
}

/// Whether a table of `∂ⁿH` values comes from a rank `r >= 1` bundle on
/// `P^n` with short resolution: zero on the left, positive constant on the
/// right, and every descent landing at a value `>= n`.
pub fn is_valid_hilbert(n: u32, delta: &DeltaTable) -> bool {
    let Some(&r) = delta.values.last() else {
        return false;
    };
    if r < 1 || n == 0 {
        return false;
    }
    let mut prev = 0;
    for &v in &delta.values {
        if v < prev && v < n as i64 {
            return false;
        }
        prev = v;
    }
    true
}

/// The Hilbert function `t ↦ dim H⁰(E(t))` of a bundle on `P^n`, stored as
/// its bundle sequence and anchor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawHilbert", into = "RawHilbert")]
pub struct HilbertFn {
    s0: i64,
    seq: BundleSeq,
}

#[derive(Serialize, Deserialize)]
struct RawHilbert {
    n: u32,
    s0: i64,
    #[serde(rename = "B")]
    seq: Vec<i64>,
}

impl TryFrom<RawHilbert> for HilbertFn {
    type Error = Error;

    fn try_from(raw: RawHilbert) -> Result<Self> {
        HilbertFn::new(raw.n, raw.s0, raw.seq)
    }
}

impl From<HilbertFn> for RawHilbert {
    fn from(h: HilbertFn) -> Self {
        RawHilbert {
            n: h.seq.n,
            s0: h.s0,
            seq: h.seq.entries,
        }
    }
}

impl HilbertFn {
    pub fn new(n: u32, s0: i64, entries: Vec<i64>) -> Result<Self> {
        Ok(HilbertFn {
            s0,
            seq: BundleSeq::new(n, entries)?,
        })
    }

    pub fn from_seq(seq: BundleSeq, s0: i64) -> Self {
        HilbertFn { s0, seq }
    }

    /// Trims a valid `∂ⁿH` table down to its bundle sequence.
    pub fn from_delta(n: u32, delta: &DeltaTable) -> Result<Self> {
        if !is_valid_hilbert(n, delta) {
            return Err(Error::InvalidBundleSequence(format!(
                "{:?} starting at {} is not the n-th difference of a bundle Hilbert function",
                delta.values, delta.start
            )));
        }
        let r = *delta.values.last().unwrap();
        let first = delta.values.iter().position(|&v| v != 0).unwrap();
        // index of the first entry of the final run of r's
        let mut end = delta.values.len() - 1;
        while end > 0 && delta.values[end - 1] == r {
            end -= 1;
        }
        let end = end.max(first);
        HilbertFn::new(n, delta.start + first as i64, delta.values[first..=end].to_vec())
    }

    pub fn n(&self) -> u32 {
        self.seq.n
    }

    /// Least `t` with `∂ⁿH(t) ≠ 0`.
    pub fn s0(&self) -> i64 {
        self.s0
    }

    /// Greatest `t` with `∂ⁿH(t) ≠ r`.
    pub fn s1(&self) -> i64 {
        self.s0 + self.seq.len() as i64 - 2
    }

    pub fn seq(&self) -> &BundleSeq {
        &self.seq
    }

    pub fn rank(&self) -> i64 {
        self.seq.rank()
    }

    pub fn degree(&self) -> i64 {
        self.seq.degree()
    }

    /// `∂ⁿH(t)`.
    pub fn delta_n(&self, t: i64) -> i64 {
        if t < self.s0 {
            return 0;
        }
        let k = (t - self.s0) as usize;
        self.seq.entries.get(k).copied().unwrap_or_else(|| self.rank())
    }

    /// `∂ⁿ⁺¹H(t) = ∂ⁿH(t) − ∂ⁿH(t−1)`, nonzero only on `[s0, s1+1]`.
    pub fn jump(&self, t: i64) -> i64 {
        self.delta_n(t) - self.delta_n(t - 1)
    }

    /// The nonzero jumps as `(t, ∂ⁿ⁺¹H(t))`, ascending in `t`.
    pub fn jumps(&self) -> Vec<(i64, i64)> {
        (self.s0..=self.s1() + 1)
            .map(|t| (t, self.jump(t)))
            .filter(|&(_, j)| j != 0)
            .collect()
    }

    /// `H(t) = Σ_s ∂ⁿ⁺¹H(s) · C(t − s + n, n)`, each jump at `s` being the
    /// Hilbert function of a free module generated in degree `s`.
    pub fn eval(&self, t: i64) -> BigUint {
        let n = self.n() as u64;
        let mut total = BigInt::zero();
        for (s, j) in self.jumps() {
            if s > t {
                break;
            }
            total += BigInt::from(j) * BigInt::from(binomial((t - s) as u64 + n, n));
        }
        total.to_biguint().expect("Hilbert function values are nonnegative")
    }

    /// `eval` for callers that know the value fits.
    pub fn eval_u64(&self, t: i64) -> Option<u64> {
        self.eval(t).to_u64()
    }

    /// The unique Betti pair with no common entries: positive jumps of `∂ⁿH`
    /// go to `β`, negative jumps to `α`.
    pub fn minimal_betti(&self) -> BettiPair {
        let mut alpha = Vec::new();
        let mut beta = Vec::new();
        for (t, j) in self.jumps() {
            let target = if j > 0 { &mut beta } else { &mut alpha };
            target.extend(std::iter::repeat_n(t, j.unsigned_abs() as usize));
        }
        BettiPair::new(self.n(), alpha, beta).expect("a valid Hilbert function has r >= 1")
    }

    /// `c1 = deg B − (s1 + 2)·r`.
    pub fn c1(&self) -> i64 {
        self.degree() - (self.s1() + 2) * self.rank()
    }

    /// The same Hilbert function shifted by `k` (the bundle twisted by `O(−k)`).
    pub fn shifted(&self, k: i64) -> HilbertFn {
        HilbertFn {
            s0: self.s0 + k,
            seq: self.seq.clone(),
        }
    }

    /// Twists so that `−r < c1 <= 0`; returns the normalized function and the
    /// twist `k = ⌈c1/r⌉` (twisting by `O(−k)`).
    pub fn normalize(&self) -> (HilbertFn, i64) {
        let k = div_ceil(self.c1(), self.rank());
        (self.shifted(k), k)
    }

    /// The anchor that makes `seq` normalized.
    pub fn normalized_anchor(seq: &BundleSeq) -> i64 {
        let s1 = div_ceil(seq.degree(), seq.rank()) - 2;
        s1 - seq.len() as i64 + 2
    }

    pub fn is_normalized(&self) -> bool {
        let c1 = self.c1();
        -self.rank() < c1 && c1 <= 0
    }
}

impl fmt::Display for HilbertFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at s0={} on P^{}", self.seq, self.s0, self.n())
    }
}

/// The Hilbert function of the cokernel of an admissible pair:
/// `∂ⁿ⁺¹H(t) = μ(b,t) − μ(a,t)`.
pub fn hilbert_of_betti(p: &BettiPair) -> Result<HilbertFn> {
    p.ensure_admissible()?;
    let lo = p.b().first().unwrap();
    let hi = p.b().last().unwrap().max(p.a().last().unwrap_or(i64::MIN));
    let values = (lo..=hi)
        .map(|t| p.b().count_le(t) as i64 - p.a().count_le(t) as i64)
        .collect();
    HilbertFn::from_delta(p.n(), &DeltaTable { start: lo, values })
}

/// Sum of `C(t − d + n, n)` over `d` in `seq`, the Hilbert function of
/// `⊕ R(−d)`.
pub fn free_module_hilbert(n: u32, seq: &IntSeq, t: i64) -> BigUint {
    seq.iter()
        .filter(|&d| d <= t)
        .map(|d| binomial((t - d) as u64 + n as u64, n as u64))
        .sum()
}

pub(crate) fn binomial(m: u64, k: u64) -> BigUint {
    if k > m {
        return BigUint::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (m - i) / (i + 1);
    }
    acc
}

pub(crate) fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}
