//! Generation of bundle sequences and of the largest difference sequence of a
//! bounded Betti lattice.

use std::collections::HashMap;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::hilbert::{div_ceil, BundleSeq, HilbertFn};
use crate::seq::IntSeq;

/// All bundle sequences of rank `r` and degree `degree` on `P^n`, sorted.
///
/// Dropping the head of a bundle sequence leaves a bundle sequence of the
/// same rank, so sequences of degree `D` are built by prepending heads to
/// those of degree `D − head`.
pub fn bundle_sequences(n: u32, r: i64, degree: i64) -> Vec<BundleSeq> {
    assert!(n >= 1 && r >= 1, "need n >= 1 and r >= 1");
    let mut gen = SeqGen {
        n: n as i64,
        r,
        memo: HashMap::new(),
    };
    let mut out: Vec<BundleSeq> = gen
        .suffixes(degree)
        .iter()
        .map(|s| BundleSeq::new(n, s.clone()).expect("generated sequences are valid"))
        .collect();
    out.sort();
    out
}

struct SeqGen {
    n: i64,
    r: i64,
    memo: HashMap<i64, Rc<Vec<Vec<i64>>>>,
}

impl SeqGen {
    fn suffixes(&mut self, degree: i64) -> Rc<Vec<Vec<i64>>> {
        if let Some(hit) = self.memo.get(&degree) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if degree == self.r {
            out.push(vec![self.r]);
        }
        for head in 1..=degree - self.r {
            let tails = self.suffixes(degree - head);
            for tail in tails.iter() {
                let next = tail[0];
                if tail.len() == 1 && head == self.r {
                    continue;
                }
                if next < head && next < self.n {
                    continue;
                }
                let mut s = Vec::with_capacity(tail.len() + 1);
                s.push(head);
                s.extend_from_slice(tail);
                out.push(s);
            }
        }
        let out = Rc::new(out);
        self.memo.insert(degree, out.clone());
        out
    }
}

/// Normalized Hilbert functions of rank `r` on `P^n` whose minimal Betti pair
/// has regularity at most `d`.
///
/// Normalized bundles satisfy `reg >= ⌈deg B / r⌉ − 2`, so only degrees up to
/// `r·(d + 2)` can contribute.
pub fn bundle_sequences_by_reg(n: u32, r: i64, d: i64) -> Vec<HilbertFn> {
    let mut out = Vec::new();
    for degree in r..=r * (d + 2) {
        debug_assert!(div_ceil(degree, r) - 2 <= d);
        for seq in bundle_sequences(n, r, degree) {
            let s0 = HilbertFn::normalized_anchor(&seq);
            let h = HilbertFn::from_seq(seq, s0);
            if h.minimal_betti().regularity() <= d {
                out.push(h);
            }
        }
    }
    out
}

/// The largest `c` such that `(α, β) + c` is admissible with regularity at
/// most `d`, where `(α, β)` is the minimal Betti pair of `h`.
///
/// Admissible difference sequences are closed under multiset max, so the
/// answer is assembled value by value: for each `t` take the largest `k` with
/// `(α, β) + t^k` still valid. Only `t` in `(β_n, d]` can occur at all.
pub fn max_difference(h: &HilbertFn, d: i64) -> Result<IntSeq> {
    let base = h.minimal_betti();
    let actual = base.regularity();
    if actual > d {
        return Err(Error::RegularityTooSmall { bound: d, actual });
    }
    let n = h.n() as usize;
    let beta = base.b().as_slice();
    if beta.len() < n {
        return Ok(IntSeq::empty());
    }
    let mut cmax = IntSeq::empty();
    for t in beta[n - 1] + 1..=d {
        let mut k = 0;
        loop {
            let candidate = base.add(&IntSeq::repeat(t, k + 1));
            if !candidate.is_admissible() || candidate.regularity() > d {
                break;
            }
            k += 1;
        }
        cmax = cmax.sum(&IntSeq::repeat(t, k));
    }
    Ok(cmax)
}
