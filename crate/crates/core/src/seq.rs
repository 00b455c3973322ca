//! Ascending integer sequences with multiset semantics.
//!
//! Every twist sequence in this crate (the source twists `a`, the target
//! twists `b`, difference sequences `c`) is an [`IntSeq`]. Two sequences are
//! equal exactly when they hold the same multiset, because the entries are
//! kept sorted.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntSeq(Vec<i64>);

impl IntSeq {
    pub fn new(mut entries: Vec<i64>) -> Self {
        entries.sort_unstable();
        IntSeq(entries)
    }

    pub fn empty() -> Self {
        IntSeq(Vec::new())
    }

    /// `count` copies of `value`.
    pub fn repeat(value: i64, count: usize) -> Self {
        IntSeq(vec![value; count])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<i64> {
        self.0.last().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Number of occurrences of `t`.
    pub fn multiplicity(&self, t: i64) -> usize {
        let lo = self.0.partition_point(|&x| x < t);
        let hi = self.0.partition_point(|&x| x <= t);
        hi - lo
    }

    /// Number of entries `<= t`.
    pub fn count_le(&self, t: i64) -> usize {
        self.0.partition_point(|&x| x <= t)
    }

    /// Number of entries `< t`.
    pub fn count_lt(&self, t: i64) -> usize {
        self.0.partition_point(|&x| x < t)
    }

    /// Distinct values with their multiplicities, ascending.
    pub fn runs(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for &x in &self.0 {
            match out.last_mut() {
                Some((v, k)) if *v == x => *k += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    /// Multiset union with multiplicities added.
    pub fn sum(&self, other: &IntSeq) -> IntSeq {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(other.0[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        IntSeq(out)
    }

    /// Removes one copy of each entry of `other`; fails unless `other` is a
    /// sub-multiset of `self`.
    pub fn diff(&self, other: &IntSeq) -> Result<IntSeq> {
        let mut out = Vec::with_capacity(self.len().saturating_sub(other.len()));
        let mut j = 0;
        for &x in &self.0 {
            if j < other.0.len() && other.0[j] == x {
                j += 1;
            } else if j < other.0.len() && other.0[j] < x {
                break;
            } else {
                out.push(x);
            }
        }
        if j != other.0.len() {
            return Err(Error::NotSubMultiset {
                sup: self.to_string(),
                sub: other.to_string(),
            });
        }
        Ok(IntSeq(out))
    }

    pub fn is_submultiset_of(&self, other: &IntSeq) -> bool {
        other.diff(self).is_ok()
    }

    /// Pointwise minimum of multiplicities.
    pub fn seq_min(&self, other: &IntSeq) -> IntSeq {
        self.merge_with(other, usize::min)
    }

    /// Pointwise maximum of multiplicities.
    pub fn seq_max(&self, other: &IntSeq) -> IntSeq {
        self.merge_with(other, usize::max)
    }

    fn merge_with(&self, other: &IntSeq, pick: fn(usize, usize) -> usize) -> IntSeq {
        let (x, y) = (self.runs(), other.runs());
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        loop {
            let (v, k) = match (x.get(i), y.get(j)) {
                (None, None) => break,
                (Some(&(v, k)), None) => {
                    i += 1;
                    (v, pick(k, 0))
                }
                (None, Some(&(v, k))) => {
                    j += 1;
                    (v, pick(0, k))
                }
                (Some(&(v, k)), Some(&(w, m))) => match v.cmp(&w) {
                    Ordering::Less => {
                        i += 1;
                        (v, pick(k, 0))
                    }
                    Ordering::Greater => {
                        j += 1;
                        (w, pick(0, m))
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (v, pick(k, m))
                    }
                },
            };
            out.extend(std::iter::repeat_n(v, k));
        }
        IntSeq(out)
    }

    /// Size of the multiset intersection, i.e. the number of entries the two
    /// sequences have in common.
    pub fn common_count(&self, other: &IntSeq) -> usize {
        self.seq_min(other).len()
    }

    /// Compact form using `t^j` for runs, e.g. `1^5,4`.
    pub fn to_caret(&self) -> String {
        self.runs()
            .into_iter()
            .map(|(v, k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Expanded comma list, e.g. `1,1,1,1,1,4`.
    pub fn to_csv(&self) -> String {
        self.0.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    }
}

impl From<Vec<i64>> for IntSeq {
    fn from(v: Vec<i64>) -> Self {
        IntSeq::new(v)
    }
}

impl From<IntSeq> for Vec<i64> {
    fn from(s: IntSeq) -> Self {
        s.0
    }
}

impl<const N: usize> From<[i64; N]> for IntSeq {
    fn from(v: [i64; N]) -> Self {
        IntSeq::new(v.to_vec())
    }
}

impl fmt::Display for IntSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_caret())
    }
}

/// Parses a comma list with optional caret runs (`-1^5,0,2`), keeping the
/// order as written. Empty input (or `()`) is the empty list.
pub fn parse_caret_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    let s = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s)
        .trim();
    let mut out = Vec::new();
    if s.is_empty() {
        return Ok(out);
    }
    for item in s.split(',') {
        let item = item.trim();
        let (value, count) = match item.split_once('^') {
            Some((v, k)) => (v.trim(), k.trim()),
            None => (item, "1"),
        };
        let value: i64 = value
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {value:?} in {s:?}")))?;
        let count: usize = count
            .parse()
            .map_err(|_| Error::Parse(format!("bad repeat count {count:?} in {s:?}")))?;
        out.extend(std::iter::repeat_n(value, count));
    }
    Ok(out)
}

impl FromStr for IntSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_caret_list(s).map(IntSeq::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &[i64]) -> IntSeq {
        IntSeq::new(v.to_vec())
    }

    #[test]
    fn sum_examples() {
        assert_eq!(s(&[0]).sum(&s(&[0, 1, 2])), s(&[0, 0, 1, 2]));
        assert_eq!(IntSeq::empty().sum(&s(&[5, 4])), s(&[4, 5]));
        assert_eq!(s(&[1, 3]).sum(&s(&[2, 2])).as_slice(), &[1, 2, 2, 3]);
    }

    #[test]
    fn diff_examples() {
        assert_eq!(s(&[0, 0, 1, 2]).diff(&s(&[0])).unwrap(), s(&[0, 1, 2]));
        assert_eq!(s(&[4, 5]).diff(&s(&[4, 5])).unwrap(), IntSeq::empty());
        let err = s(&[1, 2]).diff(&s(&[3])).unwrap_err();
        assert_eq!(err.code(), "NotSubMultiset");
        assert!(s(&[1, 2]).diff(&s(&[1, 1])).is_err());
    }

    #[test]
    fn min_max_examples() {
        assert_eq!(s(&[0, 1]).seq_min(&s(&[1, 2])), s(&[1]));
        assert_eq!(s(&[0, 1]).seq_max(&s(&[1, 2])), s(&[0, 1, 2]));
        let x = s(&[-3, 0, 0, 7]);
        assert_eq!(x.seq_min(&x), x);
        assert_eq!(s(&[0, 0]).seq_min(&s(&[0])), s(&[0]));
        assert_eq!(s(&[0, 0]).seq_max(&s(&[0])), s(&[0, 0]));
    }

    #[test]
    fn multiplicity_and_runs() {
        let x = s(&[-1, -1, -1, 0, 2]);
        assert_eq!(x.multiplicity(-1), 3);
        assert_eq!(x.multiplicity(1), 0);
        assert_eq!(x.runs(), vec![(-1, 3), (0, 1), (2, 1)]);
        assert_eq!(x.to_caret(), "-1^3,0,2");
        assert_eq!(x.to_string(), "(-1^3,0,2)");
    }

    #[test]
    fn caret_parsing() {
        assert_eq!("1^5,4".parse::<IntSeq>().unwrap().as_slice(), &[1, 1, 1, 1, 1, 4]);
        assert_eq!("-1^5".parse::<IntSeq>().unwrap(), IntSeq::repeat(-1, 5));
        assert_eq!("()".parse::<IntSeq>().unwrap(), IntSeq::empty());
        assert_eq!(" 3, 1 ".parse::<IntSeq>().unwrap().as_slice(), &[1, 3]);
        assert!("1,x".parse::<IntSeq>().is_err());
        assert!("1^-2".parse::<IntSeq>().is_err());
    }

    #[test]
    fn json_is_a_plain_array() {
        let x = s(&[2, -1]);
        assert_eq!(serde_json::to_string(&x).unwrap(), "[-1,2]");
        let y: IntSeq = serde_json::from_str("[3,1,2]").unwrap();
        assert_eq!(y.as_slice(), &[1, 2, 3]);
    }

    fn arb_seq() -> impl Strategy<Value = IntSeq> {
        proptest::collection::vec(-4i64..5, 0..8).prop_map(IntSeq::new)
    }

    proptest! {
        #[test]
        fn sum_is_associative_and_commutative(x in arb_seq(), y in arb_seq(), z in arb_seq()) {
            prop_assert_eq!(x.sum(&y), y.sum(&x));
            prop_assert_eq!(x.sum(&y).sum(&z), x.sum(&y.sum(&z)));
            for t in -4..5 {
                prop_assert_eq!(x.sum(&y).multiplicity(t), x.multiplicity(t) + y.multiplicity(t));
            }
        }

        #[test]
        fn diff_undoes_sum(x in arb_seq(), y in arb_seq()) {
            prop_assert_eq!(x.sum(&y).diff(&y).unwrap(), x);
        }

        #[test]
        fn min_max_absorb(x in arb_seq(), y in arb_seq()) {
            prop_assert_eq!(x.seq_max(&x.seq_min(&y)), x.clone());
            prop_assert_eq!(x.seq_min(&x.seq_max(&y)), x.clone());
            for t in -4..5 {
                prop_assert_eq!(x.seq_min(&y).multiplicity(t), x.multiplicity(t).min(y.multiplicity(t)));
                prop_assert_eq!(x.seq_max(&y).multiplicity(t), x.multiplicity(t).max(y.multiplicity(t)));
            }
        }
    }
}
