//! The finite graded lattice of Betti pairs with a fixed Hilbert function and
//! bounded regularity.
//!
//! Every such pair is `(α, β) + c` for the minimal pair `(α, β)` and a
//! sub-multiset `c` of a single largest `cmax`, so nodes are stored as their
//! difference sequences `c`. Meet and join are multiset min and max, and the
//! grade of a node is `|c|`. The closures of the corresponding strata are
//! ordered the opposite way: the closure of the stratum of `c` contains
//! exactly the strata of the nodes above `c`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::betti::BettiPair;
use crate::enumerate::max_difference;
use crate::error::{Error, Result};
use crate::hilbert::HilbertFn;
use crate::seq::IntSeq;

#[derive(Clone, Debug)]
pub struct BettiLattice {
    h: HilbertFn,
    d: i64,
    base: BettiPair,
    cmax: IntSeq,
    nodes: Vec<IntSeq>,
}

/// A cover relation `from ⋖ to`, where `to = from + add`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub add: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

impl BettiLattice {
    pub fn build(h: &HilbertFn, d: i64) -> Result<Self> {
        let cmax = max_difference(h, d)?;
        let mut nodes = vec![IntSeq::empty()];
        for (t, k) in cmax.runs() {
            let mut next = Vec::with_capacity(nodes.len() * (k + 1));
            for c in &nodes {
                for j in 0..=k {
                    next.push(c.sum(&IntSeq::repeat(t, j)));
                }
            }
            nodes = next;
        }
        nodes.sort();
        Ok(BettiLattice {
            h: h.clone(),
            d,
            base: h.minimal_betti(),
            cmax,
            nodes,
        })
    }

    pub fn hilbert(&self) -> &HilbertFn {
        &self.h
    }

    pub fn max_regularity(&self) -> i64 {
        self.d
    }

    /// The minimal element `(α, β)`.
    pub fn base(&self) -> &BettiPair {
        &self.base
    }

    pub fn cmax(&self) -> &IntSeq {
        &self.cmax
    }

    /// Nodes in lexicographic order of their difference sequences.
    pub fn nodes(&self) -> &[IntSeq] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, c: &IntSeq) -> Option<usize> {
        self.nodes.binary_search(c).ok()
    }

    pub fn contains(&self, c: &IntSeq) -> bool {
        c.is_submultiset_of(&self.cmax)
    }

    fn check(&self, c: &IntSeq) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::NotANode(c.to_string()))
        }
    }

    pub fn pair(&self, c: &IntSeq) -> BettiPair {
        self.base.add(c)
    }

    pub fn grade(&self, c: &IntSeq) -> usize {
        c.len()
    }

    /// Number of nodes in each grade, from grade 0 up.
    pub fn rank_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.cmax.len() + 1];
        for c in &self.nodes {
            sizes[c.len()] += 1;
        }
        sizes
    }

    pub fn meet(&self, x: &IntSeq, y: &IntSeq) -> Result<IntSeq> {
        self.check(x)?;
        self.check(y)?;
        Ok(x.seq_min(y))
    }

    pub fn join(&self, x: &IntSeq, y: &IntSeq) -> Result<IntSeq> {
        self.check(x)?;
        self.check(y)?;
        Ok(x.seq_max(y))
    }

    /// All nodes `y` with `x ⪯ y`.
    pub fn up_set(&self, x: &IntSeq) -> Vec<IntSeq> {
        self.nodes.iter().filter(|y| x.is_submultiset_of(y)).cloned().collect()
    }

    /// Cover relations `c -> c + t`, sorted by source then target index.
    pub fn hasse(&self) -> Vec<Edge> {
        let values: Vec<i64> = self.cmax.runs().into_iter().map(|(t, _)| t).collect();
        let mut edges = Vec::new();
        for (from, c) in self.nodes.iter().enumerate() {
            for &t in &values {
                if c.multiplicity(t) < self.cmax.multiplicity(t) {
                    let up = c.sum(&IntSeq::from([t]));
                    let to = self.index_of(&up).expect("covers stay inside the lattice");
                    edges.push(Edge { from, to, add: t });
                }
            }
        }
        edges.sort();
        edges
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => self.to_dot(),
            ExportFormat::Json => serde_json::to_string_pretty(&self.to_json()).expect("lattice JSON serializes"),
        }
    }

    pub fn export_as(&self, format: &str) -> Result<String> {
        Ok(self.export(format.parse()?))
    }

    pub fn to_json(&self) -> LatticeJson {
        let index: Vec<usize> = (0..self.nodes.len()).collect();
        let nodes = self
            .nodes
            .iter()
            .zip(index)
            .map(|(c, id)| {
                let p = self.pair(c);
                NodeJson {
                    id,
                    c: c.clone(),
                    a: p.a().clone(),
                    b: p.b().clone(),
                    grade: c.len(),
                    regularity: p.regularity(),
                    closure_contains: self.up_set(c).iter().map(|y| self.index_of(y).unwrap()).collect(),
                }
            })
            .collect();
        LatticeJson {
            hilbert: self.h.clone(),
            max_reg: self.d,
            base: self.base.clone(),
            cmax: self.cmax.clone(),
            rank_sizes: self.rank_sizes(),
            nodes,
            edges: self.hasse(),
        }
    }

    fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph betti_lattice {\n");
        out.push_str("  // each edge adds one value t to c, from a generalization to a specialization;\n");
        out.push_str("  // stratum closures are ordered the opposite way\n");
        out.push_str("  rankdir=BT;\n");
        out.push_str("  node [shape=box, fontname=\"monospace\"];\n");
        for (id, c) in self.nodes.iter().enumerate() {
            let p = self.pair(c);
            let closure: Vec<String> = self
                .up_set(c)
                .iter()
                .map(|y| format!("n{}", self.index_of(y).unwrap()))
                .collect();
            let _ = writeln!(
                out,
                "  n{id} [label=\"c={}\\na={}\\nb={}\\nq={} reg={}\", closure_contains=\"{}\"];",
                c,
                p.a(),
                p.b(),
                c.len(),
                p.regularity(),
                closure.join(" ")
            );
        }
        for e in self.hasse() {
            let _ = writeln!(out, "  n{} -> n{} [label=\"+{}\"];", e.from, e.to, e.add);
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub c: IntSeq,
    pub a: IntSeq,
    pub b: IntSeq,
    pub grade: usize,
    pub regularity: i64,
    /// Nodes whose strata lie in the closure of this node's stratum.
    pub closure_contains: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub hilbert: HilbertFn,
    pub max_reg: i64,
    pub base: BettiPair,
    pub cmax: IntSeq,
    pub rank_sizes: Vec<usize>,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<Edge>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> BettiLattice {
        let h = HilbertFn::new(3, -1, vec![5, 4]).unwrap();
        BettiLattice::build(&h, 2).unwrap()
    }

    fn c(v: &[i64]) -> IntSeq {
        IntSeq::new(v.to_vec())
    }

    #[test]
    fn boolean_cube_example() {
        let l = example();
        assert_eq!(l.len(), 8);
        assert_eq!(l.rank_sizes(), vec![1, 3, 3, 1]);
        assert_eq!(l.cmax(), &c(&[0, 1, 2]));
        assert_eq!(l.base(), &BettiPair::new(3, vec![0], vec![-1; 5]).unwrap());
        assert_eq!(l.hasse().len(), 12);
        for node in l.nodes() {
            let p = l.pair(node);
            assert!(p.is_admissible());
            assert!(p.regularity() <= 2);
            assert_eq!(p.grading_q(), node.len());
        }
    }

    #[test]
    fn meet_join_examples() {
        let l = example();
        assert_eq!(l.meet(&c(&[0, 1]), &c(&[1, 2])).unwrap(), c(&[1]));
        assert_eq!(l.join(&c(&[0, 1]), &c(&[1, 2])).unwrap(), c(&[0, 1, 2]));
        let x = c(&[0, 2]);
        assert_eq!(l.meet(&x, &IntSeq::empty()).unwrap(), IntSeq::empty());
        assert_eq!(l.join(&x, &x).unwrap(), x);
        assert_eq!(l.meet(&c(&[3]), &x).unwrap_err().code(), "NotANode");
    }

    #[test]
    fn singleton_and_chain() {
        let h = HilbertFn::new(3, -1, vec![5, 4]).unwrap();
        let single = BettiLattice::build(&h, -1).unwrap();
        assert_eq!(single.len(), 1);
        assert!(single.hasse().is_empty());
        let dot = single.export(ExportFormat::Dot);
        assert_eq!(dot.matches(" [label=").count(), 1);
        assert!(!dot.contains("->"));

        // Adding 1^k to ((), (0^5)) stays admissible while k + n <= 5.
        let split = HilbertFn::new(1, 0, vec![5]).unwrap();
        let chain = BettiLattice::build(&split, 1).unwrap();
        assert_eq!(chain.cmax(), &c(&[1, 1, 1, 1]));
        let h2 = HilbertFn::new(3, 0, vec![5]).unwrap();
        let chain2 = BettiLattice::build(&h2, 1).unwrap();
        assert_eq!(chain2.cmax(), &c(&[1, 1]));
        let h3 = HilbertFn::new(2, 0, vec![5]).unwrap();
        let chain3 = BettiLattice::build(&h3, 1).unwrap();
        assert_eq!(chain3.cmax(), &c(&[1, 1, 1]));
        assert_eq!(chain3.len(), 4);
        assert_eq!(chain3.hasse().len(), 3);
    }

    #[test]
    fn split_example_matches_search() {
        let h = HilbertFn::new(3, 0, vec![4]).unwrap();
        let l = BettiLattice::build(&h, 0).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(BettiLattice::build(&h, -1).unwrap_err().code(), "RegularityTooSmall");
    }

    #[test]
    fn dot_output() {
        let dot = example().export(ExportFormat::Dot);
        assert_eq!(dot.matches(" [label=\"c=").count(), 8);
        assert_eq!(dot.matches(" -> ").count(), 12);
        assert!(dot.starts_with("digraph betti_lattice {"));
        assert_eq!(dot, example().export(ExportFormat::Dot));
    }

    #[test]
    fn json_round_trip() {
        let l = example();
        let text = l.export(ExportFormat::Json);
        let parsed: LatticeJson = serde_json::from_str(&text).unwrap();
        let nodes: Vec<IntSeq> = parsed.nodes.iter().map(|n| n.c.clone()).collect();
        assert_eq!(nodes, l.nodes());
        assert_eq!(parsed, l.to_json());
        assert_eq!(parsed.edges.len(), 12);
    }

    #[test]
    fn unknown_format() {
        assert_eq!(example().export_as("svg").unwrap_err().code(), "UnknownFormat");
        assert!(example().export_as("DOT").is_ok());
    }

    #[test]
    fn duality_on_example() {
        let l = example();
        for x in l.nodes() {
            for y in l.nodes() {
                let j = l.join(x, y).unwrap();
                let mut both: Vec<IntSeq> = l.up_set(x);
                let uy = l.up_set(y);
                both.retain(|z| uy.contains(z));
                assert_eq!(l.up_set(&j), both);
            }
        }
    }
}
