use std::collections::BTreeSet;

use pn_bundles::{
    bundle_sequences, enumerate_admissible, hilbert_of_betti, BettiLattice, BettiPair, ExportFormat, HilbertFn,
};
use proptest::prelude::*;

/// The lattice nodes are exactly the admissible pairs with the given Hilbert
/// function and regularity bound, found independently by enumeration.
#[test]
fn nodes_are_all_pairs_with_the_hilbert_function() {
    let cases = [
        (HilbertFn::new(3, -1, vec![5, 4]).unwrap(), 1),
        (HilbertFn::new(3, -1, vec![5, 4]).unwrap(), 2),
        (HilbertFn::new(2, 0, vec![1, 3, 2]).unwrap(), 2),
        (HilbertFn::new(2, -1, vec![6, 3]).unwrap(), 1),
        (HilbertFn::new(1, 0, vec![2, 1, 1, 3]).unwrap(), 3),
    ];
    for (h, d) in cases {
        let lattice = BettiLattice::build(&h, d).unwrap();
        let from_lattice: BTreeSet<BettiPair> = lattice.nodes().iter().map(|c| lattice.pair(c)).collect();
        let from_enumeration: BTreeSet<BettiPair> = enumerate_admissible(h.n(), h.rank() as usize, h.c1(), d)
            .into_iter()
            .filter(|p| hilbert_of_betti(p).unwrap() == h)
            .collect();
        assert_eq!(from_lattice, from_enumeration, "{h} d={d}");
        for p in &from_lattice {
            assert!(lattice.base().generalizes(p).is_some());
        }
    }
}

#[test]
fn every_enumerated_pair_sits_above_its_minimal_pair() {
    for p in enumerate_admissible(3, 4, 5, 1) {
        let h = hilbert_of_betti(&p).unwrap();
        let base = h.minimal_betti();
        let c = base.generalizes(&p).expect("minimal pair generalizes");
        assert_eq!(c.len(), p.grading_q());
    }
}

fn arb_lattice() -> impl Strategy<Value = BettiLattice> {
    (
        1u32..=3,
        1i64..=4,
        0i64..=6,
        -2i64..=2,
        0i64..=3,
        any::<prop::sample::Index>(),
    )
        .prop_filter_map("no bundle sequence", |(n, r, extra, s0, slack, pick)| {
            let seqs = bundle_sequences(n, r, r + extra);
            if seqs.is_empty() {
                return None;
            }
            let h = HilbertFn::from_seq(pick.get(&seqs).clone(), s0);
            let d = h.minimal_betti().regularity() + slack;
            BettiLattice::build(&h, d).ok()
        })
}

proptest! {
    #[test]
    fn lattice_axioms(l in arb_lattice(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let x = i.get(l.nodes()).clone();
        let y = j.get(l.nodes()).clone();
        let meet = l.meet(&x, &y).unwrap();
        let join = l.join(&x, &y).unwrap();
        prop_assert_eq!(&meet, &l.meet(&y, &x).unwrap());
        prop_assert_eq!(&join, &l.join(&y, &x).unwrap());
        prop_assert_eq!(&l.join(&x, &meet).unwrap(), &x);
        prop_assert_eq!(&l.meet(&x, &join).unwrap(), &x);
        prop_assert_eq!(&l.meet(&x, &x).unwrap(), &x);
        prop_assert_eq!(l.grade(&join) + l.grade(&meet), l.grade(&x) + l.grade(&y));
        prop_assert!(l.pair(&join).is_admissible());
        prop_assert!(l.pair(&join).regularity() <= l.max_regularity());
        prop_assert_eq!(
            l.pair(&join).regularity(),
            l.pair(&x).regularity().max(l.pair(&y).regularity())
        );
    }

    #[test]
    fn hasse_edges_are_covers(l in arb_lattice()) {
        let edges = l.hasse();
        let expected: usize = l.nodes().iter().map(|c| {
            l.cmax().runs().iter().filter(|&&(t, k)| c.multiplicity(t) < k).count()
        }).sum();
        prop_assert_eq!(edges.len(), expected);
        for e in &edges {
            let (from, to) = (&l.nodes()[e.from], &l.nodes()[e.to]);
            prop_assert_eq!(to.len(), from.len() + 1);
            prop_assert!(from.is_submultiset_of(to));
        }
        let dot = l.export(ExportFormat::Dot);
        prop_assert_eq!(dot.matches(" -> ").count(), edges.len());
    }
}
