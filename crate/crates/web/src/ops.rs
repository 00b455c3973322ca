//! The demo operations, returning `Err` with a message for the page to show.

use pn_bundles::seq::parse_caret_list;
use pn_bundles::{
    explicit_matrix, hilbert_of_betti, verify_bundle, BettiLattice, BettiPair, BundleSeq, HilbertFn, IntSeq,
};
use serde::Serialize;

/// Inputs beyond these keep a browser tab busy for too long.
pub const MAX_N: u32 = 6;
pub const MAX_RANK: i64 = 12;
pub const MAX_DEGREE: i64 = 60;
pub const MAX_LATTICE_NODES: usize = 300;
pub const MAX_MATRIX_ENTRIES: usize = 120;

type Result<T> = std::result::Result<T, String>;

fn check_n(n: u32) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(format!("n must be between 1 and {MAX_N}"))
    }
}

fn parse(what: &str, s: &str) -> Result<Vec<i64>> {
    parse_caret_list(s).map_err(|e| format!("{what}: {e}"))
}

#[derive(Serialize)]
struct SequenceRow {
    seq: String,
    entries: Vec<i64>,
    anchor: i64,
    minimal_betti: BettiPair,
    pair: String,
    regularity: i64,
}

pub fn bundle_sequences(n: u32, rank: i64, degree: i64) -> Result<String> {
    check_n(n)?;
    if !(1..=MAX_RANK).contains(&rank) {
        return Err(format!("rank must be between 1 and {MAX_RANK}"));
    }
    if !(0..=MAX_DEGREE).contains(&degree) {
        return Err(format!("degree must be between 0 and {MAX_DEGREE}"));
    }
    let rows: Vec<SequenceRow> = pn_bundles::bundle_sequences(n, rank, degree)
        .into_iter()
        .map(|s| {
            let anchor = HilbertFn::normalized_anchor(&s);
            let h = HilbertFn::from_seq(s.clone(), anchor);
            let base = h.minimal_betti();
            SequenceRow {
                seq: s.to_caret(),
                entries: s.entries().to_vec(),
                anchor,
                pair: base.to_string(),
                regularity: base.regularity(),
                minimal_betti: base,
            }
        })
        .collect();
    Ok(serde_json::to_string(&rows).expect("rows serialize"))
}

pub fn build_lattice(n: u32, seq: &str, anchor: &str, max_reg: i64) -> Result<BettiLattice> {
    check_n(n)?;
    let entries = parse("sequence", seq)?;
    let s = BundleSeq::new(n, entries).map_err(|e| e.to_string())?;
    let s0 = match anchor.trim() {
        "" => HilbertFn::normalized_anchor(&s),
        t => t.parse().map_err(|_| format!("anchor: not an integer: {t:?}"))?,
    };
    let h = HilbertFn::from_seq(s, s0);
    let base_reg = h.minimal_betti().regularity();
    if max_reg > base_reg + 8 {
        return Err(format!(
            "regularity bound {max_reg} is far above the minimal {base_reg}; try a smaller one"
        ));
    }
    let l = BettiLattice::build(&h, max_reg).map_err(|e| e.to_string())?;
    if l.len() > MAX_LATTICE_NODES {
        return Err(format!(
            "{} pairs is too many to draw (limit {MAX_LATTICE_NODES})",
            l.len()
        ));
    }
    Ok(l)
}

pub fn lattice_svg(n: u32, seq: &str, anchor: &str, max_reg: i64) -> Result<String> {
    build_lattice(n, seq, anchor, max_reg).map(|l| crate::svg::hasse(&l))
}

#[derive(Serialize)]
struct Presentation {
    pair: String,
    admissible: bool,
    is_bundle: bool,
    c1: i64,
    regularity: i64,
    hilbert: Option<String>,
    /// One twist `-b_i` per row and `-a_j` per column.
    row_twists: Vec<i64>,
    col_twists: Vec<i64>,
    entries: Vec<Vec<String>>,
}

pub fn presentation(n: u32, a: &str, b: &str, p: u64) -> Result<String> {
    check_n(n)?;
    let pair =
        BettiPair::new(n, IntSeq::new(parse("a", a)?), IntSeq::new(parse("b", b)?)).map_err(|e| e.to_string())?;
    if pair.l() * pair.b().len() > MAX_MATRIX_ENTRIES {
        return Err(format!(
            "matrix too large to check here (limit {MAX_MATRIX_ENTRIES} entries)"
        ));
    }
    let admissible = pair.is_admissible();
    let (is_bundle, entries) = if admissible {
        let m = explicit_matrix(&pair, p).map_err(|e| e.to_string())?;
        (verify_bundle(&m), m.to_json().entries)
    } else {
        (false, Vec::new())
    };
    let out = Presentation {
        pair: pair.to_string(),
        admissible,
        is_bundle,
        c1: pair.c1(),
        regularity: pair.regularity(),
        hilbert: hilbert_of_betti(&pair).ok().map(|h| h.to_string()),
        row_twists: pair.b().iter().map(|x| -x).collect(),
        col_twists: pair.a().iter().map(|x| -x).collect(),
        entries,
    };
    Ok(serde_json::to_string(&out).expect("presentation serializes"))
}
