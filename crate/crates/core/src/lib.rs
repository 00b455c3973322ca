//! Betti pairs, Hilbert functions and minimal presentations of vector bundles
//! on projective space `P^n` whose minimal free resolution has length one.
//!
//! A bundle `E` with a resolution `0 → ⊕ O(-a_i) → ⊕ O(-b_j) → E → 0` is
//! recorded by the pair of degree multisets `(a, b)`. This crate enumerates the
//! admissible pairs, organizes the pairs sharing a Hilbert function into a
//! finite lattice, and works with explicit presentation matrices over `F_p`.

pub mod betti;
pub mod bundles;
pub mod enumerate;
pub mod error;
pub mod hilbert;
pub mod lattice;
pub mod polyalg;
pub mod seq;

pub use betti::{enumerate_admissible, BettiPair};
pub use bundles::{
    deform_family, explicit_matrix, minimize_presentation, random_matrix, slope_and_rank_n_semistability, split_bound,
    verify_bundle, DeformFamily, MatrixJson, PresMatrix, SemistabilityRule,
};
pub use enumerate::{bundle_sequences, bundle_sequences_by_reg, max_difference};
pub use error::{Error, Result};
pub use hilbert::{hilbert_of_betti, BundleSeq, DeltaTable, HilbertFn};
pub use lattice::{BettiLattice, Edge, ExportFormat};
pub use seq::IntSeq;
