//! Freeness of multiplicities on braid arrangements.
//!
//! A multiplicity assigns a positive integer to every edge of the complete
//! graph `K_{ℓ+1}`. This crate decides freeness combinatorially: through
//! deviations over vertex subsets, through decompositions
//! `m_ij = n_i + n_j + ε_ij` whose sign graph admits a signed-elimination
//! ordering, and through removal of free vertices. Every verdict carries a
//! certificate that [`verify_certificate`] re-checks independently.

pub mod ann;
pub mod arrangement;
pub mod catalog;
pub mod error;
pub mod freeness;
pub mod signed;
pub mod subsets;
pub mod verify;

pub use ann::{ann_decompose, ann_decompose_oracle, four_cycle_bound_holds, verify_decomposition, AnnDecomposition, NotAnn, NotAnnReason};
pub use arrangement::{families, BalanceViolation, MixedProductReport, MultiBraid, Rational, VertexSubset};
pub use error::{Error, Result};
pub use freeness::{
    criterion2, criterion3, decide, decide_balanced, eliminate_free_vertex, find_free_vertices, is_cor64_constructible,
    verify_certificate, Certificate, FreenessStatus, FreenessVerdict, Witness,
};
pub use signed::{EliminationCertificate, Obstruction, Sign, SignedGraph};
pub use verify::{SweepConfig, SweepMode, SweepReport};
