//! Generalized Yang–Baxter operators, the braid group representations they
//! induce, Hecke/Markov trace checks, and Perron–Frobenius integrality tests
//! on fusion data.
//!
//! Start from [`GybOperator`] for `(k, m)` operators, [`QuasiBraidedSpace`]
//! for braidings with nontrivial associators, and [`FusionData`] for the
//! fusion-ring side.

pub mod braid;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod fusion;
pub mod gybe;
pub mod hecke;
pub mod linalg;
pub mod quasi;
pub mod quaternion;

pub use braid::{random_word, relator_instances, BraidWord, Relator, RelatorKind};
pub use error::{Error, Result};
pub use fusion::{
    hom_dims, inclusion_matrix, multiplicity_search, obstruction_test, period_and_stabilization, FusionData,
    MultiplicityWindow, ObstructionReport, SearchStatus,
};
pub use gybe::{
    check_braid_relations, check_far_commutativity, check_gybe, classify_spectrum, image_closure, projective_order,
    represent, ClosureReport, GybDescriptor, GybOperator, SpectrumClass,
};
pub use hecke::{fit_quadratic, markov_check, tl_quotient_dims, EtaFormula, HeckeFit, TraceReport};
pub use linalg::{CMatrix, Complex, IntMatrix, Tolerance};
pub use quasi::{quasi_represent, QuasiBraidedSpace, QuasiDescriptor};
pub use quaternion::{build_r, emit_matrix, rep2, Quat, QuatTensor3};
