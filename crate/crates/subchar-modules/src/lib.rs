//! Module theory over the deformed subcharacter algebras.
//!
//! Everything here certifies structure by explicit computation: modules carry
//! their action matrices, simplicity is witnessed by the dimension of the
//! operator span, non-semisimplicity by an exact kernel vector of the trace
//! form, and block decompositions by constructed simple modules whose squared
//! dimensions saturate the algebra.

mod action;
mod diagonal;
mod evaluation;
mod formula;
mod nilpotent;
mod span;
mod vectors;
mod wedderburn;

pub use action::{
    axis_pairing_matrix, is_module_isomorphism, left_axis_module, regular_module,
    thorax_submodule, twisted_axis_module, ActionModule, AxisPairing,
};
pub use diagonal::{
    diagonal_block_audit, diagonal_indices, holomorph_character_table, DiagonalBlockReport,
    HolomorphCharacterTable,
};
pub use evaluation::{eigenvector_audit, EigenvectorReport};
pub use formula::{action_case_tuples, check_action_case, ActionCase, ActionCaseReport};
pub use nilpotent::{nilpotent_ideal_audit, radical_generators, NilpotentIdealReport};
pub use span::Span;
pub use vectors::{
    character_slice, character_sum, diagonal_eigenvector, extension_sum, fixed_line_vector,
    reduced_eigenvector, twisted_axis_vector, SpecialVector,
};
pub use wedderburn::{
    center_dimension, gram_annihilates, invariant_line_check, prime_cyclic_blocks,
    trace_form_verdict, BlockCertification, Verdict, WedderburnAudit,
};

use subchar_algebra::AlgebraError;
use subchar_groups::GroupError;
use subchar_scalars::ScalarError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("ω must be a root of unity of order dividing {expected}")]
    NotARootOfUnity { expected: usize },
    #[error("the group has non-prime order {0}")]
    NotPrimeOrder(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("not a submodule: {0}")]
    NotASubmodule(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
