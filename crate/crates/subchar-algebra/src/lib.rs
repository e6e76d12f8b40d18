//! ℓ-deformed subcharacter algebras of small finite groups.
//!
//! The basis consists of pairs (U, φ) with U a subgroup of a direct product
//! F×G and φ a π-constrained character of U. Two basis elements compose
//! through the star product of their subgroups when their characters are
//! related; the product is then a single basis element scaled by ℓ of the
//! kernel intersection, and zero otherwise. Everything downstream — orbit
//! sums, trace forms, the explicit module constructions — reduces to this
//! one multiplication rule.

pub mod algebra;
pub mod deformation;
pub mod orbits;
pub mod subcharacter;

pub use algebra::{AlgebraElement, BasisEntry, DeformedAlgebra};
pub use deformation::DeformationMap;
pub use orbits::{
    biset_composition_oracle, composition_oracle_elementwise, conjugation_sum,
    orbit_closure_check, orbit_sums, OrbitSums,
};
pub use subcharacter::{multiply_subcharacters, related, star_characters, Subcharacter};

/// Star product of subgroups, re-exported from the group layer: the
/// composition-of-relations subgroup {u₁×v₂ | ∃g: u₁×g ∈ U, g×v₂ ∈ V}.
pub use subchar_groups::star as star_subgroups;

use subchar_groups::GroupError;
use subchar_scalars::ScalarError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("subcharacters are not related")]
    NotRelated,
    #[error("no deformation value assigned to prime {0}")]
    UnassignedPrime(u32),
    #[error("deformation values must be nonzero")]
    ZeroDeformation,
    #[error("invalid deformation spec: {0}")]
    InvalidDeformationSpec(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
