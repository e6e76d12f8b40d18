//! Exact scalar arithmetic for the workbench.
//!
//! The coefficient field is the tower K = Q(ζ_N)(t_p, ...): a cyclotomic base
//! field extended by one indeterminate per declared prime, so statements about
//! "algebraically independent" deformation values can be settled by symbolic
//! computation. The crate provides the field elements ([`Scalar`]), the
//! cyclotomic base ([`Cyclotomic`]), and exact linear algebra ([`Matrix`]).

pub mod cyclotomic;
pub mod matrix;
pub mod poly;
pub mod scalar;

pub use cyclotomic::Cyclotomic;
pub use matrix::Matrix;
pub use poly::{MPoly, Monomial};
pub use scalar::{FieldCtx, Scalar};

use thiserror::Error;

/// Arbitrary-precision rational number, kept in lowest terms with a positive
/// denominator by construction.
pub type Rational = num::BigRational;
pub type Integer = num::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {conductor} is not a multiple of root order {order}")]
    ConductorTooSmall { order: u32, conductor: u32 },
    #[error("denominator vanishes at the given assignment")]
    PoleAtAssignment,
    #[error("no value assigned to indeterminate t_{prime}")]
    UnassignedIndeterminate { prime: u32 },
    #[error("t_{prime} is not an indeterminate of this field context")]
    UnknownIndeterminate { prime: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system has no solution")]
    NoSolution,
}

/// Euler's totient, by trial-division factorization.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Prime factors of `n`, ascending, without multiplicity.
pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicity of the prime `p` in `n`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 && n > 0 {
        n /= p;
        v += 1;
    }
    v
}
