//! Trace-form audits and constructive block decompositions.
//!
//! Semisimplicity is certified by a full-rank Gram matrix (rank is checked
//! at rational specializations first, since specializing can only lower it;
//! a deficient symbolic rank falls back to exact fraction-free elimination).
//! Non-semisimplicity always comes with an exact kernel vector. Block
//! decompositions are certified by constructing the simple modules and
//! checking that their squared dimensions saturate the algebra.

use std::collections::BTreeMap;

use num::BigInt;
use subchar_algebra::{AlgebraElement, DeformedAlgebra};
use subchar_scalars::{Matrix, Rational, Scalar};

use crate::action::{left_axis_module, ActionModule};
use crate::diagonal::{character_projector, diagonal_indices};
use crate::vectors::{reduced_eigenvector, require_prime_cyclic};
use crate::ModuleError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Semisimple,
    NotSemisimple,
}

#[derive(Debug)]
pub struct WedderburnAudit {
    pub algebra_dim: usize,
    pub gram_rank: usize,
    pub radical_dim: usize,
    pub verdict: Verdict,
    /// A nonzero vector of the Gram kernel when the form is degenerate.
    pub kernel_witness: Option<AlgebraElement>,
    /// Filled by the caller when computed (directly or from certified blocks).
    pub center_dim: Option<usize>,
    pub block_dims: Option<Vec<usize>>,
}

/// Exact rank and radical of the regular trace form.
pub fn trace_form_verdict(alg: &DeformedAlgebra) -> Result<WedderburnAudit, ModuleError> {
    let n = alg.len();
    let gram = alg.gram_matrix();
    let rank = gram_rank(alg, &gram)?;
    let kernel_witness = if rank < n {
        let kernel = gram.kernel_basis();
        let v = alg.from_coords(&kernel[0]);
        debug_assert!(gram.mul_vec(&alg.to_coords(&v)).iter().all(Scalar::is_zero));
        Some(v)
    } else {
        None
    };
    Ok(WedderburnAudit {
        algebra_dim: n,
        gram_rank: rank,
        radical_dim: n - rank,
        verdict: if rank == n {
            Verdict::Semisimple
        } else {
            Verdict::NotSemisimple
        },
        kernel_witness,
        center_dim: None,
        block_dims: None,
    })
}

fn gram_rank(alg: &DeformedAlgebra, gram: &Matrix) -> Result<usize, ModuleError> {
    let n = alg.len();
    if alg.deformation().uses_indeterminates() {
        // Full rank at any specialization already certifies full symbolic rank.
        for offset in [1i64, 7, 31] {
            let assign: BTreeMap<u32, Rational> = alg
                .ctx()
                .primes()
                .iter()
                .map(|&p| (p, Rational::from_integer(BigInt::from(i64::from(p) + offset))))
                .collect();
            if gram.specialize(&assign)?.rank() == n {
                return Ok(n);
            }
        }
    }
    Ok(gram.rank())
}

/// Whether v pairs to zero with the whole algebra under the trace form.
pub fn gram_annihilates(alg: &DeformedAlgebra, v: &AlgebraElement) -> bool {
    let traces = alg.regular_traces();
    (0..alg.len())
        .all(|i| alg.trace_of(&alg.multiply(&alg.basis_element(i), v), &traces).is_zero())
}

/// Dimension of the center, by intersecting the kernels of left-minus-right
/// multiplication by every basis element.
pub fn center_dimension(alg: &DeformedAlgebra) -> Result<usize, ModuleError> {
    let n = alg.len();
    let minus_one = Scalar::from_integer(alg.ctx(), -1);
    let mut b = Matrix::identity(alg.ctx(), n);
    for k in 0..n {
        if b.cols() == 0 {
            break;
        }
        let x = alg.basis_element(k);
        let d = alg
            .left_multiplication_matrix(&x)
            .add(&alg.right_multiplication_matrix(&x).scale(&minus_one));
        let a = d.matmul(&b);
        if a.is_zero() {
            continue;
        }
        let kernel = a.kernel_basis();
        let refine = Matrix::from_fn(alg.ctx(), b.cols(), kernel.len(), |i, j| {
            kernel[j][i].clone()
        });
        b = b.matmul(&refine);
    }
    Ok(b.cols())
}

/// The scalar c with b_k·v = c·v, when one exists.
pub(crate) fn scalar_action(alg: &DeformedAlgebra, k: usize, v: &AlgebraElement) -> Option<Scalar> {
    let w = alg.multiply(&alg.basis_element(k), v);
    if w.is_zero() {
        return Some(Scalar::zero(alg.ctx()));
    }
    let (pivot, lead) = v.terms().next()?;
    let c = w.coeff(pivot)?.div_checked(lead).ok()?;
    (w == v.scale(&c)).then_some(c)
}

/// Whether the span of v is invariant under every basis element.
pub fn invariant_line_check(alg: &DeformedAlgebra, v: &AlgebraElement) -> bool {
    !v.is_zero() && (0..alg.len()).all(|k| scalar_action(alg, k, v).is_some())
}

/// The one-dimensional fixed space: killed by everything whose thorax is
/// trivial, fixed by the twisted diagonals. Found by kernel refinement, so
/// it works whether or not q lies in π.
fn trivial_type_line(alg: &DeformedAlgebra) -> Result<AlgebraElement, ModuleError> {
    let n = alg.len();
    let diag = diagonal_indices(alg);
    let minus_one = Scalar::from_integer(alg.ctx(), -1);
    let mut b = Matrix::identity(alg.ctx(), n);
    for k in 0..n {
        if b.cols() == 0 {
            break;
        }
        let mut d = alg.left_multiplication_matrix(&alg.basis_element(k));
        if diag.contains(&k) {
            d = d.add(&Matrix::identity(alg.ctx(), n).scale(&minus_one));
        }
        let a = d.matmul(&b);
        if a.is_zero() {
            continue;
        }
        let kernel = a.kernel_basis();
        let refine = Matrix::from_fn(alg.ctx(), b.cols(), kernel.len(), |i, j| {
            kernel[j][i].clone()
        });
        b = b.matmul(&refine);
    }
    if b.cols() != 1 {
        return Err(ModuleError::HypothesisViolated(format!(
            "the fixed space has dimension {}, not 1",
            b.cols()
        )));
    }
    let column: Vec<Scalar> = (0..n).map(|i| b.at(i, 0).clone()).collect();
    Ok(alg.from_coords(&column))
}

#[derive(Debug)]
pub struct BlockCertification {
    /// Dimensions of the constructed simple modules, descending.
    pub block_dims: Vec<usize>,
    /// Σ d² equals the algebra dimension.
    pub saturated: bool,
    pub axis_simple: bool,
    pub reduced_simple: Option<bool>,
    pub lines_invariant: bool,
    /// The one-dimensional modules have pairwise distinct diagonal actions.
    pub lines_distinct: bool,
}

/// Constructs one simple module per block of a prime-cyclic algebra away
/// from the degenerate deformation: the axis module of dimension ρ+1, the
/// reduced module of dimension ρ−1 when q ∈ π, and q−1 invariant lines.
pub fn prime_cyclic_blocks(alg: &DeformedAlgebra) -> Result<BlockCertification, ModuleError> {
    let q = require_prime_cyclic(alg)?;
    let rho = alg.pi().pi_part(u64::from(q)) as u32;
    let lambda = alg.deformation().eval_prime(q, alg.ctx())?;
    if lambda == Scalar::from_integer(alg.ctx(), i64::from(rho)) {
        return Err(ModuleError::HypothesisViolated(format!(
            "ℓ({q}) = ρ = {rho} is the non-semisimple deformation"
        )));
    }

    let axis = left_axis_module(alg)?;
    assert_eq!(axis.dim(), rho as usize + 1);
    let axis_simple = axis.absolutely_simple(alg);
    let mut dims = vec![axis.dim()];

    let reduced_simple = if rho > 1 {
        let basis = (1..q)
            .map(|i| Ok(reduced_eigenvector(alg, i, 1)?.into_value()))
            .collect::<Result<Vec<_>, ModuleError>>()?;
        let reduced = ActionModule::new(alg, basis)?;
        dims.push(reduced.dim());
        Some(reduced.absolutely_simple(alg))
    } else {
        None
    };

    let mut lines = vec![trivial_type_line(alg)?];
    for c in 1..q - 1 {
        lines.push(character_projector(alg, c)?.into_value());
    }
    let lines_invariant = lines.iter().all(|v| invariant_line_check(alg, v));
    let diag = diagonal_indices(alg);
    let signatures: Vec<Option<Vec<Scalar>>> = lines
        .iter()
        .map(|v| diag.iter().map(|&k| scalar_action(alg, k, v)).collect())
        .collect();
    let lines_distinct = signatures.iter().all(Option::is_some)
        && (0..lines.len()).all(|a| (a + 1..lines.len()).all(|b| signatures[a] != signatures[b]));
    dims.extend(std::iter::repeat(1).take(lines.len()));

    dims.sort_unstable_by(|a, b| b.cmp(a));
    let saturated = dims.iter().map(|d| d * d).sum::<usize>() == alg.len();
    Ok(BlockCertification {
        block_dims: dims,
        saturated,
        axis_simple,
        reduced_simple,
        lines_invariant,
        lines_distinct,
    })
}
