//! The square-zero ideal of an abelian group's algebra at the identity
//! deformation, generated by alternating sums of extension sums over
//! prime-index subgroup steps.

use num::BigInt;
use subchar_algebra::DeformedAlgebra;
use subchar_groups::{character_group, subgroups, Subgroup};
use subchar_scalars::{Rational, Scalar};

use crate::span::Span;
use crate::vectors::extension_sum;
use crate::{ModuleError, SpecialVector};

fn require_abelian_identity_deformation(
    alg: &DeformedAlgebra,
) -> Result<Vec<Subgroup>, ModuleError> {
    if alg.groups().len() != 1 {
        return Err(ModuleError::HypothesisViolated(
            "a single-group algebra is required".into(),
        ));
    }
    let g = &alg.groups()[0];
    if !g.is_abelian() {
        return Err(ModuleError::HypothesisViolated(format!(
            "{} is not abelian",
            g.label()
        )));
    }
    for p in subchar_groups::prime_divisors(g.order() as u64) {
        let expected = if alg.pi().contains(p) { i64::from(p) } else { 1 };
        if alg.deformation().eval_prime(p, alg.ctx())?
            != Scalar::from_integer(alg.ctx(), expected)
        {
            return Err(ModuleError::HypothesisViolated(format!(
                "the deformation must send {p} to {expected}"
            )));
        }
    }
    subgroups(g, g.order()).map_err(ModuleError::from)
}

/// Prime-index steps M < N among the subgroups of G.
fn prime_steps(subs: &[Subgroup]) -> Vec<(Subgroup, Subgroup)> {
    let mut steps = Vec::new();
    for m in subs {
        for n in subs {
            if m.le(n) && m.order() < n.order() {
                let index = n.order() / m.order();
                if subchar_groups::is_prime(index as u32) {
                    steps.push((m.clone(), n.clone()));
                }
            }
        }
    }
    steps
}

fn pi_scale(alg: &DeformedAlgebra, m: &Subgroup, p: &Subgroup) -> Result<Scalar, ModuleError> {
    let size = alg.pi().pi_part(m.order() as u64) * alg.pi().pi_part(p.order() as u64);
    Ok(Scalar::from_rational(
        alg.ctx(),
        Rational::new(BigInt::from(1), BigInt::from(size)),
    ))
}

/// The alternating combinations
/// S^γ_{M×P}/(|M|_π|P|_π) − S^γ_{M×Q}/(|M|_π|Q|_π)
/// − S^γ_{N×P}/(|N|_π|P|_π) + S^γ_{N×Q}/(|N|_π|Q|_π)
/// over all prime-index steps M < N and P < Q and all γ on K ≤ M.
pub fn radical_generators(alg: &DeformedAlgebra) -> Result<Vec<SpecialVector>, ModuleError> {
    let subs = require_abelian_identity_deformation(alg)?;
    let steps = prime_steps(&subs);
    let mut out = Vec::new();
    for (m, n) in &steps {
        for k in subs.iter().filter(|k| k.le(m)) {
            for gamma in character_group(k, alg.pi()) {
                for (p, q) in &steps {
                    let mut value = extension_sum(alg, 0, 0, &gamma, m, p)
                        .into_value()
                        .scale(&pi_scale(alg, m, p)?);
                    value = &value
                        - &extension_sum(alg, 0, 0, &gamma, m, q)
                            .into_value()
                            .scale(&pi_scale(alg, m, q)?);
                    value = &value
                        - &extension_sum(alg, 0, 0, &gamma, n, p)
                            .into_value()
                            .scale(&pi_scale(alg, n, p)?);
                    value = &value
                        + &extension_sum(alg, 0, 0, &gamma, n, q)
                            .into_value()
                            .scale(&pi_scale(alg, n, q)?);
                    let label = format!(
                        "alpha(exps={:?} on {:?}; {:?}<{:?}, {:?}<{:?})",
                        gamma.exps(),
                        k.elements(),
                        m.elements(),
                        n.elements(),
                        p.elements(),
                        q.elements()
                    );
                    out.push(SpecialVector::new(label, value));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug)]
pub struct NilpotentIdealReport {
    pub generator_count: usize,
    pub all_nonzero: bool,
    pub span_dim: usize,
    /// The span is closed under left multiplication by every basis element.
    pub left_closed: bool,
    /// Every product of two span vectors vanishes.
    pub square_is_zero: bool,
    /// The regular trace form vanishes against the whole span.
    pub trace_degenerate: bool,
    pub generator_labels: Vec<String>,
}

pub fn nilpotent_ideal_audit(alg: &DeformedAlgebra) -> Result<NilpotentIdealReport, ModuleError> {
    let generators = radical_generators(alg)?;
    let generator_count = generators.len();
    let all_nonzero = generators.iter().all(|g| !g.value().is_zero());
    let generator_labels: Vec<String> =
        generators.iter().map(|g| g.label().to_string()).collect();

    let mut span = Span::default();
    for g in &generators {
        span.insert(g.value());
    }
    let span_dim = span.dim();
    let basis: Vec<_> = span.vectors().to_vec();

    let left_closed = (0..alg.len()).all(|k| {
        let b = alg.basis_element(k);
        basis.iter().all(|v| span.contains(&alg.multiply(&b, v)))
    });
    let square_is_zero = basis
        .iter()
        .all(|u| basis.iter().all(|v| alg.multiply(u, v).is_zero()));
    let traces = alg.regular_traces();
    let trace_degenerate = basis.iter().all(|v| {
        (0..alg.len()).all(|i| {
            alg.trace_of(&alg.multiply(&alg.basis_element(i), v), &traces)
                .is_zero()
        })
    });

    Ok(NilpotentIdealReport {
        generator_count,
        all_nonzero,
        span_dim,
        left_closed,
        square_is_zero,
        trace_degenerate,
        generator_labels,
    })
}
