//! Closed form for a basis element acting on an extension sum over an
//! abelian group, with the companion partition and extension-count
//! identities that drive it.
//!
//! For s_{U,ζ} acting on S^γ_{M×N} the product is either zero — exactly
//! when γ clashes with the inverted second kernel character of ζ on
//! k₂(U)∩M — or a single scaled extension sum S^{r}_{W×N}, where r is read
//! off a star product and W = p₁(U∗(M×1)).

use std::collections::BTreeSet;

use num::BigInt;
use subchar_algebra::{
    related, star_characters, AlgebraError, DeformedAlgebra, Subcharacter,
};
use subchar_groups::character::{canonical_modulus, rebase};
use subchar_groups::{character_group, star, subgroups, Character, GroupError, Subgroup};
use subchar_scalars::{Rational, Scalar};

use crate::vectors::{extension_sum, first_factor_of, second_factor_of};
use crate::ModuleError;

/// One instance of the action formula: the basis element s_{U,ζ} applied to
/// S^γ_{M×N}.
#[derive(Clone, Debug)]
pub struct ActionCase {
    pub basis_index: usize,
    pub gamma: Character,
    pub m: Subgroup,
    pub n: Subgroup,
}

impl ActionCase {
    pub fn label(&self) -> String {
        format!(
            "s#{} * S^(exps={:?} on {:?})({:?}x{:?})",
            self.basis_index,
            self.gamma.exps(),
            self.gamma.domain().elements(),
            self.m.elements(),
            self.n.elements()
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ActionCaseReport {
    /// γ clashes with the kernel character, so the product must vanish.
    pub incompatible: bool,
    pub formula_ok: bool,
    pub partition_ok: bool,
    pub count_ok: bool,
}

impl ActionCaseReport {
    pub fn all_ok(&self) -> bool {
        self.formula_ok && self.partition_ok && self.count_ok
    }
}

/// Every (basis element, γ, M, N) combination for a single abelian group.
pub fn action_case_tuples(alg: &DeformedAlgebra) -> Result<Vec<ActionCase>, ModuleError> {
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
    let subs = subgroups(g, g.order())?;
    let mut cases = Vec::new();
    for m in &subs {
        for k in subs.iter().filter(|k| k.le(m)) {
            for gamma in character_group(k, alg.pi()) {
                for n in &subs {
                    for basis_index in 0..alg.len() {
                        cases.push(ActionCase {
                            basis_index,
                            gamma: gamma.clone(),
                            m: m.clone(),
                            n: n.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(cases)
}

pub fn check_action_case(
    alg: &DeformedAlgebra,
    case: &ActionCase,
) -> Result<ActionCaseReport, ModuleError> {
    let prod = alg.product(0, 0);
    let g = &alg.groups()[0];
    let entry = alg.entry(case.basis_index);
    let u = entry.subcharacter.subgroup();
    let zeta = entry.subcharacter.character();
    let (_, _, p2u, k2u) = prod.projections_kernels(u)?;

    let lhs = alg.multiply(
        &alg.basis_element(case.basis_index),
        extension_sum(alg, 0, 0, &case.gamma, &case.m, &case.n).value(),
    );

    let k2m = k2u.intersect(&case.m);
    let kernel_char = second_factor_of(prod, zeta, &k2m).inverse();
    let theta = match case.gamma.join(&kernel_char) {
        Ok(theta) => theta,
        Err(GroupError::IncompatibleOnIntersection) => {
            return Ok(ActionCaseReport {
                incompatible: true,
                formula_ok: lhs.is_zero(),
                partition_ok: true,
                count_ok: true,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let d = theta.domain().clone();

    // r is the first factor of the star product (U,ζ)∗(D×1, θ×1).
    let triv = Subgroup::trivial(g);
    let d_axis = prod.sub_product(&d, &triv);
    let axis_modulus = canonical_modulus(&d_axis, alg.pi());
    let axis_exps = d_axis
        .elements()
        .iter()
        .map(|&t| {
            let (x, _) = prod.split(t);
            rebase(theta.exp_at(x), theta.modulus(), axis_modulus)
        })
        .collect();
    let axis_char = Character::from_exps(&d_axis, alg.pi(), axis_exps)?;
    let a = Subcharacter::new(prod, u.clone(), zeta.clone())?;
    let b = Subcharacter::new(prod, d_axis, axis_char)?;
    debug_assert!(related(&a, &b)?);
    let (w0, r_chi) = match star_characters(&a, &b, prod) {
        Ok(pair) => pair,
        Err(AlgebraError::NotRelated) => {
            return Ok(ActionCaseReport {
                incompatible: false,
                formula_ok: false,
                partition_ok: false,
                count_ok: false,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let (t_sub, _, p2w, _) = prod.projections_kernels(&w0)?;
    let r_m = first_factor_of(prod, &r_chi, &t_sub);

    let w_axis = star(prod, prod, prod, u, &prod.sub_product(&case.m, &triv))?;
    let w = prod.projections_kernels(&w_axis)?.0;
    let w_full = star(prod, prod, prod, u, &prod.sub_product(&case.m, &case.n))?;
    let same_w = w == prod.projections_kernels(&w_full)?.0;

    let p2m = p2u.intersect(&case.m);
    let pi = alg.pi();
    let blocked = p2m.join(case.gamma.domain());
    let ratio = Scalar::from_rational(
        alg.ctx(),
        Rational::new(
            BigInt::from(pi.pi_part(case.m.order() as u64)),
            BigInt::from(pi.pi_part(blocked.order() as u64)),
        ),
    );
    let coeff = alg.deformation().eval_order(k2m.order() as u64, alg.ctx())? * ratio;
    let rhs = extension_sum(alg, 0, 0, &r_m, &w, &case.n)
        .into_value()
        .scale(&coeff);
    let formula_ok = p2w.is_trivial() && same_w && t_sub.le(&w) && lhs == rhs;

    let dprime = p2u.intersect(case.gamma.domain()).join(&k2m);
    let partition_ok = partition_holds(alg, &theta, &case.gamma, &dprime, &p2m, &case.m);
    let count_ok = {
        let i_count = theta.restrict(&dprime).extensions(&p2m).len() as u64;
        r_m.extensions(&w).len() as u64 == i_count
    };

    Ok(ActionCaseReport {
        incompatible: false,
        formula_ok,
        partition_ok,
        count_ok,
    })
}

/// The extensions of θ to M split as the disjoint union, over the
/// extensions ρ of θ′ to p₂(U)∩M, of the extensions of θ⊔ρ, with the
/// π-part counting identities holding throughout.
fn partition_holds(
    alg: &DeformedAlgebra,
    theta: &Character,
    gamma: &Character,
    dprime: &Subgroup,
    p2m: &Subgroup,
    m: &Subgroup,
) -> bool {
    let pi = alg.pi();
    let tilde = theta.extensions(m);
    let m_pi = pi.pi_part(m.order() as u64);
    if tilde.len() as u64 * pi.pi_part(theta.domain().order() as u64) != m_pi {
        return false;
    }

    let theta_prime = theta.restrict(dprime);
    let index = theta_prime.extensions(p2m);
    if index.len() as u64 * pi.pi_part(dprime.order() as u64)
        != pi.pi_part(p2m.order() as u64)
    {
        return false;
    }

    let blocked_pi = pi.pi_part(p2m.join(gamma.domain()).order() as u64);
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    for rho in &index {
        let joined = match theta.join(rho) {
            Ok(j) => j,
            Err(_) => return false,
        };
        let part = joined.extensions(m);
        if part.len() as u64 * blocked_pi != m_pi {
            return false;
        }
        for chi in part {
            if !seen.insert(chi.exps().to_vec()) {
                return false;
            }
        }
    }
    seen == tilde.iter().map(|chi| chi.exps().to_vec()).collect()
}
