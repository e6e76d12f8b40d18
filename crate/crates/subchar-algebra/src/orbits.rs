//! Conjugation orbits of subcharacters, their sums (the fibred-biset
//! subalgebra), and the double-coset composition oracle.
//!
//! The oracle evaluates products of full conjugation sums S_{(U,φ)} =
//! Σ_{c ∈ F×G} ^c(U,φ) without touching the structure-constant table:
//!
//!   S_{(U,φ)}·S_{(V,ψ)} = |G| Σ_c [related] ℓ(k₂(U)∩k₁(^cV)) S_{(U,φ)∗^c(V,ψ)},
//!
//! where c runs over p₂(U)\G/p₁(V) double-coset representatives weighted by
//! their coset sizes — or, elementwise, over all of G with weight 1.

use std::collections::BTreeMap;

use subchar_groups::GroupError;
use subchar_scalars::Scalar;

use crate::subcharacter::{multiply_subcharacters, Subcharacter};
use crate::{AlgebraElement, AlgebraError, DeformedAlgebra};

pub struct OrbitSums {
    /// One representative basis index per conjugacy class.
    pub reps: Vec<usize>,
    /// Basis index → orbit number.
    pub orbit_of: Vec<usize>,
    /// The orbit sums, each member with coefficient 1.
    pub sums: Vec<AlgebraElement>,
}

/// Conjugacy classes of basis subcharacters under their own product group.
pub fn orbit_sums(alg: &DeformedAlgebra) -> OrbitSums {
    let n = alg.len();
    let mut orbit_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut sums = Vec::new();
    for k in 0..n {
        if orbit_of[k] != usize::MAX {
            continue;
        }
        let o = reps.len();
        let e = alg.entry(k);
        let ambient = alg.product(e.src, e.tgt).group().clone();
        let mut members = Vec::new();
        for c in ambient.elements() {
            let m = alg.conjugate_index(k, c);
            if orbit_of[m] == usize::MAX {
                orbit_of[m] = o;
                members.push(m);
            }
        }
        let mut sum = AlgebraElement::zero();
        for &m in &members {
            sum.insert_add(m, Scalar::one(alg.ctx()));
        }
        reps.push(k);
        sums.push(sum);
    }
    OrbitSums {
        reps,
        orbit_of,
        sums,
    }
}

/// Verifies that products of orbit sums are scalar combinations of orbit
/// sums; returns (pairs checked, failing orbit pairs).
pub fn orbit_closure_check(
    alg: &DeformedAlgebra,
    os: &OrbitSums,
) -> (usize, Vec<(usize, usize)>) {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for a in 0..os.sums.len() {
        for b in 0..os.sums.len() {
            pairs += 1;
            let z = alg.multiply(&os.sums[a], &os.sums[b]);
            let mut per_orbit: BTreeMap<usize, Vec<&Scalar>> = BTreeMap::new();
            for (k, c) in z.terms() {
                per_orbit.entry(os.orbit_of[k]).or_default().push(c);
            }
            let ok = per_orbit.iter().all(|(&o, coeffs)| {
                coeffs.len() == os.sums[o].len() && coeffs.iter().all(|c| **c == *coeffs[0])
            });
            if !ok {
                failures.push((a, b));
            }
        }
    }
    (pairs, failures)
}

/// Full conjugation sum Σ_{c ∈ F×G} ^c b_k, with stabilizer multiplicity.
pub fn conjugation_sum(alg: &DeformedAlgebra, k: usize) -> AlgebraElement {
    let e = alg.entry(k);
    conjugation_sum_of(alg, e.src, e.tgt, &e.subcharacter)
}

fn conjugation_sum_of(
    alg: &DeformedAlgebra,
    src: usize,
    tgt: usize,
    s: &Subcharacter,
) -> AlgebraElement {
    let ambient = alg.product(src, tgt).group().clone();
    let mut out = AlgebraElement::zero();
    for c in ambient.elements() {
        let m = alg.index_of(src, tgt, &s.conjugate_by(c));
        out.insert_add(m, Scalar::one(alg.ctx()));
    }
    out
}

/// The double-coset evaluation of S_a·S_b (see the module docs); independent
/// of the structure-constant table.
pub fn biset_composition_oracle(
    alg: &DeformedAlgebra,
    a: usize,
    b: usize,
) -> Result<AlgebraElement, AlgebraError> {
    oracle_impl(alg, a, b, true)
}

/// The same evaluation with c running over all of G (the brute-force check
/// that the double-coset grouping is legitimate).
pub fn composition_oracle_elementwise(
    alg: &DeformedAlgebra,
    a: usize,
    b: usize,
) -> Result<AlgebraElement, AlgebraError> {
    oracle_impl(alg, a, b, false)
}

fn oracle_impl(
    alg: &DeformedAlgebra,
    a: usize,
    b: usize,
    group_by_double_cosets: bool,
) -> Result<AlgebraElement, AlgebraError> {
    let (ea, eb) = (alg.entry(a), alg.entry(b));
    if ea.tgt != eb.src {
        return Err(GroupError::MiddleGroupMismatch.into());
    }
    let middle = &alg.groups()[ea.tgt];
    let fg = alg.product(ea.src, ea.tgt);
    let gh = alg.product(eb.src, eb.tgt);
    let fh = alg.product(ea.src, eb.tgt);
    let (_, _, p2u, _) = fg.projections_kernels(ea.subcharacter.subgroup())?;
    let (p1v, _, _, _) = gh.projections_kernels(eb.subcharacter.subgroup())?;

    // (representative, weight) pairs: double cosets p2(U)\G/p1(V) with their
    // sizes, or every element with weight 1.
    let mut cosets: Vec<(u16, usize)> = Vec::new();
    if group_by_double_cosets {
        let mut seen = vec![false; middle.order()];
        for c in middle.elements() {
            if seen[c as usize] {
                continue;
            }
            let mut size = 0;
            for &u in p2u.elements() {
                for &v in p1v.elements() {
                    let x = middle.op(middle.op(u, c), v);
                    if !seen[x as usize] {
                        seen[x as usize] = true;
                        size += 1;
                    }
                }
            }
            cosets.push((c, size));
        }
    } else {
        cosets.extend(middle.elements().map(|c| (c, 1)));
    }

    let mut out = AlgebraElement::zero();
    for (c, weight) in cosets {
        let vc = eb.subcharacter.conjugate_by(gh.pair(c, 0));
        if let Some((x, ell)) = multiply_subcharacters(
            &ea.subcharacter,
            &vc,
            fh,
            alg.deformation(),
            alg.ctx(),
        )? {
            let s = conjugation_sum_of(alg, ea.src, eb.tgt, &x);
            let w = &ell * Scalar::from_integer(alg.ctx(), weight as i64);
            out = &out + &s.scale(&w);
        }
    }
    Ok(out.scale(&Scalar::from_integer(alg.ctx(), middle.order() as i64)))
}
