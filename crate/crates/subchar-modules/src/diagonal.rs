//! The span of the twisted diagonals: a group algebra inside the deformed
//! algebra, isomorphic to K[Hol(C_q)] when q ∈ π and to K[C_{q-1}] otherwise.
//!
//! The isomorphism is certified by exhaustion: two distinguished basis
//! elements satisfy the holomorph presentation and their monomials sweep
//! out the whole diagonal basis with unit coefficients.

use std::collections::BTreeSet;

use subchar_algebra::{AlgebraElement, DeformedAlgebra};
use subchar_scalars::{FieldCtx, Matrix, Scalar};

use crate::vectors::{diagonal_eigenvector, require_prime_cyclic, twisted_diagonal_index};
use crate::wedderburn::scalar_action;
use crate::{ModuleError, SpecialVector};

/// Basis indices whose subgroup projects onto both factors with trivial
/// kernels, i.e. the graphs of automorphisms.
pub fn diagonal_indices(alg: &DeformedAlgebra) -> Vec<usize> {
    (0..alg.len())
        .filter(|&k| {
            let entry = alg.entry(k);
            if entry.src != entry.tgt {
                return false;
            }
            let prod = alg.product(entry.src, entry.tgt);
            let (p1, k1, p2, k2) = prod
                .projections_kernels(entry.subcharacter.subgroup())
                .expect("basis subgroup lives in its product");
            p1.is_full() && k1.is_trivial() && p2.is_full() && k2.is_trivial()
        })
        .collect()
}

pub(crate) fn smallest_primitive_root(q: u32) -> u32 {
    (2..q)
        .find(|&z| {
            let mut x = z;
            let mut order = 1;
            while x != 1 {
                x = x * z % q;
                order += 1;
            }
            order == q - 1
        })
        .expect("every prime has a primitive root")
}

pub(crate) fn discrete_log(q: u32) -> Vec<u32> {
    let z = smallest_primitive_root(q);
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for e in 0..q - 1 {
        log[x as usize] = e;
        x = x * z % q;
    }
    log
}

/// θ_c = Σ_{i,j} μ^{-c·log i} s_{Δ(i),j}, with μ a primitive (q-1)-st root
/// of unity and the log taken to the smallest primitive root.
pub fn character_projector(alg: &DeformedAlgebra, c: u32) -> Result<SpecialVector, ModuleError> {
    let q = require_prime_cyclic(alg)?;
    let rho = alg.pi().pi_part(u64::from(q)) as u32;
    let log = discrete_log(q);
    let mut value = AlgebraElement::zero();
    for i in 1..q {
        let mu = Scalar::root_of_unity(
            alg.ctx(),
            q - 1,
            -i64::from(c) * i64::from(log[i as usize]),
        )?;
        for j in 0..rho {
            value.insert_add(twisted_diagonal_index(alg, i, j), mu.clone());
        }
    }
    Ok(SpecialVector::new(format!("theta_{c}"), value))
}

fn pow_elem(alg: &DeformedAlgebra, x: &AlgebraElement, e: u32) -> AlgebraElement {
    let mut acc = alg.identity();
    for _ in 0..e {
        acc = alg.multiply(&acc, x);
    }
    acc
}

#[derive(Debug)]
pub struct HolomorphCharacterTable {
    pub q: u32,
    pub class_sizes: Vec<u64>,
    pub centralizer_orders: Vec<u64>,
    pub degrees: Vec<u32>,
    pub values: Vec<Vec<Scalar>>,
    pub row_orthogonality: bool,
}

/// Character table of Hol(C_q) = AGL(1,q): classes 1, the translations,
/// and one class per nontrivial multiplier; q-1 linear characters through
/// the multiplier quotient plus one character of degree q-1.
pub fn holomorph_character_table(
    q: u32,
    ctx: &FieldCtx,
) -> Result<HolomorphCharacterTable, ModuleError> {
    let classes = q as usize;
    let h = u64::from(q) * u64::from(q - 1);
    let mut class_sizes = vec![1, u64::from(q - 1)];
    class_sizes.extend(std::iter::repeat(u64::from(q)).take(classes - 2));
    let centralizer_orders: Vec<u64> = class_sizes.iter().map(|s| h / s).collect();

    let one = Scalar::one(ctx);
    let zero = Scalar::zero(ctx);
    let mut degrees = vec![1; classes - 1];
    degrees.push(q - 1);
    let mut values: Vec<Vec<Scalar>> = Vec::with_capacity(classes);
    for c in 0..q - 1 {
        let mut row = vec![one.clone(), one.clone()];
        for k in 1..=q - 2 {
            row.push(Scalar::root_of_unity(ctx, q - 1, i64::from(c) * i64::from(k))?);
        }
        values.push(row);
    }
    let mut last = vec![
        Scalar::from_integer(ctx, i64::from(q) - 1),
        Scalar::from_integer(ctx, -1),
    ];
    last.extend(std::iter::repeat(zero).take(classes - 2));
    values.push(last);

    // Classes are closed under inversion except the multiplier classes,
    // which pair up as k ↔ q-1-k.
    let inverse_class = |m: usize| -> usize {
        if m < 2 {
            m
        } else {
            let k = m - 1;
            (q as usize - 1 - k) + 1
        }
    };
    let order = Scalar::from_integer(ctx, h as i64);
    let row_orthogonality = (0..classes).all(|a| {
        (0..classes).all(|b| {
            let mut sum = Scalar::zero(ctx);
            for m in 0..classes {
                let size = Scalar::from_integer(ctx, class_sizes[m] as i64);
                sum = sum + size * &values[a][m] * &values[b][inverse_class(m)];
            }
            if a == b {
                sum == order
            } else {
                sum.is_zero()
            }
        })
    });

    assert_eq!(
        degrees.iter().map(|&d| u64::from(d) * u64::from(d)).sum::<u64>(),
        h
    );
    Ok(HolomorphCharacterTable {
        q,
        class_sizes,
        centralizer_orders,
        degrees,
        values,
        row_orthogonality,
    })
}

fn restricted_action(
    alg: &DeformedAlgebra,
    operators: &[usize],
    basis: &[AlgebraElement],
) -> Result<Vec<Matrix>, ModuleError> {
    let d = basis.len();
    let columns: Vec<Vec<Scalar>> = basis.iter().map(|v| alg.to_coords(v)).collect();
    let coords = Matrix::from_fn(alg.ctx(), alg.len(), d, |i, j| columns[j][i].clone());
    let mut out = Vec::with_capacity(operators.len());
    for &a in operators {
        let mut m = Matrix::zero(alg.ctx(), d, d);
        for j in 0..d {
            let w = alg.multiply(&alg.basis_element(a), &basis[j]);
            let col = coords.solve(&alg.to_coords(&w)).map_err(|_| {
                ModuleError::NotASubmodule(
                    "diagonal action leaves the eigenvector span".to_string(),
                )
            })?;
            for i in 0..d {
                m.set(i, j, col[i].clone());
            }
        }
        out.push(m);
    }
    Ok(out)
}

fn spans_full_matrix_algebra(ctx: &FieldCtx, mats: &[Matrix], d: usize) -> bool {
    let flat = Matrix::from_fn(ctx, mats.len(), d * d, |r, e| {
        mats[r].at(e / d, e % d).clone()
    });
    flat.rank() == d * d
}

#[derive(Debug)]
pub struct DiagonalBlockReport {
    pub span_dim: usize,
    pub group_order: u64,
    /// Every product of two diagonal basis elements is a single diagonal
    /// basis element with coefficient 1.
    pub is_group_basis: bool,
    pub relations_hold: bool,
    /// Monomials in the two generators sweep out the whole diagonal basis.
    pub exhausts: bool,
    pub table: Option<HolomorphCharacterTable>,
    pub matrix_block_simple: Option<bool>,
    pub line_count: usize,
    pub lines_ok: bool,
    pub saturated: bool,
    pub cyclic_quotient: bool,
}

/// Audits the diagonal span: group-basis structure, presentation, character
/// table, and the full block decomposition it induces.
pub fn diagonal_block_audit(alg: &DeformedAlgebra) -> Result<DiagonalBlockReport, ModuleError> {
    let q = require_prime_cyclic(alg)?;
    let rho = alg.pi().pi_part(u64::from(q)) as u32;
    let diag = diagonal_indices(alg);
    let diag_set: BTreeSet<usize> = diag.iter().copied().collect();
    let span_dim = diag.len();
    assert_eq!(span_dim, (q as usize - 1) * rho as usize);

    let is_group_basis = diag.iter().all(|&a| {
        diag.iter().all(|&b| match alg.structure(a, b) {
            Some((k, lambda)) => diag_set.contains(&k) && lambda.is_one(),
            None => false,
        })
    });

    let z = smallest_primitive_root(q);
    let identity = alg.identity();
    let g = alg.basis_element(twisted_diagonal_index(alg, z, 0));
    let single_index = |v: &AlgebraElement| -> Option<usize> {
        let mut terms = v.terms();
        let (k, c) = terms.next()?;
        (terms.next().is_none() && c.is_one()).then_some(k)
    };

    if rho > 1 {
        let f = alg.basis_element(twisted_diagonal_index(alg, 1, 1));
        let g_inv = pow_elem(alg, &g, q - 2);
        let relations_hold = pow_elem(alg, &f, q) == identity
            && pow_elem(alg, &g, q - 1) == identity
            && alg.multiply(&alg.multiply(&g, &f), &g_inv) == pow_elem(alg, &f, z);

        let mut seen = BTreeSet::new();
        let mut exhausts = true;
        for j in 0..q {
            let fj = pow_elem(alg, &f, j);
            for s in 0..q - 1 {
                let word = alg.multiply(&fj, &pow_elem(alg, &g, s));
                match single_index(&word) {
                    Some(k) if diag_set.contains(&k) => {
                        exhausts &= seen.insert(k);
                    }
                    _ => exhausts = false,
                }
            }
        }
        exhausts &= seen.len() == span_dim;

        let table = holomorph_character_table(q, alg.ctx())?;
        let eigen: Vec<AlgebraElement> = (1..q)
            .map(|i| Ok(diagonal_eigenvector(alg, i, 1)?.into_value()))
            .collect::<Result<_, ModuleError>>()?;
        let mats = restricted_action(alg, &diag, &eigen)?;
        let matrix_block_simple =
            spans_full_matrix_algebra(alg.ctx(), &mats, q as usize - 1);

        let (line_count, lines_ok) = diagonal_lines(alg, &diag)?;
        let saturated =
            (q as usize - 1) * (q as usize - 1) + line_count == span_dim;
        Ok(DiagonalBlockReport {
            span_dim,
            group_order: u64::from(q) * u64::from(q - 1),
            is_group_basis,
            relations_hold,
            exhausts,
            table: Some(table),
            matrix_block_simple: Some(matrix_block_simple),
            line_count,
            lines_ok,
            saturated,
            cyclic_quotient: false,
        })
    } else {
        let relations_hold = pow_elem(alg, &g, q - 1) == identity
            && diag.iter().all(|&a| {
                diag.iter().all(|&b| alg.structure(a, b) == alg.structure(b, a))
            });
        let mut seen = BTreeSet::new();
        let mut exhausts = true;
        for s in 0..q - 1 {
            match single_index(&pow_elem(alg, &g, s)) {
                Some(k) if diag_set.contains(&k) => {
                    exhausts &= seen.insert(k);
                }
                _ => exhausts = false,
            }
        }
        exhausts &= seen.len() == span_dim;

        let (line_count, lines_ok) = diagonal_lines(alg, &diag)?;
        Ok(DiagonalBlockReport {
            span_dim,
            group_order: u64::from(q - 1),
            is_group_basis,
            relations_hold,
            exhausts,
            table: None,
            matrix_block_simple: None,
            line_count,
            lines_ok,
            saturated: line_count == span_dim,
            cyclic_quotient: true,
        })
    }
}

/// Each θ_c is scaled by every diagonal basis element.
fn diagonal_lines(
    alg: &DeformedAlgebra,
    diag: &[usize],
) -> Result<(usize, bool), ModuleError> {
    let q = require_prime_cyclic(alg)?;
    let mut lines_ok = true;
    for c in 0..q - 1 {
        let theta = character_projector(alg, c)?;
        lines_ok &= diag
            .iter()
            .all(|&a| scalar_action(alg, a, theta.value()).is_some());
    }
    Ok((q as usize - 1, lines_ok))
}
