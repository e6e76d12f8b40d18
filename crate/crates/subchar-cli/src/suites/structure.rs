//! Suites over the module layer: the axis pairing and its degeneration
//! dichotomy, the twisted axis copies, the closed-form direct-factor action,
//! the nilpotent ideal, the diagonal block, the evaluation eigenvectors, and
//! the trace-form/Wedderburn audits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subchar_groups::{character_group, subgroups, Group, Subgroup};
use subchar_modules::{
    action_case_tuples, axis_pairing_matrix, center_dimension, character_sum, check_action_case,
    diagonal_block_audit, eigenvector_audit, gram_annihilates, invariant_line_check,
    is_module_isomorphism, left_axis_module, nilpotent_ideal_audit, prime_cyclic_blocks,
    thorax_submodule, trace_form_verdict, twisted_axis_module, Span, Verdict,
};
use subchar_scalars::Scalar;

use super::{SuiteAbort, SuiteResult};
use crate::config::RunConfig;
use crate::report::Check;

const ENUMERATION_BOUND: usize = 64;
const EXHAUSTIVE_CASE_LIMIT: usize = 600;
const SAMPLED_CASES: usize = 150;

fn prime_cyclic_params(cfg: &RunConfig) -> Result<(u32, u32), SuiteAbort> {
    if cfg.groups.len() != 1 {
        return Err(SuiteAbort::Skip("needs a single-group algebra".to_string()));
    }
    let order = cfg.groups[0].order();
    if order < 2 || !is_prime(order) {
        return Err(SuiteAbort::Skip(format!(
            "group order {order} is not prime"
        )));
    }
    let q = order as u32;
    let rho = cfg.pi.pi_part(u64::from(q)) as u32;
    Ok((q, rho))
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn axis_pairing(cfg: &RunConfig) -> SuiteResult {
    let alg = cfg.algebra(&[])?;
    let pairing = axis_pairing_matrix(&alg)?;
    let n = pairing.matrix.rows();
    let axis = left_axis_module(&alg)?;
    let d = axis.dim();
    let mut checks = vec![Check::from_bool(
        "pairing-matches-products",
        pairing.entries_match_products,
        "a predicted pairing entry disagrees with the actual product",
    )];
    checks.push(if pairing.matrix.rank_at_least(n) {
        Check::pass_note("pairing-det-nonzero", format!("nonsingular {n}x{n}"))
    } else {
        Check::fail(
            "pairing-det-nonzero",
            format!("rank {} of {n}", pairing.matrix.rank()),
        )
    });
    checks.push(Check::from_bool(
        "axis-identity",
        axis.identity_acts_as_identity(&alg),
        "the identity does not act as the identity matrix",
    ));
    checks.push(if axis.absolutely_simple(&alg) {
        Check::pass_note(
            "axis-simple",
            format!("dim {d}, operator span {}", d * d),
        )
    } else {
        Check::fail(
            "axis-simple",
            format!("operator span below {} on the dim-{d} module", d * d),
        )
    });
    Ok(checks)
}

pub fn twisted_copies(cfg: &RunConfig) -> SuiteResult {
    let alg = cfg.algebra(&[])?;
    let axis = left_axis_module(&alg)?;
    let n = axis.dim();
    let g = alg.groups()[0].clone();

    let mut copies = 0usize;
    let mut hom_bad = None;
    let mut union = Span::new();
    for e in subgroups(&g, ENUMERATION_BOUND).map_err(SuiteAbort::from)? {
        let characters = character_group(&e, alg.pi()).len();
        for t in 0..characters {
            let omega = Scalar::root_of_unity(alg.ctx(), characters as u32, t as i64)
                .map_err(SuiteAbort::from)?;
            let twisted = twisted_axis_module(&alg, &e, &omega)?;
            copies += 1;
            if twisted.dim() != n
                || !is_module_isomorphism(&alg, &axis, &twisted, twisted.basis())
            {
                hom_bad.get_or_insert(format!(
                    "copy over a subgroup of order {} with twist #{t}",
                    e.order()
                ));
            }
            for v in twisted.basis() {
                union.insert(v);
            }
        }
    }

    let s1 = thorax_submodule(&alg, &Group::cyclic(1))?;
    Ok(vec![
        match hom_bad {
            None => Check::pass_note(
                "copies-isomorphic",
                format!("{copies} copies of dim {n}"),
            ),
            Some(w) => Check::fail("copies-isomorphic", w),
        },
        Check::from_bool(
            "copies-span",
            union.dim() == n * n,
            format!("union spans {} of {}", union.dim(), n * n),
        ),
        Check::from_bool(
            "trivial-thorax-dim",
            s1.dim() == n * n,
            format!("dim {} with {copies} copies of dim {n}", s1.dim()),
        ),
    ])
}

pub fn pairing_dichotomy(cfg: &RunConfig) -> SuiteResult {
    let (q, rho) = prime_cyclic_params(cfg)?;
    if rho == 1 {
        return Err(SuiteAbort::Skip(format!(
            "needs {q} in the fibre class"
        )));
    }
    let alg = cfg.algebra(&[])?;
    let lambda = alg
        .deformation()
        .eval_prime(q, alg.ctx())
        .map_err(SuiteAbort::from)?;
    let critical = lambda == Scalar::from_integer(alg.ctx(), i64::from(rho));

    let pairing = axis_pairing_matrix(&alg)?;
    let n = pairing.matrix.rows();
    let singular = pairing.matrix.rank() < n;

    let g = alg.groups()[0].clone();
    let (full, triv) = (Subgroup::full(&g), Subgroup::trivial(&g));
    let lambda_inv = lambda.inv().map_err(SuiteAbort::from)?;
    let witness_line = &character_sum(&alg, 0, 0, &triv, &triv).into_value()
        - &character_sum(&alg, 0, 0, &full, &triv)
            .into_value()
            .scale(&lambda_inv);
    let line_invariant = invariant_line_check(&alg, &witness_line);

    let branch = if critical {
        "critical deformation"
    } else {
        "generic deformation"
    };
    Ok(vec![
        Check::from_bool(
            "pairing-singular-iff-critical",
            singular == critical,
            format!("{branch}, pairing rank {} of {n}", pairing.matrix.rank()),
        ),
        Check::from_bool(
            "witness-line-iff-critical",
            line_invariant == critical,
            format!("{branch}, invariant line: {line_invariant}"),
        ),
    ])
}

pub fn action_formula(cfg: &RunConfig) -> SuiteResult {
    let alg = cfg.algebra(&[])?;
    let cases = action_case_tuples(&alg)?;
    let total = cases.len();
    let sampled = total > EXHAUSTIVE_CASE_LIMIT;
    let picks: Vec<usize> = if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (0..SAMPLED_CASES)
            .map(|_| rng.random_range(0..total))
            .collect()
    } else {
        (0..total).collect()
    };

    let mut incompatible = 0usize;
    let mut formula_bad: Option<String> = None;
    let mut partition_bad: Option<String> = None;
    let mut count_bad: Option<String> = None;
    for &i in &picks {
        let case = &cases[i];
        let report = check_action_case(&alg, case)?;
        if report.incompatible {
            incompatible += 1;
        }
        if !report.formula_ok {
            formula_bad.get_or_insert_with(|| case.label());
        }
        if !report.partition_ok {
            partition_bad.get_or_insert_with(|| case.label());
        }
        if !report.count_ok {
            count_bad.get_or_insert_with(|| case.label());
        }
    }

    let note = format!(
        "{} cases{}, {incompatible} incompatible",
        picks.len(),
        if sampled { " sampled" } else { ", exhaustive" }
    );
    Ok(vec![
        match formula_bad {
            None => Check::pass_note("closed-formula", note),
            Some(w) => Check::fail("closed-formula", w),
        },
        match partition_bad {
            None => Check::pass("extension-partition"),
            Some(w) => Check::fail("extension-partition", w),
        },
        match count_bad {
            None => Check::pass("extension-count"),
            Some(w) => Check::fail("extension-count", w),
        },
    ])
}

pub fn nilpotent_ideal(cfg: &RunConfig) -> SuiteResult {
    let alg = cfg.algebra(&[])?;
    let report = nilpotent_ideal_audit(&alg)?;
    Ok(vec![
        Check::from_bool(
            "generators-nonzero",
            report.all_nonzero,
            "a generator collapsed to zero",
        ),
        Check::from_bool(
            "left-closed",
            report.left_closed,
            "the span is not closed under left multiplication",
        ),
        Check::from_bool(
            "square-zero",
            report.square_is_zero,
            "a product of span vectors is nonzero",
        ),
        Check::from_bool(
            "trace-degenerate",
            report.trace_degenerate,
            "the trace form does not vanish on the span",
        ),
        Check::pass_note(
            "ideal-size",
            format!(
                "{} generators spanning dim {}",
                report.generator_count, report.span_dim
            ),
        ),
    ])
}

pub fn diagonal_block(cfg: &RunConfig) -> SuiteResult {
    let (q, _) = prime_cyclic_params(cfg)?;
    let alg = cfg.algebra(&[q - 1])?;
    let report = diagonal_block_audit(&alg)?;
    let mut checks = vec![
        Check::from_bool(
            "group-basis",
            report.is_group_basis,
            "a diagonal product is not a single unit-coefficient diagonal",
        ),
        Check::from_bool(
            "presentation",
            report.relations_hold,
            "the generator relations fail",
        ),
        Check::from_bool(
            "generators-exhaust",
            report.exhausts,
            "generator monomials do not sweep the span",
        ),
    ];
    match &report.table {
        Some(table) => {
            let degrees: Vec<String> = table.degrees.iter().map(u32::to_string).collect();
            checks.push(Check::from_bool(
                "character-table",
                table.row_orthogonality,
                "row orthogonality fails",
            ));
            checks.push(Check::pass_note(
                "character-degrees",
                degrees.join(","),
            ));
        }
        None => checks.push(Check::skip(
            "character-table",
            "the quotient is cyclic for this fibre class",
        )),
    }
    match report.matrix_block_simple {
        Some(ok) => checks.push(Check::from_bool(
            "matrix-block",
            ok,
            "the restricted action does not span the full matrix algebra",
        )),
        None => checks.push(Check::skip(
            "matrix-block",
            "the quotient is cyclic for this fibre class",
        )),
    }
    checks.push(Check::from_bool(
        "lines",
        report.lines_ok,
        format!("{} lines expected to be scaled by diagonals", report.line_count),
    ));
    checks.push(Check::from_bool(
        "saturates",
        report.saturated,
        format!(
            "span {} vs blocks from {} lines",
            report.span_dim, report.line_count
        ),
    ));
    if report.cyclic_quotient {
        checks.push(Check::pass_note("quotient", format!("cyclic of order {}", report.group_order)));
    } else {
        checks.push(Check::pass_note(
            "quotient",
            format!("holomorph of order {}", report.group_order),
        ));
    }
    Ok(checks)
}

pub fn eigenvectors(cfg: &RunConfig) -> SuiteResult {
    let (q, _) = prime_cyclic_params(cfg)?;
    let alg = cfg.algebra(&[q - 1])?;
    let report = eigenvector_audit(&alg)?;
    Ok(vec![
        Check::from_bool(
            "eigen-moves",
            report.eigen_moves,
            "a diagonal move on e_i^ω disagrees",
        ),
        Check::from_bool(
            "projectors",
            report.projector_annihilated && report.projector_eigen,
            "a θ projector fails its annihilation or eigen identity",
        ),
        Check::pass_note("fixed-line-type", report.fixed_line_type.clone()),
        Check::from_bool(
            "fixed-line",
            report.fixed_line_ok,
            "the fixed line is not annihilated/fixed as required",
        ),
        Check::from_bool(
            "reduced-moves",
            report.reduced_moves,
            "a corrected eigenvector α_i^ω fails its move",
        ),
        Check::from_bool(
            "absorption",
            report.absorption_ok && report.sums_fixed,
            "a unit-sum absorption identity fails",
        ),
        Check::from_bool(
            "dimension-count",
            report.dimension_count,
            "the block dimension count does not match the basis size",
        ),
    ])
}

pub fn wedderburn(cfg: &RunConfig) -> SuiteResult {
    let (q, rho) = prime_cyclic_params(cfg)?;
    let alg = cfg.algebra(&[q - 1])?;
    let lambda = alg
        .deformation()
        .eval_prime(q, alg.ctx())
        .map_err(SuiteAbort::from)?;
    let critical = lambda == Scalar::from_integer(alg.ctx(), i64::from(rho));
    let audit = trace_form_verdict(&alg)?;

    let predicted = if critical {
        Verdict::NotSemisimple
    } else {
        Verdict::Semisimple
    };
    let mut checks = vec![Check::from_bool(
        "verdict-matches-deformation",
        audit.verdict == predicted,
        format!(
            "rank {} of {} against the ℓ({q}) = ρ test",
            audit.gram_rank, audit.algebra_dim
        ),
    )];

    if critical {
        let witnessed = audit
            .kernel_witness
            .as_ref()
            .is_some_and(|v| !v.is_zero() && gram_annihilates(&alg, v));
        checks.push(Check::from_bool(
            "radical-witness",
            witnessed,
            "no exact kernel vector annihilates the trace form",
        ));
        checks.push(Check::pass_note(
            "branch",
            format!("not semisimple at ℓ({q}) = ρ = {rho}"),
        ));
    } else {
        let blocks = prime_cyclic_blocks(&alg)?;
        let dims: Vec<String> = blocks.block_dims.iter().map(usize::to_string).collect();
        checks.push(Check::from_bool(
            "blocks-saturate",
            blocks.saturated,
            format!("Σd² over {} misses {}", dims.join(","), alg.len()),
        ));
        checks.push(Check::from_bool(
            "blocks-simple",
            blocks.axis_simple
                && blocks.reduced_simple.unwrap_or(true)
                && blocks.lines_invariant
                && blocks.lines_distinct,
            "a constructed block fails its simplicity or distinctness certificate",
        ));
        let center = center_dimension(&alg)?;
        checks.push(Check::from_bool(
            "center-dim",
            center == blocks.block_dims.len(),
            format!("center {center}, blocks {}", blocks.block_dims.len()),
        ));
        checks.push(Check::pass_note(
            "branch",
            format!("semisimple, blocks {}", dims.join(",")),
        ));
    }
    Ok(checks)
}

pub fn trace_rank(cfg: &RunConfig) -> SuiteResult {
    let alg = cfg.algebra(&[])?;
    let audit = trace_form_verdict(&alg)?;
    let mut checks = vec![Check::pass_note(
        "gram-rank",
        format!("rank {} of {}", audit.gram_rank, audit.algebra_dim),
    )];
    match audit.verdict {
        Verdict::Semisimple => {
            checks.push(Check::from_bool(
                "nondegenerate",
                audit.gram_rank == audit.algebra_dim && audit.radical_dim == 0,
                format!("radical dim {}", audit.radical_dim),
            ));
            checks.push(Check::pass_note("verdict", "semisimple"));
        }
        Verdict::NotSemisimple => {
            let witnessed = audit
                .kernel_witness
                .as_ref()
                .is_some_and(|v| !v.is_zero() && gram_annihilates(&alg, v));
            checks.push(Check::from_bool(
                "radical-witness",
                witnessed,
                "no exact kernel vector annihilates the trace form",
            ));
            checks.push(Check::pass_note(
                "verdict",
                format!("not semisimple, radical dim {}", audit.radical_dim),
            ));
        }
    }
    Ok(checks)
}
