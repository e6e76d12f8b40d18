//! Suites over the group layer and the raw product structure: Goursat
//! round-trips, associativity and identity of the deformed product, orbit-sum
//! closure against the double-coset oracle, and the projection/kernel
//! counting identities for star products against direct factors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subchar_algebra::{
    biset_composition_oracle, conjugation_sum, orbit_closure_check, orbit_sums, DeformedAlgebra,
};
use subchar_groups::{character_group, star, subgroups, Group, Product, Subgroup};

use super::{SuiteAbort, SuiteResult};
use crate::config::RunConfig;
use crate::labels::basis_label;
use crate::report::Check;

/// Subgroup enumeration is bitmask-based and capped at 64 elements.
const ENUMERATION_BOUND: usize = 64;

const EXHAUSTIVE_TRIPLE_LIMIT: usize = 30;
const SAMPLED_TRIPLES: usize = 500;
const EXHAUSTIVE_TUPLE_LIMIT: usize = 20_000;
const SAMPLED_TUPLES: usize = 1_000;
const EXHAUSTIVE_ORACLE_LIMIT: usize = 64;

pub fn goursat(cfg: &RunConfig) -> SuiteResult {
    let mut checks = Vec::new();
    for f in &cfg.groups {
        for g in &cfg.groups {
            let prod = Product::new(f, g);
            let name = format!("roundtrip {}x{}", f.label(), g.label());
            if prod.group().order() > ENUMERATION_BOUND {
                checks.push(Check::skip(
                    name,
                    format!(
                        "product order {} exceeds the enumeration bound {ENUMERATION_BOUND}",
                        prod.group().order()
                    ),
                ));
                continue;
            }
            let subs = subgroups(prod.group(), ENUMERATION_BOUND).map_err(SuiteAbort::from)?;
            let mut bad = None;
            for u in &subs {
                let quintuple = prod.goursat(u).map_err(SuiteAbort::from)?;
                let back = prod.from_goursat(&quintuple).map_err(SuiteAbort::from)?;
                if back != *u {
                    bad = Some(u.clone());
                    break;
                }
            }
            checks.push(match bad {
                None => Check::pass_note(name, format!("{} subgroups", subs.len())),
                Some(u) => Check::fail(
                    name,
                    format!("round-trip changed a subgroup of order {}", u.order()),
                ),
            });
        }
    }
    Ok(checks)
}

pub fn star_assoc(cfg: &RunConfig) -> SuiteResult {
    let alg = cfg.algebra(&[])?;
    let n = alg.len();
    let mut checks = Vec::new();

    let identity = alg.identity();
    let id_bad = (0..n).find(|&k| {
        let b = alg.basis_element(k);
        alg.multiply(&identity, &b) != b || alg.multiply(&b, &identity) != b
    });
    checks.push(match id_bad {
        None => Check::pass_note("identity-law", format!("{n} basis elements")),
        Some(k) => Check::fail("identity-law", basis_label(&alg, k)),
    });

    let assoc_ok = |i: usize, j: usize, k: usize| -> bool {
        let lhs = alg
            .structure(i, j)
            .and_then(|(m, c)| alg.structure(m, k).map(|(t, d)| (t, &c * &d)));
        let rhs = alg
            .structure(j, k)
            .and_then(|(m, c)| alg.structure(i, m).map(|(t, d)| (t, &d * &c)));
        match (lhs, rhs) {
            (None, None) => true,
            (Some((a, x)), Some((b, y))) => a == b && x == y,
            _ => false,
        }
    };
    if n <= EXHAUSTIVE_TRIPLE_LIMIT {
        let mut bad = None;
        'outer: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !assoc_ok(i, j, k) {
                        bad = Some((i, j, k));
                        break 'outer;
                    }
                }
            }
        }
        checks.push(assoc_check(&alg, bad, format!("{} triples, exhaustive", n * n * n)));
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut bad = None;
        for _ in 0..SAMPLED_TRIPLES {
            let (i, j, k) = (
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
            );
            if !assoc_ok(i, j, k) {
                bad = Some((i, j, k));
                break;
            }
        }
        checks.push(assoc_check(&alg, bad, format!("{SAMPLED_TRIPLES} sampled triples")));
    }

    let os = orbit_sums(&alg);
    let (pairs, failures) = orbit_closure_check(&alg, &os);
    checks.push(if failures.is_empty() {
        Check::pass_note(
            "orbit-closure",
            format!("{} orbits, {pairs} pairs", os.sums.len()),
        )
    } else {
        Check::fail(
            "orbit-closure",
            format!("orbit pair {:?} is not an orbit combination", failures[0]),
        )
    });

    let mut rep_pairs: Vec<(usize, usize)> = Vec::new();
    for &a in &os.reps {
        for &b in &os.reps {
            if alg.entry(a).tgt == alg.entry(b).src {
                rep_pairs.push((a, b));
            }
        }
    }
    let sampled = rep_pairs.len() > EXHAUSTIVE_ORACLE_LIMIT;
    if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut picks = Vec::with_capacity(EXHAUSTIVE_ORACLE_LIMIT);
        for _ in 0..EXHAUSTIVE_ORACLE_LIMIT {
            picks.push(rep_pairs[rng.random_range(0..rep_pairs.len())]);
        }
        rep_pairs = picks;
    }
    let mut oracle_bad = None;
    for &(a, b) in &rep_pairs {
        let sa = conjugation_sum(&alg, a);
        let sb = conjugation_sum(&alg, b);
        let product = alg.multiply(&sa, &sb);
        let oracle = biset_composition_oracle(&alg, a, b).map_err(SuiteAbort::from)?;
        if product != oracle {
            oracle_bad = Some((a, b));
            break;
        }
    }
    checks.push(match oracle_bad {
        None => Check::pass_note(
            "double-coset-oracle",
            format!(
                "{} conjugation-sum pairs{}",
                rep_pairs.len(),
                if sampled { ", sampled" } else { "" }
            ),
        ),
        Some((a, b)) => Check::fail(
            "double-coset-oracle",
            format!(
                "oracle disagrees on {} · {}",
                basis_label(&alg, a),
                basis_label(&alg, b)
            ),
        ),
    });

    Ok(checks)
}

fn assoc_check(alg: &DeformedAlgebra, bad: Option<(usize, usize, usize)>, note: String) -> Check {
    match bad {
        None => Check::pass_note("associativity", note),
        Some((i, j, k)) => Check::fail(
            "associativity",
            format!(
                "({}) · ({}) · ({})",
                basis_label(alg, i),
                basis_label(alg, j),
                basis_label(alg, k)
            ),
        ),
    }
}

pub fn thorax_monotone(cfg: &RunConfig) -> SuiteResult {
    let alg = cfg.algebra(&[])?;
    let (pairs, violations) = alg.thorax_monotonicity().map_err(SuiteAbort::from)?;
    Ok(vec![if violations.is_empty() {
        Check::pass_note("thorax-descends", format!("{pairs} related pairs"))
    } else {
        let (i, j) = violations[0];
        Check::fail(
            "thorax-descends",
            format!(
                "thorax grows in {} · {}",
                basis_label(&alg, i),
                basis_label(&alg, j)
            ),
        )
    }])
}

struct StarCase {
    fg: Product,
    gg: Product,
    us: Vec<Subgroup>,
    right_subs: Vec<Subgroup>,
}

fn star_cases(groups: &[Group]) -> Result<Vec<StarCase>, SuiteAbort> {
    let mut out = Vec::new();
    for f in groups {
        for g in groups {
            let fg = Product::new(f, g);
            if fg.group().order() > ENUMERATION_BOUND {
                return Err(SuiteAbort::Skip(format!(
                    "product order {} exceeds the enumeration bound {ENUMERATION_BOUND}",
                    fg.group().order()
                )));
            }
            let gg = Product::new(g, g);
            let us = subgroups(fg.group(), ENUMERATION_BOUND).map_err(SuiteAbort::from)?;
            let right_subs = subgroups(g, ENUMERATION_BOUND).map_err(SuiteAbort::from)?;
            out.push(StarCase {
                fg,
                gg,
                us,
                right_subs,
            });
        }
    }
    Ok(out)
}

/// Runs `verify` over all (U, M, K) tuples of every product, or over a seeded
/// sample when the space is large; returns (checked, note, first failure).
fn over_tuples(
    cases: &[StarCase],
    seed: u64,
    mut verify: impl FnMut(&StarCase, &Subgroup, &Subgroup, &Subgroup) -> bool,
) -> (usize, String, Option<String>) {
    let total: usize = cases
        .iter()
        .map(|c| c.us.len() * c.right_subs.len() * c.right_subs.len())
        .sum();
    let describe = |case: &StarCase, u: &Subgroup, m: &Subgroup, k: &Subgroup| {
        format!(
            "U of order {} in {}x{}, M of order {}, K of order {}",
            u.order(),
            case.fg.left().label(),
            case.fg.right().label(),
            m.order(),
            k.order()
        )
    };
    if total <= EXHAUSTIVE_TUPLE_LIMIT {
        for case in cases {
            for u in &case.us {
                for m in &case.right_subs {
                    for k in &case.right_subs {
                        if !verify(case, u, m, k) {
                            return (total, String::new(), Some(describe(case, u, m, k)));
                        }
                    }
                }
            }
        }
        (total, format!("{total} tuples, exhaustive"), None)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLED_TUPLES {
            let case = &cases[rng.random_range(0..cases.len())];
            let u = &case.us[rng.random_range(0..case.us.len())];
            let m = &case.right_subs[rng.random_range(0..case.right_subs.len())];
            let k = &case.right_subs[rng.random_range(0..case.right_subs.len())];
            if !verify(case, u, m, k) {
                return (SAMPLED_TUPLES, String::new(), Some(describe(case, u, m, k)));
            }
        }
        (
            SAMPLED_TUPLES,
            format!("{SAMPLED_TUPLES} sampled tuples"),
            None,
        )
    }
}

pub fn projection_index(cfg: &RunConfig) -> SuiteResult {
    let cases = star_cases(&cfg.groups)?;
    let mut error = None;
    let (_, note, bad) = over_tuples(&cases, cfg.seed, |case, u, m, k| {
        let mk = case.gg.sub_product(m, k);
        let w = match star(&case.fg, &case.gg, &case.fg, u, &mk) {
            Ok(w) => w,
            Err(e) => {
                error = Some(e);
                return false;
            }
        };
        let (p1w, _, _, _) = match case.fg.projections_kernels(&w) {
            Ok(t) => t,
            Err(e) => {
                error = Some(e);
                return false;
            }
        };
        let (_, k1u, p2u, k2u) = match case.fg.projections_kernels(u) {
            Ok(t) => t,
            Err(e) => {
                error = Some(e);
                return false;
            }
        };
        // |p1(U∗(M×K))| / |k1(U)| = |p2(U)∩M| / |k2(U)∩M|, cross-multiplied.
        p1w.order() as u64 * k2u.intersect(m).order() as u64
            == p2u.intersect(m).order() as u64 * k1u.order() as u64
    });
    if let Some(e) = error {
        return Err(SuiteAbort::Fail(e.to_string()));
    }
    Ok(vec![match bad {
        None => Check::pass_note("projection-index-ratio", note),
        Some(w) => Check::fail("projection-index-ratio", w),
    }])
}

pub fn kernel_step(cfg: &RunConfig) -> SuiteResult {
    let cases = star_cases(&cfg.groups)?;
    let mut checked = 0usize;
    let mut bad = None;
    'outer: for case in &cases {
        let trivial = Subgroup::trivial(case.fg.right());
        for u in &case.us {
            let (_, _, _, k2u) = case
                .fg
                .projections_kernels(u)
                .map_err(SuiteAbort::from)?;
            for m in &case.right_subs {
                for n in &case.right_subs {
                    if !m.le(n) || !is_prime(n.order() / m.order()) {
                        continue;
                    }
                    checked += 1;
                    let wm = star(
                        &case.fg,
                        &case.gg,
                        &case.fg,
                        u,
                        &case.gg.sub_product(m, &trivial),
                    )
                    .map_err(SuiteAbort::from)?;
                    let wn = star(
                        &case.fg,
                        &case.gg,
                        &case.fg,
                        u,
                        &case.gg.sub_product(n, &trivial),
                    )
                    .map_err(SuiteAbort::from)?;
                    let (pm, _, _, _) = case.fg.projections_kernels(&wm).map_err(SuiteAbort::from)?;
                    let (pn, _, _, _) = case.fg.projections_kernels(&wn).map_err(SuiteAbort::from)?;
                    let proper = pm.le(&pn) && pm.order() < pn.order();
                    if proper && k2u.intersect(m) != k2u.intersect(n) {
                        bad = Some(format!(
                            "U of order {} with M of order {} < N of order {}",
                            u.order(),
                            m.order(),
                            n.order()
                        ));
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(vec![match bad {
        None => Check::pass_note("kernel-stabilizes", format!("{checked} prime steps")),
        Some(w) => Check::fail("kernel-stabilizes", w),
    }])
}

pub fn character_count(cfg: &RunConfig) -> SuiteResult {
    if let Some(g) = cfg.groups.iter().find(|g| !g.is_abelian()) {
        return Err(SuiteAbort::Skip(format!(
            "needs abelian groups, {} is not",
            g.label()
        )));
    }
    let cases = star_cases(&cfg.groups)?;
    let pi = &cfg.pi;
    let mut error = None;
    let (_, note, bad) = over_tuples(&cases, cfg.seed, |case, u, m, n| {
        let mn = case.gg.sub_product(m, n);
        let w = match star(&case.fg, &case.gg, &case.fg, u, &mn) {
            Ok(w) => w,
            Err(e) => {
                error = Some(e);
                return false;
            }
        };
        let (p1w, _, _, _) = match case.fg.projections_kernels(&w) {
            Ok(t) => t,
            Err(e) => {
                error = Some(e);
                return false;
            }
        };
        let (_, k1u, p2u, k2u) = match case.fg.projections_kernels(u) {
            Ok(t) => t,
            Err(e) => {
                error = Some(e);
                return false;
            }
        };
        let chars = character_group(&p1w, pi).len() as u64;
        chars * pi.pi_part(k2u.intersect(m).order() as u64)
            == pi.pi_part(p2u.intersect(m).order() as u64)
                * pi.pi_part(k1u.order() as u64)
    });
    if let Some(e) = error {
        return Err(SuiteAbort::Fail(e.to_string()));
    }
    Ok(vec![match bad {
        None => Check::pass_note("character-count", note),
        Some(w) => Check::fail("character-count", w),
    }])
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}
