//! Acceptance gate: each test certifies one headline claim end to end and
//! prints a single PASS line with its measured numbers. Time budgets are
//! asserted so a regression in the exact arithmetic shows up as a failure
//! here rather than as a silently slower binary.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subchar_algebra::{DeformationMap, DeformedAlgebra};
use subchar_groups::{character_group, subgroups, Group, PiClass};
use subchar_modules::{
    action_case_tuples, axis_pairing_matrix, center_dimension, check_action_case,
    diagonal_block_audit, eigenvector_audit, is_module_isomorphism, left_axis_module,
    nilpotent_ideal_audit, prime_cyclic_blocks, thorax_submodule, trace_form_verdict,
    twisted_axis_module, Span, Verdict,
};
use subchar_scalars::Scalar;

fn algebra(spec: &str, pi: &[u32], ell: &str, extra_root_orders: &[u32]) -> DeformedAlgebra {
    let group = if spec.eq_ignore_ascii_case("s3") {
        Group::symmetric_3()
    } else {
        Group::parse_spec(spec).expect("group spec parses")
    };
    let pi = PiClass::new(pi.iter().copied()).expect("primes");
    let lmap = match ell {
        "id" => DeformationMap::identity(),
        "indet" => DeformationMap::indeterminates(),
        other => DeformationMap::parse(other).expect("deformation spec parses"),
    };
    DeformedAlgebra::new(&[group], &pi, &lmap, extra_root_orders).expect("algebra builds")
}

fn within(budget: Duration, start: Instant, what: &str) {
    let took = start.elapsed();
    assert!(took <= budget, "{what} took {took:?}, budget {budget:?}");
}

#[test]
fn criterion_01_order_three_trace_rank_dichotomy() {
    let mut generic_rank = 0;
    let mut critical_rank = 0;
    for (ell, semisimple) in [("3=1", true), ("3=4", true), ("indet", true), ("3=3", false)] {
        let start = Instant::now();
        let alg = algebra("C3", &[3], ell, &[]);
        assert_eq!(alg.len(), 22);
        let audit = trace_form_verdict(&alg).expect("prime cyclic algebra");
        if semisimple {
            assert_eq!(audit.gram_rank, 22, "full trace rank at {ell}");
            assert_eq!(audit.verdict, Verdict::Semisimple);
            generic_rank = audit.gram_rank;
        } else {
            assert!(audit.gram_rank < 22, "trace rank must drop at {ell}");
            assert_eq!(audit.verdict, Verdict::NotSemisimple);
            critical_rank = audit.gram_rank;
        }
        within(Duration::from_secs(5), start, ell);
    }
    println!(
        "PASS criterion 1: trace rank {generic_rank}/22 at invertible deformations, \
         {critical_rank}/22 at the critical value 3"
    );
}

#[test]
fn criterion_02_order_three_block_decomposition() {
    let start = Instant::now();
    let alg = algebra("C3", &[3], "indet", &[2]);
    let cert = prime_cyclic_blocks(&alg).expect("prime cyclic algebra");
    assert_eq!(cert.block_dims, vec![4, 2, 1, 1]);
    let sum_sq: usize = cert.block_dims.iter().map(|d| d * d).sum();
    assert_eq!(sum_sq, alg.len());
    assert!(cert.saturated);
    assert!(cert.axis_simple);
    assert_eq!(cert.reduced_simple, Some(true));
    assert!(cert.lines_invariant && cert.lines_distinct);
    assert_eq!(center_dimension(&alg).expect("center"), 4);
    within(Duration::from_secs(10), start, "order-3 block audit");
    println!("PASS criterion 2: blocks 4,2,1,1 with 16+4+1+1 = 22 and center dimension 4");
}

#[test]
fn criterion_03_order_five_blocks_and_dichotomy() {
    let start = Instant::now();
    let alg = algebra("C5", &[5], "indet", &[4]);
    assert_eq!(alg.len(), 56);
    let cert = prime_cyclic_blocks(&alg).expect("prime cyclic algebra");
    assert_eq!(cert.block_dims, vec![6, 4, 1, 1, 1, 1]);
    let sum_sq: usize = cert.block_dims.iter().map(|d| d * d).sum();
    assert_eq!(sum_sq, 56);
    assert!(cert.saturated && cert.axis_simple && cert.lines_invariant && cert.lines_distinct);
    assert_eq!(
        trace_form_verdict(&alg).expect("verdict").verdict,
        Verdict::Semisimple
    );

    let critical = algebra("C5", &[5], "5=5", &[]);
    assert_eq!(
        trace_form_verdict(&critical).expect("verdict").verdict,
        Verdict::NotSemisimple
    );
    within(Duration::from_secs(120), start, "order-5 audit");
    println!("PASS criterion 3: 56 = 36+16+4 as blocks 6,4,1,1,1,1, semisimple iff the deformation avoids 5");
}

#[test]
fn criterion_04_nilpotent_ideals_at_the_identity_deformation() {
    let start = Instant::now();
    let mut lines = Vec::new();
    for (spec, pi) in [
        ("C2", vec![2u32]),
        ("C3", vec![3]),
        ("C2xC2", vec![2]),
        ("C4", vec![2]),
    ] {
        let alg = algebra(spec, &pi, "id", &[]);
        let report = nilpotent_ideal_audit(&alg).expect("identity deformation");
        assert!(report.all_nonzero, "{spec}: a generator vanished");
        assert!(report.left_closed, "{spec}: the span is not a left ideal");
        assert!(report.square_is_zero, "{spec}: the ideal does not square to zero");
        assert!(report.trace_degenerate, "{spec}: the trace form sees the ideal");
        assert!(report.span_dim >= 1);
        lines.push(format!(
            "{spec} {} generators/dim {}",
            report.generator_count, report.span_dim
        ));
        match spec {
            "C2" => assert_eq!(report.generator_count, 1),
            "C4" => assert_eq!(report.generator_count, 8),
            "C2xC2" => {
                assert_eq!(report.generator_count, 72);
                assert_eq!(report.span_dim, 28);
            }
            _ => {}
        }
    }
    within(Duration::from_secs(60), start, "nilpotent ideal audits");
    println!("PASS criterion 4: nilpotent left ideals at the identity deformation ({})", lines.join("; "));
}

#[test]
fn criterion_05_direct_factor_action_formula() {
    let start = Instant::now();
    let mut lines = Vec::new();
    for (spec, pi, expected) in [("C2", vec![2u32], 88), ("C3", vec![3], 220)] {
        let alg = algebra(spec, &pi, "indet", &[]);
        let cases = action_case_tuples(&alg).expect("single-group algebra");
        assert_eq!(cases.len(), expected, "{spec} case count");
        for case in &cases {
            let report = check_action_case(&alg, case).expect("case evaluates");
            assert!(report.all_ok(), "{spec}: case {} fails", case.label());
        }
        lines.push(format!("{spec} all {expected}"));
    }
    for (spec, pi) in [("C2xC2", vec![2u32]), ("C6", vec![2, 3])] {
        let alg = algebra(spec, &pi, "indet", &[]);
        let cases = action_case_tuples(&alg).expect("single-group algebra");
        assert!(cases.len() > 100);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..120 {
            let case = &cases[rng.random_range(0..cases.len())];
            let report = check_action_case(&alg, case).expect("case evaluates");
            assert!(report.all_ok(), "{spec}: case {} fails", case.label());
        }
        lines.push(format!("{spec} 120 of {}", cases.len()));
    }
    within(Duration::from_secs(60), start, "action formula cases");
    println!("PASS criterion 5: closed-form action verified ({})", lines.join("; "));
}

#[test]
fn criterion_06_symmetric_group_axis_module() {
    let start = Instant::now();
    let alg = algebra("S3", &[3], "indet", &[]);
    let pairing = axis_pairing_matrix(&alg).expect("single-group algebra");
    assert!(pairing.entries_match_products);
    let n = pairing.matrix.rows();
    assert_eq!(n, 8);
    assert!(
        pairing.matrix.rank_at_least(n),
        "the axis pairing determinant vanishes identically"
    );
    let axis = left_axis_module(&alg).expect("axis module");
    assert_eq!(axis.dim(), 8);
    assert!(axis.identity_acts_as_identity(&alg));
    assert!(axis.absolutely_simple(&alg), "operators span less than 64");
    within(Duration::from_secs(120), start, "symmetric group axis module");
    println!("PASS criterion 6: S3 axis module of dim 8 with nonsingular pairing and operator span 64");
}

#[test]
fn criterion_07_twisted_copies_tile_the_trivial_thorax() {
    let alg = algebra("C3", &[3], "indet", &[]);
    let axis = left_axis_module(&alg).expect("axis module");
    let n = axis.dim();
    assert_eq!(n, 4);
    let s1 = thorax_submodule(&alg, &Group::cyclic(1)).expect("trivial-thorax span is closed");
    assert_eq!(s1.dim(), n * n);

    let g = alg.groups()[0].clone();
    let mut copies = 0;
    let mut union = Span::new();
    for e in subgroups(&g, 64).expect("small group") {
        let characters = character_group(&e, alg.pi()).len();
        for t in 0..characters {
            let omega = Scalar::root_of_unity(alg.ctx(), characters as u32, t as i64)
                .expect("character order divides the conductor");
            let twisted = twisted_axis_module(&alg, &e, &omega).expect("twisted copy closed");
            assert_eq!(twisted.dim(), n);
            assert!(
                is_module_isomorphism(&alg, &axis, &twisted, twisted.basis()),
                "copy over order {} twist {t} is not isomorphic",
                e.order()
            );
            for v in twisted.basis() {
                union.insert(v);
            }
            copies += 1;
        }
    }
    assert_eq!(copies, 4);
    assert_eq!(union.dim(), n * n);
    println!("PASS criterion 7: the 16-dim trivial-thorax module is 4 isomorphic copies of the dim-4 axis module");
}

#[test]
fn criterion_08_holomorph_diagonal_blocks() {
    for q in [3u32, 5] {
        let alg = algebra(&format!("C{q}"), &[q], "indet", &[q - 1]);
        let report = diagonal_block_audit(&alg).expect("prime cyclic algebra");
        let order = u64::from(q) * u64::from(q - 1);
        assert_eq!(report.group_order, order);
        assert!(report.is_group_basis, "q={q}: diagonal products leave the basis");
        assert!(report.relations_hold, "q={q}: presentation fails");
        assert!(report.exhausts, "q={q}: generators miss part of the diagonal");
        let table = report.table.as_ref().expect("holomorph table at full fibre class");
        let mut degrees = table.degrees.clone();
        degrees.sort_unstable();
        let mut expected = vec![1u32; (q - 1) as usize];
        expected.push(q - 1);
        assert_eq!(degrees, expected, "q={q}: character degrees");
        assert_eq!(table.centralizer_orders[0], order);
        assert!(table.centralizer_orders.contains(&u64::from(q)));
        assert!(table.row_orthogonality, "q={q}: rows are not orthogonal");
        assert_eq!(report.matrix_block_simple, Some(true));
        assert_eq!(report.line_count, (q - 1) as usize);
        assert!(report.lines_ok, "q={q}: a line is not invariant");
        assert!(report.saturated, "q={q}: (q-1)^2 + (q-1) misses the span");
        println!("PASS criterion 8 (q={q}): holomorph of order {order} splits as a matrix block plus {} lines", q - 1);
    }
}

#[test]
fn criterion_09_evaluation_eigenvectors() {
    for q in [3u32, 5] {
        let alg = algebra(&format!("C{q}"), &[q], "indet", &[q - 1]);
        let report = eigenvector_audit(&alg).expect("prime cyclic algebra");
        assert!(report.eigen_moves, "q={q}: an eigen identity fails");
        assert!(report.projector_annihilated && report.projector_eigen, "q={q}: projectors misbehave");
        assert!(report.fixed_line_ok, "q={q}: the fixed line moves");
        assert!(report.reduced_moves, "q={q}: a reduced eigen identity fails");
        assert!(report.absorption_ok && report.sums_fixed, "q={q}: absorption fails");
        assert!(report.dimension_count, "q={q}: the closing count misses the basis size");
        let rho = u64::from(q);
        let predicted = (rho + 1).pow(2) + u64::from(q - 1) + (rho - 1).pow(2);
        assert_eq!(predicted as usize, alg.len());
        println!("PASS criterion 9 (q={q}): eigen identities hold and ({rho}+1)^2 + {} + ({rho}-1)^2 = {}", q - 1, alg.len());
    }
}

#[test]
fn criterion_10_foundations_suites() {
    let start = Instant::now();
    let runs: [(&str, &[&str]); 3] = [
        ("C6 exhaustive", &["check", "--group", "C6", "--suites", "goursat,cor-4.1,lemma-2.3,lemma-4.6,prop-2.2"]),
        ("C3 exhaustive", &["check", "--group", "C3", "--pi", "3", "--suites", "star-assoc,cor-4.1,lemma-2.3,lemma-4.6,prop-2.2"]),
        ("S3 sampled", &["check", "--group", "S3", "--pi", "3", "--suites", "goursat,star-assoc,lemma-2.3,lemma-4.6,prop-2.2"]),
    ];
    for (what, args) in runs {
        let out = Command::new(env!("CARGO_BIN_EXE_subchar"))
            .args(args)
            .output()
            .expect("the binary runs");
        let text = String::from_utf8_lossy(&out.stdout).into_owned();
        assert_eq!(out.status.code(), Some(0), "{what} exited nonzero:\n{text}");
        assert!(!text.contains("FAIL"), "{what} reported a failure:\n{text}");
        assert!(!text.contains("SKIP"), "{what} skipped a suite:\n{text}");
        match what {
            "C3 exhaustive" => assert!(text.contains("exhaustive"), "got:\n{text}"),
            "S3 sampled" => assert!(text.contains("sampled"), "got:\n{text}"),
            _ => {}
        }
    }
    within(Duration::from_secs(180), start, "foundations suites");
    println!("PASS criterion 10: foundations suites green on C6, C3 (exhaustive) and S3 (sampled)");
}

#[test]
fn criterion_11_empty_fibre_class_dichotomy() {
    let mut dims = 0;
    for (ell, semisimple) in [("3=2", true), ("indet", true), ("3=1", false)] {
        let alg = algebra("C3", &[], ell, &[]);
        assert_eq!(alg.len(), 6);
        let audit = trace_form_verdict(&alg).expect("prime cyclic algebra");
        let expected = if semisimple {
            Verdict::Semisimple
        } else {
            Verdict::NotSemisimple
        };
        assert_eq!(audit.verdict, expected, "at {ell}");
        dims = alg.len();
    }
    println!("PASS criterion 11: the {dims}-dim empty-class algebra is semisimple exactly away from 1");
}
