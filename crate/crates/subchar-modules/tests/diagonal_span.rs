//! The twisted-diagonal span: a copy of K[Hol(C_q)] when q ∈ π, with its
//! character table, full matrix block, and q−1 lines; a copy of K[C_{q−1}]
//! when q ∉ π.

use subchar_algebra::{DeformationMap, DeformedAlgebra};
use subchar_groups::{Group, PiClass};
use subchar_modules::{diagonal_block_audit, holomorph_character_table};

fn cyclic_algebra(q: u32, pi_primes: &[u32], l: &str) -> DeformedAlgebra {
    DeformedAlgebra::new(
        &[Group::cyclic(q)],
        &PiClass::new(pi_primes.iter().copied()).unwrap(),
        &DeformationMap::parse(l).unwrap(),
        &[q - 1],
    )
    .unwrap()
}

fn assert_holomorph_audit(q: u32) {
    let alg = cyclic_algebra(q, &[q], "indet");
    let report = diagonal_block_audit(&alg).unwrap();
    let n = q as usize;
    assert_eq!(report.span_dim, n * (n - 1));
    assert_eq!(report.group_order, (n * (n - 1)) as u64);
    assert!(report.is_group_basis);
    assert!(report.relations_hold);
    assert!(report.exhausts);
    assert!(!report.cyclic_quotient);

    let table = report.table.expect("the holomorph table is attached");
    assert!(table.row_orthogonality);
    let mut degrees = table.degrees.clone();
    degrees.sort_unstable();
    let mut expected = vec![1; n - 1];
    expected.push(q - 1);
    expected.sort_unstable();
    assert_eq!(degrees, expected);
    assert_eq!(table.centralizer_orders[0], (n * (n - 1)) as u64);
    assert_eq!(table.centralizer_orders[1], q as u64);
    assert!(table.centralizer_orders[2..].iter().all(|&c| c == (q - 1) as u64));

    assert_eq!(report.matrix_block_simple, Some(true));
    assert_eq!(report.line_count, n - 1);
    assert!(report.lines_ok);
    // (q−1)² from the matrix block plus q−1 lines saturate q(q−1).
    assert!(report.saturated);
}

#[test]
fn three_element_group_diagonals_form_the_holomorph() {
    assert_holomorph_audit(3);
}

#[test]
fn five_element_group_diagonals_form_the_holomorph() {
    assert_holomorph_audit(5);
}

#[test]
fn empty_pi_class_leaves_a_cyclic_group_algebra() {
    for q in [3u32, 5] {
        let alg = cyclic_algebra(q, &[], "indet");
        let report = diagonal_block_audit(&alg).unwrap();
        let n = q as usize;
        assert_eq!(report.span_dim, n - 1);
        assert_eq!(report.group_order, (n - 1) as u64);
        assert!(report.is_group_basis);
        assert!(report.relations_hold);
        assert!(report.exhausts);
        assert!(report.cyclic_quotient);
        assert!(report.table.is_none());
        assert_eq!(report.line_count, n - 1);
        assert!(report.lines_ok);
        assert!(report.saturated);
    }
}

#[test]
fn character_table_is_internally_orthogonal_for_larger_primes() {
    // The table construction is independent of any algebra; check it keeps
    // its orthogonality for the next two primes as well.
    for q in [7u32, 11] {
        let ctx = subchar_scalars::FieldCtx::new(q - 1, &[]);
        let table = holomorph_character_table(q, &ctx).unwrap();
        assert!(table.row_orthogonality);
        assert_eq!(table.class_sizes.iter().sum::<u64>(), u64::from(q) * u64::from(q - 1));
    }
}
