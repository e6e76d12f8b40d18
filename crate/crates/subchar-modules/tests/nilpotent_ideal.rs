//! The square-zero left ideal of an abelian group at the identity
//! deformation: generator counts, the explicit two-element generator, and
//! the full audit (nonzero generators, left closure, vanishing square,
//! degenerate trace pairing).

use num::BigInt;
use subchar_algebra::{DeformationMap, DeformedAlgebra};
use subchar_groups::{prime_divisors, Group, PiClass, Subgroup};
use subchar_modules::{
    character_sum, nilpotent_ideal_audit, radical_generators, ModuleError,
};
use subchar_scalars::{Rational, Scalar};

fn identity_algebra(g: Group) -> DeformedAlgebra {
    let pi = PiClass::new(prime_divisors(g.order() as u64)).unwrap();
    DeformedAlgebra::new(&[g], &pi, &DeformationMap::identity(), &[]).unwrap()
}

#[test]
fn two_element_group_has_the_classical_generator() {
    let alg = identity_algebra(Group::cyclic(2));
    let gens = radical_generators(&alg).unwrap();
    assert_eq!(gens.len(), 1);

    let g = alg.groups()[0].clone();
    let (full, triv) = (Subgroup::full(&g), Subgroup::trivial(&g));
    let half = Scalar::from_rational(alg.ctx(), Rational::new(1.into(), 2.into()));
    let quarter = Scalar::from_rational(alg.ctx(), Rational::new(1.into(), BigInt::from(4)));
    let expected = &(&character_sum(&alg, 0, 0, &triv, &triv).into_value()
        - &(&character_sum(&alg, 0, 0, &triv, &full).into_value()
            + &character_sum(&alg, 0, 0, &full, &triv).into_value())
            .scale(&half))
        + &character_sum(&alg, 0, 0, &full, &full)
            .into_value()
            .scale(&quarter);
    assert_eq!(*gens[0].value(), expected);
}

#[test]
fn generator_counts_follow_the_subgroup_lattice() {
    assert_eq!(
        radical_generators(&identity_algebra(Group::cyclic(2)))
            .unwrap()
            .len(),
        1
    );
    assert_eq!(
        radical_generators(&identity_algebra(Group::cyclic(4)))
            .unwrap()
            .len(),
        8
    );
    assert_eq!(
        radical_generators(&identity_algebra(Group::abelian(&[2, 2])))
            .unwrap()
            .len(),
        72
    );
}

#[test]
fn audits_pass_for_the_small_cyclic_groups() {
    for g in [Group::cyclic(2), Group::cyclic(3), Group::cyclic(4)] {
        let label = g.label().to_string();
        let alg = identity_algebra(g);
        let report = nilpotent_ideal_audit(&alg).unwrap();
        assert!(report.all_nonzero, "{label}");
        assert!(report.span_dim >= 1, "{label}");
        assert!(report.left_closed, "{label}");
        assert!(report.square_is_zero, "{label}");
        assert!(report.trace_degenerate, "{label}");
    }
}

#[test]
fn audit_requires_the_identity_deformation() {
    let alg = DeformedAlgebra::new(
        &[Group::cyclic(2)],
        &PiClass::new([2]).unwrap(),
        &DeformationMap::parse("2=3").unwrap(),
        &[],
    )
    .unwrap();
    assert!(matches!(
        nilpotent_ideal_audit(&alg),
        Err(ModuleError::HypothesisViolated(_))
    ));
}

#[test]
fn audit_requires_an_abelian_group() {
    let alg = DeformedAlgebra::new(
        &[Group::symmetric_3()],
        &PiClass::new([2, 3]).unwrap(),
        &DeformationMap::identity(),
        &[],
    )
    .unwrap();
    assert!(matches!(
        nilpotent_ideal_audit(&alg),
        Err(ModuleError::HypothesisViolated(_))
    ));
}
