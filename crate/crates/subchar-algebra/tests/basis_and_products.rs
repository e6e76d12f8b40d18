//! Basis enumeration counts, the identity law, associativity, and the
//! closed-form product rules on cyclic groups: the twisted-diagonal block is
//! an affine group, direct-product subgroups absorb diagonals, and the full
//! subgroup composes with itself through an ℓ-scalar.

use subchar_algebra::{AlgebraElement, DeformationMap, DeformedAlgebra};
use subchar_groups::{Character, Group, PiClass, Subgroup};
use subchar_scalars::Scalar;

fn cyclic_algebra(q: u32, pi_primes: &[u32], l: &str) -> DeformedAlgebra {
    DeformedAlgebra::new(
        &[Group::cyclic(q)],
        &PiClass::new(pi_primes.iter().copied()).unwrap(),
        &DeformationMap::parse(l).unwrap(),
        &[],
    )
    .unwrap()
}

/// Index of the twisted diagonal Δ(i) = {(x, ix)} with character x ↦ ζ^{jx}.
fn delta(alg: &DeformedAlgebra, q: u32, i: u32, j: u32) -> usize {
    let prod = alg.product(0, 0);
    let sigma: Vec<u16> = (0..q).map(|x| ((i * x) % q) as u16).collect();
    let sub = prod.graph(&sigma);
    let exps: Vec<u32> = (0..q).map(|x| (j * x) % q).collect();
    let chi = Character::from_exps(&sub, alg.pi(), exps).unwrap();
    alg.find(0, 0, &sub, &chi).unwrap()
}

/// Index of C_q×C_q with character (x,y) ↦ ζ^{rx+sy}.
fn full(alg: &DeformedAlgebra, q: u32, r: u32, s: u32) -> usize {
    let sub = Subgroup::full(alg.product(0, 0).group());
    let exps: Vec<u32> = (0..q * q).map(|t| (r * (t / q) + s * (t % q)) % q).collect();
    let chi = Character::from_exps(&sub, alg.pi(), exps).unwrap();
    alg.find(0, 0, &sub, &chi).unwrap()
}

/// Index of C_q×1 (left = true) or 1×C_q with character exponent m.
fn axis(alg: &DeformedAlgebra, q: u32, left: bool, m: u32) -> usize {
    let prod = alg.product(0, 0);
    let g = prod.left().clone();
    let (a, b) = if left {
        (Subgroup::full(&g), Subgroup::trivial(&g))
    } else {
        (Subgroup::trivial(&g), Subgroup::full(&g))
    };
    let sub = prod.sub_product(&a, &b);
    let exps: Vec<u32> = (0..q).map(|x| (m * x) % q).collect();
    let chi = Character::from_exps(&sub, alg.pi(), exps).unwrap();
    alg.find(0, 0, &sub, &chi).unwrap()
}

fn expect_single(alg: &DeformedAlgebra, i: usize, j: usize) -> (usize, Scalar) {
    alg.structure(i, j).expect("product should be nonzero")
}

#[test]
fn basis_counts_for_the_small_benchmark_groups() {
    assert_eq!(cyclic_algebra(3, &[3], "indet").len(), 22);
    assert_eq!(cyclic_algebra(5, &[5], "indet").len(), 56);
    assert_eq!(cyclic_algebra(2, &[], "id").len(), 5);
    assert_eq!(cyclic_algebra(2, &[2], "indet").len(), 11);
    assert_eq!(cyclic_algebra(4, &[2], "indet").len(), 75);
    let klein = DeformedAlgebra::new(
        &[Group::abelian(&[2, 2])],
        &PiClass::new([2]).unwrap(),
        &DeformationMap::identity(),
        &[],
    )
    .unwrap();
    assert_eq!(klein.len(), 307);
}

#[test]
fn the_diagonal_with_trivial_character_is_a_two_sided_identity() {
    for alg in [
        cyclic_algebra(3, &[3], "indet"),
        DeformedAlgebra::new(
            &[Group::symmetric_3()],
            &PiClass::new([3]).unwrap(),
            &DeformationMap::indeterminates(),
            &[],
        )
        .unwrap(),
    ] {
        let id = alg.identity();
        for k in 0..alg.len() {
            let b = alg.basis_element(k);
            assert_eq!(alg.multiply(&id, &b), b);
            assert_eq!(alg.multiply(&b, &id), b);
        }
    }
}

#[test]
fn multiplication_is_associative() {
    let alg = cyclic_algebra(3, &[3], "indet");
    let basis: Vec<AlgebraElement> = (0..alg.len()).map(|k| alg.basis_element(k)).collect();
    for a in &basis {
        for b in &basis {
            let ab = alg.multiply(a, b);
            for c in &basis {
                assert_eq!(
                    alg.multiply(&ab, c),
                    alg.multiply(a, &alg.multiply(b, c))
                );
            }
        }
    }

    let s3 = DeformedAlgebra::new(
        &[Group::symmetric_3()],
        &PiClass::new([3]).unwrap(),
        &DeformationMap::indeterminates(),
        &[],
    )
    .unwrap();
    let n = s3.len();
    for t in 0..500usize {
        let (a, b, c) = (
            s3.basis_element(7 * t % n),
            s3.basis_element((11 * t + 3) % n),
            s3.basis_element((13 * t + 5) % n),
        );
        assert_eq!(
            s3.multiply(&s3.multiply(&a, &b), &c),
            s3.multiply(&a, &s3.multiply(&b, &c))
        );
    }
}

#[test]
fn twisted_diagonals_multiply_by_the_affine_rule() {
    for q in [3u32, 5] {
        let alg = cyclic_algebra(q, &[q], "indet");
        // s_{Δ(i),m}·s_{Δ(j),n} = s_{Δ(ij), m+ni} with scalar 1.
        for i in 1..q {
            for j in 1..q {
                for m in 0..q {
                    for n in 0..q {
                        let (k, c) = expect_single(&alg, delta(&alg, q, i, m), delta(&alg, q, j, n));
                        assert_eq!(k, delta(&alg, q, (i * j) % q, (m + n * i) % q));
                        assert!(c.is_one());
                    }
                }
            }
        }
    }
}

#[test]
fn generator_relations_of_the_diagonal_block() {
    // With f = s_{Δ(1),1} and g = s_{Δ(z),0} for a primitive root z:
    // f^q = 1, g^{q−1} = 1, and gfg⁻¹ = f^z.
    for (q, z) in [(3u32, 2u32), (5, 2)] {
        let alg = cyclic_algebra(q, &[q], "indet");
        let f = alg.basis_element(delta(&alg, q, 1, 1));
        let g = alg.basis_element(delta(&alg, q, z, 0));
        let one = alg.basis_element(delta(&alg, q, 1, 0));

        let pow = |x: &subchar_algebra::AlgebraElement, e: u32| {
            let mut acc = one.clone();
            for _ in 0..e {
                acc = alg.multiply(&acc, x);
            }
            acc
        };
        assert_eq!(pow(&f, q), one);
        assert_eq!(pow(&g, q - 1), one);
        // z^{q−2} is the inverse of z modulo q.
        let g_inv = alg.basis_element(delta(&alg, q, zpow(z, q - 2, q), 0));
        assert_eq!(alg.multiply(&g, &g_inv), one);
        let lhs = alg.multiply(&alg.multiply(&g, &f), &g_inv);
        assert_eq!(lhs, pow(&f, z));
    }
}

fn zpow(z: u32, e: u32, q: u32) -> u32 {
    let mut acc = 1u32;
    for _ in 0..e {
        acc = acc * z % q;
    }
    acc
}

#[test]
fn direct_product_blocks_absorb_and_compose_as_derived() {
    let q = 3u32;
    let alg = cyclic_algebra(q, &[q], "indet");
    let lambda = Scalar::indeterminate(alg.ctx(), q).unwrap();
    let inv = |a: u32| zpow(a, q - 2, q);

    for m in 0..q {
        for j in 1..q {
            for k in 0..q {
                // s_{C_q×1,m}·s_{Δ(j),k} = s_{C_q×1,m}.
                let (r, c) = expect_single(&alg, axis(&alg, q, true, m), delta(&alg, q, j, k));
                assert_eq!(r, axis(&alg, q, true, m));
                assert!(c.is_one());
            }
        }
    }

    // Full·full: related iff the middle exponents cancel; scalar ℓ(q).
    for n in 0..q {
        for r in 0..q {
            let lhs = full(&alg, q, 1, n);
            let rhs = full(&alg, q, r, 2);
            let prod = alg.structure(lhs, rhs);
            if (n + r) % q == 0 {
                let (k, c) = prod.unwrap();
                assert_eq!(k, full(&alg, q, 1, 2));
                assert_eq!(c, lambda);
            } else {
                assert!(prod.is_none());
            }
        }
    }

    // s_{C_q×1,m}·s_{full,(r,s)} = s_{full,(m,s)}.
    for m in 0..q {
        for s in 0..q {
            let (k, c) = expect_single(&alg, axis(&alg, q, true, m), full(&alg, q, 2, s));
            assert_eq!(k, full(&alg, q, m, s));
            assert!(c.is_one());
        }
    }

    // s_{full,(m,n)}·s_{Δ(j),k} = s_{full,(m,(n+k)j⁻¹)}.
    for n in 0..q {
        for j in 1..q {
            for k in 0..q {
                let (r, c) = expect_single(&alg, full(&alg, q, 1, n), delta(&alg, q, j, k));
                assert_eq!(r, full(&alg, q, 1, (n + k) * inv(j) % q));
                assert!(c.is_one());
            }
        }
    }

    // s_{Δ(m),n}·s_{full,(r,s)} = s_{full,(n+mr,s)}.
    for m in 1..q {
        for n in 0..q {
            for r in 0..q {
                let (k, c) = expect_single(&alg, delta(&alg, q, m, n), full(&alg, q, r, 1));
                assert_eq!(k, full(&alg, q, (n + m * r) % q, 1));
                assert!(c.is_one());
            }
        }
    }

    // s_{1×C_q,i}·s_{C_q×1,j} = ℓ(q)·s_{1×1} when j = −i, else zero.
    let trivial_idx = {
        let sub = Subgroup::trivial(alg.product(0, 0).group());
        let chi = Character::trivial(&sub, alg.pi());
        alg.find(0, 0, &sub, &chi).unwrap()
    };
    for i in 0..q {
        for j in 0..q {
            let prod = alg.structure(axis(&alg, q, false, i), axis(&alg, q, true, j));
            if (i + j) % q == 0 {
                let (k, c) = prod.unwrap();
                assert_eq!(k, trivial_idx);
                assert_eq!(c, lambda);
            } else {
                assert!(prod.is_none());
            }
        }
    }
}

#[test]
fn axis_subgroups_are_idempotent_when_kernels_miss() {
    // s_{C_2×1}·s_{C_2×1} = s_{C_2×1}: k₂(U)∩k₁(U) = 1∩C_2 = 1.
    let alg = cyclic_algebra(2, &[], "id");
    let k = axis(&alg, 2, true, 0);
    let (r, c) = expect_single(&alg, k, k);
    assert_eq!(r, k);
    assert!(c.is_one());
}

#[test]
fn thorax_filters_and_monotonicity() {
    let alg = cyclic_algebra(3, &[3], "indet");
    let trivial_group = Group::cyclic(1);
    let direct = alg.thorax_filter(&trivial_group).unwrap();
    assert_eq!(direct.len(), 16);
    for &k in &direct {
        // Thorax 1 means U = p1(U)×p2(U).
        let e = &alg.basis()[k];
        let prod = alg.product(e.src, e.tgt);
        let (p1, _, p2, _) = prod.projections_kernels(e.subcharacter.subgroup()).unwrap();
        assert_eq!(&prod.sub_product(&p1, &p2), e.subcharacter.subgroup());
    }
    assert_eq!(alg.thorax_filter(&Group::cyclic(3)).unwrap().len(), 22);

    let (checked, violations) = alg.thorax_monotonicity().unwrap();
    assert!(checked > 100);
    assert!(violations.is_empty());

    let s3 = DeformedAlgebra::new(
        &[Group::symmetric_3()],
        &PiClass::new([3]).unwrap(),
        &DeformationMap::indeterminates(),
        &[],
    )
    .unwrap();
    let (_, violations) = s3.thorax_monotonicity().unwrap();
    assert!(violations.is_empty());
}
