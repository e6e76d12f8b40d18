//! Distinguished vectors in the algebra: full character sums over direct
//! products, their slices and extension sums, and the eigenvectors attached
//! to the twisted diagonals of a prime cyclic group.

use subchar_algebra::{AlgebraElement, DeformedAlgebra};
use subchar_groups::character::{canonical_modulus, rebase};
use subchar_groups::{character_group, Character, Product, Subgroup};
use subchar_scalars::Scalar;

use crate::ModuleError;

/// A vector remembered together with the parameters that built it; the label
/// is what reports and witnesses print.
#[derive(Clone, Debug)]
pub struct SpecialVector {
    label: String,
    value: AlgebraElement,
}

impl SpecialVector {
    pub(crate) fn new(label: String, value: AlgebraElement) -> Self {
        SpecialVector { label, value }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn value(&self) -> &AlgebraElement {
        &self.value
    }

    pub fn into_value(self) -> AlgebraElement {
        self.value
    }
}

/// Whether ζ_{m1}^{e1} and ζ_{m2}^{e2} coincide.
pub(crate) fn same_value(e1: u32, m1: u32, e2: u32, m2: u32) -> bool {
    u64::from(e1) * u64::from(m2) == u64::from(e2) * u64::from(m1)
}

/// Whether χ on a subgroup of F×G restricts to φ along dom(φ)×1.
pub(crate) fn first_factor_matches(prod: &Product, chi: &Character, phi: &Character) -> bool {
    phi.domain().elements().iter().all(|&x| {
        same_value(
            chi.exp_at(prod.pair(x, 0)),
            chi.modulus(),
            phi.exp_at(x),
            phi.modulus(),
        )
    })
}

/// Whether χ restricts to ψ along 1×dom(ψ).
pub(crate) fn second_factor_matches(prod: &Product, chi: &Character, psi: &Character) -> bool {
    psi.domain().elements().iter().all(|&y| {
        same_value(
            chi.exp_at(prod.pair(0, y)),
            chi.modulus(),
            psi.exp_at(y),
            psi.modulus(),
        )
    })
}

/// The restriction of χ to M×1, read as a character of M.
pub(crate) fn first_factor_of(prod: &Product, chi: &Character, m: &Subgroup) -> Character {
    let modulus = canonical_modulus(m, chi.pi());
    let exps = m
        .elements()
        .iter()
        .map(|&x| rebase(chi.exp_at(prod.pair(x, 0)), chi.modulus(), modulus))
        .collect();
    Character::from_exps(m, chi.pi(), exps).expect("a factor of a character is a character")
}

/// The restriction of χ to 1×N, read as a character of N.
pub(crate) fn second_factor_of(prod: &Product, chi: &Character, n: &Subgroup) -> Character {
    let modulus = canonical_modulus(n, chi.pi());
    let exps = n
        .elements()
        .iter()
        .map(|&y| rebase(chi.exp_at(prod.pair(0, y)), chi.modulus(), modulus))
        .collect();
    Character::from_exps(n, chi.pi(), exps).expect("a factor of a character is a character")
}

fn set_label(sub: &Subgroup) -> String {
    let elems: Vec<String> = sub.elements().iter().map(u16::to_string).collect();
    format!("{{{}}}", elems.join(","))
}

fn exps_label(chi: &Character) -> String {
    let exps: Vec<String> = chi.exps().iter().map(u32::to_string).collect();
    format!("[{}]", exps.join(","))
}

/// S_{M×N}: the sum of all subcharacters supported on M×N.
pub fn character_sum(
    alg: &DeformedAlgebra,
    src: usize,
    tgt: usize,
    m: &Subgroup,
    n: &Subgroup,
) -> SpecialVector {
    let prod = alg.product(src, tgt);
    let mn = prod.sub_product(m, n);
    let mut value = AlgebraElement::zero();
    for chi in character_group(&mn, alg.pi()) {
        let k = alg
            .find(src, tgt, &mn, &chi)
            .expect("every subcharacter is a basis element");
        value.insert_add(k, Scalar::one(alg.ctx()));
    }
    SpecialVector {
        label: format!("S({}x{})", set_label(m), set_label(n)),
        value,
    }
}

/// (φ, S_{M×N}): the slice of S_{M×N} whose first factor is φ (with M the
/// domain of φ).
pub fn character_slice(
    alg: &DeformedAlgebra,
    src: usize,
    tgt: usize,
    phi: &Character,
    n: &Subgroup,
) -> SpecialVector {
    let prod = alg.product(src, tgt);
    let mn = prod.sub_product(phi.domain(), n);
    let mut value = AlgebraElement::zero();
    for chi in character_group(&mn, alg.pi()) {
        if !first_factor_matches(prod, &chi, phi) {
            continue;
        }
        let k = alg
            .find(src, tgt, &mn, &chi)
            .expect("every subcharacter is a basis element");
        value.insert_add(k, Scalar::one(alg.ctx()));
    }
    SpecialVector {
        label: format!(
            "S({}:{}x{})",
            set_label(phi.domain()),
            exps_label(phi),
            set_label(n)
        ),
        value,
    }
}

/// S^γ_{M×N}: the part of S_{M×N} whose first factor extends γ (for
/// γ ∈ K* with K ≤ M).
pub fn extension_sum(
    alg: &DeformedAlgebra,
    src: usize,
    tgt: usize,
    gamma: &Character,
    m: &Subgroup,
    n: &Subgroup,
) -> SpecialVector {
    assert!(
        gamma.domain().le(m),
        "the base character's domain must lie in the first factor"
    );
    let prod = alg.product(src, tgt);
    let mn = prod.sub_product(m, n);
    let mut value = AlgebraElement::zero();
    for chi in character_group(&mn, alg.pi()) {
        if !first_factor_matches(prod, &chi, gamma) {
            continue;
        }
        let k = alg
            .find(src, tgt, &mn, &chi)
            .expect("every subcharacter is a basis element");
        value.insert_add(k, Scalar::one(alg.ctx()));
    }
    SpecialVector {
        label: format!(
            "S^({}:{})({}x{})",
            set_label(gamma.domain()),
            exps_label(gamma),
            set_label(m),
            set_label(n)
        ),
        value,
    }
}

/// v^ω_{E'×E,φ} = Σ_{ψ ∈ E*} ω^{n_ψ} s_{E'×E,φ×ψ}, where n_ψ is ψ's position
/// in the exponent-ordered listing of E* and ω^{|E*|} must be 1.
pub fn twisted_axis_vector(
    alg: &DeformedAlgebra,
    src: usize,
    tgt: usize,
    phi: &Character,
    e: &Subgroup,
    omega: &Scalar,
) -> Result<SpecialVector, ModuleError> {
    let prod = alg.product(src, tgt);
    let e_star = character_group(e, alg.pi());
    let n_e = e_star.len();
    if !omega.pow(n_e as i64)?.is_one() {
        return Err(ModuleError::NotARootOfUnity { expected: n_e });
    }
    let v = prod.sub_product(phi.domain(), e);
    let mut value = AlgebraElement::zero();
    let mut matched = 0;
    for chi in character_group(&v, alg.pi()) {
        if !first_factor_matches(prod, &chi, phi) {
            continue;
        }
        let pos = e_star
            .iter()
            .position(|psi| second_factor_matches(prod, &chi, psi))
            .expect("the second factor of a product character lies in E*");
        let k = alg
            .find(src, tgt, &v, &chi)
            .expect("every subcharacter is a basis element");
        value.insert_add(k, omega.pow(pos as i64)?);
        matched += 1;
    }
    debug_assert_eq!(matched, n_e, "one term per character of E");
    Ok(SpecialVector {
        label: format!(
            "v({}:{}x{}; w={})",
            set_label(phi.domain()),
            exps_label(phi),
            set_label(e),
            omega.render(alg.ctx())
        ),
        value,
    })
}

/// The single group of the algebra when it is cyclic of prime order q.
pub(crate) fn require_prime_cyclic(alg: &DeformedAlgebra) -> Result<u32, ModuleError> {
    if alg.groups().len() != 1 {
        return Err(ModuleError::HypothesisViolated(
            "a single-group algebra is required".into(),
        ));
    }
    let q = alg.groups()[0].order();
    if !subchar_groups::is_prime(q as u32) {
        return Err(ModuleError::NotPrimeOrder(q));
    }
    Ok(q as u32)
}

pub(crate) fn require_full_pi(alg: &DeformedAlgebra, q: u32) -> Result<(), ModuleError> {
    if !alg.pi().contains(q) {
        return Err(ModuleError::HypothesisViolated(format!(
            "π must contain the group order {q}"
        )));
    }
    Ok(())
}

pub(crate) fn inv_mod(a: u32, q: u32) -> u32 {
    (1..q)
        .find(|b| (a * b) % q == 1)
        .expect("unit in a prime field")
}

/// Basis index of the twisted diagonal s_{Δ(i),j} (the graph of x ↦ ix with
/// the character x ↦ ζ_q^{jx}); j must be 0 when q ∉ π.
pub(crate) fn twisted_diagonal_index(alg: &DeformedAlgebra, i: u32, j: u32) -> usize {
    let q = alg.groups()[0].order() as u32;
    let prod = alg.product(0, 0);
    let sigma: Vec<u16> = (0..q).map(|x| ((i * x) % q) as u16).collect();
    let sub = prod.graph(&sigma);
    let modulus = canonical_modulus(&sub, alg.pi());
    let exps: Vec<u32> = if modulus == q {
        (0..q).map(|x| (j * x) % q).collect()
    } else {
        assert_eq!(j, 0, "only the trivial character exists when q ∉ π");
        vec![0; q as usize]
    };
    let chi = Character::from_exps(&sub, alg.pi(), exps).expect("a power map is a character");
    alg.find(0, 0, &sub, &chi)
        .expect("twisted diagonals are basis elements")
}

/// Basis index of s_{C_q×C_q,(r,s)} with character (x,y) ↦ ζ_q^{rx+sy}.
pub(crate) fn full_product_index(alg: &DeformedAlgebra, r: u32, s: u32) -> usize {
    let q = alg.groups()[0].order() as u32;
    let prod = alg.product(0, 0);
    let g = &alg.groups()[0];
    let sub = prod.sub_product(&Subgroup::full(g), &Subgroup::full(g));
    let exps: Vec<u32> = (0..q * q)
        .map(|t| (r * (t / q) + s * (t % q)) % q)
        .collect();
    let chi = Character::from_exps(&sub, alg.pi(), exps).expect("a power map is a character");
    alg.find(0, 0, &sub, &chi)
        .expect("full-product subcharacters are basis elements")
}

/// e_i^ω = Σ_j ω^{i⁻¹j} s_{Δ(i),j} for ω = ζ_q^w; eigenvector of the twisted
/// diagonals inside their own span.
pub fn diagonal_eigenvector(
    alg: &DeformedAlgebra,
    i: u32,
    omega_power: u32,
) -> Result<SpecialVector, ModuleError> {
    let q = require_prime_cyclic(alg)?;
    require_full_pi(alg, q)?;
    assert!(i >= 1 && i < q, "the diagonal twist must be a unit mod q");
    let ii = inv_mod(i, q);
    let w = omega_power % q;
    let mut value = AlgebraElement::zero();
    for j in 0..q {
        let c = Scalar::root_of_unity(alg.ctx(), q, (ii * j % q * w % q) as i64)?;
        value.insert_add(twisted_diagonal_index(alg, i, j), c);
    }
    Ok(SpecialVector {
        label: format!("e_{i}(w=z{q}^{w})"),
        value,
    })
}

/// α_i^ω = e_i^ω − (1/λ) Σ_{r,s} ω^{s+ri⁻¹} s_{C_q×C_q,(r,s)} for a
/// primitive ω; spans, with its companions, the small matrix block.
pub fn reduced_eigenvector(
    alg: &DeformedAlgebra,
    i: u32,
    omega_power: u32,
) -> Result<SpecialVector, ModuleError> {
    let q = require_prime_cyclic(alg)?;
    require_full_pi(alg, q)?;
    let w = omega_power % q;
    if w == 0 {
        return Err(ModuleError::HypothesisViolated(
            "the twist ω must be a primitive root of unity".into(),
        ));
    }
    let lambda_inv = alg.deformation().eval_prime(q, alg.ctx())?.inv()?;
    let ii = inv_mod(i, q);
    let mut value = diagonal_eigenvector(alg, i, omega_power)?.into_value();
    for r in 0..q {
        for s in 0..q {
            let p = w * ((s + r * ii) % q) % q;
            let c = Scalar::root_of_unity(alg.ctx(), q, p as i64)?;
            value.insert_add(full_product_index(alg, r, s), -(c * &lambda_inv));
        }
    }
    Ok(SpecialVector {
        label: format!("a_{i}(w=z{q}^{w})"),
        value,
    })
}

/// The vector spanning the line on which every twisted diagonal acts as 1
/// and every direct-product subcharacter acts as 0 (for λ = ℓ(q) ≠ ρ = q).
pub fn fixed_line_vector(alg: &DeformedAlgebra) -> Result<SpecialVector, ModuleError> {
    let q = require_prime_cyclic(alg)?;
    require_full_pi(alg, q)?;
    let g = alg.groups()[0].clone();
    let full = Subgroup::full(&g);
    let triv = Subgroup::trivial(&g);
    let lambda_inv = alg.deformation().eval_prime(q, alg.ctx())?.inv()?;
    let rho_inv = Scalar::from_integer(alg.ctx(), q as i64).inv()?;

    let mut value = character_sum(alg, 0, 0, &triv, &triv).into_value();
    let axes = &character_sum(alg, 0, 0, &triv, &full).into_value()
        + &character_sum(alg, 0, 0, &full, &triv).into_value();
    value = &value - &axes.scale(&lambda_inv);
    let both = character_sum(alg, 0, 0, &full, &full).into_value();
    value = &value + &both.scale(&(&rho_inv * &lambda_inv));

    let mut diag = AlgebraElement::zero();
    for i in 1..q {
        diag = &diag + diagonal_eigenvector(alg, i, 0)?.value();
    }
    let weight = (lambda_inv.sub_ref(&rho_inv))
        * Scalar::from_integer(alg.ctx(), (q - 1) as i64).inv()?;
    value = &value + &diag.scale(&weight);

    Ok(SpecialVector {
        label: "fixline".into(),
        value,
    })
}
