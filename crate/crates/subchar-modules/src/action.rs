//! Left modules presented by explicit basis vectors and the matrix of every
//! algebra basis element on them.

use std::collections::HashMap;

use subchar_algebra::{related, AlgebraElement, DeformedAlgebra, Subcharacter};
use subchar_groups::{character_group, subgroups, Group, Subgroup, DEFAULT_ORDER_BOUND};
use subchar_scalars::{Matrix, Scalar};

use crate::vectors::{first_factor_matches, second_factor_matches, twisted_axis_vector};
use crate::ModuleError;

pub struct ActionModule {
    basis: Vec<AlgebraElement>,
    coords: Matrix,
    action: Vec<Matrix>,
}

impl ActionModule {
    /// The module spanned by the given vectors inside the regular module;
    /// errors when some product leaves the span.
    pub fn new(alg: &DeformedAlgebra, basis: Vec<AlgebraElement>) -> Result<Self, ModuleError> {
        let (n, d) = (alg.len(), basis.len());
        let columns: Vec<Vec<Scalar>> = basis.iter().map(|v| alg.to_coords(v)).collect();
        let coords = Matrix::from_fn(alg.ctx(), n, d, |i, j| columns[j][i].clone());

        let units: Option<Vec<usize>> = basis
            .iter()
            .map(|v| {
                let mut terms = v.terms();
                match (terms.next(), terms.next()) {
                    (Some((k, c)), None) if c.is_one() => Some(k),
                    _ => None,
                }
            })
            .collect();

        let action = match units {
            Some(positions) => {
                let place: HashMap<usize, usize> =
                    positions.iter().enumerate().map(|(j, &k)| (k, j)).collect();
                assert_eq!(place.len(), d, "basis vectors must be distinct");
                let mut mats = Vec::with_capacity(n);
                for a in 0..n {
                    let mut m = Matrix::zero(alg.ctx(), d, d);
                    for (j, &k) in positions.iter().enumerate() {
                        if let Some((r, lambda)) = alg.structure(a, k) {
                            let Some(&i) = place.get(&r) else {
                                return Err(ModuleError::NotASubmodule(format!(
                                    "the product of basis elements {a} and {k} leaves the span"
                                )));
                            };
                            m.set(i, j, lambda);
                        }
                    }
                    mats.push(m);
                }
                mats
            }
            None => {
                let mut mats = Vec::with_capacity(n);
                for a in 0..n {
                    let ba = alg.basis_element(a);
                    let mut m = Matrix::zero(alg.ctx(), d, d);
                    for (j, v) in basis.iter().enumerate() {
                        let w = alg.multiply(&ba, v);
                        let x = coords.solve(&alg.to_coords(&w)).map_err(|_| {
                            ModuleError::NotASubmodule(format!(
                                "the image of span vector {j} under basis element {a} leaves the span"
                            ))
                        })?;
                        for (i, c) in x.into_iter().enumerate() {
                            m.set(i, j, c);
                        }
                    }
                    mats.push(m);
                }
                mats
            }
        };

        Ok(ActionModule {
            basis,
            coords,
            action,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }

    /// Matrix of the k-th algebra basis element on this module.
    pub fn action(&self, k: usize) -> &Matrix {
        &self.action[k]
    }

    /// Coordinates of an algebra element in the module basis.
    pub fn express(&self, alg: &DeformedAlgebra, v: &AlgebraElement) -> Option<Vec<Scalar>> {
        self.coords.solve(&alg.to_coords(v)).ok()
    }

    /// The identity of the algebra must act as the identity matrix.
    pub fn identity_acts_as_identity(&self, alg: &DeformedAlgebra) -> bool {
        let d = self.dim();
        let mut m = Matrix::zero(alg.ctx(), d, d);
        for (k, c) in alg.identity().terms() {
            m = m.add(&self.action[k].scale(c));
        }
        m == Matrix::identity(alg.ctx(), d)
    }

    /// Action matrices must satisfy the algebra's structure constants on the
    /// given pairs: act(i)·act(j) = λ·act(k) when b_i b_j = λ b_k, and 0
    /// when the product vanishes.
    pub fn respects_structure(&self, alg: &DeformedAlgebra, pairs: &[(usize, usize)]) -> bool {
        pairs.iter().all(|&(i, j)| {
            let lhs = self.action[i].matmul(&self.action[j]);
            match alg.structure(i, j) {
                Some((k, lambda)) => lhs == self.action[k].scale(&lambda),
                None => lhs.is_zero(),
            }
        })
    }

    /// Whether the algebra's image spans all of End(module), i.e. the module
    /// is absolutely simple.
    pub fn absolutely_simple(&self, alg: &DeformedAlgebra) -> bool {
        let d = self.dim();
        let flat = Matrix::from_fn(alg.ctx(), alg.len(), d * d, |a, e| {
            self.action[a].at(e / d, e % d).clone()
        });
        flat.rank_at_least(d * d)
    }
}

/// The algebra as a left module over itself.
pub fn regular_module(alg: &DeformedAlgebra) -> ActionModule {
    let basis = (0..alg.len()).map(|k| alg.basis_element(k)).collect();
    ActionModule::new(alg, basis).expect("the regular module is closed")
}

/// The span of the basis elements whose thorax is a subquotient of N; closed
/// under the action because products only shrink the thorax.
pub fn thorax_submodule(alg: &DeformedAlgebra, n: &Group) -> Result<ActionModule, ModuleError> {
    let picks = alg.thorax_filter(n)?;
    let basis = picks.into_iter().map(|k| alg.basis_element(k)).collect();
    ActionModule::new(alg, basis)
}

/// Subgroup–character pairs of G in a fixed enumeration order; the axis
/// modules below list their bases in this order so that position j always
/// names the same pair.
fn axis_parameters(
    alg: &DeformedAlgebra,
) -> Result<Vec<(Subgroup, subchar_groups::Character)>, ModuleError> {
    if alg.groups().len() != 1 {
        return Err(ModuleError::HypothesisViolated(
            "axis modules need a single-group algebra".into(),
        ));
    }
    let mut out = Vec::new();
    for sub in subgroups(&alg.groups()[0], DEFAULT_ORDER_BOUND)? {
        for phi in character_group(&sub, alg.pi()) {
            out.push((sub.clone(), phi));
        }
    }
    Ok(out)
}

/// The left ideal generated by s_{1×1}: its basis is one subcharacter
/// s_{E×1,φ} per subgroup–character pair (E,φ) of G.
pub fn left_axis_module(alg: &DeformedAlgebra) -> Result<ActionModule, ModuleError> {
    let prod = alg.product(0, 0);
    let trivial = Subgroup::trivial(&alg.groups()[0]);
    let mut basis = Vec::new();
    for (sub, phi) in axis_parameters(alg)? {
        let e1 = prod.sub_product(&sub, &trivial);
        let chi = character_group(&e1, alg.pi())
            .into_iter()
            .find(|chi| first_factor_matches(prod, chi, &phi))
            .expect("E×1 carries exactly one character per character of E");
        let k = alg
            .find(0, 0, &e1, &chi)
            .expect("every subcharacter is a basis element");
        basis.push(alg.basis_element(k));
    }
    ActionModule::new(alg, basis)
}

/// The twisted copy of the axis module over E ≤ G and ω with ω^{|E*|} = 1:
/// basis vector for (E',φ) is v^ω_{E'×E,φ}.
pub fn twisted_axis_module(
    alg: &DeformedAlgebra,
    e: &Subgroup,
    omega: &Scalar,
) -> Result<ActionModule, ModuleError> {
    let mut basis = Vec::new();
    for (_, phi) in axis_parameters(alg)? {
        basis.push(twisted_axis_vector(alg, 0, 0, &phi, e, omega)?.into_value());
    }
    ActionModule::new(alg, basis)
}

/// The pairing of the second-axis subcharacters against the first-axis ones:
/// s_{1×U,γ} · s_{V×1,φ} is always a multiple of s_{1×1}, predicted to be
/// ℓ(|U∩V|) when the two subcharacters are related and 0 otherwise. A
/// nonzero determinant certifies the axis module simple, since any proper
/// submodule would be annihilated by a nonzero row combination.
pub struct AxisPairing {
    pub matrix: Matrix,
    /// The predicted entries agree with the actual products in the algebra.
    pub entries_match_products: bool,
}

pub fn axis_pairing_matrix(alg: &DeformedAlgebra) -> Result<AxisPairing, ModuleError> {
    let prod = alg.product(0, 0);
    let g = &alg.groups()[0];
    let trivial = Subgroup::trivial(g);
    let params = axis_parameters(alg)?;
    let n = params.len();

    let find_axis = |sub: &Subgroup, chi_of: &dyn Fn(&subchar_groups::Character) -> bool| {
        character_group(sub, alg.pi())
            .into_iter()
            .find(chi_of)
            .expect("an axis subgroup carries exactly one matching character")
    };
    let mut rows = Vec::with_capacity(n);
    let mut cols = Vec::with_capacity(n);
    for (u, gamma) in &params {
        let second = prod.sub_product(&trivial, u);
        let chi = find_axis(&second, &|chi| second_factor_matches(prod, chi, gamma));
        rows.push((second, chi));
    }
    for (v, phi) in &params {
        let first = prod.sub_product(v, &trivial);
        let chi = find_axis(&first, &|chi| first_factor_matches(prod, chi, phi));
        cols.push((first, chi));
    }

    let origin = prod.sub_product(&trivial, &trivial);
    let origin_chi = character_group(&origin, alg.pi()).remove(0);
    let origin_index = alg
        .find(0, 0, &origin, &origin_chi)
        .expect("the trivial subcharacter is a basis element");

    let mut entries_match_products = true;
    let mut matrix = Matrix::zero(alg.ctx(), n, n);
    for (a, (u, _)) in params.iter().enumerate() {
        let row = Subcharacter::new(prod, rows[a].0.clone(), rows[a].1.clone())?;
        let row_index = alg
            .find(0, 0, &rows[a].0, &rows[a].1)
            .expect("every subcharacter is a basis element");
        for (b, (v, _)) in params.iter().enumerate() {
            let col = Subcharacter::new(prod, cols[b].0.clone(), cols[b].1.clone())?;
            let col_index = alg
                .find(0, 0, &cols[b].0, &cols[b].1)
                .expect("every subcharacter is a basis element");
            let predicted = if related(&row, &col)? {
                alg.deformation()
                    .eval_order(u.intersect(v).order() as u64, alg.ctx())?
            } else {
                Scalar::zero(alg.ctx())
            };
            let actual = alg.multiply(
                &alg.basis_element(row_index),
                &alg.basis_element(col_index),
            );
            entries_match_products &=
                actual == alg.basis_element(origin_index).scale(&predicted);
            matrix.set(a, b, predicted);
        }
    }
    Ok(AxisPairing {
        matrix,
        entries_match_products,
    })
}

/// Whether basis[j] ↦ images[j] extends to an isomorphism of modules: the
/// images must span the target and intertwine every algebra basis element.
pub fn is_module_isomorphism(
    alg: &DeformedAlgebra,
    from: &ActionModule,
    to: &ActionModule,
    images: &[AlgebraElement],
) -> bool {
    let d = from.dim();
    if to.dim() != d || images.len() != d {
        return false;
    }
    let mut f = Matrix::zero(alg.ctx(), d, d);
    for (j, img) in images.iter().enumerate() {
        let Some(x) = to.express(alg, img) else {
            return false;
        };
        for (i, c) in x.into_iter().enumerate() {
            f.set(i, j, c);
        }
    }
    if f.rank() < d {
        return false;
    }
    (0..alg.len()).all(|a| to.action[a].matmul(&f) == f.matmul(&from.action[a]))
}
