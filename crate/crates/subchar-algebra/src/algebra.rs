//! The deformed subcharacter algebra on a finite set K of groups: an indexed
//! basis of all subcharacters over the products F×G (F, G ∈ K) with lazily
//! cached structure constants. Every basis product is either zero or a single
//! basis element times an ℓ-value, so the table stores `Option<(index, Scalar)>`.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Sub};
use std::sync::Mutex;

use subchar_groups::{
    character_group, subgroups, subquotient_le, Group, PiClass, Product, Subgroup,
    DEFAULT_ORDER_BOUND,
};
use subchar_scalars::{FieldCtx, Matrix, Scalar};

use crate::subcharacter::{multiply_subcharacters, Subcharacter};
use crate::{AlgebraError, DeformationMap};

pub struct BasisEntry {
    pub src: usize,
    pub tgt: usize,
    pub subcharacter: Subcharacter,
}

type InternKey = (usize, usize, Vec<u16>, Vec<u32>);

pub struct DeformedAlgebra {
    groups: Vec<Group>,
    pi: PiClass,
    lmap: DeformationMap,
    ctx: FieldCtx,
    products: Vec<Vec<Product>>,
    basis: Vec<BasisEntry>,
    index: HashMap<InternKey, usize>,
    table: Mutex<HashMap<(usize, usize), Option<(usize, Scalar)>>>,
}

impl DeformedAlgebra {
    /// Assembles the algebra over the given groups. The scalar field gets one
    /// root of unity of order lcm(all character moduli, extra_root_orders)
    /// and one indeterminate per prime dividing a group order; the
    /// deformation is validated on those primes up front.
    pub fn new(
        groups: &[Group],
        pi: &PiClass,
        lmap: &DeformationMap,
        extra_root_orders: &[u32],
    ) -> Result<Self, AlgebraError> {
        assert!(!groups.is_empty(), "the group set K must be nonempty");
        let products: Vec<Vec<Product>> = groups
            .iter()
            .map(|f| groups.iter().map(|g| Product::new(f, g)).collect())
            .collect();

        let mut raw: Vec<(usize, usize, Subgroup, subchar_groups::Character)> = Vec::new();
        let mut conductor = 1u32;
        for (i, row) in products.iter().enumerate() {
            for (j, prod) in row.iter().enumerate() {
                for sub in subgroups(prod.group(), DEFAULT_ORDER_BOUND)? {
                    for chi in character_group(&sub, pi) {
                        conductor = subchar_groups::group::lcm_u32(conductor, chi.modulus());
                        raw.push((i, j, sub.clone(), chi));
                    }
                }
            }
        }
        for &n in extra_root_orders {
            conductor = subchar_groups::group::lcm_u32(conductor, n);
        }

        let mut primes: Vec<u32> = Vec::new();
        for g in groups {
            primes.extend(subchar_groups::prime_divisors(g.order() as u64));
        }
        primes.sort_unstable();
        primes.dedup();
        let ctx = FieldCtx::new(conductor, &primes);
        for &p in &primes {
            let value = lmap.eval_prime(p, &ctx)?;
            if value.is_zero() {
                return Err(AlgebraError::ZeroDeformation);
            }
        }

        let mut basis = Vec::with_capacity(raw.len());
        let mut index = HashMap::with_capacity(raw.len());
        for (src, tgt, sub, chi) in raw {
            let key = (src, tgt, sub.elements().to_vec(), chi.exps().to_vec());
            let subcharacter = Subcharacter::new(&products[src][tgt], sub, chi)?;
            index.insert(key, basis.len());
            basis.push(BasisEntry {
                src,
                tgt,
                subcharacter,
            });
        }

        Ok(DeformedAlgebra {
            groups: groups.to_vec(),
            pi: pi.clone(),
            lmap: lmap.clone(),
            ctx,
            products,
            basis,
            index,
            table: Mutex::new(HashMap::new()),
        })
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn pi(&self) -> &PiClass {
        &self.pi
    }

    pub fn deformation(&self) -> &DeformationMap {
        &self.lmap
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn product(&self, src: usize, tgt: usize) -> &Product {
        &self.products[src][tgt]
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn entry(&self, k: usize) -> &BasisEntry {
        &self.basis[k]
    }

    pub fn basis(&self) -> &[BasisEntry] {
        &self.basis
    }

    pub fn find(
        &self,
        src: usize,
        tgt: usize,
        sub: &Subgroup,
        chi: &subchar_groups::Character,
    ) -> Option<usize> {
        self.index
            .get(&(src, tgt, sub.elements().to_vec(), chi.exps().to_vec()))
            .copied()
    }

    pub fn index_of(&self, src: usize, tgt: usize, s: &Subcharacter) -> usize {
        self.find(src, tgt, s.subgroup(), s.character())
            .expect("subcharacter must be a basis element")
    }

    /// Index of the conjugate ^c(U,φ) for c in the entry's own product group.
    pub fn conjugate_index(&self, k: usize, c: u16) -> usize {
        let e = &self.basis[k];
        self.index_of(e.src, e.tgt, &e.subcharacter.conjugate_by(c))
    }

    /// The structure constant: b_i·b_j = λ·b_k or zero, cached per pair.
    pub fn structure(&self, i: usize, j: usize) -> Option<(usize, Scalar)> {
        let (a, b) = (&self.basis[i], &self.basis[j]);
        if a.tgt != b.src {
            return None;
        }
        if let Some(hit) = self.table.lock().unwrap().get(&(i, j)) {
            return hit.clone();
        }
        let fh = &self.products[a.src][b.tgt];
        let result = multiply_subcharacters(
            &a.subcharacter,
            &b.subcharacter,
            fh,
            &self.lmap,
            &self.ctx,
        )
        .expect("deformation and basis were validated at construction")
        .map(|(s, scalar)| (self.index_of(a.src, b.tgt, &s), scalar));
        self.table
            .lock()
            .unwrap()
            .insert((i, j), result.clone());
        result
    }

    /// Fills the whole structure-constant table.
    pub fn precompute(&self) {
        for i in 0..self.len() {
            for j in 0..self.len() {
                self.structure(i, j);
            }
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero()
    }

    pub fn basis_element(&self, k: usize) -> AlgebraElement {
        AlgebraElement::term(k, Scalar::one(&self.ctx))
    }

    /// Σ_{G ∈ K} s_{Δ(G),1}, the two-sided identity.
    pub fn identity(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for i in 0..self.groups.len() {
            let prod = &self.products[i][i];
            let delta = prod.diagonal();
            let chi = subchar_groups::Character::trivial(&delta, &self.pi);
            let k = self
                .find(i, i, &delta, &chi)
                .expect("diagonal subcharacters are basis elements");
            out.insert_add(k, Scalar::one(&self.ctx));
        }
        out
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (&i, ci) in &x.terms {
            for (&j, cj) in &y.terms {
                if let Some((k, lambda)) = self.structure(i, j) {
                    out.insert_add(k, ci * cj * lambda);
                }
            }
        }
        out
    }

    pub fn to_coords(&self, x: &AlgebraElement) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(&self.ctx); self.len()];
        for (&k, c) in &x.terms {
            v[k] = c.clone();
        }
        v
    }

    pub fn from_coords(&self, v: &[Scalar]) -> AlgebraElement {
        assert_eq!(v.len(), self.len());
        let mut out = AlgebraElement::zero();
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.insert_add(k, c.clone());
            }
        }
        out
    }

    /// Matrix of left multiplication by x: column j holds x·b_j.
    pub fn left_multiplication_matrix(&self, x: &AlgebraElement) -> Matrix {
        let n = self.len();
        let mut m = Matrix::zero(&self.ctx, n, n);
        for j in 0..n {
            for (&i, ci) in &x.terms {
                if let Some((k, lambda)) = self.structure(i, j) {
                    let updated = m.at(k, j) + ci * lambda;
                    m.set(k, j, updated);
                }
            }
        }
        m
    }

    /// Matrix of right multiplication by x: column j holds b_j·x.
    pub fn right_multiplication_matrix(&self, x: &AlgebraElement) -> Matrix {
        let n = self.len();
        let mut m = Matrix::zero(&self.ctx, n, n);
        for j in 0..n {
            for (&i, ci) in &x.terms {
                if let Some((k, lambda)) = self.structure(j, i) {
                    let updated = m.at(k, j) + ci * lambda;
                    m.set(k, j, updated);
                }
            }
        }
        m
    }

    /// tr(L_{b_k}) for every basis element.
    pub fn regular_traces(&self) -> Vec<Scalar> {
        (0..self.len())
            .map(|k| {
                let mut t = Scalar::zero(&self.ctx);
                for m in 0..self.len() {
                    if let Some((r, lambda)) = self.structure(k, m) {
                        if r == m {
                            t = t + lambda;
                        }
                    }
                }
                t
            })
            .collect()
    }

    /// The regular trace form T_{ij} = tr(L_{b_i·b_j}).
    pub fn gram_matrix(&self) -> Matrix {
        let traces = self.regular_traces();
        Matrix::from_fn(&self.ctx, self.len(), self.len(), |i, j| {
            match self.structure(i, j) {
                Some((k, lambda)) => lambda * &traces[k],
                None => Scalar::zero(&self.ctx),
            }
        })
    }

    /// Trace of left multiplication by an arbitrary element.
    pub fn trace_of(&self, x: &AlgebraElement, traces: &[Scalar]) -> Scalar {
        let mut t = Scalar::zero(&self.ctx);
        for (&k, c) in &x.terms {
            t = t + c * &traces[k];
        }
        t
    }

    /// Thorax of a basis element: p1(U)/k1(U).
    pub fn thorax(&self, k: usize) -> Result<Group, AlgebraError> {
        let e = &self.basis[k];
        Ok(self.products[e.src][e.tgt].thorax(e.subcharacter.subgroup())?)
    }

    /// Indices whose thorax is isomorphic to a subquotient of N: the span
    /// S^N inside the regular module.
    pub fn thorax_filter(&self, n: &Group) -> Result<Vec<usize>, AlgebraError> {
        let mut out = Vec::new();
        for k in 0..self.len() {
            let q = self.thorax(k)?;
            if subquotient_le(&q, n, DEFAULT_ORDER_BOUND)? {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// Checks [q(U∗V)] ≤ [q(U)] and [q(U∗V)] ≤ [q(V)] over all nonzero basis
    /// products; returns (products checked, violating pairs).
    pub fn thorax_monotonicity(&self) -> Result<(usize, Vec<(usize, usize)>), AlgebraError> {
        let thoraxes: Vec<Group> = (0..self.len())
            .map(|k| self.thorax(k))
            .collect::<Result<_, _>>()?;
        let mut checked = 0;
        let mut violations = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if let Some((k, _)) = self.structure(i, j) {
                    checked += 1;
                    let ok = subquotient_le(&thoraxes[k], &thoraxes[i], DEFAULT_ORDER_BOUND)?
                        && subquotient_le(&thoraxes[k], &thoraxes[j], DEFAULT_ORDER_BOUND)?;
                    if !ok {
                        violations.push((i, j));
                    }
                }
            }
        }
        Ok((checked, violations))
    }
}

/// A sparse scalar combination of basis subcharacters.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<usize, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn term(k: usize, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.insert_add(k, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Option<&Scalar> {
        self.terms.get(&k)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert_add(&mut self, k: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&k) {
            None => {
                self.terms.insert(k, c);
            }
            Some(prev) => {
                let sum = prev + c;
                if !sum.is_zero() {
                    self.terms.insert(k, sum);
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            terms: self.terms.iter().map(|(&k, v)| (k, -v.clone())).collect(),
        }
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert_add(k, c.clone());
        }
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert_add(k, -c.clone());
        }
        out
    }
}
