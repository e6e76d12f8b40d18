//! Exact linear spans of algebra elements, kept in echelon form for cheap
//! membership tests.

use subchar_algebra::AlgebraElement;

/// A subspace of the algebra, stored as vectors with strictly increasing
/// pivots (a vector's pivot is its least supported basis index) and monic
/// pivot coefficients.
#[derive(Default)]
pub struct Span {
    rows: Vec<AlgebraElement>,
}

impl Span {
    pub fn new() -> Self {
        Span::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn vectors(&self) -> &[AlgebraElement] {
        &self.rows
    }

    /// Residue of v after eliminating every pivot; zero exactly when v lies
    /// in the span.
    pub fn reduce(&self, v: &AlgebraElement) -> AlgebraElement {
        let mut v = v.clone();
        for row in &self.rows {
            if v.is_zero() {
                break;
            }
            let pivot = pivot_of(row);
            if let Some(c) = v.coeff(pivot).cloned() {
                v = &v - &row.scale(&c);
            }
        }
        v
    }

    pub fn contains(&self, v: &AlgebraElement) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds v to the span; returns false when v was already in it.
    pub fn insert(&mut self, v: &AlgebraElement) -> bool {
        let r = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        let pivot = pivot_of(&r);
        let lead = r.coeff(pivot).expect("pivot is supported").clone();
        let monic = r.scale(&lead.inv().expect("pivot coefficient is nonzero"));
        let at = self
            .rows
            .partition_point(|row| pivot_of(row) < pivot);
        self.rows.insert(at, monic);
        true
    }
}

fn pivot_of(v: &AlgebraElement) -> usize {
    v.terms().next().expect("pivot of the zero vector").0
}
