//! Dense matrices over the scalar field, with fraction-free elimination for
//! exact rank, determinant, kernel, and solving.

use std::collections::BTreeMap;

use num::{BigInt, One, Signed, Zero};

use crate::poly::{gcd, MPoly};
use crate::{FieldCtx, Rational, Scalar, ScalarError};

/// Row-major matrix of scalars; the context fixes conductor and variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(ctx: &FieldCtx, rows: usize, cols: usize) -> Self {
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![Scalar::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zero(ctx, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(ctx));
        }
        m
    }

    pub fn from_fn(
        ctx: &FieldCtx,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(ctx: &FieldCtx, rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix construction"
        );
        Matrix {
            ctx: ctx.clone(),
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> Self {
        Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|s| f(s)).collect(),
        }
    }

    pub fn specialize(
        &self,
        assign: &BTreeMap<u32, Rational>,
    ) -> Result<Matrix, ScalarError> {
        let mut data = Vec::with_capacity(self.data.len());
        for s in &self.data {
            data.push(s.specialize(&self.ctx, assign)?);
        }
        Ok(Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(&self.ctx, self.rows, self.cols, |i, j| {
            self.at(i, j) + other.at(i, j)
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        self.map(|s| s * c)
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        Matrix::from_fn(&self.ctx, self.rows, other.cols, |i, j| {
            let mut acc = Scalar::zero(&self.ctx);
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                acc = acc + a * other.at(k, j);
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "vector length must match columns");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(&self.ctx);
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = acc + a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Certifies rank ≥ target without the full symbolic elimination when a
    /// cheaper witness exists. Evaluating the indeterminates at a point can
    /// only lower the rank, so any specialization reaching the target is a
    /// proof; likewise reduction mod p for rational entries. Only a matrix
    /// that falls short at every sampled point pays for the exact elimination.
    pub fn rank_at_least(&self, target: usize) -> bool {
        if target == 0 {
            return true;
        }
        if target > self.rows.min(self.cols) {
            return false;
        }
        let has_vars = self
            .data
            .iter()
            .any(|s| !s.num().is_constant() || !s.den().is_constant());
        if has_vars {
            for point in specialization_points(&self.ctx) {
                if let Ok(m) = self.specialize(&point) {
                    if m.rank_at_least(target) {
                        return true;
                    }
                }
            }
        } else if self.rank_mod_p(1_000_000_007) >= Some(target) {
            return true;
        }
        self.rank() >= target
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant requires a square matrix");
        if self.rows == 0 {
            return Scalar::one(&self.ctx);
        }
        let ech = self.echelon();
        if ech.pivots.len() < self.rows {
            return Scalar::zero(&self.ctx);
        }
        let mut det = Scalar::one(&self.ctx);
        for &(r, c) in &ech.pivots {
            det = det * &ech.rows[r][c];
        }
        det.div_checked(&ech.det_factor)
            .expect("determinant scale factor is nonzero")
    }

    /// Basis of the right kernel {x : Ax = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let ech = self.echelon();
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivot_cols.contains(&f) {
                continue;
            }
            let mut x = vec![Scalar::zero(&self.ctx); self.cols];
            x[f] = Scalar::one(&self.ctx);
            back_substitute(&ech, &mut x);
            basis.push(x);
        }
        basis
    }

    /// One solution of Ax = b when the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>, ScalarError> {
        if b.len() != self.rows {
            return Err(ScalarError::DimensionMismatch(format!(
                "matrix has {} rows but right-hand side has {} entries",
                self.rows,
                b.len()
            )));
        }
        let aug = Matrix::from_fn(&self.ctx, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let ech = aug.echelon();
        if ech.pivots.iter().any(|&(_, c)| c == self.cols) {
            return Err(ScalarError::NoSolution);
        }
        let mut y = vec![Scalar::zero(&self.ctx); self.cols + 1];
        y[self.cols] = -Scalar::one(&self.ctx);
        back_substitute(&ech, &mut y);
        y.truncate(self.cols);
        Ok(y)
    }

    /// Rank over Z/p for matrices of constant rational entries; None when an
    /// entry has an indeterminate, a nonrational constant, or a denominator
    /// divisible by p.
    pub fn rank_mod_p(&self, p: u64) -> Option<usize> {
        let mut m = vec![0u64; self.rows * self.cols];
        for (k, s) in self.data.iter().enumerate() {
            let r = s.as_rational()?;
            let num = bigint_mod(r.numer(), p);
            let den = bigint_mod(r.denom(), p);
            if den == 0 {
                return None;
            }
            m[k] = mul_mod(num, inv_mod(den, p)?, p);
        }
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(pr) = (rank..self.rows).find(|&i| m[i * self.cols + c] != 0) else {
                continue;
            };
            for j in 0..self.cols {
                m.swap(rank * self.cols + j, pr * self.cols + j);
            }
            let inv = inv_mod(m[rank * self.cols + c], p)?;
            for i in rank + 1..self.rows {
                let factor = mul_mod(m[i * self.cols + c], inv, p);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let sub = mul_mod(factor, m[rank * self.cols + j], p);
                    let e = &mut m[i * self.cols + j];
                    *e = (*e + p - sub) % p;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        Some(rank)
    }

    /// Fraction-free row echelon form with pivoting on the entry of fewest
    /// terms; clears denominators and strips rational row content up front so
    /// intermediate entries stay polynomial.
    fn echelon(&self) -> Echelon {
        let one_poly = MPoly::one(self.ctx.nvars(), self.ctx.conductor());
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut det_factor = Scalar::one(&self.ctx);
        for row in &mut rows {
            let mut l = one_poly.clone();
            for e in row.iter() {
                if !e.den().is_one() {
                    let g = gcd(&l, e.den());
                    l = l.mul(&e.den().exact_div(&g).expect("gcd divides"));
                }
            }
            if !l.is_one() {
                let l = Scalar::from_polynomial(l);
                for e in row.iter_mut() {
                    *e = &*e * &l;
                }
                det_factor = det_factor * &l;
            }
            let mut content = Rational::zero();
            for e in row.iter() {
                content = rational_gcd(&content, &e.num().rational_content());
            }
            if !content.is_zero() && !content.is_one() {
                let inv = Scalar::from_rational(&self.ctx, content.recip());
                for e in row.iter_mut() {
                    *e = &*e * &inv;
                }
                det_factor = det_factor * inv;
            }
        }
        let mut pivots = Vec::new();
        let mut prev: Option<Scalar> = None;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| (rows[i][c].num().num_terms(), i))
            else {
                continue;
            };
            if p != r {
                rows.swap(r, p);
                det_factor = -det_factor;
            }
            let pivot = rows[r][c].clone();
            for i in r + 1..self.rows {
                let coeff = rows[i][c].clone();
                let mut next: Vec<Scalar> = Vec::with_capacity(self.cols);
                for j in 0..self.cols {
                    if j <= c {
                        next.push(Scalar::zero(&self.ctx));
                    } else {
                        next.push(&(&pivot * &rows[i][j]) - &(&coeff * &rows[r][j]));
                    }
                }
                det_factor = det_factor * &pivot;
                if let Some(prev) = &prev {
                    let divided: Option<Vec<Scalar>> =
                        next.iter().map(|e| e.exact_poly_div(prev)).collect();
                    if let Some(divided) = divided {
                        next = divided;
                        det_factor = det_factor
                            .div_checked(prev)
                            .expect("previous pivot is nonzero");
                    }
                }
                rows[i] = next;
            }
            prev = Some(pivot);
            pivots.push((r, c));
            r += 1;
        }
        Echelon {
            rows,
            pivots,
            det_factor,
        }
    }
}

struct Echelon {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<(usize, usize)>,
    det_factor: Scalar,
}

/// Fills the pivot coordinates of `x` so every echelon row annihilates it;
/// non-pivot coordinates are taken as given.
fn back_substitute(ech: &Echelon, x: &mut [Scalar]) {
    for &(r, c) in ech.pivots.iter().rev() {
        let mut acc = x[c].zero_like();
        for j in c + 1..x.len() {
            if !ech.rows[r][j].is_zero() && !x[j].is_zero() {
                acc = acc + &ech.rows[r][j] * &x[j];
            }
        }
        x[c] = -acc
            .div_checked(&ech.rows[r][c])
            .expect("pivot entries are nonzero");
    }
}

/// A few deterministic points with distinct "generic-looking" rational
/// coordinates. A point may land on a pole or a degeneracy locus; the caller
/// simply moves on to the next one.
fn specialization_points(ctx: &FieldCtx) -> impl Iterator<Item = BTreeMap<u32, Rational>> + '_ {
    const NUMS: [i64; 9] = [17, 23, 31, 41, 53, 67, 79, 97, 113];
    const DENS: [i64; 4] = [5, 7, 11, 13];
    (0..3).map(move |attempt| {
        ctx.primes()
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let n = NUMS[(attempt * ctx.nvars() + i) % NUMS.len()];
                let d = DENS[(attempt + i) % DENS.len()];
                (p, Rational::new(BigInt::from(n), BigInt::from(d)))
            })
            .collect()
    })
}

fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = num::integer::gcd(a.numer().abs(), b.numer().abs());
    let den = num::integer::lcm(a.denom().clone(), b.denom().clone());
    Rational::new(num, den)
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let m = n % BigInt::from(p);
    let m = if m.sign() == num::bigint::Sign::Minus {
        m + BigInt::from(p)
    } else {
        m
    };
    u64::try_from(m).expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    // Fermat: p is prime in all call sites.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    Some(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> FieldCtx {
        FieldCtx::new(6, &[2, 3])
    }

    fn int(ctx: &FieldCtx, n: i64) -> Scalar {
        Scalar::from_integer(ctx, n)
    }

    #[test]
    fn rank_of_zero_matrix_is_zero() {
        let ctx = ctx();
        assert_eq!(Matrix::zero(&ctx, 4, 4).rank(), 0);
    }

    #[test]
    fn determinant_of_diagonal_indeterminates() {
        let ctx = ctx();
        let t2 = Scalar::indeterminate(&ctx, 2).unwrap();
        let t3 = Scalar::indeterminate(&ctx, 3).unwrap();
        let mut m = Matrix::zero(&ctx, 2, 2);
        m.set(0, 0, t2.clone());
        m.set(1, 1, t3.clone());
        assert_eq!(m.det(), t2 * t3);
    }

    #[test]
    fn determinant_matches_cofactor_expansion_on_integer_matrix() {
        let ctx = ctx();
        let entries = [[2i64, -1, 3], [0, 4, 1], [5, 2, -2]];
        let m = Matrix::from_fn(&ctx, 3, 3, |i, j| int(&ctx, entries[i][j]));
        // 2*(4*-2-1*2) - (-1)*(0*-2-1*5) + 3*(0*2-4*5) = -20 - 5 - 60
        assert_eq!(m.det(), int(&ctx, -85));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let ctx = ctx();
        let entries = [[1i64, 2, 3, 4], [2, 4, 6, 8], [1, 0, 1, 0]];
        let m = Matrix::from_fn(&ctx, 3, 4, |i, j| int(&ctx, entries[i][j]));
        assert_eq!(m.rank(), 2);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_finds_a_witness_and_detects_inconsistency() {
        let ctx = ctx();
        let entries = [[1i64, 1], [1, -1]];
        let m = Matrix::from_fn(&ctx, 2, 2, |i, j| int(&ctx, entries[i][j]));
        let x = m.solve(&[int(&ctx, 3), int(&ctx, 1)]).unwrap();
        assert_eq!(x, vec![int(&ctx, 2), int(&ctx, 1)]);

        let sing = Matrix::from_fn(&ctx, 2, 2, |_, j| int(&ctx, if j == 0 { 1 } else { 2 }));
        assert_eq!(
            sing.solve(&[int(&ctx, 1), int(&ctx, 5)]),
            Err(ScalarError::NoSolution)
        );
    }

    #[test]
    fn rank_with_rational_function_entries() {
        let ctx = ctx();
        let t2 = Scalar::indeterminate(&ctx, 2).unwrap();
        // Second row is t_2 times the first: rank 1.
        let r0 = vec![int(&ctx, 1), Scalar::one(&ctx).div_checked(&t2).unwrap()];
        let r1 = vec![t2.clone(), int(&ctx, 1)];
        let m = Matrix::from_rows(&ctx, vec![r0, r1]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.nullity(), 1);
    }

    #[test]
    fn rank_certificate_agrees_with_exact_rank() {
        let ctx = ctx();
        let t2 = Scalar::indeterminate(&ctx, 2).unwrap();
        let t3 = Scalar::indeterminate(&ctx, 3).unwrap();
        // Full rank: diag(t_2, t_3, 1) padded with a dependent row.
        let mut m = Matrix::zero(&ctx, 4, 3);
        m.set(0, 0, t2.clone());
        m.set(1, 1, t3.clone());
        m.set(2, 2, int(&ctx, 1));
        m.set(3, 0, t2.clone());
        assert!(m.rank_at_least(3));
        assert!(!m.rank_at_least(4));

        // Rank deficient at every point: second row is t_2 times the first.
        let r0 = vec![int(&ctx, 1), t3.clone()];
        let r1 = vec![t2.clone(), t2.mul_ref(&t3)];
        let dep = Matrix::from_rows(&ctx, vec![r0, r1]);
        assert!(dep.rank_at_least(1));
        assert!(!dep.rank_at_least(2));
        assert_eq!(dep.rank(), 1);
    }

    #[test]
    fn modular_rank_agrees_with_exact_rank() {
        let ctx = ctx();
        let entries = [[1i64, 2, 3], [4, 5, 6], [7, 8, 9]];
        let m = Matrix::from_fn(&ctx, 3, 3, |i, j| int(&ctx, entries[i][j]));
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_mod_p(1_000_000_007), Some(2));
    }
}
