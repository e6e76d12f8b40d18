//! Multivariate polynomials over Q(ζ_N) in the indeterminates t_p, with the
//! exact division and gcd routines that keep rational functions reduced.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, Integer, One, Zero};

use crate::cyclotomic::render_rational;
use crate::{Cyclotomic, Rational};

/// Exponent vector under graded lexicographic order (total degree first).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[idx] = 1;
        m
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise difference; None when any exponent would go negative.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn componentwise_min(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the t_p with coefficients in Q(ζ_N); only nonzero
/// coefficients are stored, so the map's last entry is the leading term.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    conductor: u32,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl MPoly {
    pub fn zero(nvars: usize, conductor: u32) -> Self {
        MPoly {
            nvars,
            conductor,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Cyclotomic) -> Self {
        let mut p = Self::zero(nvars, c.conductor());
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize, conductor: u32) -> Self {
        Self::constant(nvars, Cyclotomic::one(conductor))
    }

    pub fn var(nvars: usize, conductor: u32, idx: usize) -> Self {
        let mut p = Self::zero(nvars, conductor);
        p.terms
            .insert(Monomial::var(nvars, idx), Cyclotomic::one(conductor));
        p
    }

    pub fn term(nvars: usize, m: Monomial, c: Cyclotomic) -> Self {
        let mut p = Self::zero(nvars, c.conductor());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.terms.len() == 1 && self.leading().unwrap().0.is_one())
    }

    pub fn as_constant(&self) -> Option<&Cyclotomic> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c);
            }
        }
        None
    }

    pub fn leading(&self) -> Option<(&Monomial, &Cyclotomic)> {
        self.terms.last_key_value()
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map_or(0, |(m, _)| m.total_degree())
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// True when every variable outside `var` has exponent zero throughout.
    pub fn only_var(&self, var: usize) -> bool {
        self.terms
            .keys()
            .all(|m| m.0.iter().enumerate().all(|(i, &e)| i == var || e == 0))
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn highest_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.uses_var(v))
    }

    fn insert_term(&mut self, m: Monomial, c: Cyclotomic) {
        if !c.is_zero() {
            self.terms.insert(m, c);
        }
    }

    fn add_assign_term(&mut self, m: &Monomial, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(existing) => {
                *existing = existing.add(c);
                if existing.is_zero() {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_assign_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            conductor: self.conductor,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.conductor);
        }
        MPoly {
            nvars: self.nvars,
            conductor: self.conductor,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars, self.conductor);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_assign_term(&m1.mul(m2), &c1.mul(c2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MPoly {
            nvars: self.nvars,
            conductor: self.conductor,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars, self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient when the division is exact, None otherwise.
    pub fn exact_div(&self, g: &Self) -> Option<Self> {
        if g.is_one() {
            return Some(self.clone());
        }
        if let Some(c) = g.as_constant() {
            return Some(self.scale(&c.inv().ok()?));
        }
        let (gm, gc) = g.leading()?;
        let gc_inv = gc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars, self.conductor);
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.checked_div(gm)?;
            let qc = rc.mul(&gc_inv);
            let piece = Self::term(self.nvars, qm, qc);
            rem = rem.sub(&piece.mul(g));
            quot = quot.add(&piece);
        }
        Some(quot)
    }

    /// Leading coefficient of `self` read as a polynomial in `var`, as a
    /// polynomial in the remaining variables.
    pub fn lead_coeff_wrt(&self, var: usize) -> Self {
        let d = self.degree_in(var);
        let mut out = Self::zero(self.nvars, self.conductor);
        for (m, c) in &self.terms {
            if m.0[var] == d {
                let mut stripped = m.clone();
                stripped.0[var] = 0;
                out.insert_term(stripped, c.clone());
            }
        }
        out
    }

    /// Remainder of the fraction-free division of `self` by `g` in `var`,
    /// up to a power of g's leading coefficient (a content factor).
    pub fn pseudo_rem_wrt(&self, g: &Self, var: usize) -> Self {
        let dg = g.degree_in(var);
        let lcg = g.lead_coeff_wrt(var);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(var) >= dg {
            let dr = r.degree_in(var);
            let lcr = r.lead_coeff_wrt(var);
            let mut shift = Monomial::one(self.nvars);
            shift.0[var] = dr - dg;
            r = lcg.mul(&r).sub(&lcr.mul(&g.mul_monomial(&shift)));
        }
        r
    }

    /// Content with respect to `var`: the gcd of the coefficient polynomials.
    pub fn content_wrt(&self, var: usize) -> Self {
        let mut groups: BTreeMap<u16, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut stripped = m.clone();
            stripped.0[var] = 0;
            groups
                .entry(e)
                .or_insert_with(|| Self::zero(self.nvars, self.conductor))
                .insert_term(stripped, c.clone());
        }
        let mut acc = Self::zero(self.nvars, self.conductor);
        for coeff in groups.values() {
            acc = gcd(&acc, coeff);
            if acc.is_one() {
                break;
            }
        }
        acc
    }

    pub fn primitive_part_wrt(&self, var: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let content = self.content_wrt(var);
        self.exact_div(&content)
            .expect("content divides its polynomial")
    }

    /// Scales so the leading coefficient becomes 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, lc)) if !lc.is_one() => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Positive rational c with self/c having coprime-integer coefficient
    /// data; zero for the zero polynomial.
    pub fn rational_content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            let rc = c.content();
            num_gcd = num_gcd.gcd(rc.numer());
            den_lcm = den_lcm.lcm(rc.denom());
        }
        if num_gcd.is_zero() {
            Rational::zero()
        } else {
            Rational::new(num_gcd, den_lcm)
        }
    }

    pub fn div_rational(&self, r: &Rational) -> Self {
        let inv = Cyclotomic::from_rational(self.conductor, r.recip());
        self.scale(&inv)
    }

    /// Substitutes values for the assigned variables, keeping the rest.
    pub fn substitute(&self, assign: &[Option<Cyclotomic>]) -> Self {
        let mut out = Self::zero(self.nvars, self.conductor);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut residual = m.clone();
            for (v, value) in assign.iter().enumerate() {
                if let Some(value) = value {
                    for _ in 0..m.0[v] {
                        coeff = coeff.mul(value);
                    }
                    residual.0[v] = 0;
                }
            }
            out.add_assign_term(&residual, &coeff);
        }
        out
    }

    /// Display with the given variable names, highest monomial first.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono = render_monomial(m, names);
            let piece = render_term(c, &mono);
            if out.is_empty() {
                out.push_str(&piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push('-');
                out.push_str(rest);
            } else {
                out.push('+');
                out.push_str(&piece);
            }
        }
        out
    }
}

fn render_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[v].clone()),
            _ => parts.push(format!("{}^{}", names[v], e)),
        }
    }
    parts.join("*")
}

fn render_term(c: &Cyclotomic, mono: &str) -> String {
    if mono.is_empty() {
        return c.render();
    }
    if let Some(r) = c.as_rational() {
        if r.is_one() {
            return mono.to_string();
        }
        if (-r).is_one() {
            return format!("-{mono}");
        }
        return format!("{}*{}", render_rational(r), mono);
    }
    format!("({})*{}", c.render(), mono)
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|v| format!("x{v}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

/// Greatest common divisor, normalized monic under graded lex.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.nvars, a.conductor);
    }
    if let Some(m) = monomial_gcd_fast_path(a, b) {
        return m;
    }
    let var = a
        .highest_var()
        .into_iter()
        .chain(b.highest_var())
        .max()
        .expect("nonconstant operands use a variable");
    if a.only_var(var) && b.only_var(var) {
        return univariate_gcd(a, b, var);
    }
    let ca = a.content_wrt(var);
    let cb = b.content_wrt(var);
    let cg = gcd(&ca, &cb);
    let mut f = a.exact_div(&ca).expect("content divides");
    let mut g = b.exact_div(&cb).expect("content divides");
    loop {
        if g.is_zero() {
            break;
        }
        if g.degree_in(var) == 0 {
            return cg.monic();
        }
        let r = f.pseudo_rem_wrt(&g, var);
        f = g;
        g = if r.is_zero() {
            r
        } else {
            r.primitive_part_wrt(var)
        };
    }
    cg.mul(&f.primitive_part_wrt(var)).monic()
}

/// When either operand is a single term, the gcd is the largest monomial
/// dividing every term of both.
fn monomial_gcd_fast_path(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    if a.num_terms() != 1 && b.num_terms() != 1 {
        return None;
    }
    let mut acc: Option<Monomial> = None;
    for m in a.terms.keys().chain(b.terms.keys()) {
        acc = Some(match acc {
            None => m.clone(),
            Some(prev) => prev.componentwise_min(m),
        });
    }
    Some(MPoly::term(
        a.nvars,
        acc.unwrap(),
        Cyclotomic::one(a.conductor),
    ))
}

/// Monic Euclid for operands involving a single variable: coefficients live
/// in the field Q(ζ_N), so remainders are exact.
fn univariate_gcd(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
    let to_vec = |p: &MPoly| -> Vec<Cyclotomic> {
        let mut v = vec![Cyclotomic::zero(p.conductor); p.degree_in(var) as usize + 1];
        for (m, c) in &p.terms {
            v[m.0[var] as usize] = c.clone();
        }
        v
    };
    let mut r0 = to_vec(a);
    let mut r1 = to_vec(b);
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let rem = univariate_rem(&r0, &r1);
        r0 = r1;
        r1 = rem;
    }
    let lc_inv = r0.last().unwrap().inv().expect("nonzero gcd");
    let mut out = MPoly::zero(a.nvars, a.conductor);
    for (e, c) in r0.iter().enumerate() {
        let mut m = Monomial::one(a.nvars);
        m.0[var] = e as u16;
        out.insert_term(m, c.mul(&lc_inv));
    }
    out
}

fn univariate_rem(num: &[Cyclotomic], den: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let conductor = den[0].conductor();
    let dd = den.len() - 1;
    let lead_inv = den[dd].inv().expect("nonzero leading coefficient");
    let mut rem = num.to_vec();
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let c = rem.last().unwrap().mul(&lead_inv);
        for (i, dc) in den.iter().enumerate() {
            let sub = dc.mul(&c);
            rem[k + i] = rem[k + i].sub(&sub);
        }
        while rem.len() > 1 && rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
        if rem.iter().all(|c| c.is_zero()) {
            return vec![Cyclotomic::zero(conductor)];
        }
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(idx: usize) -> MPoly {
        MPoly::var(2, 12, idx)
    }

    fn int(n: i64) -> MPoly {
        MPoly::constant(2, Cyclotomic::from_integer(12, n))
    }

    #[test]
    fn graded_lex_orders_by_total_degree_first() {
        let t0_sq = Monomial(vec![2, 0]);
        let t1 = Monomial(vec![0, 1]);
        assert!(t0_sq > t1);
        let t0 = Monomial(vec![1, 0]);
        assert!(t0 > t1);
    }

    #[test]
    fn exact_division_of_a_product_recovers_the_factor() {
        let f = var(0).add(&int(1));
        let g = var(1).sub(&int(3));
        let prod = f.mul(&g);
        assert_eq!(prod.exact_div(&g).unwrap(), f);
        assert_eq!(prod.exact_div(&f).unwrap(), g);
        assert!(prod.exact_div(&var(0).add(&int(2))).is_none());
    }

    #[test]
    fn gcd_of_products_with_common_factor() {
        let common = var(0).add(&var(1));
        let a = common.mul(&var(0).sub(&int(1)));
        let b = common.mul(&var(1).add(&int(2)));
        let g = gcd(&a, &b);
        assert_eq!(g, common.monic());
    }

    #[test]
    fn gcd_of_coprime_polynomials_is_one() {
        let a = var(0).add(&int(1));
        let b = var(0).add(&int(2));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn gcd_with_monomials_takes_shared_exponents() {
        let m = var(0).pow(3).mul(&var(1));
        let f = var(0).pow(2).mul(&var(1).pow(2)).add(&var(0).pow(4));
        let g = gcd(&m, &f);
        assert_eq!(g, var(0).pow(2));
    }

    #[test]
    fn substitution_evaluates_assigned_variables() {
        let f = var(0).mul(&var(1)).add(&var(0)).add(&int(5));
        let two = Cyclotomic::from_integer(12, 2);
        let out = f.substitute(&[Some(two), None]);
        let expected = var(1).scale(&Cyclotomic::from_integer(12, 2)).add(&int(7));
        assert_eq!(out, expected);
    }

    #[test]
    fn univariate_gcd_over_cyclotomic_coefficients() {
        let z = MPoly::constant(2, Cyclotomic::root_of_unity(12, 3, 1).unwrap());
        let a = var(0).sub(&z).mul(&var(0).add(&int(1)));
        let b = var(0).sub(&z).mul(&var(0).add(&int(4)));
        assert_eq!(gcd(&a, &b), var(0).sub(&z));
    }
}
