//! The working field K = Q(ζ_N)(t_p : p ∈ π): rational functions in one
//! indeterminate per declared prime, with cyclotomic constants.
//!
//! Scalars are kept in a canonical reduced form — numerator and denominator
//! coprime, denominator monic under graded lex — so syntactic equality is
//! field equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, One};

use crate::poly::{gcd, MPoly};
use crate::{Cyclotomic, Rational, ScalarError};

/// Declares the constants and indeterminates a computation works over: the
/// cyclotomic conductor N and the primes p contributing an indeterminate t_p.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldCtx {
    conductor: u32,
    primes: Vec<u32>,
}

impl FieldCtx {
    pub fn new(conductor: u32, primes: &[u32]) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        FieldCtx { conductor, primes }
    }

    pub fn rational(conductor: u32) -> Self {
        Self::new(conductor, &[])
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn nvars(&self) -> usize {
        self.primes.len()
    }

    pub fn var_of_prime(&self, p: u32) -> Option<usize> {
        self.primes.iter().position(|&q| q == p)
    }

    pub fn var_names(&self) -> Vec<String> {
        self.primes.iter().map(|p| format!("t_{p}")).collect()
    }
}

/// An element of K as a reduced fraction of polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    num: MPoly,
    den: MPoly,
}

impl Scalar {
    fn reduced(num: MPoly, den: MPoly) -> Self {
        debug_assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            let one = MPoly::one(num.nvars(), num.conductor());
            return Scalar { num, den: one };
        }
        let g = gcd(&num, &den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        Self::monic_den(num, den)
    }

    /// Final normalization when numerator and denominator are already coprime.
    fn monic_den(mut num: MPoly, mut den: MPoly) -> Self {
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Scalar { num, den }
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        Scalar {
            num: MPoly::zero(ctx.nvars(), ctx.conductor()),
            den: MPoly::one(ctx.nvars(), ctx.conductor()),
        }
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::from_integer(ctx, 1)
    }

    pub fn from_integer(ctx: &FieldCtx, n: i64) -> Self {
        Self::from_cyclotomic(ctx, Cyclotomic::from_integer(ctx.conductor(), n))
    }

    pub fn from_rational(ctx: &FieldCtx, r: Rational) -> Self {
        Self::from_cyclotomic(ctx, Cyclotomic::from_rational(ctx.conductor(), r))
    }

    pub fn from_cyclotomic(ctx: &FieldCtx, c: Cyclotomic) -> Self {
        assert_eq!(c.conductor(), ctx.conductor(), "conductor mismatch");
        Scalar {
            num: MPoly::constant(ctx.nvars(), c),
            den: MPoly::one(ctx.nvars(), ctx.conductor()),
        }
    }

    /// The indeterminate t_p attached to the prime p.
    pub fn indeterminate(ctx: &FieldCtx, p: u32) -> Result<Self, ScalarError> {
        let v = ctx
            .var_of_prime(p)
            .ok_or(ScalarError::UnknownIndeterminate { prime: p })?;
        Ok(Scalar {
            num: MPoly::var(ctx.nvars(), ctx.conductor(), v),
            den: MPoly::one(ctx.nvars(), ctx.conductor()),
        })
    }

    /// ζ_order^power as a scalar; the order must divide the conductor.
    pub fn root_of_unity(ctx: &FieldCtx, order: u32, power: i64) -> Result<Self, ScalarError> {
        let c = Cyclotomic::root_of_unity(ctx.conductor(), order, power)?;
        Ok(Self::from_cyclotomic(ctx, c))
    }

    /// Wraps a polynomial as a scalar with trivial denominator.
    pub(crate) fn from_polynomial(num: MPoly) -> Self {
        let den = MPoly::one(num.nvars(), num.conductor());
        Scalar { num, den }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn conductor(&self) -> u32 {
        self.num.conductor()
    }

    pub fn zero_like(&self) -> Self {
        let num = MPoly::zero(self.nvars(), self.conductor());
        let den = MPoly::one(self.nvars(), self.conductor());
        Scalar { num, den }
    }

    pub fn one_like(&self) -> Self {
        let one = MPoly::one(self.nvars(), self.conductor());
        Scalar {
            num: one.clone(),
            den: one,
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when no indeterminate occurs.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_cyclotomic(&self) -> Option<Cyclotomic> {
        if !self.den.is_one() {
            return None;
        }
        if self.num.is_zero() {
            return Some(Cyclotomic::zero(self.conductor()));
        }
        self.num.as_constant().cloned()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_cyclotomic()?.as_rational().cloned()
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_polynomial(self.num.add(&other.num));
        }
        // With both fractions reduced, the only possible cancellation after
        // cross-multiplying lives inside g = gcd of the denominators.
        let g = gcd(&self.den, &other.den);
        let d1g = self.den.exact_div(&g).expect("gcd divides");
        let d2g = other.den.exact_div(&g).expect("gcd divides");
        let t = self.num.mul(&d2g).add(&other.num.mul(&d1g));
        if t.is_zero() {
            return self.zero_like();
        }
        let h = gcd(&t, &g);
        let num = t.exact_div(&h).expect("gcd divides");
        let den = d1g
            .mul(&other.den)
            .exact_div(&h)
            .expect("remaining cancellation divides the denominator");
        Self::monic_den(num, den)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.zero_like();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_polynomial(self.num.mul(&other.num));
        }
        // Cross-reducing leaves all four parts pairwise coprime, so the
        // product is already in lowest terms.
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = other.den.exact_div(&g1).expect("gcd divides");
        let n2 = other.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        Self::monic_den(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn div_checked(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Exact polynomial quotient for fraction-free elimination: defined when
    /// both operands have trivial denominator and the division leaves no
    /// remainder.
    pub fn exact_poly_div(&self, other: &Self) -> Option<Self> {
        if !self.den.is_one() || !other.den.is_one() {
            return None;
        }
        let num = self.num.exact_div(&other.num)?;
        Some(Scalar {
            num,
            den: self.den.clone(),
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        Ok(acc)
    }

    /// Evaluates every indeterminate at the assigned rational value. Each
    /// prime occurring in the scalar must be assigned; assigned primes must
    /// belong to the context.
    pub fn specialize(
        &self,
        ctx: &FieldCtx,
        assign: &BTreeMap<u32, Rational>,
    ) -> Result<Self, ScalarError> {
        assert_eq!(ctx.nvars(), self.nvars(), "context mismatch");
        for &p in assign.keys() {
            if ctx.var_of_prime(p).is_none() {
                return Err(ScalarError::UnknownIndeterminate { prime: p });
            }
        }
        let mut values: Vec<Option<Cyclotomic>> = vec![None; ctx.nvars()];
        for (&p, r) in assign {
            let v = ctx.var_of_prime(p).unwrap();
            values[v] = Some(Cyclotomic::from_rational(ctx.conductor(), r.clone()));
        }
        for v in 0..ctx.nvars() {
            if values[v].is_none() && (self.num.uses_var(v) || self.den.uses_var(v)) {
                return Err(ScalarError::UnassignedIndeterminate {
                    prime: ctx.primes()[v],
                });
            }
        }
        let num = self.num.substitute(&values);
        let den = self.den.substitute(&values);
        if den.is_zero() {
            return Err(ScalarError::PoleAtAssignment);
        }
        Ok(Self::reduced(num, den))
    }

    /// Human-readable form with integral primitive parts, e.g. `(t_3-3)/2`.
    pub fn render(&self, ctx: &FieldCtx) -> String {
        assert_eq!(ctx.nvars(), self.nvars(), "context mismatch");
        if self.num.is_zero() {
            return "0".to_string();
        }
        let names = ctx.var_names();
        let cn = self.num.rational_content();
        let pn = self.num.div_rational(&cn);
        let cd = self.den.rational_content();
        let pd = self.den.div_rational(&cd);
        let factor = cn / cd;
        let num_str = join_factor(factor.numer(), &pn, &names);
        if pd.is_one() && factor.denom().is_one() {
            return num_str;
        }
        let den_str = join_factor(factor.denom(), &pd, &names);
        format!("{}/{}", paren_compound(&num_str), paren_compound(&den_str))
    }
}

fn join_factor(n: &BigInt, p: &MPoly, names: &[String]) -> String {
    if p.is_one() {
        return n.to_string();
    }
    let poly = if p.num_terms() > 1 {
        format!("({})", p.render(names))
    } else {
        p.render(names)
    };
    if n.is_one() {
        return p.render(names);
    }
    format!("{n}*{poly}")
}

fn paren_compound(s: &str) -> String {
    let atomic = !s[1..].contains(['+', '-']) && !s.contains('*');
    if atomic {
        s.to_string()
    } else {
        format!("({s})")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|v| format!("x{v}")).collect();
        if self.den.is_one() {
            write!(f, "{}", self.num.render(&names))
        } else {
            write!(
                f,
                "({})/({})",
                self.num.render(&names),
                self.den.render(&names)
            )
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$imp(rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$imp(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$imp(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.div_checked(rhs).expect("division by zero scalar")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).div(&rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> FieldCtx {
        FieldCtx::new(12, &[2, 3])
    }

    #[test]
    fn indeterminate_requires_declared_prime() {
        let ctx = ctx();
        assert!(Scalar::indeterminate(&ctx, 3).is_ok());
        assert_eq!(
            Scalar::indeterminate(&ctx, 5),
            Err(ScalarError::UnknownIndeterminate { prime: 5 })
        );
    }

    #[test]
    fn product_with_reciprocal_is_one() {
        let ctx = ctx();
        let t2 = Scalar::indeterminate(&ctx, 2).unwrap();
        let recip = Scalar::one(&ctx).div_checked(&t2).unwrap();
        assert!(t2.mul_ref(&recip).is_one());
    }

    #[test]
    fn quotient_of_equal_polynomials_is_one() {
        let ctx = ctx();
        let t3 = Scalar::indeterminate(&ctx, 3).unwrap();
        let f = t3.sub_ref(&Scalar::from_integer(&ctx, 3));
        assert!(f.div_checked(&f).unwrap().is_one());
    }

    #[test]
    fn specialization_is_exact() {
        let ctx = ctx();
        let t3 = Scalar::indeterminate(&ctx, 3).unwrap();
        let assign: BTreeMap<u32, Rational> =
            [(3, Rational::from(BigInt::from(5)))].into_iter().collect();
        let out = t3.specialize(&ctx, &assign).unwrap();
        assert_eq!(out, Scalar::from_integer(&ctx, 5));
    }

    #[test]
    fn specialization_reports_missing_assignments() {
        let ctx = ctx();
        let t2 = Scalar::indeterminate(&ctx, 2).unwrap();
        let t3 = Scalar::indeterminate(&ctx, 3).unwrap();
        let prod = t2.mul_ref(&t3);
        let assign: BTreeMap<u32, Rational> =
            [(2, Rational::from(BigInt::from(1)))].into_iter().collect();
        assert_eq!(
            prod.specialize(&ctx, &assign),
            Err(ScalarError::UnassignedIndeterminate { prime: 3 })
        );
    }

    #[test]
    fn specialization_detects_poles() {
        let ctx = ctx();
        let t3 = Scalar::indeterminate(&ctx, 3).unwrap();
        let f = t3
            .clone()
            .div_checked(&t3.sub_ref(&Scalar::from_integer(&ctx, 3)))
            .unwrap();
        let assign: BTreeMap<u32, Rational> =
            [(3, Rational::from(BigInt::from(3)))].into_iter().collect();
        assert_eq!(f.specialize(&ctx, &assign), Err(ScalarError::PoleAtAssignment));
    }

    #[test]
    fn render_extracts_rational_content() {
        let ctx = ctx();
        let t3 = Scalar::indeterminate(&ctx, 3).unwrap();
        let half = Scalar::from_rational(&ctx, Rational::new(BigInt::from(1), BigInt::from(2)));
        let f = t3.sub_ref(&Scalar::from_integer(&ctx, 3)).mul_ref(&half);
        assert_eq!(f.render(&ctx), "(t_3-3)/2");
        let z = Scalar::root_of_unity(&ctx, 3, 1).unwrap();
        assert_eq!(z.render(&ctx), "z12^2-1");
    }
}
