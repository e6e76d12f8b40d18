//! Elements of the cyclotomic field Q(ζ_N), stored in the power basis of
//! Q[x]/(Φ_N) so that equality is coordinatewise and every nonzero element is
//! invertible.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, One, Signed, Zero};

use crate::{euler_phi, Rational, ScalarError};

/// Per-conductor reduction data: the cyclotomic polynomial and the power basis
/// expansions of x^k for k up to 2(φ(N)-1).
struct Reduction {
    degree: usize,
    /// powers[k] = coordinates of x^(degree + k) modulo Φ_N.
    powers: Vec<Vec<Rational>>,
}

fn reduction_for(conductor: u32) -> Arc<Reduction> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Reduction>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut cache = cache.lock().unwrap();
    cache
        .entry(conductor)
        .or_insert_with(|| Arc::new(build_reduction(conductor)))
        .clone()
}

fn build_reduction(conductor: u32) -> Reduction {
    let phi = cyclotomic_polynomial(conductor);
    let degree = phi.len() - 1;
    // x^degree = -(c_0 + c_1 x + ... + c_{d-1} x^{d-1}); higher powers follow
    // by shifting and reducing once more.
    let base: Vec<Rational> = phi[..degree]
        .iter()
        .map(|c| Rational::from(-c.clone()))
        .collect();
    let mut powers = vec![base];
    for k in 1..degree.max(1) - 1 {
        let prev = &powers[k - 1];
        let mut next = vec![Rational::zero(); degree];
        let carry = prev[degree - 1].clone();
        for i in 1..degree {
            next[i] = prev[i - 1].clone();
        }
        if !carry.is_zero() {
            for (i, c) in powers[0].iter().enumerate() {
                next[i] += c * &carry;
            }
        }
        powers.push(next);
    }
    Reduction { degree, powers }
}

/// Coefficients of Φ_n, ascending degree, monic, over the integers.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // x^n - 1 divided by Φ_d for every proper divisor d of n.
    let mut f = vec![BigInt::zero(); (n + 1) as usize];
    f[0] = -BigInt::one();
    f[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            f = poly_div_exact_int(&f, &phi_d);
        }
    }
    f
}

/// Exact division of integer polynomials with monic divisor.
fn poly_div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, dc) in den.iter().enumerate() {
            rem[k + i] -= dc * &c;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// An element of Q(ζ_N) in the power basis 1, ζ, ..., ζ^(φ(N)-1).
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    conductor: u32,
    coords: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(conductor: u32) -> Self {
        let d = euler_phi(conductor) as usize;
        Cyclotomic {
            conductor,
            coords: vec![Rational::zero(); d],
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, Rational::one())
    }

    pub fn from_rational(conductor: u32, r: Rational) -> Self {
        let mut c = Self::zero(conductor);
        c.coords[0] = r;
        c
    }

    pub fn from_integer(conductor: u32, n: i64) -> Self {
        Self::from_rational(conductor, Rational::from(BigInt::from(n)))
    }

    /// ζ_order^power embedded into Q(ζ_N); `order` must divide the conductor.
    pub fn root_of_unity(conductor: u32, order: u32, power: i64) -> Result<Self, ScalarError> {
        if order == 0 || conductor % order != 0 {
            return Err(ScalarError::ConductorTooSmall { order, conductor });
        }
        let step = (conductor / order) as i64;
        let exp = (power.rem_euclid(order as i64) * step) as usize;
        Ok(Self::power_of_zeta(conductor, exp))
    }

    /// ζ_N^exp as an element, reducing modulo Φ_N when needed.
    fn power_of_zeta(conductor: u32, exp: usize) -> Self {
        let red = reduction_for(conductor);
        let d = red.degree;
        let exp = exp % conductor as usize;
        let mut c = Self::zero(conductor);
        if exp < d {
            c.coords[exp] = Rational::one();
            return c;
        }
        // Multiply out x^exp by repeated shift-and-reduce.
        let mut cur = vec![Rational::zero(); d];
        cur[d - 1] = Rational::one();
        let mut remaining = exp - (d - 1);
        while remaining > 0 {
            let carry = cur[d - 1].clone();
            for i in (1..d).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = Rational::zero();
            if !carry.is_zero() {
                for (i, b) in red.powers[0].iter().enumerate() {
                    cur[i] += b * &carry;
                }
            }
            remaining -= 1;
        }
        c.coords = cur;
        c
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// Some(r) when the element lies in the rational subfield.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(
            self.conductor, other.conductor,
            "cyclotomic conductor mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            conductor: self.conductor,
            coords,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Cyclotomic {
            conductor: self.conductor,
            coords,
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.conductor);
        }
        Cyclotomic {
            conductor: self.conductor,
            coords: self.coords.iter().map(|a| a * r).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        // Rational fast paths keep constant-heavy linear algebra cheap.
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        let red = reduction_for(self.conductor);
        let d = red.degree;
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        let mut coords: Vec<Rational> = prod[..d].to_vec();
        for (k, c) in prod[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, b) in red.powers[k].iter().enumerate() {
                coords[i] += b * c;
            }
        }
        Cyclotomic {
            conductor: self.conductor,
            coords,
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.conductor, r.recip()));
        }
        // Extended Euclid between this element (as a polynomial) and Φ_N.
        let phi: Vec<Rational> = cyclotomic_polynomial(self.conductor)
            .into_iter()
            .map(Rational::from)
            .collect();
        let mut r0 = phi;
        let mut r1 = trim(self.coords.clone());
        let mut t0: Vec<Rational> = vec![];
        let mut t1: Vec<Rational> = vec![Rational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let t = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        // gcd is the nonzero constant r1[0]; t1 / r1[0] inverts self mod Φ_N.
        let c = r1
            .first()
            .filter(|c| !c.is_zero())
            .expect("cyclotomic polynomial is irreducible")
            .clone();
        let d = euler_phi(self.conductor) as usize;
        let mut coords = vec![Rational::zero(); d];
        for (i, t) in t1.iter().enumerate() {
            coords[i] = t / &c;
        }
        Ok(Cyclotomic {
            conductor: self.conductor,
            coords,
        })
    }

    /// Positive rational c such that self/c has coprime integer coordinates;
    /// zero for the zero element. Used for content stripping.
    pub fn content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coords {
            if c.is_zero() {
                continue;
            }
            num_gcd = num::integer::gcd(num_gcd, c.numer().abs());
            den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
        }
        if num_gcd.is_zero() {
            Rational::zero()
        } else {
            Rational::new(num_gcd, den_lcm)
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Cyclotomic {
    /// Renders in terms of zN, e.g. `2*z3+1`; plain rationals as themselves.
    pub fn render(&self) -> String {
        if let Some(r) = self.as_rational() {
            return render_rational(r);
        }
        let mut parts = Vec::new();
        for (i, c) in self.coords.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => format!("z{}", self.conductor),
                _ => format!("z{}^{}", self.conductor, i),
            };
            let body = if var.is_empty() {
                render_rational(&c.abs())
            } else if c.abs().is_one() {
                var
            } else {
                format!("{}*{}", render_rational(&c.abs()), var)
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() {
                    format!("-{body}")
                } else {
                    body
                });
            } else if c.is_negative() {
                parts.push(format!("-{body}"));
            } else {
                parts.push(format!("+{body}"));
            }
        }
        parts.concat()
    }
}

pub(crate) fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (vec![Rational::zero()], trim(rem));
    }
    let lead = den[dd].clone();
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for k in (0..=rem.len() - 1 - dd).rev() {
        let c = &rem[k + dd] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, dc) in den.iter().enumerate() {
            let sub = dc * &c;
            rem[k + i] -= sub;
        }
    }
    (trim(quot), trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len()).max(1);
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials_match_known_values() {
        let as_i64 = |v: Vec<BigInt>| -> Vec<i64> {
            v.into_iter().map(|c| i64::try_from(c).unwrap()).collect()
        };
        assert_eq!(as_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(
            as_i64(cyclotomic_polynomial(20)),
            vec![1, 0, -1, 0, 1, 0, -1, 0, 1]
        );
    }

    #[test]
    fn zeta3_satisfies_its_minimal_polynomial() {
        let z = Cyclotomic::root_of_unity(3, 3, 1).unwrap();
        let z2 = z.mul(&z);
        let sum = z2.add(&z).add(&Cyclotomic::one(3));
        assert!(sum.is_zero());
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = Cyclotomic::root_of_unity(4, 4, 1).unwrap();
        assert_eq!(i.mul(&i), Cyclotomic::from_integer(4, -1));
    }

    #[test]
    fn root_order_must_divide_conductor() {
        assert_eq!(
            Cyclotomic::root_of_unity(4, 3, 1),
            Err(ScalarError::ConductorTooSmall {
                order: 3,
                conductor: 4
            })
        );
    }

    #[test]
    fn inverse_of_nontrivial_element() {
        let z = Cyclotomic::root_of_unity(12, 12, 1).unwrap();
        let a = z.add(&Cyclotomic::from_integer(12, 2));
        let b = a.inv().unwrap();
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn geometric_sum_of_fifth_roots_vanishes() {
        let mut sum = Cyclotomic::zero(5);
        for k in 0..5 {
            sum = sum.add(&Cyclotomic::root_of_unity(5, 5, k).unwrap());
        }
        assert!(sum.is_zero());
    }
}
