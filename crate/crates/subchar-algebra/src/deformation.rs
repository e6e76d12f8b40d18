//! The deformation ℓ: a monoid homomorphism N⁺ → K^×, stored on primes and
//! extended multiplicatively. Values may be rational constants, the prime
//! itself, or the indeterminate t_p.

use std::collections::BTreeMap;

use num::Zero;
use subchar_scalars::{FieldCtx, Rational, Scalar};

use crate::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
enum Atom {
    /// ℓ(p) = p (the undeformed case).
    Id,
    /// ℓ(p) = 1.
    One,
    /// ℓ(p) = t_p.
    Indet,
    Const(Rational),
}

#[derive(Clone, Debug, PartialEq)]
enum Mode {
    Uniform(Atom),
    Explicit(BTreeMap<u32, Atom>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeformationMap {
    mode: Mode,
}

impl DeformationMap {
    pub fn identity() -> Self {
        DeformationMap {
            mode: Mode::Uniform(Atom::Id),
        }
    }

    pub fn one() -> Self {
        DeformationMap {
            mode: Mode::Uniform(Atom::One),
        }
    }

    pub fn indeterminates() -> Self {
        DeformationMap {
            mode: Mode::Uniform(Atom::Indet),
        }
    }

    /// Parses `id`, `one`, `indet`, or an explicit assignment list like
    /// `2=1,3=t,5=7` (values: `t` for the indeterminate, or a nonzero
    /// rational).
    pub fn parse(spec: &str) -> Result<Self, AlgebraError> {
        let spec = spec.trim();
        match spec {
            "id" => return Ok(Self::identity()),
            "one" => return Ok(Self::one()),
            "indet" => return Ok(Self::indeterminates()),
            "" => {
                return Err(AlgebraError::InvalidDeformationSpec(
                    "empty spec".into(),
                ))
            }
            _ => {}
        }
        let mut map = BTreeMap::new();
        for part in spec.split(',') {
            let (p, v) = part.split_once('=').ok_or_else(|| {
                AlgebraError::InvalidDeformationSpec(format!(
                    "expected prime=value, got `{part}`"
                ))
            })?;
            let prime: u32 = p.trim().parse().map_err(|_| {
                AlgebraError::InvalidDeformationSpec(format!("bad prime `{p}`"))
            })?;
            if !subchar_groups::is_prime(prime) {
                return Err(AlgebraError::InvalidDeformationSpec(format!(
                    "{prime} is not prime"
                )));
            }
            let v = v.trim();
            let atom = if v == "t" {
                Atom::Indet
            } else {
                let r: Rational = v.parse().map_err(|_| {
                    AlgebraError::InvalidDeformationSpec(format!("bad value `{v}`"))
                })?;
                if r.is_zero() {
                    return Err(AlgebraError::ZeroDeformation);
                }
                Atom::Const(r)
            };
            if map.insert(prime, atom).is_some() {
                return Err(AlgebraError::InvalidDeformationSpec(format!(
                    "prime {prime} assigned twice"
                )));
            }
        }
        Ok(DeformationMap {
            mode: Mode::Explicit(map),
        })
    }

    pub fn eval_prime(&self, p: u32, ctx: &FieldCtx) -> Result<Scalar, AlgebraError> {
        let atom = match &self.mode {
            Mode::Uniform(a) => a,
            Mode::Explicit(map) => map.get(&p).ok_or(AlgebraError::UnassignedPrime(p))?,
        };
        Ok(match atom {
            Atom::Id => Scalar::from_integer(ctx, p as i64),
            Atom::One => Scalar::one(ctx),
            Atom::Indet => Scalar::indeterminate(ctx, p)?,
            Atom::Const(r) => Scalar::from_rational(ctx, r.clone()),
        })
    }

    /// ℓ(n) for a positive integer, multiplicatively over the factorization;
    /// ℓ(1) = 1.
    pub fn eval_order(&self, n: u64, ctx: &FieldCtx) -> Result<Scalar, AlgebraError> {
        assert!(n > 0, "the deformation is defined on positive integers");
        let mut out = Scalar::one(ctx);
        let mut n = n;
        for p in subchar_groups::prime_divisors(n) {
            let value = self.eval_prime(p, ctx)?;
            while n % p as u64 == 0 {
                n /= p as u64;
                out = out * &value;
            }
        }
        Ok(out)
    }

    /// Whether any prime is mapped to an indeterminate.
    pub fn uses_indeterminates(&self) -> bool {
        match &self.mode {
            Mode::Uniform(a) => *a == Atom::Indet,
            Mode::Explicit(map) => map.values().any(|a| *a == Atom::Indet),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> FieldCtx {
        FieldCtx::new(1, &[2, 3, 5])
    }

    #[test]
    fn uniform_modes_extend_multiplicatively() {
        let ctx = ctx();
        let id = DeformationMap::parse("id").unwrap();
        assert_eq!(id.eval_order(12, &ctx).unwrap(), Scalar::from_integer(&ctx, 12));
        assert!(DeformationMap::parse("one")
            .unwrap()
            .eval_order(30, &ctx)
            .unwrap()
            .is_one());
        let t = DeformationMap::parse("indet").unwrap();
        let t2 = Scalar::indeterminate(&ctx, 2).unwrap();
        let t3 = Scalar::indeterminate(&ctx, 3).unwrap();
        assert_eq!(t.eval_order(12, &ctx).unwrap(), &t2 * &t2 * t3);
        assert!(t.eval_order(1, &ctx).unwrap().is_one());
    }

    #[test]
    fn explicit_specs_parse_and_reject_garbage() {
        let ctx = ctx();
        let l = DeformationMap::parse("2=1,3=t,5=7").unwrap();
        assert!(l.eval_prime(2, &ctx).unwrap().is_one());
        assert_eq!(
            l.eval_prime(3, &ctx).unwrap(),
            Scalar::indeterminate(&ctx, 3).unwrap()
        );
        assert_eq!(l.eval_prime(5, &ctx).unwrap(), Scalar::from_integer(&ctx, 7));
        assert!(matches!(
            l.eval_prime(7, &ctx),
            Err(AlgebraError::UnassignedPrime(7))
        ));
        assert!(matches!(
            DeformationMap::parse("4=1"),
            Err(AlgebraError::InvalidDeformationSpec(_))
        ));
        assert!(matches!(
            DeformationMap::parse("3=0"),
            Err(AlgebraError::ZeroDeformation)
        ));
        assert!(matches!(
            DeformationMap::parse("3=1,3=2"),
            Err(AlgebraError::InvalidDeformationSpec(_))
        ));
    }
}
