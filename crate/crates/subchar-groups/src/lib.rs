//! Finite groups as Cayley tables, with the subgroup, product, Goursat, and
//! π-constrained character machinery used by the deformed subcharacter
//! algebras.
//!
//! Groups are small by design (ambient products stay well under 64 elements),
//! so everything is exact, exhaustive, and index-based: elements are `u16`
//! indices into a multiplication table, subgroups are sorted index sets, and
//! characters are exponent vectors for a fixed root of unity.

pub mod character;
pub mod group;
pub mod subgroup;

pub use character::{character_group, Character};
pub use group::{isomorphic, Group};
pub use subgroup::{
    star, subgroups, subquotient_le, GoursatQuintuple, Product, Subgroup, DEFAULT_ORDER_BOUND,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("subgroup does not live in the expected direct product")]
    NotASubgroupOfProduct,
    #[error("invalid Goursat quintuple: {0}")]
    InvalidQuintuple(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("characters disagree on the intersection of their domains")]
    IncompatibleOnIntersection,
    #[error("star product factors do not share the middle group")]
    MiddleGroupMismatch,
}

/// A set of primes π; characters take values in roots of unity of
/// π-number order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PiClass {
    primes: Vec<u32>,
}

impl PiClass {
    pub fn new(primes: impl IntoIterator<Item = u32>) -> Result<Self, GroupError> {
        let mut primes: Vec<u32> = primes.into_iter().collect();
        primes.sort_unstable();
        primes.dedup();
        for &p in &primes {
            if !is_prime(p) {
                return Err(GroupError::NotPrime(p));
            }
        }
        Ok(PiClass { primes })
    }

    pub fn empty() -> Self {
        PiClass { primes: Vec::new() }
    }

    pub fn all_primes_of(n: u64) -> Self {
        PiClass {
            primes: prime_divisors(n),
        }
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn contains(&self, p: u32) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// Largest divisor of n whose prime factors all lie in π.
    pub fn pi_part(&self, mut n: u64) -> u64 {
        assert!(n > 0, "pi_part needs a positive integer");
        let mut part = 1u64;
        for &p in &self.primes {
            let p = p as u64;
            while n % p == 0 {
                n /= p;
                part *= p;
            }
        }
        part
    }

    /// Whether n is a π-number (all prime factors in π).
    pub fn is_pi_number(&self, n: u64) -> bool {
        self.pi_part(n) == n
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_divisors(mut n: u64) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d as u32);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u32);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_parts_split_off_the_named_primes() {
        let two = PiClass::new([2]).unwrap();
        assert_eq!(two.pi_part(12), 4);
        assert_eq!(two.pi_part(9), 1);
        assert_eq!(PiClass::empty().pi_part(12), 1);
        let all = PiClass::all_primes_of(12);
        assert_eq!(all.primes(), &[2, 3]);
        assert_eq!(all.pi_part(12), 12);
        assert!(two.is_pi_number(8));
        assert!(!two.is_pi_number(6));
    }

    #[test]
    fn composite_primes_are_rejected() {
        assert!(matches!(PiClass::new([4]), Err(GroupError::NotPrime(4))));
        assert!(PiClass::new([3, 2, 3]).unwrap().primes() == [2, 3]);
    }
}
