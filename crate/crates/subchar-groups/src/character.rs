//! Characters of subgroups with values in π-torsion roots of unity.
//!
//! A character on V is stored as a full exponent table against a fixed
//! modulus m — the π-part of the exponent of V^ab — so φ(v) = ζ_m^{e(v)}.
//! Using the canonical modulus for every character of a given (V, π) makes
//! equality and sorting plain componentwise comparisons.

use std::fmt;

use crate::group::{gcd_u32, lcm_u32};
use crate::{GroupError, PiClass, Subgroup};

#[derive(Clone, PartialEq, Eq)]
pub struct Character {
    domain: Subgroup,
    pi: PiClass,
    modulus: u32,
    /// exps[i] is the exponent at domain.elements()[i], reduced mod modulus.
    exps: Vec<u32>,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character(mod {}, exps {:?})", self.modulus, self.exps)
    }
}

/// π-part of the exponent of V^ab: the common modulus for all characters
/// of V with π-torsion values.
pub fn canonical_modulus(domain: &Subgroup, pi: &PiClass) -> u32 {
    let (ab, _) = domain.abelianization();
    pi.pi_part(ab.exponent() as u64) as u32
}

impl Character {
    pub fn trivial(domain: &Subgroup, pi: &PiClass) -> Self {
        Character {
            modulus: canonical_modulus(domain, pi),
            exps: vec![0; domain.order()],
            domain: domain.clone(),
            pi: pi.clone(),
        }
    }

    /// Builds a character from its exponent table, verifying multiplicativity
    /// on the whole domain.
    pub fn from_exps(
        domain: &Subgroup,
        pi: &PiClass,
        exps: Vec<u32>,
    ) -> Result<Self, GroupError> {
        let modulus = canonical_modulus(domain, pi);
        if exps.len() != domain.order() {
            return Err(GroupError::NotACharacter(format!(
                "need {} exponents, got {}",
                domain.order(),
                exps.len()
            )));
        }
        let chi = Character {
            exps: exps.into_iter().map(|e| e % modulus).collect(),
            modulus,
            domain: domain.clone(),
            pi: pi.clone(),
        };
        let parent = chi.domain.parent();
        for (i, &x) in chi.domain.elements().iter().enumerate() {
            for (j, &y) in chi.domain.elements().iter().enumerate() {
                let lhs = chi.exp_at(parent.op(x, y));
                if lhs != (chi.exps[i] + chi.exps[j]) % modulus {
                    return Err(GroupError::NotACharacter(
                        "exponent table is not multiplicative".into(),
                    ));
                }
            }
        }
        Ok(chi)
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn pi(&self) -> &PiClass {
        &self.pi
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent at a domain element (panics off the domain).
    pub fn exp_at(&self, x: u16) -> u32 {
        let i = self
            .domain
            .elements()
            .binary_search(&x)
            .expect("element outside the character's domain");
        self.exps[i]
    }

    pub fn try_exp(&self, x: u16) -> Option<u32> {
        self.domain
            .elements()
            .binary_search(&x)
            .ok()
            .map(|i| self.exps[i])
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Multiplicative order of the value at x, as a divisor of the modulus.
    pub fn value_order(&self, x: u16) -> u32 {
        let e = self.exp_at(x);
        self.modulus / gcd_u32(e, self.modulus)
    }

    pub fn inverse(&self) -> Character {
        Character {
            exps: self
                .exps
                .iter()
                .map(|&e| (self.modulus - e) % self.modulus)
                .collect(),
            ..self.clone()
        }
    }

    pub fn times(&self, other: &Character) -> Character {
        assert_eq!(self.domain, other.domain, "product needs equal domains");
        Character {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| (a + b) % self.modulus)
                .collect(),
            ..self.clone()
        }
    }

    /// Restriction to a subgroup of the domain, rebased to that subgroup's
    /// canonical modulus.
    pub fn restrict(&self, w: &Subgroup) -> Character {
        assert!(w.le(&self.domain), "restriction target must lie in the domain");
        let modulus = canonical_modulus(w, &self.pi);
        let exps = w
            .elements()
            .iter()
            .map(|&x| rebase(self.exp_at(x), self.modulus, modulus))
            .collect();
        Character {
            domain: w.clone(),
            pi: self.pi.clone(),
            modulus,
            exps,
        }
    }

    /// The unique common extension θ⊔γ to the product subgroup KL.
    pub fn join(&self, other: &Character) -> Result<Character, GroupError> {
        assert_eq!(
            self.domain.parent(),
            other.domain.parent(),
            "join needs a common parent group"
        );
        assert_eq!(self.pi, other.pi, "join needs a common prime set");
        let parent = self.domain.parent().clone();
        let j = self.domain.join(&other.domain);
        let m0 = lcm_u32(self.modulus, other.modulus);
        let mut table: Vec<Option<u32>> = vec![None; j.order()];
        for (i, &k) in self.domain.elements().iter().enumerate() {
            for (jj, &l) in other.domain.elements().iter().enumerate() {
                let w = parent.op(k, l);
                let pos = j.elements().binary_search(&w).expect("KL lies in the join");
                let e = (self.exps[i] * (m0 / self.modulus)
                    + other.exps[jj] * (m0 / other.modulus))
                    % m0;
                match table[pos] {
                    None => table[pos] = Some(e),
                    Some(prev) if prev != e => {
                        return Err(GroupError::IncompatibleOnIntersection)
                    }
                    Some(_) => {}
                }
            }
        }
        let modulus = canonical_modulus(&j, &self.pi);
        let mut exps = Vec::with_capacity(j.order());
        for entry in table {
            let e = entry.expect("join requires the product set KL to be a subgroup");
            let order = m0 / gcd_u32(e, m0);
            if modulus % order != 0 {
                return Err(GroupError::NotACharacter(
                    "joined values do not land in the target modulus".into(),
                ));
            }
            exps.push(rebase(e, m0, modulus));
        }
        Character::from_exps(&j, &self.pi, exps)
    }

    /// All characters of M restricting to this character (the set γ̃^M).
    pub fn extensions(&self, m: &Subgroup) -> Vec<Character> {
        assert!(self.domain.le(m), "extension target must contain the domain");
        character_group(m, &self.pi)
            .into_iter()
            .filter(|chi| chi.restrict(&self.domain) == *self)
            .collect()
    }

    /// Conjugate character on the conjugate domain: (^gφ)(gxg⁻¹) = φ(x).
    pub fn conjugate_by(&self, g: u16) -> Character {
        let parent = self.domain.parent().clone();
        let domain = self.domain.conjugate_by(g);
        let gi = parent.inv(g);
        let exps = domain
            .elements()
            .iter()
            .map(|&y| self.exp_at(parent.conjugate(gi, y)))
            .collect();
        debug_assert_eq!(canonical_modulus(&domain, &self.pi), self.modulus);
        Character {
            domain,
            pi: self.pi.clone(),
            modulus: self.modulus,
            exps,
        }
    }
}

/// Re-expresses ζ_from^e as a power of ζ_to; the value's order must divide `to`.
pub fn rebase(e: u32, from: u32, to: u32) -> u32 {
    if e == 0 {
        return 0;
    }
    let g = gcd_u32(e, from);
    let order = from / g;
    assert!(
        to % order == 0,
        "value of order {order} does not lie in the degree-{to} roots"
    );
    (e / g) * (to / order) % to
}

/// All homomorphisms V → π-torsion roots of unity, sorted by exponent table.
pub fn character_group(v: &Subgroup, pi: &PiClass) -> Vec<Character> {
    let (ab, proj) = v.abelianization();
    let m = pi.pi_part(ab.exponent() as u64) as u32;
    let expected = pi.pi_part(ab.order() as u64) as usize;

    // Greedy generating sequence for the abelianization.
    let mut gens: Vec<u16> = Vec::new();
    let mut span = vec![false; ab.order()];
    span[0] = true;
    let mut covered = 1;
    while covered < ab.order() {
        let g = (1..ab.order() as u16)
            .filter(|&x| !span[x as usize])
            .max_by_key(|&x| ab.element_order(x))
            .expect("uncovered element exists");
        gens.push(g);
        // Close the span under the new generator (abelian, so one-sided suffices).
        let mut frontier: Vec<u16> = (0..ab.order() as u16)
            .filter(|&x| span[x as usize])
            .collect();
        while let Some(x) = frontier.pop() {
            let y = ab.op(x, g);
            if !span[y as usize] {
                span[y as usize] = true;
                covered += 1;
                frontier.push(y);
            }
        }
    }

    // Candidate exponents per generator: values whose order divides the
    // generator's order. Independence is not assumed; the full-table check
    // below filters spurious tuples and the count assertion confirms it.
    let choices: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            let d = gcd_u32(m, ab.element_order(g));
            (0..d).map(|j| j * (m / d)).collect()
        })
        .collect();

    let mut homs: Vec<Vec<u32>> = Vec::new();
    let mut tuple = vec![0usize; gens.len()];
    loop {
        let assignment: Vec<u32> = tuple
            .iter()
            .zip(&choices)
            .map(|(&i, opts)| opts[i])
            .collect();
        if let Some(table) = hom_table(&ab, &gens, &assignment, m) {
            homs.push(table);
        }
        // Odometer over the choice lists.
        let mut pos = 0;
        loop {
            if pos == tuple.len() {
                break;
            }
            tuple[pos] += 1;
            if tuple[pos] < choices[pos].len() {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
        if pos == tuple.len() {
            break;
        }
    }

    assert_eq!(
        homs.len(),
        expected,
        "character count must be the π-part of |V^ab|"
    );

    let mut out: Vec<Character> = homs
        .into_iter()
        .map(|table| {
            let exps = v
                .elements()
                .iter()
                .map(|&x| table[proj[x as usize] as usize])
                .collect();
            Character {
                domain: v.clone(),
                pi: pi.clone(),
                modulus: m,
                exps,
            }
        })
        .collect();
    out.sort_by(|a, b| a.exps.cmp(&b.exps));
    out
}

/// Extends generator exponents to the whole abelianization and verifies the
/// result is multiplicative; None when the assignment is inconsistent.
fn hom_table(ab: &crate::Group, gens: &[u16], assignment: &[u32], m: u32) -> Option<Vec<u32>> {
    let mut exp: Vec<Option<u32>> = vec![None; ab.order()];
    exp[0] = Some(0);
    let mut frontier = vec![0u16];
    while let Some(x) = frontier.pop() {
        let ex = exp[x as usize].unwrap();
        for (&g, &eg) in gens.iter().zip(assignment) {
            let y = ab.op(x, g);
            if exp[y as usize].is_none() {
                exp[y as usize] = Some((ex + eg) % m);
                frontier.push(y);
            }
        }
    }
    let table: Vec<u32> = exp.into_iter().map(|e| e.expect("generators span")).collect();
    for x in 0..ab.order() as u16 {
        for y in 0..ab.order() as u16 {
            if table[ab.op(x, y) as usize] != (table[x as usize] + table[y as usize]) % m {
                return None;
            }
        }
    }
    Some(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{subgroups, Group};

    #[test]
    fn character_counts_match_the_pi_part_of_the_abelianization() {
        let pi3 = PiClass::new([3]).unwrap();
        let c3 = Group::cyclic(3);
        assert_eq!(character_group(&Subgroup::full(&c3), &pi3).len(), 3);
        let c6 = Group::cyclic(6);
        let chars = character_group(&Subgroup::full(&c6), &pi3);
        assert_eq!(chars.len(), 3);
        // All trivial on the 2-part: the order-2 element of C_6 is 3.
        assert!(chars.iter().all(|chi| chi.exp_at(3) == 0));
        let s3 = Group::symmetric_3();
        assert_eq!(character_group(&Subgroup::full(&s3), &pi3).len(), 1);
    }

    #[test]
    fn counts_hold_across_whole_subgroup_lattices() {
        for (g, pi) in [
            (Group::cyclic(6), PiClass::new([2, 3]).unwrap()),
            (Group::symmetric_3(), PiClass::new([2]).unwrap()),
            (Group::abelian(&[2, 2]), PiClass::new([2]).unwrap()),
            (Group::cyclic(4), PiClass::empty()),
        ] {
            for v in subgroups(&g, 36).unwrap() {
                let (ab, _) = v.abelianization();
                let expected = pi.pi_part(ab.order() as u64) as usize;
                assert_eq!(character_group(&v, &pi).len(), expected);
            }
        }
    }

    #[test]
    fn restriction_is_surjective_for_abelian_parents() {
        let c6 = Group::cyclic(6);
        let pi = PiClass::new([2, 3]).unwrap();
        let full = Subgroup::full(&c6);
        let top = character_group(&full, &pi);
        assert_eq!(top.len(), 6);
        for w in subgroups(&c6, 36).unwrap() {
            let mut restricted: Vec<Character> =
                top.iter().map(|chi| chi.restrict(&w)).collect();
            restricted.sort_by(|a, b| a.exps().cmp(b.exps()));
            restricted.dedup();
            assert_eq!(restricted, character_group(&w, &pi));
        }
    }

    #[test]
    fn extensions_count_the_pi_part_of_the_index() {
        let c3 = Group::cyclic(3);
        let pi3 = PiClass::new([3]).unwrap();
        let triv = Character::trivial(&Subgroup::trivial(&c3), &pi3);
        assert_eq!(triv.extensions(&Subgroup::full(&c3)).len(), 3);

        let c6 = Group::cyclic(6);
        let pi = PiClass::new([2, 3]).unwrap();
        let two = Subgroup::generated_by(&c6, &[3]);
        for gamma in character_group(&two, &pi) {
            assert_eq!(gamma.extensions(&Subgroup::full(&c6)).len(), 3);
        }
    }

    #[test]
    fn join_glues_compatible_characters_along_coprime_parts() {
        let c6 = Group::cyclic(6);
        let pi = PiClass::new([2, 3]).unwrap();
        let k = Subgroup::generated_by(&c6, &[3]); // C_2
        let l = Subgroup::generated_by(&c6, &[2]); // C_3
        for gamma in character_group(&k, &pi) {
            for theta in character_group(&l, &pi) {
                let joint = gamma.join(&theta).unwrap();
                assert!(joint.domain().is_full());
                assert_eq!(joint.restrict(&k), gamma);
                assert_eq!(joint.restrict(&l), theta);
            }
        }
    }

    #[test]
    fn join_rejects_disagreement_on_the_intersection() {
        let c3 = Group::cyclic(3);
        let pi3 = PiClass::new([3]).unwrap();
        let full = Subgroup::full(&c3);
        let chars = character_group(&full, &pi3);
        assert!(matches!(
            chars[0].join(&chars[1]),
            Err(GroupError::IncompatibleOnIntersection)
        ));
        // A character joins with itself.
        assert_eq!(chars[1].join(&chars[1]).unwrap(), chars[1]);
    }

    #[test]
    fn inverse_and_product_cancel() {
        let c4 = Group::cyclic(4);
        let pi2 = PiClass::new([2]).unwrap();
        for chi in character_group(&Subgroup::full(&c4), &pi2) {
            assert!(chi.times(&chi.inverse()).is_trivial());
        }
    }

    #[test]
    fn conjugation_moves_the_domain_and_keeps_values() {
        let s3 = Group::symmetric_3();
        let pi2 = PiClass::new([2]).unwrap();
        // A transposition subgroup and a 3-cycle to conjugate by.
        let t = s3
            .elements()
            .find(|&x| x != 0 && s3.element_order(x) == 2)
            .unwrap();
        let c = s3.elements().find(|&x| s3.element_order(x) == 3).unwrap();
        let dom = Subgroup::generated_by(&s3, &[t]);
        let chars = character_group(&dom, &pi2);
        assert_eq!(chars.len(), 2);
        let sign = &chars[1];
        assert!(!sign.is_trivial());
        let moved = sign.conjugate_by(c);
        assert_ne!(moved.domain(), sign.domain());
        assert_eq!(moved.exp_at(s3.conjugate(c, t)), sign.exp_at(t));
    }

    #[test]
    fn empty_pi_leaves_only_trivial_characters() {
        let c6 = Group::cyclic(6);
        let chars = character_group(&Subgroup::full(&c6), &PiClass::empty());
        assert_eq!(chars.len(), 1);
        assert!(chars[0].is_trivial());
        assert_eq!(chars[0].modulus(), 1);
    }
}
