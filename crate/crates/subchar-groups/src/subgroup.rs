//! Subgroups, subgroup enumeration, direct products with their projection and
//! kernel data, Goursat quintuples, thoraxes, and the star product.

use std::collections::HashSet;
use std::fmt;

use crate::group::isomorphic;
use crate::{Group, GroupError};

pub const DEFAULT_ORDER_BOUND: usize = 36;

/// A subgroup given by its sorted element set inside an owning parent.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Group,
    elements: Vec<u16>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?} ≤ {:?}", self.elements, self.parent)
    }
}

impl Subgroup {
    /// Validates closure and identity membership.
    pub fn new(parent: &Group, elements: impl IntoIterator<Item = u16>) -> Result<Self, GroupError> {
        let mut elements: Vec<u16> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(GroupError::NotASubgroup);
        }
        if elements.iter().any(|&x| x as usize >= parent.order()) {
            return Err(GroupError::NotASubgroup);
        }
        for &a in &elements {
            if elements.binary_search(&parent.inv(a)).is_err() {
                return Err(GroupError::NotASubgroup);
            }
            for &b in &elements {
                if elements.binary_search(&parent.op(a, b)).is_err() {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        Ok(Subgroup {
            parent: parent.clone(),
            elements,
        })
    }

    pub(crate) fn from_sorted_unchecked(parent: &Group, elements: Vec<u16>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup {
            parent: parent.clone(),
            elements,
        }
    }

    pub fn trivial(parent: &Group) -> Self {
        Self::from_sorted_unchecked(parent, vec![0])
    }

    pub fn full(parent: &Group) -> Self {
        Self::from_sorted_unchecked(parent, (0..parent.order() as u16).collect())
    }

    /// Smallest subgroup containing the generators.
    pub fn generated_by(parent: &Group, gens: &[u16]) -> Self {
        let mut in_set = vec![false; parent.order()];
        in_set[0] = true;
        let mut members = vec![0u16];
        let mut queue = vec![0u16];
        for &g in gens {
            if !in_set[g as usize] {
                in_set[g as usize] = true;
                members.push(g);
                queue.push(g);
            }
        }
        while let Some(x) = queue.pop() {
            for &y in members.clone().iter() {
                for z in [parent.op(x, y), parent.op(y, x)] {
                    if !in_set[z as usize] {
                        in_set[z as usize] = true;
                        members.push(z);
                        queue.push(z);
                    }
                }
            }
            let xi = parent.inv(x);
            if !in_set[xi as usize] {
                in_set[xi as usize] = true;
                members.push(xi);
                queue.push(xi);
            }
        }
        members.sort_unstable();
        Self::from_sorted_unchecked(parent, members)
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn elements(&self) -> &[u16] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u16) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    pub fn le(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let elements: Vec<u16> = self
            .elements
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Self::from_sorted_unchecked(&self.parent, elements)
    }

    /// Subgroup generated by the union; equals the product set when one
    /// factor normalizes the other.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let gens: Vec<u16> = self
            .elements
            .iter()
            .chain(other.elements.iter())
            .copied()
            .collect();
        Self::generated_by(&self.parent, &gens)
    }

    pub fn conjugate_by(&self, g: u16) -> Subgroup {
        let mut elements: Vec<u16> = self
            .elements
            .iter()
            .map(|&x| self.parent.conjugate(g, x))
            .collect();
        elements.sort_unstable();
        Self::from_sorted_unchecked(&self.parent, elements)
    }

    pub fn is_normal_in(&self, ambient: &Subgroup) -> bool {
        ambient.elements.iter().all(|&g| {
            self.elements
                .iter()
                .all(|&x| self.contains(self.parent.conjugate(g, x)))
        })
    }

    /// Commutator subgroup [H, H].
    pub fn derived(&self) -> Subgroup {
        let mut gens = Vec::new();
        for &a in &self.elements {
            for &b in &self.elements {
                gens.push(self.parent.commutator(a, b));
            }
        }
        let d = Subgroup::generated_by(&self.parent, &gens);
        d.intersect(self) // commutators of members stay inside the subgroup
    }

    /// The abelian quotient H/[H,H] with the projection map (coset index per
    /// parent element, u16::MAX outside H).
    pub fn abelianization(&self) -> (Group, Vec<u16>) {
        let derived = self.derived();
        self.parent.quotient_by(
            &self.elements,
            derived.elements(),
            format!("{}^ab", self.parent.label()),
        )
    }

    /// Quotient by a normal subgroup of this subgroup.
    pub fn quotient(&self, normal: &Subgroup) -> (Group, Vec<u16>) {
        assert!(normal.le(self) && normal.is_normal_in(self), "need a normal subgroup");
        self.parent
            .quotient_by(&self.elements, normal.elements(), "quotient".into())
    }

    /// Group structure on this subgroup's own elements (reindexed 0..order).
    pub fn as_group(&self) -> Group {
        let trivial = Subgroup::trivial(&self.parent);
        self.parent
            .quotient_by(&self.elements, trivial.elements(), "subgroup".into())
            .0
    }
}

/// All subgroups of `g`, sorted by (order, elements); breadth-first closure
/// over single-generator extensions.
pub fn subgroups(g: &Group, bound: usize) -> Result<Vec<Subgroup>, GroupError> {
    if g.order() > bound {
        return Err(GroupError::OrderBoundExceeded {
            order: g.order(),
            bound,
        });
    }
    assert!(g.order() <= 64, "subgroup enumeration uses 64-bit masks");
    let close = |mask: u64| -> u64 {
        let mut members: Vec<u16> = (0..g.order() as u16)
            .filter(|&x| mask >> x & 1 == 1)
            .collect();
        let mut closed = mask;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            let xi = g.inv(x);
            if closed >> xi & 1 == 0 {
                closed |= 1 << xi;
                members.push(xi);
            }
            let mut j = 0;
            while j <= i {
                for z in [g.op(x, members[j]), g.op(members[j], x)] {
                    if closed >> z & 1 == 0 {
                        closed |= 1 << z;
                        members.push(z);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        closed
    };
    let mut found: HashSet<u64> = HashSet::new();
    let mut queue: Vec<u64> = vec![1];
    found.insert(1);
    while let Some(mask) = queue.pop() {
        for x in 1..g.order() as u16 {
            if mask >> x & 1 == 1 {
                continue;
            }
            let bigger = close(mask | 1 << x);
            if found.insert(bigger) {
                queue.push(bigger);
            }
        }
    }
    let mut subs: Vec<Subgroup> = found
        .into_iter()
        .map(|mask| {
            let elements: Vec<u16> = (0..g.order() as u16)
                .filter(|&x| mask >> x & 1 == 1)
                .collect();
            Subgroup::from_sorted_unchecked(g, elements)
        })
        .collect();
    subs.sort_by(|a, b| {
        (a.order(), a.elements()).cmp(&(b.order(), b.elements()))
    });
    Ok(subs)
}

/// Decides whether `n` is isomorphic to a subquotient H/N of `m`.
pub fn subquotient_le(n: &Group, m: &Group, bound: usize) -> Result<bool, GroupError> {
    if n.order() > m.order() {
        return Ok(false);
    }
    if m.order() % n.order() != 0 && !divides_some_subgroup_order(n.order(), m.order()) {
        return Ok(false);
    }
    let subs = subgroups(m, bound)?;
    for h in &subs {
        if h.order() % n.order() != 0 {
            continue;
        }
        let normals: Vec<&Subgroup> = subs
            .iter()
            .filter(|k| k.order() * n.order() == h.order() && k.le(h) && k.is_normal_in(h))
            .collect();
        for k in normals {
            let (q, _) = h.quotient(k);
            if isomorphic(&q, n, bound)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn divides_some_subgroup_order(n: usize, m: usize) -> bool {
    // Lagrange screening: a subquotient's order divides some divisor of |m|.
    (1..=m).any(|d| m % d == 0 && d % n == 0)
}

/// A direct product F×G with pairing (a, b) ↦ a·|G| + b.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Product {
    left: Group,
    right: Group,
    group: Group,
}

impl Product {
    pub fn new(left: &Group, right: &Group) -> Self {
        Product {
            left: left.clone(),
            right: right.clone(),
            group: left.direct_product_group(right),
        }
    }

    pub fn left(&self) -> &Group {
        &self.left
    }

    pub fn right(&self) -> &Group {
        &self.right
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn pair(&self, a: u16, b: u16) -> u16 {
        a * self.right.order() as u16 + b
    }

    pub fn split(&self, x: u16) -> (u16, u16) {
        let nr = self.right.order() as u16;
        (x / nr, x % nr)
    }

    /// The subgroup M×N for M ≤ F, N ≤ G.
    pub fn sub_product(&self, m: &Subgroup, n: &Subgroup) -> Subgroup {
        assert_eq!(m.parent(), &self.left, "left factor mismatch");
        assert_eq!(n.parent(), &self.right, "right factor mismatch");
        let mut elements = Vec::with_capacity(m.order() * n.order());
        for &a in m.elements() {
            for &b in n.elements() {
                elements.push(self.pair(a, b));
            }
        }
        elements.sort_unstable();
        Subgroup::from_sorted_unchecked(&self.group, elements)
    }

    /// The graph {(g, σ(g))} of a homomorphism σ: F → G given elementwise.
    pub fn graph(&self, sigma: &[u16]) -> Subgroup {
        assert_eq!(sigma.len(), self.left.order());
        let mut elements: Vec<u16> = sigma
            .iter()
            .enumerate()
            .map(|(a, &b)| self.pair(a as u16, b))
            .collect();
        elements.sort_unstable();
        Subgroup::from_sorted_unchecked(&self.group, elements)
    }

    /// Δ(F) = {(g, g)}; requires both factors equal.
    pub fn diagonal(&self) -> Subgroup {
        assert_eq!(self.left, self.right, "diagonal needs equal factors");
        let ids: Vec<u16> = self.left.elements().collect();
        self.graph(&ids)
    }

    fn check_membership(&self, u: &Subgroup) -> Result<(), GroupError> {
        if u.parent() != &self.group {
            return Err(GroupError::NotASubgroupOfProduct);
        }
        Ok(())
    }

    /// The quadruple (p1(U), k1(U), p2(U), k2(U)).
    pub fn projections_kernels(
        &self,
        u: &Subgroup,
    ) -> Result<(Subgroup, Subgroup, Subgroup, Subgroup), GroupError> {
        self.check_membership(u)?;
        let mut p1: Vec<u16> = Vec::new();
        let mut k1: Vec<u16> = Vec::new();
        let mut p2: Vec<u16> = Vec::new();
        let mut k2: Vec<u16> = Vec::new();
        for &x in u.elements() {
            let (a, b) = self.split(x);
            p1.push(a);
            p2.push(b);
            if b == 0 {
                k1.push(a);
            }
            if a == 0 {
                k2.push(b);
            }
        }
        for v in [&mut p1, &mut k1] {
            v.sort_unstable();
            v.dedup();
        }
        for v in [&mut p2, &mut k2] {
            v.sort_unstable();
            v.dedup();
        }
        Ok((
            Subgroup::from_sorted_unchecked(&self.left, p1),
            Subgroup::from_sorted_unchecked(&self.left, k1),
            Subgroup::from_sorted_unchecked(&self.right, p2),
            Subgroup::from_sorted_unchecked(&self.right, k2),
        ))
    }

    /// The thorax p1(U)/k1(U).
    pub fn thorax(&self, u: &Subgroup) -> Result<Group, GroupError> {
        let (p1, k1, _, _) = self.projections_kernels(u)?;
        let (q, _) = self.left.quotient_by(
            p1.elements(),
            k1.elements(),
            format!("q({})", self.group.label()),
        );
        Ok(q)
    }

    pub fn goursat(&self, u: &Subgroup) -> Result<GoursatQuintuple, GroupError> {
        let (p1, k1, p2, k2) = self.projections_kernels(u)?;
        let (q1, q1_proj) = self
            .left
            .quotient_by(p1.elements(), k1.elements(), "q1".into());
        let (q2, q2_proj) = self
            .right
            .quotient_by(p2.elements(), k2.elements(), "q2".into());
        let mut iso = vec![u16::MAX; q1.order()];
        for &x in u.elements() {
            let (a, b) = self.split(x);
            let (ca, cb) = (q1_proj[a as usize], q2_proj[b as usize]);
            if iso[ca as usize] == u16::MAX {
                iso[ca as usize] = cb;
            } else if iso[ca as usize] != cb {
                return Err(GroupError::InvalidQuintuple(
                    "projection cosets do not match bijectively".into(),
                ));
            }
        }
        Ok(GoursatQuintuple {
            p1,
            k1,
            k2,
            p2,
            iso,
            q1,
            q1_proj,
            q2,
            q2_proj,
        })
    }

    /// Reconstructs U from quintuple data, validating every invariant.
    pub fn from_goursat(&self, q: &GoursatQuintuple) -> Result<Subgroup, GroupError> {
        if !q.k1.le(&q.p1) || !q.k1.is_normal_in(&q.p1) {
            return Err(GroupError::InvalidQuintuple(
                "first kernel is not normal in the first projection".into(),
            ));
        }
        if !q.k2.le(&q.p2) || !q.k2.is_normal_in(&q.p2) {
            return Err(GroupError::InvalidQuintuple(
                "second kernel is not normal in the second projection".into(),
            ));
        }
        if q.iso.len() != q.q1.order() || q.q1.order() != q.q2.order() {
            return Err(GroupError::InvalidQuintuple(
                "coset map has the wrong size".into(),
            ));
        }
        let mut hit = vec![false; q.q2.order()];
        for &i in &q.iso {
            if i as usize >= q.q2.order() || hit[i as usize] {
                return Err(GroupError::InvalidQuintuple(
                    "coset map is not a bijection".into(),
                ));
            }
            hit[i as usize] = true;
        }
        for a in 0..q.q1.order() as u16 {
            for b in 0..q.q1.order() as u16 {
                let lhs = q.iso[q.q1.op(a, b) as usize];
                let rhs = q.q2.op(q.iso[a as usize], q.iso[b as usize]);
                if lhs != rhs {
                    return Err(GroupError::InvalidQuintuple(
                        "coset map is not multiplicative".into(),
                    ));
                }
            }
        }
        let mut elements = Vec::new();
        for &a in q.p1.elements() {
            for &b in q.p2.elements() {
                if q.iso[q.q1_proj[a as usize] as usize] == q.q2_proj[b as usize] {
                    elements.push(self.pair(a, b));
                }
            }
        }
        elements.sort_unstable();
        Subgroup::new(&self.group, elements)
    }
}

/// Goursat data (p1, k1, κ, k2, p2) together with the quotient bookkeeping
/// needed to evaluate κ on cosets.
#[derive(Clone, Debug)]
pub struct GoursatQuintuple {
    pub p1: Subgroup,
    pub k1: Subgroup,
    pub k2: Subgroup,
    pub p2: Subgroup,
    /// Coset index in p1/k1 → coset index in p2/k2.
    pub iso: Vec<u16>,
    pub q1: Group,
    pub q1_proj: Vec<u16>,
    pub q2: Group,
    pub q2_proj: Vec<u16>,
}

/// Star product of U ≤ F×G and V ≤ G×H inside the given F×H product:
/// {u1×v2 | ∃ g: u1×g ∈ U, g×v2 ∈ V}.
pub fn star(
    fg: &Product,
    gh: &Product,
    fh: &Product,
    u: &Subgroup,
    v: &Subgroup,
) -> Result<Subgroup, GroupError> {
    if fg.right() != gh.left() {
        return Err(GroupError::MiddleGroupMismatch);
    }
    if u.parent() != fg.group() || v.parent() != gh.group() {
        return Err(GroupError::NotASubgroupOfProduct);
    }
    assert_eq!(fh.left(), fg.left(), "output product left factor mismatch");
    assert_eq!(fh.right(), gh.right(), "output product right factor mismatch");
    let mut elements: Vec<u16> = Vec::new();
    for &x in u.elements() {
        let (u1, g1) = fg.split(x);
        for &y in v.elements() {
            let (g2, v2) = gh.split(y);
            if g1 == g2 {
                elements.push(fh.pair(u1, v2));
            }
        }
    }
    elements.sort_unstable();
    elements.dedup();
    debug_assert!(Subgroup::new(fh.group(), elements.clone()).is_ok());
    Ok(Subgroup::from_sorted_unchecked(fh.group(), elements))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_counts_of_small_groups() {
        let c3 = Group::cyclic(3);
        assert_eq!(subgroups(&c3, 36).unwrap().len(), 2);
        let c3c3 = Group::abelian(&[3, 3]);
        assert_eq!(subgroups(&c3c3, 36).unwrap().len(), 6);
        let c5c5 = Group::abelian(&[5, 5]);
        assert_eq!(subgroups(&c5c5, 36).unwrap().len(), 8);
        let klein = Group::abelian(&[2, 2]);
        assert_eq!(subgroups(&klein, 36).unwrap().len(), 5);
        let s3 = Group::symmetric_3();
        assert_eq!(subgroups(&s3, 36).unwrap().len(), 6);
    }

    #[test]
    fn enumeration_respects_the_order_bound() {
        let c6c6 = Group::abelian(&[6, 6]);
        assert!(subgroups(&c6c6, 36).is_ok());
        assert!(matches!(
            subgroups(&c6c6, 35),
            Err(GroupError::OrderBoundExceeded { .. })
        ));
    }

    #[test]
    fn projections_and_kernels_of_basic_subgroups() {
        let c2 = Group::cyclic(2);
        let prod = Product::new(&c2, &c2);
        let diag = prod.diagonal();
        let (p1, k1, p2, k2) = prod.projections_kernels(&diag).unwrap();
        assert!(p1.is_full() && p2.is_full());
        assert!(k1.is_trivial() && k2.is_trivial());

        let c2x1 = prod.sub_product(&Subgroup::full(&c2), &Subgroup::trivial(&c2));
        let (p1, k1, p2, k2) = prod.projections_kernels(&c2x1).unwrap();
        assert!(p1.is_full() && k1.is_full());
        assert!(p2.is_trivial() && k2.is_trivial());
    }

    #[test]
    fn twisted_subgroup_of_c4xc4() {
        // ⟨(1, 2)⟩ = {(0,0), (1,2), (2,0), (3,2)}: p1 = C4, k1 = ⟨2⟩.
        let c4 = Group::cyclic(4);
        let prod = Product::new(&c4, &c4);
        let u = Subgroup::generated_by(prod.group(), &[prod.pair(1, 2)]);
        assert_eq!(u.order(), 4);
        let (p1, k1, p2, k2) = prod.projections_kernels(&u).unwrap();
        assert!(p1.is_full());
        assert_eq!(k1.elements(), &[0, 2]);
        assert_eq!(p2.elements(), &[0, 2]);
        assert!(k2.is_trivial());
    }

    #[test]
    fn goursat_roundtrip_on_c6xc6_is_exhaustive() {
        let c6 = Group::cyclic(6);
        let prod = Product::new(&c6, &c6);
        let subs = subgroups(prod.group(), 36).unwrap();
        for u in &subs {
            let q = prod.goursat(u).unwrap();
            let back = prod.from_goursat(&q).unwrap();
            assert_eq!(&back, u);
        }
    }

    #[test]
    fn corrupted_quintuples_are_rejected() {
        // On C_3, swapping the two nontrivial cosets is the inversion
        // automorphism, so the quintuple stays valid — it reconstructs the
        // anti-diagonal instead.
        let c3 = Group::cyclic(3);
        let prod = Product::new(&c3, &c3);
        let mut q = prod.goursat(&prod.diagonal()).unwrap();
        q.iso.swap(1, 2);
        let anti = prod.from_goursat(&q).unwrap();
        assert_eq!(anti.elements(), &[0, prod.pair(1, 2), prod.pair(2, 1)]);

        // On C_4 the same swap breaks multiplicativity (1+1 = 2 but 2+2 = 0).
        let c4 = Group::cyclic(4);
        let prod = Product::new(&c4, &c4);
        let mut q = prod.goursat(&prod.diagonal()).unwrap();
        q.iso.swap(1, 2);
        assert!(matches!(
            prod.from_goursat(&q),
            Err(GroupError::InvalidQuintuple(_))
        ));
        // A non-bijective map is rejected before the multiplicativity check.
        let mut q = prod.goursat(&prod.diagonal()).unwrap();
        q.iso[1] = 0;
        assert!(matches!(
            prod.from_goursat(&q),
            Err(GroupError::InvalidQuintuple(_))
        ));
    }

    #[test]
    fn thorax_of_diagonal_is_the_group_itself() {
        let c3 = Group::cyclic(3);
        let prod = Product::new(&c3, &c3);
        let t = prod.thorax(&prod.diagonal()).unwrap();
        assert!(isomorphic(&t, &c3, 36).unwrap());
        let t1 = prod
            .thorax(&prod.sub_product(&Subgroup::full(&c3), &Subgroup::full(&c3)))
            .unwrap();
        assert_eq!(t1.order(), 1);
    }

    #[test]
    fn subquotient_checks_on_cyclic_groups() {
        let c2 = Group::cyclic(2);
        let c4 = Group::cyclic(4);
        let klein = Group::abelian(&[2, 2]);
        assert!(subquotient_le(&c2, &c4, 36).unwrap());
        assert!(!subquotient_le(&klein, &c4, 36).unwrap());
        assert!(subquotient_le(&c2, &Group::symmetric_3(), 36).unwrap());
    }

    #[test]
    fn star_products_follow_the_element_scan_definition() {
        let c2 = Group::cyclic(2);
        let prod = Product::new(&c2, &c2);
        let full = Subgroup::full(&c2);
        let triv = Subgroup::trivial(&c2);
        let c2x1 = prod.sub_product(&full, &triv);
        let onexc2 = prod.sub_product(&triv, &full);
        let joined = star(&prod, &prod, &prod, &c2x1, &onexc2).unwrap();
        assert!(joined.is_full());
        let diag = prod.diagonal();
        assert_eq!(star(&prod, &prod, &prod, &diag, &c2x1).unwrap(), c2x1);
        // The diagonal is neutral on both sides.
        let subs = subgroups(prod.group(), 36).unwrap();
        for u in &subs {
            assert_eq!(&star(&prod, &prod, &prod, &diag, u).unwrap(), u);
            assert_eq!(&star(&prod, &prod, &prod, u, &diag).unwrap(), u);
        }
    }

    #[test]
    fn abelianization_of_s3_is_c2() {
        let s3 = Group::symmetric_3();
        let full = Subgroup::full(&s3);
        assert_eq!(full.derived().order(), 3);
        let (ab, proj) = full.abelianization();
        assert_eq!(ab.order(), 2);
        assert!(proj.iter().all(|&c| c != u16::MAX));
    }
}
