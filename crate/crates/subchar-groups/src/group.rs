//! Finite groups as explicit Cayley tables with the identity at index 0.

use std::fmt;
use std::sync::Arc;

use serde::Deserialize;

use crate::GroupError;

struct GroupData {
    order: usize,
    table: Vec<u16>,
    inverses: Vec<u16>,
    label: String,
}

/// A finite group; cloning is cheap and clones share the table.
#[derive(Clone)]
pub struct Group {
    data: Arc<GroupData>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.order == other.data.order && self.data.table == other.data.table)
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(order {})", self.data.label, self.data.order)
    }
}

#[derive(Deserialize)]
struct CayleyFile {
    order: usize,
    table: Vec<Vec<u16>>,
}

impl Group {
    /// Builds from a full table after checking the group axioms.
    pub fn from_table(table: Vec<Vec<u16>>, label: impl Into<String>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || n > u16::MAX as usize {
            return Err(GroupError::InvalidTable("empty or oversized table".into()));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(GroupError::InvalidTable("table is not square".into()));
        }
        if table
            .iter()
            .flatten()
            .any(|&x| x as usize >= n)
        {
            return Err(GroupError::InvalidTable("entry out of range".into()));
        }
        let flat: Vec<u16> = table.into_iter().flatten().collect();
        let at = |a: usize, b: usize| flat[a * n + b] as usize;
        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupError::InvalidTable("index 0 is not an identity".into()));
            }
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for b in 0..n {
                seen_row[at(a, b)] = true;
                seen_col[at(b, a)] = true;
            }
            if seen_row.iter().any(|s| !s) || seen_col.iter().any(|s| !s) {
                return Err(GroupError::InvalidTable("table is not a Latin square".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::InvalidTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inverses = vec![0u16; n];
        for a in 0..n {
            let inv = (0..n).find(|&b| at(a, b) == 0).ok_or_else(|| {
                GroupError::InvalidTable(format!("element {a} has no inverse"))
            })?;
            inverses[a] = inv as u16;
        }
        Ok(Group {
            data: Arc::new(GroupData {
                order: n,
                table: flat,
                inverses,
                label: label.into(),
            }),
        })
    }

    /// Internal constructor for tables correct by construction.
    pub(crate) fn from_table_unchecked(order: usize, table: Vec<u16>, label: String) -> Self {
        let mut inverses = vec![0u16; order];
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("constructed table has inverses");
            inverses[a] = inv as u16;
        }
        Group {
            data: Arc::new(GroupData {
                order,
                table,
                inverses,
                label,
            }),
        }
    }

    pub fn cyclic(n: u32) -> Self {
        let n = n as usize;
        assert!(n >= 1, "cyclic group order must be positive");
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = ((a + b) % n) as u16;
            }
        }
        Self::from_table_unchecked(n, table, format!("C{n}"))
    }

    /// Direct product of cyclic groups of the given orders.
    pub fn abelian(invariants: &[u32]) -> Self {
        assert!(!invariants.is_empty(), "need at least one cyclic factor");
        let mut g = Self::cyclic(invariants[0]);
        for &n in &invariants[1..] {
            g = g.direct_product_group(&Self::cyclic(n));
        }
        let label = invariants
            .iter()
            .map(|n| format!("C{n}"))
            .collect::<Vec<_>>()
            .join("x");
        g.relabel(label)
    }

    /// Parses the abelian spec grammar: `C6`, `C2xC3`, `C3xC9` (case-insensitive).
    pub fn parse_spec(spec: &str) -> Result<Self, GroupError> {
        let lower = spec.trim().to_ascii_lowercase();
        if lower.is_empty() {
            return Err(GroupError::InvalidSpec(spec.to_string()));
        }
        let mut orders = Vec::new();
        for part in lower.split('x') {
            let digits = part
                .strip_prefix('c')
                .ok_or_else(|| GroupError::InvalidSpec(spec.to_string()))?;
            let n: u32 = digits
                .parse()
                .map_err(|_| GroupError::InvalidSpec(spec.to_string()))?;
            if n == 0 {
                return Err(GroupError::InvalidSpec(spec.to_string()));
            }
            orders.push(n);
        }
        Ok(Self::abelian(&orders))
    }

    /// Reads the JSON Cayley-table format {"order": n, "table": [[...]]}.
    pub fn from_cayley_json(text: &str) -> Result<Self, GroupError> {
        let file: CayleyFile = serde_json::from_str(text)
            .map_err(|e| GroupError::InvalidTable(format!("bad JSON: {e}")))?;
        if file.table.len() != file.order {
            return Err(GroupError::InvalidTable(
                "declared order does not match table size".into(),
            ));
        }
        let label = format!("G{}", file.order);
        Self::from_table(file.table, label)
    }

    /// The symmetric group on three letters, a canonical nonabelian sample.
    pub fn symmetric_3() -> Self {
        let perms: [[u8; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
        ];
        let compose = |p: &[u8; 3], q: &[u8; 3]| -> [u8; 3] {
            [p[q[0] as usize], p[q[1] as usize], p[q[2] as usize]]
        };
        let mut table = vec![0u16; 36];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let r = compose(p, q);
                let k = perms.iter().position(|s| *s == r).unwrap();
                table[i * 6 + j] = k as u16;
            }
        }
        Self::from_table_unchecked(6, table, "S3".into())
    }

    pub fn relabel(&self, label: impl Into<String>) -> Self {
        Group {
            data: Arc::new(GroupData {
                order: self.data.order,
                table: self.data.table.clone(),
                inverses: self.data.inverses.clone(),
                label: label.into(),
            }),
        }
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    pub fn label(&self) -> &str {
        &self.data.label
    }

    pub fn op(&self, a: u16, b: u16) -> u16 {
        self.data.table[a as usize * self.data.order + b as usize]
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.data.inverses[a as usize]
    }

    pub fn conjugate(&self, g: u16, x: u16) -> u16 {
        self.op(self.op(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: u16, b: u16) -> u16 {
        self.op(self.op(a, b), self.op(self.inv(a), self.inv(b)))
    }

    pub fn elements(&self) -> std::ops::Range<u16> {
        0..self.data.order as u16
    }

    pub fn element_order(&self, a: u16) -> u32 {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.op(x, a);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> u32 {
        (0..self.data.order as u16).fold(1u32, |acc, a| lcm_u32(acc, self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.data.order;
        (0..n as u16).all(|a| (0..n as u16).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Sorted multiset of element orders, an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<u32> {
        let mut profile: Vec<u32> = (0..self.data.order as u16)
            .map(|a| self.element_order(a))
            .collect();
        profile.sort_unstable();
        profile
    }

    pub(crate) fn direct_product_group(&self, other: &Group) -> Group {
        let (nl, nr) = (self.order(), other.order());
        let n = nl * nr;
        assert!(n <= u16::MAX as usize, "product order too large");
        let mut table = vec![0u16; n * n];
        for a1 in 0..nl as u16 {
            for a2 in 0..nr as u16 {
                let a = a1 as usize * nr + a2 as usize;
                for b1 in 0..nl as u16 {
                    for b2 in 0..nr as u16 {
                        let b = b1 as usize * nr + b2 as usize;
                        let c1 = self.op(a1, b1) as usize;
                        let c2 = other.op(a2, b2) as usize;
                        table[a * n + b] = (c1 * nr + c2) as u16;
                    }
                }
            }
        }
        Group::from_table_unchecked(n, table, format!("{}x{}", self.label(), other.label()))
    }

    /// Quotient of the subgroup `sub` (sorted elements) by a normal subgroup
    /// `normal` of it; returns the quotient and the coset index of every
    /// parent element (u16::MAX outside `sub`). Coset 0 contains the identity.
    pub(crate) fn quotient_by(
        &self,
        sub: &[u16],
        normal: &[u16],
        label: String,
    ) -> (Group, Vec<u16>) {
        let mut proj = vec![u16::MAX; self.order()];
        let mut reps: Vec<u16> = Vec::new();
        for &h in sub {
            if proj[h as usize] != u16::MAX {
                continue;
            }
            let coset: Vec<u16> = normal.iter().map(|&n| self.op(h, n)).collect();
            let idx = reps.len() as u16;
            reps.push(*coset.iter().min().expect("nonempty normal subgroup"));
            for &c in &coset {
                proj[c as usize] = idx;
            }
        }
        // Renumber so cosets are sorted by representative with identity first.
        let mut order: Vec<usize> = (0..reps.len()).collect();
        order.sort_by_key(|&i| reps[i]);
        let mut renumber = vec![0u16; reps.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new as u16;
        }
        for p in proj.iter_mut() {
            if *p != u16::MAX {
                *p = renumber[*p as usize];
            }
        }
        let mut sorted_reps = reps.clone();
        sorted_reps.sort_unstable();
        let k = sorted_reps.len();
        let mut table = vec![0u16; k * k];
        for (i, &a) in sorted_reps.iter().enumerate() {
            for (j, &b) in sorted_reps.iter().enumerate() {
                table[i * k + j] = proj[self.op(a, b) as usize];
            }
        }
        (Group::from_table_unchecked(k, table, label), proj)
    }
}

pub fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

/// Isomorphism test by backtracking on generator images; intended for the
/// small groups that appear as thoraxes and subquotients.
pub fn isomorphic(a: &Group, b: &Group, bound: usize) -> Result<bool, GroupError> {
    if a.order().max(b.order()) > bound {
        return Err(GroupError::OrderBoundExceeded {
            order: a.order().max(b.order()),
            bound,
        });
    }
    if a.order() != b.order() {
        return Ok(false);
    }
    if a.order_profile() != b.order_profile() {
        return Ok(false);
    }
    if a.is_abelian() != b.is_abelian() {
        return Ok(false);
    }
    // Greedy generating sequence for a, with each element's expression
    // recorded as (previously generated element) * (generator index).
    let n = a.order();
    let mut gens: Vec<u16> = Vec::new();
    let mut expr: Vec<Option<(u16, usize)>> = vec![None; n];
    let mut span: Vec<u16> = vec![0];
    let mut in_span = vec![false; n];
    in_span[0] = true;
    while span.len() < n {
        let g = (0..n as u16).find(|&x| !in_span[x as usize]).unwrap();
        let gi = gens.len();
        gens.push(g);
        // Close the span under right-multiplication by g and existing elements.
        let mut queue: Vec<u16> = span.clone();
        while let Some(x) = queue.pop() {
            let y = a.op(x, g);
            if !in_span[y as usize] {
                in_span[y as usize] = true;
                expr[y as usize] = Some((x, gi));
                span.push(y);
                queue.push(y);
            }
        }
        // New elements can combine with earlier span members; re-close fully.
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..span.len() {
                for gj in 0..gens.len() {
                    let y = a.op(span[i], gens[gj]);
                    if !in_span[y as usize] {
                        in_span[y as usize] = true;
                        expr[y as usize] = Some((span[i], gj));
                        span.push(y);
                        changed = true;
                    }
                }
            }
        }
    }
    let gen_orders: Vec<u32> = gens.iter().map(|&g| a.element_order(g)).collect();
    // Order elements of the span so each element's expression refers to an
    // earlier one; BFS insertion order above already guarantees that.
    let mut images = vec![0u16; gens.len()];
    Ok(assign(a, b, &gens, &gen_orders, &expr, &span, &mut images, 0))
}

#[allow(clippy::too_many_arguments)]
fn assign(
    a: &Group,
    b: &Group,
    gens: &[u16],
    gen_orders: &[u32],
    expr: &[Option<(u16, usize)>],
    span: &[u16],
    images: &mut [u16],
    k: usize,
) -> bool {
    if k == gens.len() {
        return check_map(a, b, expr, span, images);
    }
    for h in 0..b.order() as u16 {
        if b.element_order(h) != gen_orders[k] {
            continue;
        }
        images[k] = h;
        if assign(a, b, gens, gen_orders, expr, span, images, k + 1) {
            return true;
        }
    }
    false
}

fn check_map(
    a: &Group,
    b: &Group,
    expr: &[Option<(u16, usize)>],
    span: &[u16],
    images: &[u16],
) -> bool {
    let n = a.order();
    let mut map = vec![u16::MAX; n];
    map[0] = 0;
    for &x in span {
        if x == 0 {
            continue;
        }
        let (prev, gi) = expr[x as usize].expect("non-identity has an expression");
        if map[prev as usize] == u16::MAX {
            return false;
        }
        map[x as usize] = b.op(map[prev as usize], images[gi]);
    }
    let mut hit = vec![false; n];
    for &m in &map {
        if m == u16::MAX || hit[m as usize] {
            return false;
        }
        hit[m as usize] = true;
    }
    for x in 0..n as u16 {
        for y in 0..n as u16 {
            if map[a.op(x, y) as usize] != b.op(map[x as usize], map[y as usize]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_have_one_generator_per_unit() {
        let c6 = Group::cyclic(6);
        assert_eq!(c6.order(), 6);
        assert_eq!(c6.element_order(1), 6);
        assert_eq!(c6.element_order(2), 3);
        assert_eq!(c6.exponent(), 6);
        assert!(c6.is_abelian());
    }

    #[test]
    fn spec_grammar_accepts_products_case_insensitively() {
        let g = Group::parse_spec("c2Xc3").unwrap();
        assert_eq!(g.order(), 6);
        assert!(Group::parse_spec("D4").is_err());
        assert!(Group::parse_spec("C0").is_err());
        assert!(Group::parse_spec("").is_err());
    }

    #[test]
    fn symmetric_3_is_nonabelian_of_order_6() {
        let s3 = Group::symmetric_3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.order_profile(), vec![1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        // Constant rows: not a Latin square.
        let bad = vec![vec![0u16, 1], vec![1, 1]];
        assert!(matches!(
            Group::from_table(bad, "bad"),
            Err(GroupError::InvalidTable(_))
        ));
    }

    #[test]
    fn cayley_json_roundtrip() {
        let text = r#"{"order": 2, "table": [[0,1],[1,0]]}"#;
        let g = Group::from_cayley_json(text).unwrap();
        assert_eq!(g.order(), 2);
        assert!(Group::from_cayley_json("{}").is_err());
    }

    #[test]
    fn c2xc3_is_isomorphic_to_c6() {
        let a = Group::abelian(&[2, 3]);
        let b = Group::cyclic(6);
        assert!(isomorphic(&a, &b, 36).unwrap());
        assert!(!isomorphic(&Group::symmetric_3(), &b, 36).unwrap());
    }

    #[test]
    fn isomorphism_bound_is_enforced() {
        let big = Group::abelian(&[37]);
        assert!(matches!(
            isomorphic(&big, &big, 36),
            Err(GroupError::OrderBoundExceeded { .. })
        ));
    }
}
