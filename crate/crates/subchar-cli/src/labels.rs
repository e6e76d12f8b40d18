//! Canonical text labels for basis subcharacters. `describe` prints them,
//! `mult` parses them back; `#k` (or a bare index) is always accepted too.
//!
//! Subgroups of F×G render structurally where the shape is unambiguous:
//! `AxB` for full products, `D(b)` for graphs of isomorphisms between full
//! cyclic factors (the image of the generator is b), and a generating list
//! `<(a,b),...>` otherwise. Factors render as `1`, the group label, `C{n}`
//! inside a cyclic ambient, or a generating list.

use std::collections::HashMap;

use subchar_algebra::{AlgebraElement, DeformedAlgebra};
use subchar_groups::{Character, Group, Product, Subgroup};

pub fn basis_label(alg: &DeformedAlgebra, k: usize) -> String {
    let e = alg.entry(k);
    let prod = alg.product(e.src, e.tgt);
    let u = subgroup_label(prod, e.subcharacter.subgroup());
    let chi = character_label(e.subcharacter.character());
    if alg.groups().len() == 1 {
        format!("s[{u};{chi}]")
    } else {
        let f = alg.groups()[e.src].label();
        let g = alg.groups()[e.tgt].label();
        format!("s{{{f},{g}}}[{u};{chi}]")
    }
}

pub fn subgroup_label(prod: &Product, u: &Subgroup) -> String {
    let (p1, k1, p2, k2) = prod
        .projections_kernels(u)
        .expect("basis subgroups project cleanly");
    if u.order() == k1.order() * k2.order() {
        let a = factor_label(prod.left(), &p1);
        let b = factor_label(prod.right(), &p2);
        return format!("{a}x{b}");
    }
    if k1.is_trivial()
        && k2.is_trivial()
        && p1.is_full()
        && p2.is_full()
        && is_cyclic(prod.left())
        && prod.left().order() == prod.right().order()
        && prod.left().order() > 1
    {
        let image = u
            .elements()
            .iter()
            .map(|&x| prod.split(x))
            .find(|&(a, _)| a == 1)
            .map(|(_, b)| b)
            .expect("a full graph sends the generator somewhere");
        return format!("D({image})");
    }
    let gens = minimal_generators(u);
    let pairs: Vec<String> = gens
        .iter()
        .map(|&x| {
            let (a, b) = prod.split(x);
            format!("({a},{b})")
        })
        .collect();
    format!("<{}>", pairs.join(","))
}

pub fn character_label(chi: &Character) -> String {
    if chi.is_trivial() {
        "1".to_string()
    } else {
        let exps: Vec<String> = chi.exps().iter().map(|e| e.to_string()).collect();
        format!("chi({})", exps.join(","))
    }
}

fn factor_label(ambient: &Group, s: &Subgroup) -> String {
    if s.is_trivial() {
        return "1".to_string();
    }
    if s.is_full() {
        return ambient.label().to_string();
    }
    if is_cyclic(ambient) {
        return format!("C{}", s.order());
    }
    let gens: Vec<String> = minimal_generators(s)
        .iter()
        .map(|x| x.to_string())
        .collect();
    format!("<{}>", gens.join(","))
}

fn is_cyclic(g: &Group) -> bool {
    let n = g.order() as u32;
    g.elements().any(|x| g.element_order(x) == n)
}

fn minimal_generators(s: &Subgroup) -> Vec<u16> {
    let mut gens: Vec<u16> = Vec::new();
    let mut have = Subgroup::trivial(s.parent());
    for &x in s.elements() {
        if !have.contains(x) {
            gens.push(x);
            have = Subgroup::generated_by(s.parent(), &gens);
        }
    }
    gens
}

/// Renders a sparse element as `c1 * label1 + c2 * label2`, dropping unit
/// coefficients; the zero element renders as `0`.
pub fn render_element(alg: &DeformedAlgebra, x: &AlgebraElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let ctx = alg.ctx();
    let one = subchar_scalars::Scalar::one(ctx);
    let terms: Vec<String> = x
        .terms()
        .map(|(k, c)| {
            let label = basis_label(alg, k);
            if *c == one {
                label
            } else {
                format!("{} * {label}", c.render(ctx))
            }
        })
        .collect();
    terms.join(" + ")
}

/// Label directory for `mult` argument resolution.
pub struct LabelIndex {
    by_label: HashMap<String, usize>,
    len: usize,
}

impl LabelIndex {
    pub fn new(alg: &DeformedAlgebra) -> Self {
        let mut by_label = HashMap::with_capacity(alg.len());
        for k in 0..alg.len() {
            by_label.insert(basis_label(alg, k), k);
        }
        LabelIndex {
            by_label,
            len: alg.len(),
        }
    }

    pub fn resolve(&self, token: &str) -> Option<usize> {
        let token = token.trim();
        if let Some(rest) = token.strip_prefix('#') {
            return match rest.parse::<usize>() {
                Ok(k) if k < self.len => Some(k),
                _ => None,
            };
        }
        if let Ok(k) = token.parse::<usize>() {
            return (k < self.len).then_some(k);
        }
        self.by_label.get(token).copied()
    }
}
