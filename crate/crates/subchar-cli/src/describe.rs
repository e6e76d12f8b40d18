//! `describe`: the basis inventory of the configured algebra — sizes, the
//! subgroup/character breakdown per product, the identity element, and the
//! labelled basis that `mult` accepts.

use std::collections::BTreeMap;

use serde::Serialize;
use subchar_algebra::DeformedAlgebra;

use crate::config::RunConfig;
use crate::labels::{basis_label, character_label, render_element, subgroup_label};
use crate::report::Format;

#[derive(Serialize)]
pub struct DescribeReport {
    pub groups: Vec<String>,
    pub pi: Vec<u32>,
    pub ell: String,
    #[serde(rename = "basisSize")]
    pub basis_size: usize,
    pub products: Vec<ProductSummary>,
    pub identity: String,
    pub basis: Vec<BasisLine>,
}

#[derive(Serialize)]
pub struct ProductSummary {
    pub src: String,
    pub tgt: String,
    #[serde(rename = "subgroupCount")]
    pub subgroup_count: usize,
    #[serde(rename = "basisCount")]
    pub basis_count: usize,
    pub subgroups: Vec<SubgroupSummary>,
}

#[derive(Serialize)]
pub struct SubgroupSummary {
    pub label: String,
    pub order: usize,
    pub characters: usize,
}

#[derive(Serialize)]
pub struct BasisLine {
    pub index: usize,
    pub label: String,
}

pub fn report(cfg: &RunConfig, alg: &DeformedAlgebra) -> DescribeReport {
    // Basis enumeration lists each product's subgroups consecutively, and
    // each subgroup's characters consecutively within that.
    let mut products: Vec<ProductSummary> = Vec::new();
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for k in 0..alg.len() {
        let e = alg.entry(k);
        let slot = *seen.entry((e.src, e.tgt)).or_insert_with(|| {
            products.push(ProductSummary {
                src: alg.groups()[e.src].label().to_string(),
                tgt: alg.groups()[e.tgt].label().to_string(),
                subgroup_count: 0,
                basis_count: 0,
                subgroups: Vec::new(),
            });
            products.len() - 1
        });
        let summary = &mut products[slot];
        summary.basis_count += 1;
        let prod = alg.product(e.src, e.tgt);
        let label = subgroup_label(prod, e.subcharacter.subgroup());
        match summary.subgroups.last_mut() {
            Some(last) if last.label == label => last.characters += 1,
            _ => {
                summary.subgroup_count += 1;
                summary.subgroups.push(SubgroupSummary {
                    label,
                    order: e.subcharacter.subgroup().order(),
                    characters: 1,
                });
            }
        }
    }

    DescribeReport {
        groups: cfg.groups.iter().map(|g| g.label().to_string()).collect(),
        pi: cfg.pi.primes().to_vec(),
        ell: cfg.ell_render(alg),
        basis_size: alg.len(),
        products,
        identity: render_element(alg, &alg.identity()),
        basis: (0..alg.len())
            .map(|k| BasisLine {
                index: k,
                label: basis_label(alg, k),
            })
            .collect(),
    }
}

pub fn render(cfg: &RunConfig, alg: &DeformedAlgebra, format: Format) -> String {
    let report = report(cfg, alg);
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(&report).expect("report serializes");
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = String::from("index,src,tgt,subgroup,character\n");
            for k in 0..alg.len() {
                let e = alg.entry(k);
                let prod = alg.product(e.src, e.tgt);
                out.push_str(&format!(
                    "{k},{},{},{},{}\n",
                    alg.groups()[e.src].label(),
                    alg.groups()[e.tgt].label(),
                    subgroup_label(prod, e.subcharacter.subgroup()),
                    character_label(e.subcharacter.character()),
                ));
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            out.push_str(&format!("groups: {}\n", report.groups.join(", ")));
            out.push_str(&format!("pi: {}\n", cfg.pi_render()));
            out.push_str(&format!("ell: {}\n", report.ell));
            out.push_str(&format!("basis size: {}\n", report.basis_size));
            for p in &report.products {
                out.push_str(&format!(
                    "\nproduct {} x {}: {} subgroups, {} subcharacters\n",
                    p.src, p.tgt, p.subgroup_count, p.basis_count
                ));
                let width = p
                    .subgroups
                    .iter()
                    .map(|s| s.label.len())
                    .max()
                    .unwrap_or(0);
                for s in &p.subgroups {
                    out.push_str(&format!(
                        "  {:<width$}  order {}: {} character{}\n",
                        s.label,
                        s.order,
                        s.characters,
                        if s.characters == 1 { "" } else { "s" },
                    ));
                }
            }
            out.push_str(&format!("\nidentity: {}\n", report.identity));
            out.push_str("\nbasis:\n");
            for line in &report.basis {
                out.push_str(&format!("  #{:<4} {}\n", line.index, line.label));
            }
            out
        }
    }
}
