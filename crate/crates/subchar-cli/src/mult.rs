//! `mult`: resolve two basis labels and print their product with exact
//! scalar strings.

use serde::Serialize;
use subchar_algebra::DeformedAlgebra;

use crate::labels::{basis_label, render_element, LabelIndex};
use crate::report::Format;

#[derive(Debug)]
pub struct UnknownBasisLabel(pub String);

impl std::fmt::Display for UnknownBasisLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "unknown basis label `{}` (use `describe` to list labels, or #index)",
            self.0
        )
    }
}

#[derive(Serialize)]
struct Term {
    index: usize,
    label: String,
    scalar: String,
}

pub fn run(
    alg: &DeformedAlgebra,
    lhs: &str,
    rhs: &str,
    format: Format,
) -> Result<String, UnknownBasisLabel> {
    let index = LabelIndex::new(alg);
    let a = index
        .resolve(lhs)
        .ok_or_else(|| UnknownBasisLabel(lhs.to_string()))?;
    let b = index
        .resolve(rhs)
        .ok_or_else(|| UnknownBasisLabel(rhs.to_string()))?;
    let product = alg.multiply(&alg.basis_element(a), &alg.basis_element(b));

    Ok(match format {
        Format::Table => format!("{}\n", render_element(alg, &product)),
        Format::Json => {
            let terms: Vec<Term> = product
                .terms()
                .map(|(k, c)| Term {
                    index: k,
                    label: basis_label(alg, k),
                    scalar: c.render(alg.ctx()),
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&terms).expect("terms serialize");
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = String::from("index,label,scalar\n");
            for (k, c) in product.terms() {
                out.push_str(&format!(
                    "{k},{},{}\n",
                    basis_label(alg, k),
                    c.render(alg.ctx())
                ));
            }
            out
        }
    })
}
