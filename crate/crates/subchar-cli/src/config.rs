//! Shared run configuration: the group set K, the fibre class π, the
//! deformation ℓ, and their command-line grammars.

use std::fs;

use subchar_algebra::{AlgebraError, DeformationMap, DeformedAlgebra};
use subchar_groups::{Group, GroupError, PiClass};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("bad group spec `{0}`: {1}")]
    Group(String, GroupError),
    #[error("cannot read Cayley table `{0}`: {1}")]
    CayleyFile(String, std::io::Error),
    #[error("bad pi entry `{0}`")]
    Pi(String),
    #[error("π must consist of primes: {0}")]
    PiPrimes(GroupError),
    #[error("{0}")]
    Ell(AlgebraError),
}

/// A resolved configuration, ready to build algebras from. The original
/// spec strings are kept for report parameters.
pub struct RunConfig {
    pub groups: Vec<Group>,
    pub pi: PiClass,
    pub lmap: DeformationMap,
    pub group_spec: String,
    pub ell_spec: String,
    pub seed: u64,
}

impl RunConfig {
    pub fn resolve(
        group: &str,
        pi: Option<&str>,
        ell: &str,
        seed: u64,
    ) -> Result<Self, ConfigError> {
        let groups = parse_groups(group)?;
        let pi = match pi {
            Some(list) => parse_pi(list)?,
            None => {
                let mut all = PiClass::empty();
                for g in &groups {
                    let more = PiClass::all_primes_of(g.order() as u64);
                    all = PiClass::new(
                        all.primes().iter().chain(more.primes()).copied(),
                    )
                    .expect("prime divisors are prime");
                }
                all
            }
        };
        let lmap = DeformationMap::parse(ell).map_err(ConfigError::Ell)?;
        Ok(RunConfig {
            groups,
            pi,
            lmap,
            group_spec: group.to_string(),
            ell_spec: ell.to_string(),
            seed,
        })
    }

    pub fn algebra(&self, extra_root_orders: &[u32]) -> Result<DeformedAlgebra, AlgebraError> {
        DeformedAlgebra::new(&self.groups, &self.pi, &self.lmap, extra_root_orders)
    }

    pub fn pi_render(&self) -> String {
        let primes: Vec<String> = self.pi.primes().iter().map(|p| p.to_string()).collect();
        if primes.is_empty() {
            "{}".to_string()
        } else {
            format!("{{{}}}", primes.join(","))
        }
    }

    /// Human rendering of ℓ on the primes that actually occur.
    pub fn ell_render(&self, alg: &DeformedAlgebra) -> String {
        let ctx = alg.ctx();
        let parts: Vec<String> = ctx
            .primes()
            .iter()
            .map(|&p| {
                let v = self
                    .lmap
                    .eval_prime(p, ctx)
                    .expect("validated during algebra construction");
                format!("{}={}", p, v.render(ctx))
            })
            .collect();
        if parts.is_empty() {
            self.ell_spec.clone()
        } else {
            parts.join(", ")
        }
    }
}

/// Group grammar: comma-separated list; each entry is the abelian grammar
/// (`C6`, `C2xC3`), the literal `S3`, or a path to a Cayley-table JSON file.
pub fn parse_groups(spec: &str) -> Result<Vec<Group>, ConfigError> {
    let mut groups = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.eq_ignore_ascii_case("s3") {
            groups.push(Group::symmetric_3());
            continue;
        }
        match Group::parse_spec(part) {
            Ok(g) => groups.push(g),
            Err(e) => {
                if std::path::Path::new(part).is_file() {
                    let text = fs::read_to_string(part)
                        .map_err(|io| ConfigError::CayleyFile(part.to_string(), io))?;
                    let g = Group::from_cayley_json(&text)
                        .map_err(|e| ConfigError::Group(part.to_string(), e))?;
                    groups.push(g);
                } else {
                    return Err(ConfigError::Group(part.to_string(), e));
                }
            }
        }
    }
    if groups.is_empty() {
        return Err(ConfigError::Group(
            spec.to_string(),
            GroupError::InvalidSpec(spec.to_string()),
        ));
    }
    Ok(groups)
}

/// π grammar: comma-separated primes; the empty string is the empty class.
pub fn parse_pi(list: &str) -> Result<PiClass, ConfigError> {
    let trimmed = list.trim();
    if trimmed.is_empty() {
        return Ok(PiClass::empty());
    }
    let mut primes = Vec::new();
    for part in trimmed.split(',') {
        let part = part.trim();
        let p: u32 = part
            .parse()
            .map_err(|_| ConfigError::Pi(part.to_string()))?;
        primes.push(p);
    }
    PiClass::new(primes).map_err(ConfigError::PiPrimes)
}
