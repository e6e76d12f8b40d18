//! The verification suite registry and runner. Suites are pure functions of
//! the run configuration; they may run concurrently, and the report is
//! assembled sequentially in suite-name order so output is deterministic.

mod foundations;
mod structure;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use subchar_algebra::AlgebraError;
use subchar_groups::GroupError;
use subchar_modules::ModuleError;
use subchar_scalars::ScalarError;

use crate::config::RunConfig;
use crate::report::{Check, SuiteReport};

pub const ALL_SUITES: &[&str] = &[
    "cor-4.1",
    "goursat",
    "lemma-2.3",
    "lemma-3.1",
    "lemma-3.2",
    "lemma-3.3",
    "lemma-4.6",
    "prop-2.2",
    "sec-5",
    "sec-6",
    "star-assoc",
    "thm-1",
    "thm-4.4",
    "thm-4.7",
    "trace-rank",
];

/// A suite either produces its checks or aborts early: `Skip` when the run
/// configuration fails the result's hypotheses, `Fail` on a hard error.
pub enum SuiteAbort {
    Skip(String),
    Fail(String),
}

pub type SuiteResult = Result<Vec<Check>, SuiteAbort>;

impl From<ModuleError> for SuiteAbort {
    fn from(e: ModuleError) -> Self {
        match e {
            ModuleError::HypothesisViolated(msg) => SuiteAbort::Skip(msg),
            other => SuiteAbort::Fail(other.to_string()),
        }
    }
}

impl From<AlgebraError> for SuiteAbort {
    fn from(e: AlgebraError) -> Self {
        SuiteAbort::Fail(e.to_string())
    }
}

impl From<GroupError> for SuiteAbort {
    fn from(e: GroupError) -> Self {
        SuiteAbort::Fail(e.to_string())
    }
}

impl From<ScalarError> for SuiteAbort {
    fn from(e: ScalarError) -> Self {
        SuiteAbort::Fail(e.to_string())
    }
}

pub fn is_known_suite(name: &str) -> bool {
    ALL_SUITES.contains(&name)
}

/// Runs the named suites (sorted, deduplicated) on up to `jobs` threads;
/// `jobs = 0` uses the default parallelism.
pub fn run_suites(
    cfg: &RunConfig,
    names: &[String],
    jobs: usize,
    capture_timings: bool,
) -> Vec<SuiteReport> {
    let mut names: Vec<&str> = names.iter().map(String::as_str).collect();
    names.sort_unstable();
    names.dedup();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        names
            .par_iter()
            .map(|name| run_one(cfg, name, capture_timings))
            .collect()
    })
}

fn run_one(cfg: &RunConfig, name: &str, capture_timings: bool) -> SuiteReport {
    let started = Instant::now();
    let checks = match dispatch(cfg, name) {
        Ok(checks) => checks,
        Err(SuiteAbort::Skip(reason)) => vec![Check::skip("hypotheses", reason)],
        Err(SuiteAbort::Fail(message)) => vec![Check::fail("error", message)],
    };
    let mut timings = BTreeMap::new();
    if capture_timings {
        timings.insert("millis".to_string(), started.elapsed().as_millis() as u64);
    }
    SuiteReport {
        suite: name.to_string(),
        parameters: parameters(cfg),
        checks,
        timings,
    }
}

fn parameters(cfg: &RunConfig) -> BTreeMap<String, String> {
    let mut p = BTreeMap::new();
    p.insert("group".to_string(), cfg.group_spec.clone());
    p.insert("pi".to_string(), cfg.pi_render());
    p.insert("ell".to_string(), cfg.ell_spec.clone());
    p.insert("seed".to_string(), cfg.seed.to_string());
    p
}

fn dispatch(cfg: &RunConfig, name: &str) -> SuiteResult {
    match name {
        "goursat" => foundations::goursat(cfg),
        "star-assoc" => foundations::star_assoc(cfg),
        "prop-2.2" => foundations::thorax_monotone(cfg),
        "lemma-2.3" => foundations::projection_index(cfg),
        "lemma-4.6" => foundations::kernel_step(cfg),
        "cor-4.1" => foundations::character_count(cfg),
        "lemma-3.1" => structure::axis_pairing(cfg),
        "lemma-3.2" => structure::twisted_copies(cfg),
        "lemma-3.3" => structure::pairing_dichotomy(cfg),
        "thm-4.4" => structure::action_formula(cfg),
        "thm-4.7" => structure::nilpotent_ideal(cfg),
        "sec-5" => structure::diagonal_block(cfg),
        "sec-6" => structure::eigenvectors(cfg),
        "thm-1" => structure::wedderburn(cfg),
        "trace-rank" => structure::trace_rank(cfg),
        _ => Err(SuiteAbort::Fail(format!("unknown suite `{name}`"))),
    }
}
