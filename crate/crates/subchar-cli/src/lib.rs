//! Command-line workbench over the deformed subcharacter algebras: `describe`
//! prints an algebra's basis inventory, `mult` multiplies two basis elements,
//! and `check` runs named verification suites and aggregates their verdicts.

pub mod config;
pub mod describe;
pub mod labels;
pub mod mult;
pub mod report;
pub mod suites;

/// Exit status contract: 0 all checks pass, 1 some check failed, 2 the
/// invocation itself was unusable (parse error, unknown suite or label).
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
