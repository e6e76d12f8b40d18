use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use subchar_cli::config::RunConfig;
use subchar_cli::report::{any_failure, render, Format};
use subchar_cli::suites::{is_known_suite, run_suites, ALL_SUITES};
use subchar_cli::{describe, mult, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

/// Exact-arithmetic workbench over deformed subcharacter algebras of small
/// finite groups: inspect bases, multiply subcharacters, and run the named
/// verification suites.
#[derive(Parser)]
#[command(name = "subchar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Group set K: comma-separated entries, each an abelian spec (`C3`,
    /// `C2xC2`), the literal `S3`, or a path to a Cayley-table JSON file
    /// (`{"order": n, "table": [[...]]}`).
    #[arg(long, default_value = "C3")]
    group: String,

    /// Fibre primes, comma-separated (`--pi 2,3`); the empty string is the
    /// trivial fibre. Defaults to all primes dividing the group orders.
    #[arg(long)]
    pi: Option<String>,

    /// Deformation ℓ on primes: `id` (ℓ(p)=p), `one` (ℓ(p)=1), `indet`
    /// (ℓ(p)=t_p), or explicit assignments like `2=1,3=t,5=7`.
    #[arg(long, default_value = "indet")]
    ell: String,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,

    /// Write the rendered output to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the algebra's basis inventory: sizes, subgroups with their
    /// character counts, the identity element, and all basis labels.
    Describe {
        #[command(flatten)]
        opts: CommonOpts,
    },

    /// Multiply two basis elements given by label (as printed by
    /// `describe`) or by `#index`.
    Mult {
        #[command(flatten)]
        opts: CommonOpts,
        lhs: String,
        rhs: String,
    },

    /// Run verification suites and aggregate their verdicts: exit 0 when
    /// every non-skipped check passes, 1 on any failure.
    Check {
        #[command(flatten)]
        opts: CommonOpts,

        /// Comma-separated suite names; defaults to every registered suite.
        #[arg(long)]
        suites: Option<String>,

        /// Seed for sampled property checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Maximum concurrent suites; 0 uses the default parallelism.
        #[arg(long, default_value_t = 0)]
        jobs: usize,

        /// Capture wall-clock per-suite timings into the report. Off by
        /// default so identical configurations produce byte-identical
        /// reports.
        #[arg(long)]
        timings: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Describe { opts } => cmd_describe(&opts),
        Command::Mult { opts, lhs, rhs } => cmd_mult(&opts, &lhs, &rhs),
        Command::Check {
            opts,
            suites,
            seed,
            jobs,
            timings,
        } => cmd_check(&opts, suites.as_deref(), seed, jobs, timings),
    };
    ExitCode::from(code as u8)
}

fn resolve(opts: &CommonOpts, seed: u64) -> Result<RunConfig, i32> {
    RunConfig::resolve(&opts.group, opts.pi.as_deref(), &opts.ell, seed).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}

fn emit(opts: &CommonOpts, rendered: &str) -> i32 {
    match &opts.out {
        Some(path) => match fs::write(path, rendered) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                EXIT_USAGE
            }
        },
        None => {
            print!("{rendered}");
            EXIT_OK
        }
    }
}

fn cmd_describe(opts: &CommonOpts) -> i32 {
    let cfg = match resolve(opts, 0) {
        Ok(cfg) => cfg,
        Err(code) => return code,
    };
    let alg = match cfg.algebra(&[]) {
        Ok(alg) => alg,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    emit(opts, &describe::render(&cfg, &alg, opts.format.into()))
}

fn cmd_mult(opts: &CommonOpts, lhs: &str, rhs: &str) -> i32 {
    let cfg = match resolve(opts, 0) {
        Ok(cfg) => cfg,
        Err(code) => return code,
    };
    let alg = match cfg.algebra(&[]) {
        Ok(alg) => alg,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match mult::run(&alg, lhs, rhs, opts.format.into()) {
        Ok(rendered) => emit(opts, &rendered),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn cmd_check(
    opts: &CommonOpts,
    suites: Option<&str>,
    seed: u64,
    jobs: usize,
    timings: bool,
) -> i32 {
    let cfg = match resolve(opts, seed) {
        Ok(cfg) => cfg,
        Err(code) => return code,
    };

    let names: Vec<String> = match suites {
        None => ALL_SUITES.iter().map(|s| s.to_string()).collect(),
        Some(list) => {
            let mut names = Vec::new();
            for part in list.split(',') {
                let name = part.trim().to_string();
                if name.is_empty() {
                    continue;
                }
                if !is_known_suite(&name) {
                    eprintln!(
                        "error: unknown suite `{name}` (known: {})",
                        ALL_SUITES.join(", ")
                    );
                    return EXIT_USAGE;
                }
                names.push(name);
            }
            if names.is_empty() {
                eprintln!("error: empty suite list");
                return EXIT_USAGE;
            }
            names
        }
    };

    // Surface configuration problems (unassigned primes, zero deformations,
    // oversized groups) as usage errors before any suite runs.
    if let Err(e) = cfg.algebra(&[]) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }

    let reports = run_suites(&cfg, &names, jobs, timings);
    let code = if any_failure(&reports) {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    };
    let emit_code = emit(opts, &render(&reports, opts.format.into()));
    if emit_code != EXIT_OK {
        return emit_code;
    }
    code
}
