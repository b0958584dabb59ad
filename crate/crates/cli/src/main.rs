//! `ekr` — exact verification of intersecting-family extremal bounds
//! over the subgraph families of a perfect matching.
//!
//! Exit codes: 0 verified, 1 a mathematical claim was refuted, 2 usage
//! or parameter error, 3 a resource cap was hit (under `--strict` for
//! grids).

mod proofcheck;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ekr_core::family::{is_intersecting, Family, MatchingParams, VertexSet};
use ekr_core::search::{max_intersecting, verify_ekr_instance, Regime, DEFAULT_FAMILY_CAP};
use ekr_core::Error;
use rayon::prelude::*;
use report::*;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_OK: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ekr",
    version,
    about = "Exact Erdős–Ko–Rado verification for subgraph families of a perfect matching"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct InstanceArgs {
    /// Number of matching edges.
    #[arg(long)]
    n: usize,
    /// Edges spanned by every member.
    #[arg(long)]
    p: usize,
    /// Isolated vertices in every member.
    #[arg(long)]
    s: usize,
}

impl InstanceArgs {
    fn params(&self) -> Result<MatchingParams, Error> {
        MatchingParams::new(self.n, self.p, self.s)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether one instance has the EKR property, exactly.
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Largest family size to solve.
        #[arg(long, default_value_t = DEFAULT_FAMILY_CAP as u64)]
        cap: u64,
        /// Start the solver without the star incumbent.
        #[arg(long)]
        no_seed_star: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify every valid instance with n up to a bound.
    Grid {
        /// Largest number of matching edges (at most 8).
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_FAMILY_CAP as u64)]
        cap: u64,
        /// Exit with code 3 if any row was skipped by a cap.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        no_seed_star: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-derive the star bound through the cycle-method machinery.
    Proofcheck {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Largest n for full proper-mapping enumeration.
        #[arg(long, default_value_t = ekr_core::cycle::DEFAULT_MAP_CAP)]
        map_cap: usize,
        #[arg(long, default_value_t = DEFAULT_FAMILY_CAP as u64)]
        cap: u64,
        /// Seed for the sampled canvasses.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print one maximum intersecting subfamily.
    Witness {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = DEFAULT_FAMILY_CAP as u64)]
        cap: u64,
        #[arg(long)]
        no_seed_star: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List every member of the family.
    Enumerate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = DEFAULT_FAMILY_CAP as u64)]
        cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify { instance, cap, no_seed_star, format } => {
            cmd_verify(&instance, cap, !no_seed_star, format)
        }
        Command::Grid { max_n, cap, strict, no_seed_star, format } => {
            cmd_grid(max_n, cap, strict, !no_seed_star, format)
        }
        Command::Proofcheck { instance, map_cap, cap, seed, format } => {
            cmd_proofcheck(&instance, map_cap, cap, seed, format)
        }
        Command::Witness { instance, cap, no_seed_star, format } => {
            cmd_witness(&instance, cap, !no_seed_star, format)
        }
        Command::Enumerate { instance, cap, format } => cmd_enumerate(&instance, cap, format),
    };
    ExitCode::from(code)
}

fn usage_error(message: &str) -> u8 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

/// Text or JSON; CSV is the grid's format only.
fn reject_csv(format: Format) -> Option<u8> {
    if format == Format::Csv {
        Some(usage_error("csv output is only available for the grid command"))
    } else {
        None
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn cmd_verify(instance: &InstanceArgs, cap: u64, seed_star: bool, format: Format) -> u8 {
    if let Some(code) = reject_csv(format) {
        return code;
    }
    let params = match instance.params() {
        Ok(p) => p,
        Err(e) => return usage_error(&e.to_string()),
    };
    let started = Instant::now();
    match verify_ekr_instance(params, cap as usize, seed_star) {
        Ok((verdict, result)) => {
            let report = VerifyReport {
                params: ParamsJson { n: params.n(), p: params.p(), s: params.s() },
                results: VerifyResults {
                    family_size: verdict.family_size,
                    star_size: verdict.star_size,
                    max_intersecting: verdict.max_intersecting,
                    regime: verdict.regime.as_str().to_string(),
                    holds: verdict.holds,
                    nodes_explored: result.nodes_explored,
                    seeded_bound: result.seeded_bound as u64,
                    elapsed_ms: started.elapsed().as_millis() as u64,
                },
                summary: VerifySummary { holds: verdict.holds },
            };
            match format {
                Format::Json => print_json(&report),
                _ => print!("{}", report.to_text()),
            }
            if verdict.holds {
                EXIT_OK
            } else {
                EXIT_REFUTED
            }
        }
        Err(e @ Error::CapExceeded { .. }) => {
            eprintln!("error: {e}");
            EXIT_CAP
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

fn grid_row(params: MatchingParams, cap: u64, seed_star: bool) -> GridRow {
    let started = Instant::now();
    let regime = if params.is_degenerate() {
        Regime::Degenerate
    } else {
        Regime::EkrRange
    };
    let mut row = GridRow {
        n: params.n(),
        p: params.p(),
        s: params.s(),
        family_size: params.family_size(),
        star_size: params.star_size(),
        max_intersecting: None,
        regime: regime.as_str().to_string(),
        holds: None,
        elapsed_ms: 0,
        skipped: None,
    };
    match verify_ekr_instance(params, cap as usize, seed_star) {
        Ok((verdict, _)) => {
            row.max_intersecting = Some(verdict.max_intersecting);
            row.holds = Some(verdict.holds);
        }
        Err(e) => row.skipped = Some(e.to_string()),
    }
    row.elapsed_ms = started.elapsed().as_millis() as u64;
    row
}

fn cmd_grid(max_n: usize, cap: u64, strict: bool, seed_star: bool, format: Format) -> u8 {
    if max_n == 0 || max_n > 8 {
        return usage_error("--max-n must be between 1 and 8");
    }
    let mut triples = Vec::new();
    for n in 1..=max_n {
        for p in 0..=n {
            for s in 0..=n - p {
                if let Ok(params) = MatchingParams::new(n, p, s) {
                    triples.push(params);
                }
            }
        }
    }
    let mut rows: Vec<GridRow> = triples
        .into_par_iter()
        .map(|params| grid_row(params, cap, seed_star))
        .collect();
    // completion order must never leak into the report
    rows.sort_by_key(|r| (r.n, r.p, r.s));

    let summary = GridSummary {
        instances: rows.len(),
        failures: rows.iter().filter(|r| r.holds == Some(false)).count(),
        skipped: rows.iter().filter(|r| r.skipped.is_some()).count(),
    };
    let report = GridReport {
        params: GridParams { max_n, cap, seed_star },
        results: rows,
        summary,
    };
    match format {
        Format::Json => print_json(&report),
        Format::Csv => print!("{}", report.to_csv()),
        Format::Text => print!("{}", report.to_text()),
    }
    if report.summary.failures > 0 {
        EXIT_REFUTED
    } else if strict && report.summary.skipped > 0 {
        EXIT_CAP
    } else {
        EXIT_OK
    }
}

fn cmd_proofcheck(
    instance: &InstanceArgs,
    map_cap: usize,
    cap: u64,
    seed: u64,
    format: Format,
) -> u8 {
    if let Some(code) = reject_csv(format) {
        return code;
    }
    let params = match instance.params() {
        Ok(p) => p,
        Err(e) => return usage_error(&e.to_string()),
    };
    let report = proofcheck::run(params, map_cap, cap, seed);
    match format {
        Format::Json => print_json(&report),
        _ => print!("{}", report.to_text()),
    }
    if report.all_executed_passed() {
        EXIT_OK
    } else {
        EXIT_REFUTED
    }
}

fn cmd_witness(instance: &InstanceArgs, cap: u64, seed_star: bool, format: Format) -> u8 {
    if let Some(code) = reject_csv(format) {
        return code;
    }
    let params = match instance.params() {
        Ok(p) => p,
        Err(e) => return usage_error(&e.to_string()),
    };
    if params.family_size() > cap {
        eprintln!("error: family has {} members, exceeding the cap of {cap}", params.family_size());
        return EXIT_CAP;
    }
    let family = Family::enumerate(params);
    let result = match max_intersecting(&family, cap as usize, seed_star) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let sets: Vec<VertexSet> = result
        .witness
        .iter()
        .map(|&i| family.members()[i].vertices())
        .collect();
    let validated = is_intersecting(&sets) && result.witness.len() == result.size;
    let report = WitnessReport {
        params: ParamsJson { n: params.n(), p: params.p(), s: params.s() },
        results: WitnessResults {
            size: result.size as u64,
            members: sets.iter().map(|s| member_names(s.bits())).collect(),
            validated,
        },
        summary: WitnessSummary { size: result.size as u64, validated },
    };
    match format {
        Format::Json => print_json(&report),
        _ => print!("{}", report.to_text()),
    }
    if validated {
        EXIT_OK
    } else {
        EXIT_REFUTED
    }
}

fn cmd_enumerate(instance: &InstanceArgs, cap: u64, format: Format) -> u8 {
    if let Some(code) = reject_csv(format) {
        return code;
    }
    let params = match instance.params() {
        Ok(p) => p,
        Err(e) => return usage_error(&e.to_string()),
    };
    if params.family_size() > cap {
        eprintln!("error: family has {} members, exceeding the cap of {cap}", params.family_size());
        return EXIT_CAP;
    }
    let family = Family::enumerate(params);
    let report = EnumerateReport {
        params: ParamsJson { n: params.n(), p: params.p(), s: params.s() },
        results: EnumerateResults {
            count: family.len() as u64,
            members: family
                .members()
                .iter()
                .map(|m| member_names(m.vertices().bits()))
                .collect(),
        },
        summary: EnumerateSummary { count: family.len() as u64 },
    };
    match format {
        Format::Json => print_json(&report),
        _ => print!("{}", report.to_text()),
    }
    EXIT_OK
}
