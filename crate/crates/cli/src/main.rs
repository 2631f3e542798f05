//! Batch front end: full analysis reports, per-pair verification with
//! box bounds, and grid sweeps. JSON goes to stdout, diagnostics to
//! stderr. Exit codes: 0 pass, 1 verification failure, 2 invalid input,
//! 3 completion budget exceeded.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use popov_core::report::{sweep_json, sweep_text, verify_json, verify_text};
use popov_core::verify::{sweep_pairs, SweepFilter, SweepReport, SweepRow};
use popov_core::{
    analyze_with_budget, int, verify_pair, CheckStatus, Error, Mutation, PopovPair,
    VerifyOptions, DEFAULT_COMPLETION_BUDGET,
};

const BUDGET_ENV: &str = "POPOV_COMPLETION_BUDGET";

#[derive(Parser)]
#[command(
    name = "popov",
    version,
    about = "Exact invariants and machine verification for SL(2)-threefold resolutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis report for the pair (P, Q, M)
    Analyze {
        p: i64,
        q: i64,
        m: i64,
        #[arg(long)]
        json: bool,
    },
    /// Run every verification suite for the pair (P, Q, M)
    Verify {
        p: i64,
        q: i64,
        m: i64,
        /// Weight box bound; defaults to 2(q - p)
        #[arg(long)]
        max_weight: Option<i64>,
        /// Label box bound on |c|; defaults to m (P_{r+1} + 2)
        #[arg(long)]
        c_bound: Option<i64>,
        #[arg(long)]
        json: bool,
        /// Corrupt the first fixed-point ideal before verifying:
        /// "drop-semigroup:IDX" (0-based) or "drop-invariant:J" (1-based)
        #[arg(long)]
        mutate: Option<String>,
    },
    /// Verify every valid pair with q <= Q-MAX, m <= M-MAX, p < q
    Sweep {
        #[arg(long)]
        q_max: i64,
        #[arg(long)]
        m_max: i64,
        #[arg(long, conflicts_with = "non_toric_only")]
        toric_only: bool,
        #[arg(long)]
        non_toric_only: bool,
        /// Skip the quotient-dimension suites (much faster on big grids)
        #[arg(long)]
        fast: bool,
        #[arg(long)]
        json: bool,
    },
}

fn completion_budget() -> usize {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_COMPLETION_BUDGET)
}

fn parse_mutation(text: &str) -> Result<Mutation, Error> {
    let (kind, idx) = text.split_once(':').ok_or_else(|| {
        Error::InvalidArgument(format!("mutation must look like drop-semigroup:0, got {text}"))
    })?;
    let idx: usize = idx
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad mutation index {idx}")))?;
    match kind {
        "drop-semigroup" => Ok(Mutation::DropSemigroupGenerator(idx)),
        "drop-invariant" => Ok(Mutation::DropInvariantGenerator(idx)),
        _ => Err(Error::InvalidArgument(format!("unknown mutation kind {kind}"))),
    }
}

fn exit_for(err: &Error) -> ExitCode {
    match err {
        Error::InvalidPair(_)
        | Error::InvalidArgument(_)
        | Error::SmoothCaseUnsupported
        | Error::IndexOutOfRange(_) => ExitCode::from(2),
        Error::BudgetExceeded { .. } => ExitCode::from(3),
        _ => ExitCode::from(1),
    }
}

fn run_analyze(p: i64, q: i64, m: i64, json: bool) -> Result<ExitCode, Error> {
    let pair = PopovPair::new(p, q, m)?;
    let report = analyze_with_budget(&pair, completion_budget())?;
    if json {
        println!("{}", serde_json::to_string(&report.to_json()).unwrap());
    } else {
        print!("{}", report.to_text());
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    p: i64,
    q: i64,
    m: i64,
    max_weight: Option<i64>,
    c_bound: Option<i64>,
    json: bool,
    mutate: Option<String>,
) -> Result<ExitCode, Error> {
    let pair = PopovPair::new(p, q, m)?;
    let opts = VerifyOptions {
        max_weight: max_weight.map(int),
        c_bound: c_bound.map(int),
        completion_budget: completion_budget(),
        hilbert: true,
        mutation: mutate.as_deref().map(parse_mutation).transpose()?,
    };
    let report = verify_pair(&pair, &opts)?;
    if json {
        println!("{}", serde_json::to_string(&verify_json(&report)).unwrap());
    } else {
        print!("{}", verify_text(&report));
    }
    for check in &report.checks {
        if check.status == CheckStatus::Fail {
            eprintln!("failed: {} -- {}", check.name, check.detail);
        }
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_sweep(
    q_max: i64,
    m_max: i64,
    filter: SweepFilter,
    fast: bool,
    json: bool,
) -> Result<ExitCode, Error> {
    let opts = VerifyOptions {
        completion_budget: completion_budget(),
        hilbert: !fast,
        ..VerifyOptions::default()
    };
    // pairs are independent; verify in parallel and emit in grid order
    let results: Vec<Result<Option<SweepRow>, Error>> = sweep_pairs(q_max, m_max)
        .into_par_iter()
        .map(|(q, p, m)| {
            let pair = PopovPair::new(p, q, m)?;
            let toric = popov_core::is_toric(&pair)?;
            match filter {
                SweepFilter::ToricOnly if !toric => return Ok(None),
                SweepFilter::NonToricOnly if toric => return Ok(None),
                _ => {}
            }
            let report = verify_pair(&pair, &opts)?;
            Ok(Some(SweepRow {
                p,
                q,
                m,
                toric: report.toric,
                depth: report.depth,
                passed: report.passed(),
                failed_checks: report
                    .checks
                    .iter()
                    .filter(|c| c.status == CheckStatus::Fail)
                    .map(|c| c.name.clone())
                    .collect(),
            }))
        })
        .collect();
    let mut rows = Vec::new();
    for r in results {
        if let Some(row) = r? {
            rows.push(row);
        }
    }
    let report = SweepReport { rows };
    if json {
        println!("{}", serde_json::to_string(&sweep_json(&report)).unwrap());
    } else {
        print!("{}", sweep_text(&report));
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { p, q, m, json } => run_analyze(p, q, m, json),
        Command::Verify {
            p,
            q,
            m,
            max_weight,
            c_bound,
            json,
            mutate,
        } => run_verify(p, q, m, max_weight, c_bound, json, mutate),
        Command::Sweep {
            q_max,
            m_max,
            toric_only,
            non_toric_only,
            fast,
            json,
        } => {
            if q_max < 2 || m_max < 1 {
                eprintln!("error: empty sweep range");
                return ExitCode::SUCCESS;
            }
            let filter = if toric_only {
                SweepFilter::ToricOnly
            } else if non_toric_only {
                SweepFilter::NonToricOnly
            } else {
                SweepFilter::All
            };
            run_sweep(q_max, m_max, filter, fast, json)
        }
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_for(&err)
        }
    }
}
