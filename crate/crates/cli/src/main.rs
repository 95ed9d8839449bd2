use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use overpart_core::appell::congruence_product_series;
use overpart_core::overpartition::admissible_overpartitions;
use overpart_core::partition::{b_partitions, c_partitions, count_c};
use overpart_core::series::overpartition_product;
use overpart_core::verify::{self, defaults, VerificationReport, REPORT_SCHEMA_VERSION};
use overpart_core::Phrasing;

#[derive(Parser)]
#[command(name = "overpart", version, about = "Check partition and overpartition identities exactly")]
struct Cli {
    /// Output format. csv applies to coefficient tables only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for independent checks (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Reserved; no command is randomized.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Print generating-function coefficients.
    Coeffs(CoeffsArgs),
    /// Print the objects counted by one side at a single n.
    List(ListArgs),
    /// Reproduce the k = 2, n = 10 worked example.
    #[command(name = "golden-n10")]
    GoldenN10,
}

#[derive(Args)]
struct BruteRange {
    /// Largest n for the DP and series sides.
    #[arg(long, default_value_t = defaults::N_MAX)]
    n_max: usize,
    /// Largest n for the brute-force side.
    #[arg(long, default_value_t = defaults::ENUM_LIMIT)]
    enum_limit: usize,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Marked overpartitions against (-aq;q^k)_inf / (q;q)_inf.
    Overpartition {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = defaults::OVERPARTITION_N_MAX)]
        n_max: usize,
        #[arg(long, default_value_t = defaults::M_MAX)]
        m_max: usize,
    },
    /// B_{i,k} = C_{i,k} = product coefficients.
    Corollary {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        i: usize,
        #[command(flatten)]
        range: BruteRange,
    },
    /// The i = k-1 case, with its own phrasing of the sum side.
    Andrews {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        range: BruteRange,
    },
    /// The i = 0 case, with its own phrasing of the sum side.
    Dual {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        range: BruteRange,
    },
    /// Parts 1 or 5 mod 6 against the gap condition.
    Schur {
        #[arg(long, default_value_t = defaults::SCHUR_N_MAX)]
        n_max: usize,
    },
    /// The recursion, its functional equation and its limit.
    Machinery {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = defaults::Q_ORDER)]
        q_order: usize,
        #[arg(long, default_value_t = defaults::J_MAX)]
        j_max: usize,
    },
    /// The full default suite.
    All {
        #[arg(long, default_value_t = defaults::K_MAX)]
        k_max: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CoeffSide {
    /// Congruence product for (k, i).
    Product,
    /// Difference-condition count C_{i,k}(n) by enumeration.
    Sum,
    /// Bivariate (-aq;q^k)_inf / (q;q)_inf.
    OverpartitionProduct,
}

#[derive(Args)]
struct CoeffsArgs {
    #[arg(long, value_enum)]
    side: CoeffSide,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    n_max: usize,
    /// Largest power of a (overpartition-product only).
    #[arg(long, default_value_t = defaults::M_MAX)]
    m_max: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ListSide {
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
}

#[derive(Args)]
struct ListArgs {
    #[arg(long, value_enum)]
    side: ListSide,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    n: usize,
}

fn run_verify(cmd: VerifyCommand) -> Result<Vec<VerificationReport>> {
    Ok(match cmd {
        VerifyCommand::Overpartition { k, n_max, m_max } => vec![verify::verify_overpartition(k, n_max, m_max)?],
        VerifyCommand::Corollary { k, i, range } => {
            vec![verify::verify_corollary(k, i, range.n_max, range.enum_limit)?]
        }
        VerifyCommand::Andrews { k, range } => vec![verify::verify_andrews(k, range.n_max, range.enum_limit)?],
        VerifyCommand::Dual { k, range } => vec![verify::verify_dual(k, range.n_max, range.enum_limit)?],
        VerifyCommand::Schur { n_max } => vec![verify::verify_schur(n_max)],
        VerifyCommand::Machinery { k, q_order, j_max } => verify::verify_machinery(k, q_order, j_max)?,
        VerifyCommand::All { k_max } => verify::verify_all(k_max)?,
    })
}

fn print_reports(out: &mut impl Write, reports: &[VerificationReport], format: Format) -> Result<()> {
    let passed = reports.iter().all(VerificationReport::passed);
    match format {
        Format::Text => {
            for r in reports {
                writeln!(out, "{r}")?;
            }
            let failing = reports.iter().filter(|r| !r.passed()).count();
            writeln!(out, "{} checks, {} not passing", reports.len(), failing)?;
        }
        Format::Json => {
            let doc = json!({
                "schema_version": REPORT_SCHEMA_VERSION,
                "passed": passed,
                "reports": reports,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => bail!("csv output is only available for coefficient tables"),
    }
    Ok(())
}

fn require_i(i: Option<usize>, what: &str) -> Result<usize> {
    i.with_context(|| format!("--i is required for {what}"))
}

fn run_coeffs(out: &mut impl Write, args: &CoeffsArgs, format: Format) -> Result<()> {
    // rows of (n, m, coefficient); m is None for univariate sides
    let mut rows: Vec<(usize, Option<usize>, String)> = Vec::new();
    let mut i_used = None;
    match args.side {
        CoeffSide::Product => {
            let i = require_i(args.i, "--side product")?;
            i_used = Some(i);
            let s = congruence_product_series(args.k, i, args.n_max)?;
            rows.extend(s.coeffs().iter().enumerate().map(|(n, c)| (n, None, c.to_string())));
        }
        CoeffSide::Sum => {
            let i = require_i(args.i, "--side sum")?;
            i_used = Some(i);
            for n in 0..=args.n_max {
                rows.push((n, None, count_c(n, args.k, i, Phrasing::Corollary)?.to_string()));
            }
        }
        CoeffSide::OverpartitionProduct => {
            let s = overpartition_product(args.k, args.n_max, args.m_max)?;
            for n in 0..=args.n_max {
                for m in 0..=args.m_max {
                    rows.push((n, Some(m), s.coeff(m, n).to_string()));
                }
            }
        }
    }
    match format {
        Format::Text => {
            for (n, m, c) in &rows {
                match m {
                    Some(m) => writeln!(out, "a^{m} q^{n}: {c}")?,
                    None => writeln!(out, "q^{n}: {c}")?,
                }
            }
        }
        Format::Csv => {
            let bivariate = args.side == CoeffSide::OverpartitionProduct;
            writeln!(out, "{}", if bivariate { "n,m,coefficient" } else { "n,coefficient" })?;
            for (n, m, c) in &rows {
                match m {
                    Some(m) => writeln!(out, "{n},{m},{c}")?,
                    None => writeln!(out, "{n},{c}")?,
                }
            }
        }
        Format::Json => {
            let coefficients: Vec<_> = rows
                .iter()
                .map(|(n, m, c)| match m {
                    Some(m) => json!({ "n": n, "m": m, "coefficient": c }),
                    None => json!({ "n": n, "coefficient": c }),
                })
                .collect();
            let doc = json!({
                "schema_version": REPORT_SCHEMA_VERSION,
                "side": args.side,
                "k": args.k,
                "i": i_used,
                "n_max": args.n_max,
                "coefficients": coefficients,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(())
}

fn run_list(out: &mut impl Write, args: &ListArgs, format: Format) -> Result<()> {
    let items: Vec<String> = match args.side {
        ListSide::B => b_partitions(args.n, args.k, require_i(args.i, "--side B")?)?
            .iter()
            .map(ToString::to_string)
            .collect(),
        ListSide::C => c_partitions(args.n, args.k, require_i(args.i, "--side C")?, Phrasing::Corollary)?
            .iter()
            .map(ToString::to_string)
            .collect(),
        ListSide::D => admissible_overpartitions(args.n, args.k, None)?
            .iter()
            .map(ToString::to_string)
            .collect(),
    };
    match format {
        Format::Text => {
            for item in &items {
                writeln!(out, "{item}")?;
            }
            writeln!(out, "{} objects", items.len())?;
        }
        Format::Json => {
            let doc = json!({
                "schema_version": REPORT_SCHEMA_VERSION,
                "n": args.n,
                "k": args.k,
                "i": args.i,
                "count": items.len(),
                "objects": items,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => bail!("csv output is only available for coefficient tables"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Verify(cmd) => {
            let reports = run_verify(cmd)?;
            print_reports(&mut out, &reports, cli.format)?;
            Ok(reports.iter().all(VerificationReport::passed))
        }
        Command::GoldenN10 => {
            let reports = [verify::golden_example_n10()];
            print_reports(&mut out, &reports, cli.format)?;
            Ok(reports[0].passed())
        }
        Command::Coeffs(args) => run_coeffs(&mut out, &args, cli.format).map(|()| true),
        Command::List(args) => run_list(&mut out, &args, cli.format).map(|()| true),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
