use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wedgedeg::catalog::parse_group_spec;
use wedgedeg::report::analyze;
use wedgedeg::table::{family_table, to_csv, FamilyKind};
use wedgedeg::verify::run_verify;
use wedgedeg::CliError;
use wedgedeg_core::presentation::DEFAULT_COSET_LIMIT;
use wedgedeg_core::wedge::PairConfig;

const COSET_LIMIT_ENV: &str = "WEDGEDEG_COSET_LIMIT";

#[derive(Parser)]
#[command(
    name = "wedgedeg",
    about = "Exact commutativity and exterior degrees of finite groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Largest tuple level n to evaluate.
    #[arg(long = "max-n", default_value_t = 3)]
    max_n: usize,
    /// Cap on cosets defined during any enumeration; overrides the
    /// WEDGEDEG_COSET_LIMIT environment variable.
    #[arg(long = "coset-limit")]
    coset_limit: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the JSON degree report for a group spec.
    Report {
        /// Group spec such as Z6, D8, Q8, S4, Z3xD8 or @file.json.
        spec: String,
        #[command(flatten)]
        common: CommonOpts,
        /// Also write the JSON report to this file.
        #[arg(long)]
        json: Option<std::path::PathBuf>,
    },
    /// Check every bound and oracle for a group spec; exit 1 on any
    /// violation.
    Verify {
        spec: String,
        #[command(flatten)]
        common: CommonOpts,
        /// Enable or disable the slow independent oracles.
        #[arg(long, default_value = "on", value_parser = ["on", "off"])]
        oracle: String,
    },
    /// Emit computed-versus-closed-form CSV rows for a family.
    Table {
        /// Family: dihedral or quaternion.
        family: String,
        /// Inclusive group-order range, written lo..hi.
        range: String,
        /// Largest tuple level m to tabulate.
        #[arg(long, default_value_t = 3)]
        m: u32,
        /// Also write the CSV to this file.
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
        /// Cap on cosets defined during any enumeration.
        #[arg(long = "coset-limit")]
        coset_limit: Option<usize>,
    },
}

fn coset_limit_from(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(v) = flag {
        return Ok(v.max(1));
    }
    match std::env::var(COSET_LIMIT_ENV) {
        Ok(text) => text
            .parse::<usize>()
            .map(|v| v.max(1))
            .map_err(|_| CliError::Input(format!("bad {COSET_LIMIT_ENV} value {text:?}"))),
        Err(_) => Ok(DEFAULT_COSET_LIMIT),
    }
}

fn parse_range(text: &str) -> Result<(usize, usize), CliError> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| CliError::Input(format!("range must look like 4..16, got {text:?}")))?;
    let lo = lo
        .trim()
        .parse::<usize>()
        .map_err(|_| CliError::Input(format!("bad range start {lo:?}")))?;
    let hi = hi
        .trim()
        .trim_start_matches('=')
        .parse::<usize>()
        .map_err(|_| CliError::Input(format!("bad range end {hi:?}")))?;
    Ok((lo, hi))
}

fn write_file(path: &std::path::Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn run() -> Result<i32, CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Report { spec, common, json } => {
            let limit = coset_limit_from(common.coset_limit)?;
            let config = PairConfig {
                coset_limit: limit,
                ..PairConfig::default()
            };
            let parsed = parse_group_spec(&spec, limit)?;
            let analysis = analyze(&parsed, common.max_n, &config)?;
            let text = serde_json::to_string_pretty(&analysis.report)
                .expect("report serialization cannot fail");
            println!("{text}");
            if let Some(path) = json {
                write_file(&path, &text)?;
            }
            Ok(0)
        }
        Command::Verify {
            spec,
            common,
            oracle,
        } => {
            let limit = coset_limit_from(common.coset_limit)?;
            let config = PairConfig {
                coset_limit: limit,
                ..PairConfig::default()
            };
            let parsed = parse_group_spec(&spec, limit)?;
            let outcome = run_verify(&parsed, common.max_n, oracle == "on", &config)?;
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for check in &outcome.checks {
                let status = if check.ok { "ok" } else { "FAIL" };
                writeln!(out, "{status:>4}  {}  {}", check.name, check.detail)
                    .expect("stdout write");
            }
            let label = &outcome.analysis.report.group;
            if outcome.all_ok() {
                writeln!(out, "  ok  all checks passed for {label}").expect("stdout write");
                Ok(0)
            } else {
                writeln!(out, "FAIL  violations found for {label}").expect("stdout write");
                Ok(1)
            }
        }
        Command::Table {
            family,
            range,
            m,
            csv,
            coset_limit,
        } => {
            let limit = coset_limit_from(coset_limit)?;
            let config = PairConfig {
                coset_limit: limit,
                ..PairConfig::default()
            };
            let kind = FamilyKind::parse(&family)?;
            let (lo, hi) = parse_range(&range)?;
            let rows = family_table(kind, lo, hi, m, &config)?;
            let text = to_csv(&rows);
            print!("{text}");
            if let Some(path) = csv {
                write_file(&path, &text)?;
            }
            Ok(if rows.iter().all(|r| r.matches) { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("wedgedeg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
