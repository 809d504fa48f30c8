use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use orthodet::arith::prime_power;
use orthodet::chartab::{CharKind, CharLabel, RangeMode};
use orthodet::cyclo::SquareConfig;
use orthodet::gf::DEFAULT_MAX_Q;
use orthodet::groups::{make_group_capped, Family, GroupSpec};
use orthodet::oracle::{Effort, OracleConfig};
use orthodet::Error;
use orthodet_cli::{det_record, table_records, to_csv, to_json, to_text, verify, OutputRecord};

const CHAR_HELP: &str = "Character names:
  qs       degree q(q+ε)
  qcubed   degree q^3
  stprime  degree (q+ε)(q^2+εq+1)/3, parameter u in 0..2
  st       degree (q+ε)(q^2+εq+1), parameter u
  rt       degree (q-ε)(q^2+εq+1), parameter u
with ε = 1 for SL and ε = -1 for SU.

Exit codes: 0 success, 1 invalid or degenerate input, 2 mismatch, 3 undecided.";

#[derive(Parser)]
#[command(name = "orthodet", version, about = "Orthogonal determinants of SL3(q) and SU3(q)", after_help = CHAR_HELP)]
struct Cli {
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Caps {
    /// Largest admissible q
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_Q)]
    max_q: u64,
    /// Largest precision (bits) for certifying signs of real embeddings
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    /// Largest coefficient height (bits) of a square-root witness
    #[arg(long, global = true)]
    denominator_bound: Option<u64>,
    /// Interpretation of the rt parameter range for SU
    #[arg(long, global = true, default_value = "table")]
    range_mode: RangeMode,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant of one character
    Det {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        q: u64,
        #[arg(long = "char")]
        kind: CharKind,
        #[arg(long)]
        u: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// All even-degree indicator-+ characters of a group
    Table {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cross-check the routes and run the explicit-module oracles
    Verify {
        /// Restrict to one family (both by default)
        #[arg(long)]
        family: Option<Family>,
        /// Comma-separated list of q
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, default_value = "fast")]
        effort: Effort,
    },
}

fn group(family: Family, q: u64, max_q: u64) -> Result<GroupSpec, Error> {
    let (p, f) =
        prime_power(q).ok_or_else(|| Error::Parameter(format!("q = {q} is not a prime power")))?;
    make_group_capped(family, p, f, max_q)
}

fn emit(records: &[OutputRecord], format: Format) {
    match format {
        Format::Text => print!("{}", to_text(records)),
        Format::Json => println!("{}", to_json(records)),
        Format::Csv => print!("{}", to_csv(records)),
    }
}

fn square_config(caps: &Caps) -> SquareConfig {
    let mut cfg = SquareConfig::default();
    if let Some(b) = caps.precision_bits {
        cfg.max_precision_bits = b;
    }
    if let Some(b) = caps.denominator_bound {
        cfg.max_witness_bits = b;
    }
    cfg
}

fn run(cli: Cli) -> Result<u8, Error> {
    let caps = &cli.caps;
    match cli.cmd {
        Command::Det {
            family,
            q,
            kind,
            u,
            format,
        } => {
            let g = group(family, q, caps.max_q)?;
            let label = CharLabel::new(kind, u)?;
            emit(&[det_record(&g, &label, caps.range_mode)?], format);
            Ok(0)
        }
        Command::Table { family, q, format } => {
            let g = group(family, q, caps.max_q)?;
            emit(&table_records(&g, caps.range_mode)?, format);
            Ok(0)
        }
        Command::Verify { family, q, effort } => {
            let families = match family {
                Some(f) => vec![f],
                None => vec![Family::SL, Family::SU],
            };
            let mut groups = Vec::new();
            for &q in &q {
                for &f in &families {
                    groups.push(group(f, q, caps.max_q)?);
                }
            }
            let cfg = OracleConfig {
                square: square_config(caps),
                ..OracleConfig::default()
            };
            let summary = verify(&groups, effort, &cfg, caps.range_mode);
            println!(
                "{}",
                serde_json::to_string_pretty(&summary).expect("summary serializes")
            );
            Ok(summary.exit_code())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
