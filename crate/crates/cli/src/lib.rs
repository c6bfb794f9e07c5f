//! Command-line front end for periodic Zeckendorf systems.
//!
//! Every command writes data to the supplied writer (stdout in the binary)
//! and returns a [`CliError`] for anything that should end the process with
//! a nonzero status.

pub mod commands;
pub mod format;
pub mod stats;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use thiserror::Error;
use zeck_core::{DualityError, ListSpec, SystemPair};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or input data; exit status 2.
    #[error("{0}")]
    Usage(String),
    /// A check reported a mismatch; exit status 1.
    #[error("verification failed")]
    Verification,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification | CliError::Io(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "zeck", version, about = "Periodic Zeckendorf numeration: expansion, counting and envelopes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct PairArgs {
    /// List of the subcollection, e.g. 1,0
    #[arg(long = "sub", value_name = "LIST")]
    pub sub: String,
    /// List of the super-collection, e.g. 1,1
    #[arg(long = "super", value_name = "LIST")]
    pub sup: String,
}

impl PairArgs {
    pub fn build(&self) -> CliResult<SystemPair> {
        let sub = parse_list(&self.sub)?;
        let sup = parse_list(&self.sup)?;
        // A pair that is not a proper subcollection is rejected as bad input.
        SystemPair::new(sub, sup).map_err(|e: DualityError| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the expansion of n in the collection of a list.
    Expand {
        #[arg(long, value_name = "LIST")]
        list: String,
        n: String,
    },
    /// Count n < x whose super-collection expansion belongs to the subcollection.
    Count {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_name = "N")]
        x: String,
        /// Count by expanding every n < x instead of using the duality formula.
        #[arg(long)]
        brute: bool,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check counting, expansion and the numeric identities.
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long = "max-x", value_name = "N")]
        max_x: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the spectral constants of a pair.
    Info {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run the extremal search and print lim sup / lim inf of z(x)/x^γ.
    Extremes {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        json: bool,
    },
    /// Emit x,z,ratio rows for from <= x < to.
    Scan {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_name = "N")]
        from: String,
        #[arg(long, value_name = "N")]
        to: String,
        #[arg(long, value_name = "N", default_value = "1")]
        step: String,
    },
    /// Histogram of the ratio column of a scan.
    Stats {
        /// Scan CSV to read; `-` or absent reads stdin unless a pair is given.
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        bins: usize,
        /// Compute the scan internally instead of reading it.
        #[arg(long = "sub", value_name = "LIST", requires_all = ["sup", "from", "to"])]
        sub: Option<String>,
        #[arg(long = "super", value_name = "LIST")]
        sup: Option<String>,
        #[arg(long, value_name = "N")]
        from: Option<String>,
        #[arg(long, value_name = "N")]
        to: Option<String>,
        #[arg(long, value_name = "N", default_value = "1")]
        step: String,
    },
}

pub fn parse_list(s: &str) -> CliResult<ListSpec> {
    s.parse::<ListSpec>()
        .map_err(|e| CliError::Usage(format!("invalid list `{s}`: {e}")))
}

pub fn parse_int(name: &str, s: &str) -> CliResult<BigUint> {
    s.trim()
        .parse::<BigUint>()
        .map_err(|_| CliError::Usage(format!("--{name}: `{s}` is not a nonnegative integer")))
}

/// Runs one parsed command.
pub fn run(cli: Cli, out: &mut dyn std::io::Write, digits: usize) -> CliResult<()> {
    match cli.command {
        Command::Expand { list, n } => {
            commands::cmd_expand(&parse_list(&list)?, &parse_int("n", &n)?, out)
        }
        Command::Count { pair, x, brute, json } => {
            commands::cmd_count(&pair.build()?, &parse_int("x", &x)?, brute, json, out)
        }
        Command::Verify { pair, max_x, json } => {
            let pair = pair.build()?;
            if commands::cmd_verify(&pair, max_x, json, digits, out)? {
                Ok(())
            } else {
                Err(CliError::Verification)
            }
        }
        Command::Info { pair, json } => commands::cmd_info(&pair.build()?, json, digits, out),
        Command::Extremes { pair, json } => {
            commands::cmd_extremes(&pair.build()?, json, digits, out)
        }
        Command::Scan { pair, from, to, step } => {
            let range = commands::ScanRange::new(
                parse_int("from", &from)?,
                parse_int("to", &to)?,
                parse_int("step", &step)?,
            )?;
            commands::cmd_scan(&pair.build()?, &range, digits, out).map(|_| ())
        }
        Command::Stats {
            input,
            bins,
            sub,
            sup,
            from,
            to,
            step,
        } => {
            let source = match (sub, sup, from, to) {
                (Some(sub), Some(sup), Some(from), Some(to)) => {
                    let pair = PairArgs { sub, sup }.build()?;
                    let range = commands::ScanRange::new(
                        parse_int("from", &from)?,
                        parse_int("to", &to)?,
                        parse_int("step", &step)?,
                    )?;
                    stats::RatioSource::Scan {
                        pair: Box::new(pair),
                        range,
                        digits,
                    }
                }
                (None, None, None, None) => match input {
                    Some(p) if p.as_os_str() != "-" => stats::RatioSource::File(p),
                    _ => stats::RatioSource::Stdin,
                },
                _ => {
                    return Err(CliError::Usage(
                        "stats needs all of --sub, --super, --from, --to, or none of them".into(),
                    ))
                }
            };
            stats::cmd_stats(&source, bins, digits, out)
        }
    }
}
