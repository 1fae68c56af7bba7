use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use askey_wilson_cli::{
    cmd_compass, cmd_spectrum, cmd_tables, cmd_verify, CliResult, Exit, RawParams, RunConfig,
};

/// Exact verifier for the AW(3) and AW(4) relation suites.
#[derive(Parser)]
#[command(name = "awcheck", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run relation suites and optionally write a JSON report.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        /// Comma-separated suite names, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Predicted Casimir eigenvalues on one weight block, with the annihilating check.
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        /// Consecutive label such as Q12 or Q1234.
        #[arg(long)]
        op: String,
        #[arg(long)]
        weight: usize,
    },
    /// Export the compass graph of the bosonic generators as DOT.
    Compass {
        #[command(flatten)]
        params: ParamArgs,
        /// Output file; stdout when omitted.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// List the master-identity rows.
    Tables {
        /// Print the raw table file instead.
        #[arg(long)]
        dump: bool,
    },
}

#[derive(Args)]
struct ParamArgs {
    /// Deformation parameter, `a/b` [default: 5/3]
    #[arg(long)]
    q: Option<String>,
    /// Representation labels, `k1,k2,...` [default: leading entries of 1,2,1,3]
    #[arg(long)]
    k: Option<String>,
    /// Number of tensor factors, 2 to 4 [default: 4, or the length of --k]
    #[arg(long)]
    legs: Option<usize>,
    /// Truncation: maximal total weight [default: 6]
    #[arg(long)]
    nmax: Option<usize>,
}

impl From<ParamArgs> for RawParams {
    fn from(a: ParamArgs) -> Self {
        RawParams {
            q: a.q,
            k: a.k,
            legs: a.legs,
            nmax: a.nmax,
        }
    }
}

fn run(cli: Cli) -> CliResult<(Exit, String)> {
    match cli.command {
        Command::Verify {
            params,
            suite,
            report,
        } => cmd_verify(&RunConfig::new(&params.into(), &suite, report)?),
        Command::Spectrum { params, op, weight } => cmd_spectrum(&params.into(), &op, weight),
        Command::Compass { params, dot } => cmd_compass(&params.into(), dot.as_deref()),
        Command::Tables { dump } => cmd_tables(dump),
    }
}

fn main() -> ExitCode {
    let exit = match run(Cli::parse()) {
        Ok((exit, text)) => {
            print!("{text}");
            exit
        }
        Err(e) => {
            eprintln!("awcheck: {e}");
            e.exit()
        }
    };
    ExitCode::from(exit as u8)
}
