//! `multifiber`: dimensions and speciality of linear systems on blow-ups of
//! `(P^1)^n` from the command line.

mod batch;
mod report;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multifiber::degen::DegenConfig;
use multifiber::interp::{InterpConfig, DEFAULT_PRIME};

#[derive(Parser, Debug)]
#[command(name = "multifiber", version, about = "Linear systems with multiple base points on (P^1)^n")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct OracleArgs {
    /// Prime below 2^32 for the finite-field rank computation.
    #[arg(long, env = "MULTIFIBER_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    trials: u32,
}

impl From<OracleArgs> for InterpConfig {
    fn from(a: OracleArgs) -> Self {
        InterpConfig { prime: a.prime, seed: a.seed, trials: a.trials }
    }
}

#[derive(Args, Debug, Clone, Copy)]
pub struct DegenArgs {
    /// Maximum recursion depth of the degeneration search.
    #[arg(long, default_value_t = 64)]
    max_depth: usize,
    /// Stricter search variant (see the README).
    #[arg(long)]
    strict_compat: bool,
}

impl From<DegenArgs> for DegenConfig {
    fn from(a: DegenArgs) -> Self {
        DegenConfig { max_depth: a.max_depth, strict_compat: a.strict_compat }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Virtual, expected and fiber counts.
    Dims { system: String },
    /// Reduce to standard form.
    Std {
        system: String,
        /// Print every intermediate system.
        #[arg(long)]
        trace: bool,
    },
    /// Section count from the interpolation matrix at random points.
    Dim {
        system: String,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Decide speciality by degeneration.
    Degen {
        system: String,
        #[command(flatten)]
        degen: DegenArgs,
    },
    /// Quadric conjecture on (P^1)^3 against the oracle.
    Conjecture {
        system: String,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Transport classes between the blow-ups of P^n and (P^1)^n.
    Phi {
        #[command(subcommand)]
        dir: PhiDir,
    },
    /// Process one system per line; JSON lines out, in input order.
    Batch {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Add the oracle report to each record.
        #[arg(long)]
        oracle: bool,
        /// Add the degeneration verdict to each record.
        #[arg(long)]
        verdict: bool,
        #[command(flatten)]
        oracle_args: OracleArgs,
        #[command(flatten)]
        degen: DegenArgs,
    },
    /// Check the worked examples.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum PhiDir {
    /// P^n side to (P^1)^n side: CLASS is `(d0)(m_1,...,m_s)`, s >= n+1.
    Push {
        #[arg(long)]
        n: usize,
        class: String,
    },
    /// (P^1)^n side to P^n side: CLASS is `(d_1,...,d_n)(m_1,...,m_r)`, r >= 2.
    Pull { class: String },
}

/// Failure of a command, with its exit code.
#[derive(Debug)]
pub enum Failure {
    Lib(multifiber::Error),
    Io(PathBuf, std::io::Error),
    /// Already reported; only the exit code is left.
    Silent(u8),
}

impl From<multifiber::Error> for Failure {
    fn from(e: multifiber::Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(multifiber::Error::Parse { .. }) => 2,
            Failure::Silent(c) => *c,
            _ => 1,
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let f = cli.format;
    match cli.command {
        Command::Dims { system } => report::dims(f, &system),
        Command::Std { system, trace } => report::std_form(f, &system, trace),
        Command::Dim { system, oracle } => report::dim(f, &system, &oracle.into()),
        Command::Degen { system, degen } => report::degen(f, &system, &degen.into()),
        Command::Conjecture { system, oracle } => report::conjecture(f, &system, &oracle.into()),
        Command::Phi { dir: PhiDir::Push { n, class } } => report::phi_push(f, n, &class),
        Command::Phi { dir: PhiDir::Pull { class } } => report::phi_pull(f, &class),
        Command::Batch { file, jobs, oracle, verdict, oracle_args, degen } => {
            let opts = batch::Options {
                jobs,
                oracle: oracle.then(|| oracle_args.into()),
                verdict: verdict.then(|| degen.into()),
            };
            batch::run(&file, &opts)
        }
        Command::Selftest => selftest::run(f),
    }
}

fn main() -> ExitCode {
    // Exit quietly when the reader goes away (`multifiber ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                Failure::Lib(err) => eprintln!("error: {err}"),
                Failure::Io(path, err) => eprintln!("error: {}: {err}", path.display()),
                Failure::Silent(_) => {}
            }
            ExitCode::from(e.code())
        }
    }
}
