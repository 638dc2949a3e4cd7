use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use dilog_cli::report::{ConfigEcho, Report};

#[derive(Parser, Debug)]
#[command(name = "dilog-lab", version, about = "Verify dilogarithm identities, Nahm systems and q-series")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Target decimal digits (at least 30)
    #[arg(long, global = true, env = "DILOG_DIGITS", default_value_t = 120,
          value_parser = clap::value_parser!(u32).range(30..))]
    pub digits: u32,
    /// Largest denominator accepted by rational recognition
    #[arg(long, global = true, env = "DILOG_QMAX", default_value_t = 10_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub qmax: u64,
    #[arg(long, global = true, env = "DILOG_REPORT", value_enum, default_value_t = Format::Text)]
    pub report: Format,
    /// Registry JSON file replacing the built-in records
    #[arg(long, global = true, env = "DILOG_REGISTRY")]
    pub registry: Option<PathBuf>,
    /// Newton seed lattice size per axis
    #[arg(long, global = true, env = "DILOG_SEED_GRID", default_value_t = 32,
          value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub seed_grid: u64,
    /// q-series truncation order
    #[arg(long, global = true, env = "DILOG_ORDER", default_value_t = 100,
          value_parser = clap::value_parser!(u64).range(1..=2000))]
    pub order: u64,
    /// Seed for randomized checks
    #[arg(long, global = true, env = "DILOG_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recognize registry records and compare with their stated values
    Verify {
        /// Record name; repeatable
        #[arg(long = "id", required_unless_present = "all")]
        ids: Vec<String>,
        #[arg(long, conflicts_with = "ids")]
        all: bool,
    },
    /// Replay the elimination proof of 3L(y) - L(b) = 5π²/18
    ProveKanade {
        /// Drop a relation (i..vii or a reflection label) before elimination
        #[arg(long)]
        omit: Vec<String>,
    },
    /// Scan a family of elements for two-term identities
    Search {
        /// Base value s as an expression
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 99, value_parser = clap::value_parser!(u32).range(1..=1000))]
        cmax: u32,
        #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u32).range(30..))]
        detect_digits: u32,
        /// Defaults to twice the detect digits
        #[arg(long)]
        confirm_digits: Option<u32>,
        /// Random bases for the generic check
        #[arg(long, default_value_t = 3)]
        generic_bases: usize,
    },
    /// Rank-2 Nahm systems
    Nahm {
        #[command(subcommand)]
        action: NahmAction,
    },
    /// Compare sum and product sides of the mod-9 identities
    Qseries {
        /// 1, 2 or 3; all three when omitted
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        identity: Option<u8>,
        /// Use the product residues exactly as printed for identity 1
        #[arg(long)]
        printed: bool,
    },
    /// Exact polynomial identities behind the modified systems
    Polyid,
    /// Print the registry as JSON
    Registry,
}

#[derive(Subcommand, Debug)]
enum NahmAction {
    /// Solve one system given as "a,b,d"
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a1: String,
    },
    /// Reproduce the printed table of matrices
    Table,
}

impl Global {
    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            digits: self.digits,
            qmax: self.qmax,
            report: match self.report {
                Format::Text => "text".into(),
                Format::Json => "json".into(),
            },
            registry: self.registry.as_ref().map(|p| p.display().to_string()),
            seed_grid: self.seed_grid as usize,
            order: self.order as usize,
            seed: self.seed,
        }
    }
}

/// A failure that maps to exit code 2.
pub struct UsageError(pub String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let g = cli.global.clone();
    let result: Result<Report, UsageError> = match cli.command {
        Command::Verify { ids, all } => commands::verify(&g, &ids, all),
        Command::ProveKanade { omit } => commands::prove_kanade(&g, &omit),
        Command::Search {
            base,
            cmax,
            detect_digits,
            confirm_digits,
            generic_bases,
        } => commands::search(&g, &base, cmax, detect_digits, confirm_digits, generic_bases),
        Command::Nahm { action } => match action {
            NahmAction::Solve { matrix, a1 } => commands::nahm_solve(&g, &matrix, &a1),
            NahmAction::Table => commands::nahm_table(&g),
        },
        Command::Qseries { identity, printed } => commands::qseries(&g, identity, printed),
        Command::Polyid => commands::polyid(&g),
        Command::Registry => match commands::registry_json(&g) {
            Ok(s) => {
                print!("{s}");
                return ExitCode::SUCCESS;
            }
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(mut rep) => {
            rep.finish();
            rep.wall_ms = start.elapsed().as_millis() as u64;
            match g.report {
                Format::Json => print!("{}", rep.to_json()),
                Format::Text => print!("{}", rep.to_text()),
            }
            ExitCode::from(rep.exit_code() as u8)
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
