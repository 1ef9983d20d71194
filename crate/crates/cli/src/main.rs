mod commands;
mod config;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Perron-Frobenius data, trace bounds and abelian classification for spider graphs.
#[derive(Debug, Parser)]
#[command(name = "spiders", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// TOML file with any of the keys below.
    #[arg(long, global = true, env = "SPIDERS_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, env = "SPIDERS_PRECISION_BITS")]
    pub precision_bits: Option<u32>,
    #[arg(long, global = true, env = "SPIDERS_CONDUCTOR_BOUND")]
    pub conductor_bound: Option<u32>,
    #[arg(long, global = true, env = "SPIDERS_PRIME_BUDGET")]
    pub prime_budget: Option<u32>,
    #[arg(long, global = true, env = "SPIDERS_SUBDIVISION_DEPTH")]
    pub subdivision_depth: Option<u32>,
    /// Worker threads for classification; 0 picks one per core.
    #[arg(long, global = true, env = "SPIDERS_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long, global = true, env = "SPIDERS_JOURNAL")]
    pub journal: Option<PathBuf>,
    /// Directory holding `cyclo_tables.json` to audit against the built-in tables.
    #[arg(long, global = true, env = "SPIDERS_DATA_DIR")]
    pub data_dir: Option<PathBuf>,
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomial of a spider (`star:3,3,3`, `morrison:a,b`, `graph:...`).
    Charpoly { spider: String },
    /// Perron-Frobenius summary of a spider.
    Pf { spider: String },
    /// Normalized trace `M` of the roots of a polynomial.
    Mvalue { poly: String },
    /// Minimal polynomial of `4cos²(2π/N)`.
    Chpoly { n: u64 },
    /// Enclosure of `B(x)`.
    Bfunc { x: String },
    /// Nonnegativity certificate for `B` on `[0, 4]`.
    Bcert {
        #[command(subcommand)]
        action: BcertAction,
    },
    /// Whether the field generated by a root of the polynomial is abelian.
    Abelian { poly: String },
    /// Run a classification engine.
    Classify {
        #[command(subcommand)]
        target: ClassifyTarget,
    },
    /// Salem check and abelian type.
    Salem { poly: String },
    /// Bound tables for 3-spiders, or an audit of the cyclotomic tables.
    Table { which: TableKind },
}

#[derive(Debug, Subcommand)]
pub enum BcertAction {
    Emit {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ClassifyTarget {
    Morrison {
        /// Brute force on `a ≤ b ≤ N`.
        #[arg(long, default_value_t = 10)]
        brute_max: u32,
        /// Bound path on `lo ≤ a ≤ b ≤ hi`, written `lo,hi` (default 56,60).
        #[arg(long, value_delimiter = ',')]
        corner: Option<Vec<u32>>,
    },
    Threespider {
        /// Only `c ≤ N`; without it every triple inside the certified caps is run.
        #[arg(long)]
        desk: Option<u32>,
        /// Continue from the journal.
        #[arg(long)]
        resume: bool,
        /// Also write the records as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Abound,
    Bbound,
    Cbound,
    Cyclo,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli) {
        Ok(commands::Outcome::Done) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Unknown) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
