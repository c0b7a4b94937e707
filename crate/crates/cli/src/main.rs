use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "qcluster", version, about = "Cluster seeds, quantum tori, quantum dilogarithms and the mutation intertwiner")]
pub struct Cli {
    /// Seed for the randomized test suites.
    #[arg(long, global = true, default_value_t = 7)]
    pub rng_seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Seed files: mutation and dualities.
    #[command(subcommand)]
    Seed(SeedCmd),
    /// Classical cluster coordinate transformations.
    #[command(subcommand)]
    Tori(ToriCmd),
    /// Quantum torus mutation and its verification suites.
    #[command(subcommand)]
    Qtorus(QtorusCmd),
    /// Quantum logarithm and dilogarithm.
    #[command(subcommand)]
    Qdilog(QdilogCmd),
    /// Heisenberg operators on a grid.
    #[command(subcommand)]
    Grid(GridCmd),
    /// The mutation intertwiner.
    #[command(subcommand)]
    Intertwine(IntertwineCmd),
}

#[derive(Args, Debug)]
pub struct SeedArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub k: String,
}

#[derive(Subcommand, Debug)]
pub enum SeedCmd {
    Mutate(SeedArgs),
    Dual {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_parser = ["chiral", "langlands"])]
        kind: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ToriCmd {
    XMutate(SeedArgs),
    AMutate(SeedArgs),
    /// Prints whether the word is trivial on the A-torus.
    CheckWord {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum QtorusCmd {
    Mutate(SeedArgs),
    Verify {
        #[arg(long, value_parser = ["duality", "involution", "bimodule"])]
        suite: String,
        /// Run on this seed only instead of the built-in and random seeds.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Number of random seeds added to the built-in ones.
        #[arg(long, default_value_t = 9)]
        random: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum QdilogCmd {
    Eval {
        #[arg(long, value_parser = ["phi", "Phi"])]
        which: String,
        /// `re,im`
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        hbar: f64,
    },
    Verify {
        #[arg(long, value_parser = ["default"], default_value = "default")]
        sweep: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GridOpts {
    #[arg(long)]
    pub seed: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    #[arg(long = "L", default_value_t = 12.0)]
    pub l: f64,
}

#[derive(Subcommand, Debug)]
pub enum GridCmd {
    Selftest(GridOpts),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    #[value(name = "paper-G")]
    PaperG,
    #[value(name = "paper-Ghat")]
    PaperGhat,
}

#[derive(Subcommand, Debug)]
pub enum IntertwineCmd {
    Verify {
        #[command(flatten)]
        grid: GridOpts,
        #[arg(long)]
        k: String,
        #[arg(long, value_enum, default_value = "paper-Ghat")]
        convention: ConventionArg,
        #[arg(long, default_value_t = 3)]
        gaussians: usize,
    },
    /// Runs both kernel conventions on the given seeds (default: the two
    /// rank-2 test seeds) and names the one that passes.
    Adjudicate {
        #[arg(long)]
        seed: Vec<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long = "L", default_value_t = 12.0)]
        l: f64,
    },
    /// Kernel values; `c` is the transform variable for paper-Ghat and
    /// `a_k` of the mutated seed for paper-G.
    Kernel {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        /// Comma-separated points.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Comma-separated coordinates other than `a_k`.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        a: String,
        #[arg(long, value_enum, default_value = "paper-Ghat")]
        convention: ConventionArg,
        /// Gaussian regulator for paper-G.
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            if let Err(e) = commands::emit(&cli, &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
