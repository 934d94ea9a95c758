use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod io;

/// Random planar triangulations by necklace growth, their conformal
/// flattening and the supported-point diagnostics.
#[derive(Parser, Debug)]
#[command(name = "rpm-lab", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Output file (a directory for `verify`); standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Field separator of tabular output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Grow a triangulation from a word.
    Gen {
        /// Word over B, b, R, r; builds T_+(W), or T_k(W) with --root.
        #[arg(
            long,
            conflicts_with = "random_word",
            required_unless_present = "random_word"
        )]
        word: Option<String>,
        /// Uniform word of this length with a uniform root.
        #[arg(long, value_name = "N")]
        random_word: Option<usize>,
        /// Root index k in 1..=|W| for --word.
        #[arg(long, requires = "word")]
        root: Option<usize>,
    },
    /// Flatten a disc triangulation and print the normalized layout.
    Flatten {
        /// Triangulation file (standard input when absent).
        input: Option<PathBuf>,
    },
    /// Draw a layout (or a triangulation, flattened first) as SVG.
    Render {
        /// Layout or triangulation file (standard input when absent).
        input: Option<PathBuf>,
        /// Triangulation the layout was computed from, when the input is a
        /// layout.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long)]
        half_flowers: bool,
        /// Only draw faces meeting the disc of this radius about the root.
        #[arg(long)]
        window: Option<f64>,
        /// Picture size in pixels.
        #[arg(long, default_value_t = 800.0)]
        size: f64,
    },
    /// Print the normalized face-center point set.
    Embed {
        /// Layout or triangulation file (standard input when absent).
        input: Option<PathBuf>,
    },
    /// Supported fraction over a grid of delta and s.
    Supported {
        /// Point file (standard input when absent).
        input: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.25, 0.5])]
        delta: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = (1..=32).map(|i| 2.0 * i as f64).collect::<Vec<f64>>())]
        s_grid: Vec<f64>,
    },
    /// Effective resistance from the root face to dual distance r.
    Resist {
        /// Triangulation file (standard input when absent).
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        rmax: usize,
    },
    /// Run one of the Monte-Carlo or exhaustive checks.
    Verify {
        #[arg(long, value_enum)]
        lemma: Lemma,
        /// Word length of the sampled maps.
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        /// Word lengths for the size sweeps.
        #[arg(long, value_delimiter = ',', default_values_t = [100, 1_000, 10_000])]
        ns: Vec<usize>,
        /// Largest word length enumerated exhaustively (eq12).
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Random pairs after the enumeration (eq12).
        #[arg(long, default_value_t = 1_000)]
        random_pairs: usize,
        /// Longest random word (eq12).
        #[arg(long, default_value_t = 50)]
        random_len: usize,
        /// Ball radius (3.2).
        #[arg(long, default_value_t = 1)]
        radius: usize,
        /// Truncation length of the limit sample (3.2).
        #[arg(long, default_value_t = 10_000)]
        m: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    #[value(name = "3.4")]
    Degree,
    #[value(name = "3.5")]
    Boundary,
    #[value(name = "3.6")]
    RootDistance,
    #[value(name = "3.2")]
    Local,
    #[value(name = "eq12")]
    Identity,
}

/// How a run ended badly; each maps to its own exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Verification(String),
    Internal(anyhow::Error),
}

impl Failure {
    fn status(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(e) => eprintln!("error: {e:#}"),
                Failure::Verification(msg) => eprintln!("verification failed: {msg}"),
                Failure::Internal(e) => eprintln!("internal error: {e:#}"),
            }
            ExitCode::from(f.status())
        }
    }
}
