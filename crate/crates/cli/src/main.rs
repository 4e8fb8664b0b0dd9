//! `subdivlab` command-line front end.

mod commands;
mod corpus_cmd;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Analysis(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Analysis(_) => 2,
        }
    }
}

impl From<subdivlab::Error> for CliError {
    fn from(e: subdivlab::Error) -> Self {
        CliError::Analysis(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "subdivlab", version, about = "Analysis and evaluation of vector subdivision schemes with matrix masks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sum rules, matching filter, spectra, smoothness and classification of a mask.
    Analyze {
        mask: PathBuf,
        /// Order used for the spectral condition and the classification
        /// (default: sum rule order minus one).
        #[arg(long)]
        order: Option<usize>,
        /// Levels used by the smoothness estimator.
        #[arg(long, default_value_t = 18)]
        levels: u32,
    },
    /// Exact samples of the limit function (or its derivative) on a dyadic grid, as CSV.
    Subdivide {
        mask: PathBuf,
        #[arg(long, default_value_t = 0)]
        deriv: usize,
        #[arg(long)]
        level: u32,
        /// Initial data `w0` (default: delta times the identity).
        #[arg(long)]
        initial: Option<PathBuf>,
        /// Output window `[-K, K]` (default: the mask support).
        #[arg(long)]
        window: Option<i64>,
        /// Evaluate even when the derivative order exceeds the guaranteed smoothness.
        #[arg(long)]
        force: bool,
    },
    /// Error curve `E_u(n)` of a test vector, as CSV with a slope summary.
    Rates {
        mask: PathBuf,
        #[arg(long)]
        u: PathBuf,
        #[arg(long, default_value_t = 10)]
        levels: u32,
        #[arg(long, default_value_t = 5)]
        tail: usize,
        /// Derivative order overriding the leading degree.
        #[arg(long)]
        deriv: Option<usize>,
        /// Cap on the leading degree (default: from the smoothness bracket).
        #[arg(long)]
        m: Option<usize>,
    },
    /// Masks on a support window satisfying sum rules for a given filter.
    Design(DesignArgs),
    /// Worked example corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Args, Debug)]
struct DesignArgs {
    /// Support window `lo,hi`.
    #[arg(long, allow_hyphen_values = true)]
    support: String,
    #[arg(long)]
    r: usize,
    /// Sum rule order.
    #[arg(long)]
    order: usize,
    /// Filter jet file `{"order": k, "coeffs": [[...], ...]}`.
    #[arg(long)]
    filter: PathBuf,
    /// Symmetry `centers:signs`, e.g. `0:1,-1` or `0,1/2:1,1`.
    #[arg(long, allow_hyphen_values = true)]
    symmetry: Option<String>,
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    /// Reproduce the recorded properties of an example.
    Run {
        id: String,
        /// Parameter overrides `t1=1/128,t2=-7/256`.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        /// Directory for error-curve CSV files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print an example as JSON.
    Export {
        id: String,
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        /// Only the mask file.
        #[arg(long)]
        mask_only: bool,
    },
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Analyze { mask, order, levels } => commands::analyze(&mask, order, levels),
        Command::Subdivide { mask, deriv, level, initial, window, force } => {
            commands::subdivide(&mask, deriv, level, initial.as_deref(), window, force)
        }
        Command::Rates { mask, u, levels, tail, deriv, m } => commands::rates(&mask, &u, levels, tail, deriv, m),
        Command::Design(d) => commands::design(&d.support, d.r, d.order, &d.filter, d.symmetry.as_deref()),
        Command::Corpus { action } => match action {
            CorpusAction::Run { id, params, out } => corpus_cmd::run(&id, params.as_deref(), out.as_deref()),
            CorpusAction::Export { id, params, mask_only } => corpus_cmd::export(&id, params.as_deref(), mask_only),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
