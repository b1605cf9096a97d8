use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod error;
mod files;

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "frobasis", version, about = "Check, build and take apart basis-copying Frobenius algebras")]
pub struct Cli {
    /// Absolute and relative tolerance for all residual checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for the random generic element used in extraction.
    #[arg(long, global = true, default_value_t = frobasis::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Redraws allowed when the generic element has a degenerate spectrum.
    #[arg(long, global = true, default_value_t = frobasis::spectrum::MAX_RETRIES)]
    pub max_retries: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Comultiplication and counit only; reports the induced function.
    Comonoid,
    /// All four structure maps, plus the unitarity consequence.
    Full,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every axiom of an algebra file.
    Check { algebra: PathBuf },
    /// Build the algebra copying the basis in a basis file.
    FromBasis {
        basis: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover the copyable elements of an algebra as a basis file.
    Extract {
        algebra: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report which kind of basis an algebra copies.
    Classify { algebra: PathBuf },
    /// Check whether a matrix is a homomorphism between two algebras.
    Homcheck {
        map: PathBuf,
        domain: PathBuf,
        codomain: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Comonoid)]
        mode: Mode,
    },
    /// Apply the algebra's involution to an element.
    Conjugate {
        algebra: PathBuf,
        element: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Norms of the copyable elements, ascending.
    Normprofile { algebra: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

impl Cli {
    fn tolerance(&self) -> Result<frobasis::Tolerance64, CliError> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(CliError::Tolerance(self.tol));
        }
        frobasis::Tolerance64::new(self.tol, self.tol).map_err(|_| CliError::Tolerance(self.tol))
    }
}
