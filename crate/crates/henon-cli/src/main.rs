//! `henon`: the spectral and bifurcation toolkit on the command line.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical failure, 1 i/o
//! error. Domain errors print a single JSON object to stderr.

mod commands;
mod report;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "henon",
    version,
    about = "Spectral and bifurcation structure of the Hénon equation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output here instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format; defaults to json (morse and diagram default to csv)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for parameter sweeps; defaults to all cores
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Relative tolerance of the embedded checks; the default depends on
    /// the command, and verify uses a curated tolerance per row
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// First eigenvalues of the mode-k linearizations vs the closed forms
    Spectrum(commands::SpectrumArgs),
    /// Morse index and kernel dimension along an alpha grid
    Morse(commands::MorseArgs),
    /// Bifurcation values alpha_k on truncated balls vs the exact 2(k-1)
    Bifurcate(commands::BifurcateArgs),
    /// Bifurcation diagram rows over modes and truncation radii
    Diagram(commands::DiagramArgs),
    /// Bundled verification suite across all solvers
    Verify(commands::VerifyArgs),
    /// Weighted Sobolev quotients vs the sharp constant
    Sobolev(commands::SobolevArgs),
    /// Dirichlet problem on the unit ball by scaled shooting
    Bvp(commands::BvpArgs),
    /// Integral identities of the closed forms by quadrature
    Identities(commands::IdentitiesArgs),
}

impl Command {
    fn default_format(&self) -> Format {
        match self {
            Command::Morse(_) | Command::Diagram(_) => Format::Csv,
            _ => Format::Json,
        }
    }
}

/// What went wrong, bucketed by exit code.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Numerical(String),
    Io(String),
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Validation(_) => "validation",
            Failure::Numerical(_) => "numerical",
            Failure::Io(_) => "io",
        }
    }

    fn exit(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Numerical(_) => 3,
            Failure::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Numerical(m) | Failure::Io(m) => m,
        }
    }
}

impl From<henon::Error> for Failure {
    fn from(err: henon::Error) -> Self {
        use henon::Error as E;
        let msg = err.to_string();
        match err {
            E::DimensionTooSmall(_)
            | E::NegativeAlpha(_)
            | E::MultiplicityRange(_)
            | E::InvalidParameter(_)
            | E::GridTooCoarse { .. }
            | E::ExponentRange { .. }
            | E::WindowTooNarrow { .. }
            | E::ZeroFunction => Failure::Validation(msg),
            _ => Failure::Numerical(msg),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(fail) => {
            let payload = serde_json::json!({
                "error": {"kind": fail.kind(), "exit": fail.exit(), "message": fail.message()}
            });
            eprintln!("{payload}");
            ExitCode::from(fail.exit())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Failure::Validation("threads must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Validation(format!("thread pool: {e}")))?;
    }
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::Validation(format!("tol must be positive and finite, got {t}")));
        }
    }
    let tol = |default: f64| cli.tol.unwrap_or(default);
    let report = match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a, tol(1e-3))?,
        Command::Morse(a) => commands::morse(a)?,
        Command::Bifurcate(a) => commands::bifurcate(a, tol(2e-2))?,
        Command::Diagram(a) => commands::diagram(a)?,
        Command::Verify(a) => commands::verify(a)?,
        Command::Sobolev(a) => commands::sobolev(a, tol(1e-4))?,
        Command::Bvp(a) => commands::bvp(a, tol(5e-3))?,
        Command::Identities(a) => commands::identities(a, tol(1e-4))?,
    };
    let text = match cli.format.unwrap_or_else(|| cli.command.default_format()) {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    write_output(cli.out.as_deref(), &text)?;
    // the verification suite reports failure through the exit code as well
    if matches!(cli.command, Command::Verify(_)) {
        let failed = report.checks.iter().filter(|c| !c.pass).count();
        if failed > 0 {
            return Err(Failure::Numerical(format!(
                "{failed} of {} verification checks failed",
                report.checks.len()
            )));
        }
    }
    Ok(())
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("writing {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("writing stdout: {e}"))),
    }
}
