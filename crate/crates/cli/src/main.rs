//! `polyspiral`: center sequences, verification sweeps, motion fits,
//! distance tables and SVG figures for the spiral of regular polygons.
//!
//! Exit status: 0 when everything passes, 1 when a check or fit fails,
//! 2 on usage errors, 3 on I/O errors.

mod commands;
mod config;
mod format;
mod svg;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{parse_tolerance, parse_window, FamilyArg, Format, PartialConfig};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl From<polyspiral::Error> for CliError {
    fn from(e: polyspiral::Error) -> Self {
        match e {
            polyspiral::Error::InvalidArgument(msg) => CliError::Usage(msg),
            other => CliError::Failed(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "polyspiral", version, about = "The spiral of edge-to-edge regular polygons")]
struct Cli {
    /// TOML file with defaults for family, n_max, window, format and tolerances
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Default, Args)]
struct RunArgs {
    /// Polygon family: every side count, or odd side counts only
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Largest polygon index
    #[arg(long, value_name = "N")]
    n_max: Option<usize>,
    /// Fitting window, inclusive
    #[arg(long, value_name = "A:B", value_parser = parse_window_arg)]
    window: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Threshold override for a named check (repeatable)
    #[arg(long = "tolerance", value_name = "NAME=VALUE", value_parser = parse_tolerance)]
    tolerances: Vec<(String, f64)>,
    /// Output file (stdout when absent)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn parse_window_arg(s: &str) -> Result<String, String> {
    parse_window(s).map(|_| s.to_string())
}

impl RunArgs {
    fn partial(&self) -> PartialConfig {
        PartialConfig {
            family: self.family,
            n_max: self.n_max,
            window: self.window.clone(),
            format: self.format,
            tolerances: self.tolerances.iter().cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// Match the closed-form approximant (all polygons only)
    Approximant,
    /// Minimize the spread of distances to the spiral
    Spiral,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the polygon centers
    Centers(RunArgs),
    /// Run a verification suite (or `all`)
    Verify {
        /// lemma3, lemma4, em, powersums, lemma7, thm6, thm10 or all
        suite: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Fit the rigid motion onto the spiral
    Fit {
        #[arg(long, value_enum)]
        route: Option<Route>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Distances of the mapped centers to the spiral
    Distances {
        /// Add Richardson-extrapolated values (stride 2)
        #[arg(long)]
        extrapolate: bool,
        #[arg(long, value_enum)]
        route: Option<Route>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Draw the polygon chain as SVG
    Render {
        /// Motion file written by `fit --format json`; adds the spiral
        #[arg(long, value_name = "PATH")]
        motion: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let file = match &cli.config {
        Some(path) => PartialConfig::from_file(path)?,
        None => PartialConfig::default(),
    };
    match cli.command {
        Command::Centers(run) => commands::centers(&run.partial().over(file), run.out.as_deref()),
        Command::Verify { suite, run } => {
            commands::verify(&suite, &run.partial().over(file), run.out.as_deref())
        }
        Command::Fit { route, run } => commands::fit(route, &run.partial().over(file), run.out.as_deref()),
        Command::Distances {
            extrapolate,
            route,
            run,
        } => commands::distances(route, extrapolate, &run.partial().over(file), run.out.as_deref()),
        Command::Render { motion, run } => {
            commands::render(motion.as_deref(), &run.partial().over(file), run.out.as_deref())
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
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
