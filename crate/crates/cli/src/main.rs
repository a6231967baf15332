//! `ybtwist`: checks, isotopes, twisted relations, Hilbert functions and
//! censuses for finite involutive biracks described in JSON files.
//!
//! Exit status: 0 when every enforced check passes, 1 when a property or
//! hypothesis fails, 2 when the input or arguments are malformed.

mod commands;
mod input;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Parser, Subcommand};
use ybtwist_core::algebra::DEFAULT_MAX_DEGREE;
use ybtwist_core::{HilbertOptions, TwistLevel};

use commands::{EnumerateFlags, Outcome, Settings, Stop, OPTIONAL_CHECKS};
use input::{InputDocument, Malformed};

#[derive(Parser)]
#[command(
    name = "ybtwist",
    version,
    about = "Finite involutive biracks, their isotopes and Yang-Baxter algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Highest degree of Hilbert tables.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: usize,

    /// Matrix size budget for Hilbert computations.
    #[arg(long, global = true, default_value_t = HilbertOptions::default().max_entries)]
    max_entries: usize,

    /// Validate twist systems with the automorphism and translation
    /// conditions (default).
    #[arg(long, global = true, conflicts_with = "weak")]
    strong: bool,

    /// Validate twist systems only for commuting and degree preservation.
    #[arg(long, global = true)]
    weak: bool,

    /// Write the isotope document (for `isotope`) or the report (otherwise)
    /// to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Report every structural verdict for a document.
    Check {
        file: PathBuf,
        /// Informational checks that should also decide the exit status.
        #[arg(long, value_delimiter = ',', value_parser = PossibleValuesParser::new(OPTIONAL_CHECKS))]
        require: Vec<String>,
    },
    /// Build the φ-isotope of a graded birack along `phi`.
    Isotope { file: PathBuf },
    /// Print the defining relations and their twisted form.
    Twist { file: PathBuf },
    /// Graded dimensions of the Yang-Baxter algebra.
    Hilbert { file: PathBuf },
    /// Certify that the isotope presents the Zhang twist.
    Theorem1 { file: PathBuf },
    /// Census of involutive biracks of size n (at most 5).
    Enumerate {
        n: usize,
        /// One representative per isomorphism class.
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long)]
        distributive_only: bool,
        /// Certify every strong twist system of every lri solution.
        #[arg(long)]
        with_twists: bool,
        /// Include the tables of every solution.
        #[arg(long)]
        tables: bool,
    },
}

fn load(path: &Path) -> Result<input::Structure, Malformed> {
    InputDocument::read(path)?
        .validate()
        .map_err(|m| Malformed(format!("{}: {m}", path.display())))
}

fn run(cli: &Cli) -> Result<Outcome, Stop> {
    let mut settings = Settings {
        max_degree: cli.max_degree,
        max_entries: cli.max_entries,
        level: if cli.weak {
            TwistLevel::Weak
        } else {
            TwistLevel::Strong
        },
        ..Settings::default()
    };
    match &cli.command {
        Command::Check { file, require } => {
            settings.require = require.clone();
            Ok(commands::check(&load(file)?, &settings))
        }
        Command::Isotope { file } => commands::isotope(&load(file)?, &settings),
        Command::Twist { file } => commands::twist(&load(file)?, &settings),
        Command::Hilbert { file } => commands::hilbert_cmd(&load(file)?, &settings),
        Command::Theorem1 { file } => commands::theorem1(&load(file)?, &settings),
        Command::Enumerate {
            n,
            up_to_iso,
            distributive_only,
            with_twists,
            tables,
        } => commands::enumerate(
            *n,
            &EnumerateFlags {
                up_to_iso: *up_to_iso,
                distributive_only: *distributive_only,
                with_twists: *with_twists,
                tables: *tables,
            },
        ),
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn emit(cli: &Cli, outcome: Outcome) -> Result<(), Malformed> {
    for line in &outcome.summary {
        eprintln!("{line}");
    }
    let report = pretty(&outcome.report);
    match (&cli.output, &outcome.document) {
        (Some(path), Some(doc)) => {
            write(
                path,
                &serde_json::to_string(doc).expect("documents serialize"),
            )?;
            println!("{report}");
        }
        (Some(path), None) => write(path, &report)?,
        (None, _) => println!("{report}"),
    }
    Ok(())
}

fn write(path: &Path, text: &str) -> Result<(), Malformed> {
    fs::write(path, format!("{text}\n")).map_err(|e| Malformed(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Stop::Failed(o)) => *o,
        Err(Stop::Malformed(m)) => {
            eprintln!("error: {m}");
            println!(
                "{}",
                pretty(&serde_json::json!({ "passed": false, "malformed": m.0 }))
            );
            return ExitCode::from(2);
        }
    };
    let passed = outcome.passed;
    if let Err(m) = emit(&cli, outcome) {
        eprintln!("error: {m}");
        return ExitCode::from(2);
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
