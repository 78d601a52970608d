//! `ellchow`: batch front end for the Chow ring verification pipelines.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on
//! usage errors and malformed input. Parallel stages honour
//! `RAYON_NUM_THREADS`.

mod commands;
mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use ellchow_core::relations::{GoldenTables, DEFAULT_MAX_DEGREE};

use commands::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ellchow", version, about = "Exact Chow ring computations for moduli of elliptic surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Push forward the principal-parts classes to get the two relations.
    #[command(group(ArgGroup::new("mode").required(true).args(["symbolic", "n"])))]
    Derive {
        /// Keep N as a formal parameter.
        #[arg(long)]
        symbolic: bool,
        #[arg(long)]
        n: Option<i64>,
    },
    /// Compare the symbolic relations with the reference tables.
    Golden {
        /// Reference tables (JSON, same layout as --dump-tables).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Print the embedded tables and exit.
        #[arg(long, conflicts_with = "input")]
        dump_tables: bool,
    },
    /// Graded dimensions of the quotient ring.
    Hilbert {
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
        n: i64,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
    },
    /// Check the pairing into the top degree is perfect.
    Gorenstein {
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
        n: i64,
    },
    /// Hilbert, Gorenstein and simplified-ideal checks over a range of N.
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
        from: i64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
        to: i64,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
    },
    /// Minimality and stability of Weierstrass data read from a JSON file.
    CheckWeierstrass {
        #[arg(long)]
        input: PathBuf,
    },
    /// Invariance of the kappa combinations and the test-curve identities.
    KappaVerify,
    /// Every check, one summary.
    Report,
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(command: Command) -> Result<Outcome> {
    Ok(match command {
        Command::Derive { symbolic, n } => commands::derive(if symbolic { None } else { n }),
        Command::Golden { dump_tables: true, .. } => commands::dump_tables(),
        Command::Golden { input, .. } => {
            let tables = match input {
                Some(path) => {
                    let text = read(&path)?;
                    serde_json::from_str::<GoldenTables>(&text).map_err(|e| {
                        anyhow::anyhow!(
                            "{}: line {}, column {}: {e}",
                            path.display(),
                            e.line(),
                            e.column()
                        )
                    })?
                }
                None => GoldenTables::default(),
            };
            commands::golden(&tables)
        }
        Command::Hilbert { n, max_degree } => commands::hilbert(n, max_degree),
        Command::Gorenstein { n } => commands::gorenstein(n)?,
        Command::Sweep { from, to, max_degree } => {
            if from > to {
                bail!("empty range: --from {from} > --to {to}");
            }
            commands::sweep(from, to, max_degree)
        }
        Command::CheckWeierstrass { input } => {
            let pairs = input::parse_pairs(&read(&input)?).with_context(|| input.display().to_string())?;
            commands::check_weierstrass(&pairs)
        }
        Command::KappaVerify => commands::kappa_verify(),
        Command::Report => commands::report(),
    })
}

fn emit(outcome: &Outcome, format: Format, output: Option<&PathBuf>) -> Result<()> {
    let body = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.json)?;
            s.push('\n');
            s
        }
        Format::Text => outcome.text.clone(),
    };
    match output {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|o| emit(&o, cli.format, cli.output.as_ref()).map(|_| o.pass));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
