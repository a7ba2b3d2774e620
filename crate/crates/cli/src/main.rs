use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use reflexive_cli::commands::{cmd_catalog_list, cmd_catalog_show, cmd_check, cmd_search, CheckOptions, EXIT_ERROR};
use reflexive_core::verifiers::Statement;

#[derive(Parser)]
#[command(name = "reflexive", version, about = "Exact checks of tensor, hom and double-dual statements over finitely generated rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the jobs of an instance file (or `demo:NAME`).
    Check {
        file: String,
        /// Truncation cap for tensor-algebra computations.
        #[arg(long, default_value_t = 3)]
        cap: usize,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Treat inconclusive verdicts as success.
        #[arg(long)]
        allow_inconclusive: bool,
        /// Number of worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Only run these statements (repeatable).
        #[arg(long = "only", value_parser = parse_statement)]
        only: Vec<Statement>,
        /// Print the JSON report instead of the summary.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate small rings and modules and classify every pair.
    Search {
        /// Bounds as key=value items (rank, orders, gens, relations,
        /// commutative, check-covered) or `commutative-only`.
        #[arg(long)]
        bounds: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Only print the summary line.
        #[arg(long)]
        quiet: bool,
    },
    /// Built-in rings, modules and demos.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show {
        name: String,
        /// Print as an instance file.
        #[arg(long)]
        instance: bool,
    },
}

fn parse_statement(s: &str) -> Result<Statement, String> {
    s.parse().map_err(|e: reflexive_core::verifiers::VerifyError| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let result = match cli.command {
        Command::Check { file, cap, out, allow_inconclusive, jobs, only, json } => {
            let opts = CheckOptions { cap, out, allow_inconclusive, jobs, only, json };
            cmd_check(&file, &opts, &mut stdout)
        }
        Command::Search { bounds, out, quiet } => cmd_search(&bounds, out.as_deref(), quiet, &mut stdout),
        Command::Catalog { action: CatalogAction::List } => cmd_catalog_list(&mut stdout),
        Command::Catalog { action: CatalogAction::Show { name, instance } } => cmd_catalog_show(&name, instance, &mut stdout),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
