//! Command-line entry point.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use folinv_cli::{
    cmd_analyze, cmd_check, cmd_intersect, cmd_reduce, render_check_table, report_to_json,
    CaseFile, CliError,
};

#[derive(Parser)]
#[command(
    name = "folinv",
    about = "Exact local invariants of singular plane foliations and their separatrix divisors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct CommonOpts {
    /// Case file path, or '-' for stdin
    case: String,
    /// Chi-number mode driving identity verdicts
    #[arg(long, value_parser = ["literal", "polar"])]
    mode: Option<String>,
    /// Seed for the deterministic generic-direction sampler
    #[arg(long)]
    seed: Option<u64>,
    /// Blow-up depth guard
    #[arg(long)]
    max_depth: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full invariant report as JSON
    Analyze {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Reduce the singularities and emit the tree (JSON, optionally DOT)
    Reduce {
        #[command(flatten)]
        common: CommonOpts,
        /// Write a Graphviz rendering of the tree to this path
        #[arg(long)]
        dot: Option<String>,
    },
    /// Intersection number of two plane curve germs
    Intersect { f: String, g: String },
    /// Verify the identity table; exit 0 iff all selected identities pass
    Check {
        #[command(flatten)]
        common: CommonOpts,
        /// Comma-separated identity ids, or "all"
        #[arg(long)]
        checks: Option<String>,
        /// Emit the full JSON outcome instead of the table
        #[arg(long)]
        json: bool,
    },
}

fn load_case(path: &str) -> Result<CaseFile, CliError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?
    };
    CaseFile::from_json(&text)
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { common } => {
            let case = load_case(&common.case)?;
            let opts = case.resolve_options(
                common.mode.as_deref(),
                common.seed,
                common.max_depth,
                None,
            )?;
            let report = cmd_analyze(&case, &opts)?;
            println!("{}", report_to_json(&report));
            Ok(())
        }
        Command::Reduce { common, dot } => {
            let case = load_case(&common.case)?;
            let opts = case.resolve_options(
                common.mode.as_deref(),
                common.seed,
                common.max_depth,
                None,
            )?;
            let (tree, dot_text) = cmd_reduce(&case, &opts)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&tree).expect("tree serializes")
            );
            if let Some(path) = dot {
                std::fs::write(&path, dot_text)
                    .map_err(|e| CliError::Input(format!("cannot write {path}: {e}")))?;
            }
            Ok(())
        }
        Command::Intersect { f, g } => {
            println!("{}", cmd_intersect(&f, &g)?);
            Ok(())
        }
        Command::Check {
            common,
            checks,
            json,
        } => {
            let case = load_case(&common.case)?;
            let opts = case.resolve_options(
                common.mode.as_deref(),
                common.seed,
                common.max_depth,
                checks.as_deref(),
            )?;
            let outcome = cmd_check(&case, &opts)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome).expect("outcome serializes")
                );
            } else {
                print!("{}", render_check_table(&outcome, opts.chi_mode));
            }
            if outcome.passed {
                Ok(())
            } else {
                Err(CliError::IdentityFailure(outcome.failed.join(", ")))
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
