//! `polycompat` command-line front end.
//!
//! Exit status: 0 for a member, certificate or passing check; 1 for a non-member,
//! undecided or infeasible result; 2 for usage and data errors.

mod commands;
mod report;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use crate::report::{Report, Verdict};

#[derive(Parser, Debug)]
#[command(name = "polycompat", version, about = "Polytope compatibility of Hermitian matrix tuples")]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a model polytope with both vertex and facet descriptions.
    Build(commands::BuildArgs),
    /// Decide membership of a tuple in P_max or P_min.
    Membership(commands::MembershipArgs),
    /// Compute inclusion constants.
    Inclusion(commands::InclusionArgs),
    /// Run a built-in reproducibility check.
    VerifyPaper(commands::VerifyArgs),
    /// Print a built-in fixture as JSON.
    Fixture(commands::FixtureArgs),
}

fn run(cli: &Cli) -> Result<Verdict> {
    let mut report = Report::new(std::env::args().collect());
    let (body, verdict, summary) = match &cli.command {
        Command::Build(a) => commands::build(a, &mut report),
        Command::Membership(a) => commands::membership(a, &mut report),
        Command::Inclusion(a) => commands::inclusion(a, &mut report),
        Command::VerifyPaper(a) => commands::verify_paper(a, &mut report),
        Command::Fixture(a) => commands::fixture(a, &mut report),
    }?;
    let text = serde_json::to_string_pretty(&report.finish(body))?;
    println!("{text}");
    if let Some(path) = &cli.out {
        std::fs::write(path, format!("{text}\n")).with_context(|| format!("cannot write {}", path.display()))?;
    }
    eprintln!("{summary}");
    Ok(verdict)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(verdict) => ExitCode::from(verdict.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(Verdict::Rejected.exit_code() as u8)
        }
    }
}
