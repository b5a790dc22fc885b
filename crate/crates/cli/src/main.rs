use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use poissonkit_cli::{exit_code, ingest, run, Command, Options};

/// Exact verification of Poisson-geometric structures described in `.pg` documents.
#[derive(Debug, Parser)]
#[command(name = "poissonkit", version)]
struct Cli {
    /// One of check-lie, check-rmatrix, check-bialgebra, check-quasi, dualize, manin-extract,
    /// check-poisson, check-twisted, check-pn, check-pqn, check-pqn-brackets, check-dynamical,
    /// check-multiplicative, check-action, all.
    command: Command,
    /// Structure documents to check.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Seed for randomized sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random samples (group pairs, test functions).
    #[arg(long)]
    samples: Option<usize>,
    /// Also run the floating-point coth spot-check (numeric, non-certifying).
    #[arg(long)]
    numeric_dynamical: bool,
    /// Keep wall-clock timings in the output.
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let opts = Options {
        seed: cli.seed,
        samples: cli.samples,
        numeric_dynamical: cli.numeric_dynamical,
    };
    let mut worst = 0;
    let mut reports = Vec::new();
    for path in &cli.files {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(2);
            }
        };
        let doc = match ingest(&text) {
            Ok(d) => d,
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(2);
            }
        };
        let mut report = match run(cli.command, &doc, &opts) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(2);
            }
        };
        if !cli.timing {
            report.strip_timing();
        }
        worst = worst.max(exit_code(&report));
        let label = doc
            .name
            .clone()
            .unwrap_or_else(|| path.display().to_string());
        reports.push((label, report));
    }
    if cli.json {
        for (_, r) in &reports {
            println!("{}", r.to_json_pretty());
        }
    } else {
        for (label, r) in &reports {
            println!("== {label}");
            print!("{r}");
        }
    }
    ExitCode::from(worst as u8)
}
