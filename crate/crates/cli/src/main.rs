//! `wilson`: construct designs, analyze them, and run the verification
//! suites. Reports go to stdout as JSON, a short summary to stderr.

mod analyze;
mod construct;
mod input;
mod report;
mod scan;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "wilson",
    version,
    about = "Pairwise balanced designs and their Wilson monoids"
)]
struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    parallel: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a design from a named family and write it as a `.pbd` file.
    Construct(construct::ConstructArgs),
    /// Report on a design.
    Analyze(analyze::AnalyzeArgs),
    /// Run a verification suite.
    Verify(verify::VerifyArgs),
    /// Research queries over supplied Steiner triple systems.
    Scan(scan::ScanArgs),
}

/// The command line minus `--parallel`, which must not affect reports.
fn echo_args() -> Vec<String> {
    let mut out = Vec::new();
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        if a == "--parallel" {
            args.next();
        } else if !a.starts_with("--parallel=") {
            out.push(a);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.parallel {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match &cli.command {
        Command::Construct(a) => construct::run(a),
        Command::Analyze(a) => analyze::run(a, cli.seed),
        Command::Verify(a) => verify::run(a, cli.seed),
        Command::Scan(a) => scan::run(a, cli.seed),
    };
    match outcome {
        Ok(o) => {
            let report = o.to_json(&echo_args());
            let rendered = serde_json::to_string_pretty(&report).expect("reports serialize");
            match &cli.command {
                // without --out the design itself occupies stdout
                Command::Construct(a) if a.out.is_none() => eprintln!("{rendered}"),
                _ => println!("{rendered}"),
            }
            for line in &o.summary {
                eprintln!("{line}");
            }
            if o.passed == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
