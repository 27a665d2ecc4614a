//! Batch verification CLI: runs experiment configs and prints or writes
//! machine-readable reports.
//!
//! Exit codes: 0 all cases pass, 1 tolerance failures, 2 config/usage error,
//! 3 runtime evaluation error.

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use formdual::harness::{execute, list_suites, ExperimentConfig};

#[derive(Parser)]
#[command(
    name = "formdual",
    about = "Boundary-integral reproduction and duality-pairing verification harness",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ListFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config and emit a report.
    Run {
        /// Path to the JSON config.
        config: String,
        /// Override the config seed (randomized suites are deterministic
        /// given the seed).
        #[arg(long)]
        seed: Option<u64>,
        /// Report path; defaults to the config's `output`, then stdout.
        #[arg(long)]
        out: Option<String>,
        /// Report format.
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// List the built-in verification suites.
    ListSuites {
        #[arg(long, value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
    },
}

const EXIT_FAILURES: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

fn main() -> ExitCode {
    // clap exits with code 2 on usage errors by default.
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            seed,
            out,
            format,
        } => run(&config, seed, out.as_deref(), format),
        Command::ListSuites { format } => {
            list(format);
            ExitCode::SUCCESS
        }
    }
}

fn list(format: ListFormat) {
    match format {
        ListFormat::Text => {
            for s in list_suites() {
                println!("{:<24} {}", s.name, s.description);
            }
        }
        ListFormat::Json => {
            let entries: Vec<serde_json::Value> = list_suites()
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "name": s.name,
                        "description": s.description,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&entries).expect("suite list serialization")
            );
        }
    }
}

fn run(config_path: &str, seed: Option<u64>, out: Option<&str>, format: ReportFormat) -> ExitCode {
    let text = match std::fs::read_to_string(config_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read config '{config_path}': {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let config = match ExperimentConfig::from_json(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let seed = seed.unwrap_or(config.seed);

    let started = Instant::now();
    let report = match execute(&config, seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("runtime error: {e}");
            return ExitCode::from(EXIT_RUNTIME);
        }
    };
    // Timing goes to stderr only; report files stay byte-identical across
    // runs with the same config and seed.
    for case in &report.cases {
        eprintln!("case {:<32} {}", case.name, case.status);
    }
    eprintln!(
        "{} cases, {} passed, {} failed in {:.1} ms",
        report.summary.total,
        report.summary.passed,
        report.summary.failed,
        started.elapsed().as_secs_f64() * 1e3
    );

    let rendered = match format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Csv => report.to_csv(),
    };
    let target = out.map(str::to_owned).or_else(|| config.output.clone());
    match target {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, rendered.as_bytes()) {
                eprintln!("error: cannot write report '{path}': {e}");
                return ExitCode::from(EXIT_RUNTIME);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(rendered.as_bytes()).is_err() {
                return ExitCode::from(EXIT_RUNTIME);
            }
        }
    }

    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURES)
    }
}
