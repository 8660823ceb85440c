//! `prenorm` — command-line front end for the kernel/cokernel workbench.
//!
//! Two subcommand families:
//!
//! * `demo list` / `demo run <name>` replay the named example and
//!   counterexample scenarios and check them against frozen expectations.
//! * `suite run` executes the law suites over a backend catalog, either from
//!   flags or from a versioned JSON scenario file.
//!
//! Exit codes: 0 when every expectation is met, 1 when a law or demo check
//! comes out differently than declared, 2 for usage and configuration errors.

mod demos;
mod report;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use prenorm::engine::RunMode;
use suite::{SuiteConfig, SCHEMA_VERSION};

#[derive(Parser)]
#[command(
    name = "prenorm",
    version,
    about = "Workbench for kernel/cokernel calculus over finite pointed and relative categories",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Replay a packaged example or counterexample scenario
    Demo {
        #[command(subcommand)]
        cmd: DemoCmd,
    },
    /// Run law suites over a backend catalog
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
}

#[derive(Subcommand)]
enum DemoCmd {
    /// List every registered demo with a one-line summary
    List,
    /// Run one demo and compare observations against its frozen expectations
    Run {
        /// Demo name, as printed by `demo list`
        name: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the full report to this file (stdout gets a one-line summary)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Execute the configured law suite
    Run(SuiteArgs),
}

#[derive(Args)]
struct SuiteArgs {
    /// Backend catalog, e.g. fin-cmon, fin-rel-equiv, slice(fin-cmon)
    #[arg(long, required_unless_present = "config", conflicts_with = "config")]
    backend: Option<String>,
    /// Comma-separated law ids (default: every law)
    #[arg(long, value_delimiter = ',', conflicts_with = "config")]
    laws: Vec<String>,
    /// Case-walk order
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive, conflicts_with = "config")]
    mode: ModeArg,
    /// Seed for sampled mode (required there, rejected elsewhere)
    #[arg(long, conflicts_with = "config")]
    seed: Option<u64>,
    /// Drop catalog objects with more elements than this before running
    #[arg(long, conflicts_with = "config")]
    max_order: Option<usize>,
    /// Comma-separated law ids expected to fail; the run meets expectations
    /// iff at least one of them fails and nothing else does
    #[arg(long, value_delimiter = ',', conflicts_with = "config")]
    expect_fail: Vec<String>,
    /// Load the whole scenario from a versioned JSON file instead of flags
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the full report to this file (stdout gets a one-line summary)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Demo { cmd: DemoCmd::List } => {
            for d in demos::registry() {
                println!("{:<36} {}", d.name, d.summary);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Demo {
            cmd: DemoCmd::Run { name, format, out },
        } => {
            let Some(demo) = demos::find(&name) else {
                eprintln!("unknown demo {name:?}; registered demos:");
                for d in demos::registry() {
                    eprintln!("  {:<36} {}", d.name, d.summary);
                }
                return Ok(ExitCode::from(2));
            };
            let rep = demo.run().map_err(|e| e.to_string())?;
            let rendered = match format {
                Format::Text => rep.to_text(),
                Format::Json => to_json(&rep)?,
            };
            emit(&rendered, &out)?;
            if out.is_some() {
                println!(
                    "{}: {}",
                    rep.demo,
                    if rep.ok { "expectations met" } else { "MISMATCH" }
                );
            }
            Ok(ExitCode::from(u8::from(!rep.ok)))
        }
        Cmd::Suite {
            cmd: SuiteCmd::Run(args),
        } => {
            let cfg = build_config(&args)?;
            let outcome = suite::execute(&cfg)?;
            let rendered = match args.format {
                Format::Text => suite::suite_text(&outcome.report),
                Format::Json => to_json(&outcome.report)?,
            };
            emit(&rendered, &args.out)?;
            if args.out.is_some() {
                println!("{}", suite::suite_summary(&outcome.report));
            }
            Ok(ExitCode::from(outcome.exit))
        }
    }
}

/// Assemble the scenario either from a JSON file or from the flags.
fn build_config(args: &SuiteArgs) -> Result<SuiteConfig, String> {
    if let Some(path) = &args.config {
        let raw = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let cfg: SuiteConfig = serde_json::from_str(&raw)
            .map_err(|e| format!("invalid scenario file {}: {e}", path.display()))?;
        return Ok(cfg);
    }
    let backend = args
        .backend
        .clone()
        .ok_or_else(|| "either --backend or --config is required".to_string())?;
    let mode = match (args.mode, args.seed) {
        (ModeArg::Exhaustive, None) => RunMode::Exhaustive,
        (ModeArg::Exhaustive, Some(_)) => {
            return Err("--seed only applies to --mode sampled".into());
        }
        (ModeArg::Sampled, Some(seed)) => RunMode::Sampled { seed },
        (ModeArg::Sampled, None) => {
            return Err("sampled mode requires --seed for reproducibility".into());
        }
    };
    Ok(SuiteConfig {
        schema_version: SCHEMA_VERSION,
        backend,
        laws: args.laws.clone(),
        mode,
        max_order: args.max_order,
        expect_fail: args.expect_fail.clone(),
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| format!("cannot serialize report: {e}"))
}

fn emit(rendered: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}
