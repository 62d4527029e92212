//! `qaut` — symbolic and numeric verifier for quantum automorphism groups
//! of finite spaces.
//!
//! Exit codes: 0 all gating checks pass; 1 usage, parse or configuration
//! error; 2 at least one check failed; 3 at least one check inconclusive and
//! none failed.

mod commands;
mod dsl;

use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use commands::{ConfigEcho, Entry, Opts, Report};
use dsl::DslSpec;
use qaut::Error;

#[derive(Parser)]
#[command(
    name = "qaut",
    version,
    about = "Symbolic and numeric verifier for quantum automorphism groups of finite spaces",
    after_help = "DSL example: qaut check-hopf --dsl 'space X(3); variant aut;'"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the Hopf axioms of the selected presentation.
    CheckHopf(CommonArgs),
    /// Verify the coaction axioms on the underlying finite space.
    CheckCoaction(CommonArgs),
    /// Enumerate the exact classical points (characters).
    ClassicalPoints(CommonArgs),
    /// Numeric representation demos with operator-norm residuals.
    RepDemo(CommonArgs),
    /// Seeded numeric checks of the Q-twist equivalence and the reindexed
    /// inverse identity.
    AppendixChecks(AppendixArgs),
    /// Verify the quantum subgroup embeddings.
    Embeddings(EmbeddingsArgs),
    /// Run every applicable suite for one presentation.
    FullReport(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Inline DSL, e.g. "space X(3); variant aut;".
    #[arg(long, value_name = "TEXT")]
    dsl: Option<String>,
    /// Path to a DSL file (alternative to --dsl).
    #[arg(long, value_name = "PATH", conflicts_with = "dsl")]
    input: Option<PathBuf>,
    /// Completion degree bound.
    #[arg(long, default_value_t = 8)]
    degree_cap: usize,
    /// Completion rule budget.
    #[arg(long, default_value_t = 20_000)]
    rule_cap: usize,
    /// Numeric tolerance for floating-point verdicts.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Seed determining all randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report to this path ("-" for stdout).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write completion trace events (JSON Lines) to this path.
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,
    /// Include wall-clock timing in the report (breaks byte-identical
    /// output).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct AppendixArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Matrix dimensions to sample.
    #[arg(long, value_delimiter = ',', default_values_t = vec![3usize, 4])]
    dims: Vec<usize>,
    /// Seeds per dimension.
    #[arg(long, default_value_t = 20)]
    count: u64,
}

#[derive(Args)]
struct EmbeddingsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Block sizes of the multimatrix target.
    #[arg(long, value_delimiter = ',', default_values_t = vec![1u16, 2])]
    blocks: Vec<u16>,
    /// Matrix size for the point and universal-unitary embeddings.
    #[arg(long, default_value_t = 2)]
    n: u16,
    /// Number of equal blocks for the point embedding.
    #[arg(long, default_value_t = 2)]
    m: u16,
}

impl CommonArgs {
    fn opts(&self) -> Opts {
        Opts {
            degree_cap: self.degree_cap,
            rule_cap: self.rule_cap,
            tol: self.tol,
            seed: self.seed,
        }
    }

    /// Resolves the DSL text from `--dsl` or `--input`.
    fn dsl_text(&self) -> Result<String, Error> {
        if let Some(text) = &self.dsl {
            return Ok(text.clone());
        }
        if let Some(path) = &self.input {
            return std::fs::read_to_string(path).map_err(|e| Error::Parse {
                line: 0,
                col: 0,
                msg: format!("cannot read {}: {e}", path.display()),
            });
        }
        Err(Error::Parse {
            line: 0,
            col: 0,
            msg: "this command needs a presentation: pass --dsl or --input".into(),
        })
    }

    fn spec(&self) -> Result<(String, DslSpec), Error> {
        let text = self.dsl_text()?;
        let spec = dsl::parse_dsl(&text)?;
        Ok((text, spec))
    }
}

fn run(cli: Cli) -> Result<Report, Error> {
    let started = Instant::now();
    let (common, name, entries, dsl_echo): (&CommonArgs, &str, Vec<Entry>, Option<String>) =
        match &cli.command {
            Command::CheckHopf(args) => {
                let (text, spec) = args.spec()?;
                maybe_trace(args, &spec)?;
                (args, "check-hopf", commands::check_hopf(&spec, &args.opts())?, Some(text))
            }
            Command::CheckCoaction(args) => {
                let (text, spec) = args.spec()?;
                maybe_trace(args, &spec)?;
                (
                    args,
                    "check-coaction",
                    commands::check_coaction(&spec, &args.opts())?,
                    Some(text),
                )
            }
            Command::ClassicalPoints(args) => {
                let (text, spec) = args.spec()?;
                maybe_trace(args, &spec)?;
                (args, "classical-points", commands::classical_points(&spec)?, Some(text))
            }
            Command::RepDemo(args) => {
                let (text, spec) = args.spec()?;
                maybe_trace(args, &spec)?;
                (args, "rep-demo", commands::rep_demo(&spec, &args.opts())?, Some(text))
            }
            Command::AppendixChecks(args) => {
                reject_trace(&args.common)?;
                (
                    &args.common,
                    "appendix-checks",
                    commands::appendix_checks(&args.common.opts(), &args.dims, args.count)?,
                    None,
                )
            }
            Command::Embeddings(args) => {
                reject_trace(&args.common)?;
                (
                    &args.common,
                    "embeddings",
                    commands::embeddings(&args.common.opts(), &args.blocks, args.n, args.m)?,
                    None,
                )
            }
            Command::FullReport(args) => {
                let (text, spec) = args.spec()?;
                maybe_trace(args, &spec)?;
                (args, "full-report", commands::full_report(&spec, &args.opts())?, Some(text))
            }
        };
    let opts = common.opts();
    let mut report = Report::new(
        ConfigEcho {
            command: name.to_string(),
            dsl: dsl_echo,
            degree_cap: opts.degree_cap,
            rule_cap: opts.rule_cap,
            tol: opts.tol,
            seed: opts.seed,
        },
        entries,
    );
    if common.timings {
        report.elapsed_ms = Some(started.elapsed().as_millis());
    }
    emit(common, &report)?;
    Ok(report)
}

fn maybe_trace(args: &CommonArgs, spec: &DslSpec) -> Result<(), Error> {
    if let Some(path) = &args.trace {
        commands::write_trace(path, spec, &args.opts())?;
    }
    Ok(())
}

fn reject_trace(args: &CommonArgs) -> Result<(), Error> {
    if args.trace.is_some() {
        return Err(Error::Parse {
            line: 0,
            col: 0,
            msg: "--trace needs a presentation-based command".into(),
        });
    }
    Ok(())
}

/// Writes human text to stdout and JSON wherever requested; `--json -`
/// replaces the text on stdout with the JSON document.
fn emit(args: &CommonArgs, report: &Report) -> Result<(), Error> {
    let json_to_stdout = args
        .json
        .as_ref()
        .is_some_and(|p| p.as_os_str() == "-");
    if json_to_stdout {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        );
    } else {
        print!("{}", report.render_text());
        if let Some(path) = &args.json {
            let body = serde_json::to_string_pretty(report).expect("report serializes");
            std::fs::write(path, body + "\n").map_err(|e| Error::Parse {
                line: 0,
                col: 0,
                msg: format!("cannot write {}: {e}", path.display()),
            })?;
        }
    }
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(report) => std::process::exit(report.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
