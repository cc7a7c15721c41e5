//! `mschur`: matroidal Schur algebra computations from the command line.
//!
//! Exit status is 0 on success, 1 when a checked identity or axiom fails, and 2 on bad
//! input.

mod commands;
mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use matroid_schur::schur::DEFAULT_DIMENSION_CAP;

use commands::{Job, Outcome};

#[derive(Parser)]
#[command(
    name = "mschur",
    version,
    about = "Matroidal Schur algebras in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Built-in name (`Mn:k`, `Mn*:k`, `U:r,n`, `K4`, `M5*`, ...) or a JSON file
    #[arg(long, global = true)]
    matroid: Option<String>,
    /// Comma-separated nonzero integer weights, one per element (default all 1)
    #[arg(long, global = true, allow_hyphen_values = true)]
    weights: Option<String>,
    /// A prime characteristic; may be repeated
    #[arg(long = "prime", global = true, value_parser = input::parse_prime)]
    primes: Vec<u64>,
    /// A cyclic flat, as comma-separated elements
    #[arg(long, global = true)]
    flat: Option<String>,
    /// Also write the JSON report to this path (`-` for stdout instead of text)
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Largest dim B for which explicit operator algebras are built
    #[arg(long, global = true, default_value_t = DEFAULT_DIMENSION_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Flats, cyclic flats, Tutte polynomial and its invariants
    Describe,
    /// Standard characters over Q and simple characters over each F_p
    Characters,
    /// Decomposition numbers over Q or each F_p
    Decomp,
    /// Bad primes and semisimplicity for each prime (default: primes up to 13)
    Semisimple,
    /// Gram determinant of U against the predicted product
    Det,
    /// Jantzen sum against the radical gap at one flat (default: every cyclic flat)
    Jantzen,
    /// KRS identities and exterior-algebra identities
    Identities,
    /// Axioms and structural lemmas of the Ringel datum over Q and each F_p
    Axioms,
    /// Dimensions of R and Ř, checked on explicit operators up to --cap
    Dims,
    /// The acceptance fixture suite
    Selftest {
        /// Run one criterion (1 to 12)
        #[arg(long)]
        criterion: Option<u32>,
    },
}

fn job(opts: &Opts) -> Result<Job> {
    let source = opts
        .matroid
        .as_deref()
        .ok_or_else(|| anyhow!("--matroid is required"))?;
    let loaded = input::load_matroid(source)?;
    let n = loaded.matroid.ground_size();
    let weights = input::parse_weights(opts.weights.as_deref(), n)?;
    let flat = opts
        .flat
        .as_deref()
        .map(|f| input::parse_flat(f, n))
        .transpose()?;
    let mut primes = opts.primes.clone();
    primes.sort_unstable();
    primes.dedup();
    Ok(Job {
        loaded,
        weights,
        primes,
        flat,
        cap: opts.cap,
    })
}

fn run(cli: &Cli) -> Result<Outcome> {
    if let Command::Selftest { criterion } = cli.command {
        return commands::selftest(criterion);
    }
    let job = job(&cli.opts)?;
    match cli.command {
        Command::Describe => commands::describe(&job),
        Command::Characters => commands::characters(&job),
        Command::Decomp => commands::decomp(&job),
        Command::Semisimple => commands::semisimple(&job),
        Command::Det => commands::det(&job),
        Command::Jantzen => commands::jantzen(&job),
        Command::Identities => commands::identities(&job),
        Command::Axioms => commands::axioms(&job),
        Command::Dims => commands::dims(&job),
        Command::Selftest { .. } => unreachable!("handled above"),
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("SCHUR_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| anyhow!("SCHUR_THREADS: {value:?} is not a positive integer"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("SCHUR_THREADS")
}

fn emit(outcome: &Outcome, json: Option<&PathBuf>) -> Result<()> {
    let rendered = serde_json::to_string_pretty(&outcome.json)? + "\n";
    match json {
        Some(path) if path.as_os_str() == "-" => print!("{rendered}"),
        Some(path) => {
            print!("{}", outcome.text);
            fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?;
        }
        None => print!("{}", outcome.text),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_threads()
        .and_then(|()| run(&cli))
        .and_then(|outcome| emit(&outcome, cli.opts.json.as_ref()).map(|()| outcome.passed));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
