mod error;
mod experiment;
mod invariants;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qep::bracket::{entry_tuple, enumerate_over_prime_field, expected_count, EnumerationMode};
use qep::diagram::OrientedDiagram;
use qep::fixtures::{corpus, Fixture};
use qep::suites::{self, SUITES};

use error::CliError;
use invariants::{compute, read_pd, Invariant};

#[derive(Parser)]
#[command(name = "qep", version, about = "Quantum enhancement polynomials of oriented links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants of one PD code and print them as JSON.
    Compute {
        /// PD file, or PD text such as "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]".
        #[arg(long)]
        pd: String,
        /// Universal bracket 1..5, or "all".
        #[arg(long, default_value = "all")]
        bracket: String,
        #[arg(long, value_enum, default_value = "all")]
        invariant: Invariant,
    },
    /// Run verification suites over the bundled corpus and optional PD files.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Directory of extra `*.pd` files.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Enumerate the brackets over Z/pZ.
    EnumerateBrackets {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "homs")]
        mode: Mode,
        /// Write every bracket's entries to this JSON file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Compare all pairs of a PD dataset directory.
    Experiment {
        #[arg(long)]
        dataset: PathBuf,
        /// Per-link result cache, keyed by a hash of the PD code.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Write the bundled diagrams as `<name>.pd` files.
    ExportFixtures {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Brute,
    Homs,
}

fn parse_brackets(s: &str) -> Result<Vec<usize>, CliError> {
    if s == "all" {
        return Ok(vec![1, 2, 3, 4, 5]);
    }
    match s.parse::<usize>() {
        Ok(i) if (1..=5).contains(&i) => Ok(vec![i]),
        _ => Err(CliError::Input(format!("--bracket must be 1..5 or all, not {s:?}"))),
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn cmd_compute(pd: &str, bracket: &str, invariant: Invariant) -> Result<(), CliError> {
    let brackets = parse_brackets(bracket)?;
    let d = OrientedDiagram::from_pd(&read_pd(pd)?)?;
    print_json(&compute(&d, &brackets, invariant)?)
}

fn load_corpus(dir: Option<&Path>) -> Result<Vec<Fixture>, CliError> {
    let mut fixtures = corpus();
    if let Some(dir) = dir {
        for e in experiment::read_dataset(dir)? {
            let pd = invariants::parse_pd(&e.pd_text).map_err(|err| CliError::Input(format!("{}: {err}", e.name)))?;
            let diagram = OrientedDiagram::from_pd(&pd).map_err(|err| CliError::Input(format!("{}: {err}", e.name)))?;
            fixtures.push(Fixture { name: e.name, diagram });
        }
    }
    Ok(fixtures)
}

fn cmd_verify(suite: &str, dir: Option<&Path>) -> Result<(), CliError> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
        return Err(CliError::Input(format!("unknown suite {bad:?}; expected one of {} or all", SUITES.join(", "))));
    }
    let fixtures = load_corpus(dir)?;
    let mut failed = vec![];
    for name in names {
        let r = suites::run(name, &fixtures).expect("known suite");
        if r.passed() {
            println!("PASS {name} ({} checks)", r.checks);
        } else {
            println!("FAIL {name} ({} of {} checks failed)", r.failures.len(), r.checks);
            println!("  reproducer: {}", r.failures[0]);
            failed.push(name);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("failed suites: {}", failed.join(", "))))
    }
}

fn cmd_enumerate(p: u64, mode: Mode, emit: Option<&Path>) -> Result<(), CliError> {
    let m = match mode {
        Mode::Brute => EnumerationMode::Brute,
        Mode::Homs => EnumerationMode::Homs,
    };
    let e = enumerate_over_prime_field(p, m)?;
    let formula = expected_count(p);
    let mut report = json!({
        "p": p,
        "mode": format!("{mode:?}").to_lowercase(),
        "count": e.count(),
        "per_type": (1..=5).map(|i| (i.to_string(), json!(e.per_type[i - 1]))).collect::<serde_json::Map<_, _>>(),
        "formula": formula.to_string(),
        "matches_formula": formula == e.count().into(),
    });
    if let Mode::Brute = mode {
        let homs = enumerate_over_prime_field(p, EnumerationMode::Homs)?;
        report["agrees_with_homs"] = Value::Bool(homs.entry_tuples() == e.entry_tuples());
    }
    if let Some(path) = emit {
        let rows: Vec<Value> = e.brackets.iter().map(|k| {
            let t = entry_tuple(k);
            json!({ "A": &t[..8], "B": &t[8..] })
        }).collect();
        std::fs::write(path, serde_json::to_string_pretty(&rows)?)?;
    }
    print_json(&report)
}

fn cmd_experiment(dataset: &Path, cache: Option<&Path>) -> Result<(), CliError> {
    let report = experiment::run(dataset, cache)?;
    print_json(&report)?;
    if !report.expected_mismatches.is_empty() {
        return Err(CliError::Failed(format!("{} expected value(s) differ", report.expected_mismatches.len())));
    }
    Ok(())
}

fn cmd_export(out: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(out)?;
    for f in corpus() {
        std::fs::write(out.join(format!("{}.pd", f.name)), format!("{}\n", f.diagram.to_pd()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute { pd, bracket, invariant } => cmd_compute(pd, bracket, *invariant),
        Command::Verify { suite, corpus } => cmd_verify(suite, corpus.as_deref()),
        Command::EnumerateBrackets { p, mode, emit } => cmd_enumerate(*p, *mode, emit.as_deref()),
        Command::Experiment { dataset, cache_dir } => cmd_experiment(dataset, cache_dir.as_deref()),
        Command::ExportFixtures { out } => cmd_export(out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
