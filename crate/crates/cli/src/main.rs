//! `braidfree`: decide freeness of A3 multiplicities and run the verification sweeps.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use braidfree::freeness::reduce;
use braidfree::signed::{is_eliminable_characterization, ordering_sequence};
use braidfree::verify::{
    balanced_universe, conjecture_scan, verify_eliminability_exhaustive, verify_equivalence, verify_sos_identity,
    verify_structure_tables, verify_table1_catalog,
};
use braidfree::{
    ann_decompose, criterion2, decide, Certificate, EliminationCertificate, FreenessStatus, FreenessVerdict,
    MultiBraid, SignedGraph, SweepConfig, SweepMode, SweepReport, Witness,
};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_BAD_INPUT: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(
    name = "braidfree",
    version,
    about = "Freeness of multiplicities on the braid arrangement A_ℓ",
    after_help = "Multiplicities are JSON files {\"vertices\": n, \"edges\": [[i, j, m], ...]} listing every pair i < j.\n\
                  Signed graphs are {\"vertices\": n, \"plus\": [[i, j], ...], \"minus\": [[i, j], ...]}.\n\n\
                  EXIT CODES: 0 free/success, 1 not free or violations, 2 unknown, 64 usage, 65 bad input.\n\
                  BRAIDFREE_THREADS sets the worker thread count."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a multiplicity is free
    Check {
        file: PathBuf,
        /// Also report the sharper bound q·k - 2p(k-p)
        #[arg(long)]
        strengthened: bool,
        #[arg(long)]
        json: bool,
    },
    /// Write a balanced multiplicity as n_i + n_j + ε_ij
    Decompose {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide signed eliminability of a signed graph
    Eliminable {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Remove free vertices and print the remaining core
    Reduce {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List balanced multiplicities on ell+1 vertices as JSON lines
    Enumerate {
        #[arg(long)]
        ell: usize,
        #[arg(long = "max-m")]
        max_m: i64,
        #[arg(long, default_value_t = SweepConfig::DEFAULT_BUDGET)]
        budget: u64,
        /// Print only the number of instances
        #[arg(long)]
        count: bool,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        ell: usize,
        #[arg(long = "max-m", default_value_t = 4)]
        max_m: i64,
        /// Sample this many instances instead of sweeping the whole box
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = SweepConfig::DEFAULT_BUDGET)]
        budget: u64,
        /// Largest structure size for the tables suite
        #[arg(long = "max-ell", default_value_t = 10)]
        max_ell: usize,
        /// Vertex count for the oracle suite
        #[arg(long, default_value_t = 5)]
        vertices: usize,
        /// Print JSON lines instead of a summary
        #[arg(long)]
        json: bool,
    },
    /// Scan a box of multiplicities and record the undecided ones
    Conjecture {
        #[arg(long)]
        ell: usize,
        #[arg(long = "max-m")]
        max_m: i64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = SweepConfig::DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Sos,
    Tables,
    Catalog,
    Equivalence,
    Oracle,
}

enum Failure {
    Usage(String),
    BadInput(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

impl From<braidfree::Error> for Failure {
    fn from(e: braidfree::Error) -> Self {
        Failure::Internal(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            });
        }
    };
    let started = Instant::now();
    let outcome = configure_threads().and_then(|()| run(cli.command));
    eprintln!("elapsed: {:.2?}", started.elapsed());
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::BadInput(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_BAD_INPUT)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("BRAIDFREE_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("BRAIDFREE_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring thread pool")?;
    Ok(())
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::BadInput)
}

fn load_multiplicity(path: &Path) -> Result<MultiBraid, Failure> {
    let text = read_input(path)?;
    MultiBraid::from_json_str(&text)
        .with_context(|| format!("{} is not a valid multiplicity", path.display()))
        .map_err(Failure::BadInput)
}

fn load_signed_graph(path: &Path) -> Result<SignedGraph, Failure> {
    let text = read_input(path)?;
    SignedGraph::from_json_str(&text)
        .with_context(|| format!("{} is not a valid signed graph", path.display()))
        .map_err(Failure::BadInput)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).context("serializing output")?;
    println!("{text}");
    Ok(())
}

fn status_code(status: FreenessStatus) -> u8 {
    match status {
        FreenessStatus::Free => EXIT_OK,
        FreenessStatus::NotFree => EXIT_NEGATIVE,
        FreenessStatus::Unknown => EXIT_UNKNOWN,
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Check { file, strengthened, json } => check(&file, strengthened, json),
        Command::Decompose { file, json } => decompose(&file, json),
        Command::Eliminable { file, json } => eliminable(&file, json),
        Command::Reduce { file, json } => reduce_cmd(&file, json),
        Command::Enumerate { ell, max_m, budget, count } => enumerate(ell, max_m, budget, count),
        Command::Verify {
            suite,
            ell,
            max_m,
            samples,
            seed,
            budget,
            max_ell,
            vertices,
            json,
        } => {
            let cfg = |mode| SweepConfig {
                budget,
                ..match samples {
                    Some(count) => SweepConfig::sampled(mode, ell, max_m, count, seed),
                    None => SweepConfig::exhaustive(mode, ell, max_m),
                }
            };
            let report = match suite {
                Suite::Sos => verify_sos_identity(&cfg(SweepMode::Identity)),
                Suite::Tables => verify_structure_tables(max_ell),
                Suite::Catalog => verify_table1_catalog(),
                Suite::Equivalence => verify_equivalence(&cfg(SweepMode::Equivalence)),
                Suite::Oracle => verify_eliminability_exhaustive(vertices),
            }
            .map_err(|e| Failure::Usage(e.to_string()))?;
            print_report(&report, json);
            Ok(if report.passed() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Conjecture { ell, max_m, out, budget } => conjecture(ell, max_m, &out, budget),
    }
}

#[derive(Serialize)]
struct StrengthenedCheck {
    verdict: FreenessVerdict,
    /// `None` when the input is not balanced and the sharper bound does not apply.
    strengthened_witness: Option<Option<Witness>>,
}

fn check(file: &Path, strengthened: bool, json: bool) -> Result<u8, Failure> {
    let m = load_multiplicity(file)?;
    let verdict = decide(&m)?;
    let sharper = if strengthened && m.is_balanced() {
        Some(criterion2(&m, true)?)
    } else {
        None
    };
    let code = status_code(verdict.status);
    if json {
        if strengthened {
            print_json(&StrengthenedCheck {
                verdict,
                strengthened_witness: sharper,
            })?;
        } else {
            print_json(&verdict)?;
        }
        return Ok(code);
    }
    println!("{verdict}");
    if matches!(verdict.certificate, Certificate::ReductionChain { .. }) {
        if let Some(w) = verdict.witness() {
            println!("witness in original labels: {w}");
        }
    }
    if strengthened {
        match sharper {
            None => println!("strengthened bound: not applicable, input is not balanced"),
            Some(None) => println!("strengthened bound: no violating subset"),
            Some(Some(w)) => println!("strengthened bound: {w}"),
        }
    }
    Ok(code)
}

fn decompose(file: &Path, json: bool) -> Result<u8, Failure> {
    let m = load_multiplicity(file)?;
    match ann_decompose(&m) {
        Ok(d) => {
            if json {
                print_json(&d)?;
            } else {
                let g = d.sign_graph();
                println!("n = {:?}", d.offsets());
                println!("plus edges: {:?}", g.plus_edges());
                println!("minus edges: {:?}", g.minus_edges());
            }
            Ok(EXIT_OK)
        }
        Err(e) => {
            if json {
                print_json(&e)?;
            } else {
                println!("no decomposition: {e}");
            }
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn eliminable(file: &Path, json: bool) -> Result<u8, Failure> {
    let g = load_signed_graph(file)?;
    let cert = is_eliminable_characterization(&g)?;
    let code = if cert.is_eliminable() { EXIT_OK } else { EXIT_NEGATIVE };
    if json {
        print_json(&cert)?;
    } else {
        match &cert {
            EliminationCertificate::Ordering { nu } => {
                println!("eliminable: order {:?}", ordering_sequence(nu))
            }
            EliminationCertificate::Obstruction { obstruction } => println!("not eliminable: {obstruction}"),
        }
    }
    Ok(code)
}

#[derive(Serialize)]
struct ReduceOutput {
    eliminated: Vec<usize>,
    core: Vec<usize>,
    core_multiplicity: braidfree::arrangement::MultiplicityJson,
}

fn reduce_cmd(file: &Path, json: bool) -> Result<u8, Failure> {
    let m = load_multiplicity(file)?;
    let r = reduce(&m);
    let core = r.core_multiplicity(&m);
    if json {
        print_json(&ReduceOutput {
            eliminated: r.eliminated,
            core: r.core,
            core_multiplicity: core.to_json(),
        })?;
    } else {
        println!("removed free vertices: {:?}", r.eliminated);
        println!("core vertices: {:?}", r.core);
        println!("core: {core}");
    }
    Ok(EXIT_OK)
}

fn enumerate(ell: usize, max_m: i64, budget: u64, count: bool) -> Result<u8, Failure> {
    let cfg = SweepConfig {
        budget,
        ..SweepConfig::exhaustive(SweepMode::Identity, ell, max_m)
    };
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let (instances, truncated) = balanced_universe(ell + 1, max_m, budget);
    if count {
        println!("{}", instances.len());
    } else {
        let stdout = io::stdout();
        let mut out = io::BufWriter::new(stdout.lock());
        for m in &instances {
            writeln!(out, "{}", m.to_json_string()).context("writing output")?;
        }
        out.flush().context("writing output")?;
    }
    if truncated {
        eprintln!("stopped at the budget of {budget} instances");
        return Ok(EXIT_NEGATIVE);
    }
    Ok(EXIT_OK)
}

fn print_report(report: &SweepReport, json: bool) {
    if json {
        print!("{}", report.to_jsonl());
        return;
    }
    println!(
        "{}: {} ({} instances, {} violations{})",
        report.suite,
        if report.passed() { "pass" } else { "FAIL" },
        report.instances,
        report.violations.len(),
        if report.truncated { ", truncated at budget" } else { "" }
    );
    if let Some(fields) = report.summary.as_object() {
        for (key, value) in fields {
            println!("  {key}: {value}");
        }
    }
    for v in report.violations.iter().take(20) {
        println!("  violation: {v}");
    }
    if report.violations.len() > 20 {
        println!("  ... {} more", report.violations.len() - 20);
    }
}

fn conjecture(ell: usize, max_m: i64, out: &Path, budget: u64) -> Result<u8, Failure> {
    let cfg = SweepConfig {
        budget,
        ..SweepConfig::exhaustive(SweepMode::Conjecture, ell, max_m)
    };
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let (report, unknown) = conjecture_scan(&cfg)?;
    let mut text = String::new();
    for u in &unknown {
        text.push_str(&serde_json::to_string(u).context("serializing instance")?);
        text.push('\n');
    }
    fs::write(out, text).with_context(|| format!("cannot write {}", out.display()))?;
    print_report(&report, false);
    println!("{} undecided instances written to {}", unknown.len(), out.display());
    Ok(if report.passed() { EXIT_OK } else { EXIT_NEGATIVE })
}
