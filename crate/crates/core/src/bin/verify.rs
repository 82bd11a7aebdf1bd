//! `verify`: runs relation suites on the level-one Fock representation and
//! writes a JSON report. Exit codes: 0 all pass, 1 some check failed, 2 bad
//! configuration.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use toroidal_fock::lattice::{CartanData, LatticeElt};
use toroidal_fock::report::{run, RunConfig, Suite};
use toroidal_fock::Result;

/// Environment variable capping the worker thread count.
const THREADS_ENV: &str = "TOROIDAL_THREADS";

#[derive(Parser, Debug)]
#[command(name = "verify", version, about = "Verify the defining relations on the level-one Fock space")]
struct Args {
    /// Builtin Cartan type (A1..A8, D4..D8, E6, E7, E8).
    #[arg(long = "type", value_name = "TYPE", conflicts_with = "cartan")]
    cartan_type: Option<String>,

    /// Cartan matrix file: {"matrix": [[...]], "affine_root": [...]}.
    #[arg(long, value_name = "FILE")]
    cartan: Option<PathBuf>,

    /// Comma-separated suites, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,

    /// Mode window for Heisenberg and delta checks.
    #[arg(long, default_value_t = 3)]
    modes: i64,

    /// Degree / window for the operator checks.
    #[arg(long, default_value_t = 5)]
    degree: u32,

    /// Serre orders for the symbolic suite.
    #[arg(long = "serre-k", value_delimiter = ',', default_value = "1,2,3")]
    serre_k: Vec<i64>,

    /// Also run node-0 cases, reported as beyond-paper.
    #[arg(long)]
    affine: bool,

    /// Lattice vector for node 0 (comma-separated), overriding the default.
    #[arg(long = "affine-root", value_delimiter = ',', allow_negative_numbers = true)]
    affine_root: Option<Vec<i64>>,

    /// JSON report path.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Worker threads (also capped by TOROIDAL_THREADS).
    #[arg(long)]
    threads: Option<usize>,

    /// Print every report, not only failures.
    #[arg(short, long, conflicts_with = "quiet")]
    verbose: bool,

    /// Print only the summary line.
    #[arg(short, long)]
    quiet: bool,
}

fn config(args: &Args) -> Result<RunConfig> {
    let mut cartan = match (&args.cartan_type, &args.cartan) {
        (_, Some(path)) => CartanData::from_json_file(path)?,
        (Some(t), None) => CartanData::builtin(t)?,
        (None, None) => CartanData::builtin("A2")?,
    };
    if let Some(r) = &args.affine_root {
        cartan = cartan.with_affine_root(LatticeElt(r.clone()))?;
    }
    let mut c = RunConfig::new(cartan);
    c.suites = Suite::parse_list(&args.suite)?;
    c.modes = args.modes;
    c.degree = args.degree;
    c.serre_k = args.serre_k.clone();
    c.affine = args.affine;
    c.validate()?;
    Ok(c)
}

fn thread_count(flag: Option<usize>) -> Option<usize> {
    let cap = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0);
    match (flag, cap) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(n) = thread_count(args.threads) {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &args.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("verify: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let text = report.text_summary();
    if args.quiet {
        print!("{}", text.lines().last().map(|l| format!("{l}\n")).unwrap_or_default());
    } else if args.verbose {
        print!("{text}");
    } else {
        // Failures and notes plus the summary.
        let mut keep = false;
        for line in text.lines() {
            if !line.starts_with(' ') {
                keep = line.starts_with("FAIL") || line.starts_with("summary") || line.starts_with("BEYOND");
            }
            if keep {
                println!("{line}");
            }
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
