//! The `grundy` command line.
//!
//! Exit code 0 is success. Domain errors such as a malformed graph exit
//! with 1; usage errors such as an unknown flag or suite exit with 2.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;

use crate::atoms::enumerate_atoms;
use crate::bounds::{bound_report_with, ExactBudget, CSV_HEADER};
use crate::coloring::DEFAULT_EXPANSION_BUDGET;
use crate::error::Error;
use crate::exec::{with_workers, Execution};
use crate::experiments::{run_sweep_with, write_csv, SweepConfig};
use crate::graph::parse_edge_list;
use crate::spectral::tk_lambda_sequence;
use crate::verify::{is_suite, run_suite, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const MAX_TK_ROWS: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "grundy", version, about = "Grundy numbers and their spectral upper bounds")]
pub struct Cli {
    /// Worker threads for parallel work (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: Option<u16>,
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound report for one graph in edge-list format.
    #[command(group(ArgGroup::new("format").args(["json", "csv"])))]
    Analyze {
        graph_file: PathBuf,
        /// Node expansions allowed for each exact search.
        #[arg(long, default_value_t = DEFAULT_EXPANSION_BUDGET)]
        exact_budget: u64,
        /// JSON output (the default).
        #[arg(long)]
        json: bool,
        /// CSV output: a header and one record.
        #[arg(long)]
        csv: bool,
    },
    /// Enumerate k-atoms up to layer relabeling into a directory.
    Atoms {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// CSV table of f_k = lambda1(T_k) against sqrt(2(k-1)).
    Tk {
        #[arg(long)]
        k_max: usize,
    },
    /// Run an invariant suite, or "all".
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// Random-graph sweep from a TOML config; CSV to stdout or --out.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure { code: EXIT_DOMAIN, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::domain(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command,
/// returning the exit code.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                return EXIT_USAGE;
            }
            let _ = out.write_all(rendered.as_bytes());
            return EXIT_OK;
        }
    };
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let workers = cli.workers.map(usize::from);
    let mut notes = Vec::new();
    let result = with_workers(workers, || dispatch(cli.command, exec, out, &mut notes));
    for note in notes {
        let _ = writeln!(err, "warning: {note}");
    }
    match result.and_then(|()| out.flush().map_err(Failure::from)) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}

fn dispatch(command: Command, exec: Execution, out: &mut (dyn Write + Send), notes: &mut Vec<String>) -> CmdResult {
    match command {
        Command::Analyze { graph_file, exact_budget, json: _, csv } => cmd_analyze(&graph_file, exact_budget, csv, exec, out),
        Command::Atoms { k, n_max, out: dir } => cmd_atoms(k, n_max, &dir, out),
        Command::Tk { k_max } => cmd_tk(k_max, out),
        Command::Verify { suite } => cmd_verify(&suite, exec, out),
        Command::Sweep { config, out: path } => cmd_sweep(&config, path.as_deref(), exec, out, notes),
    }
}

pub fn cmd_analyze(path: &Path, expansions: u64, csv: bool, exec: Execution, out: &mut dyn Write) -> CmdResult {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))?;
    let g = parse_edge_list(&text).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))?;
    let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let budget = ExactBudget { max_expansions: expansions, ..ExactBudget::default() };
    let report = bound_report_with(&g, &id, budget, exec);
    if csv {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER).map_err(Error::from)?;
        w.write_record(report.csv_record()).map_err(Error::from)?;
        w.flush()?;
    } else {
        writeln!(out, "{}", report.to_json())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct AtomManifest {
    k: usize,
    n_max: usize,
    count: usize,
    /// `[n, count]` pairs for every vertex count that occurs.
    counts_by_n: Vec<(usize, usize)>,
    files: Vec<String>,
}

pub fn cmd_atoms(k: usize, n_max: usize, dir: &Path, out: &mut dyn Write) -> CmdResult {
    let atoms = enumerate_atoms(k, n_max)?;
    std::fs::create_dir_all(dir)?;
    let mut files = Vec::with_capacity(atoms.len());
    let mut counts_by_n: Vec<(usize, usize)> = Vec::new();
    for (i, atom) in atoms.iter().enumerate() {
        let name = format!("atom_k{k}_{i:05}.json");
        std::fs::write(dir.join(&name), atom.to_json() + "\n")?;
        files.push(name);
        match counts_by_n.iter_mut().find(|(n, _)| *n == atom.n()) {
            Some((_, c)) => *c += 1,
            None => counts_by_n.push((atom.n(), 1)),
        }
    }
    counts_by_n.sort_unstable();
    let manifest = AtomManifest { k, n_max, count: atoms.len(), counts_by_n, files };
    let json = serde_json::to_string_pretty(&manifest).map_err(Error::from)?;
    std::fs::write(dir.join("manifest.json"), json.clone() + "\n")?;
    writeln!(out, "{json}")?;
    Ok(())
}

pub fn cmd_tk(k_max: usize, out: &mut dyn Write) -> CmdResult {
    if k_max > MAX_TK_ROWS {
        return Err(Failure::usage(format!("--k-max is at most {MAX_TK_ROWS}, got {k_max}")));
    }
    let mut w = csv::Writer::from_writer(std::io::BufWriter::new(out));
    w.write_record(["k", "f_k", "sqrt_2k_minus_1", "gap"]).map_err(Error::from)?;
    for (i, f) in tk_lambda_sequence(k_max).into_iter().enumerate() {
        let k = i + 1;
        let s = (2.0 * i as f64).sqrt();
        w.write_record([k.to_string(), f.to_string(), s.to_string(), (s - f).to_string()]).map_err(Error::from)?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_verify(suite: &str, exec: Execution, out: &mut dyn Write) -> CmdResult {
    let names: Vec<&str> = if suite == "all" {
        SUITES.iter().map(|(s, _)| *s).collect()
    } else if is_suite(suite) {
        vec![suite]
    } else {
        let known: Vec<&str> = SUITES.iter().map(|(s, _)| *s).collect();
        return Err(Failure::usage(format!("unknown suite {suite:?}; expected one of {} or all", known.join(", "))));
    };
    let mut failed = 0;
    for name in names {
        let report = run_suite(name, exec)?;
        for p in &report.properties {
            let status = if p.passed() { "PASS" } else { "FAIL" };
            write!(out, "{status} {name}: {} ({} checked, {} failed)", p.property, p.checked, p.failures)?;
            if let Some(first) = &p.first_failure {
                write!(out, "; first failure: {first}")?;
            }
            writeln!(out)?;
            failed += usize::from(!p.passed());
        }
    }
    if failed > 0 {
        return Err(Failure::domain(format!("{failed} properties failed")));
    }
    Ok(())
}

pub fn cmd_sweep(config: &Path, path: Option<&Path>, exec: Execution, out: &mut dyn Write, notes: &mut Vec<String>) -> CmdResult {
    let text = std::fs::read_to_string(config).map_err(|e| Failure::usage(format!("{}: {e}", config.display())))?;
    let config = SweepConfig::from_toml(&text).map_err(|e| Failure::usage(e.to_string()))?;
    let outcome = run_sweep_with(&config, exec)?;
    if outcome.truncated {
        notes.push(format!("sweep truncated at max_vertices = {}; {} rows written", config.max_vertices, outcome.rows.len()));
    }
    match path {
        Some(p) => write_csv(&outcome.rows, std::fs::File::create(p)?)?,
        None => write_csv(&outcome.rows, out)?,
    }
    Ok(())
}
