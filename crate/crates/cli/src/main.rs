use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "surgery", version, about = "Exact checks for the algebra of proper surgery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation depth for end-periodic complexes.
    #[arg(long, global = true, default_value_t = 4)]
    depth: usize,
    /// Number of stages a tower decision may inspect.
    #[arg(long, global = true, default_value_t = 10000)]
    horizon: usize,
    /// Seed for all random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing on stdout; the exit code carries the verdict.
    #[arg(long, global = true)]
    quiet: bool,
    /// Also write the JSON report to this file.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homology and cohomology of a simplicial space.
    Homology {
        input: PathBuf,
        /// Use the orientation character as coefficients.
        #[arg(long)]
        twisted: bool,
        /// Relative to the subcomplex.
        #[arg(long)]
        relative: bool,
    },
    /// Cup and cap identities on random cochains, and graded commutativity.
    Products {
        input: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Whitehead torsion of a based acyclic complex.
    Torsion { input: PathBuf },
    /// Poincare-Lefschetz duality for a space with a class and optional cover.
    Duality { input: PathBuf },
    /// Vanishing of epsilon and Delta for a multitower or the end towers of an end-periodic complex.
    Endtower {
        input: PathBuf,
        /// Homology degree of the end tower (end-periodic input only).
        #[arg(long)]
        degree: Option<i64>,
    },
    /// Locally finite homology and compactly supported cohomology.
    Lfhomology { input: PathBuf },
    /// Validate a partition over a tree and stabilize it.
    Partition { input: PathBuf },
    /// Run the acceptance table.
    Selftest,
}

/// Mathematical outcome of a job.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Undetermined,
}

impl Outcome {
    fn name(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Undetermined => "UNDETERMINED",
        }
    }

    fn code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Undetermined => 3,
        }
    }
}

pub struct Job {
    pub outcome: Outcome,
    pub details: Value,
    pub witnesses: Vec<Value>,
    /// Human-readable lines.
    pub text: Vec<String>,
    /// Witness text for stderr.
    pub notes: Vec<String>,
}

/// Bad input: unreadable file, malformed JSON, or data failing validation.
#[derive(Debug)]
pub struct InputError(pub String);

pub fn bad<E: std::fmt::Display>(e: E) -> InputError {
    InputError(e.to_string())
}

pub fn load(path: &Path) -> Result<Value, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{}: malformed JSON: {e}", path.display())))
}

pub struct Options {
    pub depth: usize,
    pub horizon: usize,
    pub seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options { depth: cli.depth, horizon: cli.horizon, seed: cli.seed };
    let (name, inputs, result) = match &cli.command {
        Command::Homology { input, twisted, relative } => ("homology", vec![input], commands::homology(input, *twisted, *relative)),
        Command::Products { input, samples } => ("products", vec![input], commands::products(input, *samples, &opts)),
        Command::Torsion { input } => ("torsion", vec![input], commands::torsion(input)),
        Command::Duality { input } => ("duality", vec![input], commands::duality(input)),
        Command::Endtower { input, degree } => ("endtower", vec![input], commands::endtower(input, *degree, &opts)),
        Command::Lfhomology { input } => ("lfhomology", vec![input], commands::lfhomology(input, &opts)),
        Command::Partition { input } => ("partition", vec![input], commands::partition(input)),
        Command::Selftest => ("selftest", vec![], Ok(commands::selftest(&opts))),
    };
    let job = match result {
        Ok(job) => job,
        Err(InputError(msg)) => {
            eprintln!("input error: {msg}");
            return ExitCode::from(2);
        }
    };
    let report = json!({
        "command": name,
        "inputs": inputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "verdict": job.outcome.name(),
        "details": job.details,
        "witnesses": job.witnesses,
    });
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(path) = &cli.output {
        if let Err(e) = fs::write(path, format!("{rendered}\n")) {
            eprintln!("input error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if !cli.quiet {
        let mut out = std::io::stdout().lock();
        if cli.json {
            let _ = writeln!(out, "{rendered}");
        } else {
            for line in &job.text {
                let _ = writeln!(out, "{line}");
            }
            let _ = writeln!(out, "verdict: {}", job.outcome.name());
        }
    }
    for note in &job.notes {
        eprintln!("witness: {note}");
    }
    ExitCode::from(job.outcome.code())
}
