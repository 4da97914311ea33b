//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage, I/O or parse errors, 2 when an
//! input KB that must be consistent is not.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{self, Algorithm, BenchConfig, BenchError};
use crate::consistency::{CheckStats, OwnedProblem, Solver};
use crate::extraction::{CoreError, Extractor};
use crate::format::{parse_kb, parse_requirements, serialize_kb, ParseError};
use crate::model::KnowledgeBase;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "corediag",
    version,
    about = "Find and remove redundant constraints in configuration knowledge bases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Sequential,
    Corediag,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Sequential => Algorithm::Sequential,
            AlgorithmArg::Corediag => Algorithm::CoreDiag,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one valid configuration, or INCONSISTENT.
    Solve {
        file: PathBuf,
        /// Customer requirements, as constraints over the KB's variables.
        #[arg(long)]
        requirements: Option<PathBuf>,
    },
    /// Report whether one constraint is entailed by the others.
    Check {
        file: PathBuf,
        #[arg(long)]
        constraint: String,
    },
    /// Print a minimal core and the redundant constraints.
    Core {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "corediag")]
        algorithm: AlgorithmArg,
        /// Also print the number of consistency checks.
        #[arg(long)]
        stats: bool,
    },
    /// Write a duplicated and shuffled variant of a KB.
    Gen {
        file: PathBuf,
        #[arg(long)]
        factor: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Run both algorithms over duplication variants and write a CSV.
    Bench {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
        factors: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        iterations: usize,
        #[arg(long)]
        seed: u64,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "sequential,corediag"
        )]
        algorithms: Vec<AlgorithmArg>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse {
        path: PathBuf,
        errors: Vec<ParseError>,
    },
    Inconsistent(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Parse { .. } => EXIT_USAGE,
            Failure::Inconsistent(_) => EXIT_INCONSISTENT,
        }
    }

    fn report(&self, err: &mut dyn Write) {
        match self {
            Failure::Usage(msg) | Failure::Inconsistent(msg) => {
                let _ = writeln!(err, "error: {msg}");
            }
            Failure::Parse { path, errors } => {
                for e in errors {
                    let _ = writeln!(err, "{}:{e}", path.display());
                }
            }
        }
    }
}

fn core_failure(path: &Path, e: CoreError) -> Failure {
    match e {
        CoreError::Inconsistent => Failure::Inconsistent(format!(
            "{}: the knowledge base is inconsistent",
            path.display()
        )),
        other => Failure::Usage(format!("{}: {other}", path.display())),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<KnowledgeBase, Failure> {
    parse_kb(&read(path)?).map_err(|errors| Failure::Parse {
        path: path.to_path_buf(),
        errors,
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn label_line(name: &str, labels: &[String]) -> String {
    if labels.is_empty() {
        format!("{name}:")
    } else {
        format!("{name}: {}", labels.join(" "))
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            f.report(err);
            f.code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Usage(format!("cannot write output: {e}"));
    match command {
        Command::Solve { file, requirements } => {
            let kb = load(&file)?;
            let req = match &requirements {
                Some(path) => Some(parse_requirements(&read(path)?, &kb).map_err(|errors| {
                    Failure::Parse {
                        path: path.clone(),
                        errors,
                    }
                })?),
                None => None,
            };
            let variables = req.as_ref().map_or(kb.variables(), |r| r.variables());
            let exprs = kb
                .constraints()
                .iter()
                .chain(req.iter().flat_map(|r| r.constraints()))
                .map(|c| &c.expr);
            let owned =
                OwnedProblem::new(variables, exprs).map_err(|e| Failure::Usage(e.to_string()))?;
            match Solver::new().find_solution(&owned.problem(), &mut CheckStats::new()) {
                Ok(Some(a)) => {
                    for v in variables {
                        writeln!(out, "{}={}", v.name(), a.get(v.name()).unwrap_or_default())
                            .map_err(io)?;
                    }
                }
                Ok(None) => writeln!(out, "INCONSISTENT").map_err(io)?,
                Err(e) => return Err(Failure::Usage(e.to_string())),
            }
        }
        Command::Check { file, constraint } => {
            let kb = load(&file)?;
            let redundant = Extractor::default()
                .is_redundant(&kb, &constraint, &mut CheckStats::new())
                .map_err(|e| core_failure(&file, e))?;
            writeln!(
                out,
                "{}",
                if redundant {
                    "REDUNDANT"
                } else {
                    "NON-REDUNDANT"
                }
            )
            .map_err(io)?;
        }
        Command::Core {
            file,
            algorithm,
            stats,
        } => {
            let kb = load(&file)?;
            let mut counters = CheckStats::new();
            let r = Algorithm::from(algorithm)
                .run(&Extractor::default(), &kb, &mut counters)
                .map_err(|e| core_failure(&file, e))?;
            writeln!(out, "{}", label_line("core", &r.core)).map_err(io)?;
            writeln!(out, "{}", label_line("redundant", &r.redundant)).map_err(io)?;
            if stats {
                writeln!(out, "tp_calls={}", r.stats.tp_calls).map_err(io)?;
            }
        }
        Command::Gen {
            file,
            factor,
            seed,
            output,
        } => {
            if factor == 0 {
                return Err(Failure::Usage("--factor must be at least 1".into()));
            }
            let kb = load(&file)?;
            let variant = bench::gen_variant(&kb, factor, seed);
            write_file(&output, serialize_kb(&variant).as_bytes())?;
        }
        Command::Bench {
            files,
            factors,
            iterations,
            seed,
            algorithms,
            output,
        } => {
            let mut kbs = Vec::new();
            for path in &files {
                let name = path.file_stem().map_or_else(
                    || path.display().to_string(),
                    |s| s.to_string_lossy().into_owned(),
                );
                kbs.push((name, load(path)?));
            }
            let cfg = BenchConfig {
                duplication_factors: factors,
                iterations,
                seed,
                algorithms: algorithms.into_iter().map(Algorithm::from).collect(),
            };
            let records = bench::run_bench(&kbs, &cfg).map_err(|e| match e {
                BenchError::Kb {
                    kb,
                    source: CoreError::Inconsistent,
                } => Failure::Inconsistent(format!("{kb}: the knowledge base is inconsistent")),
                other => Failure::Usage(other.to_string()),
            })?;
            let mut buf = Vec::new();
            bench::write_csv(&records, &mut buf).map_err(|e| Failure::Usage(e.to_string()))?;
            write_file(&output, &buf)?;

            writeln!(
                out,
                "{:<20} {:<10} {:>6} {:>6} {:>10} {:>12} {:>10}",
                "kb", "algorithm", "factor", "n", "tp_calls", "runtime_ms", "redundant"
            )
            .map_err(io)?;
            for row in bench::summarize(&records) {
                writeln!(
                    out,
                    "{:<20} {:<10} {:>6} {:>6} {:>10.1} {:>12.1} {:>10.1}",
                    row.kb_name,
                    row.algorithm.name(),
                    row.factor,
                    row.n_constraints,
                    row.mean_tp_calls,
                    row.mean_runtime_ms,
                    row.mean_redundant
                )
                .map_err(io)?;
            }
        }
    }
    Ok(())
}
