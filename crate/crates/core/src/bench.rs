//! Redundancy benchmarks: duplication variants, shuffled orderings, repeated
//! runs of both extraction algorithms, and the CSV record format.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::consistency::{CheckStats, OwnedProblem, SolveError, Solver};
use crate::extraction::{CoreError, CoreResult, Extractor};
use crate::model::{Constraint, KnowledgeBase};

pub const CSV_HEADER: [&str; 9] = [
    "kb",
    "algorithm",
    "factor",
    "nominal_rate",
    "iteration",
    "n_constraints",
    "tp_calls",
    "runtime_ms",
    "n_redundant",
];

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark configuration: {0}")]
    Config(String),
    #[error("{kb}: {source}")]
    Kb { kb: String, source: CoreError },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Sequential,
    CoreDiag,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Sequential, Algorithm::CoreDiag];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sequential => "sequential",
            Algorithm::CoreDiag => "corediag",
        }
    }

    pub fn run(
        self,
        extractor: &Extractor,
        kb: &KnowledgeBase,
        stats: &mut CheckStats,
    ) -> Result<CoreResult, CoreError> {
        match self {
            Algorithm::Sequential => extractor.sequential(kb, stats),
            Algorithm::CoreDiag => extractor.corediag(kb, stats),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sequential" => Ok(Algorithm::Sequential),
            "corediag" => Ok(Algorithm::CoreDiag),
            other => Err(format!(
                "unknown algorithm `{other}` (expected sequential or corediag)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    /// Copies per base constraint; `d` gives a nominal rate of `(d-1)/d`.
    pub duplication_factors: Vec<usize>,
    pub iterations: usize,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            duplication_factors: vec![1, 2, 4, 8],
            iterations: 10,
            seed: 0,
            algorithms: Algorithm::ALL.to_vec(),
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.iterations == 0 {
            return Err(BenchError::Config("iterations must be at least 1".into()));
        }
        if self.duplication_factors.contains(&0) {
            return Err(BenchError::Config(
                "duplication factors must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub kb_name: String,
    pub algorithm: Algorithm,
    pub factor: usize,
    pub nominal_rate: f64,
    pub iteration: usize,
    pub n_constraints: usize,
    pub tp_calls: u64,
    pub runtime_ms: f64,
    pub n_redundant: usize,
}

impl BenchRecord {
    fn csv_fields(&self) -> [String; 9] {
        [
            self.kb_name.clone(),
            self.algorithm.to_string(),
            self.factor.to_string(),
            self.nominal_rate.to_string(),
            self.iteration.to_string(),
            self.n_constraints.to_string(),
            self.tp_calls.to_string(),
            format!("{:.3}", self.runtime_ms),
            self.n_redundant.to_string(),
        ]
    }
}

pub fn nominal_rate(factor: usize) -> f64 {
    (factor - 1) as f64 / factor as f64
}

/// splitmix64 of `seed + iteration`.
pub fn derive_seed(seed: u64, iteration: u64) -> u64 {
    let mut z = seed
        .wrapping_add(iteration)
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Repeats every constraint `factor` times and shuffles the result with a
/// permutation determined by `seed`. Copies are labeled `<label>#<k>` with
/// `k` in `1..=factor`; with `factor == 1` labels are left unchanged.
///
/// Panics if `factor` is zero.
pub fn gen_variant(kb: &KnowledgeBase, factor: usize, seed: u64) -> KnowledgeBase {
    assert!(factor >= 1, "duplication factor must be at least 1");
    let mut constraints: Vec<Constraint> = if factor == 1 {
        kb.constraints().to_vec()
    } else {
        kb.constraints()
            .iter()
            .flat_map(|c| {
                (1..=factor)
                    .map(move |k| Constraint::new(format!("{}#{k}", c.label), c.expr.clone()))
            })
            .collect()
    };
    constraints.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    kb.with_constraints(constraints)
        .expect("copy labels are unique and atoms unchanged")
}

/// Fraction of constraints that corediag removes; 0 for an empty KB.
pub fn redundancy_rate(kb: &KnowledgeBase, stats: &mut CheckStats) -> Result<f64, CoreError> {
    if kb.constraints().is_empty() {
        return Ok(0.0);
    }
    let r = Extractor::default().corediag(kb, stats)?;
    Ok(r.redundant.len() as f64 / kb.constraints().len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TpBounds {
    pub best: f64,
    pub worst: f64,
}

/// Best and worst corediag check counts for `n` constraints and a core of
/// size `c`: `log2(n/c) + 2c` and `2c·log2(n/c) + 2c`.
pub fn theoretical_tp_bounds(n: usize, c: usize) -> Result<TpBounds, BenchError> {
    if c < 1 || c > n {
        return Err(BenchError::Config(format!("core size {c} outside 1..={n}")));
    }
    let log = (n as f64 / c as f64).log2();
    let c = c as f64;
    Ok(TpBounds {
        best: log + 2.0 * c,
        worst: 2.0 * c * log + 2.0 * c,
    })
}

/// Integer check limit used to validate corediag runs:
/// `2c·⌈log2(n/max(c,1))⌉ + 2c + 2`.
pub fn corediag_call_limit(n: usize, c: usize) -> u64 {
    let c = c as u64;
    let ratio = n as f64 / c.max(1) as f64;
    let log = if ratio <= 1.0 {
        0
    } else {
        ratio.log2().ceil() as u64
    };
    2 * c * log + 2 * c + 2
}

/// Runs every configured algorithm on every `kb × factor × iteration`
/// variant. Records come out in that nesting order, algorithms innermost.
pub fn run_bench(
    kbs: &[(String, KnowledgeBase)],
    cfg: &BenchConfig,
) -> Result<Vec<BenchRecord>, BenchError> {
    run_bench_with(kbs, cfg, &Extractor::default())
}

pub fn run_bench_with(
    kbs: &[(String, KnowledgeBase)],
    cfg: &BenchConfig,
    extractor: &Extractor,
) -> Result<Vec<BenchRecord>, BenchError> {
    cfg.validate()?;
    let mut records = Vec::new();
    for (name, kb) in kbs {
        for &factor in &cfg.duplication_factors {
            for iteration in 0..cfg.iterations {
                let variant = gen_variant(kb, factor, derive_seed(cfg.seed, iteration as u64));
                for &algorithm in &cfg.algorithms {
                    let mut stats = CheckStats::new();
                    let r = algorithm
                        .run(extractor, &variant, &mut stats)
                        .map_err(|source| BenchError::Kb {
                            kb: name.clone(),
                            source,
                        })?;
                    records.push(BenchRecord {
                        kb_name: name.clone(),
                        algorithm,
                        factor,
                        nominal_rate: nominal_rate(factor),
                        iteration,
                        n_constraints: variant.constraints().len(),
                        tp_calls: r.stats.tp_calls,
                        runtime_ms: r.runtime.as_secs_f64() * 1e3,
                        n_redundant: r.redundant.len(),
                    });
                }
            }
        }
    }
    Ok(records)
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(r.csv_fields())?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Means over iterations for one `kb × algorithm × factor` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub kb_name: String,
    pub algorithm: Algorithm,
    pub factor: usize,
    pub n_constraints: usize,
    pub mean_tp_calls: f64,
    pub mean_runtime_ms: f64,
    pub mean_redundant: f64,
}

/// Aggregates records in first-seen order of their cells.
pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut rows: Vec<(SummaryRow, usize)> = Vec::new();
    for r in records {
        let pos = rows.iter().position(|(s, _)| {
            s.kb_name == r.kb_name && s.algorithm == r.algorithm && s.factor == r.factor
        });
        let (row, count) = match pos {
            Some(i) => &mut rows[i],
            None => {
                rows.push((
                    SummaryRow {
                        kb_name: r.kb_name.clone(),
                        algorithm: r.algorithm,
                        factor: r.factor,
                        n_constraints: r.n_constraints,
                        mean_tp_calls: 0.0,
                        mean_runtime_ms: 0.0,
                        mean_redundant: 0.0,
                    },
                    0,
                ));
                rows.last_mut().unwrap()
            }
        };
        *count += 1;
        let k = *count as f64;
        row.mean_tp_calls += (r.tp_calls as f64 - row.mean_tp_calls) / k;
        row.mean_runtime_ms += (r.runtime_ms - row.mean_runtime_ms) / k;
        row.mean_redundant += (r.n_redundant as f64 - row.mean_redundant) / k;
    }
    rows.into_iter().map(|(r, _)| r).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveMeasurement {
    pub n_constraints: usize,
    pub expr_evals: u64,
    pub runtime_ms: f64,
    pub solved: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveComparison {
    pub full: SolveMeasurement,
    pub core: SolveMeasurement,
}

/// Cost of finding one configuration with and without the redundant
/// constraints of the `factor`-duplicated variant.
pub fn solve_time_comparison(
    kb: &KnowledgeBase,
    factor: usize,
    seed: u64,
) -> Result<SolveComparison, CoreError> {
    let variant = gen_variant(kb, factor, seed);
    let core = Extractor::default().corediag(&variant, &mut CheckStats::new())?;
    let reduced = variant.restrict_to(&core.core);
    Ok(SolveComparison {
        full: measure_solve(&variant)?,
        core: measure_solve(&reduced)?,
    })
}

fn measure_solve(kb: &KnowledgeBase) -> Result<SolveMeasurement, CoreError> {
    let owned = OwnedProblem::new(kb.variables(), kb.constraints().iter().map(|c| &c.expr))?;
    let mut stats = CheckStats::new();
    let start = Instant::now();
    let solved = Solver::new()
        .find_solution(&owned.problem(), &mut stats)
        .map_err(|e: SolveError| CoreError::Solve(e))?;
    Ok(SolveMeasurement {
        n_constraints: kb.constraints().len(),
        expr_evals: stats.expr_evals,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        solved: solved.is_some(),
    })
}
