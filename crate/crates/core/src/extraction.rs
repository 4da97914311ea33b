//! Redundancy detection and minimal-core extraction.
//!
//! A constraint `c` of a knowledge base `C` is redundant when `C - {c}`
//! still entails every constraint of `C`, i.e. when `(C - {c}) ∪ {¬C}` is
//! inconsistent, where `¬C = ¬c1 ∨ … ∨ ¬cn` is built once from the original
//! list. A minimal core is a subset that preserves the semantics of `C` and
//! from which nothing more can be removed.
//!
//! Two extraction procedures are provided:
//!
//! - [`Extractor::sequential`] tests each constraint once, in KB order,
//!   against the shrinking working set. It always spends exactly `n`
//!   consistency checks.
//! - [`Extractor::corediag`] runs the divide-and-conquer [`Extractor::cored`]
//!   recursion seeded with `¬C` and returns the complement of the core it
//!   finds. Its check count grows with the core size, not with `n`.
//!
//! Both require a consistent input KB; this is verified with one extra check
//! that is reported in [`CoreResult::setup`], not in [`CoreResult::stats`].
//! [`enumerate_minimal_cores`] is an exhaustive oracle over all complete
//! assignments, independent of the backtracking checker.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::consistency::{CheckStats, CompiledExpr, ConsistencyProblem, Scope, SolveError, Solver};
use crate::model::{negate_kb, Assignment, KnowledgeBase, ModelError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("the knowledge base is inconsistent")]
    Inconsistent,
    #[error("no constraint labeled `{0}`")]
    UnknownLabel(String),
    #[error("the knowledge base has no constraints")]
    Empty,
    #[error("{what} is {actual}, above the oracle limit of {limit}")]
    TooLarge {
        what: &'static str,
        actual: u64,
        limit: u64,
    },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoreResult {
    /// Removed constraints, in KB order.
    pub redundant: Vec<String>,
    /// Kept constraints, in KB order.
    pub core: Vec<String>,
    /// Checks spent by the algorithm itself.
    pub stats: CheckStats,
    /// Checks spent on the consistency precondition.
    pub setup: CheckStats,
    /// Wall-clock time of the algorithm, excluding setup.
    pub runtime: Duration,
}

impl CoreResult {
    fn empty() -> Self {
        Self {
            redundant: Vec::new(),
            core: Vec::new(),
            stats: CheckStats::default(),
            setup: CheckStats::default(),
            runtime: Duration::ZERO,
        }
    }
}

/// A KB with its constraints and negation compiled once.
#[derive(Debug, Clone)]
pub struct PreparedKb<'kb> {
    kb: &'kb KnowledgeBase,
    scope: Scope,
    compiled: Vec<CompiledExpr>,
    negation: Option<CompiledExpr>,
}

impl<'kb> PreparedKb<'kb> {
    pub fn new(kb: &'kb KnowledgeBase) -> Result<Self, ModelError> {
        let scope = Scope::of(kb);
        let compiled = kb
            .constraints()
            .iter()
            .map(|c| scope.compile(&c.expr))
            .collect::<Result<_, _>>()?;
        let negation = match kb.constraints() {
            [] => None,
            cs => Some(scope.compile(&negate_kb(cs)?)?),
        };
        Ok(Self {
            kb,
            scope,
            compiled,
            negation,
        })
    }

    pub fn kb(&self) -> &KnowledgeBase {
        self.kb
    }

    pub fn scope(&self) -> &Scope {
        &self.scope
    }

    pub fn constraint(&self, index: usize) -> &CompiledExpr {
        &self.compiled[index]
    }

    /// `¬C` over the full constraint list; `None` for an empty KB.
    pub fn negation(&self) -> Option<&CompiledExpr> {
        self.negation.as_ref()
    }

    fn labels(&self, indices: impl IntoIterator<Item = usize>) -> Vec<String> {
        indices
            .into_iter()
            .map(|i| self.kb.constraints()[i].label.clone())
            .collect()
    }

    fn index_of(&self, label: &str) -> Result<usize, CoreError> {
        self.kb
            .constraints()
            .iter()
            .position(|c| c.label == label)
            .ok_or_else(|| CoreError::UnknownLabel(label.to_string()))
    }
}

/// Core extraction bound to a consistency checker configuration.
#[derive(Debug, Clone, Copy, Default)]
pub struct Extractor {
    solver: Solver,
}

impl Extractor {
    pub fn new(solver: Solver) -> Self {
        Self { solver }
    }

    fn consistent(
        &self,
        prep: &PreparedKb<'_>,
        exprs: Vec<&CompiledExpr>,
        stats: &mut CheckStats,
    ) -> Result<bool, SolveError> {
        self.solver
            .is_consistent(&ConsistencyProblem::new(&prep.scope, exprs), stats)
    }

    fn require_consistent(
        &self,
        prep: &PreparedKb<'_>,
        setup: &mut CheckStats,
    ) -> Result<(), CoreError> {
        if self.consistent(prep, prep.compiled.iter().collect(), setup)? {
            Ok(())
        } else {
            Err(CoreError::Inconsistent)
        }
    }

    /// Whether `label` is entailed by the rest of the KB. Exactly one check
    /// lands in `stats`.
    pub fn is_redundant(
        &self,
        kb: &KnowledgeBase,
        label: &str,
        stats: &mut CheckStats,
    ) -> Result<bool, CoreError> {
        let prep = PreparedKb::new(kb)?;
        let target = prep.index_of(label)?;
        self.require_consistent(&prep, &mut CheckStats::new())?;
        let negation = prep.negation.as_ref().expect("nonempty KB");
        let exprs = prep
            .compiled
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != target)
            .map(|(_, e)| e)
            .chain([negation])
            .collect();
        Ok(!self.consistent(&prep, exprs, stats)?)
    }

    /// Tests each constraint in KB order against the working set and drops
    /// it when the rest still contradicts `¬C`.
    pub fn sequential(
        &self,
        kb: &KnowledgeBase,
        stats: &mut CheckStats,
    ) -> Result<CoreResult, CoreError> {
        if kb.constraints().is_empty() {
            return Ok(CoreResult::empty());
        }
        let prep = PreparedKb::new(kb)?;
        let mut setup = CheckStats::new();
        self.require_consistent(&prep, &mut setup)?;

        let before = *stats;
        let start = Instant::now();
        let negation = prep.negation.as_ref().expect("nonempty KB");
        let n = prep.compiled.len();
        let mut kept = vec![true; n];
        for i in 0..n {
            let exprs = (0..n)
                .filter(|&j| j != i && kept[j])
                .map(|j| &prep.compiled[j])
                .chain([negation])
                .collect();
            if !self.consistent(&prep, exprs, stats)? {
                kept[i] = false;
            }
        }
        let runtime = start.elapsed();

        Ok(CoreResult {
            redundant: prep.labels((0..n).filter(|&i| !kept[i])),
            core: prep.labels((0..n).filter(|&i| kept[i])),
            stats: stats.since(&before),
            setup,
            runtime,
        })
    }

    /// Divide-and-conquer core search over `candidates` (indices into the
    /// prepared KB, in preference order).
    ///
    /// `background` is the consideration set; `added` is what was most
    /// recently added to it, and the set is only checked when that is
    /// nonempty. Returns the subset of `candidates` that belongs to the core,
    /// in candidate order.
    pub fn cored(
        &self,
        prep: &PreparedKb<'_>,
        background: &[&CompiledExpr],
        added: &[&CompiledExpr],
        candidates: &[usize],
        stats: &mut CheckStats,
    ) -> Result<Vec<usize>, SolveError> {
        if !added.is_empty() && !self.consistent(prep, background.to_vec(), stats)? {
            return Ok(Vec::new());
        }
        if candidates.len() <= 1 {
            return Ok(candidates.to_vec());
        }
        let k = candidates.len().div_ceil(2);
        let (first, second) = candidates.split_at(k);

        let second_exprs: Vec<&CompiledExpr> = second.iter().map(|&i| &prep.compiled[i]).collect();
        let with_second: Vec<&CompiledExpr> = background
            .iter()
            .copied()
            .chain(second_exprs.iter().copied())
            .collect();
        let mut found = self.cored(prep, &with_second, &second_exprs, first, stats)?;

        let found_exprs: Vec<&CompiledExpr> = found.iter().map(|&i| &prep.compiled[i]).collect();
        let with_found: Vec<&CompiledExpr> = background
            .iter()
            .copied()
            .chain(found_exprs.iter().copied())
            .collect();
        found.extend(self.cored(prep, &with_found, &found_exprs, second, stats)?);
        Ok(found)
    }

    /// Minimal core via [`Self::cored`] seeded with `¬C`; the redundant set
    /// is its complement.
    pub fn corediag(
        &self,
        kb: &KnowledgeBase,
        stats: &mut CheckStats,
    ) -> Result<CoreResult, CoreError> {
        if kb.constraints().is_empty() {
            return Ok(CoreResult::empty());
        }
        let prep = PreparedKb::new(kb)?;
        let mut setup = CheckStats::new();
        self.require_consistent(&prep, &mut setup)?;

        let before = *stats;
        let start = Instant::now();
        let negation = prep.negation.as_ref().expect("nonempty KB");
        let all: Vec<usize> = (0..prep.compiled.len()).collect();
        let core = self.cored(&prep, &[negation], &[negation], &all, stats)?;
        let runtime = start.elapsed();

        let mut in_core = vec![false; all.len()];
        core.iter().for_each(|&i| in_core[i] = true);
        Ok(CoreResult {
            redundant: prep.labels(all.iter().copied().filter(|&i| !in_core[i])),
            core: prep.labels(core),
            stats: stats.since(&before),
            setup,
            runtime,
        })
    }

    /// True iff removing any single constraint makes `¬C` satisfiable.
    /// Exactly `n` checks land in `stats`.
    pub fn is_minimal_core(
        &self,
        kb: &KnowledgeBase,
        stats: &mut CheckStats,
    ) -> Result<bool, CoreError> {
        if kb.constraints().is_empty() {
            return Err(CoreError::Empty);
        }
        let prep = PreparedKb::new(kb)?;
        self.require_consistent(&prep, &mut CheckStats::new())?;
        let negation = prep.negation.as_ref().expect("nonempty KB");
        let n = prep.compiled.len();
        let mut minimal = true;
        for i in 0..n {
            let exprs = (0..n)
                .filter(|&j| j != i)
                .map(|j| &prep.compiled[j])
                .chain([negation])
                .collect();
            minimal &= self.consistent(&prep, exprs, stats)?;
        }
        Ok(minimal)
    }

    /// Checks a candidate core (labels of `kb`) against the original KB's
    /// negation: whether it preserves the semantics, and whether every member
    /// is needed for that.
    pub fn check_core<S: AsRef<str>>(
        &self,
        kb: &KnowledgeBase,
        core: &[S],
        stats: &mut CheckStats,
    ) -> Result<CoreCheck, CoreError> {
        let prep = PreparedKb::new(kb)?;
        let members = core
            .iter()
            .map(|l| prep.index_of(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let Some(negation) = prep.negation.as_ref() else {
            return Ok(CoreCheck {
                preserving: true,
                minimal: true,
            });
        };
        let with = |skip: Option<usize>| -> Vec<&CompiledExpr> {
            members
                .iter()
                .filter(|&&i| Some(i) != skip)
                .map(|&i| &prep.compiled[i])
                .chain([negation])
                .collect()
        };
        let preserving = !self.consistent(&prep, with(None), stats)?;
        let mut minimal = true;
        for &m in &members {
            minimal &= self.consistent(&prep, with(Some(m)), stats)?;
        }
        Ok(CoreCheck {
            preserving,
            minimal,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoreCheck {
    pub preserving: bool,
    pub minimal: bool,
}

impl CoreCheck {
    pub fn is_minimal_core(&self) -> bool {
        self.preserving && self.minimal
    }
}

pub fn is_redundant(
    kb: &KnowledgeBase,
    label: &str,
    stats: &mut CheckStats,
) -> Result<bool, CoreError> {
    Extractor::default().is_redundant(kb, label, stats)
}

pub fn sequential(kb: &KnowledgeBase, stats: &mut CheckStats) -> Result<CoreResult, CoreError> {
    Extractor::default().sequential(kb, stats)
}

pub fn corediag(kb: &KnowledgeBase, stats: &mut CheckStats) -> Result<CoreResult, CoreError> {
    Extractor::default().corediag(kb, stats)
}

pub fn is_minimal_core(kb: &KnowledgeBase, stats: &mut CheckStats) -> Result<bool, CoreError> {
    Extractor::default().is_minimal_core(kb, stats)
}

/// Size limits for [`enumerate_minimal_cores`].
#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    pub max_constraints: usize,
    pub max_assignments: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_constraints: 12,
            max_assignments: 1 << 20,
        }
    }
}

/// All inclusion-minimal semantics-preserving subsets, each listed in KB
/// order; subsets are ordered by size, then by KB position. An empty KB has
/// the single core `∅`.
pub fn enumerate_minimal_cores(kb: &KnowledgeBase) -> Result<Vec<Vec<String>>, CoreError> {
    enumerate_minimal_cores_with(kb, OracleLimits::default())
}

pub fn enumerate_minimal_cores_with(
    kb: &KnowledgeBase,
    limits: OracleLimits,
) -> Result<Vec<Vec<String>>, CoreError> {
    let n = kb.constraints().len();
    if n > limits.max_constraints.min(24) {
        return Err(CoreError::TooLarge {
            what: "constraint count",
            actual: n as u64,
            limit: limits.max_constraints as u64,
        });
    }
    let space = kb
        .variables()
        .iter()
        .try_fold(1u64, |acc, v| acc.checked_mul(v.domain().len() as u64));
    match space {
        Some(s) if s <= limits.max_assignments => {}
        _ => {
            return Err(CoreError::TooLarge {
                what: "assignment space",
                actual: space.unwrap_or(u64::MAX),
                limit: limits.max_assignments,
            })
        }
    }

    // Satisfied-constraint mask of every complete assignment.
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut consistent = false;
    let mut countermodels = std::collections::BTreeSet::new();
    for a in all_assignments(kb) {
        let mut mask = 0u32;
        for (i, c) in kb.constraints().iter().enumerate() {
            if c.expr.eval(&a)? {
                mask |= 1 << i;
            }
        }
        if mask == full {
            consistent = true;
        } else {
            countermodels.insert(mask);
        }
    }
    if !consistent {
        return Err(CoreError::Inconsistent);
    }

    // S preserves the semantics iff every countermodel violates some member.
    let preserving = |s: u32| countermodels.iter().all(|&m| s & !m != 0);
    let members = |s: u32| (0..n).filter(move |i| s >> i & 1 == 1);
    let mut cores: Vec<Vec<usize>> = (0..=full)
        .filter(|&s| preserving(s) && members(s).all(|i| !preserving(s & !(1 << i))))
        .map(|s| members(s).collect())
        .collect();
    cores.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(cores
        .into_iter()
        .map(|s| {
            s.into_iter()
                .map(|i| kb.constraints()[i].label.clone())
                .collect()
        })
        .collect())
}

fn all_assignments(kb: &KnowledgeBase) -> impl Iterator<Item = Assignment> + '_ {
    let vars = kb.variables();
    let mut digits = vec![0usize; vars.len()];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let a: Assignment = vars
            .iter()
            .zip(&digits)
            .map(|(v, &d)| (v.name(), v.domain()[d].as_str()))
            .collect();
        // odometer, last variable fastest
        done = true;
        for i in (0..vars.len()).rev() {
            digits[i] += 1;
            if digits[i] < vars[i].domain().len() {
                done = false;
                break;
            }
            digits[i] = 0;
        }
        Some(a)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{Constraint, Expr, Variable};

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn duplicate_pair() -> KnowledgeBase {
        let e = Expr::implies(Expr::eq("4-wheel", "yes"), Expr::eq("type", "xdrive"));
        fixtures::car()
            .with_constraints(vec![
                Constraint::new("c", e.clone()),
                Constraint::new("c#2", e),
            ])
            .unwrap()
    }

    fn tautologies() -> KnowledgeBase {
        let t = Expr::implies(Expr::eq("type", "city"), Expr::eq("type", "city"));
        fixtures::car()
            .with_constraints(vec![
                Constraint::new("t1", t.clone()),
                Constraint::new("t2", t),
            ])
            .unwrap()
    }

    #[test]
    fn ca_is_redundant_c3_is_not() {
        let kb = fixtures::car_prime();
        let mut stats = CheckStats::new();
        assert!(is_redundant(&kb, "ca", &mut stats).unwrap());
        assert_eq!(stats.tp_calls, 1);
        assert!(!is_redundant(&kb, "c3", &mut stats).unwrap());
        assert_eq!(stats.tp_calls, 2);

        // witness: satisfies everything but c3
        let w: Assignment = [
            ("type", "limo"),
            ("fuel", "4l"),
            ("skibag", "no"),
            ("4-wheel", "no"),
            ("pdc", "yes"),
        ]
        .into_iter()
        .collect();
        for c in kb.constraints() {
            assert_eq!(c.expr.eval(&w).unwrap(), c.label != "c3", "{}", c.label);
        }
    }

    #[test]
    fn single_falsifiable_constraint_is_not_redundant() {
        let kb = fixtures::car().restrict_to(&["c1"]);
        assert!(!is_redundant(&kb, "c1", &mut CheckStats::new()).unwrap());
    }

    #[test]
    fn is_redundant_errors() {
        let kb = fixtures::car_prime();
        assert_eq!(
            is_redundant(&kb, "zz", &mut CheckStats::new()),
            Err(CoreError::UnknownLabel("zz".into()))
        );
        let bad = fixtures::car()
            .with_constraints(vec![
                Constraint::new("a", Expr::eq("pdc", "yes")),
                Constraint::new("b", Expr::eq("pdc", "no")),
            ])
            .unwrap();
        assert_eq!(
            is_redundant(&bad, "a", &mut CheckStats::new()),
            Err(CoreError::Inconsistent)
        );
        assert_eq!(
            sequential(&bad, &mut CheckStats::new()),
            Err(CoreError::Inconsistent)
        );
        assert_eq!(
            corediag(&bad, &mut CheckStats::new()),
            Err(CoreError::Inconsistent)
        );
    }

    #[test]
    fn sequential_on_working_example() {
        let mut stats = CheckStats::new();
        let r = sequential(&fixtures::car_prime(), &mut stats).unwrap();
        assert_eq!(r.redundant, labels(&["ca"]));
        assert_eq!(r.core, labels(&["c1", "c2", "c3", "c4", "c5"]));
        assert_eq!(r.stats.tp_calls, 6);
        assert_eq!(stats.tp_calls, 6);
        assert_eq!(r.setup.tp_calls, 1);

        let r = sequential(&fixtures::car(), &mut CheckStats::new()).unwrap();
        assert!(r.redundant.is_empty());
        assert_eq!(r.stats.tp_calls, 5);
    }

    #[test]
    fn sequential_drops_first_duplicate() {
        let kb = duplicate_pair();
        let r = sequential(&kb, &mut CheckStats::new()).unwrap();
        assert_eq!(r.redundant, labels(&["c"]));
        assert_eq!(r.core, labels(&["c#2"]));
        assert!(enumerate_minimal_cores(&kb).unwrap().contains(&r.core));
    }

    #[test]
    fn corediag_on_working_example() {
        let r = corediag(&fixtures::car_prime(), &mut CheckStats::new()).unwrap();
        assert_eq!(r.redundant, labels(&["ca"]));
        assert_eq!(r.core, labels(&["c1", "c2", "c3", "c4", "c5"]));
        let r = corediag(&fixtures::car(), &mut CheckStats::new()).unwrap();
        assert!(r.redundant.is_empty());
    }

    #[test]
    fn corediag_on_tautologies_short_circuits() {
        let kb = tautologies();
        let mut stats = CheckStats::new();
        let r = corediag(&kb, &mut stats).unwrap();
        assert!(r.core.is_empty());
        assert_eq!(r.redundant, labels(&["t1", "t2"]));
        assert_eq!(stats.tp_calls, 1);
        assert_eq!(
            enumerate_minimal_cores(&kb).unwrap(),
            vec![Vec::<String>::new()]
        );
    }

    #[test]
    fn cored_guard_and_singleton() {
        let kb = fixtures::car();
        let prep = PreparedKb::new(&kb).unwrap();
        let ex = Extractor::default();
        let scope = prep.scope();
        let contradiction = scope
            .compile(&Expr::And(vec![
                Expr::eq("pdc", "yes"),
                Expr::eq("pdc", "no"),
            ]))
            .unwrap();
        let mut stats = CheckStats::new();
        let out = ex
            .cored(
                &prep,
                &[&contradiction],
                &[&contradiction],
                &[0, 1, 2],
                &mut stats,
            )
            .unwrap();
        assert!(out.is_empty());
        assert_eq!(stats.tp_calls, 1);

        let out = ex.cored(&prep, &[], &[], &[4], &mut stats).unwrap();
        assert_eq!(out, vec![4]);
        assert_eq!(stats.tp_calls, 1);
    }

    #[test]
    fn cored_keeps_later_of_equivalent_pair() {
        let kb = duplicate_pair();
        let prep = PreparedKb::new(&kb).unwrap();
        let c = &kb.constraints()[0].expr;
        let neg = prep
            .scope()
            .compile(&Expr::not(Expr::And(vec![c.clone(), c.clone()])))
            .unwrap();
        let out = Extractor::default()
            .cored(&prep, &[&neg], &[&neg], &[0, 1], &mut CheckStats::new())
            .unwrap();
        assert_eq!(out, vec![1]);
        assert!(enumerate_minimal_cores(&kb)
            .unwrap()
            .contains(&labels(&["c#2"])));
    }

    #[test]
    fn minimal_core_predicate() {
        let mut stats = CheckStats::new();
        assert!(is_minimal_core(&fixtures::car(), &mut stats).unwrap());
        assert_eq!(stats.tp_calls, 5);
        assert!(!is_minimal_core(&fixtures::car_prime(), &mut stats).unwrap());
        assert!(is_minimal_core(&fixtures::car().restrict_to(&["c2"]), &mut stats).unwrap());
        assert_eq!(
            is_minimal_core(&KnowledgeBase::empty(), &mut stats),
            Err(CoreError::Empty)
        );
    }

    #[test]
    fn oracle_examples() {
        // ca and c2 are equivalent over skibag's two-value domain
        assert_eq!(
            enumerate_minimal_cores(&fixtures::car_prime()).unwrap(),
            vec![
                labels(&["ca", "c1", "c3", "c4", "c5"]),
                labels(&["c1", "c2", "c3", "c4", "c5"])
            ]
        );
        assert_eq!(
            enumerate_minimal_cores(&fixtures::car()).unwrap(),
            vec![labels(&["c1", "c2", "c3", "c4", "c5"])]
        );
        assert_eq!(
            enumerate_minimal_cores(&duplicate_pair()).unwrap(),
            vec![labels(&["c"]), labels(&["c#2"])]
        );
        assert_eq!(
            enumerate_minimal_cores(&KnowledgeBase::empty()).unwrap(),
            vec![Vec::<String>::new()]
        );
    }

    #[test]
    fn oracle_size_bound() {
        let vars = vec![Variable::new("a", ["x", "y"]).unwrap()];
        let cs = (0..13)
            .map(|i| Constraint::new(format!("k{i}"), Expr::eq("a", "x")))
            .collect();
        let kb = KnowledgeBase::new(vars, cs).unwrap();
        assert!(matches!(
            enumerate_minimal_cores(&kb),
            Err(CoreError::TooLarge { .. })
        ));
    }

    #[test]
    fn empty_kb_short_circuits() {
        let mut stats = CheckStats::new();
        let r = corediag(&KnowledgeBase::empty(), &mut stats).unwrap();
        assert!(r.core.is_empty() && r.redundant.is_empty());
        assert_eq!(
            sequential(&KnowledgeBase::empty(), &mut stats)
                .unwrap()
                .stats
                .tp_calls,
            0
        );
        assert_eq!(stats.tp_calls, 0);
    }

    #[test]
    fn check_core_reports_both_properties() {
        let kb = fixtures::car_prime();
        let ex = Extractor::default();
        let mut stats = CheckStats::new();
        assert!(ex
            .check_core(&kb, &["c1", "c2", "c3", "c4", "c5"], &mut stats)
            .unwrap()
            .is_minimal_core());
        let all = kb.labels();
        let c = ex.check_core(&kb, &all, &mut stats).unwrap();
        assert!(c.preserving && !c.minimal);
        let c = ex.check_core(&kb, &["c1", "c2"], &mut stats).unwrap();
        assert!(!c.preserving);
    }
}
