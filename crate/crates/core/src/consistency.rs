//! Complete consistency checking by chronological backtracking.
//!
//! Variables are tried in declaration order and values in domain order. An
//! expression is evaluated at the first search depth where all of its
//! variables are bound; there is no propagation beyond that. Every
//! [`Solver::is_consistent`] call counts as one TP-call in [`CheckStats`].

use std::collections::HashMap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::model::{Assignment, CmpOp, Expr, KnowledgeBase, ModelError, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("consistency check exceeded its budget of {0:?}")]
    BudgetExceeded(Duration),
}

/// Consistency-check counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckStats {
    pub tp_calls: u64,
    pub expr_evals: u64,
    pub elapsed: Duration,
}

impl CheckStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn elapsed_ms(&self) -> f64 {
        self.elapsed.as_secs_f64() * 1e3
    }

    /// Counter difference `self - earlier`.
    pub fn since(&self, earlier: &CheckStats) -> CheckStats {
        CheckStats {
            tp_calls: self.tp_calls - earlier.tp_calls,
            expr_evals: self.expr_evals - earlier.expr_evals,
            elapsed: self.elapsed.saturating_sub(earlier.elapsed),
        }
    }
}

/// Index-based view of a variable list.
#[derive(Debug, Clone)]
pub struct Scope {
    variables: Vec<Variable>,
    index: HashMap<String, usize>,
}

impl Scope {
    pub fn new(variables: &[Variable]) -> Self {
        let index = variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name().to_string(), i))
            .collect();
        Self {
            variables: variables.to_vec(),
            index,
        }
    }

    pub fn of(kb: &KnowledgeBase) -> Self {
        Self::new(kb.variables())
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    /// Resolves atoms to indices. Fails on undeclared variables or values.
    pub fn compile(&self, expr: &Expr) -> Result<CompiledExpr, ModelError> {
        let node = self.compile_node(expr)?;
        let last_var = node.max_var();
        Ok(CompiledExpr { node, last_var })
    }

    fn compile_node(&self, expr: &Expr) -> Result<Node, ModelError> {
        Ok(match expr {
            Expr::Atom { var, op, value } => {
                let &vi = self
                    .index
                    .get(var)
                    .ok_or_else(|| ModelError::UnknownVariable(var.clone()))?;
                let value_idx =
                    self.variables[vi]
                        .position(value)
                        .ok_or_else(|| ModelError::UnknownValue {
                            var: var.clone(),
                            value: value.clone(),
                        })?;
                Node::Atom {
                    var: vi,
                    value: value_idx,
                    eq: *op == CmpOp::Eq,
                }
            }
            Expr::Not(c) => Node::Not(Box::new(self.compile_node(c)?)),
            Expr::And(cs) => Node::And(
                cs.iter()
                    .map(|c| self.compile_node(c))
                    .collect::<Result<_, _>>()?,
            ),
            Expr::Or(cs) => Node::Or(
                cs.iter()
                    .map(|c| self.compile_node(c))
                    .collect::<Result<_, _>>()?,
            ),
            Expr::Implies(p, q) => Node::Implies(
                Box::new(self.compile_node(p)?),
                Box::new(self.compile_node(q)?),
            ),
        })
    }

    fn to_assignment(&self, values: &[usize]) -> Assignment {
        self.variables
            .iter()
            .zip(values)
            .map(|(v, &i)| (v.name().to_string(), v.domain()[i].clone()))
            .collect()
    }
}

#[derive(Debug, Clone)]
enum Node {
    Atom { var: usize, value: usize, eq: bool },
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
}

impl Node {
    fn max_var(&self) -> Option<usize> {
        match self {
            Node::Atom { var, .. } => Some(*var),
            Node::Not(c) => c.max_var(),
            Node::And(cs) | Node::Or(cs) => cs.iter().filter_map(Node::max_var).max(),
            Node::Implies(p, q) => p.max_var().max(q.max_var()),
        }
    }

    fn eval(&self, values: &[usize]) -> bool {
        match self {
            Node::Atom { var, value, eq } => (values[*var] == *value) == *eq,
            Node::Not(c) => !c.eval(values),
            Node::And(cs) => cs.iter().all(|c| c.eval(values)),
            Node::Or(cs) => cs.iter().any(|c| c.eval(values)),
            Node::Implies(p, q) => !p.eval(values) || q.eval(values),
        }
    }
}

/// An expression resolved against a [`Scope`].
#[derive(Debug, Clone)]
pub struct CompiledExpr {
    node: Node,
    /// Deepest variable index referenced; the expression is checked once the
    /// search has bound it.
    last_var: Option<usize>,
}

impl CompiledExpr {
    pub fn eval_indices(&self, values: &[usize]) -> bool {
        self.node.eval(values)
    }
}

/// A conjunction of compiled expressions to test over a scope.
#[derive(Debug, Clone)]
pub struct ConsistencyProblem<'a> {
    scope: &'a Scope,
    exprs: Vec<&'a CompiledExpr>,
}

impl<'a> ConsistencyProblem<'a> {
    /// The expressions must have been compiled by `scope`.
    pub fn new(scope: &'a Scope, exprs: Vec<&'a CompiledExpr>) -> Self {
        Self { scope, exprs }
    }

    pub fn scope(&self) -> &Scope {
        self.scope
    }

    pub fn exprs(&self) -> &[&'a CompiledExpr] {
        &self.exprs
    }
}

/// Owned problem built from plain expressions, for callers that do not
/// manage compilation themselves.
#[derive(Debug, Clone)]
pub struct OwnedProblem {
    scope: Scope,
    exprs: Vec<CompiledExpr>,
}

impl OwnedProblem {
    pub fn new<'e>(
        variables: &[Variable],
        exprs: impl IntoIterator<Item = &'e Expr>,
    ) -> Result<Self, ModelError> {
        let scope = Scope::new(variables);
        let exprs = exprs
            .into_iter()
            .map(|e| scope.compile(e))
            .collect::<Result<_, _>>()?;
        Ok(Self { scope, exprs })
    }

    pub fn problem(&self) -> ConsistencyProblem<'_> {
        ConsistencyProblem::new(&self.scope, self.exprs.iter().collect())
    }
}

/// How often (in search nodes) the deadline is polled.
const BUDGET_POLL: u32 = 1024;

#[derive(Debug, Clone, Copy, Default)]
pub struct Solver {
    budget: Option<Duration>,
}

impl Solver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Aborts any single check that runs longer than `budget`.
    pub fn with_budget(budget: Duration) -> Self {
        Self {
            budget: Some(budget),
        }
    }

    pub fn budget(&self) -> Option<Duration> {
        self.budget
    }

    pub fn is_consistent(
        &self,
        p: &ConsistencyProblem<'_>,
        stats: &mut CheckStats,
    ) -> Result<bool, SolveError> {
        stats.tp_calls += 1;
        let start = Instant::now();
        let found = self.search(p, stats, start).map(|v| v.is_some());
        stats.elapsed += start.elapsed();
        found
    }

    /// First satisfying complete assignment in search order, if any. Not
    /// counted as a TP-call.
    pub fn find_solution(
        &self,
        p: &ConsistencyProblem<'_>,
        stats: &mut CheckStats,
    ) -> Result<Option<Assignment>, SolveError> {
        let start = Instant::now();
        let found = self.search(p, stats, start);
        stats.elapsed += start.elapsed();
        Ok(found?.map(|values| p.scope.to_assignment(&values)))
    }

    fn search(
        &self,
        p: &ConsistencyProblem<'_>,
        stats: &mut CheckStats,
        start: Instant,
    ) -> Result<Option<Vec<usize>>, SolveError> {
        let n = p.scope.variables.len();
        let mut ground = Vec::new();
        let mut buckets: Vec<Vec<&CompiledExpr>> = vec![Vec::new(); n];
        for e in &p.exprs {
            match e.last_var {
                Some(d) => buckets[d].push(e),
                None => ground.push(*e),
            }
        }
        for e in ground {
            stats.expr_evals += 1;
            if !e.eval_indices(&[]) {
                return Ok(None);
            }
        }
        if n == 0 {
            return Ok(Some(Vec::new()));
        }

        let mut search = Search {
            domains: p.scope.variables.iter().map(|v| v.domain().len()).collect(),
            buckets,
            values: vec![0; n],
            stats,
            deadline: self.budget.map(|b| (start, b)),
            ticks: 0,
        };
        Ok(if search.descend(0)? {
            Some(search.values)
        } else {
            None
        })
    }
}

struct Search<'p, 's> {
    domains: Vec<usize>,
    buckets: Vec<Vec<&'p CompiledExpr>>,
    values: Vec<usize>,
    stats: &'s mut CheckStats,
    deadline: Option<(Instant, Duration)>,
    ticks: u32,
}

impl Search<'_, '_> {
    fn descend(&mut self, depth: usize) -> Result<bool, SolveError> {
        for value in 0..self.domains[depth] {
            self.tick()?;
            self.values[depth] = value;
            if self.node_ok(depth)
                && (depth + 1 == self.domains.len() || self.descend(depth + 1)?)
            {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn node_ok(&mut self, depth: usize) -> bool {
        for e in &self.buckets[depth] {
            self.stats.expr_evals += 1;
            if !e.eval_indices(&self.values) {
                return false;
            }
        }
        true
    }

    fn tick(&mut self) -> Result<(), SolveError> {
        if let Some((start, budget)) = self.deadline {
            self.ticks += 1;
            if self.ticks.is_multiple_of(BUDGET_POLL) && start.elapsed() > budget {
                return Err(SolveError::BudgetExceeded(budget));
            }
        }
        Ok(())
    }
}

/// Unbudgeted check.
pub fn is_consistent(p: &ConsistencyProblem<'_>, stats: &mut CheckStats) -> bool {
    match Solver::new().is_consistent(p, stats) {
        Ok(b) => b,
        Err(SolveError::BudgetExceeded(_)) => unreachable!("no budget configured"),
    }
}

/// Unbudgeted solution search.
pub fn find_solution(p: &ConsistencyProblem<'_>, stats: &mut CheckStats) -> Option<Assignment> {
    match Solver::new().find_solution(p, stats) {
        Ok(a) => a,
        Err(SolveError::BudgetExceeded(_)) => unreachable!("no budget configured"),
    }
}
