#![allow(dead_code)]

use corediag::model::{Assignment, Constraint, Expr, KnowledgeBase, Variable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_vars: usize,
    pub max_domain: usize,
    pub max_constraints: usize,
    /// Keep only constraints satisfied by a hidden assignment.
    pub planted: bool,
}

impl Shape {
    pub const SMALL: Shape = Shape {
        max_vars: 4,
        max_domain: 3,
        max_constraints: 8,
        planted: true,
    };
}

fn random_atom(rng: &mut ChaCha8Rng, vars: &[Variable]) -> Expr {
    let v = &vars[rng.random_range(0..vars.len())];
    let value = v.domain()[rng.random_range(0..v.domain().len())].clone();
    if rng.random_bool(0.7) {
        Expr::eq(v.name(), value)
    } else {
        Expr::neq(v.name(), value)
    }
}

pub fn random_expr(rng: &mut ChaCha8Rng, vars: &[Variable], depth: u32) -> Expr {
    if depth == 0 || rng.random_bool(0.3) {
        return random_atom(rng, vars);
    }
    match rng.random_range(0..4) {
        0 => Expr::not(random_expr(rng, vars, depth - 1)),
        1 => Expr::And(
            (0..rng.random_range(2..=3))
                .map(|_| random_expr(rng, vars, depth - 1))
                .collect(),
        ),
        2 => Expr::Or(
            (0..rng.random_range(2..=3))
                .map(|_| random_expr(rng, vars, depth - 1))
                .collect(),
        ),
        _ => Expr::implies(
            random_expr(rng, vars, depth - 1),
            random_expr(rng, vars, depth - 1),
        ),
    }
}

pub fn random_vars(rng: &mut ChaCha8Rng, shape: &Shape) -> Vec<Variable> {
    let n = rng.random_range(1..=shape.max_vars);
    (0..n)
        .map(|i| {
            let d = rng.random_range(1..=shape.max_domain);
            Variable::new(format!("x{i}"), (0..d).map(|j| format!("v{j}"))).unwrap()
        })
        .collect()
}

/// A random KB. With `shape.planted` the KB is satisfiable by construction.
/// Some constraints are copies or weakenings of earlier ones so that
/// redundancy is common.
pub fn random_kb(seed: u64, shape: &Shape) -> KnowledgeBase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = random_vars(&mut rng, shape);
    let planted: Assignment = vars
        .iter()
        .map(|v| {
            (
                v.name().to_string(),
                v.domain()[rng.random_range(0..v.domain().len())].clone(),
            )
        })
        .collect();
    let target = rng.random_range(1..=shape.max_constraints);
    let mut exprs: Vec<Expr> = Vec::new();
    let mut attempts = 0;
    while exprs.len() < target && attempts < 50 * target {
        attempts += 1;
        let e = match rng.random_range(0..10) {
            0 if !exprs.is_empty() => exprs[rng.random_range(0..exprs.len())].clone(),
            1 if !exprs.is_empty() => {
                let base = exprs[rng.random_range(0..exprs.len())].clone();
                Expr::Or(vec![base, random_expr(&mut rng, &vars, 1)])
            }
            _ => random_expr(&mut rng, &vars, 2),
        };
        if !shape.planted || e.eval(&planted).unwrap() {
            exprs.push(e);
        }
    }
    let constraints = exprs
        .into_iter()
        .enumerate()
        .map(|(i, e)| Constraint::new(format!("k{i}"), e))
        .collect();
    KnowledgeBase::new(vars, constraints).unwrap()
}

/// Every complete assignment, first variable most significant.
pub fn all_assignments(vars: &[Variable]) -> Vec<Assignment> {
    let mut out = vec![Assignment::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|a| {
                v.domain()
                    .iter()
                    .map(move |val| a.clone().with(v.name(), val.clone()))
            })
            .collect();
    }
    out
}

pub fn brute_satisfiable(vars: &[Variable], exprs: &[Expr]) -> bool {
    all_assignments(vars)
        .iter()
        .any(|a| exprs.iter().all(|e| e.eval(a).unwrap()))
}

/// `subset ∪ {¬kb}` has no model, by enumeration.
pub fn brute_preserves(kb: &KnowledgeBase, subset: &[String]) -> bool {
    let members: Vec<&Expr> = kb
        .constraints()
        .iter()
        .filter(|c| subset.contains(&c.label))
        .map(|c| &c.expr)
        .collect();
    all_assignments(kb.variables()).iter().all(|a| {
        !members.iter().all(|e| e.eval(a).unwrap())
            || kb.constraints().iter().all(|c| c.expr.eval(a).unwrap())
    })
}

pub fn brute_is_minimal_core(kb: &KnowledgeBase, subset: &[String]) -> bool {
    brute_preserves(kb, subset)
        && subset.iter().all(|drop| {
            let rest: Vec<String> = subset.iter().filter(|l| *l != drop).cloned().collect();
            !brute_preserves(kb, &rest)
        })
}

pub fn exprs(kb: &KnowledgeBase) -> Vec<Expr> {
    kb.constraints().iter().map(|c| c.expr.clone()).collect()
}
