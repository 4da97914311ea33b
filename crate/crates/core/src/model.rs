//! Configuration-task data model: finite-domain variables, constraint
//! expressions, knowledge bases and (partial) assignments.
//!
//! Everything here is immutable once built. A [`KnowledgeBase`] is validated
//! on construction, so any KB that exists satisfies the atom, naming and
//! uniqueness invariants.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("invalid constraint label `{0}`")]
    InvalidLabel(String),
    #[error("variable `{0}` has an empty domain")]
    EmptyDomain(String),
    #[error("value `{value}` appears twice in the domain of `{var}`")]
    DuplicateValue { var: String, value: String },
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
    #[error("constraint label `{0}` is used twice")]
    DuplicateLabel(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("value `{value}` is not in the domain of `{var}`")]
    UnknownValue { var: String, value: String },
    #[error("{0} node needs at least two children")]
    Arity(&'static str),
    #[error("variable `{0}` is not bound")]
    Unbound(String),
    #[error("cannot negate an empty constraint set")]
    EmptyNegation,
}

/// `[A-Za-z0-9_][A-Za-z0-9_-]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// An identifier optionally followed by `#<digits>` copy suffixes, e.g. `c1#2`.
pub fn is_label(s: &str) -> bool {
    let mut parts = s.split('#');
    let head = parts.next().unwrap_or_default();
    is_identifier(head) && parts.all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    name: String,
    domain: Vec<String>,
}

impl Variable {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        domain: impl IntoIterator<Item = S>,
    ) -> Result<Self, ModelError> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(ModelError::InvalidIdentifier(name));
        }
        let domain: Vec<String> = domain.into_iter().map(Into::into).collect();
        if domain.is_empty() {
            return Err(ModelError::EmptyDomain(name));
        }
        let mut seen = HashSet::new();
        for value in &domain {
            if !is_identifier(value) {
                return Err(ModelError::InvalidIdentifier(value.clone()));
            }
            if !seen.insert(value.as_str()) {
                return Err(ModelError::DuplicateValue {
                    var: name,
                    value: value.clone(),
                });
            }
        }
        Ok(Self { name, domain })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn position(&self, value: &str) -> Option<usize> {
        self.domain.iter().position(|v| v == value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    Neq,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Neq => "!=",
        }
    }
}

/// Boolean expression over `variable op value` atoms.
///
/// `Implies` and `Neq` are kept as first-class nodes so that text round-trips
/// without desugaring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Atom {
        var: String,
        op: CmpOp,
        value: String,
    },
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
    Implies(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eq(var: impl Into<String>, value: impl Into<String>) -> Self {
        Expr::Atom {
            var: var.into(),
            op: CmpOp::Eq,
            value: value.into(),
        }
    }

    pub fn neq(var: impl Into<String>, value: impl Into<String>) -> Self {
        Expr::Atom {
            var: var.into(),
            op: CmpOp::Neq,
            value: value.into(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(child: Expr) -> Self {
        Expr::Not(Box::new(child))
    }

    pub fn implies(antecedent: Expr, consequent: Expr) -> Self {
        Expr::Implies(Box::new(antecedent), Box::new(consequent))
    }

    /// Variables referenced by the atoms of this expression.
    pub fn free_vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Expr::Atom { var, .. } => {
                out.insert(var.as_str());
            }
            Expr::Not(child) => child.collect_vars(out),
            Expr::And(children) | Expr::Or(children) => {
                children.iter().for_each(|c| c.collect_vars(out))
            }
            Expr::Implies(p, q) => {
                p.collect_vars(out);
                q.collect_vars(out);
            }
        }
    }

    /// Evaluates under `a`. Every free variable must be bound.
    pub fn eval(&self, a: &Assignment) -> Result<bool, ModelError> {
        Ok(match self {
            Expr::Atom { var, op, value } => {
                let bound = a.get(var).ok_or_else(|| ModelError::Unbound(var.clone()))?;
                (bound == value) == (*op == CmpOp::Eq)
            }
            Expr::Not(child) => !child.eval(a)?,
            // Children are evaluated eagerly so unbound variables surface as
            // errors regardless of short-circuiting.
            Expr::And(children) => {
                let mut all = true;
                for c in children {
                    all &= c.eval(a)?;
                }
                all
            }
            Expr::Or(children) => {
                let mut any = false;
                for c in children {
                    any |= c.eval(a)?;
                }
                any
            }
            Expr::Implies(p, q) => {
                let p = p.eval(a)?;
                let q = q.eval(a)?;
                !p || q
            }
        })
    }

    /// Checks atoms and node arities against a variable table.
    pub fn validate(&self, vars: &HashMap<&str, &Variable>) -> Result<(), ModelError> {
        match self {
            Expr::Atom { var, value, .. } => {
                let v = vars
                    .get(var.as_str())
                    .ok_or_else(|| ModelError::UnknownVariable(var.clone()))?;
                if v.position(value).is_none() {
                    return Err(ModelError::UnknownValue {
                        var: var.clone(),
                        value: value.clone(),
                    });
                }
                Ok(())
            }
            Expr::Not(child) => child.validate(vars),
            Expr::And(children) | Expr::Or(children) => {
                if children.len() < 2 {
                    return Err(ModelError::Arity(if matches!(self, Expr::And(_)) {
                        "and"
                    } else {
                        "or"
                    }));
                }
                children.iter().try_for_each(|c| c.validate(vars))
            }
            Expr::Implies(p, q) => {
                p.validate(vars)?;
                q.validate(vars)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub label: String,
    pub expr: Expr,
}

impl Constraint {
    pub fn new(label: impl Into<String>, expr: Expr) -> Self {
        Self {
            label: label.into(),
            expr,
        }
    }
}

/// Ordered variables plus an ordered, labeled constraint list. Constraint
/// order is the preference order consulted by core extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeBase {
    variables: Vec<Variable>,
    constraints: Vec<Constraint>,
}

impl KnowledgeBase {
    pub fn new(variables: Vec<Variable>, constraints: Vec<Constraint>) -> Result<Self, ModelError> {
        let mut table = HashMap::new();
        for v in &variables {
            if table.insert(v.name(), v).is_some() {
                return Err(ModelError::DuplicateVariable(v.name().to_string()));
            }
        }
        let mut labels = HashSet::new();
        for c in &constraints {
            if !is_label(&c.label) {
                return Err(ModelError::InvalidLabel(c.label.clone()));
            }
            if !labels.insert(c.label.as_str()) {
                return Err(ModelError::DuplicateLabel(c.label.clone()));
            }
            c.expr.validate(&table)?;
        }
        Ok(Self {
            variables,
            constraints,
        })
    }

    pub fn empty() -> Self {
        Self {
            variables: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn variable(&self, name: &str) -> Option<&Variable> {
        self.variables.iter().find(|v| v.name() == name)
    }

    pub fn constraint(&self, label: &str) -> Option<&Constraint> {
        self.constraints.iter().find(|c| c.label == label)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.constraints.iter().map(|c| c.label.as_str()).collect()
    }

    /// Same variables, different constraint list (revalidated).
    pub fn with_constraints(&self, constraints: Vec<Constraint>) -> Result<Self, ModelError> {
        Self::new(self.variables.clone(), constraints)
    }

    /// Keeps the constraints whose labels are listed, in KB order.
    pub fn restrict_to<S: AsRef<str>>(&self, labels: &[S]) -> Self {
        let keep: HashSet<&str> = labels.iter().map(AsRef::as_ref).collect();
        Self {
            variables: self.variables.clone(),
            constraints: self
                .constraints
                .iter()
                .filter(|c| keep.contains(c.label.as_str()))
                .cloned()
                .collect(),
        }
    }
}

/// Variable name to value bindings; possibly partial.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    bindings: BTreeMap<String, String>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, var: impl Into<String>, value: impl Into<String>) -> Option<String> {
        self.bindings.insert(var.into(), value.into())
    }

    pub fn with(mut self, var: impl Into<String>, value: impl Into<String>) -> Self {
        self.bind(var, value);
        self
    }

    pub fn get(&self, var: &str) -> Option<&str> {
        self.bindings.get(var).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.bindings.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Fails if a bound variable is undeclared or bound outside its domain.
    pub fn check_domains(&self, kb: &KnowledgeBase) -> Result<(), ModelError> {
        for (var, value) in self.iter() {
            let v = kb
                .variable(var)
                .ok_or_else(|| ModelError::UnknownVariable(var.to_string()))?;
            if v.position(value).is_none() {
                return Err(ModelError::UnknownValue {
                    var: var.to_string(),
                    value: value.to_string(),
                });
            }
        }
        Ok(())
    }
}

impl<K: Into<String>, V: Into<String>> FromIterator<(K, V)> for Assignment {
    fn from_iter<T: IntoIterator<Item = (K, V)>>(iter: T) -> Self {
        Self {
            bindings: iter
                .into_iter()
                .map(|(k, v)| (k.into(), v.into()))
                .collect(),
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        write!(f, "}}")
    }
}

pub fn free_vars(expr: &Expr) -> BTreeSet<&str> {
    expr.free_vars()
}

pub fn eval(expr: &Expr, a: &Assignment) -> Result<bool, ModelError> {
    expr.eval(a)
}

pub fn is_complete(a: &Assignment, kb: &KnowledgeBase) -> bool {
    kb.variables().iter().all(|v| a.get(v.name()).is_some())
}

/// Complete, and every KB constraint plus every `extra` expression holds.
pub fn is_valid_configuration(a: &Assignment, kb: &KnowledgeBase, extra: &[Expr]) -> bool {
    is_complete(a, kb)
        && kb
            .constraints()
            .iter()
            .map(|c| &c.expr)
            .chain(extra)
            .all(|e| e.eval(a).unwrap_or(false))
}

/// `¬c1 ∨ … ∨ ¬cn`; a single constraint yields a bare negation.
pub fn negate_kb(constraints: &[Constraint]) -> Result<Expr, ModelError> {
    match constraints {
        [] => Err(ModelError::EmptyNegation),
        [only] => Ok(Expr::not(only.expr.clone())),
        many => Ok(Expr::Or(
            many.iter().map(|c| Expr::not(c.expr.clone())).collect(),
        )),
    }
}
