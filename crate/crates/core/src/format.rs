//! Line-oriented knowledge-base text format.
//!
//! ```text
//! var type {city, limo, combi, xdrive}
//! constraint c1: 4-wheel = yes -> type = xdrive
//! ```
//!
//! `->` is right-associative and binds loosest, then `|`, then `&`, then `!`.
//! `#` starts a comment, except when it is glued to an identifier and followed
//! by digits: that is a copy suffix of a constraint label (`c1#2`).

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};

use crate::model::{is_identifier, CmpOp, Constraint, Expr, KnowledgeBase, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lex,
    Syntax,
    UnknownVariable,
    UnknownValue,
    DuplicateName,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    pub message: String,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn new(line: usize, column: usize, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
            kind,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LBrace,
    RBrace,
    Comma,
    Colon,
    LParen,
    RParen,
    Eq,
    Neq,
    Bang,
    Amp,
    Pipe,
    Arrow,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Neq => "`!=`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

/// Tokens paired with their 1-based column.
fn lex_line(line: &str, lineno: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let next = chars.get(i + 1).copied();
        match c {
            ' ' | '\t' | '\r' => i += 1,
            '#' => break,
            '{' | '}' | ',' | ':' | '(' | ')' | '=' | '&' | '|' => {
                toks.push((
                    match c {
                        '{' => Tok::LBrace,
                        '}' => Tok::RBrace,
                        ',' => Tok::Comma,
                        ':' => Tok::Colon,
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        '=' => Tok::Eq,
                        '&' => Tok::Amp,
                        _ => Tok::Pipe,
                    },
                    col,
                ));
                i += 1;
            }
            '!' if next == Some('=') => {
                toks.push((Tok::Neq, col));
                i += 2;
            }
            '!' => {
                toks.push((Tok::Bang, col));
                i += 1;
            }
            '-' if next == Some('>') => {
                toks.push((Tok::Arrow, col));
                i += 2;
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && is_ident_char(chars[i])
                    && !(chars[i] == '-' && chars.get(i + 1) == Some(&'>'))
                {
                    i += 1;
                }
                // copy suffixes: `#` glued to an identifier and followed by digits
                while i + 1 < chars.len() && chars[i] == '#' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(ParseError::new(
                    lineno,
                    col,
                    ParseErrorKind::Lex,
                    format!("unexpected character `{other}`"),
                ));
            }
        }
    }
    Ok(toks)
}

/// An atom occurrence with the columns of its variable and value tokens.
struct AtomRef {
    var: String,
    var_col: usize,
    value: String,
    value_col: usize,
}

struct LineParser<'t> {
    toks: &'t [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
    atoms: Vec<AtomRef>,
}

impl<'t> LineParser<'t> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        let found = self
            .peek()
            .map_or_else(|| "end of line".to_string(), Tok::describe);
        ParseError::new(
            self.line,
            self.col(),
            ParseErrorKind::Syntax,
            format!("{}, found {found}", msg.into()),
        )
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {}", tok.describe())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        match self.toks.get(self.pos) {
            Some((Tok::Ident(s), col)) => {
                self.pos += 1;
                Ok((s.clone(), *col))
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    /// A plain identifier, i.e. without copy suffixes.
    fn name(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        let (s, col) = self.ident(what)?;
        if !is_identifier(&s) {
            return Err(ParseError::new(
                self.line,
                col,
                ParseErrorKind::Syntax,
                format!("`{s}` is not a valid {what}"),
            ));
        }
        Ok((s, col))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("expected end of line")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.or_expr()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.expr()?;
            return Ok(Expr::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or_expr(&mut self) -> Result<Expr, ParseError> {
        let mut items = vec![self.and_expr()?];
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            items.push(self.and_expr()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Or(items)
        })
    }

    fn and_expr(&mut self) -> Result<Expr, ParseError> {
        let mut items = vec![self.unary()?];
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::And(items)
        })
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Expr::not(self.unary()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::Ident(_)) => self.atom(),
            _ => Err(self.error("expected an atom, `!` or `(`")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (var, var_col) = self.name("variable name")?;
        let op = match self.peek() {
            Some(Tok::Eq) => CmpOp::Eq,
            Some(Tok::Neq) => CmpOp::Neq,
            _ => return Err(self.error("expected `=` or `!=`")),
        };
        self.pos += 1;
        let (value, value_col) = self.name("value")?;
        self.atoms.push(AtomRef {
            var: var.clone(),
            var_col,
            value: value.clone(),
            value_col,
        });
        Ok(Expr::Atom { var, op, value })
    }
}

struct VarDecl {
    line: usize,
    name: String,
    name_col: usize,
    values: Vec<(String, usize)>,
}

struct ConstraintDecl {
    line: usize,
    label: String,
    label_col: usize,
    expr: Expr,
    atoms: Vec<AtomRef>,
}

enum Decl {
    Var(VarDecl),
    Constraint(ConstraintDecl),
}

fn parse_line(toks: &[(Tok, usize)], line: usize, end_col: usize) -> Result<Decl, ParseError> {
    let mut p = LineParser {
        toks,
        pos: 0,
        line,
        end_col,
        atoms: Vec::new(),
    };
    let (keyword, _) = p.ident("`var` or `constraint`")?;
    match keyword.as_str() {
        "var" => {
            let (name, name_col) = p.name("variable name")?;
            p.expect(Tok::LBrace)?;
            let mut values = vec![p.name("value")?];
            while p.peek() == Some(&Tok::Comma) {
                p.pos += 1;
                values.push(p.name("value")?);
            }
            p.expect(Tok::RBrace)?;
            p.finish()?;
            Ok(Decl::Var(VarDecl {
                line,
                name,
                name_col,
                values,
            }))
        }
        "constraint" => {
            let (label, label_col) = p.ident("constraint label")?;
            p.expect(Tok::Colon)?;
            let expr = p.expr()?;
            p.finish()?;
            Ok(Decl::Constraint(ConstraintDecl {
                line,
                label,
                label_col,
                expr,
                atoms: p.atoms,
            }))
        }
        _ => Err(ParseError::new(
            line,
            toks[0].1,
            ParseErrorKind::Syntax,
            format!("expected `var` or `constraint`, found `{keyword}`"),
        )),
    }
}

/// Parses a complete knowledge base. On failure every detected error is
/// returned, in source order.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, Vec<ParseError>> {
    parse_with_base(text, &[])
}

/// Parses a requirements file against an existing KB. The result holds the
/// base variables (plus any the file declares) and only the file's
/// constraints.
pub fn parse_requirements(
    text: &str,
    base: &KnowledgeBase,
) -> Result<KnowledgeBase, Vec<ParseError>> {
    parse_with_base(text, base.variables())
}

fn parse_with_base(text: &str, base: &[Variable]) -> Result<KnowledgeBase, Vec<ParseError>> {
    let mut errors = Vec::new();
    let mut decls = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = match lex_line(raw, line) {
            Ok(t) => t,
            Err(e) => {
                errors.push(e);
                continue;
            }
        };
        if toks.is_empty() {
            continue;
        }
        match parse_line(&toks, line, raw.chars().count() + 1) {
            Ok(d) => decls.push(d),
            Err(e) => errors.push(e),
        }
    }

    let mut variables: Vec<Variable> = base.to_vec();
    for d in &decls {
        let Decl::Var(v) = d else { continue };
        if variables.iter().any(|x| x.name() == v.name) {
            errors.push(ParseError::new(
                v.line,
                v.name_col,
                ParseErrorKind::DuplicateName,
                format!("variable `{}` is already declared", v.name),
            ));
            continue;
        }
        let mut seen = HashSet::new();
        let mut ok = true;
        for (value, col) in &v.values {
            if !seen.insert(value.as_str()) {
                errors.push(ParseError::new(
                    v.line,
                    *col,
                    ParseErrorKind::DuplicateName,
                    format!("value `{value}` repeats in the domain of `{}`", v.name),
                ));
                ok = false;
            }
        }
        if ok {
            let var = Variable::new(v.name.clone(), v.values.iter().map(|(s, _)| s.clone()))
                .expect("names and domain checked by the parser");
            variables.push(var);
        }
    }

    let table: HashMap<&str, &Variable> = variables.iter().map(|v| (v.name(), v)).collect();
    let mut labels = HashSet::new();
    let mut constraints = Vec::new();
    for d in decls {
        let Decl::Constraint(c) = d else { continue };
        let mut ok = true;
        if !labels.insert(c.label.clone()) {
            errors.push(ParseError::new(
                c.line,
                c.label_col,
                ParseErrorKind::DuplicateName,
                format!("constraint label `{}` is already used", c.label),
            ));
            ok = false;
        }
        for a in &c.atoms {
            match table.get(a.var.as_str()) {
                None => {
                    errors.push(ParseError::new(
                        c.line,
                        a.var_col,
                        ParseErrorKind::UnknownVariable,
                        format!("unknown variable `{}`", a.var),
                    ));
                    ok = false;
                }
                Some(v) if v.position(&a.value).is_none() => {
                    errors.push(ParseError::new(
                        c.line,
                        a.value_col,
                        ParseErrorKind::UnknownValue,
                        format!("`{}` is not in the domain of `{}`", a.value, a.var),
                    ));
                    ok = false;
                }
                Some(_) => {}
            }
        }
        if ok {
            constraints.push(Constraint::new(c.label, c.expr));
        }
    }

    if !errors.is_empty() {
        errors.sort_by_key(|e| (e.line, e.column));
        return Err(errors);
    }
    drop(table);
    KnowledgeBase::new(variables, constraints)
        .map_err(|e| vec![ParseError::new(1, 1, ParseErrorKind::Syntax, e.to_string())])
}

/// Renders `kb` in the text format; `parse_kb` reads it back unchanged.
pub fn serialize_kb(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    for v in kb.variables() {
        let _ = writeln!(out, "var {} {{{}}}", v.name(), v.domain().join(", "));
    }
    if !kb.variables().is_empty() && !kb.constraints().is_empty() {
        out.push('\n');
    }
    for c in kb.constraints() {
        let _ = writeln!(out, "constraint {}: {}", c.label, render_expr(&c.expr));
    }
    out
}

/// Constraint lines only, for requirement files.
pub fn serialize_constraints(constraints: &[Constraint]) -> String {
    constraints
        .iter()
        .map(|c| format!("constraint {}: {}\n", c.label, render_expr(&c.expr)))
        .collect()
}

pub fn render_expr(expr: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, expr, 0);
    out
}

fn precedence(expr: &Expr) -> u8 {
    match expr {
        Expr::Implies(..) => 0,
        Expr::Or(_) => 1,
        Expr::And(_) => 2,
        Expr::Not(_) | Expr::Atom { .. } => 3,
    }
}

fn write_expr(out: &mut String, expr: &Expr, min: u8) {
    let parens = precedence(expr) < min;
    if parens {
        out.push('(');
    }
    match expr {
        Expr::Atom { var, op, value } => {
            let _ = write!(out, "{var} {} {value}", op.symbol());
        }
        Expr::Not(child) => {
            out.push('!');
            write_expr(out, child, 3);
        }
        Expr::And(children) | Expr::Or(children) => {
            let (sep, level) = if matches!(expr, Expr::And(_)) {
                (" & ", 3)
            } else {
                (" | ", 2)
            };
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                write_expr(out, c, level);
            }
        }
        Expr::Implies(p, q) => {
            write_expr(out, p, 1);
            out.push_str(" -> ");
            write_expr(out, q, 0);
        }
    }
    if parens {
        out.push(')');
    }
}
