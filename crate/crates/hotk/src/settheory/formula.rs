//! The untyped set-theoretic language: `=`, `∈`, connectives, quantifiers,
//! `∈`-bounded quantifiers and the macros `⊆`, `Lev`, `Hist`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Serialize, Serializer};

use super::graph::MembershipGraph;
use super::SetError;
use crate::kernel::{Cursor, KernelError, Quant, Tok};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SetFormula {
    Eq(String, String),
    In(String, String),
    Subset(String, String),
    Level(String),
    History(String),
    Not(Box<SetFormula>),
    And(Box<SetFormula>, Box<SetFormula>),
    Or(Box<SetFormula>, Box<SetFormula>),
    Implies(Box<SetFormula>, Box<SetFormula>),
    Iff(Box<SetFormula>, Box<SetFormula>),
    Forall(String, Box<SetFormula>),
    Exists(String, Box<SetFormula>),
    /// `(∀v ∈ b)φ` or `(∃v ∈ b)φ`.
    Bounded {
        quant: Quant,
        var: String,
        bound: String,
        body: Box<SetFormula>,
    },
}

impl SetFormula {
    pub fn eq(a: &str, b: &str) -> Self {
        SetFormula::Eq(a.into(), b.into())
    }

    pub fn mem(a: &str, b: &str) -> Self {
        SetFormula::In(a.into(), b.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        SetFormula::Not(Box::new(self))
    }

    pub fn and(self, o: Self) -> Self {
        SetFormula::And(Box::new(self), Box::new(o))
    }

    pub fn or(self, o: Self) -> Self {
        SetFormula::Or(Box::new(self), Box::new(o))
    }

    pub fn implies(self, o: Self) -> Self {
        SetFormula::Implies(Box::new(self), Box::new(o))
    }

    pub fn iff(self, o: Self) -> Self {
        SetFormula::Iff(Box::new(self), Box::new(o))
    }

    pub fn forall(v: &str, body: Self) -> Self {
        SetFormula::Forall(v.into(), Box::new(body))
    }

    pub fn exists(v: &str, body: Self) -> Self {
        SetFormula::Exists(v.into(), Box::new(body))
    }

    pub fn all_in(v: &str, bound: &str, body: Self) -> Self {
        SetFormula::Bounded { quant: Quant::All, var: v.into(), bound: bound.into(), body: Box::new(body) }
    }

    pub fn some_in(v: &str, bound: &str, body: Self) -> Self {
        SetFormula::Bounded { quant: Quant::Some, var: v.into(), bound: bound.into(), body: Box::new(body) }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut see = |v: &String, bound: &Vec<String>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            SetFormula::Eq(a, b) | SetFormula::In(a, b) | SetFormula::Subset(a, b) => {
                see(a, bound);
                see(b, bound);
            }
            SetFormula::Level(a) | SetFormula::History(a) => see(a, bound),
            SetFormula::Not(a) => a.collect_free(bound, out),
            SetFormula::And(a, b) | SetFormula::Or(a, b) | SetFormula::Implies(a, b) | SetFormula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            SetFormula::Forall(v, body) | SetFormula::Exists(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            SetFormula::Bounded { var, bound: b, body, .. } => {
                see(b, bound);
                bound.push(var.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name, free or bound.
    pub fn names(&self) -> HashSet<String> {
        let mut out = HashSet::new();
        self.visit_names(&mut |n| {
            out.insert(n.to_string());
        });
        out
    }

    fn visit_names(&self, f: &mut impl FnMut(&str)) {
        match self {
            SetFormula::Eq(a, b) | SetFormula::In(a, b) | SetFormula::Subset(a, b) => {
                f(a);
                f(b);
            }
            SetFormula::Level(a) | SetFormula::History(a) => f(a),
            SetFormula::Not(a) => a.visit_names(f),
            SetFormula::And(a, b) | SetFormula::Or(a, b) | SetFormula::Implies(a, b) | SetFormula::Iff(a, b) => {
                a.visit_names(f);
                b.visit_names(f);
            }
            SetFormula::Forall(v, body) | SetFormula::Exists(v, body) => {
                f(v);
                body.visit_names(f);
            }
            SetFormula::Bounded { var, bound, body, .. } => {
                f(var);
                f(bound);
                body.visit_names(f);
            }
        }
    }

    pub fn has_macros(&self) -> bool {
        match self {
            SetFormula::Subset(..) | SetFormula::Level(_) | SetFormula::History(_) => true,
            SetFormula::Eq(..) | SetFormula::In(..) => false,
            SetFormula::Not(a) => a.has_macros(),
            SetFormula::And(a, b) | SetFormula::Or(a, b) | SetFormula::Implies(a, b) | SetFormula::Iff(a, b) => {
                a.has_macros() || b.has_macros()
            }
            SetFormula::Forall(_, b) | SetFormula::Exists(_, b) | SetFormula::Bounded { body: b, .. } => b.has_macros(),
        }
    }

    /// Unfold `⊆`, `Lev` and `Hist` into `∈`, `=` and quantifiers.
    pub fn expand(&self) -> SetFormula {
        let mut fresh = Names::avoiding(self.names());
        self.expand_with(&mut fresh)
    }

    fn expand_with(&self, fresh: &mut Names) -> SetFormula {
        let b = |f: &SetFormula, fresh: &mut Names| Box::new(f.expand_with(fresh));
        match self {
            SetFormula::Eq(..) | SetFormula::In(..) => self.clone(),
            SetFormula::Subset(x, y) => subset_def(fresh, x, y),
            SetFormula::Level(s) => level_def(fresh, s).expand_with(fresh),
            SetFormula::History(h) => history_def(fresh, h).expand_with(fresh),
            SetFormula::Not(a) => SetFormula::Not(b(a, fresh)),
            SetFormula::And(x, y) => SetFormula::And(b(x, fresh), b(y, fresh)),
            SetFormula::Or(x, y) => SetFormula::Or(b(x, fresh), b(y, fresh)),
            SetFormula::Implies(x, y) => SetFormula::Implies(b(x, fresh), b(y, fresh)),
            SetFormula::Iff(x, y) => SetFormula::Iff(b(x, fresh), b(y, fresh)),
            SetFormula::Forall(v, body) => SetFormula::Forall(v.clone(), b(body, fresh)),
            SetFormula::Exists(v, body) => SetFormula::Exists(v.clone(), b(body, fresh)),
            SetFormula::Bounded { quant, var, bound, body } => {
                SetFormula::Bounded { quant: *quant, var: var.clone(), bound: bound.clone(), body: b(body, fresh) }
            }
        }
    }

    /// Rename free occurrences of `from` to `to`; `to` must not be bound in `self`.
    pub fn rename_free(&self, from: &str, to: &str) -> SetFormula {
        let r = |s: &String| if s == from { to.to_string() } else { s.clone() };
        let b = |f: &SetFormula| Box::new(f.rename_free(from, to));
        match self {
            SetFormula::Eq(x, y) => SetFormula::Eq(r(x), r(y)),
            SetFormula::In(x, y) => SetFormula::In(r(x), r(y)),
            SetFormula::Subset(x, y) => SetFormula::Subset(r(x), r(y)),
            SetFormula::Level(x) => SetFormula::Level(r(x)),
            SetFormula::History(x) => SetFormula::History(r(x)),
            SetFormula::Not(a) => SetFormula::Not(b(a)),
            SetFormula::And(x, y) => SetFormula::And(b(x), b(y)),
            SetFormula::Or(x, y) => SetFormula::Or(b(x), b(y)),
            SetFormula::Implies(x, y) => SetFormula::Implies(b(x), b(y)),
            SetFormula::Iff(x, y) => SetFormula::Iff(b(x), b(y)),
            SetFormula::Forall(v, _) | SetFormula::Exists(v, _) if v == from => self.clone(),
            SetFormula::Forall(v, body) => SetFormula::Forall(v.clone(), b(body)),
            SetFormula::Exists(v, body) => SetFormula::Exists(v.clone(), b(body)),
            SetFormula::Bounded { quant, var, bound, body } => SetFormula::Bounded {
                quant: *quant,
                var: var.clone(),
                bound: r(bound),
                body: if var == from { body.clone() } else { b(body) },
            },
        }
    }

    /// Rough count of atom evaluations over a graph with `n` nodes whose
    /// largest member list has `deg` entries.
    pub fn cost(&self, n: usize, deg: usize) -> u128 {
        let n = n.max(1) as u128;
        let deg = deg.max(1) as u128;
        match self {
            SetFormula::Eq(..) | SetFormula::In(..) => 1,
            SetFormula::Subset(..) => deg,
            SetFormula::Level(_) | SetFormula::History(_) => self.expand().cost(n as usize, deg as usize),
            SetFormula::Not(a) => a.cost(n as usize, deg as usize),
            SetFormula::And(a, b) | SetFormula::Or(a, b) | SetFormula::Implies(a, b) | SetFormula::Iff(a, b) => {
                a.cost(n as usize, deg as usize).saturating_add(b.cost(n as usize, deg as usize))
            }
            SetFormula::Forall(_, b) | SetFormula::Exists(_, b) => n.saturating_mul(b.cost(n as usize, deg as usize)),
            SetFormula::Bounded { body, .. } => deg.saturating_mul(body.cost(n as usize, deg as usize)),
        }
    }
}

struct Names {
    used: HashSet<String>,
}

impl Names {
    fn avoiding(used: HashSet<String>) -> Self {
        Names { used }
    }

    fn name(&mut self, base: &str) -> String {
        for i in 1.. {
            let cand = format!("{base}{i}");
            if !self.used.contains(&cand) {
                self.used.insert(cand.clone());
                return cand;
            }
        }
        unreachable!()
    }
}

fn subset_def(fresh: &mut Names, x: &str, y: &str) -> SetFormula {
    let v = fresh.name("v");
    SetFormula::all_in(&v, x, SetFormula::mem(&v, y))
}

/// `(∀a ∈ h)∀x(x ∈ a ↔ (∃c ∈ h)(x ⊆ c ∧ c ∈ a))`.
fn history_def(fresh: &mut Names, h: &str) -> SetFormula {
    let (a, x, c) = (fresh.name("a"), fresh.name("x"), fresh.name("c"));
    let inner = SetFormula::some_in(&c, h, SetFormula::Subset(x.clone(), c.clone()).and(SetFormula::mem(&c, &a)));
    SetFormula::all_in(&a, h, SetFormula::forall(&x, SetFormula::mem(&x, &a).iff(inner)))
}

/// `∃h(Hist(h) ∧ ∀x(x ∈ s ↔ ∃c(x ⊆ c ∧ c ∈ h)))`.
fn level_def(fresh: &mut Names, s: &str) -> SetFormula {
    let (h, x, c) = (fresh.name("h"), fresh.name("x"), fresh.name("c"));
    let body = SetFormula::forall(
        &x,
        SetFormula::mem(&x, s)
            .iff(SetFormula::exists(&c, SetFormula::Subset(x.clone(), c.clone()).and(SetFormula::mem(&c, &h)))),
    );
    SetFormula::exists(&h, SetFormula::History(h.clone()).and(body))
}

/// The named axioms of the set-theoretic language.
pub mod axioms {
    use super::SetFormula;

    pub fn extensionality() -> SetFormula {
        let same = SetFormula::forall("x", SetFormula::mem("x", "a").iff(SetFormula::mem("x", "b")));
        SetFormula::forall("a", SetFormula::forall("b", same.implies(SetFormula::eq("a", "b"))))
    }

    /// `∀p… ∀a ∃b ∀x(x ∈ b ↔ (φ ∧ x ∈ a))`, with `x` the separated variable
    /// and every other free variable of `φ` universally closed.
    pub fn separation(phi: &SetFormula, x: &str) -> SetFormula {
        let mut names = phi.names();
        names.insert(x.to_string());
        let mut pick = |base: &str| -> String {
            let mut cand = base.to_string();
            let mut i = 1;
            while names.contains(&cand) {
                cand = format!("{base}{i}");
                i += 1;
            }
            names.insert(cand.clone());
            cand
        };
        let (a, b) = (pick("a"), pick("b"));
        let body = SetFormula::forall(x, SetFormula::mem(x, &b).iff(phi.clone().and(SetFormula::mem(x, &a))));
        let mut out = SetFormula::forall(&a, SetFormula::exists(&b, body));
        for p in phi.free_vars().into_iter().rev().filter(|p| p != x) {
            out = SetFormula::forall(&p, out);
        }
        out
    }

    /// `∀a(∃s ⊇ a)Lev(s)`.
    pub fn stratification() -> SetFormula {
        SetFormula::forall(
            "a",
            SetFormula::exists("s", SetFormula::Subset("a".into(), "s".into()).and(SetFormula::Level("s".into()))),
        )
    }

    pub fn endless() -> SetFormula {
        SetFormula::forall("a", SetFormula::exists("b", SetFormula::mem("a", "b")))
    }

    /// `∃a(∃x x ∈ a ∧ (∀x ∈ a)∃y(x ∈ y ∈ a))`.
    pub fn infinity() -> SetFormula {
        let nonempty = SetFormula::exists("x", SetFormula::mem("x", "a"));
        let step = SetFormula::all_in(
            "x",
            "a",
            SetFormula::exists("y", SetFormula::mem("x", "y").and(SetFormula::mem("y", "a"))),
        );
        SetFormula::exists("a", nonempty.and(step))
    }
}

// printing

fn prec(f: &SetFormula) -> u8 {
    match f {
        SetFormula::Iff(..) => 1,
        SetFormula::Implies(..) => 2,
        SetFormula::Or(..) => 3,
        SetFormula::And(..) => 4,
        SetFormula::Not(_) => 5,
        SetFormula::Forall(..) | SetFormula::Exists(..) | SetFormula::Bounded { .. } => 0,
        _ => 6,
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, x: &SetFormula, min: u8) -> fmt::Result {
    if prec(x) < min {
        write!(f, "({x})")
    } else {
        write!(f, "{x}")
    }
}

impl fmt::Display for SetFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &SetFormula, op: &str, b: &SetFormula, p: u8, left: bool| {
            // left-associative operators accept their own level on the left
            write_operand(f, a, if left { p } else { p + 1 })?;
            write!(f, " {op} ")?;
            write_operand(f, b, if left { p + 1 } else { p }.max(1))
        };
        match self {
            SetFormula::Eq(a, b) => write!(f, "{a} = {b}"),
            SetFormula::In(a, b) => write!(f, "{a} in {b}"),
            SetFormula::Subset(a, b) => write!(f, "{a} sub {b}"),
            SetFormula::Level(a) => write!(f, "level({a})"),
            SetFormula::History(a) => write!(f, "history({a})"),
            SetFormula::Not(a) => {
                f.write_str("~")?;
                write_operand(f, a, 5)
            }
            SetFormula::And(a, b) => bin(f, a, "&", b, 4, true),
            SetFormula::Or(a, b) => bin(f, a, "|", b, 3, true),
            SetFormula::Implies(a, b) => bin(f, a, "->", b, 2, false),
            SetFormula::Iff(a, b) => bin(f, a, "<->", b, 1, false),
            SetFormula::Forall(v, b) => write!(f, "all {v}. {b}"),
            SetFormula::Exists(v, b) => write!(f, "some {v}. {b}"),
            SetFormula::Bounded { quant, var, bound, body } => {
                let q = if *quant == Quant::All { "all" } else { "some" };
                write!(f, "{q} {var} in {bound}. {body}")
            }
        }
    }
}

impl Serialize for SetFormula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

// parsing

const KEYWORDS: [&str; 4] = ["all", "some", "in", "sub"];

struct SetParser {
    cur: Cursor,
}

pub fn parse_set_formula(text: &str) -> Result<SetFormula, KernelError> {
    let mut p = SetParser { cur: Cursor::new(text)? };
    if p.cur.peek().is_none() {
        return Err(p.cur.error("empty formula"));
    }
    let f = p.iff()?;
    p.cur.finish()?;
    Ok(f)
}

/// One formula per non-blank line; `#` starts a comment.
pub fn parse_set_corpus(text: &str) -> Result<Vec<SetFormula>, KernelError> {
    crate::kernel::hol_lines(text)
        .map(|(line, s)| {
            parse_set_formula(s).map_err(|e| match e {
                KernelError::Parse { pos, msg } => KernelError::Parse { pos, msg: format!("line {line}: {msg}") },
                other => other,
            })
        })
        .collect()
}

impl SetParser {
    fn iff(&mut self) -> Result<SetFormula, KernelError> {
        let a = self.implies()?;
        if self.cur.eat(&Tok::DArrow) {
            return Ok(a.iff(self.iff()?));
        }
        Ok(a)
    }

    fn implies(&mut self) -> Result<SetFormula, KernelError> {
        let a = self.or()?;
        if self.cur.eat(&Tok::Arrow) {
            return Ok(a.implies(self.implies()?));
        }
        Ok(a)
    }

    fn or(&mut self) -> Result<SetFormula, KernelError> {
        let mut a = self.and()?;
        while self.cur.eat(&Tok::Bar) {
            a = a.or(self.and()?);
        }
        Ok(a)
    }

    fn and(&mut self) -> Result<SetFormula, KernelError> {
        let mut a = self.unary()?;
        while self.cur.eat(&Tok::Amp) {
            a = a.and(self.unary()?);
        }
        Ok(a)
    }

    fn unary(&mut self) -> Result<SetFormula, KernelError> {
        if self.cur.eat(&Tok::Tilde) {
            return Ok(self.unary()?.not());
        }
        if self.cur.at_keyword("all") || self.cur.at_keyword("some") {
            let quant = if self.cur.ident()? == "all" { Quant::All } else { Quant::Some };
            let var = self.var()?;
            let bound = if self.cur.at_keyword("in") {
                self.cur.bump();
                Some(self.var()?)
            } else {
                None
            };
            self.cur.expect(Tok::Dot)?;
            let body = Box::new(self.iff()?);
            return Ok(match (bound, quant) {
                (Some(bound), quant) => SetFormula::Bounded { quant, var, bound, body },
                (None, Quant::All) => SetFormula::Forall(var, body),
                (None, Quant::Some) => SetFormula::Exists(var, body),
            });
        }
        if self.cur.eat(&Tok::LParen) {
            let f = self.iff()?;
            self.cur.expect(Tok::RParen)?;
            return Ok(f);
        }
        for (kw, make) in [("level", SetFormula::Level as fn(String) -> SetFormula), ("history", SetFormula::History)] {
            if self.cur.at_keyword(kw) && self.cur.peek_at(1) == Some(&Tok::LParen) {
                self.cur.bump();
                self.cur.bump();
                let v = self.var()?;
                self.cur.expect(Tok::RParen)?;
                return Ok(make(v));
            }
        }
        let a = self.var()?;
        if self.cur.eat(&Tok::Equal) {
            return Ok(SetFormula::Eq(a, self.var()?));
        }
        if self.cur.eat(&Tok::NotEqual) {
            return Ok(SetFormula::Eq(a, self.var()?).not());
        }
        if self.cur.at_keyword("in") {
            self.cur.bump();
            return Ok(SetFormula::In(a, self.var()?));
        }
        if self.cur.at_keyword("sub") {
            self.cur.bump();
            return Ok(SetFormula::Subset(a, self.var()?));
        }
        Err(self.cur.error("expected `=`, `!=`, `in` or `sub`"))
    }

    fn var(&mut self) -> Result<String, KernelError> {
        if matches!(self.cur.peek(), Some(Tok::Ident(s)) if KEYWORDS.contains(&s.as_str())) {
            return Err(self.cur.error("expected a variable, found a keyword"));
        }
        let v = self.cur.ident()?;
        if self.cur.peek() == Some(&Tok::Caret) {
            return Err(self.cur.error("set-theoretic variables carry no type superscript"));
        }
        Ok(v)
    }
}

// evaluation over a membership graph

/// Truth of `f` in `g`, with free variables read from `env` (node names
/// resolve to themselves when not in `env`). Macros are unfolded first.
pub fn eval_in_graph(
    g: &MembershipGraph,
    f: &SetFormula,
    env: &BTreeMap<String, u32>,
    budget: usize,
) -> Result<bool, SetError> {
    let f = if f.has_macros() { f.expand() } else { f.clone() };
    let deg = g.all_members().iter().map(Vec::len).max().unwrap_or(0);
    let cost = f.cost(g.len(), deg);
    if cost > budget as u128 {
        return Err(SetError::Budget { needed: cost, budget });
    }
    let mut slots: Vec<(String, u32)> = Vec::new();
    for v in f.free_vars() {
        let node = match env.get(&v) {
            Some(&n) => n,
            None => g.index(&v).ok_or_else(|| SetError::Unbound(v.clone()))?,
        };
        slots.push((v, node));
    }
    Ok(GraphEval { g }.go(&f, &mut slots))
}

struct GraphEval<'g> {
    g: &'g MembershipGraph,
}

impl GraphEval<'_> {
    fn look(&self, env: &[(String, u32)], v: &str) -> u32 {
        env.iter().rev().find(|(n, _)| n == v).map(|&(_, x)| x).expect("free variables are bound up front")
    }

    fn go(&self, f: &SetFormula, env: &mut Vec<(String, u32)>) -> bool {
        match f {
            SetFormula::Eq(a, b) => self.look(env, a) == self.look(env, b),
            SetFormula::In(a, b) => self.g.contains(self.look(env, b), self.look(env, a)),
            SetFormula::Subset(a, b) => {
                let (a, b) = (self.look(env, a), self.look(env, b));
                self.g.members(a).iter().all(|&x| self.g.contains(b, x))
            }
            SetFormula::Level(_) | SetFormula::History(_) => unreachable!("macros are expanded before evaluation"),
            SetFormula::Not(a) => !self.go(a, env),
            SetFormula::And(a, b) => self.go(a, env) && self.go(b, env),
            SetFormula::Or(a, b) => self.go(a, env) || self.go(b, env),
            SetFormula::Implies(a, b) => !self.go(a, env) || self.go(b, env),
            SetFormula::Iff(a, b) => self.go(a, env) == self.go(b, env),
            SetFormula::Forall(v, body) => (0..self.g.len() as u32).all(|x| self.with(env, v, x, body)),
            SetFormula::Exists(v, body) => (0..self.g.len() as u32).any(|x| self.with(env, v, x, body)),
            SetFormula::Bounded { quant, var, bound, body } => {
                let ms = self.g.members(self.look(env, bound)).to_vec();
                match quant {
                    Quant::All => ms.into_iter().all(|x| self.with(env, var, x, body)),
                    Quant::Some => ms.into_iter().any(|x| self.with(env, var, x, body)),
                }
            }
        }
    }

    fn with(&self, env: &mut Vec<(String, u32)>, v: &str, x: u32, body: &SetFormula) -> bool {
        env.push((v.to_string(), x));
        let r = self.go(body, env);
        env.pop();
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn print_parse_roundtrip() {
        for s in [
            "all x. x = x",
            "all a. some b. all x. x in b <-> (x in a & ~x = a)",
            "(a in b -> b in c) -> a in c",
            "all v in x. v in y",
            "level(s) & a sub s",
            "(all x. x in a) | x = y",
        ] {
            let f = parse_set_formula(s).unwrap();
            assert_eq!(parse_set_formula(&f.to_string()).unwrap(), f, "{s}");
        }
        assert!(parse_set_formula("x^1 in y").is_err());
    }

    #[test]
    fn separation_closes_parameters() {
        let phi = parse_set_formula("x in p").unwrap();
        let s = axioms::separation(&phi, "x");
        assert_eq!(s.to_string(), "all p. all a. some b. all x. x in b <-> x in p & x in a");
    }
}
