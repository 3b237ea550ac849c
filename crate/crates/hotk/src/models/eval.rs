//! Formula evaluation.
//!
//! Formulas are compiled against a model into a slot-addressed tree; `eq`,
//! `in`, `coext`, `coext_k`, `downeq` and bounded quantifiers are evaluated
//! directly from their defining clauses, with a cache for `eq`. Descriptions
//! and set macros are expanded first. [`eval_expanded`] evaluates the full
//! primitive expansion instead and serves as the reference.

use std::collections::{BTreeMap, HashMap};

use super::model::{Entity, Model};
use crate::kernel::{expand_all, expand_with, free_vars, BoundRel, ExpandOpts, Formula, Quant, Sugar, Symbol, Term};

pub type Assignment = BTreeMap<Symbol, Entity>;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("unassigned free variable `{0}`")]
    Unassigned(String),
    #[error("`{sym}` is assigned entity {entity}, which is not in its type's domain")]
    NotInDomain { sym: String, entity: Entity },
    #[error("type bound exceeded: evaluation needs type {needed} but the model has types 0..{height}")]
    TypeBound { needed: u32, height: u32 },
    #[error("transfinite type `{0}` cannot be evaluated in a finite model")]
    Transfinite(String),
    #[error("`up` is undefined on entity {entity} at type {ty}")]
    UpUndefined { ty: u32, entity: Entity },
    #[error("the model does not interpret `{0}`")]
    Uninterpreted(String),
    #[error("assignment space too large: {needed} > budget {budget}")]
    Budget { needed: u128, budget: usize },
}

#[derive(Clone, Debug)]
enum T {
    Slot(usize),
    Ent(Entity),
    Up(u32, Box<T>),
}

#[derive(Clone, Debug)]
enum Node {
    Apply(T, T),
    Eq(T, T),
    Down(u32, T, T),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Quant(bool, u32, Box<Node>),
    /// Indiscernibility at the given type.
    EqAt(u32, T, T),
    /// `a in b` witnessed at the given type.
    InAt(u32, T, T),
    /// Agreement on every type in the range.
    Coext(u32, u32, T, T),
    DownEq(u32, T, T),
    Bounded {
        all: bool,
        ty: u32,
        rel: Rel,
        bound: T,
        body: Box<Node>,
    },
}

#[derive(Clone, Copy, Debug)]
enum Rel {
    Eq(u32),
    In(u32),
}

struct Compiler<'a> {
    m: &'a Model,
    assignment: &'a Assignment,
    scope: Vec<Symbol>,
}

impl Compiler<'_> {
    fn fin(&self, t: crate::kernel::TypeIndex) -> Result<u32, EvalError> {
        let n = t.as_finite().ok_or_else(|| EvalError::Transfinite(t.to_string()))?;
        self.need(n)?;
        Ok(n)
    }

    fn need(&self, n: u32) -> Result<(), EvalError> {
        if n >= self.m.height() {
            return Err(EvalError::TypeBound { needed: n, height: self.m.height() });
        }
        Ok(())
    }

    fn term(&self, t: &Term) -> Result<T, EvalError> {
        match t {
            Term::Sym(s) => {
                self.fin(s.ty)?;
                if let Some(i) = self.scope.iter().rposition(|v| v == s) {
                    return Ok(T::Slot(i));
                }
                let ty = s.ty.as_finite().unwrap_or_default();
                if let Some(&e) = self.assignment.get(s) {
                    if !self.m.in_domain(e, ty) {
                        return Err(EvalError::NotInDomain { sym: s.to_string(), entity: e });
                    }
                    return Ok(T::Ent(e));
                }
                self.m.constant(s).map(T::Ent).ok_or_else(|| EvalError::Unassigned(s.to_string()))
            }
            Term::Up(inner) => {
                let from = self.fin(inner.ty())?;
                self.fin(t.ty())?;
                if !self.m.has_up_map() {
                    return Err(EvalError::Uninterpreted("up".into()));
                }
                Ok(T::Up(from, Box::new(self.term(inner)?)))
            }
            Term::Lift(_) => Err(EvalError::Uninterpreted("lift".into())),
        }
    }

    fn pair(&self, a: &Term, b: &Term) -> Result<(T, T), EvalError> {
        Ok((self.term(a)?, self.term(b)?))
    }

    fn rel(&self, rel: BoundRel, a: &Term, b: &Term) -> Result<Rel, EvalError> {
        let top = self.fin(a.ty().max(b.ty()))?;
        Ok(match rel {
            BoundRel::Eq => {
                self.need(top + 1)?;
                Rel::Eq(top + 1)
            }
            BoundRel::In => {
                self.need(top + 2)?;
                Rel::In(top + 1)
            }
        })
    }

    fn go(&mut self, f: &Formula) -> Result<Node, EvalError> {
        let b = |n: Node| Box::new(n);
        Ok(match f {
            Formula::Apply(h, a) => {
                let (h, a) = self.pair(h, a)?;
                Node::Apply(h, a)
            }
            Formula::Eq(x, y) => {
                let (x, y) = self.pair(x, y)?;
                Node::Eq(x, y)
            }
            Formula::Down(x, y) => {
                if !self.m.has_down_rel() {
                    return Err(EvalError::Uninterpreted("dn".into()));
                }
                let n = self.fin(y.ty())?;
                let (x, y) = self.pair(x, y)?;
                Node::Down(n, x, y)
            }
            Formula::Not(a) => Node::Not(b(self.go(a)?)),
            Formula::And(x, y) => Node::And(b(self.go(x)?), b(self.go(y)?)),
            Formula::Or(x, y) => Node::Or(b(self.go(x)?), b(self.go(y)?)),
            Formula::Implies(x, y) => Node::Implies(b(self.go(x)?), b(self.go(y)?)),
            Formula::Iff(x, y) => Node::Iff(b(self.go(x)?), b(self.go(y)?)),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let ty = self.fin(v.ty)?;
                self.scope.push(v.clone());
                let body = self.go(body);
                self.scope.pop();
                Node::Quant(matches!(f, Formula::Forall(..)), ty, b(body?))
            }
            Formula::Sugar(s) => self.sugar(s)?,
        })
    }

    fn sugar(&mut self, s: &Sugar) -> Result<Node, EvalError> {
        Ok(match s {
            Sugar::EqCtt(x, y) => match self.rel(BoundRel::Eq, x, y)? {
                Rel::Eq(g) => {
                    let (x, y) = self.pair(x, y)?;
                    Node::EqAt(g, x, y)
                }
                Rel::In(_) => unreachable!(),
            },
            Sugar::InCtt(x, y) => match self.rel(BoundRel::In, x, y)? {
                Rel::In(g) => {
                    let (x, y) = self.pair(x, y)?;
                    Node::InAt(g, x, y)
                }
                Rel::Eq(_) => unreachable!(),
            },
            Sugar::Coext(x, y) => {
                let n = self.fin(x.ty())?;
                let (x, y) = self.pair(x, y)?;
                Node::Coext(n.saturating_sub(1), n, x, y)
            }
            Sugar::CoextBounded(k, x, y) => {
                self.fin(x.ty().max(y.ty()))?;
                let (x, y) = self.pair(x, y)?;
                Node::Coext(0, *k, x, y)
            }
            Sugar::DownEq(x, y) => {
                if !self.m.has_down_rel() {
                    return Err(EvalError::Uninterpreted("downeq".into()));
                }
                let n = self.fin(x.ty())?;
                let (x, y) = self.pair(x, y)?;
                Node::DownEq(n - 1, x, y)
            }
            Sugar::Bounded { quant, var, rel, bound, body } => {
                let ty = self.fin(var.ty)?;
                self.scope.push(var.clone());
                let out = (|| -> Result<Node, EvalError> {
                    let r = self.rel(*rel, &var.term(), bound)?;
                    let bound = self.term(bound)?;
                    let body = self.go(body)?;
                    Ok(Node::Bounded { all: *quant == Quant::All, ty, rel: r, bound, body: Box::new(body) })
                })();
                self.scope.pop();
                out?
            }
            Sugar::History(_) | Sugar::Level(_) | Sugar::SubsetOf(..) | Sugar::Rank(..) => {
                let expanded = expand_with(&Formula::Sugar(s.clone()), ExpandOpts::FOR_EVAL);
                self.go(&expanded)?
            }
        })
    }
}

/// Reusable evaluator over one model; caches `eq` verdicts across calls.
pub struct Evaluator<'m> {
    m: &'m Model,
    eq_cache: HashMap<(u32, Entity, Entity), bool>,
    env: Vec<Entity>,
}

impl<'m> Evaluator<'m> {
    pub fn new(m: &'m Model) -> Self {
        Evaluator { m, eq_cache: HashMap::new(), env: Vec::new() }
    }

    pub fn model(&self) -> &'m Model {
        self.m
    }

    /// Truth value of `f` under `a`, with descriptions and set macros expanded.
    pub fn eval(&mut self, f: &Formula, a: &Assignment) -> Result<bool, EvalError> {
        let prepared = expand_with(f, ExpandOpts::FOR_EVAL);
        self.run(&prepared, a)
    }

    /// Truth value of the full primitive expansion of `f`.
    pub fn eval_expanded(&mut self, f: &Formula, a: &Assignment) -> Result<bool, EvalError> {
        self.run(&expand_all(f), a)
    }

    fn run(&mut self, f: &Formula, a: &Assignment) -> Result<bool, EvalError> {
        let mut c = Compiler { m: self.m, assignment: a, scope: Vec::new() };
        let node = c.go(f)?;
        self.env.clear();
        self.node(&node)
    }

    fn term(&self, t: &T) -> Result<Entity, EvalError> {
        match t {
            T::Slot(i) => Ok(self.env[*i]),
            T::Ent(e) => Ok(*e),
            T::Up(from, inner) => {
                let e = self.term(inner)?;
                self.m.up(*from, e).ok_or(EvalError::UpUndefined { ty: *from, entity: e })
            }
        }
    }

    fn eq_at(&mut self, g: u32, x: Entity, y: Entity) -> bool {
        if x == y {
            return true;
        }
        let key = (g, x.min(y), x.max(y));
        if let Some(&v) = self.eq_cache.get(&key) {
            return v;
        }
        let m = self.m;
        let v = m.domain(g).iter().all(|&z| m.apply(z, x) == m.apply(z, y));
        self.eq_cache.insert(key, v);
        v
    }

    fn in_at(&mut self, g: u32, x: Entity, y: Entity) -> bool {
        let m = self.m;
        m.domain(g).iter().any(|&z| m.apply(z, x) && self.eq_at(g + 1, z, y))
    }

    fn rel(&mut self, r: Rel, x: Entity, y: Entity) -> bool {
        match r {
            Rel::Eq(g) => self.eq_at(g, x, y),
            Rel::In(g) => self.in_at(g, x, y),
        }
    }

    fn node(&mut self, n: &Node) -> Result<bool, EvalError> {
        let m = self.m;
        Ok(match n {
            Node::Apply(h, a) => m.apply(self.term(h)?, self.term(a)?),
            Node::Eq(x, y) => self.term(x)? == self.term(y)?,
            Node::Down(k, x, y) => m.down(*k, self.term(x)?, self.term(y)?),
            Node::Not(a) => !self.node(a)?,
            Node::And(a, b) => self.node(a)? && self.node(b)?,
            Node::Or(a, b) => self.node(a)? || self.node(b)?,
            Node::Implies(a, b) => !self.node(a)? || self.node(b)?,
            Node::Iff(a, b) => self.node(a)? == self.node(b)?,
            Node::Quant(all, ty, body) => {
                let all = *all;
                self.env.push(0);
                let slot = self.env.len() - 1;
                let mut result = all;
                for &e in m.domain(*ty) {
                    self.env[slot] = e;
                    match self.node(body) {
                        Ok(v) if v != all => {
                            result = !all;
                            break;
                        }
                        Ok(_) => {}
                        Err(err) => {
                            self.env.pop();
                            return Err(err);
                        }
                    }
                }
                self.env.pop();
                result
            }
            Node::EqAt(g, x, y) => {
                let (x, y) = (self.term(x)?, self.term(y)?);
                self.eq_at(*g, x, y)
            }
            Node::InAt(g, x, y) => {
                let (x, y) = (self.term(x)?, self.term(y)?);
                self.in_at(*g, x, y)
            }
            Node::Coext(lo, hi, x, y) => {
                let (x, y) = (self.term(x)?, self.term(y)?);
                (*lo..*hi).all(|t| m.domain(t).iter().all(|&v| m.apply(x, v) == m.apply(y, v)))
            }
            Node::DownEq(k, x, y) => {
                let (x, y) = (self.term(x)?, self.term(y)?);
                *k == 0 || m.domain(*k).iter().all(|&v| m.down(*k, x, v) == m.down(*k, y, v))
            }
            Node::Bounded { all, ty, rel, bound, body } => {
                let all = *all;
                self.env.push(0);
                let slot = self.env.len() - 1;
                let mut result = Ok(all);
                for &e in m.domain(*ty) {
                    self.env[slot] = e;
                    let b = match self.term(bound) {
                        Ok(b) => b,
                        Err(err) => {
                            result = Err(err);
                            break;
                        }
                    };
                    if !self.rel(*rel, e, b) {
                        continue;
                    }
                    match self.node(body) {
                        Ok(v) if v != all => {
                            result = Ok(!all);
                            break;
                        }
                        Ok(_) => {}
                        Err(err) => {
                            result = Err(err);
                            break;
                        }
                    }
                }
                self.env.pop();
                result?
            }
        })
    }
}

pub fn eval(m: &Model, f: &Formula, a: &Assignment) -> Result<bool, EvalError> {
    Evaluator::new(m).eval(f, a)
}

pub fn eval_expanded(m: &Model, f: &Formula, a: &Assignment) -> Result<bool, EvalError> {
    Evaluator::new(m).eval_expanded(f, a)
}

/// Free symbols of `f` that the model does not interpret as constants.
pub fn open_symbols(m: &Model, f: &Formula) -> Vec<Symbol> {
    free_vars(f).into_iter().filter(|s| m.constant(s).is_none()).collect()
}

/// Every assignment of domain entities to `syms`, in odometer order.
pub fn assignments(m: &Model, syms: &[Symbol], budget: usize) -> Result<Vec<Assignment>, EvalError> {
    let mut doms = Vec::with_capacity(syms.len());
    let mut total: u128 = 1;
    for s in syms {
        let t = s.ty.as_finite().ok_or_else(|| EvalError::Transfinite(s.ty.to_string()))?;
        if t >= m.height() {
            return Err(EvalError::TypeBound { needed: t, height: m.height() });
        }
        total = total.saturating_mul(m.domain(t).len() as u128);
        doms.push(m.domain(t));
    }
    if total > budget as u128 {
        return Err(EvalError::Budget { needed: total, budget });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut idx = vec![0usize; syms.len()];
    if doms.iter().any(|d| d.is_empty()) {
        return Ok(out);
    }
    loop {
        out.push(syms.iter().cloned().zip(idx.iter().zip(&doms).map(|(&i, d)| d[i])).collect());
        let mut k = syms.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < doms[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Strip the universal prefix of `f` and search for an assignment that makes
/// the matrix false. `Ok(None)` when `f` holds.
pub fn find_counterexample(
    m: &Model,
    f: &Formula,
    base: &Assignment,
    budget: usize,
) -> Result<Option<Assignment>, EvalError> {
    let mut ev = Evaluator::new(m);
    find_counterexample_with(&mut ev, f, base, budget)
}

pub fn find_counterexample_with(
    ev: &mut Evaluator<'_>,
    f: &Formula,
    base: &Assignment,
    budget: usize,
) -> Result<Option<Assignment>, EvalError> {
    let mut vars = Vec::new();
    let mut body = f;
    while let Formula::Forall(v, b) = body {
        vars.push(v.clone());
        body = b;
    }
    if vars.iter().collect::<std::collections::HashSet<_>>().len() != vars.len() {
        // shadowed prefix: fall back to whole-formula truth
        return Ok((!ev.eval(f, base)?).then(|| base.clone()));
    }
    for a in assignments(ev.model(), &vars, budget)? {
        let mut full = base.clone();
        full.extend(a.clone());
        if !ev.eval(body, &full)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// `v := entity` pairs, described with the model's names.
pub fn describe_assignment(m: &Model, a: &Assignment) -> String {
    a.iter().map(|(s, &e)| format!("{s} := {}", m.describe(e))).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::parse_formula;
    use crate::models::{build_class_model, build_fjt_canonical, build_pure_model};

    fn holds(m: &Model, s: &str) -> bool {
        let f = parse_formula(s).unwrap();
        let direct = eval(m, &f, &Assignment::new()).unwrap();
        assert_eq!(direct, eval_expanded(m, &f, &Assignment::new()).unwrap(), "{s}");
        direct
    }

    #[test]
    fn pure_basics() {
        let m = build_pure_model(4).unwrap();
        assert!(holds(&m, "all x^0. all y^0. x^0 = y^0"));
        assert!(holds(&m, "all x^0. some y^1. x^0 eq y^1"));
        assert!(holds(&m, "all x^1. some y^2. x^1 eq y^2"));
    }

    #[test]
    fn fjt_separates_types() {
        let m = build_fjt_canonical(4).unwrap();
        assert!(holds(&m, "all x^0. all y^1. ~(x^0 eq y^1)"));
        assert!(holds(&m, "all x^1. ~H^2(x^1) & all x^0. H^2(x^0)"));
    }

    #[test]
    fn urelements_are_memberless() {
        let m = build_class_model(1, 3).unwrap();
        let f = parse_formula("b^0(a^2)").unwrap();
        let u = m.entity_by_name("u0").unwrap();
        for &a in m.domain(2) {
            let asg: Assignment = [(Symbol::new("b", 0u32), u), (Symbol::new("a", 2u32), a)].into_iter().collect();
            assert!(!eval(&m, &f, &asg).unwrap());
        }
    }

    #[test]
    fn reports_type_bound() {
        let m = build_pure_model(2).unwrap();
        let f = parse_formula("all x^1. some y^1. x^1 eq y^1").unwrap();
        assert!(matches!(eval(&m, &f, &Assignment::new()), Err(EvalError::TypeBound { .. })));
    }
}
