//! Terms and formulas of the typed languages, plus the canonical printer.
//!
//! A symbol occurrence is a variable when an enclosing quantifier binds the
//! same name at the same type, and a constant (parameter) otherwise.

use std::fmt;

use super::index::TypeIndex;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Symbol {
    pub name: String,
    pub ty: TypeIndex,
}

impl Symbol {
    pub fn new(name: impl Into<String>, ty: impl Into<TypeIndex>) -> Self {
        Symbol { name: name.into(), ty: ty.into() }
    }

    pub fn term(&self) -> Term {
        Term::Sym(self.clone())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.name, self.ty)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Sym(Symbol),
    /// `up(t)`: the raising function of STT↑.
    Up(Box<Term>),
    /// `lift(t)`: the description "the type-(n+1) entity ≡ t", used by the
    /// STT↑ → CTT translation and removed by Russellian elimination.
    Lift(Box<Term>),
}

impl Term {
    pub fn sym(name: &str, ty: u32) -> Term {
        Term::Sym(Symbol::new(name, ty))
    }

    pub fn ty(&self) -> TypeIndex {
        match self {
            Term::Sym(s) => s.ty,
            Term::Up(t) | Term::Lift(t) => t.ty().succ(),
        }
    }

    pub fn up(self) -> Term {
        Term::Up(Box::new(self))
    }

    pub fn lift(self) -> Term {
        Term::Lift(Box::new(self))
    }

    /// `up` applied `k` times.
    pub fn up_n(self, k: u32) -> Term {
        (0..k).fold(self, |t, _| t.up())
    }

    pub fn symbols(&self, out: &mut Vec<Symbol>) {
        match self {
            Term::Sym(s) => out.push(s.clone()),
            Term::Up(t) | Term::Lift(t) => t.symbols(out),
        }
    }

    pub fn contains_lift(&self) -> bool {
        match self {
            Term::Sym(_) => false,
            Term::Lift(_) => true,
            Term::Up(t) => t.contains_lift(),
        }
    }

    pub fn contains_up(&self) -> bool {
        match self {
            Term::Sym(_) => false,
            Term::Up(_) => true,
            Term::Lift(t) => t.contains_up(),
        }
    }

    pub fn mentions(&self, s: &Symbol) -> bool {
        match self {
            Term::Sym(x) => x == s,
            Term::Up(t) | Term::Lift(t) => t.mentions(s),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Sym(s) => write!(f, "{s}"),
            Term::Up(t) => write!(f, "up({t})"),
            Term::Lift(t) => write!(f, "lift({t})"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Quant {
    All,
    Some,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum BoundRel {
    Eq,
    In,
}

/// Defined notation. Each variant has a fixed expansion into primitives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sugar {
    /// `a eq b`: indiscernibility at type max(α,β)+1.
    EqCtt(Term, Term),
    /// `a in b`: some ≡-copy of b one type up applies to a.
    InCtt(Term, Term),
    /// `a coext b`: coextensive at the type below.
    Coext(Term, Term),
    /// `a coext_k b`: coextensive at every type below k.
    CoextBounded(u32, Term, Term),
    /// `a downeq b`: same ▽-image.
    DownEq(Term, Term),
    Bounded {
        quant: Quant,
        var: Symbol,
        rel: BoundRel,
        bound: Term,
        body: Box<Formula>,
    },
    History(Term),
    Level(Term),
    SubsetOf(Term, Term),
    /// `rank(a, s)`: s is the ∈-least level including a.
    Rank(Term, Term),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Apply(Term, Term),
    Eq(Term, Term),
    /// `a dn b`: the ▽ relation of STT↓.
    Down(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Symbol, Box<Formula>),
    Exists(Symbol, Box<Formula>),
    Sugar(Sugar),
}

impl Formula {
    pub fn apply(head: Term, arg: Term) -> Formula {
        Formula::Apply(head, arg)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn down(a: Term, b: Term) -> Formula {
        Formula::Down(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: Formula) -> Formula {
        Formula::Iff(Box::new(self), Box::new(other))
    }

    pub fn forall(var: Symbol, body: Formula) -> Formula {
        Formula::Forall(var, Box::new(body))
    }

    pub fn exists(var: Symbol, body: Formula) -> Formula {
        Formula::Exists(var, Box::new(body))
    }

    pub fn forall_many(vars: impl IntoIterator<Item = Symbol>, body: Formula) -> Formula {
        let vars: Vec<Symbol> = vars.into_iter().collect();
        vars.into_iter().rev().fold(body, |acc, v| Formula::forall(v, acc))
    }

    pub fn eq_ctt(a: Term, b: Term) -> Formula {
        Formula::Sugar(Sugar::EqCtt(a, b))
    }

    pub fn in_ctt(a: Term, b: Term) -> Formula {
        Formula::Sugar(Sugar::InCtt(a, b))
    }

    pub fn bounded(quant: Quant, var: Symbol, rel: BoundRel, bound: Term, body: Formula) -> Formula {
        Formula::Sugar(Sugar::Bounded { quant, var, rel, bound, body: Box::new(body) })
    }

    /// Left-nested conjunction; `None` for an empty list.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        items.into_iter().reduce(Formula::and)
    }

    /// Left-nested disjunction; `None` for an empty list.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        items.into_iter().reduce(Formula::or)
    }

    pub fn is_sugar_free(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |f| {
            if let Formula::Sugar(_) = f {
                ok = false;
            }
            for t in f.atom_terms() {
                if t.contains_lift() {
                    ok = false;
                }
            }
        });
        ok
    }

    /// Terms occurring directly in this node (not in subformulas).
    pub fn atom_terms(&self) -> Vec<&Term> {
        match self {
            Formula::Apply(a, b) | Formula::Eq(a, b) | Formula::Down(a, b) => vec![a, b],
            Formula::Sugar(s) => match s {
                Sugar::EqCtt(a, b)
                | Sugar::InCtt(a, b)
                | Sugar::Coext(a, b)
                | Sugar::CoextBounded(_, a, b)
                | Sugar::DownEq(a, b)
                | Sugar::SubsetOf(a, b)
                | Sugar::Rank(a, b) => vec![a, b],
                Sugar::History(a) | Sugar::Level(a) => vec![a],
                Sugar::Bounded { bound, .. } => vec![bound],
            },
            _ => vec![],
        }
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                vec![a, b]
            }
            Formula::Sugar(Sugar::Bounded { body, .. }) => vec![body],
            _ => vec![],
        }
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// Every symbol occurrence, bound or free, including binders.
    pub fn all_symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.visit(&mut |g| {
            for t in g.atom_terms() {
                t.symbols(&mut out);
            }
            match g {
                Formula::Forall(v, _) | Formula::Exists(v, _) => out.push(v.clone()),
                Formula::Sugar(Sugar::Bounded { var, .. }) => out.push(var.clone()),
                _ => {}
            }
        });
        out
    }

    /// Largest type index mentioned anywhere in the formula.
    pub fn max_type(&self) -> Option<TypeIndex> {
        let mut best: Option<TypeIndex> = None;
        self.visit(&mut |g| {
            for t in g.atom_terms() {
                best = best.max(Some(t.ty()));
            }
            match g {
                Formula::Forall(v, _) | Formula::Exists(v, _) => best = best.max(Some(v.ty)),
                Formula::Sugar(Sugar::Bounded { var, .. }) => best = best.max(Some(var.ty)),
                _ => {}
            }
        });
        best
    }

    /// Number of nodes, used to bound generated formulas.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    fn prec(&self) -> u8 {
        match self {
            Formula::Forall(..) | Formula::Exists(..) | Formula::Sugar(Sugar::Bounded { .. }) => 0,
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(..) => 5,
            _ => 6,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Formula::Apply(h, a) => write!(f, "{h}({a})"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Down(a, b) => write!(f, "{a} dn {b}"),
            Formula::Not(a) => {
                write!(f, "~")?;
                a.write_prec(f, 5)
            }
            Formula::And(a, b) => binary(f, a, "&", b, 4, true),
            Formula::Or(a, b) => binary(f, a, "|", b, 3, true),
            Formula::Implies(a, b) => binary(f, a, "->", b, 2, false),
            Formula::Iff(a, b) => binary(f, a, "<->", b, 1, false),
            Formula::Forall(v, body) => {
                write!(f, "all {v}. ")?;
                body.write_prec(f, 0)
            }
            Formula::Exists(v, body) => {
                write!(f, "some {v}. ")?;
                body.write_prec(f, 0)
            }
            Formula::Sugar(s) => match s {
                Sugar::EqCtt(a, b) => write!(f, "{a} eq {b}"),
                Sugar::InCtt(a, b) => write!(f, "{a} in {b}"),
                Sugar::Coext(a, b) => write!(f, "{a} coext {b}"),
                Sugar::CoextBounded(k, a, b) => write!(f, "{a} coext_{k} {b}"),
                Sugar::DownEq(a, b) => write!(f, "{a} downeq {b}"),
                Sugar::History(a) => write!(f, "hist({a})"),
                Sugar::Level(a) => write!(f, "lev({a})"),
                Sugar::SubsetOf(a, b) => write!(f, "subset({a}, {b})"),
                Sugar::Rank(a, b) => write!(f, "rank({a}, {b})"),
                Sugar::Bounded { quant, var, rel, bound, body } => {
                    let q = match quant {
                        Quant::All => "all",
                        Quant::Some => "some",
                    };
                    let r = match rel {
                        BoundRel::Eq => "eq",
                        BoundRel::In => "in",
                    };
                    write!(f, "{q} {var} {r} {bound}. ")?;
                    body.write_prec(f, 0)
                }
            },
        }
    }
}

fn binary(f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula, p: u8, left_assoc: bool) -> fmt::Result {
    let (lmin, rmin) = if left_assoc { (p, p + 1) } else { (p + 1, p) };
    a.write_prec(f, lmin)?;
    write!(f, " {op} ")?;
    b.write_prec(f, rmin)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}
