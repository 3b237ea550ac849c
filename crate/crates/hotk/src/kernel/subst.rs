//! Free symbols, capture-avoiding substitution and alpha-normalization.

use std::collections::{BTreeSet, HashSet};

use super::syntax::{Formula, Sugar, Symbol, Term};
use super::KernelError;

/// How the type of a substituted term must relate to the variable's type.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Discipline {
    /// Same type (STT, STT↑, STT↓, FJT).
    Exact,
    /// Type at most the variable's type (CTT's ∀E^β_α with α ≤ β).
    Cumulative,
}

/// Symbols occurring free. Free symbols act as constants or parameters.
pub fn free_vars(f: &Formula) -> BTreeSet<Symbol> {
    let mut out = BTreeSet::new();
    let mut bound = Vec::new();
    collect_free(f, &mut bound, &mut out);
    out
}

fn collect_free(f: &Formula, bound: &mut Vec<Symbol>, out: &mut BTreeSet<Symbol>) {
    let mut add_term = |t: &Term, bound: &Vec<Symbol>| {
        let mut syms = Vec::new();
        t.symbols(&mut syms);
        for s in syms {
            if !bound.contains(&s) {
                out.insert(s);
            }
        }
    };
    match f {
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            bound.push(v.clone());
            collect_free(body, bound, out);
            bound.pop();
        }
        Formula::Sugar(Sugar::Bounded { var, bound: t, body, .. }) => {
            bound.push(var.clone());
            add_term(t, bound);
            collect_free(body, bound, out);
            bound.pop();
        }
        _ => {
            for t in f.atom_terms() {
                add_term(t, bound);
            }
            for c in f.children() {
                collect_free(c, bound, out);
            }
        }
    }
}

pub fn occurs_free(f: &Formula, s: &Symbol) -> bool {
    free_vars(f).contains(s)
}

/// Symbols mentioned anywhere, bound or free.
pub fn all_names(f: &Formula) -> HashSet<String> {
    f.all_symbols().into_iter().map(|s| s.name).collect()
}

/// Generator of names that avoid a given set, drawn from the reserved `_`
/// prefix.
#[derive(Clone, Debug, Default)]
pub struct Fresh {
    used: HashSet<String>,
    counter: usize,
}

impl Fresh {
    pub fn avoiding(names: impl IntoIterator<Item = String>) -> Self {
        Fresh { used: names.into_iter().collect(), counter: 0 }
    }

    pub fn for_formula(f: &Formula) -> Self {
        Fresh::avoiding(all_names(f))
    }

    pub fn avoid(&mut self, name: &str) {
        self.used.insert(name.to_string());
    }

    pub fn avoid_formula(&mut self, f: &Formula) {
        self.used.extend(all_names(f));
    }

    pub fn name(&mut self, base: &str) -> String {
        loop {
            self.counter += 1;
            let n = format!("_{base}{}", self.counter);
            if self.used.insert(n.clone()) {
                return n;
            }
        }
    }

    pub fn symbol(&mut self, base: &str, ty: impl Into<super::TypeIndex>) -> Symbol {
        Symbol::new(self.name(base), ty)
    }
}

pub fn replace_in_term(t: &Term, from: &Term, to: &Term) -> Term {
    if t == from {
        return to.clone();
    }
    match t {
        Term::Sym(_) => t.clone(),
        Term::Up(i) => Term::Up(Box::new(replace_in_term(i, from, to))),
        Term::Lift(i) => Term::Lift(Box::new(replace_in_term(i, from, to))),
    }
}

/// Apply `g` to every term directly held by an atom or sugar node.
pub fn map_atom_terms(f: &Formula, g: &mut impl FnMut(&Term) -> Term) -> Formula {
    match f {
        Formula::Apply(a, b) => Formula::Apply(g(a), g(b)),
        Formula::Eq(a, b) => Formula::Eq(g(a), g(b)),
        Formula::Down(a, b) => Formula::Down(g(a), g(b)),
        Formula::Sugar(s) => Formula::Sugar(match s {
            Sugar::EqCtt(a, b) => Sugar::EqCtt(g(a), g(b)),
            Sugar::InCtt(a, b) => Sugar::InCtt(g(a), g(b)),
            Sugar::Coext(a, b) => Sugar::Coext(g(a), g(b)),
            Sugar::CoextBounded(k, a, b) => Sugar::CoextBounded(*k, g(a), g(b)),
            Sugar::DownEq(a, b) => Sugar::DownEq(g(a), g(b)),
            Sugar::SubsetOf(a, b) => Sugar::SubsetOf(g(a), g(b)),
            Sugar::Rank(a, b) => Sugar::Rank(g(a), g(b)),
            Sugar::History(a) => Sugar::History(g(a)),
            Sugar::Level(a) => Sugar::Level(g(a)),
            Sugar::Bounded { quant, var, rel, bound, body } => {
                Sugar::Bounded { quant: *quant, var: var.clone(), rel: *rel, bound: g(bound), body: body.clone() }
            }
        }),
        other => other.clone(),
    }
}

/// Capture-avoiding substitution of `t` for the free occurrences of `var`,
/// with the type relation enforced by `discipline`.
pub fn substitute(f: &Formula, var: &Symbol, t: &Term, discipline: Discipline) -> Result<Formula, KernelError> {
    let ok = match discipline {
        Discipline::Exact => t.ty() == var.ty,
        Discipline::Cumulative => t.ty() <= var.ty,
    };
    if !ok {
        return Err(KernelError::SubstitutionType { var: var.to_string(), term: t.to_string() });
    }
    Ok(subst(f, var, t))
}

/// Substitution without a type check.
pub fn subst(f: &Formula, var: &Symbol, t: &Term) -> Formula {
    let from = var.term();
    let mut t_free = Vec::new();
    t.symbols(&mut t_free);
    let t_free: HashSet<Symbol> = t_free.into_iter().collect();
    let mut fresh: Option<Fresh> = None;
    go(f, var, &from, t, &t_free, &mut fresh)
}

fn go(
    f: &Formula,
    var: &Symbol,
    from: &Term,
    t: &Term,
    t_free: &HashSet<Symbol>,
    fresh: &mut Option<Fresh>,
) -> Formula {
    let rebind = |v: &Symbol, body: &Formula, extra: Option<&Term>, fresh: &mut Option<Fresh>| {
        if t_free.contains(v) && (occurs_free(body, var) || extra.is_some_and(|e| e.mentions(var))) {
            let fr = fresh.get_or_insert_with(|| {
                let mut fr = Fresh::for_formula(body);
                fr.avoid(&var.name);
                for s in t_free {
                    fr.avoid(&s.name);
                }
                fr
            });
            fr.avoid_formula(body);
            let nv = Symbol::new(fr.name(&v.name.trim_start_matches('_').chars().take(1).collect::<String>()), v.ty);
            let renamed = subst(body, v, &nv.term());
            let extra = extra.map(|e| replace_in_term(e, &v.term(), &nv.term()));
            (nv, renamed, extra)
        } else {
            (v.clone(), body.clone(), extra.cloned())
        }
    };
    match f {
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            if v == var {
                return f.clone();
            }
            let (nv, nb, _) = rebind(v, body, None, fresh);
            let nb = go(&nb, var, from, t, t_free, fresh);
            if matches!(f, Formula::Forall(..)) {
                Formula::forall(nv, nb)
            } else {
                Formula::exists(nv, nb)
            }
        }
        Formula::Sugar(Sugar::Bounded { quant, var: v, rel, bound, body }) => {
            if v == var {
                return f.clone();
            }
            let (nv, nb, nbound) = rebind(v, body, Some(bound), fresh);
            let nbound = replace_in_term(&nbound.unwrap(), from, t);
            Formula::bounded(*quant, nv, *rel, nbound, go(&nb, var, from, t, t_free, fresh))
        }
        Formula::Not(a) => go(a, var, from, t, t_free, fresh).not(),
        Formula::And(a, b) => go(a, var, from, t, t_free, fresh).and(go(b, var, from, t, t_free, fresh)),
        Formula::Or(a, b) => go(a, var, from, t, t_free, fresh).or(go(b, var, from, t, t_free, fresh)),
        Formula::Implies(a, b) => go(a, var, from, t, t_free, fresh).implies(go(b, var, from, t, t_free, fresh)),
        Formula::Iff(a, b) => go(a, var, from, t, t_free, fresh).iff(go(b, var, from, t, t_free, fresh)),
        atom => map_atom_terms(atom, &mut |x| replace_in_term(x, from, t)),
    }
}

/// Rename bound symbols to `_1`, `_2`, … in binder pre-order, keeping types.
/// Alpha-equivalent formulas normalize to identical trees.
pub fn alpha_normalize(f: &Formula) -> Formula {
    let offset = free_vars(f)
        .iter()
        .filter_map(|s| s.name.strip_prefix('_').and_then(|d| d.parse::<usize>().ok()))
        .max()
        .unwrap_or(0);
    let mut n = Normalizer { env: Vec::new(), next: offset };
    n.go(f)
}

pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    alpha_normalize(a) == alpha_normalize(b)
}

struct Normalizer {
    env: Vec<(Symbol, Symbol)>,
    next: usize,
}

impl Normalizer {
    fn term(&self, t: &Term) -> Term {
        match t {
            Term::Sym(s) => match self.env.iter().rev().find(|(old, _)| old == s) {
                Some((_, new)) => new.term(),
                None => t.clone(),
            },
            Term::Up(i) => Term::Up(Box::new(self.term(i))),
            Term::Lift(i) => Term::Lift(Box::new(self.term(i))),
        }
    }

    fn bind(&mut self, v: &Symbol) -> Symbol {
        self.next += 1;
        let nv = Symbol::new(format!("_{}", self.next), v.ty);
        self.env.push((v.clone(), nv.clone()));
        nv
    }

    fn go(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let nv = self.bind(v);
                let nb = self.go(body);
                self.env.pop();
                if matches!(f, Formula::Forall(..)) {
                    Formula::forall(nv, nb)
                } else {
                    Formula::exists(nv, nb)
                }
            }
            Formula::Sugar(Sugar::Bounded { quant, var, rel, bound, body }) => {
                let nv = self.bind(var);
                let nbound = self.term(bound);
                let nb = self.go(body);
                self.env.pop();
                Formula::bounded(*quant, nv, *rel, nbound, nb)
            }
            Formula::Not(a) => self.go(a).not(),
            Formula::And(a, b) => self.go(a).and(self.go(b)),
            Formula::Or(a, b) => self.go(a).or(self.go(b)),
            Formula::Implies(a, b) => self.go(a).implies(self.go(b)),
            Formula::Iff(a, b) => self.go(a).iff(self.go(b)),
            atom => map_atom_terms(atom, &mut |t| self.term(t)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn alpha_equivalence() {
        assert_eq!(alpha_normalize(&p("all x^1. x^1(a^0)")), alpha_normalize(&p("all y^1. y^1(a^0)")));
        assert_ne!(alpha_normalize(&p("all x^1. x^1(a^0)")), alpha_normalize(&p("all y^2. y^2(a^0)")));
    }

    #[test]
    fn free_symbols() {
        let fv = free_vars(&p("x^2(a^0) <-> x^2(b^1)"));
        let names: Vec<String> = fv.iter().map(|s| s.to_string()).collect();
        assert_eq!(names, vec!["a^0", "b^1", "x^2"]);
        assert!(free_vars(&p("all x^1. x^1(a^0)")).iter().all(|s| s.name == "a"));
    }

    #[test]
    fn bound_occurrences_untouched() {
        let f = p("all x^1. x^1(a^0)");
        let g = subst(&f, &Symbol::new("x", 1), &Term::sym("c", 1));
        assert_eq!(f, g);
    }

    #[test]
    fn capture_avoided() {
        let f = p("all y^0. r^1(y^0) -> r^1(x^0)");
        let g = subst(&f, &Symbol::new("x", 0), &Term::sym("y", 0));
        assert!(occurs_free(&g, &Symbol::new("y", 0)));
        let expected = p("all z^0. r^1(z^0) -> r^1(y^0)");
        assert!(alpha_eq(&g, &expected), "{g}");
    }

    #[test]
    fn discipline() {
        let f = p("r^2(x^1)");
        let x = Symbol::new("x", 1);
        assert!(substitute(&f, &x, &Term::sym("a", 0), Discipline::Exact).is_err());
        assert!(substitute(&f, &x, &Term::sym("a", 0), Discipline::Cumulative).is_ok());
        assert!(substitute(&f, &x, &Term::sym("a", 2), Discipline::Cumulative).is_err());
    }
}
