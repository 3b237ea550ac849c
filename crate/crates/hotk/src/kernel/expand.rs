//! Expansion of defined notation into primitive notation.

use super::formation::{check, FormationError};
use super::regime::Regime;
use super::subst::{map_atom_terms, replace_in_term, Fresh};
use super::syntax::{BoundRel, Formula, Quant, Sugar, Symbol, Term};
use super::TypeIndex;

/// Which kinds of notation to eliminate.
#[derive(Clone, Copy, Debug)]
pub struct ExpandOpts {
    /// `lift(t)` descriptions, by Russellian elimination.
    pub descriptions: bool,
    /// `eq`, `in`, `coext`, `coext_k`, `downeq`.
    pub relations: bool,
    /// Bounded quantifiers.
    pub bounded: bool,
    /// `hist`, `lev`, `subset`, `rank`.
    pub set_macros: bool,
}

impl ExpandOpts {
    pub const ALL: ExpandOpts = ExpandOpts { descriptions: true, relations: true, bounded: true, set_macros: true };
    pub const DESCRIPTIONS: ExpandOpts =
        ExpandOpts { descriptions: true, relations: false, bounded: false, set_macros: false };
    /// Everything except the relational sugar the evaluator handles directly.
    pub const FOR_EVAL: ExpandOpts =
        ExpandOpts { descriptions: true, relations: false, bounded: false, set_macros: true };
}

/// Check formation under `regime`, then expand every defined symbol.
pub fn expand_abbreviations(f: &Formula, regime: Regime) -> Result<Formula, FormationError> {
    check(f, regime)?;
    Ok(expand_all(f))
}

/// Full expansion without a formation check.
pub fn expand_all(f: &Formula) -> Formula {
    expand_with(f, ExpandOpts::ALL)
}

/// Russellian elimination of `lift` descriptions only.
pub fn eliminate_descriptions(f: &Formula) -> Formula {
    expand_with(f, ExpandOpts::DESCRIPTIONS)
}

pub fn expand_with(f: &Formula, opts: ExpandOpts) -> Formula {
    let mut e = Expander { fresh: Fresh::for_formula(f), opts };
    e.go(f)
}

/// Number of type levels needed to evaluate `f`: one more than the largest
/// type in its full expansion.
pub fn required_height(f: &Formula) -> Option<u32> {
    expand_all(f).max_type().map(|t| t.as_finite().map(|n| n + 1)).unwrap_or(Some(0))
}

/// Builders for the defining formulas, naming bound variables with `fresh`.
/// The results may still contain sugar (e.g. `in` uses `eq`).
pub mod defs {
    use super::*;

    pub fn eq_ctt(fresh: &mut Fresh, a: &Term, b: &Term, base: &str) -> Formula {
        let x = fresh.symbol(base, a.ty().max(b.ty()).succ());
        Formula::forall(x.clone(), Formula::apply(x.term(), a.clone()).iff(Formula::apply(x.term(), b.clone())))
    }

    pub fn in_ctt(fresh: &mut Fresh, a: &Term, b: &Term) -> Formula {
        let x = fresh.symbol("x", a.ty().max(b.ty()).succ());
        Formula::exists(x.clone(), Formula::eq_ctt(x.term(), b.clone()).and(Formula::apply(x.term(), a.clone())))
    }

    pub fn coext(fresh: &mut Fresh, a: &Term, b: &Term) -> Formula {
        let below = a.ty().pred().expect("coext on a successor type");
        let x = fresh.symbol("x", below);
        Formula::forall(x.clone(), Formula::apply(a.clone(), x.term()).iff(Formula::apply(b.clone(), x.term())))
    }

    /// Conjuncts run from type k-1 down to type 0.
    pub fn coext_bounded(fresh: &mut Fresh, k: u32, a: &Term, b: &Term) -> Formula {
        let parts = (0..k).map(|i| {
            let x = fresh.symbol("v", i);
            Formula::forall(x.clone(), Formula::apply(a.clone(), x.term()).iff(Formula::apply(b.clone(), x.term())))
        });
        Formula::conj(parts).expect("coext_k with k >= 1")
    }

    pub fn down_eq(fresh: &mut Fresh, a: &Term, b: &Term) -> Formula {
        if a.ty() == TypeIndex::fin(1) {
            return Formula::eq(a.clone(), a.clone());
        }
        let x = fresh.symbol("x", a.ty().pred().expect("positive type"));
        Formula::forall(x.clone(), Formula::down(a.clone(), x.term()).iff(Formula::down(b.clone(), x.term())))
    }

    pub fn relation(rel: BoundRel, a: Term, b: Term) -> Formula {
        match rel {
            BoundRel::Eq => Formula::eq_ctt(a, b),
            BoundRel::In => Formula::in_ctt(a, b),
        }
    }

    pub fn bounded(quant: Quant, var: &Symbol, rel: BoundRel, bound: &Term, body: Formula) -> Formula {
        let guard = relation(rel, var.term(), bound.clone());
        match quant {
            Quant::All => Formula::forall(var.clone(), guard.implies(body)),
            Quant::Some => Formula::exists(var.clone(), guard.and(body)),
        }
    }

    pub fn subset(fresh: &mut Fresh, x: &Term, y: &Term) -> Formula {
        let v = fresh.symbol("v", x.ty());
        Formula::bounded(Quant::All, v.clone(), BoundRel::In, x.clone(), Formula::in_ctt(v.term(), y.clone()))
    }

    pub fn history(fresh: &mut Fresh, h: &Term) -> Formula {
        let k = h.ty();
        let (a, x, c) = (fresh.symbol("a", k), fresh.symbol("x", k), fresh.symbol("c", k));
        let inner = Formula::bounded(
            Quant::Some,
            c.clone(),
            BoundRel::In,
            h.clone(),
            Formula::Sugar(Sugar::SubsetOf(x.term(), c.term())).and(Formula::in_ctt(c.term(), a.term())),
        );
        Formula::bounded(
            Quant::All,
            a.clone(),
            BoundRel::In,
            h.clone(),
            Formula::forall(x.clone(), Formula::in_ctt(x.term(), a.term()).iff(inner)),
        )
    }

    pub fn level(fresh: &mut Fresh, s: &Term) -> Formula {
        let k = s.ty();
        let (h, x, c) = (fresh.symbol("h", k), fresh.symbol("x", k), fresh.symbol("c", k));
        let body = Formula::forall(
            x.clone(),
            Formula::in_ctt(x.term(), s.clone()).iff(Formula::exists(
                c.clone(),
                Formula::Sugar(Sugar::SubsetOf(x.term(), c.term())).and(Formula::in_ctt(c.term(), h.term())),
            )),
        );
        Formula::exists(h.clone(), Formula::Sugar(Sugar::History(h.term())).and(body))
    }

    pub fn rank(fresh: &mut Fresh, a: &Term, s: &Term) -> Formula {
        let r = fresh.symbol("r", s.ty());
        let smaller = Formula::bounded(
            Quant::Some,
            r.clone(),
            BoundRel::In,
            s.clone(),
            Formula::Sugar(Sugar::Level(r.term())).and(Formula::Sugar(Sugar::SubsetOf(a.clone(), r.term()))),
        );
        Formula::Sugar(Sugar::Level(s.clone()))
            .and(Formula::Sugar(Sugar::SubsetOf(a.clone(), s.clone())))
            .and(smaller.not())
    }

    /// `∃w(t ≡ w ∧ ∀v(t ≡ v → v = w) ∧ ψ(w))`.
    pub fn description(fresh: &mut Fresh, t: &Term, psi: impl FnOnce(&Term) -> Formula) -> Formula {
        let up = t.ty().succ();
        let w = fresh.symbol("w", up);
        let v = fresh.symbol("v", up);
        let unique =
            Formula::forall(v.clone(), Formula::eq_ctt(t.clone(), v.term()).implies(Formula::eq(v.term(), w.term())));
        Formula::exists(w.clone(), Formula::eq_ctt(t.clone(), w.term()).and(unique).and(psi(&w.term())))
    }
}

struct Expander {
    fresh: Fresh,
    opts: ExpandOpts,
}

/// An innermost description `lift(t)` with `t` description-free.
fn innermost_lift(t: &Term) -> Option<&Term> {
    match t {
        Term::Sym(_) => None,
        Term::Up(i) => innermost_lift(i),
        Term::Lift(i) => innermost_lift(i).or(Some(t)),
    }
}

impl Expander {
    fn go(&mut self, f: &Formula) -> Formula {
        if self.opts.descriptions {
            if let Some(lift) = f.atom_terms().into_iter().find_map(innermost_lift) {
                return self.eliminate(f, lift.clone());
            }
        }
        match f {
            Formula::Apply(..) | Formula::Eq(..) | Formula::Down(..) => f.clone(),
            Formula::Not(a) => self.go(a).not(),
            Formula::And(a, b) => self.go(a).and(self.go(b)),
            Formula::Or(a, b) => self.go(a).or(self.go(b)),
            Formula::Implies(a, b) => self.go(a).implies(self.go(b)),
            Formula::Iff(a, b) => self.go(a).iff(self.go(b)),
            Formula::Forall(v, b) => Formula::forall(v.clone(), self.go(b)),
            Formula::Exists(v, b) => Formula::exists(v.clone(), self.go(b)),
            Formula::Sugar(s) => self.sugar(s, f),
        }
    }

    fn eliminate(&mut self, atom: &Formula, lift: Term) -> Formula {
        let Term::Lift(inner) = &lift else { unreachable!() };
        let inner = (**inner).clone();
        let expanded =
            defs::description(&mut self.fresh, &inner, |w| map_atom_terms(atom, &mut |t| replace_in_term(t, &lift, w)));
        self.go(&expanded)
    }

    fn sugar(&mut self, s: &Sugar, whole: &Formula) -> Formula {
        let o = self.opts;
        let fr = &mut self.fresh;
        let next = match s {
            Sugar::EqCtt(a, b) if o.relations => defs::eq_ctt(fr, a, b, "x"),
            Sugar::InCtt(a, b) if o.relations => {
                let x = fr.symbol("x", a.ty().max(b.ty()).succ());
                let eq = defs::eq_ctt(fr, &x.term(), b, "z");
                Formula::exists(x.clone(), eq.and(Formula::apply(x.term(), a.clone())))
            }
            Sugar::Coext(a, b) if o.relations => defs::coext(fr, a, b),
            Sugar::CoextBounded(k, a, b) if o.relations => defs::coext_bounded(fr, *k, a, b),
            Sugar::DownEq(a, b) if o.relations => defs::down_eq(fr, a, b),
            Sugar::Bounded { quant, var, rel, bound, body } => {
                if o.bounded {
                    defs::bounded(*quant, var, *rel, bound, (**body).clone())
                } else {
                    let body = self.go(body);
                    return Formula::bounded(*quant, var.clone(), *rel, bound.clone(), body);
                }
            }
            Sugar::SubsetOf(a, b) if o.set_macros => defs::subset(fr, a, b),
            Sugar::History(h) if o.set_macros => defs::history(fr, h),
            Sugar::Level(l) if o.set_macros => defs::level(fr, l),
            Sugar::Rank(a, l) if o.set_macros => defs::rank(fr, a, l),
            _ => return whole.clone(),
        };
        self.go(&next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{alpha_normalize, parse_formula};

    fn same(input: &str, expected: &str) {
        let got = alpha_normalize(&expand_all(&parse_formula(input).unwrap()));
        let want = alpha_normalize(&parse_formula(expected).unwrap());
        assert_eq!(got.to_string(), want.to_string());
    }

    #[test]
    fn defining_displays() {
        same("a^0 eq b^1", "all x^2. x^2(a^0) <-> x^2(b^1)");
        same("a^0 in b^0", "some x^1. (all z^2. z^2(x^1) <-> z^2(b^0)) & x^1(a^0)");
        same("a^1 downeq b^1", "a^1 = a^1");
        same("a^3 downeq b^3", "all x^2. a^3 dn x^2 <-> b^3 dn x^2");
        same("y^3 coext_2 x^2", "(all v^0. y^3(v^0) <-> x^2(v^0)) & (all v^1. y^3(v^1) <-> x^2(v^1))");
    }

    #[test]
    fn russellian_elimination() {
        let got = eliminate_descriptions(&parse_formula("y^2(lift(x^0))").unwrap());
        let want = parse_formula("some w^1. x^0 eq w^1 & (all v^1. x^0 eq v^1 -> v^1 = w^1) & y^2(w^1)").unwrap();
        assert_eq!(alpha_normalize(&got), alpha_normalize(&want));
    }

    #[test]
    fn expansion_idempotent() {
        let f = parse_formula("all x^1. x^1 in b^2 -> lev(x^1)").unwrap();
        let e = expand_all(&f);
        assert!(e.is_sugar_free());
        assert_eq!(expand_all(&e), e);
    }

    #[test]
    fn heights() {
        assert_eq!(required_height(&parse_formula("a^0 in b^0").unwrap()), Some(3));
        assert_eq!(required_height(&parse_formula("a^0 = b^0").unwrap()), Some(1));
    }
}
