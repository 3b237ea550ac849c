//! Domain predicates (unrestricted, m-Russellian, m-unrestricted) and the
//! FJT decision procedure.

use serde::{Deserialize, Serialize};

use super::build::{build_fjt_canonical, FJT_HEIGHT_CAP};
use super::eval::{eval, open_symbols, Assignment};
use super::ModelError;
use crate::kernel::{check, required_height, BoundRel, FormationError, Formula, Quant, Regime, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainKind {
    /// STT unrestrictedness of `d^n`; `m` is ignored.
    UnrestrictedStt,
    MRussellian,
    /// The variant that avoids cross-type `≡`; needs `n ≥ m`.
    MRussellianStar,
    MUnrestricted,
}

impl std::str::FromStr for DomainKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "unrestricted" | "unrestricted-stt" => Ok(DomainKind::UnrestrictedStt),
            "m-russellian" | "russellian" => Ok(DomainKind::MRussellian),
            "m-russellian-star" | "russellian-star" => Ok(DomainKind::MRussellianStar),
            "m-unrestricted" => Ok(DomainKind::MUnrestricted),
            other => Err(format!("unknown domain predicate `{other}`")),
        }
    }
}

/// The free variable every generated formula is about.
pub fn domain_symbol(n: u32) -> Symbol {
    Symbol::new("d", n)
}

fn ill(kind: DomainKind, n: u32, m: u32, reason: &str) -> FormationError {
    FormationError { subformula: format!("{kind:?}(n={n}, m={m})"), reason: reason.into() }
}

fn v(name: &str, ty: u32) -> Symbol {
    Symbol::new(name, ty)
}

fn ap(h: &Symbol, a: &Symbol) -> Formula {
    Formula::apply(h.term(), a.term())
}

fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
    Formula::conj(items).unwrap_or_else(truth)
}

fn truth() -> Formula {
    let x = v("t", 0);
    Formula::forall(x.clone(), Formula::eq(x.term(), x.term()))
}

/// The defining formula of `kind` with `d^n` free.
pub fn gen_domain_formula(kind: DomainKind, n: u32, m: u32) -> Result<Formula, FormationError> {
    if n == 0 {
        return Err(ill(kind, n, m, "the domain must have positive type"));
    }
    let d = domain_symbol(n);
    let f = match kind {
        DomainKind::UnrestrictedStt => {
            let (y, x) = (v("y", n), v("x", n - 1));
            let over_d = Formula::forall(x.clone(), ap(&d, &x).implies(ap(&y, &x)));
            Formula::forall(y.clone(), over_d.implies(Formula::forall(x.clone(), ap(&y, &x))))
        }
        DomainKind::MRussellian => {
            if m == 0 {
                return Err(ill(kind, n, m, "m must be positive"));
            }
            let every = (0..m).map(|k| {
                let y = v("y", k);
                let some_copy = Formula::disj((0..n).map(|i| {
                    let x = v("x", i);
                    Formula::bounded(Quant::Some, x.clone(), BoundRel::Eq, y.term(), ap(&d, &x))
                }))
                .expect("n >= 1");
                Formula::forall(y, some_copy)
            });
            let only = (0..n).map(|i| {
                let x = v("x", i);
                let low = Formula::disj((0..m).map(|k| {
                    let y = v("y", k);
                    Formula::exists(y.clone(), Formula::eq_ctt(x.term(), y.term()))
                }))
                .expect("m >= 1");
                Formula::forall(x.clone(), ap(&d, &x).implies(low))
            });
            conj(every).and(conj(only))
        }
        DomainKind::MRussellianStar => {
            if m == 0 {
                return Err(ill(kind, n, m, "m must be positive"));
            }
            if n < m {
                return Err(ill(kind, n, m, "needs n >= m: d^n cannot apply to type m-1 entities"));
            }
            let has = (0..m).map(|k| {
                let y = v("y", k);
                Formula::forall(y.clone(), ap(&d, &y))
            });
            let lacks = (m..n).map(|k| {
                let y = v("y", k);
                Formula::forall(y.clone(), ap(&d, &y).not())
            });
            let has = conj(has);
            match Formula::conj(lacks) {
                Some(l) => has.and(l),
                None => has,
            }
        }
        DomainKind::MUnrestricted => {
            if m == 0 {
                return Err(ill(kind, n, m, "m must be positive"));
            }
            let y = v("y", m);
            let over_d = conj((0..m.min(n)).map(|i| {
                let x = v("x", i);
                Formula::forall(x.clone(), ap(&d, &x).implies(ap(&y, &x)))
            }));
            let everywhere = conj((0..m).map(|i| {
                let x = v("x", i);
                Formula::forall(x.clone(), ap(&y, &x))
            }));
            Formula::forall(y.clone(), over_d.implies(everywhere))
        }
    };
    Ok(f)
}

/// "There are exactly `count` type-`ty` entities", using only `=` and
/// quantifiers. Distinctness is asserted as each witness is introduced.
pub fn exactly_n(ty: u32, count: u32) -> Formula {
    let xs: Vec<Symbol> = (1..=count).map(|i| v(&format!("x{i}"), ty)).collect();
    let y = v("y", ty);
    let covered = Formula::disj(xs.iter().map(|x| Formula::eq(y.term(), x.term())))
        .map(|d| Formula::forall(y.clone(), d))
        .unwrap_or_else(|| Formula::forall(y.clone(), Formula::eq(y.term(), y.term()).not()));
    let mut body = covered;
    for (i, x) in xs.iter().enumerate().rev() {
        let distinct = Formula::conj(xs[..i].iter().map(|p| Formula::eq(x.term(), p.term()).not()));
        body = match distinct {
            Some(d) => d.and(body),
            None => body,
        };
        body = Formula::exists(x.clone(), body);
    }
    body
}

/// Truth of an FJT sentence in the canonical pure extensional model. `height`
/// bounds the types mentioned in `f`; evaluation uses enough type levels for
/// the defined notation as well.
pub fn decide_fjt(f: &Formula, height: u32) -> Result<bool, ModelError> {
    if height >= FJT_HEIGHT_CAP {
        return Err(ModelError::HeightCap { requested: height, cap: FJT_HEIGHT_CAP - 1 });
    }
    check(f, Regime::Fjt).map_err(|e| ModelError::WrongInput(format!("not an FJT formula: {e}")))?;
    if let Some(t) = f.max_type().and_then(|t| t.as_finite()) {
        if t > height {
            return Err(ModelError::WrongInput(format!("formula mentions type {t} above the height bound {height}")));
        }
    }
    let needed = required_height(f).ok_or_else(|| ModelError::WrongInput("transfinite type".into()))?;
    let levels = needed.max(height + 1);
    if levels > FJT_HEIGHT_CAP {
        return Err(ModelError::HeightCap { requested: levels, cap: FJT_HEIGHT_CAP });
    }
    let m = build_fjt_canonical(levels)?;
    let open = open_symbols(&m, f);
    if let Some(s) = open.first() {
        return Err(ModelError::WrongInput(format!("sentence has free variable `{s}`")));
    }
    Ok(eval(&m, f, &Assignment::new())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::parse_formula;

    #[test]
    fn counts_and_comprehension() {
        assert!(decide_fjt(&exactly_n(2, 8), 2).unwrap());
        assert!(!decide_fjt(&exactly_n(2, 7), 2).unwrap());
        let h =
            parse_formula("some z^2. (all x^1. z^2(x^1) <-> x^1 = x^1) & (all x^0. z^2(x^0) <-> ~x^0 = x^0)").unwrap();
        assert!(decide_fjt(&h, 2).unwrap());
    }

    #[test]
    fn star_needs_n_at_least_m() {
        assert!(gen_domain_formula(DomainKind::MRussellianStar, 1, 2).is_err());
        assert!(gen_domain_formula(DomainKind::MRussellianStar, 2, 1).is_ok());
    }
}
