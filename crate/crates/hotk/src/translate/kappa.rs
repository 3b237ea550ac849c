use super::TranslateError;
use crate::kernel::{BoundRel, Formula, Regime, Sugar, Symbol, TypeIndex};
use crate::settheory::SetFormula;

/// The smallest default CTT regime whose bound lies above `κ + 2`.
pub fn kappa_target(kappa: TypeIndex) -> Regime {
    if kappa.is_finite() {
        Regime::ctt()
    } else {
        Regime::CttStringent(TypeIndex::new(kappa.omega_coeff + 1, 0))
    }
}

/// `φ^(κ)`: every variable gets type κ, `=` becomes `eq` and `∈` becomes
/// the typed `in`. The macros `⊆`, `Lev` and `Hist` map to their typed
/// counterparts and bounded quantifiers stay bounded.
pub fn kappa_translate(f: &SetFormula, kappa: TypeIndex) -> Formula {
    let t = |v: &str| Symbol::new(v, kappa).term();
    let go = |g: &SetFormula| kappa_translate(g, kappa);
    match f {
        SetFormula::Eq(a, b) => Formula::eq_ctt(t(a), t(b)),
        SetFormula::In(a, b) => Formula::in_ctt(t(a), t(b)),
        SetFormula::Subset(a, b) => Formula::Sugar(Sugar::SubsetOf(t(a), t(b))),
        SetFormula::Level(a) => Formula::Sugar(Sugar::Level(t(a))),
        SetFormula::History(a) => Formula::Sugar(Sugar::History(t(a))),
        SetFormula::Not(a) => go(a).not(),
        SetFormula::And(a, b) => go(a).and(go(b)),
        SetFormula::Or(a, b) => go(a).or(go(b)),
        SetFormula::Implies(a, b) => go(a).implies(go(b)),
        SetFormula::Iff(a, b) => go(a).iff(go(b)),
        SetFormula::Forall(v, b) => Formula::forall(Symbol::new(v.as_str(), kappa), go(b)),
        SetFormula::Exists(v, b) => Formula::exists(Symbol::new(v.as_str(), kappa), go(b)),
        SetFormula::Bounded { quant, var, bound, body } => {
            Formula::bounded(*quant, Symbol::new(var.as_str(), kappa), BoundRel::In, t(bound), go(body))
        }
    }
}

/// [`kappa_translate`] for use in a CTT regime with bound τ: rejects
/// `κ + 2 ≥ τ`, since translated membership needs type κ+2.
pub fn kappa_translate_in(f: &SetFormula, kappa: TypeIndex, regime: Regime) -> Result<Formula, TranslateError> {
    let tau = regime
        .bound()
        .ok_or_else(|| TranslateError::Unsupported(format!("the kappa-translation targets CTT, not {regime}")))?;
    if kappa.plus(2) >= tau {
        return Err(TranslateError::Bound(format!("kappa + 2 = {} is not below the bound {tau}", kappa.plus(2))));
    }
    Ok(kappa_translate(f, kappa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::settheory::parse_set_formula;

    #[test]
    fn single_variable() {
        let f = parse_set_formula("all x. x = x").unwrap();
        assert_eq!(kappa_translate(&f, TypeIndex::fin(3)).to_string(), "all x^3. x^3 eq x^3");
    }

    #[test]
    fn bound_is_enforced() {
        let f = parse_set_formula("all x. x = x").unwrap();
        assert!(kappa_translate_in(&f, TypeIndex::fin(2), Regime::CttStringent(TypeIndex::fin(5))).is_ok());
        assert!(kappa_translate_in(&f, TypeIndex::fin(3), Regime::CttStringent(TypeIndex::fin(5))).is_err());
        assert!(kappa_translate_in(&f, TypeIndex::OMEGA, Regime::ctt()).is_err());
    }
}
