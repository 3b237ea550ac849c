mod common;

use common::{arb_family_formula, arb_formula, arb_index, Family};
use hotk::kernel::corpus::{parse_formation_corpus, FORMATION_CORPUS};
use hotk::kernel::{
    alpha_eq, alpha_normalize, check_formation, expand_abbreviations, free_vars, parse_formula, Formula, Regime,
    Symbol, Term, TypeIndex,
};
use proptest::prelude::*;

fn all_regimes() -> Vec<Regime> {
    Regime::ALL_DEFAULT.to_vec()
}

#[test]
fn corpus_formulas_print_and_reparse() {
    for case in parse_formation_corpus(FORMATION_CORPUS).unwrap() {
        let printed = case.formula.to_string();
        assert_eq!(parse_formula(&printed).unwrap(), case.formula, "{printed}");
    }
}

#[test]
fn transfinite_indices_print_and_reparse() {
    for s in ["a^w(b^3)", "a^(w+2) eq b^(w*2)", "all x^(w*3+1). x^(w*3+1) = x^(w*3+1)"] {
        let f = parse_formula(s).unwrap();
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }
}

/// The bound type of the outer quantifier of an expansion, and of the
/// quantifier directly inside its first conjunct when there is one.
fn quantifier_types(f: &Formula) -> (TypeIndex, Option<TypeIndex>) {
    match f {
        Formula::Forall(x, _) => (x.ty, None),
        Formula::Exists(x, body) => {
            let inner = match body.as_ref() {
                Formula::And(l, _) => match l.as_ref() {
                    Formula::Forall(z, _) => Some(z.ty),
                    _ => None,
                },
                _ => None,
            };
            (x.ty, inner)
        }
        other => panic!("unexpected expansion {other}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_parse_round_trip(f in arb_formula()) {
        let printed = f.to_string();
        prop_assert_eq!(parse_formula(&printed).unwrap(), f);
    }

    #[test]
    fn stringent_formation_implies_liberal(f in arb_formula(), bound in arb_index()) {
        let bound = if bound == TypeIndex::ZERO { TypeIndex::OMEGA } else { bound };
        if check_formation(&f, Regime::CttStringent(bound)).is_well_formed() {
            prop_assert!(check_formation(&f, Regime::CttLiberal(bound)).is_well_formed());
        }
    }

    #[test]
    fn stt_formation_implies_ctt(f in arb_formula()) {
        if check_formation(&f, Regime::Stt).is_well_formed() {
            prop_assert!(check_formation(&f, Regime::ctt()).is_well_formed(), "{}", f);
        }
    }

    #[test]
    fn expansion_is_sugar_free_idempotent_and_well_formed(f in arb_formula()) {
        for r in all_regimes() {
            let Ok(e) = expand_abbreviations(&f, r) else { continue };
            prop_assert!(e.is_sugar_free());
            prop_assert_eq!(&expand_abbreviations(&e, r).unwrap(), &e);
            if check_formation(&f, r).is_well_formed() {
                prop_assert!(check_formation(&e, r).is_well_formed(), "{} expands to ill-formed {} under {}", f, e, r.short_name());
            }
        }
    }

    #[test]
    fn generated_formulas_are_well_formed(
        ctt in arb_family_formula(Family::Ctt, 2),
        up in arb_family_formula(Family::SttUp, 3),
        fjt in arb_family_formula(Family::Fjt, 3),
        down in arb_family_formula(Family::SttDown, 3),
    ) {
        prop_assert!(check_formation(&ctt, Regime::ctt()).is_well_formed(), "{}", ctt);
        prop_assert!(check_formation(&up, Regime::SttUp).is_well_formed(), "{}", up);
        prop_assert!(check_formation(&fjt, Regime::Fjt).is_well_formed(), "{}", fjt);
        prop_assert!(check_formation(&down, Regime::SttDown).is_well_formed(), "{}", down);
    }

    #[test]
    fn eq_quantifies_one_above_the_larger_type(a in arb_index(), b in arb_index()) {
        let regime = Regime::CttStringent(TypeIndex::new(3, 0));
        let f = Formula::eq_ctt(Term::Sym(Symbol::new("a", a)), Term::Sym(Symbol::new("b", b)));
        let e = expand_abbreviations(&f, regime).unwrap();
        let gamma = a.max(b).succ();
        prop_assert_eq!(quantifier_types(&e), (gamma, None));
    }

    #[test]
    fn in_uses_gamma_and_its_successor(a in arb_index(), b in arb_index()) {
        let regime = Regime::CttStringent(TypeIndex::new(3, 0));
        let f = Formula::in_ctt(Term::Sym(Symbol::new("a", a)), Term::Sym(Symbol::new("b", b)));
        let e = expand_abbreviations(&f, regime).unwrap();
        let gamma = a.max(b).succ();
        prop_assert_eq!(quantifier_types(&e), (gamma, Some(gamma.succ())));
    }

    #[test]
    fn eq_and_in_respect_the_bound(a in arb_index(), b in arb_index(), bound in 1u32..8) {
        let tau = TypeIndex::fin(bound);
        let regime = Regime::CttStringent(tau);
        let top = a.max(b);
        let eq = Formula::eq_ctt(Term::Sym(Symbol::new("a", a)), Term::Sym(Symbol::new("b", b)));
        let inn = Formula::in_ctt(Term::Sym(Symbol::new("a", a)), Term::Sym(Symbol::new("b", b)));
        prop_assert_eq!(check_formation(&eq, regime).is_well_formed(), top.plus(1) < tau);
        prop_assert_eq!(check_formation(&inn, regime).is_well_formed(), top.plus(2) < tau);
    }

    #[test]
    fn alpha_normalize_is_invariant(f in arb_formula()) {
        let n = alpha_normalize(&f);
        prop_assert!(alpha_eq(&f, &n));
        prop_assert_eq!(&alpha_normalize(&n), &n);
        prop_assert_eq!(free_vars(&n), free_vars(&f));
        for r in all_regimes() {
            prop_assert_eq!(check_formation(&f, r).is_well_formed(), check_formation(&n, r).is_well_formed());
        }
    }
}
