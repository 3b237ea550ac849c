mod common;

use common::{arb_family_formula, Family};
use hotk::kernel::{alpha_normalize, free_vars, parse_formula, Formula, Symbol};
use hotk::models::{
    build_astruct_model, build_class_model, build_fjt_canonical, build_pure_model, build_quine_model,
    build_sttd_companion, build_sttu_companion, count_entities, eval, find_counterexample, fjt_count, Assignment,
    Model, DEFAULT_BUDGET,
};
use proptest::prelude::*;

fn holds(m: &Model, f: &Formula) -> bool {
    let open: Vec<Symbol> = free_vars(f).into_iter().filter(|s| m.constant(s).is_none()).collect();
    let closed = Formula::forall_many(open, f.clone());
    find_counterexample(m, &closed, &Assignment::new(), DEFAULT_BUDGET).unwrap().is_none()
}

fn bundled() -> Vec<(&'static str, Model)> {
    vec![
        ("pure", build_pure_model(3).unwrap()),
        ("class-1", build_class_model(1, 3).unwrap()),
        ("class-2", build_class_model(2, 3).unwrap()),
        ("fjt", build_fjt_canonical(3).unwrap()),
        ("astruct", build_astruct_model(3).unwrap()),
        ("quine", build_quine_model(3).unwrap()),
    ]
}

#[test]
fn cumulative_models_nest_their_domains() {
    for (name, m) in bundled() {
        for t in 0..m.max_type() {
            let lower = m.domain(t);
            let upper = m.domain(t + 1);
            if m.is_cumulative() {
                assert!(lower.iter().all(|e| upper.contains(e)), "{name}: type {t} not inside type {}", t + 1);
            } else {
                assert!(lower.iter().all(|e| !upper.contains(e)), "{name}: types {t} and {} overlap", t + 1);
            }
        }
    }
}

#[test]
fn universal_instantiation_reaches_lower_types_in_cumulative_models() {
    for (name, m) in bundled().into_iter().filter(|(_, m)| m.is_cumulative()) {
        let top = m.max_type();
        for beta in 0..top {
            for alpha in 0..=beta {
                let f = parse_formula(&format!("(all x^{beta}. c^{top}(x^{beta})) -> c^{top}(a^{alpha})")).unwrap();
                assert!(holds(&m, &f), "{name}: instantiation from {beta} to {alpha}");
            }
        }
    }
}

#[test]
fn indiscernibility_is_a_congruence_in_bundled_models() {
    for (name, m) in bundled() {
        let top = m.max_type();
        for alpha in 0..top {
            for beta in 0..top {
                for gamma in alpha.max(beta) + 1..=top {
                    let f = parse_formula(&format!(
                        "p^{alpha} eq q^{beta} -> (c^{gamma}(p^{alpha}) <-> c^{gamma}(q^{beta}))"
                    ))
                    .unwrap();
                    assert!(holds(&m, &f), "{name}: congruence at {alpha},{beta} through type {gamma}");
                }
            }
        }
    }
}

#[test]
fn domain_sizes_follow_the_recurrence() {
    // h(n+1) = 2^(h(0)+...+h(n)), recomputed here
    let mut h = vec![1u128];
    for n in 0..4 {
        assert_eq!(fjt_count(n), Some(h[n as usize]));
        let below: u128 = h.iter().sum();
        h.push(1u128.checked_shl(below as u32).unwrap_or(0));
    }
    // h(4) = 2^2059
    assert_eq!(fjt_count(4), None);
    for height in 1..=4 {
        let m = build_fjt_canonical(height).unwrap();
        for n in 0..height {
            assert_eq!(count_entities(&m, n) as u128, h[n as usize]);
        }
    }
    for height in 1..=4 {
        let m = build_pure_model(height).unwrap();
        // the pure cumulative hierarchy: |V_{n+1}| = 2^|V_n|, starting from {∅}
        let mut size = 1usize;
        for n in 0..height {
            assert_eq!(m.domain(n).len(), size);
            size = 1 << size;
        }
    }
}

#[test]
fn chain_lemmas_hold_in_the_sttd_companion() {
    let m = build_sttd_companion(&build_fjt_canonical(3).unwrap()).unwrap();
    for f in [
        hotk::proofkit::axioms::chain_common_target(1),
        hotk::proofkit::axioms::chain_lemma_coext(1),
        hotk::proofkit::axioms::chain_lemma_agree(1, 1),
        hotk::proofkit::axioms::down_exists(1),
        hotk::proofkit::axioms::down_sim(1),
        hotk::proofkit::axioms::down_max(1),
    ] {
        assert!(holds(&m, &f), "{f}");
    }
}

#[test]
fn companions_keep_the_underlying_domains() {
    let pure = build_pure_model(3).unwrap();
    let up = build_sttu_companion(&pure).unwrap();
    let fjt = build_fjt_canonical(3).unwrap();
    let down = build_sttd_companion(&fjt).unwrap();
    for t in 0..3 {
        assert_eq!(up.domain(t).len(), pure.domain(t).len());
        assert_eq!(down.domain(t), fjt.domain(t));
    }
}

#[test]
fn model_json_round_trips() {
    for (name, m) in bundled() {
        let s = m.to_json_string();
        let back = Model::from_json_str(&s).unwrap();
        assert_eq!(back.to_json_string(), s, "{name}");
    }
    let up = build_sttu_companion(&build_pure_model(3).unwrap()).unwrap();
    let s = up.to_json_string();
    assert_eq!(Model::from_json_str(&s).unwrap().to_json_string(), s);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_ignores_bound_names(f in arb_family_formula(Family::Ctt, 1)) {
        let m = build_pure_model(3).unwrap();
        let open: Vec<Symbol> = free_vars(&f).into_iter().collect();
        let closed = Formula::forall_many(open, f);
        let a = Assignment::new();
        prop_assert_eq!(eval(&m, &closed, &a).unwrap(), eval(&m, &alpha_normalize(&closed), &a).unwrap());
    }

    #[test]
    fn fjt_eval_ignores_bound_names(f in arb_family_formula(Family::Fjt, 2)) {
        let m = build_fjt_canonical(3).unwrap();
        let open: Vec<Symbol> = free_vars(&f).into_iter().collect();
        let closed = Formula::forall_many(open, f);
        let a = Assignment::new();
        prop_assert_eq!(eval(&m, &closed, &a).unwrap(), eval(&m, &alpha_normalize(&closed), &a).unwrap());
    }
}
