use hotk::kernel::{free_vars, parse_formula, parse_symbol, required_height, Formula, Symbol};
use hotk::models::{build_class_model, build_pure_model, find_counterexample, Assignment, Model, DEFAULT_BUDGET};
use hotk::proofkit::{check_proof, ProofJson, ProofObject, ProofVerdict, StepJson, Violation, FIXTURES};

fn json(name: &str) -> ProofJson {
    let (_, text) = FIXTURES.iter().find(|(n, _)| *n == name).unwrap();
    serde_json::from_str(text).unwrap()
}

fn verdict(j: &ProofJson) -> ProofVerdict {
    check_proof(&ProofObject::from_json(j).unwrap())
}

fn accepted_fixtures() -> Vec<(&'static str, ProofJson)> {
    FIXTURES.iter().map(|(n, _)| (*n, json(n))).filter(|(_, j)| verdict(j).is_accepted()).collect()
}

fn holds(m: &Model, f: &Formula) -> bool {
    let open: Vec<Symbol> = free_vars(f).into_iter().filter(|s| m.constant(s).is_none()).collect();
    let closed = Formula::forall_many(open, f.clone());
    find_counterexample(m, &closed, &Assignment::new(), DEFAULT_BUDGET).unwrap().is_none()
}

#[test]
fn accepted_conclusions_are_true_in_bundled_models() {
    let models = [
        build_pure_model(3).unwrap(),
        build_pure_model(4).unwrap(),
        build_class_model(1, 3).unwrap(),
        build_class_model(2, 3).unwrap(),
    ];
    for (name, j) in accepted_fixtures() {
        let ProofVerdict::Accepted { conclusion } = verdict(&j) else { unreachable!() };
        let hyps = j.hypotheses.iter().map(|h| parse_formula(h).unwrap());
        let concl = parse_formula(&conclusion).unwrap();
        let claim = match Formula::conj(hyps) {
            Some(h) => h.implies(concl),
            None => concl,
        };
        let need = required_height(&claim).unwrap();
        let mut used = 0;
        for m in models.iter().filter(|m| m.height() >= need) {
            used += 1;
            assert!(holds(m, &claim), "{name}: {claim} fails in a {} model of height {}", m.kind(), m.height());
        }
        assert!(used > 0, "{name} needs height {need}");
    }
}

#[test]
fn checking_is_deterministic_and_survives_reserialization() {
    for (name, text) in FIXTURES {
        let j: ProofJson = serde_json::from_str(text).unwrap();
        let again: ProofJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(verdict(&j), verdict(&j), "{name}");
        assert_eq!(verdict(&j), verdict(&again), "{name}");
    }
}

#[test]
fn stt_acceptance_carries_over_to_ctt() {
    let mut carried = 0;
    for (name, text) in FIXTURES {
        let mut j: ProofJson = serde_json::from_str(text).unwrap();
        j.theory = "stt".into();
        j.expect = None;
        if !verdict(&j).is_accepted() {
            continue;
        }
        carried += 1;
        for t in ["ctt", "ctt:5", "ctt:w*2"] {
            j.theory = t.into();
            assert!(verdict(&j).is_accepted(), "{name} accepted under stt but not {t}");
        }
    }
    assert!(carried > 0);
}

/// Renumber every reference to a step after `after` by `by`.
fn shift(n: usize, after: usize, by: usize) -> usize {
    if n > after {
        n + by
    } else {
        n
    }
}

/// Make the premise of the generalization at `k` also depend on an
/// assumption `marker(v)`, listed among the hypotheses so that only the
/// eigenvariable condition can object.
fn thread_assumption(j: &ProofJson, k: usize, v: &Symbol) -> ProofJson {
    let p = j.steps[k - 1].premises[0];
    let phi = j.steps[p - 1].formula.clone();
    let marker = format!("marker^{}({v})", v.ty.succ());
    let mut steps: Vec<StepJson> = Vec::new();
    for s in &j.steps {
        let mut s = s.clone();
        s.n = shift(s.n, p, 3);
        s.premises = s.premises.iter().map(|&q| shift(q, p, 3)).collect();
        s.discharge = s.discharge.iter().map(|&q| shift(q, p, 3)).collect();
        if s.n == k + 3 {
            s.premises = vec![p + 3];
        }
        steps.push(s);
        if steps.len() == p {
            let step = |n: usize, formula: String, rule: &str, premises: Vec<usize>| StepJson {
                n,
                formula,
                rule: rule.into(),
                premises,
                discharge: vec![],
                eigen: None,
                witness: None,
                scheme: None,
            };
            steps.push(step(p + 1, marker.clone(), "assume", vec![]));
            steps.push(step(p + 2, format!("({phi}) & {marker}"), "and-i", vec![p, p + 1]));
            steps.push(step(p + 3, phi.clone(), "and-e", vec![p + 2]));
        }
    }
    let mut hypotheses = j.hypotheses.clone();
    hypotheses.push(marker);
    ProofJson { theory: j.theory.clone(), hypotheses, steps, expect: None }
}

#[test]
fn an_assumption_on_the_eigenvariable_flips_the_verdict() {
    let mut mutated = 0;
    for (name, j) in accepted_fixtures() {
        for s in j.steps.iter().filter(|s| s.rule == "forall-i") {
            let eigen = parse_symbol(s.eigen.as_deref().unwrap()).unwrap();
            let other = Symbol::new("unrelated", eigen.ty);
            let control = verdict(&thread_assumption(&j, s.n, &other));
            assert!(control.is_accepted(), "{name} step {}: control rejected: {control}", s.n);
            let flipped = verdict(&thread_assumption(&j, s.n, &eigen));
            assert_eq!(flipped.condition(), Some(Violation::Eigenvariable), "{name} step {}: {flipped}", s.n);
            let ProofVerdict::Rejected { step, .. } = flipped else { unreachable!() };
            assert_eq!(step, s.n + 3, "{name}");
            mutated += 1;
        }
    }
    assert!(mutated >= 3, "only {mutated} generalizations found");
}
