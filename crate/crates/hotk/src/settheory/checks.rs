//! Set-theoretic axioms checked on membership graphs, and their
//! κ-translations checked in `T(g)`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::str::FromStr;

use serde::Serialize;

use super::construct::t_construction;
use super::formula::{axioms, eval_in_graph, SetFormula};
use super::graph::MembershipGraph;
use super::levels::levels;
use super::SetError;
use crate::kernel::{required_height, TypeIndex};
use crate::models::{
    describe_assignment, find_counterexample_with, Assignment, AxiomCheck, EvalError, Evaluator, SuiteReport,
};
use crate::translate::kappa_translate;

/// The separated variable of every corpus formula.
pub const SEPARATED: &str = "x";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SetTheory {
    /// Extensionality, Separation, Stratification.
    Lt,
    /// LT with Endless and Infinity.
    Zr,
}

impl FromStr for SetTheory {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "lt" => Ok(SetTheory::Lt),
            "zr" => Ok(SetTheory::Zr),
            _ => Err(format!("unknown set theory `{s}` (expected lt or zr)")),
        }
    }
}

impl std::fmt::Display for SetTheory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SetTheory::Lt => "LT",
            SetTheory::Zr => "Zr",
        })
    }
}

/// Check the axioms of `which` directly on `g`. Separation is checked once
/// per corpus formula, plus the full scheme via closure under removing one
/// member.
pub fn check_set_axioms(
    g: &MembershipGraph,
    which: SetTheory,
    corpus: &[SetFormula],
    budget: usize,
) -> Result<SuiteReport, SetError> {
    let mut report = SuiteReport::new(format!("graph with {} nodes", g.len()), which.to_string());
    let ext = g.extensionality_violation().map(|(a, b)| format!("{} and {}", g.name(a), g.name(b)));
    report.checks.push(AxiomCheck::new("Extensionality").outright(ext.is_none(), ext));
    report.checks.push(separation_corpus(g, corpus, budget)?);
    let removal = full_separation_gap(g);
    report
        .checks
        .push(AxiomCheck::new("Separation-Full").with_note("FULL-SEPARATION").outright(removal.is_none(), removal));
    let mut strat = AxiomCheck::new("Stratification");
    match levels(g, budget) {
        Ok(lv) => {
            let bare =
                (0..g.len() as u32).find(|&a| !lv.iter().any(|&s| g.members(a).iter().all(|&x| g.contains(s, x))));
            strat = strat.outright(bare.is_none(), bare.map(|a| format!("a := {}", g.name(a))));
        }
        Err(SetError::Budget { .. }) => strat.skip(),
        Err(e) => return Err(e),
    }
    report.checks.push(strat);
    if which == SetTheory::Zr {
        let top = (0..g.len() as u32).find(|&a| !(0..g.len() as u32).any(|b| g.contains(b, a)));
        report
            .checks
            .push(AxiomCheck::new("Endless").outright(top.is_none(), top.map(|a| format!("a := {}", g.name(a)))));
        let mut inf = AxiomCheck::new("Infinity");
        match eval_in_graph(g, &axioms::infinity(), &BTreeMap::new(), budget) {
            Ok(ok) => inf = inf.outright(ok, None),
            Err(SetError::Budget { .. }) => inf.skip(),
            Err(e) => return Err(e),
        }
        report.checks.push(inf);
    }
    Ok(report)
}

/// Some node `a` and member `x` with no node equal to `a \ {x}`.
fn full_separation_gap(g: &MembershipGraph) -> Option<String> {
    let nodes: HashSet<&[u32]> = (0..g.len() as u32).map(|a| g.members(a)).collect();
    for a in 0..g.len() as u32 {
        let ms = g.members(a);
        for (i, &x) in ms.iter().enumerate() {
            let rest: Vec<u32> = ms.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &m)| m).collect();
            if !nodes.contains(rest.as_slice()) {
                return Some(format!("a := {}, removing {}", g.name(a), g.name(x)));
            }
        }
    }
    None
}

/// For each parameter assignment, the separated subset of every node must
/// itself be a node.
fn separation_corpus(g: &MembershipGraph, corpus: &[SetFormula], budget: usize) -> Result<AxiomCheck, SetError> {
    let mut check = AxiomCheck::new("Separation");
    let n = g.len() as u128;
    let by_members: HashMap<&[u32], u32> = (0..g.len() as u32).map(|a| (g.members(a), a)).collect();
    let deg = g.all_members().iter().map(Vec::len).max().unwrap_or(0);
    'corpus: for phi in corpus {
        let phi = phi.expand();
        let params: Vec<String> = phi.free_vars().into_iter().filter(|v| v != SEPARATED).collect();
        let per_eval = phi.cost(g.len(), deg);
        let total =
            n.checked_pow(params.len() as u32).and_then(|k| k.checked_mul(n)).and_then(|k| k.checked_mul(per_eval));
        if total.is_none_or(|t| t > budget as u128) {
            check.skip();
            continue;
        }
        let mut env: BTreeMap<String, u32> = BTreeMap::new();
        let mut idx = vec![0u32; params.len()];
        loop {
            for (p, &i) in params.iter().zip(&idx) {
                env.insert(p.clone(), i);
            }
            let mut sat = Vec::with_capacity(g.len());
            for y in 0..g.len() as u32 {
                env.insert(SEPARATED.into(), y);
                sat.push(eval_in_graph(g, &phi, &env, usize::MAX)?);
            }
            env.remove(SEPARATED);
            for a in 0..g.len() as u32 {
                let t: Vec<u32> = g.members(a).iter().copied().filter(|&x| sat[x as usize]).collect();
                if !by_members.contains_key(t.as_slice()) {
                    let mut w: Vec<String> = env.iter().map(|(k, &v)| format!("{k} := {}", g.name(v))).collect();
                    w.push(format!("a := {}", g.name(a)));
                    check.record(false, || phi.to_string(), || Some(w.join(", ")));
                    continue 'corpus;
                }
            }
            // advance the parameter odometer
            let mut k = params.len();
            loop {
                if k == 0 {
                    check.record(true, String::new, || None);
                    continue 'corpus;
                }
                k -= 1;
                idx[k] += 1;
                if (idx[k] as usize) < g.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    Ok(check)
}

/// The κ-translations of the axioms of Zr, evaluated in `T(g)`. Translated
/// membership at type κ needs type κ+2, so `κ + 2` must be below the height
/// of `T(g)`.
pub fn check_kappa_axioms_in_t(
    g: &MembershipGraph,
    kappa: u32,
    corpus: &[SetFormula],
    budget: usize,
) -> Result<SuiteReport, SetError> {
    let m = t_construction(g)?;
    if kappa + 2 >= m.height() {
        return Err(SetError::Bound(format!(
            "kappa = {kappa} needs type {} but T(g) has types 0..{}",
            kappa + 2,
            m.max_type()
        )));
    }
    let k = TypeIndex::fin(kappa);
    let mut ev = Evaluator::new(&m);
    let mut report = SuiteReport::new(format!("T(graph with {} nodes)", g.len()), format!("Zr^({kappa})"));
    let seps: Vec<(String, SetFormula)> =
        corpus.iter().map(|phi| (phi.to_string(), axioms::separation(phi, SEPARATED))).collect();
    let families: Vec<(&str, Vec<(String, SetFormula)>)> = vec![
        ("Extensionality", vec![(String::new(), axioms::extensionality())]),
        ("Separation", seps),
        ("Stratification", vec![(String::new(), axioms::stratification())]),
        ("Endless", vec![(String::new(), axioms::endless())]),
        ("Infinity", vec![(String::new(), axioms::infinity())]),
    ];
    for (name, instances) in families {
        let mut check = AxiomCheck::new(name);
        for (label, ax) in instances {
            let f = kappa_translate(&ax, k);
            if required_height(&f).is_none_or(|h| h > m.height()) {
                check.skip();
                continue;
            }
            match find_counterexample_with(&mut ev, &f, &Assignment::new(), budget) {
                Ok(None) => check.record(true, String::new, || None),
                Ok(Some(a)) => check.record(false, || label.clone(), || Some(describe_assignment(&m, &a))),
                Err(EvalError::Budget { .. }) => check.skip(),
                Err(e) => return Err(SetError::Bound(e.to_string())),
            }
        }
        report.checks.push(check);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Verdict;
    use crate::settheory::{build_v, nonstandard_v4, parse_set_formula};

    #[test]
    fn v4_is_lt_not_zr() {
        let g = build_v(4).unwrap();
        let corpus = vec![parse_set_formula("x in p").unwrap(), parse_set_formula("~x = x").unwrap()];
        let r = check_set_axioms(&g, SetTheory::Zr, &corpus, 1 << 20).unwrap();
        for ax in ["Extensionality", "Separation", "Separation-Full", "Stratification"] {
            assert_eq!(r.verdict(ax), Some(Verdict::Pass), "{}", r.render_text());
        }
        assert_eq!(r.verdict("Endless"), Some(Verdict::Fail));
        assert_eq!(r.verdict("Infinity"), Some(Verdict::Fail));
    }

    #[test]
    fn nonstandard_graph_loses_separation() {
        let r = check_set_axioms(&nonstandard_v4(), SetTheory::Lt, &[], 1 << 20).unwrap();
        assert_eq!(r.verdict("Separation-Full"), Some(Verdict::Fail));
    }
}
