//! Per-axiom checking of a model against a theory.

use std::collections::{HashMap, HashSet};

use super::eval::{describe_assignment, find_counterexample_with, Assignment, EvalError, Evaluator};
use super::model::{Entity, Model};
use super::report::{AxiomCheck, SuiteReport};
use super::ModelError;
use crate::kernel::{required_height, Formula, Overlay, Regime, Theory, TypeIndex};
use crate::proofkit::axioms;

const FULL: &str = "FULL-COMPREHENSION";

/// Check every axiom of `theory` whose instances stay at types `≤ max_type`.
///
/// Comprehension schemes are checked by extensional completeness: every
/// candidate extension over the relevant domains must be realized by an
/// entity. Formula axioms are evaluated instance by instance; instances whose
/// expansion needs more type levels than the model has are counted as skipped.
pub fn check_axiom_suite(m: &Model, theory: Theory, max_type: u32, budget: usize) -> Result<SuiteReport, ModelError> {
    if max_type >= m.height() {
        return Err(ModelError::Invalid(format!(
            "max type {max_type} is outside the model's types 0..{}",
            m.max_type()
        )));
    }
    let mut s = Suite { m, ev: Evaluator::new(m), max_type, budget, checks: Vec::new() };
    match theory.regime {
        Regime::Stt => {
            s.adjacent_comprehension("Comprehension", 0..=max_type);
            s.identity();
        }
        Regime::SttUp => {
            if !m.has_up_map() {
                return Err(ModelError::WrongInput("STT↑ axioms need a model with an up map".into()));
            }
            s.adjacent_comprehension("Comprehension", 0..=max_type);
            s.identity();
            s.up_laws()?;
        }
        Regime::SttDown => {
            if !m.has_down_rel() {
                return Err(ModelError::WrongInput("STT↓ axioms need a model with a down relation".into()));
            }
            s.adjacent_comprehension("Comprehension", 0..=0);
            s.sttd_comprehension();
            s.identity();
            let top = max_type.saturating_sub(1);
            s.family("Down-Exists", (1..=top).map(|n| (format!("n={n}"), axioms::down_exists(n))))?;
            s.family("Down-Sim", (1..=top).map(|n| (format!("n={n}"), axioms::down_sim(n))))?;
            s.family("Down-Max", (1..=top).map(|n| (format!("n={n}"), axioms::down_max(n))))?;
        }
        Regime::Fjt => {
            s.fjt_comprehension();
            s.identity();
            s.family("FJT-Ext", (1..=max_type).map(|n| (format!("n={n}"), axioms::fjt_ext(n))))?;
        }
        Regime::CttStringent(_) | Regime::CttLiberal(_) => {
            s.adjacent_comprehension("CTT-Comprehension", 0..=max_type);
            s.identity();
            let raising = pairs(max_type, |a, b| a <= b)
                .map(|(a, b)| (format!("alpha={a}, beta={b}"), axioms::type_raising(a, b).expect("alpha <= beta")));
            s.family("Type-Raising", raising)?;
            let founded = pairs(max_type, |_, b| b < max_type)
                .map(|(a, b)| (format!("alpha={a}, beta={b}"), axioms::type_founded(a, b)));
            s.family("Type-Founded", founded)?;
            s.family("Type-Base", (0..=max_type).map(|a| (format!("alpha={a}"), axioms::type_base(a))))?;
            if theory.overlay == Overlay::Pctt {
                let ext = pairs(max_type, |a, b| a <= b && b < max_type)
                    .map(|(a, b)| (format!("alpha={a}, beta={b}"), axioms::type_ext(a, b).expect("alpha <= beta")));
                s.family("Type-Ext", ext)?;
                s.family("Type-Purity", std::iter::once((String::new(), axioms::type_purity())))?;
            }
        }
    }
    Ok(SuiteReport { subject: m.kind().to_string(), theory: theory.to_string(), checks: s.checks })
}

/// The first adjacent pair of types `(α, α+1)` at which some extension over
/// `D_α` has no type-`α+1` entity, described. `None` for a standard model.
pub fn standardness_witness(m: &Model, budget: usize) -> Result<Option<(u32, String)>, ModelError> {
    for a in 0..m.max_type() {
        match completeness(m, &[m.domain(a)], m.domain(a + 1).iter().copied(), budget) {
            Completeness::Complete => {}
            Completeness::Missing(w) => return Ok(Some((a, w))),
            Completeness::TooLarge(needed) => return Err(ModelError::Budget { needed, budget }),
        }
    }
    Ok(None)
}

/// Whether every extension at every adjacent pair of types is realized.
pub fn is_standard_model(m: &Model, budget: usize) -> Result<bool, ModelError> {
    Ok(standardness_witness(m, budget)?.is_none())
}

fn pairs(max: u32, keep: impl Fn(u32, u32) -> bool) -> impl Iterator<Item = (u32, u32)> {
    (0..=max).flat_map(move |a| (0..=max).map(move |b| (a, b))).filter(move |&(a, b)| keep(a, b))
}

struct Suite<'m> {
    m: &'m Model,
    ev: Evaluator<'m>,
    max_type: u32,
    budget: usize,
    checks: Vec<AxiomCheck>,
}

/// Outcome of a completeness search over one family of candidate extensions.
enum Completeness {
    Complete,
    /// A candidate extension no entity realizes, described.
    Missing(String),
    TooLarge(u128),
}

impl Suite<'_> {
    fn family(&mut self, name: &str, instances: impl Iterator<Item = (String, Formula)>) -> Result<(), ModelError> {
        let mut check = AxiomCheck::new(name);
        let height = self.m.height();
        for (label, f) in instances {
            match required_height(&f) {
                Some(h) if h <= height => {}
                _ => {
                    check.skip();
                    continue;
                }
            }
            match find_counterexample_with(&mut self.ev, &f, &Assignment::new(), self.budget) {
                Ok(None) => check.record(true, String::new, || None),
                Ok(Some(a)) => {
                    let m = self.m;
                    check.record(false, || label.clone(), || Some(describe_assignment(m, &a)));
                }
                Err(EvalError::Budget { .. }) => check.skip(),
                Err(e) => return Err(e.into()),
            }
        }
        self.checks.push(check);
        Ok(())
    }

    fn identity(&mut self) {
        let instances: Vec<_> =
            (0..=self.max_type).map(|a| (format!("alpha={a}"), axioms::identity(TypeIndex::fin(a)))).collect();
        // identity instances never touch up or down, so evaluation cannot fail
        // other than by budget
        self.family("Identity", instances.into_iter()).expect("identity evaluates");
    }

    fn up_laws(&mut self) -> Result<(), ModelError> {
        let t = self.max_type;
        let nk = |extra: u32| {
            (1..=t).flat_map(move |k| (0..=t).map(move |n| (n, k))).filter(move |&(n, k)| n + k + extra <= t)
        };
        self.family("Up-Inject", nk(0).map(|(n, k)| (format!("n={n}, k={k}"), axioms::up_inject(n, k))))?;
        self.family("Up-Possess", nk(1).map(|(n, k)| (format!("n={n}, k={k}"), axioms::up_possess(n, k))))?;
        self.family("Up-Founded", nk(1).map(|(n, k)| (format!("n={n}, k={k}"), axioms::up_founded(n, k))))?;
        self.family("Up-Base", (1..=t).map(|k| (format!("k={k}"), axioms::up_base(k))))
    }

    fn push_completeness(&mut self, check: &mut AxiomCheck, label: String, c: Completeness) {
        match c {
            Completeness::Complete => check.record(true, String::new, || None),
            Completeness::Missing(w) => check.record(false, || label, || Some(w)),
            Completeness::TooLarge(_) => check.skip(),
        }
    }

    fn finish_scheme(&mut self, mut check: AxiomCheck) {
        let note = if check.skipped > 0 { format!("{FULL}; some types exceed the subset budget") } else { FULL.into() };
        check.note = Some(note);
        self.checks.push(check);
    }

    /// `∃z^{α+1}∀x^α(z(x) ↔ φ)` for every α in `range` with α+1 in the model.
    fn adjacent_comprehension(&mut self, name: &str, range: std::ops::RangeInclusive<u32>) {
        let mut check = AxiomCheck::new(name);
        for a in range {
            if a + 1 >= self.m.height() {
                check.skip();
                continue;
            }
            let c = completeness(self.m, &[self.m.domain(a)], self.m.domain(a + 1).iter().copied(), self.budget);
            self.push_completeness(&mut check, format!("alpha={a}"), c);
        }
        self.finish_scheme(check);
    }

    /// Candidate extensions are tuples with one subset per lower type.
    fn fjt_comprehension(&mut self) {
        let mut check = AxiomCheck::new("FJT-Comprehension");
        for n in 1..=self.max_type {
            let lower: Vec<&[Entity]> = (0..n).map(|i| self.m.domain(i)).collect();
            let c = completeness(self.m, &lower, self.m.domain(n).iter().copied(), self.budget);
            self.push_completeness(&mut check, format!("n={n}"), c);
        }
        self.finish_scheme(check);
    }

    /// For each `y^n`, the ▽-predecessors of `y` realize every subset of `D_n`.
    fn sttd_comprehension(&mut self) {
        let mut check = AxiomCheck::new("STTd-Comprehension");
        for n in 1..self.max_type {
            let m = self.m;
            let mut outcome = Completeness::Complete;
            for &y in m.domain(n) {
                let preds = m.domain(n + 1).iter().copied().filter(|&z| m.down(n, z, y));
                match completeness(m, &[m.domain(n)], preds, self.budget / m.domain(n).len().max(1)) {
                    Completeness::Complete => {}
                    Completeness::Missing(w) => {
                        outcome = Completeness::Missing(format!("y := {}: {w}", m.describe(y)));
                        break;
                    }
                    big => {
                        outcome = big;
                        break;
                    }
                }
            }
            self.push_completeness(&mut check, format!("n={n}"), outcome);
        }
        self.finish_scheme(check);
    }
}

/// Whether `candidates` realize every tuple of subsets of the `lower` domains.
fn completeness(
    m: &Model,
    lower: &[&[Entity]],
    candidates: impl Iterator<Item = Entity>,
    budget: usize,
) -> Completeness {
    let width: usize = lower.iter().map(|d| d.len()).sum();
    if width >= 64 || (1u128 << width) > budget as u128 {
        return Completeness::TooLarge(if width >= 127 { u128::MAX } else { 1u128 << width });
    }
    // bit position of each (lower domain, entity) slot
    let slots: Vec<HashMap<Entity, usize>> = {
        let mut offset = 0;
        lower
            .iter()
            .map(|d| {
                let map = d.iter().enumerate().map(|(i, &e)| (e, offset + i)).collect();
                offset += d.len();
                map
            })
            .collect()
    };
    let mut seen: HashSet<u64> = HashSet::new();
    for z in candidates {
        let mut sig = 0u64;
        for &x in m.members(z) {
            for s in &slots {
                if let Some(&bit) = s.get(&x) {
                    sig |= 1 << bit;
                }
            }
        }
        seen.insert(sig);
    }
    if seen.len() as u128 == 1u128 << width {
        return Completeness::Complete;
    }
    let missing = (0..1u64 << width).find(|s| !seen.contains(s)).expect("some signature is missing");
    let mut parts = Vec::new();
    let mut offset = 0;
    for d in lower {
        let chosen: Vec<String> = d
            .iter()
            .enumerate()
            .filter(|(i, _)| missing >> (offset + i) & 1 == 1)
            .map(|(_, &e)| m.describe(e))
            .collect();
        offset += d.len();
        parts.push(format!("{{{}}}", chosen.join(", ")));
    }
    Completeness::Missing(format!("no entity has extension {}", parts.join(" / ")))
}
