//! The proof checker.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::axioms::{self, AxiomError, SchemeKind};
use super::proof::{ProofObject, ProofStep, RuleTag, Scheme};
use crate::kernel::{alpha_eq, check, expand_all, occurs_free, subst, Formula, Regime, Symbol, TypeIndex};

/// Which condition a rejected step violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Violation {
    /// A formula is not well-formed in the proof's regime.
    IllFormed,
    /// The quantifier type pair is out of order, or differs where the
    /// regime requires equal types.
    TypeSideCondition,
    /// The eigenvariable occurs in an open assumption or in the conclusion.
    Eigenvariable,
    /// A scheme instance is malformed, e.g. its witness occurs in φ.
    SchemeInstance,
    /// The axiom or scheme is not part of the declared theory.
    AxiomUnavailable,
    /// A premise or discharge refers to a missing or later step.
    DanglingPremise,
    /// A discharged step is not an assumption.
    BadDischarge,
    /// The premises do not fit the rule, or the conclusion does not follow.
    RuleMismatch,
    /// The last step still depends on an undeclared assumption.
    OpenAssumption,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("unit variant");
        f.write_str(v.as_str().unwrap_or_default())
    }
}

impl std::str::FromStr for Violation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "ill-formed" => Violation::IllFormed,
            "type-side-condition" => Violation::TypeSideCondition,
            "eigenvariable" => Violation::Eigenvariable,
            "scheme-instance" => Violation::SchemeInstance,
            "axiom-unavailable" => Violation::AxiomUnavailable,
            "dangling-premise" => Violation::DanglingPremise,
            "bad-discharge" => Violation::BadDischarge,
            "rule-mismatch" => Violation::RuleMismatch,
            "open-assumption" => Violation::OpenAssumption,
            _ => return Err(format!("unknown violation `{s}`")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum ProofVerdict {
    Accepted { conclusion: String },
    Rejected { step: usize, condition: Violation, detail: String },
}

impl ProofVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, ProofVerdict::Accepted { .. })
    }

    pub fn condition(&self) -> Option<Violation> {
        match self {
            ProofVerdict::Rejected { condition, .. } => Some(*condition),
            ProofVerdict::Accepted { .. } => None,
        }
    }
}

impl fmt::Display for ProofVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofVerdict::Accepted { conclusion } => write!(f, "Accepted: {conclusion}"),
            ProofVerdict::Rejected { step, condition, detail } => {
                write!(f, "Rejected at step {step} [{condition}]: {detail}")
            }
        }
    }
}

struct Reject(Violation, String);

type Check<T> = Result<T, Reject>;

fn fail<T>(v: Violation, msg: impl Into<String>) -> Check<T> {
    Err(Reject(v, msg.into()))
}

fn mismatch<T>(msg: impl Into<String>) -> Check<T> {
    fail(Violation::RuleMismatch, msg)
}

/// Equal up to bound names, either as written or after expanding notation.
fn same(a: &Formula, b: &Formula) -> bool {
    alpha_eq(a, b) || alpha_eq(&expand_all(a), &expand_all(b))
}

struct Checker<'p> {
    proof: &'p ProofObject,
    regime: Regime,
    /// Open assumptions (step numbers) of each checked step.
    deps: Vec<BTreeSet<usize>>,
}

/// Check every step in order; the first violation rejects the proof.
pub fn check_proof(p: &ProofObject) -> ProofVerdict {
    let mut c = Checker { proof: p, regime: p.theory.regime, deps: Vec::with_capacity(p.steps.len()) };
    for s in &p.steps {
        match c.step(s) {
            Ok(d) => c.deps.push(d),
            Err(Reject(condition, detail)) => return ProofVerdict::Rejected { step: s.n, condition, detail },
        }
    }
    let last = p.steps.last().expect("proofs are nonempty");
    let open: Vec<usize> = c.deps[last.n - 1]
        .iter()
        .copied()
        .filter(|&a| !p.hypotheses.iter().any(|h| same(h, &p.steps[a - 1].formula)))
        .collect();
    if let Some(a) = open.first() {
        return ProofVerdict::Rejected {
            step: last.n,
            condition: Violation::OpenAssumption,
            detail: format!("the conclusion depends on the undischarged assumption at step {a}"),
        };
    }
    ProofVerdict::Accepted { conclusion: last.formula.to_string() }
}

impl Checker<'_> {
    fn formula(&self, n: usize) -> &Formula {
        &self.proof.steps[n - 1].formula
    }

    fn premises<const K: usize>(&self, s: &ProofStep) -> Check<[usize; K]> {
        s.premises.clone().try_into().or_else(|_| mismatch(format!("{} takes {K} premise(s)", s.rule)))
    }

    /// Types of a quantifier instance: the regime decides whether `lower`
    /// may sit below `upper`.
    fn type_pair(&self, upper: TypeIndex, lower: TypeIndex, what: &str) -> Check<()> {
        let ok = if self.regime.cumulative_domains() { lower <= upper } else { lower == upper };
        if ok {
            Ok(())
        } else {
            let need = if self.regime.cumulative_domains() { "at most" } else { "equal to" };
            fail(
                Violation::TypeSideCondition,
                format!("{what} has type {lower}, which must be {need} {upper} in {}", self.regime),
            )
        }
    }

    /// The eigenvariable must not occur free in any open assumption in `deps`
    /// nor in the given formulas.
    fn eigen_free(&self, b: &Symbol, deps: &BTreeSet<usize>, also: &[&Formula]) -> Check<()> {
        if let Some(a) = deps.iter().find(|&&a| occurs_free(self.formula(a), b)) {
            return fail(
                Violation::Eigenvariable,
                format!("eigenvariable {b} occurs in the open assumption at step {a}"),
            );
        }
        if also.iter().any(|f| occurs_free(f, b)) {
            return fail(
                Violation::Eigenvariable,
                format!("eigenvariable {b} occurs in the conclusion or major premise"),
            );
        }
        Ok(())
    }

    fn union(&self, ps: &[usize]) -> BTreeSet<usize> {
        ps.iter().flat_map(|&p| self.deps[p - 1].iter().copied()).collect()
    }

    fn step(&self, s: &ProofStep) -> Check<BTreeSet<usize>> {
        for &p in s.premises.iter().chain(&s.discharged) {
            if p == 0 || p >= s.n {
                return fail(Violation::DanglingPremise, format!("step {p} is not an earlier step"));
            }
        }
        if let Err(e) = check(&s.formula, self.regime) {
            return fail(Violation::IllFormed, e.to_string());
        }
        for &d in &s.discharged {
            if self.proof.steps[d - 1].rule != RuleTag::Assume {
                return fail(Violation::BadDischarge, format!("step {d} is not an assumption"));
            }
        }
        let f = &s.formula;
        let mut deps = self.union(&s.premises);
        for d in &s.discharged {
            deps.remove(d);
        }
        match s.rule {
            RuleTag::Assume => {
                if !s.premises.is_empty() {
                    return mismatch("an assumption has no premises");
                }
                return Ok(BTreeSet::from([s.n]));
            }
            RuleTag::Reiterate => {
                let [p] = self.premises(s)?;
                if !same(self.formula(p), f) {
                    return mismatch("reiteration changes the formula");
                }
            }
            RuleTag::AndI => {
                let [a, b] = self.premises(s)?;
                if !same(f, &self.formula(a).clone().and(self.formula(b).clone())) {
                    return mismatch("conclusion is not the conjunction of the premises");
                }
            }
            RuleTag::AndE => {
                let [p] = self.premises(s)?;
                match self.formula(p) {
                    Formula::And(l, r) if same(l, f) || same(r, f) => {}
                    _ => return mismatch("conclusion is not a conjunct of the premise"),
                }
            }
            RuleTag::OrI => {
                let [p] = self.premises(s)?;
                match f {
                    Formula::Or(l, r) if same(l, self.formula(p)) || same(r, self.formula(p)) => {}
                    _ => return mismatch("premise is not a disjunct of the conclusion"),
                }
            }
            RuleTag::OrE => {
                let [d, c1, c2] = self.premises(s)?;
                let Formula::Or(l, r) = self.formula(d) else { return mismatch("first premise is not a disjunction") };
                if !same(self.formula(c1), f) || !same(self.formula(c2), f) {
                    return mismatch("both cases must reach the conclusion");
                }
                let [h1, h2]: [usize; 2] = s
                    .discharged
                    .clone()
                    .try_into()
                    .or_else(|_| mismatch("or-elimination discharges two assumptions"))?;
                if !same(self.formula(h1), l) || !same(self.formula(h2), r) {
                    return mismatch("discharged assumptions must be the two disjuncts");
                }
            }
            RuleTag::ImpliesI => {
                let [p] = self.premises(s)?;
                let Formula::Implies(a, c) = f else { return mismatch("conclusion is not an implication") };
                if !same(c, self.formula(p)) {
                    return mismatch("consequent differs from the premise");
                }
                if s.discharged.len() > 1 || s.discharged.iter().any(|&d| !same(self.formula(d), a)) {
                    return mismatch("may discharge only assumptions of the antecedent");
                }
            }
            RuleTag::ImpliesE => {
                let [i, a] = self.premises(s)?;
                match self.formula(i) {
                    Formula::Implies(x, y) if same(x, self.formula(a)) && same(y, f) => {}
                    _ => return mismatch("premises are not φ → ψ and φ with conclusion ψ"),
                }
            }
            RuleTag::NotI => {
                let [p, q] = self.premises(s)?;
                let Formula::Not(inner) = f else { return mismatch("conclusion is not a negation") };
                let contradictory = same(&self.formula(p).clone().not(), self.formula(q))
                    || same(&self.formula(q).clone().not(), self.formula(p));
                if !contradictory {
                    return mismatch("premises are not contradictory");
                }
                let [h]: [usize; 1] = s
                    .discharged
                    .clone()
                    .try_into()
                    .or_else(|_| mismatch("negation introduction discharges one assumption"))?;
                if !same(self.formula(h), inner) {
                    return mismatch("discharged assumption is not the negated formula");
                }
            }
            RuleTag::NotE => {
                let [p, q] = self.premises(s)?;
                if !same(&self.formula(p).clone().not(), self.formula(q)) {
                    return mismatch("premises are not φ and ¬φ");
                }
            }
            RuleTag::Dne => {
                let [p] = self.premises(s)?;
                if !same(self.formula(p), &f.clone().not().not()) {
                    return mismatch("premise is not the double negation of the conclusion");
                }
            }
            RuleTag::IffI => {
                let [a, b] = self.premises(s)?;
                let Formula::Iff(l, r) = f else { return mismatch("conclusion is not a biconditional") };
                let fwd = l.as_ref().clone().implies(r.as_ref().clone());
                let back = r.as_ref().clone().implies(l.as_ref().clone());
                if !(same(self.formula(a), &fwd) && same(self.formula(b), &back)) {
                    return mismatch("premises are not the two implications");
                }
            }
            RuleTag::IffE => {
                let [i, a] = self.premises(s)?;
                let Formula::Iff(l, r) = self.formula(i) else {
                    return mismatch("first premise is not a biconditional");
                };
                let ok = (same(l, self.formula(a)) && same(r, f)) || (same(r, self.formula(a)) && same(l, f));
                if !ok {
                    return mismatch("conclusion does not follow from the biconditional");
                }
            }
            RuleTag::ForallE => {
                let [p] = self.premises(s)?;
                let Formula::Forall(x, body) = self.formula(p) else { return mismatch("premise is not universal") };
                let t =
                    s.instantiation.as_ref().map_or_else(|| mismatch("forall-elimination needs a witness term"), Ok)?;
                self.type_pair(x.ty, t.ty(), &format!("instance {t}"))?;
                if !same(&subst(body, x, t), f) {
                    return mismatch(format!("conclusion is not the instance at {t}"));
                }
            }
            RuleTag::ForallI => {
                let [p] = self.premises(s)?;
                let Formula::Forall(x, body) = f else { return mismatch("conclusion is not universal") };
                let b = s
                    .eigenvariable
                    .as_ref()
                    .map_or_else(|| mismatch("forall-introduction needs an eigenvariable"), Ok)?;
                self.type_pair(b.ty, x.ty, &format!("generalized variable {x}"))?;
                if !same(&subst(body, x, &b.term()), self.formula(p)) {
                    return mismatch(format!("premise is not the body at {b}"));
                }
                self.eigen_free(b, &self.deps[p - 1], &[f])?;
            }
            RuleTag::ExistsI => {
                let [p] = self.premises(s)?;
                let Formula::Exists(x, body) = f else { return mismatch("conclusion is not existential") };
                let t = s
                    .instantiation
                    .as_ref()
                    .map_or_else(|| mismatch("exists-introduction needs a witness term"), Ok)?;
                self.type_pair(x.ty, t.ty(), &format!("witness {t}"))?;
                if !same(&subst(body, x, t), self.formula(p)) {
                    return mismatch(format!("premise is not the body at {t}"));
                }
            }
            RuleTag::ExistsE => {
                let [e, c] = self.premises(s)?;
                let Formula::Exists(x, body) = self.formula(e) else {
                    return mismatch("major premise is not existential");
                };
                let b = s
                    .eigenvariable
                    .as_ref()
                    .map_or_else(|| mismatch("exists-elimination needs an eigenvariable"), Ok)?;
                if b.ty != x.ty {
                    return fail(Violation::TypeSideCondition, format!("eigenvariable {b} must have the type of {x}"));
                }
                let [h]: [usize; 1] = s
                    .discharged
                    .clone()
                    .try_into()
                    .or_else(|_| mismatch("exists-elimination discharges one assumption"))?;
                if !same(self.formula(h), &subst(body, x, &b.term())) {
                    return mismatch(format!("discharged assumption is not the body at {b}"));
                }
                if !same(self.formula(c), f) {
                    return mismatch("minor premise differs from the conclusion");
                }
                let mut side = self.deps[c - 1].clone();
                side.remove(&h);
                self.eigen_free(b, &side, &[f, self.formula(e)])?;
            }
            RuleTag::Identity | RuleTag::Axiom => {
                let Some(Scheme::Axiom { name, params }) = &s.scheme else {
                    return mismatch("missing axiom parameters");
                };
                let key = axioms::normalize(name);
                if !axioms::theory_axioms(self.proof.theory).contains(&key.as_str()) {
                    return fail(
                        Violation::AxiomUnavailable,
                        format!("{name} is not an axiom of {}", self.proof.theory),
                    );
                }
                let inst = axioms::axiom_instance(&key, params).map_err(scheme_err)?;
                if !same(&inst, f) {
                    return mismatch(format!("formula is not the {name} instance {inst}"));
                }
                return Ok(BTreeSet::new());
            }
            RuleTag::Comprehension => {
                let Some(Scheme::Comprehension { kind, z, x, y, phi, parts }) = &s.scheme else {
                    return mismatch("missing comprehension parameters");
                };
                // STT instances are CTT instances at adjacent finite types
                let available = kind.available_in(self.regime) || (*kind == SchemeKind::Stt && self.regime.is_ctt());
                if !available {
                    return fail(
                        Violation::AxiomUnavailable,
                        format!("{kind:?} comprehension is not available in {}", self.regime),
                    );
                }
                let need_x = || x.clone().ok_or_else(|| Reject(Violation::SchemeInstance, "scheme needs x".into()));
                let need_phi =
                    || phi.clone().ok_or_else(|| Reject(Violation::SchemeInstance, "scheme needs phi".into()));
                let inst = match kind {
                    SchemeKind::Stt => axioms::stt_comprehension(z, &need_x()?, &need_phi()?),
                    SchemeKind::Ctt => axioms::ctt_comprehension(z, &need_x()?, &need_phi()?),
                    SchemeKind::Fjt => axioms::fjt_comprehension(z, parts),
                    SchemeKind::Sttd => {
                        let y = y.clone().ok_or_else(|| Reject(Violation::SchemeInstance, "scheme needs y".into()))?;
                        axioms::sttd_comprehension(&y, z, &need_x()?, &need_phi()?)
                    }
                }
                .map_err(scheme_err)?;
                if !same(&inst, f) {
                    return mismatch(format!("formula is not the comprehension instance {inst}"));
                }
                return Ok(BTreeSet::new());
            }
        }
        Ok(deps)
    }
}

fn scheme_err(e: AxiomError) -> Reject {
    Reject(Violation::SchemeInstance, e.to_string())
}
