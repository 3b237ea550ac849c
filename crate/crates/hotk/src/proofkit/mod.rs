/*!
Linear natural-deduction proofs with typed quantifier rules, axiom and
scheme instances for every theory, and a bundled set of fixtures.

```
use hotk::proofkit::{check_proof, fixture};

let p = fixture("raising_0_1").unwrap();
assert!(check_proof(&p).is_accepted());
```
*/

pub mod axioms;
mod check;
mod proof;

use serde::Serialize;

pub use check::{check_proof, ProofVerdict, Violation};
pub use proof::{parse_proof, Expectation, ProofJson, ProofObject, ProofStep, RuleTag, Scheme, SchemeJson, StepJson};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ProofError {
    #[error("malformed proof file: {0}")]
    Json(String),
    #[error("step {step}: {msg}")]
    Step { step: usize, msg: String },
    #[error("malformed proof: {0}")]
    Malformed(String),
    #[error("no fixture named `{0}`")]
    MissingFixture(String),
}

macro_rules! fixtures {
    ($($name:literal),* $(,)?) => {
        /// Every bundled proof, by name.
        pub const FIXTURES: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../../data/proofs/", $name, ".proof")))),*
        ];
    };
}

fixtures!(
    "raising_0_1",
    "raising_1_2",
    "raising_0_2",
    "eq_congruence_0_0",
    "comprehension_ctt",
    "raising_via_axiom_0_2",
    "excluded_middle",
    "neg_eigenvariable",
    "neg_type_side",
    "neg_witness_in_phi",
    "neg_stt_cross_exists",
    "neg_stt_raising",
    "neg_dangling_premise",
    "neg_axiom_unavailable",
    "neg_open_assumption",
);

pub fn fixture(name: &str) -> Result<ProofObject, ProofError> {
    let (_, text) =
        FIXTURES.iter().find(|(n, _)| *n == name).ok_or_else(|| ProofError::MissingFixture(name.to_string()))?;
    parse_proof(text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureResult {
    pub name: String,
    pub verdict: ProofVerdict,
    pub expected: Option<Expectation>,
    /// The verdict, failing step and violated condition match the expectation.
    pub as_expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub results: Vec<FixtureResult>,
}

impl FixtureReport {
    pub fn all_as_expected(&self) -> bool {
        self.results.iter().all(|r| r.as_expected)
    }

    pub fn render_text(&self) -> String {
        self.results
            .iter()
            .map(|r| format!("{:<24} {} {}\n", r.name, if r.as_expected { "ok  " } else { "FAIL" }, r.verdict))
            .collect()
    }
}

fn matches(v: &ProofVerdict, e: &Expectation) -> bool {
    match v {
        ProofVerdict::Accepted { .. } => e.verdict == "accepted",
        ProofVerdict::Rejected { step, condition, .. } => {
            e.verdict == "rejected"
                && e.condition.as_deref().is_none_or(|c| c == condition.to_string())
                && e.step.is_none_or(|s| s == *step)
        }
    }
}

/// Re-check every bundled proof against its recorded expectation.
pub fn verify_fixture_suite() -> Result<FixtureReport, ProofError> {
    let mut results = Vec::new();
    for (name, _) in FIXTURES {
        let p = fixture(name)?;
        let verdict = check_proof(&p);
        let as_expected = p.expect.as_ref().map_or(verdict.is_accepted(), |e| matches(&verdict, e));
        results.push(FixtureResult { name: name.to_string(), verdict, expected: p.expect.clone(), as_expected });
    }
    Ok(FixtureReport { results })
}
