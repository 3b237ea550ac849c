//! Proof objects and their JSON file format.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::axioms::{AxiomParams, SchemeKind};
use super::ProofError;
use crate::kernel::{parse_formula, parse_symbol, parse_term, Formula, Symbol, Term, Theory};

/// Inference rules. Quantifier rules take their type pair from the formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleTag {
    Assume,
    Reiterate,
    AndI,
    AndE,
    OrI,
    OrE,
    ImpliesI,
    ImpliesE,
    NotI,
    NotE,
    /// Classical double-negation elimination.
    Dne,
    IffI,
    IffE,
    ForallE,
    ForallI,
    ExistsI,
    ExistsE,
    Identity,
    Comprehension,
    Axiom,
}

impl FromStr for RuleTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let key: String = s.chars().filter(|c| c.is_alphanumeric()).collect::<String>().to_ascii_lowercase();
        Ok(match key.as_str() {
            "assume" | "assumption" | "hyp" => RuleTag::Assume,
            "reiterate" | "reit" => RuleTag::Reiterate,
            "andi" => RuleTag::AndI,
            "ande" => RuleTag::AndE,
            "ori" => RuleTag::OrI,
            "ore" => RuleTag::OrE,
            "impliesi" | "impi" => RuleTag::ImpliesI,
            "impliese" | "impe" | "mp" => RuleTag::ImpliesE,
            "noti" => RuleTag::NotI,
            "note" => RuleTag::NotE,
            "dne" | "raa" | "notnote" => RuleTag::Dne,
            "iffi" => RuleTag::IffI,
            "iffe" => RuleTag::IffE,
            "foralle" | "alle" => RuleTag::ForallE,
            "foralli" | "alli" => RuleTag::ForallI,
            "existsi" | "somei" => RuleTag::ExistsI,
            "existse" | "somee" => RuleTag::ExistsE,
            "identity" => RuleTag::Identity,
            "comprehension" => RuleTag::Comprehension,
            "axiom" | "theoryaxiom" => RuleTag::Axiom,
            _ => return Err(format!("unknown rule `{s}`")),
        })
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("unit variant");
        f.write_str(v.as_str().unwrap_or_default())
    }
}

/// Scheme parameters as written in a proof file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeJson {
    /// Comprehension kind: stt, ctt, fjt or sttd.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// Axiom name, for the `axiom` rule.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
    /// FJT parts as `[variable, formula]` pairs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<[String; 2]>,
    #[serde(flatten)]
    pub params: AxiomParams,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub n: usize,
    pub formula: String,
    pub rule: String,
    #[serde(default)]
    pub premises: Vec<usize>,
    #[serde(default)]
    pub discharge: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigen: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SchemeJson>,
}

/// What a fixture is expected to produce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofJson {
    pub theory: String,
    #[serde(default)]
    pub hypotheses: Vec<String>,
    pub steps: Vec<StepJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectation>,
}

/// Parsed scheme parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Scheme {
    Comprehension {
        kind: SchemeKind,
        z: Symbol,
        x: Option<Symbol>,
        y: Option<Symbol>,
        phi: Option<Formula>,
        parts: Vec<(Symbol, Formula)>,
    },
    Axiom {
        name: String,
        params: AxiomParams,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProofStep {
    pub n: usize,
    pub formula: Formula,
    pub rule: RuleTag,
    pub premises: Vec<usize>,
    pub discharged: Vec<usize>,
    pub eigenvariable: Option<Symbol>,
    pub instantiation: Option<Term>,
    pub scheme: Option<Scheme>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProofObject {
    pub theory: Theory,
    pub hypotheses: Vec<Formula>,
    pub steps: Vec<ProofStep>,
    pub expect: Option<Expectation>,
}

fn at<T, E: fmt::Display>(step: usize, r: Result<T, E>) -> Result<T, ProofError> {
    r.map_err(|e| ProofError::Step { step, msg: e.to_string() })
}

fn scheme(step: usize, rule: RuleTag, s: &SchemeJson) -> Result<Scheme, ProofError> {
    let sym = |v: &Option<String>| -> Result<Option<Symbol>, ProofError> {
        v.as_deref().map(|t| at(step, parse_symbol(t))).transpose()
    };
    if rule == RuleTag::Axiom || rule == RuleTag::Identity {
        let name = if rule == RuleTag::Identity {
            "identity".to_string()
        } else {
            s.name.clone().ok_or_else(|| ProofError::Step { step, msg: "axiom step needs scheme.name".into() })?
        };
        return Ok(Scheme::Axiom { name, params: s.params });
    }
    let kind = s.kind.as_deref().and_then(SchemeKind::parse).ok_or_else(|| ProofError::Step {
        step,
        msg: "comprehension step needs scheme.kind (stt, ctt, fjt, sttd)".into(),
    })?;
    let z = sym(&s.z)?.ok_or_else(|| ProofError::Step { step, msg: "comprehension step needs scheme.z".into() })?;
    let phi = s.phi.as_deref().map(|t| at(step, parse_formula(t))).transpose()?;
    let parts = s
        .parts
        .iter()
        .map(|[v, f]| Ok((at(step, parse_symbol(v))?, at(step, parse_formula(f))?)))
        .collect::<Result<Vec<_>, ProofError>>()?;
    Ok(Scheme::Comprehension { kind, z, x: sym(&s.x)?, y: sym(&s.y)?, phi, parts })
}

impl ProofObject {
    pub fn from_json(j: &ProofJson) -> Result<ProofObject, ProofError> {
        let theory: Theory = j.theory.parse().map_err(ProofError::Malformed)?;
        let hypotheses = j.hypotheses.iter().map(|h| at(0, parse_formula(h))).collect::<Result<_, _>>()?;
        let mut steps = Vec::with_capacity(j.steps.len());
        for (i, s) in j.steps.iter().enumerate() {
            if s.n != i + 1 {
                return Err(ProofError::Malformed(format!("step {} is numbered {}", i + 1, s.n)));
            }
            let rule: RuleTag = at(s.n, s.rule.parse::<RuleTag>())?;
            let scheme = match (&s.scheme, rule) {
                (Some(sc), _) => Some(scheme(s.n, rule, sc)?),
                (None, RuleTag::Axiom | RuleTag::Comprehension) => {
                    return Err(ProofError::Step { step: s.n, msg: format!("{rule} step needs a scheme") })
                }
                (None, RuleTag::Identity) => Some(scheme(s.n, rule, &SchemeJson::default())?),
                (None, _) => None,
            };
            steps.push(ProofStep {
                n: s.n,
                formula: at(s.n, parse_formula(&s.formula))?,
                rule,
                premises: s.premises.clone(),
                discharged: s.discharge.clone(),
                eigenvariable: s.eigen.as_deref().map(|t| at(s.n, parse_symbol(t))).transpose()?,
                instantiation: s.witness.as_deref().map(|t| at(s.n, parse_term(t))).transpose()?,
                scheme,
            });
        }
        if steps.is_empty() {
            return Err(ProofError::Malformed("a proof needs at least one step".into()));
        }
        Ok(ProofObject { theory, hypotheses, steps, expect: j.expect.clone() })
    }
}

pub fn parse_proof(text: &str) -> Result<ProofObject, ProofError> {
    let j: ProofJson = serde_json::from_str(text).map_err(|e| ProofError::Json(e.to_string()))?;
    ProofObject::from_json(&j)
}
