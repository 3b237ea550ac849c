/*!
The κ-translation from the untyped set language into CTT, the
interpretations between CTT^ω and STT↑ and between FJT and STT↓, and
round-trip checks for the latter pairs.

```
use hotk::kernel::parse_formula;
use hotk::translate::{ctt_to_sttu, fjt_to_sttd};

let f = parse_formula("y^3(x^0)").unwrap();
assert_eq!(ctt_to_sttu(&f).unwrap().to_string(), "y^3(up(up(x^0)))");
let g = fjt_to_sttd(&f).unwrap();
assert!(hotk::kernel::check_formation(&g, hotk::kernel::Regime::SttDown).is_well_formed());
```
*/

mod interp;
mod kappa;
mod roundtrip;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::kernel::{parse_index, FormationError, Formula, Regime, TypeIndex};
use crate::models::ModelError;

pub use interp::{ctt_to_sttu, fjt_to_sttd, sttd_to_fjt, sttu_to_ctt};
pub use kappa::{kappa_target, kappa_translate, kappa_translate_in};
pub use roundtrip::{reference_model, roundtrip, roundtrip_check, RoundTripReport};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TranslateError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("bound violation: {0}")]
    Bound(String),
    #[error("ill-formed input: {0}")]
    Formation(#[from] FormationError),
    #[error("no reference model: {0}")]
    NoReferenceModel(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapName {
    KappaTranslate(TypeIndex),
    ICttToSttu,
    JSttuToCtt,
    IFjtToSttd,
    JSttdToFjt,
}

/// A translation together with its source and target languages. A source of
/// `None` is the untyped set language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TranslationMap {
    pub name: MapName,
    pub source_regime: Option<Regime>,
    pub target_regime: Regime,
}

impl TranslationMap {
    pub fn new(name: MapName) -> Self {
        let (source_regime, target_regime) = match name {
            MapName::KappaTranslate(k) => (None, kappa_target(k)),
            MapName::ICttToSttu => (Some(Regime::ctt()), Regime::SttUp),
            MapName::JSttuToCtt => (Some(Regime::SttUp), Regime::ctt()),
            MapName::IFjtToSttd => (Some(Regime::Fjt), Regime::SttDown),
            MapName::JSttdToFjt => (Some(Regime::SttDown), Regime::Fjt),
        };
        TranslationMap { name, source_regime, target_regime }
    }

    /// The map going the other way, for the four interpretations.
    pub fn inverse(self) -> Option<TranslationMap> {
        let inv = match self.name {
            MapName::KappaTranslate(_) => return None,
            MapName::ICttToSttu => MapName::JSttuToCtt,
            MapName::JSttuToCtt => MapName::ICttToSttu,
            MapName::IFjtToSttd => MapName::JSttdToFjt,
            MapName::JSttdToFjt => MapName::IFjtToSttd,
        };
        Some(TranslationMap::new(inv))
    }

    /// Apply one of the four interpretations to a typed formula.
    pub fn apply(self, f: &Formula) -> Result<Formula, TranslateError> {
        match self.name {
            MapName::KappaTranslate(_) => {
                Err(TranslateError::Unsupported("the kappa-translation takes a set-language formula".into()))
            }
            MapName::ICttToSttu => ctt_to_sttu(f),
            MapName::JSttuToCtt => Ok(sttu_to_ctt(f)),
            MapName::IFjtToSttd => fjt_to_sttd(f),
            MapName::JSttdToFjt => Ok(sttd_to_fjt(f)),
        }
    }
}

impl FromStr for TranslationMap {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let name = match s {
            "i-ctt-sttu" => MapName::ICttToSttu,
            "j-sttu-ctt" => MapName::JSttuToCtt,
            "i-fjt-sttd" => MapName::IFjtToSttd,
            "j-sttd-fjt" => MapName::JSttdToFjt,
            _ => match s.strip_prefix("kappa:") {
                Some(idx) => MapName::KappaTranslate(parse_index(idx)?),
                None => {
                    return Err(format!(
                        "unknown map `{s}` (expected kappa:<idx>, i-ctt-sttu, j-sttu-ctt, i-fjt-sttd or j-sttd-fjt)"
                    ))
                }
            },
        };
        Ok(TranslationMap::new(name))
    }
}

impl fmt::Display for TranslationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name {
            MapName::KappaTranslate(k) => write!(f, "kappa:{}", k.to_string().trim_matches(['(', ')'])),
            MapName::ICttToSttu => f.write_str("i-ctt-sttu"),
            MapName::JSttuToCtt => f.write_str("j-sttu-ctt"),
            MapName::IFjtToSttd => f.write_str("i-fjt-sttd"),
            MapName::JSttdToFjt => f.write_str("j-sttd-fjt"),
        }
    }
}

impl Serialize for TranslationMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
