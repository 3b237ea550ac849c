//! Round trips through a pair of interpretations, compared syntactically
//! after normalization and semantically on a reference model.

use serde::Serialize;

use super::{MapName, TranslateError, TranslationMap};
use crate::kernel::{alpha_normalize, check, expand_all, free_vars, required_height, Formula, Regime};
use crate::models::{
    build_fjt_canonical, build_pure_model, build_sttd_companion, build_sttu_companion, describe_assignment,
    find_counterexample, Assignment, Model, FJT_HEIGHT_CAP, PURE_HEIGHT_CAP,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundTripReport {
    pub map: TranslationMap,
    pub input: String,
    pub image: String,
    pub round_trip: String,
    /// The expanded, alpha-normalized round trip equals the input.
    pub syntactic: bool,
    /// `f ↔ roundtrip(f)` holds under every assignment in `model`.
    pub semantic: bool,
    pub model: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Apply `map` and then its inverse.
pub fn roundtrip(f: &Formula, map: TranslationMap) -> Result<(Formula, Formula), TranslateError> {
    let inv =
        map.inverse().ok_or_else(|| TranslateError::Unsupported("the kappa-translation has no inverse".into()))?;
    let image = map.apply(f)?;
    let back = inv.apply(&image)?;
    Ok((image, back))
}

/// The reference model for formulas of `regime` needing `height` type
/// levels: a pure model for CTT, its STT↑ companion, the canonical FJT
/// model, or its STT↓ companion.
pub fn reference_model(regime: Regime, height: u32) -> Result<Model, TranslateError> {
    let missing = |cap: u32| {
        TranslateError::NoReferenceModel(format!("{regime} formulas needing {height} type levels (cap {cap})"))
    };
    match regime {
        Regime::CttStringent(_) | Regime::CttLiberal(_) | Regime::SttUp => {
            let h = height.max(2);
            if h > PURE_HEIGHT_CAP {
                return Err(missing(PURE_HEIGHT_CAP));
            }
            let m = build_pure_model(h)?;
            if regime == Regime::SttUp {
                Ok(build_sttu_companion(&m)?)
            } else {
                Ok(m)
            }
        }
        Regime::Fjt | Regime::SttDown => {
            let h = height.max(2);
            if h > FJT_HEIGHT_CAP {
                return Err(missing(FJT_HEIGHT_CAP));
            }
            let m = build_fjt_canonical(h)?;
            if regime == Regime::SttDown {
                Ok(build_sttd_companion(&m)?)
            } else {
                Ok(m)
            }
        }
        Regime::Stt => Err(TranslateError::NoReferenceModel("plain STT is not the source of any pair".into())),
    }
}

/// Check the round trip of `f` through `map` and its inverse. `f` must be
/// well-formed in the map's source regime.
pub fn roundtrip_check(f: &Formula, map: TranslationMap, budget: usize) -> Result<RoundTripReport, TranslateError> {
    if matches!(map.name, MapName::KappaTranslate(_)) {
        return Err(TranslateError::Unsupported("the kappa-translation has no inverse".into()));
    }
    let source = map.source_regime.expect("interpretations have a typed source");
    check(f, source)?;
    let (image, back) = roundtrip(f, map)?;
    let syntactic = alpha_normalize(&expand_all(&back)) == alpha_normalize(&expand_all(f));
    let both = f.clone().iff(back.clone());
    let height = required_height(&both).ok_or_else(|| TranslateError::Unsupported("transfinite types".into()))?;
    let m = reference_model(source, height)?;
    let open: Vec<_> = free_vars(&both).into_iter().filter(|s| m.constant(s).is_none()).collect();
    let closed = Formula::forall_many(open, both);
    let cex = find_counterexample(&m, &closed, &Assignment::new(), budget).map_err(crate::models::ModelError::from)?;
    Ok(RoundTripReport {
        map,
        input: f.to_string(),
        image: image.to_string(),
        round_trip: back.to_string(),
        syntactic,
        semantic: cex.is_none(),
        model: format!("{} of height {}", m.kind(), m.height()),
        counterexample: cex.map(|a| describe_assignment(&m, &a)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::parse_formula;

    fn map(s: &str) -> TranslationMap {
        s.parse().unwrap()
    }

    #[test]
    fn adjacent_atom_is_syntactic() {
        let f = parse_formula("y^1(x^0)").unwrap();
        let r = roundtrip_check(&f, map("i-ctt-sttu"), 1 << 20).unwrap();
        assert!(r.syntactic && r.semantic, "{r:?}");
    }

    #[test]
    fn wide_fjt_atom_is_semantic_only() {
        let f = parse_formula("y^3(x^0)").unwrap();
        let r = roundtrip_check(&f, map("i-fjt-sttd"), 1 << 22).unwrap();
        assert!(!r.syntactic);
        assert!(r.semantic, "{r:?}");
    }

    #[test]
    fn down_atom_round_trip() {
        let f = parse_formula("y^2 dn x^1").unwrap();
        let r = roundtrip_check(&f, map("j-sttd-fjt"), 1 << 22).unwrap();
        assert!(r.semantic, "{r:?}");
    }
}
