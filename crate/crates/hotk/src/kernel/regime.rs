//! The six formation regimes and the PCTT overlay.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::index::{parse_index, TypeIndex};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Regime {
    Stt,
    SttUp,
    SttDown,
    CttStringent(TypeIndex),
    CttLiberal(TypeIndex),
    Fjt,
}

impl Regime {
    pub const ALL_DEFAULT: [Regime; 6] = [
        Regime::Stt,
        Regime::SttUp,
        Regime::SttDown,
        Regime::CttStringent(TypeIndex::OMEGA),
        Regime::CttLiberal(TypeIndex::OMEGA),
        Regime::Fjt,
    ];

    pub fn ctt() -> Regime {
        Regime::CttStringent(TypeIndex::OMEGA)
    }

    pub fn bound(self) -> Option<TypeIndex> {
        match self {
            Regime::CttStringent(t) | Regime::CttLiberal(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_ctt(self) -> bool {
        self.bound().is_some()
    }

    /// STT, STT↑ and STT↓: applications only between adjacent types.
    pub fn is_stt_family(self) -> bool {
        matches!(self, Regime::Stt | Regime::SttUp | Regime::SttDown)
    }

    /// Whether quantifier rules may instantiate across types (∀E^β_α, α ≤ β).
    pub fn cumulative_domains(self) -> bool {
        self.is_ctt()
    }

    /// Whether the index is admissible as a term or variable type.
    pub fn admits_index(self, t: TypeIndex) -> bool {
        match self.bound() {
            Some(tau) => t < tau,
            None => t.is_finite(),
        }
    }

    /// Whether `head(arg)` is a well-formed application.
    pub fn admits_application(self, head: TypeIndex, arg: TypeIndex) -> bool {
        match self {
            Regime::Stt | Regime::SttUp | Regime::SttDown => arg.succ() == head,
            Regime::CttStringent(_) | Regime::Fjt => head > arg,
            Regime::CttLiberal(_) => true,
        }
    }

    pub fn short_name(self) -> String {
        match self {
            Regime::Stt => "stt".into(),
            Regime::SttUp => "sttu".into(),
            Regime::SttDown => "sttd".into(),
            Regime::Fjt => "fjt".into(),
            Regime::CttStringent(t) if t == TypeIndex::OMEGA => "ctt".into(),
            Regime::CttLiberal(t) if t == TypeIndex::OMEGA => "ctt-liberal".into(),
            Regime::CttStringent(t) => format!("ctt:{}", bare(t)),
            Regime::CttLiberal(t) => format!("ctt-liberal:{}", bare(t)),
        }
    }
}

fn bare(t: TypeIndex) -> String {
    t.to_string().trim_start_matches('(').trim_end_matches(')').to_string()
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Stt => write!(f, "STT"),
            Regime::SttUp => write!(f, "STT_Up"),
            Regime::SttDown => write!(f, "STT_Down"),
            Regime::CttStringent(t) => write!(f, "CTT_Stringent({})", bare(*t)),
            Regime::CttLiberal(t) => write!(f, "CTT_Liberal({})", bare(*t)),
            Regime::Fjt => write!(f, "FJT"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum Overlay {
    #[default]
    None,
    Pctt,
}

/// A regime together with the axiom overlay selecting a theory.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Theory {
    pub regime: Regime,
    pub overlay: Overlay,
}

impl Theory {
    pub fn new(regime: Regime) -> Self {
        Theory { regime, overlay: Overlay::None }
    }

    pub fn pctt(bound: TypeIndex) -> Self {
        Theory { regime: Regime::CttStringent(bound), overlay: Overlay::Pctt }
    }
}

impl From<Regime> for Theory {
    fn from(regime: Regime) -> Self {
        Theory::new(regime)
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.overlay {
            Overlay::None => write!(f, "{}", self.regime),
            Overlay::Pctt => write!(f, "PCTT[{}]", self.regime),
        }
    }
}

impl Serialize for Theory {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for Regime {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Theory {
    type Err = String;

    /// Accepts `stt`, `sttu`, `sttd`, `fjt`, `ctt[:idx]`, `ctt-liberal[:idx]`
    /// and `pctt[:idx]`; the CTT bound defaults to `w`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().to_ascii_lowercase();
        let (head, bound) = match s.split_once(':') {
            Some((h, b)) => (h.to_string(), Some(parse_index(b)?)),
            None => (s.clone(), None),
        };
        let tau = bound.unwrap_or(TypeIndex::OMEGA);
        let finite_only = |r: Regime| -> Result<Theory, String> {
            if bound.is_some() {
                return Err(format!("regime `{head}` takes no bound"));
            }
            Ok(Theory::new(r))
        };
        match head.as_str() {
            "stt" => finite_only(Regime::Stt),
            "sttu" | "stt-up" | "stt_up" => finite_only(Regime::SttUp),
            "sttd" | "stt-down" | "stt_down" => finite_only(Regime::SttDown),
            "fjt" => finite_only(Regime::Fjt),
            "ctt" | "ctt-stringent" => Ok(Theory::new(Regime::CttStringent(tau))),
            "ctt-liberal" | "cttl" => Ok(Theory::new(Regime::CttLiberal(tau))),
            "pctt" => Ok(Theory::pctt(tau)),
            _ => Err(format!("unknown theory `{s}`")),
        }
    }
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(s.parse::<Theory>()?.regime)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse_back() {
        for r in Regime::ALL_DEFAULT {
            assert_eq!(r.short_name().parse::<Regime>().unwrap(), r);
        }
        assert_eq!("ctt:w+2".parse::<Regime>().unwrap(), Regime::CttStringent(TypeIndex::new(1, 2)));
        assert_eq!("pctt:5".parse::<Theory>().unwrap(), Theory::pctt(TypeIndex::fin(5)));
        assert!("stt:3".parse::<Theory>().is_err());
    }
}
