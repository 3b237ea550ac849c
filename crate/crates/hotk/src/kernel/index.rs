//! Ordinal type indices of the form `ω·q + r`.

use std::cmp::Ordering;
use std::fmt;

/// A type index `ω·q + r`, ordered lexicographically on `(q, r)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct TypeIndex {
    pub omega_coeff: u32,
    pub finite_part: u32,
}

impl TypeIndex {
    pub const ZERO: TypeIndex = TypeIndex { omega_coeff: 0, finite_part: 0 };
    pub const OMEGA: TypeIndex = TypeIndex { omega_coeff: 1, finite_part: 0 };

    pub const fn new(omega_coeff: u32, finite_part: u32) -> Self {
        TypeIndex { omega_coeff, finite_part }
    }

    pub const fn fin(n: u32) -> Self {
        TypeIndex { omega_coeff: 0, finite_part: n }
    }

    pub fn is_finite(self) -> bool {
        self.omega_coeff == 0
    }

    pub fn is_limit(self) -> bool {
        self.omega_coeff > 0 && self.finite_part == 0
    }

    /// The finite value, if this index is below ω.
    pub fn as_finite(self) -> Option<u32> {
        self.is_finite().then_some(self.finite_part)
    }

    pub fn succ(self) -> Self {
        self.plus(1)
    }

    pub fn plus(self, k: u32) -> Self {
        TypeIndex { omega_coeff: self.omega_coeff, finite_part: self.finite_part + k }
    }

    pub fn pred(self) -> Option<Self> {
        (self.finite_part > 0).then(|| TypeIndex { omega_coeff: self.omega_coeff, finite_part: self.finite_part - 1 })
    }
}

impl Ord for TypeIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.omega_coeff, self.finite_part).cmp(&(other.omega_coeff, other.finite_part))
    }
}

impl PartialOrd for TypeIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u32> for TypeIndex {
    fn from(n: u32) -> Self {
        TypeIndex::fin(n)
    }
}

impl fmt::Display for TypeIndex {
    /// Bare for finite indices and `w`; parenthesized otherwise, so the
    /// output can follow a `^` unambiguously.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.omega_coeff, self.finite_part) {
            (0, r) => write!(f, "{r}"),
            (1, 0) => write!(f, "w"),
            (1, r) => write!(f, "(w+{r})"),
            (q, 0) => write!(f, "(w*{q})"),
            (q, r) => write!(f, "(w*{q}+{r})"),
        }
    }
}

/// Parse the text of an index without surrounding parentheses.
pub fn parse_index(s: &str) -> Result<TypeIndex, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let num = |t: &str| -> Result<u32, String> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("malformed index component `{t}`"));
        }
        t.parse::<u32>().map_err(|_| format!("index component `{t}` overflows"))
    };
    if let Some(rest) = s.strip_prefix('w') {
        if rest.is_empty() {
            return Ok(TypeIndex::OMEGA);
        }
        if rest.starts_with("^") || rest.starts_with("*w") {
            return Err("indices at or above w*w are not supported".into());
        }
        if let Some(r) = rest.strip_prefix('+') {
            return Ok(TypeIndex::new(1, num(r)?));
        }
        if let Some(r) = rest.strip_prefix('*') {
            return match r.split_once('+') {
                Some((q, r)) => Ok(TypeIndex::new(num(q)?, num(r)?)),
                None => Ok(TypeIndex::new(num(r)?, 0)),
            };
        }
        return Err(format!("malformed index `{s}`"));
    }
    Ok(TypeIndex::fin(num(&s)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_roundtrip() {
        for t in [
            TypeIndex::fin(0),
            TypeIndex::fin(7),
            TypeIndex::OMEGA,
            TypeIndex::new(1, 3),
            TypeIndex::new(2, 0),
            TypeIndex::new(3, 4),
        ] {
            let s = t.to_string();
            let inner = s.trim_start_matches('(').trim_end_matches(')');
            assert_eq!(parse_index(inner).unwrap(), t);
        }
    }

    #[test]
    fn rejects_omega_squared() {
        assert!(parse_index("w*w").is_err());
        assert!(parse_index("w^2").is_err());
        assert!(parse_index("99999999999").is_err());
    }

    #[test]
    fn limit_and_pred() {
        assert!(TypeIndex::OMEGA.is_limit());
        assert!(!TypeIndex::new(1, 1).is_limit());
        assert_eq!(TypeIndex::OMEGA.pred(), None);
        assert_eq!(TypeIndex::new(1, 1).pred(), Some(TypeIndex::OMEGA));
        assert!(TypeIndex::fin(1000) < TypeIndex::OMEGA);
    }
}
