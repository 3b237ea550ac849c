//! The interpretations I and J between CTT^ω and STT↑, and between FJT and
//! STT↓. Inputs are fully expanded first, so only primitive atoms remain.

use super::TranslateError;
use crate::kernel::{eliminate_descriptions, expand_all, Formula, Fresh, Sugar, Term};

/// Rebuild `f`, replacing every atom by `atom(f)`.
fn map_atoms(
    f: &Formula,
    atom: &mut impl FnMut(&Formula) -> Result<Formula, TranslateError>,
) -> Result<Formula, TranslateError> {
    Ok(match f {
        Formula::Not(a) => map_atoms(a, atom)?.not(),
        Formula::And(a, b) => map_atoms(a, atom)?.and(map_atoms(b, atom)?),
        Formula::Or(a, b) => map_atoms(a, atom)?.or(map_atoms(b, atom)?),
        Formula::Implies(a, b) => map_atoms(a, atom)?.implies(map_atoms(b, atom)?),
        Formula::Iff(a, b) => map_atoms(a, atom)?.iff(map_atoms(b, atom)?),
        Formula::Forall(v, b) => Formula::forall(v.clone(), map_atoms(b, atom)?),
        Formula::Exists(v, b) => Formula::exists(v.clone(), map_atoms(b, atom)?),
        _ => atom(f)?,
    })
}

fn finite(t: &Term) -> Result<u32, TranslateError> {
    t.ty().as_finite().ok_or_else(|| TranslateError::Unsupported(format!("transfinite type in `{t}`")))
}

fn no_transfinite(f: &Formula) -> Result<(), TranslateError> {
    match f.max_type() {
        Some(t) if !t.is_finite() => Err(TranslateError::Unsupported(format!("transfinite type {t}"))),
        _ => Ok(()),
    }
}

/// I: CTT^ω → STT↑. `y^n(x^m)` becomes `y^n(up^{n-1-m}(x^m))`.
pub fn ctt_to_sttu(f: &Formula) -> Result<Formula, TranslateError> {
    no_transfinite(f)?;
    map_atoms(&expand_all(f), &mut |a| match a {
        Formula::Apply(y, x) => {
            let (n, m) = (finite(y)?, finite(x)?);
            if n <= m {
                return Err(TranslateError::Unsupported(format!("`{a}` applies downward, which CTT^ω does not allow")));
            }
            Ok(Formula::apply(y.clone(), x.clone().up_n(n - 1 - m)))
        }
        _ => Ok(a.clone()),
    })
}

fn lift_ups(t: &Term) -> Term {
    match t {
        Term::Sym(_) => t.clone(),
        Term::Up(i) | Term::Lift(i) => Term::Lift(Box::new(lift_ups(i))),
    }
}

/// J: STT↑ → CTT^ω. `up(x^n)` becomes the description "the `y^{n+1}` with
/// `x ≡ y`", which is then eliminated in Russellian form.
pub fn sttu_to_ctt(f: &Formula) -> Formula {
    let mapped = map_atoms(&expand_all(f), &mut |a| {
        Ok(match a {
            Formula::Apply(y, x) => Formula::Apply(lift_ups(y), lift_ups(x)),
            Formula::Eq(y, x) => Formula::Eq(lift_ups(y), lift_ups(x)),
            _ => a.clone(),
        })
    })
    .expect("J is total");
    eliminate_descriptions(&mapped)
}

/// I: FJT → STT↓. `y^n(x^m)` with `n > m + 1` becomes
/// `∀y^{n-1}…∀y^{m+1}(y^n ▽ y^{n-1} ∧ … ∧ y^{m+2} ▽ y^{m+1} → y^{m+1}(x^m))`,
/// with fresh chain variables.
pub fn fjt_to_sttd(f: &Formula) -> Result<Formula, TranslateError> {
    no_transfinite(f)?;
    let e = expand_all(f);
    let mut fresh = Fresh::for_formula(&e);
    map_atoms(&e, &mut |a| match a {
        Formula::Apply(y, x) => {
            let (n, m) = (finite(y)?, finite(x)?);
            if n <= m {
                return Err(TranslateError::Unsupported(format!("`{a}` applies downward, which FJT does not allow")));
            }
            if n == m + 1 {
                return Ok(a.clone());
            }
            let chain: Vec<_> = (m + 1..n).rev().map(|k| fresh.symbol("y", k)).collect();
            let mut links = vec![Formula::down(y.clone(), chain[0].term())];
            links.extend(chain.windows(2).map(|w| Formula::down(w[0].term(), w[1].term())));
            let last = chain.last().expect("gap of at least two");
            let body = Formula::conj(links).expect("nonempty").implies(Formula::apply(last.term(), x.clone()));
            Ok(Formula::forall_many(chain.iter().cloned(), body))
        }
        _ => Ok(a.clone()),
    })
}

/// J: STT↓ → FJT. `y^{n+1} ▽ x^n` becomes `y ≈_n x`, expanded.
pub fn sttd_to_fjt(f: &Formula) -> Formula {
    let mapped = map_atoms(&expand_all(f), &mut |a| {
        Ok(match a {
            Formula::Down(y, x) => {
                let n = x.ty().as_finite().unwrap_or(0);
                Formula::Sugar(Sugar::CoextBounded(n, y.clone(), x.clone()))
            }
            _ => a.clone(),
        })
    })
    .expect("J is total");
    expand_all(&mapped)
}
