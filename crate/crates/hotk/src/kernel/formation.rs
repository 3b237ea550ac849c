//! Formation checking for every regime, including the side-conditions of the
//! defined notation.

use serde::Serialize;

use super::index::TypeIndex;
use super::regime::Regime;
use super::syntax::{BoundRel, Formula, Sugar, Term};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FormationError {
    /// The offending subformula, printed.
    pub subformula: String,
    /// The violated rule.
    pub reason: String,
}

impl std::fmt::Display for FormationError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (in `{}`)", self.reason, self.subformula)
    }
}

impl std::error::Error for FormationError {}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "verdict")]
pub enum FormationVerdict {
    WellFormed,
    IllFormed(FormationError),
}

impl FormationVerdict {
    pub fn is_well_formed(&self) -> bool {
        matches!(self, FormationVerdict::WellFormed)
    }
}

pub fn check_formation(f: &Formula, regime: Regime) -> FormationVerdict {
    match check(f, regime) {
        Ok(()) => FormationVerdict::WellFormed,
        Err(e) => FormationVerdict::IllFormed(e),
    }
}

/// `Ok(())` when well-formed; the first violation otherwise.
pub fn check(f: &Formula, r: Regime) -> Result<(), FormationError> {
    let fail = |reason: String| FormationError { subformula: f.to_string(), reason };
    match f {
        Formula::Apply(h, a) => {
            terms(&[h, a], r).map_err(fail)?;
            if !r.admits_application(h.ty(), a.ty()) {
                return Err(fail(application_reason(r, h.ty(), a.ty())));
            }
            Ok(())
        }
        Formula::Eq(a, b) => {
            terms(&[a, b], r).map_err(fail)?;
            if a.ty() != b.ty() {
                return Err(fail(format!("strict identity needs equal types, found {} and {}", a.ty(), b.ty())));
            }
            Ok(())
        }
        Formula::Down(a, b) => {
            if r != Regime::SttDown {
                return Err(fail(format!("`dn` is not available in {r}")));
            }
            terms(&[a, b], r).map_err(fail)?;
            if b.ty() == TypeIndex::ZERO && a.ty() == TypeIndex::fin(1) {
                return Err(fail("there is no dn from type 1 to type 0".into()));
            }
            if a.ty() != b.ty().succ() || b.ty() == TypeIndex::ZERO {
                return Err(fail(format!("dn relates type n+1 to type n for n >= 1, found {} and {}", a.ty(), b.ty())));
            }
            Ok(())
        }
        Formula::Not(a) => check(a, r),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            check(a, r)?;
            check(b, r)
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            index(v.ty, r).map_err(fail)?;
            check(body, r)
        }
        Formula::Sugar(s) => {
            sugar(s, r).map_err(fail)?;
            if let Sugar::Bounded { body, .. } = s {
                check(body, r)?;
            }
            Ok(())
        }
    }
}

fn application_reason(r: Regime, head: TypeIndex, arg: TypeIndex) -> String {
    if r.is_stt_family() {
        match (head.as_finite(), arg.as_finite()) {
            (Some(h), Some(a)) => format!("application gap {} ≠ 1", h as i64 - a as i64),
            _ => format!("application {head} over {arg} needs adjacent types"),
        }
    } else {
        format!("application head type {head} is not above argument type {arg}")
    }
}

fn index(t: TypeIndex, r: Regime) -> Result<(), String> {
    if r.admits_index(t) {
        return Ok(());
    }
    Err(match r.bound() {
        Some(tau) => format!("type {t} is not below the bound {tau}"),
        None => format!("type {t} is transfinite; {r} has finite types only"),
    })
}

fn term(t: &Term, r: Regime) -> Result<(), String> {
    match t {
        Term::Sym(s) => index(s.ty, r),
        Term::Up(inner) => {
            if r != Regime::SttUp {
                return Err(format!("`up` is not available in {r}"));
            }
            term(inner, r)?;
            index(t.ty(), r)
        }
        Term::Lift(inner) => {
            if !r.is_ctt() {
                return Err(format!("`lift` descriptions are not available in {r}"));
            }
            term(inner, r)?;
            index(t.ty(), r)
        }
    }
}

fn terms(ts: &[&Term], r: Regime) -> Result<(), String> {
    ts.iter().try_for_each(|t| term(t, r))
}

fn relation(rel: BoundRel, a: &Term, b: &Term, r: Regime) -> Result<(), String> {
    let top = a.ty().max(b.ty());
    match rel {
        BoundRel::Eq => {
            if r.is_stt_family() && a.ty() != b.ty() {
                return Err(format!("`eq` between types {} and {} needs cumulative formation", a.ty(), b.ty()));
            }
            index(top.succ(), r).map_err(|e| format!("`eq` needs gamma = {}: {e}", top.succ()))
        }
        BoundRel::In => {
            if r.is_stt_family() {
                return Err(format!("`in` is not available in {r}"));
            }
            index(top.plus(2), r).map_err(|e| format!("`in` needs max(alpha, beta)+2 = {}: {e}", top.plus(2)))
        }
    }
}

fn set_macro(args: &[&Term], r: Regime, what: &str) -> Result<(), String> {
    if r.is_stt_family() {
        return Err(format!("`{what}` is not available in {r}"));
    }
    let top = args.iter().map(|t| t.ty()).max().unwrap_or_default();
    index(top.plus(2), r).map_err(|e| format!("`{what}` uses `in` at type {top}: {e}"))
}

fn sugar(s: &Sugar, r: Regime) -> Result<(), String> {
    match s {
        Sugar::EqCtt(a, b) => {
            terms(&[a, b], r)?;
            relation(BoundRel::Eq, a, b, r)
        }
        Sugar::InCtt(a, b) => {
            terms(&[a, b], r)?;
            relation(BoundRel::In, a, b, r)
        }
        Sugar::Coext(a, b) => {
            terms(&[a, b], r)?;
            if a.ty() != b.ty() || a.ty().pred().is_none() {
                return Err(format!("`coext` needs equal successor types, found {} and {}", a.ty(), b.ty()));
            }
            Ok(())
        }
        Sugar::CoextBounded(k, a, b) => {
            terms(&[a, b], r)?;
            let k_ty = TypeIndex::fin(*k);
            if *k == 0 || a.ty() < k_ty || b.ty() < k_ty {
                return Err(format!("`coext_{k}` needs 1 <= k <= both types, found {} and {}", a.ty(), b.ty()));
            }
            if r.is_stt_family() && !(*k == 1 && a.ty() == k_ty && b.ty() == k_ty) {
                return Err(format!("`coext_{k}` needs cumulative formation"));
            }
            Ok(())
        }
        Sugar::DownEq(a, b) => {
            if r != Regime::SttDown {
                return Err(format!("`downeq` is not available in {r}"));
            }
            terms(&[a, b], r)?;
            if a.ty() != b.ty() || a.ty() == TypeIndex::ZERO {
                return Err(format!("`downeq` needs equal positive types, found {} and {}", a.ty(), b.ty()));
            }
            Ok(())
        }
        Sugar::Bounded { var, rel, bound, .. } => {
            index(var.ty, r)?;
            term(bound, r)?;
            relation(*rel, &var.term(), bound, r)
        }
        Sugar::History(h) => {
            term(h, r)?;
            set_macro(&[h], r, "hist")
        }
        Sugar::Level(s) => {
            term(s, r)?;
            set_macro(&[s], r, "lev")
        }
        Sugar::SubsetOf(a, b) => {
            terms(&[a, b], r)?;
            set_macro(&[a, b], r, "subset")
        }
        Sugar::Rank(a, b) => {
            terms(&[a, b], r)?;
            set_macro(&[a, b], r, "rank")
        }
    }
}
