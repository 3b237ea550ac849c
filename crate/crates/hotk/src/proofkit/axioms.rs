//! Axiom and scheme instances for every theory.

use serde::{Deserialize, Serialize};

use crate::kernel::{occurs_free, Formula, Overlay, Quant, Regime, Symbol, Term, Theory, TypeIndex};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AxiomError {
    #[error("witness variable `{0}` occurs in the comprehension formula")]
    WitnessInFormula(String),
    #[error("type arithmetic out of range: {0}")]
    TypeRange(String),
    #[error("unknown axiom `{0}`")]
    Unknown(String),
    #[error("missing parameter `{0}`")]
    MissingParam(&'static str),
}

/// Numeric parameters for the fixed axioms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomParams {
    #[serde(default)]
    pub alpha: Option<u32>,
    #[serde(default)]
    pub beta: Option<u32>,
    #[serde(default)]
    pub n: Option<u32>,
    #[serde(default)]
    pub k: Option<u32>,
}

fn v(name: &str, ty: impl Into<TypeIndex>) -> Symbol {
    Symbol::new(name, ty)
}

fn ap(h: &Symbol, a: &Symbol) -> Formula {
    Formula::apply(h.term(), a.term())
}

fn range(what: String) -> AxiomError {
    AxiomError::TypeRange(what)
}

/// `∃z^{n+1}∀x^n(z(x) ↔ φ)`; `z` must not occur in `φ`.
pub fn stt_comprehension(z: &Symbol, x: &Symbol, phi: &Formula) -> Result<Formula, AxiomError> {
    if z.ty != x.ty.succ() || !x.ty.is_finite() {
        return Err(range(format!("comprehension witness {z} must sit one type above {x}")));
    }
    comprehension(z, x, phi)
}

/// `∃z^{α+1}∀x^α(z(x) ↔ φ)`, for any index α.
pub fn ctt_comprehension(z: &Symbol, x: &Symbol, phi: &Formula) -> Result<Formula, AxiomError> {
    if z.ty != x.ty.succ() {
        return Err(range(format!("comprehension witness {z} must sit one type above {x}")));
    }
    comprehension(z, x, phi)
}

fn comprehension(z: &Symbol, x: &Symbol, phi: &Formula) -> Result<Formula, AxiomError> {
    if occurs_free(phi, z) {
        return Err(AxiomError::WitnessInFormula(z.to_string()));
    }
    Ok(Formula::exists(z.clone(), Formula::forall(x.clone(), ap(z, x).iff(phi.clone()))))
}

/// `∃z^n ⋀_{i<n} ∀x_i(z(x_i) ↔ φ_i)`, with one part per type below `n`, in
/// the order given.
pub fn fjt_comprehension(z: &Symbol, parts: &[(Symbol, Formula)]) -> Result<Formula, AxiomError> {
    let n =
        z.ty.as_finite()
            .filter(|&n| n >= 1)
            .ok_or_else(|| range(format!("witness {z} needs a positive finite type")))?;
    let mut types: Vec<u32> = parts.iter().filter_map(|(x, _)| x.ty.as_finite()).collect();
    types.sort_unstable();
    if types != (0..n).collect::<Vec<_>>() || parts.len() != n as usize {
        return Err(range(format!("FJT comprehension at type {n} needs exactly one part per type below {n}")));
    }
    if parts.iter().any(|(_, phi)| occurs_free(phi, z)) {
        return Err(AxiomError::WitnessInFormula(z.to_string()));
    }
    let body = Formula::conj(parts.iter().map(|(x, phi)| Formula::forall(x.clone(), ap(z, x).iff(phi.clone()))))
        .expect("n >= 1");
    Ok(Formula::exists(z.clone(), body))
}

/// `∀y^n ∃z^{n+1}(z ▽ y ∧ ∀x^n(z(x) ↔ φ))`, for n ≥ 1.
pub fn sttd_comprehension(y: &Symbol, z: &Symbol, x: &Symbol, phi: &Formula) -> Result<Formula, AxiomError> {
    let n = y.ty.as_finite().filter(|&n| n >= 1).ok_or_else(|| range(format!("{y} needs a positive finite type")))?;
    if z.ty != TypeIndex::fin(n + 1) || x.ty != TypeIndex::fin(n) {
        return Err(range(format!("STTd comprehension needs {z} at type {} and {x} at type {n}", n + 1)));
    }
    if occurs_free(phi, z) {
        return Err(AxiomError::WitnessInFormula(z.to_string()));
    }
    let inner = Formula::down(z.term(), y.term()).and(Formula::forall(x.clone(), ap(z, x).iff(phi.clone())));
    Ok(Formula::forall(y.clone(), Formula::exists(z.clone(), inner)))
}

/// `∀x^α∀y^α(x = y ↔ ∀z^{α+1}(z(x) ↔ z(y)))`.
pub fn identity(alpha: TypeIndex) -> Formula {
    let (x, y, z) = (v("x", alpha), v("y", alpha), v("z", alpha.succ()));
    Formula::forall_many(
        [x.clone(), y.clone()],
        Formula::eq(x.term(), y.term()).iff(Formula::forall(z.clone(), ap(&z, &x).iff(ap(&z, &y)))),
    )
}

/// `∀x^α∃y^β x ≡ y`, for α ≤ β.
pub fn type_raising(alpha: u32, beta: u32) -> Result<Formula, AxiomError> {
    if alpha > beta {
        return Err(range(format!("Type-Raising needs alpha <= beta, found {alpha} > {beta}")));
    }
    let (x, y) = (v("x", alpha), v("y", beta));
    Ok(Formula::forall(x.clone(), Formula::exists(y.clone(), Formula::eq_ctt(x.term(), y.term()))))
}

/// `∀a^α∀b^{β+1}(a ∈ b → ∃x^β a ≡ x)`.
pub fn type_founded(alpha: u32, beta: u32) -> Formula {
    let (a, b, x) = (v("a", alpha), v("b", beta + 1), v("x", beta));
    Formula::forall_many(
        [a.clone(), b.clone()],
        Formula::in_ctt(a.term(), b.term()).implies(Formula::exists(x.clone(), Formula::eq_ctt(a.term(), x.term()))),
    )
}

/// `∀x^0∀y^α ¬(y ∈ x)`.
pub fn type_base(alpha: u32) -> Formula {
    let (x, y) = (v("x", 0u32), v("y", alpha));
    Formula::forall_many([x.clone(), y.clone()], Formula::in_ctt(y.term(), x.term()).not())
}

/// Cross-type extensionality, for α ≤ β.
pub fn type_ext(alpha: u32, beta: u32) -> Result<Formula, AxiomError> {
    if alpha > beta {
        return Err(range(format!("Type-Ext needs alpha <= beta, found {alpha} > {beta}")));
    }
    let (a, b) = (v("a", alpha + 1), v("b", beta + 1));
    let (xa, xb, y) = (v("x", alpha), v("x", beta), v("y", alpha));
    let left = Formula::forall(xa.clone(), ap(&a, &xa).implies(ap(&b, &xa)));
    let right = Formula::forall(
        xb.clone(),
        ap(&b, &xb).implies(Formula::bounded(
            Quant::Some,
            y.clone(),
            crate::kernel::BoundRel::Eq,
            xb.term(),
            ap(&a, &y),
        )),
    );
    Ok(Formula::forall_many([a.clone(), b.clone()], left.and(right).implies(Formula::eq_ctt(a.term(), b.term()))))
}

/// `∀x^0∀y^0 x = y`.
pub fn type_purity() -> Formula {
    let (x, y) = (v("x", 0u32), v("y", 0u32));
    Formula::forall_many([x.clone(), y.clone()], Formula::eq(x.term(), y.term()))
}

/// `∀x^n∀y^n(↑^k x = ↑^k y → x = y)`.
pub fn up_inject(n: u32, k: u32) -> Formula {
    let (x, y) = (v("x", n), v("y", n));
    Formula::forall_many(
        [x.clone(), y.clone()],
        Formula::eq(x.term().up_n(k), y.term().up_n(k)).implies(Formula::eq(x.term(), y.term())),
    )
}

/// `∀x^n∀y^{n+1}(↑^k y(↑^k x) ↔ y(x))`.
pub fn up_possess(n: u32, k: u32) -> Formula {
    let (x, y) = (v("x", n), v("y", n + 1));
    Formula::forall_many([x.clone(), y.clone()], Formula::apply(y.term().up_n(k), x.term().up_n(k)).iff(ap(&y, &x)))
}

/// `∀x^{n+k}∀y^{n+1}(↑^k y(x) → ∃z^n x = ↑^k z)`.
pub fn up_founded(n: u32, k: u32) -> Formula {
    let (x, y, z) = (v("x", n + k), v("y", n + 1), v("z", n));
    Formula::forall_many(
        [x.clone(), y.clone()],
        Formula::apply(y.term().up_n(k), x.term())
            .implies(Formula::exists(z.clone(), Formula::eq(x.term(), z.term().up_n(k)))),
    )
}

/// `∀x^{k-1}∀y^0 ¬↑^k y(x)`, with `k ≥ 1`.
pub fn up_base(k: u32) -> Formula {
    let k = k.max(1);
    let (x, y) = (v("x", k - 1), v("y", 0u32));
    Formula::forall_many([x.clone(), y.clone()], Formula::apply(y.term().up_n(k), x.term()).not())
}

/// `∀z^{n+1}∃x^n z ▽ x`.
pub fn down_exists(n: u32) -> Formula {
    let (z, x) = (v("z", n + 1), v("x", n));
    Formula::forall(z.clone(), Formula::exists(x.clone(), Formula::down(z.term(), x.term())))
}

/// `∀z^{n+1}∀x^n∀y^n((z ▽ x ∧ z ▽ y) → (x ≈ y ∧ y ⇓= x))`.
pub fn down_sim(n: u32) -> Formula {
    let (z, x, y) = (v("z", n + 1), v("x", n), v("y", n));
    let prem = Formula::down(z.term(), x.term()).and(Formula::down(z.term(), y.term()));
    let concl = Formula::Sugar(crate::kernel::Sugar::Coext(x.term(), y.term()))
        .and(Formula::Sugar(crate::kernel::Sugar::DownEq(y.term(), x.term())));
    Formula::forall_many([z, x, y], prem.implies(concl))
}

/// `∀z^{n+1}∀x^n∀y^n((z ▽ x ∧ x ≈ y ∧ y ⇓= x) → z ▽ y)`.
pub fn down_max(n: u32) -> Formula {
    let (z, x, y) = (v("z", n + 1), v("x", n), v("y", n));
    let prem = Formula::down(z.term(), x.term())
        .and(Formula::Sugar(crate::kernel::Sugar::Coext(x.term(), y.term())))
        .and(Formula::Sugar(crate::kernel::Sugar::DownEq(y.term(), x.term())));
    Formula::forall_many([z.clone(), x, y.clone()], prem.implies(Formula::down(z.term(), y.term())))
}

/// `∀x^n∀y^n(x ≈_n y → x = y)`: entities agreeing at every lower type are equal.
pub fn fjt_ext(n: u32) -> Formula {
    let (x, y) = (v("x", n), v("y", n));
    Formula::forall_many(
        [x.clone(), y.clone()],
        Formula::Sugar(crate::kernel::Sugar::CoextBounded(n, x.term(), y.term()))
            .implies(Formula::eq(x.term(), y.term())),
    )
}

/// Two ▽-predecessors of one entity are `⇓=`.
pub fn chain_common_target(n: u32) -> Formula {
    let (a, b, x) = (v("a", n + 1), v("b", n + 1), v("x", n));
    let prem = Formula::down(a.term(), x.term()).and(Formula::down(b.term(), x.term()));
    Formula::forall_many(
        [a.clone(), b.clone(), x],
        prem.implies(Formula::Sugar(crate::kernel::Sugar::DownEq(a.term(), b.term()))),
    )
}

fn chains(n: u32) -> (Vec<Symbol>, Vec<Symbol>, Formula) {
    // a[i] has type i+1 for i in 0..=n; b[i] has type i+1 for i in 0..n
    let a: Vec<Symbol> = (1..=n + 1).map(|i| v(&format!("a{i}"), i)).collect();
    let b: Vec<Symbol> = (1..=n).map(|i| v(&format!("b{i}"), i)).collect();
    let links = (1..a.len())
        .rev()
        .map(|i| Formula::down(a[i].term(), a[i - 1].term()))
        .chain((1..b.len()).rev().map(|i| Formula::down(b[i].term(), b[i - 1].term())));
    let shape = Formula::conj(links).unwrap_or_else(|| Formula::eq(a[0].term(), a[0].term()));
    (a, b, shape)
}

fn coext_at(x: &Symbol, y: &Symbol) -> Formula {
    Formula::Sugar(crate::kernel::Sugar::Coext(x.term(), y.term()))
}

fn downeq_at(x: &Symbol, y: &Symbol) -> Formula {
    Formula::Sugar(crate::kernel::Sugar::DownEq(x.term(), y.term()))
}

fn close(a: &[Symbol], b: &[Symbol], body: Formula) -> Formula {
    Formula::forall_many(a.iter().rev().chain(b.iter().rev()).cloned(), body)
}

/// First chain clause: for chains `a^{n+1} ▽ … ▽ a^1` and `b^n ▽ … ▽ b^1`,
/// `a^{n+1} ▽ b^n` gives `a^i ≈ b^i ⇓= a^i` for every `1 ≤ i ≤ n`.
pub fn chain_lemma_coext(n: u32) -> Formula {
    let (a, b, shape) = chains(n);
    let prem = shape.and(Formula::down(a[n as usize].term(), b[n as usize - 1].term()));
    let concl =
        Formula::conj((0..n as usize).map(|i| coext_at(&a[i], &b[i]).and(downeq_at(&b[i], &a[i])))).expect("n >= 1");
    close(&a, &b, prem.implies(concl))
}

/// Second chain clause at `1 ≤ m ≤ n`: `b^m ⇓= a^m` and `a^i ≈ b^i` for
/// `m ≤ i ≤ n` give `b^i ⇓= a^i` on the same range and `a^{n+1} ▽ b^n`.
pub fn chain_lemma_agree(n: u32, m: u32) -> Formula {
    let (a, b, shape) = chains(n);
    let (lo, hi) = (m as usize - 1, n as usize - 1);
    let agree = Formula::conj((lo..=hi).map(|i| coext_at(&a[i], &b[i]))).expect("m <= n");
    let prem = shape.and(downeq_at(&b[lo], &a[lo])).and(agree);
    let concl = Formula::conj((lo..=hi).map(|i| downeq_at(&b[i], &a[i])))
        .expect("m <= n")
        .and(Formula::down(a[n as usize].term(), b[hi].term()));
    close(&a, &b, prem.implies(concl))
}

fn need(p: Option<u32>, name: &'static str) -> Result<u32, AxiomError> {
    p.ok_or(AxiomError::MissingParam(name))
}

/// The fixed (non-schematic) axioms by name. Schemes with a formula
/// parameter are built by the dedicated functions above.
pub fn axiom_instance(name: &str, p: &AxiomParams) -> Result<Formula, AxiomError> {
    let n = || need(p.n, "n");
    let k = p.k.unwrap_or(1);
    Ok(match normalize(name).as_str() {
        "identity" => identity(TypeIndex::fin(n()?)),
        "type-raising" => type_raising(need(p.alpha, "alpha")?, need(p.beta, "beta")?)?,
        "type-founded" => type_founded(need(p.alpha, "alpha")?, need(p.beta, "beta")?),
        "type-base" => type_base(need(p.alpha, "alpha")?),
        "type-ext" => type_ext(need(p.alpha, "alpha")?, need(p.beta, "beta")?)?,
        "type-purity" => type_purity(),
        "up-inject" => up_inject(n()?, k),
        "up-possess" => up_possess(n()?, k),
        "up-founded" => up_founded(n()?, k),
        "up-base" => up_base(k),
        "down-exists" => positive(n()?, down_exists)?,
        "down-sim" => positive(n()?, down_sim)?,
        "down-max" => positive(n()?, down_max)?,
        "fjt-ext" => positive(n()?, fjt_ext)?,
        other => return Err(AxiomError::Unknown(other.to_string())),
    })
}

fn positive(n: u32, f: fn(u32) -> Formula) -> Result<Formula, AxiomError> {
    if n == 0 {
        return Err(range("this axiom needs n >= 1".into()));
    }
    Ok(f(n))
}

pub fn normalize(name: &str) -> String {
    name.trim().to_ascii_lowercase().replace(['_', ' '], "-").replace("down∃", "down-exists")
}

/// Names of the fixed axioms available in a theory (schemes excluded).
pub fn theory_axioms(t: Theory) -> &'static [&'static str] {
    match (t.regime, t.overlay) {
        (Regime::Stt, _) => &["identity"],
        (Regime::SttUp, _) => &["identity", "up-inject", "up-possess", "up-founded", "up-base"],
        (Regime::SttDown, _) => &["identity", "down-exists", "down-sim", "down-max"],
        (Regime::Fjt, _) => &["identity", "fjt-ext"],
        (Regime::CttStringent(_) | Regime::CttLiberal(_), Overlay::None) => {
            &["identity", "type-raising", "type-founded", "type-base"]
        }
        (Regime::CttStringent(_) | Regime::CttLiberal(_), Overlay::Pctt) => {
            &["identity", "type-raising", "type-founded", "type-base", "type-ext", "type-purity"]
        }
    }
}

/// Comprehension scheme native to a regime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    Stt,
    Ctt,
    Fjt,
    Sttd,
}

impl SchemeKind {
    pub fn parse(s: &str) -> Option<SchemeKind> {
        match s.trim().to_ascii_lowercase().as_str() {
            "stt" => Some(SchemeKind::Stt),
            "ctt" => Some(SchemeKind::Ctt),
            "fjt" => Some(SchemeKind::Fjt),
            "sttd" => Some(SchemeKind::Sttd),
            _ => None,
        }
    }

    pub fn available_in(self, r: Regime) -> bool {
        match self {
            SchemeKind::Stt => matches!(r, Regime::Stt | Regime::SttUp | Regime::SttDown),
            SchemeKind::Ctt => r.is_ctt(),
            SchemeKind::Fjt => r == Regime::Fjt,
            SchemeKind::Sttd => r == Regime::SttDown,
        }
    }
}

/// Plain `z(x)` for use in tests and fixtures.
pub fn atom(h: &Symbol, a: &Symbol) -> Formula {
    ap(h, a)
}

/// A term-level `up` chain, exposed for tests.
pub fn raised(t: Term, k: u32) -> Term {
    t.up_n(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check, parse_formula};

    #[test]
    fn displays() {
        let x = v("x", 0u32);
        let z = v("z", 1u32);
        let phi = parse_formula("x^0 = x^0").unwrap();
        assert_eq!(stt_comprehension(&z, &x, &phi).unwrap().to_string(), "some z^1. all x^0. z^1(x^0) <-> x^0 = x^0");
        assert_eq!(type_base(1).to_string(), "all x^0. all y^1. ~y^1 in x^0");
        let bad = parse_formula("z^1(x^0)").unwrap();
        assert!(matches!(stt_comprehension(&z, &x, &bad), Err(AxiomError::WitnessInFormula(_))));
    }

    #[test]
    fn fjt_display() {
        let z = v("z", 2u32);
        let parts = vec![
            (v("x", 1u32), parse_formula("x^1 = x^1").unwrap()),
            (v("x", 0u32), parse_formula("x^0 != x^0").unwrap()),
        ];
        let f = fjt_comprehension(&z, &parts).unwrap();
        assert_eq!(f.to_string(), "some z^2. (all x^1. z^2(x^1) <-> x^1 = x^1) & (all x^0. z^2(x^0) <-> ~x^0 = x^0)");
        check(&f, Regime::Fjt).unwrap();
    }

    #[test]
    fn home_regimes() {
        check(&up_possess(1, 2), Regime::SttUp).unwrap();
        check(&up_founded(0, 2), Regime::SttUp).unwrap();
        check(&down_sim(2), Regime::SttDown).unwrap();
        check(&down_max(1), Regime::SttDown).unwrap();
        check(&type_ext(0, 1).unwrap(), Regime::ctt()).unwrap();
        check(&fjt_ext(2), Regime::Fjt).unwrap();
        check(&chain_lemma_coext(2), Regime::SttDown).unwrap();
        check(&chain_lemma_agree(2, 1), Regime::SttDown).unwrap();
        check(&chain_common_target(2), Regime::SttDown).unwrap();
    }
}
