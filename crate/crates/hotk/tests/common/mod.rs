#![allow(dead_code)]

use hotk::kernel::{Formula, Symbol, Term, TypeIndex};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Which formation discipline a generated formula follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Cumulative application, `eq` and `in` at mixed types.
    Ctt,
    /// Adjacent application with `up` chains filling the gap.
    SttUp,
    /// Cumulative application, strict identity only.
    Fjt,
    /// Adjacent application and `dn`.
    SttDown,
}

pub struct Gen {
    pub family: Family,
    pub max_ty: u32,
    pub free: &'static [&'static str],
}

impl Gen {
    pub fn new(family: Family, max_ty: u32) -> Self {
        Gen { family, max_ty, free: &["a", "b", "c"] }
    }

    /// A sentence: every variable is bound.
    pub fn sentence(&self, rng: &mut StdRng, depth: u32) -> Formula {
        let g = Gen { family: self.family, max_ty: self.max_ty, free: &[] };
        let v = Symbol::new("q", rng.gen_range(0..=self.max_ty));
        let body = g.formula(rng, depth, &mut vec![v.clone()]);
        if rng.gen_bool(0.5) {
            Formula::forall(v, body)
        } else {
            Formula::exists(v, body)
        }
    }

    pub fn formula(&self, rng: &mut StdRng, depth: u32, scope: &mut Vec<Symbol>) -> Formula {
        if depth == 0 || rng.gen_ratio(1, 4) {
            return self.atom(rng, scope);
        }
        match rng.gen_range(0..7) {
            0 => self.formula(rng, depth - 1, scope).not(),
            1 => self.formula(rng, depth - 1, scope).and(self.formula(rng, depth - 1, scope)),
            2 => self.formula(rng, depth - 1, scope).or(self.formula(rng, depth - 1, scope)),
            3 => self.formula(rng, depth - 1, scope).implies(self.formula(rng, depth - 1, scope)),
            4 => self.formula(rng, depth - 1, scope).iff(self.formula(rng, depth - 1, scope)),
            q => {
                let v = Symbol::new(["u", "v", "w"][rng.gen_range(0..3)], rng.gen_range(0..=self.max_ty));
                scope.push(v.clone());
                let body = self.formula(rng, depth - 1, scope);
                scope.pop();
                if q == 5 {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                }
            }
        }
    }

    /// A term of type `ty`: a bound variable of that type when there is one,
    /// otherwise a free name.
    fn var(&self, rng: &mut StdRng, scope: &[Symbol], ty: u32) -> Option<Term> {
        let bound: Vec<&Symbol> = scope.iter().filter(|s| s.ty == TypeIndex::fin(ty)).collect();
        if !bound.is_empty() && (self.free.is_empty() || rng.gen_bool(0.7)) {
            return Some(bound[rng.gen_range(0..bound.len())].term());
        }
        if self.free.is_empty() {
            return None;
        }
        Some(Term::sym(self.free[rng.gen_range(0..self.free.len())], ty))
    }

    fn atom(&self, rng: &mut StdRng, scope: &[Symbol]) -> Formula {
        for _ in 0..64 {
            if let Some(f) = self.try_atom(rng, scope) {
                return f;
            }
        }
        // Only reachable for sentences whose scope has no usable pair.
        let t = scope[0].term();
        Formula::eq(t.clone(), t)
    }

    fn try_atom(&self, rng: &mut StdRng, scope: &[Symbol]) -> Option<Formula> {
        let top = self.max_ty;
        match (self.family, rng.gen_range(0..4)) {
            (Family::Ctt | Family::Fjt, 0 | 1) if top >= 1 => {
                let n = rng.gen_range(1..=top);
                let m = rng.gen_range(0..n);
                Some(Formula::apply(self.var(rng, scope, n)?, self.var(rng, scope, m)?))
            }
            (Family::Ctt, 2) => {
                let (a, b) = (rng.gen_range(0..=top), rng.gen_range(0..=top));
                Some(Formula::eq_ctt(self.var(rng, scope, a)?, self.var(rng, scope, b)?))
            }
            (Family::SttUp, 0..=2) if top >= 1 => {
                let n = rng.gen_range(1..=top);
                let m = rng.gen_range(0..n);
                let x = self.var(rng, scope, m)?.up_n(n - 1 - m);
                Some(Formula::apply(self.var(rng, scope, n)?, x))
            }
            (Family::SttDown, 0 | 1) if top >= 1 => {
                let n = rng.gen_range(1..=top);
                Some(Formula::apply(self.var(rng, scope, n)?, self.var(rng, scope, n - 1)?))
            }
            (Family::SttDown, 2) if top >= 2 => {
                let n = rng.gen_range(1..top);
                Some(Formula::down(self.var(rng, scope, n + 1)?, self.var(rng, scope, n)?))
            }
            _ => {
                let t = rng.gen_range(0..=top);
                let a = self.var(rng, scope, t)?;
                let b = self.var(rng, scope, t)?;
                if self.family == Family::SttUp && t < top && rng.gen_bool(0.3) {
                    let c = self.var(rng, scope, t + 1)?;
                    return Some(Formula::eq(a.up(), c));
                }
                Some(Formula::eq(a, b))
            }
        }
    }
}

/// Brute-force truth in the canonical FJT model, written directly from its
/// description: type 0 has one entity and a type-n entity is any subset of
/// the entities of lower types. A type-n entity is stored as a bitmask over
/// the lower entities listed by type, then index.
pub struct FjtOracle {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl FjtOracle {
    pub fn new(max_ty: u32) -> Self {
        let mut sizes = vec![1usize];
        let mut offsets = vec![0usize];
        for _ in 1..=max_ty {
            let below: usize = sizes.iter().sum();
            assert!(below < 20, "oracle kept small on purpose");
            offsets.push(below);
            sizes.push(1 << below);
        }
        FjtOracle { sizes, offsets }
    }

    pub fn size(&self, ty: u32) -> usize {
        self.sizes[ty as usize]
    }

    pub fn eval(&self, f: &Formula, env: &mut Vec<(Symbol, usize)>) -> bool {
        let look = |t: &Term, env: &[(Symbol, usize)]| -> (u32, usize) {
            let Term::Sym(s) = t else { panic!("oracle handles plain variables only") };
            let (_, v) = env.iter().rev().find(|(x, _)| x == s).expect("sentence");
            (s.ty.as_finite().unwrap(), *v)
        };
        match f {
            Formula::Apply(h, a) => {
                let ((hn, hv), (an, av)) = (look(h, env), look(a, env));
                assert!(an < hn);
                let pos: usize = self.sizes[..an as usize].iter().sum::<usize>() + av;
                debug_assert!(pos < self.offsets[hn as usize]);
                hv >> pos & 1 == 1
            }
            Formula::Eq(a, b) => look(a, env) == look(b, env),
            // Distinct entities are separated by a singleton one type up.
            Formula::Sugar(hotk::kernel::Sugar::EqCtt(a, b)) => look(a, env) == look(b, env),
            Formula::Not(a) => !self.eval(a, env),
            Formula::And(a, b) => self.eval(a, env) && self.eval(b, env),
            Formula::Or(a, b) => self.eval(a, env) || self.eval(b, env),
            Formula::Implies(a, b) => !self.eval(a, env) || self.eval(b, env),
            Formula::Iff(a, b) => self.eval(a, env) == self.eval(b, env),
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let all = matches!(f, Formula::Forall(..));
                let n = self.size(x.ty.as_finite().unwrap());
                for v in 0..n {
                    env.push((x.clone(), v));
                    let r = self.eval(body, env);
                    env.pop();
                    if r != all {
                        return !all;
                    }
                }
                all
            }
            other => panic!("oracle does not interpret `{other}`"),
        }
    }
}

pub fn arb_index() -> impl Strategy<Value = TypeIndex> {
    (0u32..2, 0u32..6).prop_map(|(q, r)| TypeIndex::new(q, r))
}

/// Finite formulas over a few names, not necessarily well-formed anywhere.
pub fn arb_formula() -> impl Strategy<Value = Formula> {
    let name = prop::sample::select(vec!["a", "b", "c", "x", "y"]);
    let term = (name, 0u32..4).prop_map(|(n, t)| Term::sym(n, t));
    let leaf = prop_oneof![
        (term.clone(), term.clone()).prop_map(|(a, b)| Formula::apply(a, b)),
        (term.clone(), term.clone()).prop_map(|(a, b)| Formula::eq(a, b)),
        (term.clone(), term.clone()).prop_map(|(a, b)| Formula::eq_ctt(a, b)),
        (term.clone(), term.clone()).prop_map(|(a, b)| Formula::in_ctt(a, b)),
        (term.clone(), term.clone()).prop_map(|(a, b)| Formula::down(a, b)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let var = (prop::sample::select(vec!["x", "y", "z"]), 0u32..4).prop_map(|(n, t)| Symbol::new(n, t));
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.iff(b)),
            (var.clone(), inner.clone()).prop_map(|(v, b)| Formula::forall(v, b)),
            (var, inner).prop_map(|(v, b)| Formula::exists(v, b)),
        ]
    })
}

/// A well-formed formula of the family, from a proptest-chosen seed.
pub fn arb_family_formula(family: Family, max_ty: u32) -> impl Strategy<Value = Formula> {
    (any::<u64>(), 1u32..4)
        .prop_map(move |(seed, depth)| Gen::new(family, max_ty).formula(&mut rng(seed), depth, &mut Vec::new()))
}
