//! Canonical model builders.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::model::{Entity, Meta, Model, ModelKind};
use super::tower::Tower;
use super::ModelError;
use crate::settheory::{astruct_graph, quine_graph, MembershipGraph};

pub const DEFAULT_BUDGET: usize = 1_000_000;
/// Pure models stop at five type levels (65536 entities at type 4).
pub const PURE_HEIGHT_CAP: u32 = 5;
/// FJT canonical models stop at four type levels (2048 entities at type 3).
pub const FJT_HEIGHT_CAP: u32 = 4;

fn check_height(height: u32, cap: u32) -> Result<(), ModelError> {
    if height == 0 || height > cap {
        return Err(ModelError::HeightCap { requested: height, cap });
    }
    Ok(())
}

fn budget_err(needed: u128, budget: usize) -> ModelError {
    ModelError::Budget { needed, budget }
}

/// The class semantics: type α ranges over `U_{α+1}`, where `U_1 = U ∪ {∅}`
/// and `U_{α+1} = P(U_α) ∪ U`.
pub fn build_class_model(urelements: u32, height: u32) -> Result<Model, ModelError> {
    build_class_model_with(urelements, height, DEFAULT_BUDGET)
}

pub fn build_class_model_with(urelements: u32, height: u32, budget: usize) -> Result<Model, ModelError> {
    if height == 0 {
        return Err(ModelError::HeightCap { requested: 0, cap: u32::MAX });
    }
    let mut tower = Tower::new();
    let urs: Vec<Entity> = (0..urelements).map(|i| tower.urelement(format!("u{i}"))).collect();
    let empty = tower.set(Vec::new());
    let mut stage: Vec<Entity> = urs.iter().copied().chain([empty]).collect();
    stage.sort_unstable();
    let mut domains = vec![stage.clone()];
    for _ in 1..height {
        let mut next = tower.powerset(&stage, budget).map_err(|n| budget_err(n, budget))?;
        next.extend(&urs);
        next.sort_unstable();
        next.dedup();
        if tower.len() > budget {
            return Err(budget_err(tower.len() as u128, budget));
        }
        stage = next.clone();
        domains.push(next);
    }
    let mut names: BTreeMap<String, Entity> = urs.iter().map(|&u| (tower.labels[u as usize].clone(), u)).collect();
    names.insert("empty".into(), empty);
    let meta = Meta { labels: tower.labels, names, ..Meta::default() };
    Model::new(ModelKind::Class, true, domains, tower.members, meta)
}

/// The pure cumulative hierarchy: type n ranges over the sets of rank ≤ n.
pub fn build_pure_model(height: u32) -> Result<Model, ModelError> {
    check_height(height, PURE_HEIGHT_CAP)?;
    let mut tower = Tower::new();
    let empty = tower.set(Vec::new());
    let mut stage = vec![empty];
    let mut domains = vec![stage.clone()];
    for _ in 1..height {
        stage = tower.powerset(&stage, usize::MAX).map_err(|n| budget_err(n, usize::MAX))?;
        domains.push(stage.clone());
    }
    let mut meta = Meta { labels: tower.labels, ..Meta::default() };
    meta.names.insert("empty".into(), empty);
    if height >= 2 {
        // the property true of the one object
        meta.constants.insert("U^1".into(), tower_singleton(&tower.members, empty));
    }
    Model::new(ModelKind::Pure, true, domains, tower.members, meta)
}

fn tower_singleton(members: &[Vec<Entity>], x: Entity) -> Entity {
    members.iter().position(|m| m.as_slice() == [x]).expect("singleton present") as Entity
}

/// `h(0) = 1`, `h(n+1) = 2^(h(0)+…+h(n))`; `None` once it leaves `u128`.
pub fn fjt_count(n: u32) -> Option<u128> {
    let mut total: u128 = 0;
    let mut h: u128 = 1;
    for _ in 0..n {
        total = total.checked_add(h)?;
        h = if total < 127 { 1u128 << total } else { return None };
    }
    Some(h)
}

/// The canonical pure extensional FJT model. A type-n entity is a tuple of
/// extensions over the types below n; types are disjoint.
pub fn build_fjt_canonical(height: u32) -> Result<Model, ModelError> {
    check_height(height, FJT_HEIGHT_CAP)?;
    let mut members: Vec<Vec<Entity>> = vec![Vec::new()];
    let mut labels = vec!["o".to_string()];
    let mut domains = vec![vec![0]];
    let mut bases = vec![0u32];
    for n in 1..height {
        let lower = members.len();
        let base = lower as Entity;
        bases.push(base);
        let count = 1u64 << lower;
        let mut dom = Vec::with_capacity(count as usize);
        for mask in 0..count {
            members.push((0..lower as Entity).filter(|&i| mask >> i & 1 == 1).collect());
            labels.push(format!("t{n}#{mask:x}"));
            dom.push(base + mask as Entity);
        }
        domains.push(dom);
    }
    let mut meta = Meta { labels, ..Meta::default() };
    meta.names.insert("o".into(), 0);
    let full = |n: usize| bases[n] + ((1u64 << bases[n]) - 1) as Entity;
    if height >= 2 {
        meta.constants.insert("U^1".into(), full(1));
    }
    if height >= 3 {
        meta.constants.insert("U^2".into(), full(2));
        // true of the object, of no type-1 property
        meta.constants.insert("H^2".into(), bases[2] + 1);
    }
    if height >= 4 {
        meta.constants.insert("U^3".into(), full(3));
    }
    for (n, d) in domains.iter().enumerate() {
        meta.info.insert(format!("h({n})"), d.len().to_string());
    }
    Model::new(ModelKind::Fjt, false, domains, members, meta)
}

/// Domain size at type `n`.
pub fn count_entities(m: &Model, n: u32) -> usize {
    m.domain(n).len()
}

/// STT↑ reading of a pure cumulative model: `up` is the inclusion of each
/// domain into the next.
pub fn build_sttu_companion(m: &Model) -> Result<Model, ModelError> {
    if !m.is_cumulative() || !matches!(m.kind(), ModelKind::Pure | ModelKind::TModel) {
        return Err(ModelError::WrongInput(format!("STT↑ companion needs a pure cumulative model, got {}", m.kind())));
    }
    let maps: Vec<HashMap<Entity, Entity>> =
        (0..m.max_type()).map(|n| m.domain(n).iter().map(|&e| (e, e)).collect()).collect();
    m.clone().with_kind(ModelKind::SttuCompanion).with_up_map(maps)
}

/// STT↓ reading of an FJT canonical model: `b ▽ a` iff `b` and `a` agree on
/// every type below `a`'s.
pub fn build_sttd_companion(m: &Model) -> Result<Model, ModelError> {
    if m.kind() != ModelKind::Fjt {
        return Err(ModelError::WrongInput(format!("STT↓ companion needs an FJT canonical model, got {}", m.kind())));
    }
    let below =
        |e: Entity, n: u32| -> Vec<Entity> { m.members(e).iter().copied().filter(|&x| m.lowest_type(x) < n).collect() };
    let mut rels = vec![HashSet::new()];
    for n in 1..m.max_type() {
        let mut by_sig: HashMap<Vec<Entity>, Vec<Entity>> = HashMap::new();
        for &a in m.domain(n) {
            by_sig.entry(below(a, n)).or_default().push(a);
        }
        let mut rel = HashSet::new();
        for &b in m.domain(n + 1) {
            for &a in by_sig.get(&below(b, n)).map(Vec::as_slice).unwrap_or(&[]) {
                rel.insert((b, a));
            }
        }
        rels.push(rel);
    }
    m.clone().with_kind(ModelKind::SttdCompanion).with_down_rel(rels)
}

/// Graph-backed cumulative model: type n ranges over the nodes `c` with
/// `rho(c) ≤ n`, and application is the edge relation.
pub fn build_graph_model(g: &MembershipGraph, rho: &[u32], height: u32) -> Result<Model, ModelError> {
    if rho.len() != g.len() {
        return Err(ModelError::Invalid(format!("{} rank labels for {} nodes", rho.len(), g.len())));
    }
    if height == 0 {
        return Err(ModelError::Invalid("height must be positive".into()));
    }
    if let Some(i) = rho.iter().position(|&r| r >= height) {
        return Err(ModelError::Invalid(format!(
            "rank labels inconsistent with height {height}: node `{}` has rank {}",
            g.name(i as u32),
            rho[i]
        )));
    }
    let domains = (0..height).map(|t| (0..g.len() as Entity).filter(|&c| rho[c as usize] <= t).collect()).collect();
    let names: BTreeMap<String, Entity> = g.names().iter().cloned().zip(0..).collect();
    let meta = Meta { labels: g.names().to_vec(), names, ..Meta::default() };
    Model::new(ModelKind::Graph, true, domains, g.all_members().to_vec(), meta)
}

/// The ill-founded 𝐚-structure with `a = {∅, a}`, as a model with `height`
/// type levels.
pub fn build_astruct_model(height: u32) -> Result<Model, ModelError> {
    if height < 2 {
        return Err(ModelError::Invalid("the a-structure needs at least two type levels".into()));
    }
    let g = astruct_graph(height - 1).map_err(|e| ModelError::Invalid(e.to_string()))?;
    let rho = g.rank_labels().expect("fixture carries ranks").to_vec();
    build_graph_model(&g, &rho, height)
}

/// The Quine-atom structure with `b = {b}`.
pub fn build_quine_model(height: u32) -> Result<Model, ModelError> {
    let g = quine_graph(height.saturating_sub(1)).map_err(|e| ModelError::Invalid(e.to_string()))?;
    let rho = g.rank_labels().expect("fixture carries ranks").to_vec();
    build_graph_model(&g, &rho, height)
}
