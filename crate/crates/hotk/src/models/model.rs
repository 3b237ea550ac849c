use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::kernel::{parse_symbol, Symbol};

pub type Entity = u32;

/// Which builder produced a model. Companion builders check this.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Class,
    Pure,
    Fjt,
    Graph,
    SttuCompanion,
    SttdCompanion,
    TModel,
    Custom,
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        f.write_str(&s)
    }
}

/// A finite typed structure.
///
/// Entities are numbered `0..entity_count()`. `apply(b, a)` holds when `a` is
/// among the recorded members of `b`, for every pair of types.
#[derive(Clone, Debug, PartialEq)]
pub struct Model {
    kind: ModelKind,
    cumulative: bool,
    domains: Vec<Vec<Entity>>,
    members: Vec<Vec<Entity>>,
    /// Bit `t` set when the entity is in the type-`t` domain.
    type_mask: Vec<u64>,
    up_map: Option<Vec<HashMap<Entity, Entity>>>,
    /// `down_rel[n]` holds pairs `(b, a)` with `b` of type n+1 and `a` of type n.
    down_rel: Option<Vec<HashSet<(Entity, Entity)>>>,
    meta: Meta,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default)]
    pub labels: Vec<String>,
    /// Entity names usable as free symbols at any type containing the entity.
    #[serde(default)]
    pub names: BTreeMap<String, Entity>,
    /// Typed constants such as `H^2`.
    #[serde(default)]
    pub constants: BTreeMap<String, Entity>,
    #[serde(default)]
    pub info: BTreeMap<String, String>,
}

/// Serialized form of a [`Model`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelJson {
    pub kind: ModelKind,
    pub height: u32,
    pub cumulative: bool,
    pub domains: Vec<Vec<Entity>>,
    /// `apply[b]` lists the entities `a` with `apply(b, a)`.
    pub apply: Vec<Vec<Entity>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub up_map: Option<Vec<Vec<[Entity; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub down_rel: Option<Vec<Vec<[Entity; 2]>>>,
    #[serde(default)]
    pub meta: Meta,
}

impl Model {
    /// Validate and assemble a model. Member and domain lists are sorted.
    pub fn new(
        kind: ModelKind,
        cumulative: bool,
        mut domains: Vec<Vec<Entity>>,
        mut members: Vec<Vec<Entity>>,
        meta: Meta,
    ) -> Result<Model, ModelError> {
        let n = members.len();
        if domains.is_empty() || domains.len() > 64 {
            return Err(ModelError::Invalid(format!("height must be between 1 and 64, found {}", domains.len())));
        }
        let mut type_mask = vec![0u64; n];
        for (t, d) in domains.iter_mut().enumerate() {
            d.sort_unstable();
            d.dedup();
            for &e in d.iter() {
                let slot = type_mask
                    .get_mut(e as usize)
                    .ok_or_else(|| ModelError::Invalid(format!("domain {t} mentions unknown entity {e}")))?;
                *slot |= 1 << t;
            }
        }
        if let Some(e) = type_mask.iter().position(|&m| m == 0) {
            return Err(ModelError::Invalid(format!("entity {e} occurs in no domain")));
        }
        if cumulative {
            for t in 1..domains.len() {
                if let Some(&e) = domains[t - 1].iter().find(|&&e| type_mask[e as usize] & (1 << t) == 0) {
                    return Err(ModelError::Invalid(format!(
                        "cumulative model: entity {e} is in domain {} but not domain {t}",
                        t - 1
                    )));
                }
            }
        }
        for (b, ms) in members.iter_mut().enumerate() {
            ms.sort_unstable();
            ms.dedup();
            if let Some(&a) = ms.iter().find(|&&a| a as usize >= n) {
                return Err(ModelError::Invalid(format!("entity {b} applies to unknown entity {a}")));
            }
        }
        let mut meta = meta;
        if meta.labels.len() != n {
            meta.labels = (0..n).map(|e| format!("e{e}")).collect();
        }
        for (name, &e) in meta.names.iter().chain(meta.constants.iter()) {
            if e as usize >= n {
                return Err(ModelError::Invalid(format!("name `{name}` refers to unknown entity {e}")));
            }
        }
        for (key, &e) in &meta.constants {
            let s = parse_symbol(key).map_err(|err| ModelError::Invalid(format!("constant `{key}`: {err}")))?;
            let t = s.ty.as_finite().filter(|&t| (t as usize) < domains.len());
            if t.is_none_or(|t| type_mask[e as usize] & (1 << t) == 0) {
                return Err(ModelError::Invalid(format!("constant `{key}` is not in the domain of its type")));
            }
        }
        Ok(Model { kind, cumulative, domains, members, type_mask, up_map: None, down_rel: None, meta })
    }

    /// Attach an up map: `maps[n]` sends type-n entities to type n+1.
    pub fn with_up_map(mut self, maps: Vec<HashMap<Entity, Entity>>) -> Result<Model, ModelError> {
        for (n, map) in maps.iter().enumerate() {
            let mut seen = HashSet::new();
            for (&x, &y) in map {
                if !self.in_domain(x, n as u32) || !self.in_domain(y, n as u32 + 1) {
                    return Err(ModelError::Invalid(format!("up map at type {n} leaves the domains ({x} -> {y})")));
                }
                if !seen.insert(y) {
                    return Err(ModelError::Invalid(format!("up map at type {n} is not injective (hits {y} twice)")));
                }
            }
        }
        self.up_map = Some(maps);
        Ok(self)
    }

    /// Attach a down relation: `rels[n]` holds pairs `(b^{n+1}, a^n)`.
    pub fn with_down_rel(mut self, rels: Vec<HashSet<(Entity, Entity)>>) -> Result<Model, ModelError> {
        for (n, rel) in rels.iter().enumerate() {
            for &(b, a) in rel {
                if n == 0 || !self.in_domain(b, n as u32 + 1) || !self.in_domain(a, n as u32) {
                    return Err(ModelError::Invalid(format!("down relation pair ({b}, {a}) at type {n} is ill-typed")));
                }
            }
        }
        self.down_rel = Some(rels);
        Ok(self)
    }

    pub fn with_kind(mut self, kind: ModelKind) -> Model {
        self.kind = kind;
        self
    }

    pub fn meta_mut(&mut self) -> &mut Meta {
        &mut self.meta
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    /// Number of type levels; types run from 0 to `height() - 1`.
    pub fn height(&self) -> u32 {
        self.domains.len() as u32
    }

    pub fn max_type(&self) -> u32 {
        self.height() - 1
    }

    pub fn is_cumulative(&self) -> bool {
        self.cumulative
    }

    pub fn entity_count(&self) -> usize {
        self.members.len()
    }

    pub fn domain(&self, t: u32) -> &[Entity] {
        self.domains.get(t as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn in_domain(&self, e: Entity, t: u32) -> bool {
        t < 64 && self.type_mask.get(e as usize).is_some_and(|m| m & (1 << t) != 0)
    }

    /// Least type whose domain contains `e`.
    pub fn lowest_type(&self, e: Entity) -> u32 {
        self.type_mask[e as usize].trailing_zeros()
    }

    pub fn members(&self, b: Entity) -> &[Entity] {
        &self.members[b as usize]
    }

    pub fn apply(&self, b: Entity, a: Entity) -> bool {
        self.members[b as usize].binary_search(&a).is_ok()
    }

    pub fn up(&self, n: u32, e: Entity) -> Option<Entity> {
        self.up_map.as_ref()?.get(n as usize)?.get(&e).copied()
    }

    pub fn has_up_map(&self) -> bool {
        self.up_map.is_some()
    }

    pub fn has_down_rel(&self) -> bool {
        self.down_rel.is_some()
    }

    pub fn down(&self, n: u32, b: Entity, a: Entity) -> bool {
        self.down_rel.as_ref().and_then(|r| r.get(n as usize)).is_some_and(|r| r.contains(&(b, a)))
    }

    pub fn meta(&self) -> &Meta {
        &self.meta
    }

    pub fn label(&self, e: Entity) -> &str {
        &self.meta.labels[e as usize]
    }

    /// A name for `e` if one is registered, else its label.
    pub fn describe(&self, e: Entity) -> String {
        self.meta
            .names
            .iter()
            .find(|(_, &v)| v == e)
            .map(|(k, _)| k.clone())
            .unwrap_or_else(|| self.label(e).to_string())
    }

    /// Entity for a constant symbol, if the model interprets it.
    pub fn constant(&self, s: &Symbol) -> Option<Entity> {
        if let Some(&e) = self.meta.constants.get(&s.to_string()) {
            return Some(e);
        }
        let t = s.ty.as_finite()?;
        self.meta.names.get(&s.name).copied().filter(|&e| self.in_domain(e, t))
    }

    pub fn entity_by_name(&self, name: &str) -> Option<Entity> {
        self.meta.names.get(name).copied()
    }

    pub fn to_json(&self) -> ModelJson {
        let up_map = self.up_map.as_ref().map(|maps| {
            maps.iter()
                .map(|m| {
                    let mut v: Vec<[Entity; 2]> = m.iter().map(|(&a, &b)| [a, b]).collect();
                    v.sort_unstable();
                    v
                })
                .collect::<Vec<_>>()
        });
        let down_rel = self.down_rel.as_ref().map(|rels| {
            rels.iter()
                .map(|r| {
                    let mut v: Vec<[Entity; 2]> = r.iter().map(|&(b, a)| [b, a]).collect();
                    v.sort_unstable();
                    v
                })
                .collect()
        });
        ModelJson {
            kind: self.kind,
            height: self.height(),
            cumulative: self.cumulative,
            domains: self.domains.clone(),
            apply: self.members.clone(),
            up_map,
            down_rel,
            meta: self.meta.clone(),
        }
    }

    pub fn from_json(j: ModelJson) -> Result<Model, ModelError> {
        if j.domains.len() != j.height as usize {
            return Err(ModelError::Invalid(format!("height {} but {} domains", j.height, j.domains.len())));
        }
        let mut m = Model::new(j.kind, j.cumulative, j.domains, j.apply, j.meta)?;
        if let Some(u) = j.up_map {
            m = m.with_up_map(u.into_iter().map(|v| v.into_iter().map(|[a, b]| (a, b)).collect()).collect())?;
        }
        if let Some(d) = j.down_rel {
            m = m.with_down_rel(d.into_iter().map(|v| v.into_iter().map(|[b, a]| (b, a)).collect()).collect())?;
        }
        Ok(m)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("model serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Model, ModelError> {
        let j: ModelJson = serde_json::from_str(s).map_err(|e| ModelError::Invalid(format!("model JSON: {e}")))?;
        Model::from_json(j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Model {
        Model::new(ModelKind::Custom, true, vec![vec![0], vec![0, 1]], vec![vec![], vec![0]], Meta::default()).unwrap()
    }

    #[test]
    fn json_roundtrip() {
        let m = tiny();
        let back = Model::from_json_str(&m.to_json_string()).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn rejects_orphans_and_gaps() {
        let orphan = Model::new(ModelKind::Custom, false, vec![vec![0]], vec![vec![], vec![]], Meta::default());
        assert!(orphan.is_err());
        let gap = Model::new(ModelKind::Custom, true, vec![vec![0], vec![1]], vec![vec![], vec![0]], Meta::default());
        assert!(gap.is_err());
    }
}
