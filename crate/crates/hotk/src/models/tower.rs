//! Iterated powersets over an arbitrary seed, shared by the class, pure,
//! graph and set-hierarchy builders.

use std::collections::HashMap;

use super::model::Entity;

#[derive(Clone, Debug, Default)]
pub(crate) struct Tower {
    pub members: Vec<Vec<Entity>>,
    pub labels: Vec<String>,
    /// Sets by member list. Urelements are not registered.
    lookup: HashMap<Vec<Entity>, Entity>,
}

const LABEL_LIMIT: usize = 48;

impl Tower {
    pub fn new() -> Self {
        Tower::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// A memberless individual, distinct from the empty set.
    pub fn urelement(&mut self, label: impl Into<String>) -> Entity {
        self.members.push(Vec::new());
        self.labels.push(label.into());
        (self.members.len() - 1) as Entity
    }

    /// Allocate a node whose members are filled in later (for self-membered sets).
    pub fn reserve(&mut self, label: impl Into<String>) -> Entity {
        self.urelement(label)
    }

    pub fn define(&mut self, id: Entity, mut members: Vec<Entity>) {
        members.sort_unstable();
        members.dedup();
        self.lookup.insert(members.clone(), id);
        self.members[id as usize] = members;
    }

    /// The set with exactly these members, created if new.
    pub fn set(&mut self, mut members: Vec<Entity>) -> Entity {
        members.sort_unstable();
        members.dedup();
        if let Some(&id) = self.lookup.get(&members) {
            return id;
        }
        let label = self.brace_label(&members);
        let id = self.members.len() as Entity;
        self.members.push(members.clone());
        self.labels.push(label);
        self.lookup.insert(members, id);
        id
    }

    fn brace_label(&self, members: &[Entity]) -> String {
        let id = self.members.len();
        let mut s = String::from("{");
        for (i, &m) in members.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&self.labels[m as usize]);
            if s.len() > LABEL_LIMIT {
                return format!("#{id}");
            }
        }
        s.push('}');
        s
    }

    /// Every subset of `stage`, as a sorted entity list. `Err` carries the
    /// number of subsets when it exceeds `budget`.
    pub fn powerset(&mut self, stage: &[Entity], budget: usize) -> Result<Vec<Entity>, u128> {
        let k = stage.len();
        let count: u128 = if k >= 127 { u128::MAX } else { 1u128 << k };
        if count > budget as u128 {
            return Err(count);
        }
        let mut stage = stage.to_vec();
        stage.sort_unstable();
        let mut out = Vec::with_capacity(count as usize);
        for mask in 0..(count as u64) {
            let ms: Vec<Entity> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| stage[i]).collect();
            out.push(self.set(ms));
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}
