//! Histories, levels and rank, computed exactly from their definitions over a
//! finite membership graph.

use std::collections::HashMap;

use serde::Serialize;

use super::graph::MembershipGraph;
use super::SetError;

/// Fixed-width bitset over the nodes that are members of something.
type Bits = Vec<u64>;

/// For each node `c` that occurs as a member, the set `{x : x ⊆ c}`,
/// restricted to member nodes. `None` marks a `c` with some subset `x` that
/// is a member of nothing: such a `c` can never witness `x ∈ a`.
pub(crate) struct SubsetIndex<'g> {
    g: &'g MembershipGraph,
    pos: HashMap<u32, usize>,
    sub: HashMap<u32, Option<Bits>>,
    words: usize,
    by_members: HashMap<Vec<u32>, Vec<u32>>,
}

impl<'g> SubsetIndex<'g> {
    pub(crate) fn new(g: &'g MembershipGraph, budget: usize) -> Result<Self, SetError> {
        let mut member_nodes: Vec<u32> = g.all_members().iter().flatten().copied().collect();
        member_nodes.sort_unstable();
        member_nodes.dedup();
        let cost = member_nodes.len() as u128 * g.len() as u128;
        if cost > budget as u128 {
            return Err(SetError::Budget { needed: cost, budget });
        }
        let pos: HashMap<u32, usize> = member_nodes.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let words = member_nodes.len().div_ceil(64).max(1);
        let mut sub = HashMap::new();
        for &c in &member_nodes {
            let cm = g.members(c);
            let mut bits = vec![0u64; words];
            let mut ok = true;
            for x in 0..g.len() as u32 {
                if g.members(x).iter().all(|m| cm.binary_search(m).is_ok()) {
                    match pos.get(&x) {
                        Some(&p) => bits[p / 64] |= 1 << (p % 64),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            sub.insert(c, ok.then_some(bits));
        }
        let mut by_members: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
        for a in 0..g.len() as u32 {
            by_members.entry(g.members(a).to_vec()).or_default().push(a);
        }
        Ok(SubsetIndex { g, pos, sub, words, by_members })
    }

    fn bits_of(&self, a: u32) -> Bits {
        let mut bits = vec![0u64; self.words];
        for m in self.g.members(a) {
            let p = self.pos[m];
            bits[p / 64] |= 1 << (p % 64);
        }
        bits
    }

    /// `⋃ {x : x ⊆ c}` over the given `c`s, or `None` if some such `x` is a
    /// member of nothing.
    fn union_of_subsets(&self, cs: impl Iterator<Item = u32>) -> Option<Bits> {
        let mut out = vec![0u64; self.words];
        for c in cs {
            let s = self.sub.get(&c)?.as_ref()?;
            for (o, w) in out.iter_mut().zip(s) {
                *o |= w;
            }
        }
        Some(out)
    }

    fn nodes_with(&self, bits: &Bits) -> &[u32] {
        let mut ms: Vec<u32> =
            self.pos.iter().filter(|(_, &p)| bits[p / 64] >> (p % 64) & 1 == 1).map(|(&m, _)| m).collect();
        ms.sort_unstable();
        self.by_members.get(&ms).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `(∀a ∈ h)∀x(x ∈ a ↔ (∃c ∈ h)(x ⊆ c ∧ c ∈ a))`.
    pub(crate) fn is_history(&self, h: u32) -> bool {
        let hm = self.g.members(h);
        hm.iter().all(|&a| {
            let cs = hm.iter().copied().filter(|&c| self.g.contains(a, c));
            self.union_of_subsets(cs).is_some_and(|u| u == self.bits_of(a))
        })
    }

    /// The nodes `s` with `∀x(x ∈ s ↔ ∃c(x ⊆ c ∧ c ∈ h))`.
    fn accumulated(&self, h: u32) -> &[u32] {
        match self.union_of_subsets(self.g.members(h).iter().copied()) {
            Some(u) => self.nodes_with(&u),
            None => &[],
        }
    }

    pub(crate) fn levels(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.g.len() as u32)
            .filter(|&h| self.is_history(h))
            .flat_map(|h| self.accumulated(h).to_vec())
            .collect();
        out.sort_unstable_by_key(|&s| (self.g.members(s).len(), s));
        out.dedup();
        out
    }
}

pub fn is_history(g: &MembershipGraph, h: u32, budget: usize) -> Result<bool, SetError> {
    Ok(SubsetIndex::new(g, budget)?.is_history(h))
}

pub fn is_level(g: &MembershipGraph, s: u32, budget: usize) -> Result<bool, SetError> {
    Ok(levels(g, budget)?.contains(&s))
}

/// Every level of `g`, ordered by size.
pub fn levels(g: &MembershipGraph, budget: usize) -> Result<Vec<u32>, SetError> {
    Ok(SubsetIndex::new(g, budget)?.levels())
}

fn subset(g: &MembershipGraph, a: u32, b: u32) -> bool {
    g.members(a).iter().all(|&x| g.contains(b, x))
}

/// The rank of `a`: the number of levels below the ∈-least level that
/// includes `a`.
pub fn rank(g: &MembershipGraph, a: u32, budget: usize) -> Result<u32, SetError> {
    let lv = levels(g, budget)?;
    rank_in(g, &lv, a)
}

pub(crate) fn rank_in(g: &MembershipGraph, lv: &[u32], a: u32) -> Result<u32, SetError> {
    let holders: Vec<u32> = lv.iter().copied().filter(|&s| subset(g, a, s)).collect();
    let least = holders
        .iter()
        .copied()
        .find(|&s| !holders.iter().any(|&r| g.contains(s, r)))
        .ok_or_else(|| SetError::RankUndefined(g.name(a).to_string()))?;
    Ok(lv.iter().filter(|&&r| g.contains(least, r)).count() as u32)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellOrderReport {
    pub levels: Vec<String>,
    /// Every nonempty collection of levels has an ∈-least member.
    pub least_witness: bool,
    /// Any two levels are ∈-comparable or equal.
    pub trichotomy: bool,
    /// Each level is `{x : ∃r(Lev(r) ∧ x ⊆ r ∈ s)}`.
    pub accumulation: bool,
    /// Collections of levels left unchecked for budget.
    pub skipped: bool,
}

impl WellOrderReport {
    pub fn holds(&self) -> bool {
        self.least_witness && self.trichotomy && self.accumulation
    }
}

/// Check that the levels of `g` are well-ordered by `∈`, and that each level
/// accumulates the subsets of the levels inside it.
pub fn check_wellordering_of_levels(g: &MembershipGraph, budget: usize) -> Result<WellOrderReport, SetError> {
    let lv = levels(g, budget)?;
    let trichotomy = lv.iter().all(|&s| lv.iter().all(|&t| s == t || g.contains(t, s) || g.contains(s, t)));
    let (least_witness, skipped) = if lv.len() < 64 && (1u128 << lv.len()) <= budget as u128 {
        let ok = (1u64..1 << lv.len()).all(|mask| {
            let chosen: Vec<u32> = (0..lv.len()).filter(|i| mask >> i & 1 == 1).map(|i| lv[i]).collect();
            chosen.iter().any(|&s| !chosen.iter().any(|&r| g.contains(s, r)))
        });
        (ok, false)
    } else {
        // a finite ∈-relation without cycles always has minimal elements
        (g.is_well_founded(), true)
    };
    let accumulation = lv.iter().all(|&s| {
        (0..g.len() as u32).all(|x| {
            let rhs = lv.iter().any(|&r| g.contains(s, r) && subset(g, x, r));
            g.contains(s, x) == rhs
        })
    });
    Ok(WellOrderReport {
        levels: lv.iter().map(|&s| g.name(s).to_string()).collect(),
        least_witness,
        trichotomy,
        accumulation,
        skipped,
    })
}
