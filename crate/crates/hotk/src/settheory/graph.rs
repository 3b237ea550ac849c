use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::SetError;

/// Nodes with membership edges. `members(a)` lists the nodes `x` with `x ∈ a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipGraph {
    names: Vec<String>,
    members: Vec<Vec<u32>>,
    ranks: Option<Vec<u32>>,
}

/// File format: `edges` holds `[child, parent]` pairs meaning child ∈ parent.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub nodes: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<BTreeMap<String, u32>>,
}

impl MembershipGraph {
    pub fn new(names: Vec<String>, mut members: Vec<Vec<u32>>) -> Result<Self, SetError> {
        if names.len() != members.len() {
            return Err(SetError::Malformed(format!("{} names for {} nodes", names.len(), members.len())));
        }
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if let Some(j) = seen.insert(n.clone(), i) {
                return Err(SetError::Malformed(format!("duplicate node name `{n}` (nodes {j} and {i})")));
            }
        }
        for ms in members.iter_mut() {
            ms.sort_unstable();
            ms.dedup();
            if ms.iter().any(|&m| m as usize >= names.len()) {
                return Err(SetError::Malformed("edge to an unknown node".into()));
            }
        }
        Ok(MembershipGraph { names, members, ranks: None })
    }

    pub fn empty() -> Self {
        MembershipGraph { names: Vec::new(), members: Vec::new(), ranks: None }
    }

    /// Attach rank labels, one per node.
    pub fn with_ranks(mut self, ranks: Vec<u32>) -> Result<Self, SetError> {
        if ranks.len() != self.len() {
            return Err(SetError::Malformed(format!("{} rank labels for {} nodes", ranks.len(), self.len())));
        }
        self.ranks = Some(ranks);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: u32) -> &str {
        &self.names[i as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn members(&self, a: u32) -> &[u32] {
        &self.members[a as usize]
    }

    pub fn all_members(&self) -> &[Vec<u32>] {
        &self.members
    }

    pub fn contains(&self, a: u32, x: u32) -> bool {
        self.members[a as usize].binary_search(&x).is_ok()
    }

    /// Stored rank labels, if any.
    pub fn rank_labels(&self) -> Option<&[u32]> {
        self.ranks.as_deref()
    }

    pub fn edge_count(&self) -> usize {
        self.members.iter().map(Vec::len).sum()
    }

    /// A pair of distinct nodes with the same members, if any.
    pub fn extensionality_violation(&self) -> Option<(u32, u32)> {
        let mut seen: HashMap<&[u32], u32> = HashMap::new();
        for (i, ms) in self.members.iter().enumerate() {
            if let Some(&j) = seen.get(ms.as_slice()) {
                return Some((j, i as u32));
            }
            seen.insert(ms, i as u32);
        }
        None
    }

    pub fn is_extensional(&self) -> bool {
        self.extensionality_violation().is_none()
    }

    /// A membership cycle `c0 ∈ c1 ∈ … ∈ c0`, if any.
    pub fn find_cycle(&self) -> Option<Vec<u32>> {
        // 0 unvisited, 1 on stack, 2 done
        let mut state = vec![0u8; self.len()];
        let mut path: Vec<u32> = Vec::new();
        for root in 0..self.len() as u32 {
            if state[root as usize] != 0 {
                continue;
            }
            let mut stack: Vec<(u32, usize)> = vec![(root, 0)];
            state[root as usize] = 1;
            path.push(root);
            while let Some(top) = stack.last_mut() {
                let node = top.0;
                if let Some(&child) = self.members[node as usize].get(top.1) {
                    top.1 += 1;
                    match state[child as usize] {
                        0 => {
                            state[child as usize] = 1;
                            path.push(child);
                            stack.push((child, 0));
                        }
                        1 => {
                            let start = path.iter().position(|&p| p == child).unwrap_or(0);
                            let mut cycle: Vec<u32> = path[start..].to_vec();
                            cycle.reverse();
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    state[node as usize] = 2;
                    path.pop();
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn is_well_founded(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Extensional and well-founded, so the graph is (up to renaming) a
    /// transitive set with membership read verbatim.
    pub fn is_transitive(&self) -> bool {
        self.is_extensional() && self.is_well_founded()
    }

    /// Set-theoretic rank of every node; `None` when the graph is ill-founded.
    pub fn set_ranks(&self) -> Option<Vec<u32>> {
        let order = self.topological()?;
        let mut rank = vec![0u32; self.len()];
        for &a in &order {
            rank[a as usize] = self.members[a as usize].iter().map(|&m| rank[m as usize] + 1).max().unwrap_or(0);
        }
        Some(rank)
    }

    /// Nodes ordered so that members come before the sets containing them.
    fn topological(&self) -> Option<Vec<u32>> {
        let n = self.len();
        let mut parents: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut pending: Vec<usize> = vec![0; n];
        for (a, ms) in self.members.iter().enumerate() {
            pending[a] = ms.len();
            for &m in ms {
                parents[m as usize].push(a as u32);
            }
        }
        let mut ready: Vec<u32> = (0..n as u32).filter(|&a| pending[a as usize] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(x) = ready.pop() {
            out.push(x);
            for &p in &parents[x as usize] {
                pending[p as usize] -= 1;
                if pending[p as usize] == 0 {
                    ready.push(p);
                }
            }
        }
        (out.len() == n).then_some(out)
    }

    /// Least ordinal above every rank: max rank + 1, or 0 for the empty graph.
    pub fn ord(&self) -> Option<u32> {
        Some(self.set_ranks()?.into_iter().max().map_or(0, |r| r + 1))
    }

    /// The subgraph on nodes satisfying `keep`, with edges restricted.
    pub fn restrict(&self, keep: impl Fn(u32) -> bool) -> MembershipGraph {
        let kept: Vec<u32> = (0..self.len() as u32).filter(|&i| keep(i)).collect();
        let new_id: HashMap<u32, u32> = kept.iter().enumerate().map(|(k, &i)| (i, k as u32)).collect();
        let names = kept.iter().map(|&i| self.names[i as usize].clone()).collect();
        let members = kept
            .iter()
            .map(|&i| self.members[i as usize].iter().filter_map(|m| new_id.get(m).copied()).collect())
            .collect();
        let ranks = self.ranks.as_ref().map(|r| kept.iter().map(|&i| r[i as usize]).collect());
        MembershipGraph { names, members, ranks }
    }

    pub fn to_json(&self) -> GraphJson {
        let mut edges = Vec::with_capacity(self.edge_count());
        for (p, ms) in self.members.iter().enumerate() {
            for &c in ms {
                edges.push([self.names[c as usize].clone(), self.names[p].clone()]);
            }
        }
        let ranks =
            self.ranks.as_ref().map(|r| self.names.iter().cloned().zip(r.iter().copied()).collect::<BTreeMap<_, _>>());
        GraphJson { nodes: self.names.clone(), edges, ranks }
    }

    pub fn from_json(j: GraphJson) -> Result<Self, SetError> {
        let index: HashMap<&str, u32> = j.nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i as u32)).collect();
        let look = |n: &str| index.get(n).copied().ok_or_else(|| SetError::Malformed(format!("unknown node `{n}`")));
        let mut members = vec![Vec::new(); j.nodes.len()];
        for [child, parent] in &j.edges {
            members[look(parent)? as usize].push(look(child)?);
        }
        let ranks = match &j.ranks {
            None => None,
            Some(r) => Some(
                j.nodes
                    .iter()
                    .map(|n| r.get(n).copied().ok_or_else(|| SetError::Malformed(format!("no rank for node `{n}`"))))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        let g = MembershipGraph::new(j.nodes, members)?;
        match ranks {
            Some(r) => g.with_ranks(r),
            None => Ok(g),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, SetError> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| SetError::Malformed(format!("graph JSON: {e}")))?;
        MembershipGraph::from_json(j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_and_ranks() {
        let g = MembershipGraph::new(vec!["e".into(), "a".into()], vec![vec![], vec![0, 1]]).unwrap();
        assert_eq!(g.find_cycle(), Some(vec![1]));
        assert!(g.set_ranks().is_none());
        let h = MembershipGraph::new(vec!["e".into(), "s".into()], vec![vec![], vec![0]]).unwrap();
        assert_eq!(h.set_ranks(), Some(vec![0, 1]));
        assert_eq!(h.ord(), Some(2));
        let back = MembershipGraph::from_json_str(&h.to_json_string()).unwrap();
        assert_eq!(back, h);
    }
}
