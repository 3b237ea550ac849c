//! Passing between transitive membership graphs and cumulative typed models.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::graph::MembershipGraph;
use super::SetError;
use crate::kernel::{Formula, Symbol, TypeIndex};
use crate::models::{
    standardness_witness, Assignment, Entity, EvalError, Evaluator, Meta, Model, ModelError, ModelKind,
};

/// `t(α) = α` for finite α and `α + 1` otherwise.
pub fn t_shunt(alpha: TypeIndex) -> TypeIndex {
    if alpha.is_finite() {
        alpha
    } else {
        alpha.succ()
    }
}

fn require_transitive(g: &MembershipGraph) -> Result<Vec<u32>, SetError> {
    if let Some((a, b)) = g.extensionality_violation() {
        return Err(SetError::NonExtensional { pair: (g.name(a).to_string(), g.name(b).to_string()) });
    }
    if let Some(cycle) = g.find_cycle() {
        return Err(SetError::IllFounded { cycle: cycle.iter().map(|&c| g.name(c).to_string()).collect() });
    }
    Ok(g.set_ranks().expect("well-founded graphs have ranks"))
}

/// `T(A)`: a node of rank α is an entity of every type β with
/// `α ≤ β < ord(A)`, and application is membership.
pub fn t_construction(g: &MembershipGraph) -> Result<Model, SetError> {
    let ranks = require_transitive(g)?;
    let ord = ranks.iter().max().map_or(0, |r| r + 1);
    if ord == 0 {
        return Err(SetError::Bound("the empty graph has no types".into()));
    }
    let domains = (0..ord).map(|b| (0..g.len() as Entity).filter(|&x| ranks[x as usize] <= b).collect()).collect();
    let names: BTreeMap<String, Entity> = g.names().iter().cloned().zip(0..).collect();
    let meta = Meta { labels: g.names().to_vec(), names, ..Meta::default() };
    Model::new(ModelKind::TModel, true, domains, g.all_members().to_vec(), meta)
        .map_err(|e| SetError::Malformed(e.to_string()))
}

/// `S_κ(M)`: the type-κ entities of `m`, with `a ∈ b` read off the defined
/// membership of `m` at types (κ, κ).
pub fn s_construction(m: &Model, kappa: u32) -> Result<MembershipGraph, SetError> {
    if kappa + 2 >= m.height() {
        return Err(SetError::Bound(format!(
            "the membership of type-{kappa} entities needs type {}, but the model stops at type {}",
            kappa + 2,
            m.max_type()
        )));
    }
    let dom = m.domain(kappa).to_vec();
    let (a, b) = (Symbol::new("a", kappa), Symbol::new("b", kappa));
    let mem = Formula::in_ctt(a.term(), b.term());
    let mut ev = Evaluator::new(m);
    let mut members = vec![Vec::new(); dom.len()];
    for (j, &y) in dom.iter().enumerate() {
        for (i, &x) in dom.iter().enumerate() {
            let asg: Assignment = [(a.clone(), x), (b.clone(), y)].into_iter().collect();
            if ev.eval(&mem, &asg).map_err(eval_err)? {
                members[j].push(i as u32);
            }
        }
    }
    let mut names: Vec<String> = dom.iter().map(|&e| m.label(e).to_string()).collect();
    let mut seen = HashMap::new();
    for (i, n) in names.iter_mut().enumerate() {
        if seen.insert(n.clone(), i).is_some() {
            *n = format!("e{}", dom[i]);
        }
    }
    MembershipGraph::new(names, members)
}

fn eval_err(e: EvalError) -> SetError {
    SetError::Bound(e.to_string())
}

/// The collapse of an extensional well-founded graph onto its transitive
/// isomorph, with canonical node names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collapse {
    #[serde(serialize_with = "ser_graph")]
    pub graph: MembershipGraph,
    /// `map[i]` is the collapsed index of original node `i`.
    pub map: Vec<u32>,
}

fn ser_graph<S: serde::Serializer>(g: &MembershipGraph, s: S) -> Result<S::Ok, S::Error> {
    g.to_json().serialize(s)
}

impl Collapse {
    /// Original name paired with collapsed name.
    pub fn renaming<'a>(&'a self, original: &'a MembershipGraph) -> impl Iterator<Item = (&'a str, &'a str)> {
        self.map.iter().enumerate().map(move |(i, &c)| (original.name(i as u32), self.graph.name(c)))
    }
}

/// Nodes are numbered by rank, then by their member indices read from the
/// largest down; for `V_n` node `s{i}` gets index `i`.
pub fn mostowski_collapse(g: &MembershipGraph) -> Result<Collapse, SetError> {
    let ranks = require_transitive(g)?;
    let mut order: Vec<u32> = (0..g.len() as u32).collect();
    order.sort_by_key(|&a| ranks[a as usize]);
    let mut map = vec![u32::MAX; g.len()];
    let mut next = 0u32;
    let mut start = 0;
    while start < order.len() {
        let r = ranks[order[start] as usize];
        let end = order[start..].iter().position(|&a| ranks[a as usize] != r).map_or(order.len(), |k| start + k);
        let mut keyed: Vec<(Vec<u32>, u32)> = order[start..end]
            .iter()
            .map(|&a| {
                let mut k: Vec<u32> = g.members(a).iter().map(|&m| map[m as usize]).collect();
                k.sort_unstable_by(|x, y| y.cmp(x));
                (k, a)
            })
            .collect();
        keyed.sort();
        for (_, a) in keyed {
            map[a as usize] = next;
            next += 1;
        }
        start = end;
    }
    let mut members = vec![Vec::new(); g.len()];
    for a in 0..g.len() {
        members[map[a] as usize] = g.members(a as u32).iter().map(|&m| map[m as usize]).collect();
    }
    let names = (0..g.len()).map(|i| format!("s{i}")).collect();
    Ok(Collapse { graph: MembershipGraph::new(names, members)?, map })
}

/// The rank-≤κ part of `g`, as a subgraph.
pub fn rank_slice(g: &MembershipGraph, kappa: u32) -> Result<MembershipGraph, SetError> {
    let ranks = require_transitive(g)?;
    Ok(g.restrict(|i| ranks[i as usize] <= kappa))
}

/// A subset of some stratum `{x : rank(x) ≤ α}` with `α + 1 < ord(g)` that
/// is not a node, if any.
pub fn standardness_gap(g: &MembershipGraph, budget: usize) -> Result<Option<(u32, Vec<String>)>, SetError> {
    let ranks = require_transitive(g)?;
    let ord = ranks.iter().max().map_or(0, |r| r + 1);
    let nodes: HashMap<&[u32], u32> = (0..g.len() as u32).map(|a| (g.members(a), a)).collect();
    for alpha in 0..ord.saturating_sub(1) {
        let stratum: Vec<u32> = (0..g.len() as u32).filter(|&x| ranks[x as usize] <= alpha).collect();
        let k = stratum.len();
        if k >= 64 || (1u128 << k) > budget as u128 {
            return Err(SetError::Budget { needed: if k >= 127 { u128::MAX } else { 1u128 << k }, budget });
        }
        for mask in 0..1u64 << k {
            let subset: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| stratum[i]).collect();
            if !nodes.contains_key(subset.as_slice()) {
                return Ok(Some((alpha, subset.iter().map(|&x| g.name(x).to_string()).collect())));
            }
        }
    }
    Ok(None)
}

pub fn is_standard(g: &MembershipGraph, budget: usize) -> Result<bool, SetError> {
    Ok(standardness_gap(g, budget)?.is_none())
}

/// Both sides of the standardness transport for one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Transport {
    pub graph_standard: bool,
    pub model_standard: bool,
}

impl Transport {
    pub fn holds(&self) -> bool {
        self.graph_standard == self.model_standard
    }
}

pub fn standardness_transport(g: &MembershipGraph, budget: usize) -> Result<Transport, SetError> {
    let graph_standard = is_standard(g, budget)?;
    let m = t_construction(g)?;
    let model_standard = standardness_witness(&m, budget)
        .map_err(|e| match e {
            ModelError::Budget { needed, budget } => SetError::Budget { needed, budget },
            e => SetError::Bound(e.to_string()),
        })?
        .is_none();
    Ok(Transport { graph_standard, model_standard })
}

/// A node `b` of rank at most `kappa` and a distinct node `x` of rank at
/// most `kappa + 1` that belong to exactly the same nodes of rank at most
/// `kappa + 2`. In `T(g)` such a pair is `≡`-related without being
/// identical, so the defined membership at `(kappa, kappa)` stops tracking
/// the graph.
pub fn indiscernible_pair(g: &MembershipGraph, kappa: u32) -> Result<Option<(String, String)>, SetError> {
    let ranks = require_transitive(g)?;
    let n = g.len() as u32;
    let owners =
        |x: u32| -> Vec<u32> { (0..n).filter(|&z| ranks[z as usize] <= kappa + 2 && g.contains(z, x)).collect() };
    let wide: Vec<(u32, Vec<u32>)> =
        (0..n).filter(|&x| ranks[x as usize] <= kappa + 1).map(|x| (x, owners(x))).collect();
    for (b, ob) in wide.iter().filter(|(b, _)| ranks[*b as usize] <= kappa) {
        if let Some((x, _)) = wide.iter().find(|(x, ox)| x != b && ox == ob) {
            return Ok(Some((g.name(*b).to_string(), g.name(*x).to_string())));
        }
    }
    Ok(None)
}

/// The κ for which `S_κ(T(g))` is defined and identity at type `κ + 1` is
/// definable in `T(g)`.
pub fn round_trip_kappas(g: &MembershipGraph) -> Result<Vec<u32>, SetError> {
    let ord = require_transitive(g)?.iter().max().map_or(0, |r| r + 1);
    let mut out = Vec::new();
    for k in (0..ord).take_while(|k| k + 2 < ord) {
        if indiscernible_pair(g, k)?.is_none() {
            out.push(k);
        }
    }
    Ok(out)
}

/// Whether `collapse(S_κ(T(g)))` equals `collapse(rank-≤κ part of g)`.
pub fn round_trip_holds(g: &MembershipGraph, kappa: u32) -> Result<bool, SetError> {
    let t = t_construction(g)?;
    let s = s_construction(&t, kappa)?;
    let left = mostowski_collapse(&s)?;
    let right = mostowski_collapse(&rank_slice(g, kappa)?)?;
    Ok(left.graph == right.graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::settheory::build_v;

    #[test]
    fn shunt() {
        assert_eq!(t_shunt(TypeIndex::fin(3)), TypeIndex::fin(3));
        assert_eq!(t_shunt(TypeIndex::OMEGA), TypeIndex::new(1, 1));
    }

    #[test]
    fn collapse_of_v_is_identity() {
        let g = build_v(4).unwrap();
        let c = mostowski_collapse(&g).unwrap();
        assert_eq!(c.map, (0..16).collect::<Vec<_>>());
        assert_eq!(c.graph, g);
    }
}
