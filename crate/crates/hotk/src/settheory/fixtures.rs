//! Bundled membership graphs.

use super::graph::MembershipGraph;
use super::SetError;
use crate::models::tower::Tower;

/// Largest `n` accepted by [`build_v`].
pub const V_CAP: u32 = 5;

/// `V_n`, the pure sets of rank `< n`. Node `s{i}` is the set with Ackermann
/// code `i`: its members are the nodes whose bits are set in `i`.
pub fn build_v(n: u32) -> Result<MembershipGraph, SetError> {
    build_v_with(n, 1 << 17)
}

pub fn build_v_with(n: u32, budget: usize) -> Result<MembershipGraph, SetError> {
    if n > V_CAP {
        return Err(SetError::Bound(format!("V_{n} exceeds the cap V_{V_CAP}")));
    }
    let mut size: u128 = 0;
    for _ in 0..n {
        size = 1u128 << size;
    }
    if size > budget as u128 {
        return Err(SetError::Budget { needed: size, budget });
    }
    let size = size as u32;
    let names = (0..size).map(|i| format!("s{i}")).collect();
    let members = (0..size).map(|i| (0..32).filter(|b| i >> b & 1 == 1).collect()).collect();
    MembershipGraph::new(names, members)
}

fn from_tower(t: Tower, ranks: Vec<u32>) -> Result<MembershipGraph, SetError> {
    MembershipGraph::new(t.labels, t.members)?.with_ranks(ranks)
}

/// Iterate powersets `stages` times; nodes first built in round `n` get
/// rank label `first_rank + n`.
fn staged(
    t: &mut Tower,
    ranks: &mut Vec<u32>,
    mut stage: Vec<u32>,
    stages: u32,
    first_rank: u32,
) -> Result<(), SetError> {
    for n in 0..stages {
        let next = t.powerset(&stage, 1 << 16).map_err(|needed| SetError::Budget { needed, budget: 1 << 16 })?;
        ranks.resize(t.len(), first_rank + n);
        stage = next;
    }
    Ok(())
}

/// The ill-founded structure with `a = {∅, a}`: `A_1 = a` and
/// `A_{n+1} = P(A_n)`, built up to `A_stages`. Rank labels: `ρ(∅) = 0`,
/// `ρ(a) = 1`, and `ρ(c) = n` for `c` first appearing in `A_n`.
pub fn astruct_graph(stages: u32) -> Result<MembershipGraph, SetError> {
    if stages == 0 {
        return Err(SetError::Bound("the a-structure starts at A_1".into()));
    }
    let mut t = Tower::new();
    let empty = t.set(Vec::new());
    t.labels[empty as usize] = "empty".into();
    let a = t.reserve("a");
    t.define(a, vec![empty, a]);
    let mut ranks = vec![0, 1];
    staged(&mut t, &mut ranks, vec![empty, a], stages - 1, 2)?;
    from_tower(t, ranks)
}

/// The Quine-atom structure with `b = {b}`: `B_0 = {b}` and
/// `B_{n+1} = P(B_n)`, built up to `B_stages`.
pub fn quine_graph(stages: u32) -> Result<MembershipGraph, SetError> {
    let mut t = Tower::new();
    let b = t.reserve("b");
    t.define(b, vec![b]);
    let mut ranks = vec![0];
    staged(&mut t, &mut ranks, vec![b], stages, 1)?;
    if let Some(empty) = t.members.iter().position(Vec::is_empty) {
        t.labels[empty] = "empty".into();
        // later brace labels were built with the old label of ∅
        relabel(&mut t);
    }
    from_tower(t, ranks)
}

fn relabel(t: &mut Tower) {
    for i in 0..t.len() {
        if t.labels[i].starts_with('{') {
            let parts: Vec<String> = t.members[i].iter().map(|&m| t.labels[m as usize].clone()).collect();
            let l = format!("{{{}}}", parts.join(","));
            t.labels[i] = if l.len() > 48 { format!("#{i}") } else { l };
        }
    }
}

fn graph(spec: &[(&str, &[&str])]) -> MembershipGraph {
    let names: Vec<String> = spec.iter().map(|(n, _)| n.to_string()).collect();
    let members = spec
        .iter()
        .map(|(_, ms)| ms.iter().map(|m| names.iter().position(|n| n == m).expect("known node") as u32).collect())
        .collect();
    MembershipGraph::new(names, members).expect("fixture is well-formed")
}

/// Five small transitive graphs, by name.
pub fn hand_graphs() -> Vec<(&'static str, MembershipGraph)> {
    vec![
        ("singleton", graph(&[("empty", &[])])),
        (
            "ordinals5",
            graph(&[
                ("0", &[]),
                ("1", &["0"]),
                ("2", &["0", "1"]),
                ("3", &["0", "1", "2"]),
                ("4", &["0", "1", "2", "3"]),
            ]),
        ),
        ("zermelo4", graph(&[("z0", &[]), ("z1", &["z0"]), ("z2", &["z1"]), ("z3", &["z2"])])),
        (
            "mixed",
            graph(&[
                ("empty", &[]),
                ("one", &["empty"]),
                ("zone", &["one"]),
                ("two", &["empty", "one"]),
                ("zzone", &["zone"]),
                ("pair", &["one", "two"]),
                ("top", &["empty", "zzone", "pair"]),
            ]),
        ),
        ("v4_tower", v4_tower()),
    ]
}

/// `V_4` with `{V_3}` and `{{V_3}}` on top.
fn v4_tower() -> MembershipGraph {
    let v4 = build_v(4).expect("V_4 is small");
    let mut names = v4.names().to_vec();
    let mut members = v4.all_members().to_vec();
    // s15 = V_3 = {s0, s1, s2, s3}
    names.push("t1".into());
    members.push(vec![15]);
    names.push("t2".into());
    members.push(vec![16]);
    MembershipGraph::new(names, members).expect("fixture is well-formed")
}

/// `V_4` without one rank-3 set: still transitive, but not standard.
pub fn nonstandard_v4() -> MembershipGraph {
    let v4 = build_v(4).expect("V_4 is small");
    // s9 = {s0, s3} has rank 3 and lies in no other node of V_4
    v4.restrict(|i| i != 9)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let sizes: Vec<usize> = (0..=4).map(|n| build_v(n).unwrap().len()).collect();
        assert_eq!(sizes, vec![0, 1, 2, 4, 16]);
    }

    #[test]
    fn astruct_ranks() {
        let g = astruct_graph(2).unwrap();
        assert_eq!(g.len(), 4);
        let r = g.rank_labels().unwrap();
        let rank = |n: &str| r[g.index(n).unwrap() as usize];
        assert_eq!((rank("empty"), rank("a"), rank("{empty}"), rank("{a}")), (0, 1, 2, 2));
        assert!(g.contains(g.index("a").unwrap(), g.index("a").unwrap()));
    }

    #[test]
    fn quine_ranks() {
        let g = quine_graph(1).unwrap();
        assert_eq!(g.len(), 2);
        let r = g.rank_labels().unwrap();
        assert_eq!(r[g.index("b").unwrap() as usize], 0);
        assert_eq!(r[g.index("empty").unwrap() as usize], 1);
    }
}
