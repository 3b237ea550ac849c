use std::collections::BTreeSet;

use hotk::settheory::{
    build_v, check_wellordering_of_levels, hand_graphs, levels, mostowski_collapse, rank, MembershipGraph,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

const BUDGET: usize = 1 << 20;

/// Rank by the usual recursion: one more than the largest member rank.
fn naive_rank(g: &MembershipGraph, a: u32) -> u32 {
    g.members(a).iter().map(|&m| naive_rank(g, m) + 1).max().unwrap_or(0)
}

/// A transitive hereditarily finite graph: each new node is a fresh subset
/// of the earlier nodes, picked by the bits of `picks`.
fn hf_graph(picks: &[u64]) -> MembershipGraph {
    let mut members: Vec<Vec<u32>> = vec![Vec::new()];
    let mut seen: BTreeSet<Vec<u32>> = [Vec::new()].into();
    for &p in picks {
        let n = members.len() as u32;
        let set: Vec<u32> = (0..n.min(64)).filter(|i| p >> i & 1 == 1).collect();
        if seen.insert(set.clone()) {
            members.push(set);
        }
    }
    let names = (0..members.len()).map(|i| format!("n{i}")).collect();
    MembershipGraph::new(names, members).unwrap()
}

/// The same graph with its nodes listed in another order and renamed.
fn permuted(g: &MembershipGraph, key: u64) -> MembershipGraph {
    let n = g.len() as u32;
    let mut order: Vec<u32> = (0..n).collect();
    order.shuffle(&mut StdRng::seed_from_u64(key));
    let mut pos = vec![0u32; n as usize];
    for (new, &old) in order.iter().enumerate() {
        pos[old as usize] = new as u32;
    }
    let members = order.iter().map(|&old| g.members(old).iter().map(|&m| pos[m as usize]).collect()).collect();
    let names = order.iter().map(|&old| format!("renamed_{}", g.name(old))).collect();
    MembershipGraph::new(names, members).unwrap()
}

fn fixtures() -> Vec<(String, MembershipGraph)> {
    let mut out: Vec<(String, MembershipGraph)> = (1..=4).map(|n| (format!("V{n}"), build_v(n).unwrap())).collect();
    out.extend(hand_graphs().into_iter().map(|(n, g)| (n.to_string(), g)));
    out
}

#[test]
fn level_rank_agrees_with_recursive_rank() {
    for (name, g) in fixtures() {
        for a in 0..g.len() as u32 {
            // outside V_n a node may lie in no level at all
            match rank(&g, a, BUDGET) {
                Ok(r) => assert_eq!(r, naive_rank(&g, a), "{name}: {}", g.name(a)),
                Err(e) => assert!(!name.starts_with('V'), "{name}: {e}"),
            }
        }
        let ranks = g.set_ranks().unwrap();
        assert!((0..g.len() as u32).all(|a| ranks[a as usize] == naive_rank(&g, a)), "{name}");
    }
}

#[test]
fn v_n_has_n_linearly_ordered_levels() {
    for n in 1..=4 {
        let g = build_v(n).unwrap();
        let lv = levels(&g, BUDGET).unwrap();
        assert_eq!(lv.len(), n as usize);
        // each level holds every node of lower rank
        let mut sizes: Vec<usize> = lv.iter().map(|&s| g.members(s).len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, (0..n).map(|k| [0, 1, 2, 4, 16][k as usize]).collect::<Vec<usize>>());
        assert!(check_wellordering_of_levels(&g, BUDGET).unwrap().holds());
    }
    for (name, g) in hand_graphs() {
        assert!(check_wellordering_of_levels(&g, BUDGET).unwrap().holds(), "{name}");
    }
}

#[test]
fn collapse_of_fixtures_is_idempotent() {
    for (name, g) in fixtures() {
        let c = mostowski_collapse(&g).unwrap();
        assert_eq!(mostowski_collapse(&c.graph).unwrap().graph, c.graph, "{name}");
    }
}

#[test]
fn ill_founded_graphs_do_not_collapse() {
    let quine = MembershipGraph::new(vec!["b".into()], vec![vec![0]]).unwrap();
    assert!(mostowski_collapse(&quine).is_err());
    // two empty nodes: not extensional
    let twins = MembershipGraph::new(vec!["e".into(), "f".into()], vec![vec![], vec![]]).unwrap();
    assert!(mostowski_collapse(&twins).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn collapse_is_canonical(picks in prop::collection::vec(any::<u64>(), 0..24), key in any::<u64>()) {
        let g = hf_graph(&picks);
        let c = mostowski_collapse(&g).unwrap();
        prop_assert!(c.graph.is_extensional());
        prop_assert!(c.graph.is_well_founded());
        prop_assert!(c.graph.is_transitive());
        prop_assert_eq!(c.graph.len(), g.len());
        prop_assert_eq!(&mostowski_collapse(&c.graph).unwrap().graph, &c.graph);
        let p = permuted(&g, key);
        prop_assert_eq!(&mostowski_collapse(&p).unwrap().graph, &c.graph);
    }

    #[test]
    fn collapse_preserves_membership(picks in prop::collection::vec(any::<u64>(), 0..24)) {
        let g = hf_graph(&picks);
        let c = mostowski_collapse(&g).unwrap();
        for a in 0..g.len() as u32 {
            let want: BTreeSet<u32> = g.members(a).iter().map(|&m| c.map[m as usize]).collect();
            let got: BTreeSet<u32> = c.graph.members(c.map[a as usize]).iter().copied().collect();
            prop_assert_eq!(got, want);
            prop_assert_eq!(naive_rank(&c.graph, c.map[a as usize]), naive_rank(&g, a));
        }
    }

    #[test]
    fn levels_of_random_graphs_are_well_ordered(picks in prop::collection::vec(any::<u64>(), 0..10)) {
        let g = hf_graph(&picks);
        let lv = levels(&g, BUDGET).unwrap();
        // levels are the nodes holding every node of lower rank
        for &s in &lv {
            let r = naive_rank(&g, s);
            let below: BTreeSet<u32> = (0..g.len() as u32).filter(|&x| naive_rank(&g, x) < r).collect();
            let mine: BTreeSet<u32> = g.members(s).iter().copied().collect();
            prop_assert_eq!(mine, below);
        }
        prop_assert!(check_wellordering_of_levels(&g, BUDGET).unwrap().holds());
    }
}
