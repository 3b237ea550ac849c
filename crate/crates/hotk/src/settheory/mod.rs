/*!
Membership graphs as models of the untyped set language: levels, ranks, the
`T` and `S` constructions between graphs and cumulative typed models, the
collapse, standardness, and the LT/Zr axioms.

```
use hotk::settheory::{build_v, levels, mostowski_collapse};

let v3 = build_v(3).unwrap();
assert_eq!(levels(&v3, 1 << 16).unwrap().len(), 3);
assert_eq!(mostowski_collapse(&v3).unwrap().graph, v3);
```
*/

mod checks;
mod construct;
mod fixtures;
mod formula;
mod graph;
mod levels;

/// The bundled Separation corpus: one formula per line in the separated
/// variable `x`, with other free variables as parameters.
pub const SEPARATION_CORPUS: &str = include_str!("../../data/corpus/separation.set");

pub use checks::{check_kappa_axioms_in_t, check_set_axioms, SetTheory, SEPARATED};
pub use construct::{
    indiscernible_pair, is_standard, mostowski_collapse, rank_slice, round_trip_holds, round_trip_kappas,
    s_construction, standardness_gap, standardness_transport, t_construction, t_shunt, Collapse, Transport,
};
pub use fixtures::{astruct_graph, build_v, build_v_with, hand_graphs, nonstandard_v4, quine_graph, V_CAP};
pub use formula::{axioms, eval_in_graph, parse_set_corpus, parse_set_formula, SetFormula};
pub use graph::{GraphJson, MembershipGraph};
pub use levels::{check_wellordering_of_levels, is_history, is_level, levels, rank, WellOrderReport};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("budget exceeded: {needed} > {budget}")]
    Budget { needed: u128, budget: usize },
    #[error("not well-founded: cycle through {}", cycle.join(" -> "))]
    IllFounded { cycle: Vec<String> },
    #[error("not extensional: `{}` and `{}` have the same members", pair.0, pair.1)]
    NonExtensional { pair: (String, String) },
    #[error("`{0}` lies in no level")]
    RankUndefined(String),
    #[error("{0}")]
    Bound(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
}
