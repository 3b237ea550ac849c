//! Build V_4, pass to the type model T(V_4), evaluate the translated axioms,
//! and come back through the S construction.

use hotk::settheory::{
    build_v, check_kappa_axioms_in_t, mostowski_collapse, parse_set_corpus, rank_slice, round_trip_kappas,
    s_construction, standardness_transport, t_construction, SEPARATION_CORPUS,
};

fn main() {
    let g = build_v(4).unwrap();
    let corpus = parse_set_corpus(SEPARATION_CORPUS).unwrap();
    print!("{}", check_kappa_axioms_in_t(&g, 1, &corpus, 1 << 22).unwrap().render_text());

    let t = t_construction(&g).unwrap();
    for k in round_trip_kappas(&g).unwrap() {
        let back = mostowski_collapse(&s_construction(&t, k).unwrap()).unwrap();
        let slice = mostowski_collapse(&rank_slice(&g, k).unwrap()).unwrap();
        println!("kappa {k}: {} nodes, matches rank slice: {}", back.graph.len(), back.graph == slice.graph);
    }
    println!("{:?}", standardness_transport(&g, 1 << 20).unwrap());
}
