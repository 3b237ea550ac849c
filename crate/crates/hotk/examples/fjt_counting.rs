//! Count the entities of the canonical FJT model and decide a few sentences.

use hotk::kernel::parse_formula;
use hotk::models::{build_fjt_canonical, count_entities, decide_fjt, exactly_n};

fn main() {
    let m = build_fjt_canonical(4).unwrap();
    for n in 0..4 {
        println!("type {n}: {} entities", count_entities(&m, n));
    }
    println!("exactly 8 type-2 entities: {}", decide_fjt(&exactly_n(2, 8), 2).unwrap());
    let s = parse_formula("all x^1. some z^2. z^2(x^1) & (all y^0. ~z^2(y^0))").unwrap();
    println!("{s}: {}", decide_fjt(&s, 2).unwrap());
}
