//! Push formulas through the interpretations and check the round trips.

use hotk::kernel::parse_formula;
use hotk::kernel::TypeIndex;
use hotk::settheory::parse_set_formula;
use hotk::translate::{kappa_translate, roundtrip_check, TranslationMap};

fn main() {
    let ext = parse_set_formula("all a. all b. (all x. x in a <-> x in b) -> a = b").unwrap();
    println!("kappa=2: {}", kappa_translate(&ext, TypeIndex::fin(2)));

    for (map, src) in [("i-ctt-sttu", "y^3(x^0)"), ("i-fjt-sttd", "y^3(x^0)"), ("j-sttd-fjt", "y^2 dn x^1")] {
        let map: TranslationMap = map.parse().unwrap();
        let r = roundtrip_check(&parse_formula(src).unwrap(), map, 1 << 22).unwrap();
        println!("{map}: {} -> {}", r.input, r.image);
        println!("  back: {}", r.round_trip);
        println!("  syntactic {}, semantic {} in {}", r.syntactic, r.semantic, r.model);
    }
}
