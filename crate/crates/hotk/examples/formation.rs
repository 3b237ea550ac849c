//! Check a few formulas under every regime and expand the defined notation.

use hotk::kernel::{check_formation, expand_abbreviations, parse_formula, Theory};

fn main() {
    let theories: Vec<Theory> =
        ["stt", "sttu", "sttd", "ctt", "ctt-liberal", "fjt"].iter().map(|t| t.parse().unwrap()).collect();
    for src in ["b^1(a^0)", "c^2(a^0)", "b^0(a^2)", "x^0 = y^1", "a^0 in b^0", "e^4 dn d^3"] {
        let f = parse_formula(src).unwrap();
        let marks: Vec<String> = theories
            .iter()
            .map(|t| format!("{}:{}", t, if check_formation(&f, t.regime).is_well_formed() { "ok" } else { "--" }))
            .collect();
        println!("{src:<12} {}", marks.join("  "));
    }

    let ctt = "ctt".parse::<Theory>().unwrap().regime;
    for src in ["a^0 eq b^1", "a^0 in b^0"] {
        let e = expand_abbreviations(&parse_formula(src).unwrap(), ctt).unwrap();
        println!("{src}  ==>  {e}");
    }
}
