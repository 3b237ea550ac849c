//! Check the bundled proofs and one written inline.

use hotk::proofkit::{check_proof, parse_proof, verify_fixture_suite};

const SWAP: &str = r#"{
  "theory": "stt",
  "steps": [
    {"n": 1, "formula": "p^1(a^0) & q^1(a^0)", "rule": "assume"},
    {"n": 2, "formula": "q^1(a^0)", "rule": "and-e", "premises": [1]},
    {"n": 3, "formula": "p^1(a^0)", "rule": "and-e", "premises": [1]},
    {"n": 4, "formula": "q^1(a^0) & p^1(a^0)", "rule": "and-i", "premises": [2, 3]},
    {"n": 5, "formula": "p^1(a^0) & q^1(a^0) -> q^1(a^0) & p^1(a^0)", "rule": "implies-i", "premises": [4], "discharge": [1]}
  ]
}"#;

fn main() {
    print!("{}", verify_fixture_suite().unwrap().render_text());
    println!("swap: {}", check_proof(&parse_proof(SWAP).unwrap()));
}
