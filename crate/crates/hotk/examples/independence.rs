//! The two independence structures against the CTT axioms.

use hotk::kernel::Theory;
use hotk::models::{build_astruct_model, build_quine_model, check_axiom_suite};

fn main() {
    let ctt: Theory = "ctt".parse().unwrap();
    for m in [build_astruct_model(4).unwrap(), build_quine_model(4).unwrap()] {
        print!("{}", check_axiom_suite(&m, ctt, 2, 1 << 20).unwrap().render_text());
    }
}
