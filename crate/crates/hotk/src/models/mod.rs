/*!
Finite typed structures: canonical builders, evaluation, axiom-suite
checking, the FJT decision procedure and the domain predicates.

```
use hotk::kernel::parse_formula;
use hotk::models::{build_pure_model, eval, Assignment};

let m = build_pure_model(3).unwrap();
let purity = parse_formula("all x^0. all y^0. x^0 = y^0").unwrap();
assert!(eval(&m, &purity, &Assignment::new()).unwrap());
```
*/

mod build;
mod domains;
mod eval;
mod model;
mod report;
mod suite;
pub(crate) mod tower;

pub use build::{
    build_astruct_model, build_class_model, build_class_model_with, build_fjt_canonical, build_graph_model,
    build_pure_model, build_quine_model, build_sttd_companion, build_sttu_companion, count_entities, fjt_count,
    DEFAULT_BUDGET, FJT_HEIGHT_CAP, PURE_HEIGHT_CAP,
};
pub use domains::{decide_fjt, domain_symbol, exactly_n, gen_domain_formula, DomainKind};
pub use eval::{
    assignments, describe_assignment, eval, eval_expanded, find_counterexample, find_counterexample_with, open_symbols,
    Assignment, EvalError, Evaluator,
};
pub use model::{Entity, Meta, Model, ModelJson, ModelKind};
pub use report::{AxiomCheck, SuiteReport, Verdict};
pub use suite::{check_axiom_suite, is_standard_model, standardness_witness};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("height {requested} exceeds the cap of {cap}")]
    HeightCap { requested: u32, cap: u32 },
    #[error("budget exceeded: {needed} > {budget}")]
    Budget { needed: u128, budget: usize },
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("{0}")]
    WrongInput(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl ModelError {
    pub fn is_budget(&self) -> bool {
        matches!(self, ModelError::Budget { .. } | ModelError::Eval(EvalError::Budget { .. }))
    }
}
