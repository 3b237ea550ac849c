/*!
Abstract syntax, ordinal type indices, parsing and printing, formation
checking for the six regimes, and expansion of defined notation.

```
use hotk::kernel::{check_formation, parse_formula, Regime};

let f = parse_formula("c^2(a^0)").unwrap();
assert!(!check_formation(&f, Regime::Stt).is_well_formed());
assert!(check_formation(&f, Regime::ctt()).is_well_formed());
```
*/

pub mod corpus;
mod expand;
mod formation;
mod index;
mod parse;
mod regime;
mod subst;
mod syntax;

pub use expand::{
    defs, eliminate_descriptions, expand_abbreviations, expand_all, expand_with, required_height, ExpandOpts,
};
pub use formation::{check, check_formation, FormationError, FormationVerdict};
pub use index::{parse_index, TypeIndex};
pub use parse::{bound_symbols, hol_lines, parse_formula, parse_hol, parse_symbol, parse_term};
pub(crate) use parse::{Cursor, Tok};
pub use regime::{Overlay, Regime, Theory};
pub use subst::{
    all_names, alpha_eq, alpha_normalize, free_vars, map_atom_terms, occurs_free, replace_in_term, subst, substitute,
    Discipline, Fresh,
};
pub use syntax::{BoundRel, Formula, Quant, Sugar, Symbol, Term};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("ill-formed: {0}")]
    Formation(FormationError),
    #[error("cannot substitute `{term}` for `{var}`: type mismatch")]
    SubstitutionType { var: String, term: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl From<FormationError> for KernelError {
    fn from(e: FormationError) -> Self {
        KernelError::Formation(e)
    }
}
