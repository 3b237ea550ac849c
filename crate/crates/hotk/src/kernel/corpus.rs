//! Bundled formula corpora: a formation matrix over the six regimes and
//! expansion goldens.

use serde::Serialize;

use super::{
    alpha_normalize, check_formation, expand_abbreviations, hol_lines, parse_formula, Formula, KernelError, Theory,
};

/// Column order of the formation matrix.
pub const MATRIX_THEORIES: [&str; 6] = ["stt", "sttu", "sttd", "ctt", "ctt-liberal", "fjt"];

pub const FORMATION_CORPUS: &str = include_str!("../../data/corpus/formation.hol");

macro_rules! goldens {
    ($($name:literal),* $(,)?) => {
        pub const GOLDENS: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../../data/goldens/", $name, ".golden")))),*
        ];
    };
}

goldens!(
    "01_eq_0_1",
    "02_eq_1_0",
    "03_eq_2_2_stt",
    "04_eq_0_3",
    "05_eq_w_3",
    "06_eq_w1_w",
    "07_in_0_0",
    "08_in_1_0",
    "09_in_0_2",
    "10_in_at_bound",
    "11_in_w_w",
    "12_in_fjt",
    "13_bounded_eq",
    "14_bounded_in",
    "15_nested",
    "16_negated",
    "17_coext",
    "18_coext_2",
    "19_downeq_1",
    "20_downeq_2",
);

#[derive(Clone, Debug, PartialEq)]
pub struct FormationCase {
    pub formula: Formula,
    /// Expected well-formedness, in [`MATRIX_THEORIES`] order.
    pub expected: [bool; 6],
}

/// Lines of the form `+-+--+  <formula>`.
pub fn parse_formation_corpus(text: &str) -> Result<Vec<FormationCase>, KernelError> {
    hol_lines(text)
        .map(|(line, l)| {
            let bad = |msg: &str| KernelError::Parse { pos: 0, msg: format!("line {line}: {msg}") };
            let (flags, rest) =
                l.split_once(char::is_whitespace).ok_or_else(|| bad("expected `<verdicts> <formula>`"))?;
            if flags.len() != 6 || !flags.chars().all(|c| c == '+' || c == '-') {
                return Err(bad("verdicts are six `+` or `-` marks"));
            }
            let mut expected = [false; 6];
            for (slot, c) in expected.iter_mut().zip(flags.chars()) {
                *slot = c == '+';
            }
            let formula = parse_formula(rest.trim()).map_err(|e| match e {
                KernelError::Parse { pos, msg } => KernelError::Parse { pos, msg: format!("line {line}: {msg}") },
                e => e,
            })?;
            Ok(FormationCase { formula, expected })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormationRow {
    pub formula: String,
    pub expected: String,
    pub got: String,
}

impl FormationRow {
    pub fn matches(&self) -> bool {
        self.expected == self.got
    }
}

fn marks(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '+' } else { '-' }).collect()
}

pub fn run_formation_matrix(cases: &[FormationCase]) -> Vec<FormationRow> {
    let theories: Vec<Theory> = MATRIX_THEORIES.iter().map(|t| t.parse().expect("known theory")).collect();
    cases
        .iter()
        .map(|c| {
            let got: Vec<bool> =
                theories.iter().map(|t| check_formation(&c.formula, t.regime).is_well_formed()).collect();
            FormationRow { formula: c.formula.to_string(), expected: marks(&c.expected), got: marks(&got) }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Golden {
    pub name: String,
    pub theory: Theory,
    pub input: Formula,
    pub expect: Formula,
}

/// A golden file has `regime:`, `input:` and `expect:` lines.
pub fn parse_golden(name: &str, text: &str) -> Result<Golden, KernelError> {
    let field = |key: &str| {
        hol_lines(text)
            .find_map(|(_, l)| l.strip_prefix(key).map(str::trim))
            .ok_or_else(|| KernelError::Parse { pos: 0, msg: format!("{name}: missing `{key}` line") })
    };
    let theory = field("regime:")?
        .parse::<Theory>()
        .map_err(|msg| KernelError::Parse { pos: 0, msg: format!("{name}: {msg}") })?;
    Ok(Golden {
        name: name.to_string(),
        theory,
        input: parse_formula(field("input:")?)?,
        expect: parse_formula(field("expect:")?)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenResult {
    pub name: String,
    pub got: String,
    pub want: String,
}

impl GoldenResult {
    pub fn matches(&self) -> bool {
        self.got == self.want
    }
}

/// Expand the input and compare both sides as printed after alpha-normalization.
pub fn check_golden(g: &Golden) -> Result<GoldenResult, KernelError> {
    let got = expand_abbreviations(&g.input, g.theory.regime).map_err(KernelError::Formation)?;
    Ok(GoldenResult {
        name: g.name.clone(),
        got: alpha_normalize(&got).to_string(),
        want: alpha_normalize(&g.expect).to_string(),
    })
}

pub fn bundled_goldens() -> Result<Vec<Golden>, KernelError> {
    GOLDENS.iter().map(|(n, t)| parse_golden(n, t)).collect()
}
