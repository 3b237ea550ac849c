/*!
The `hotk` command line.

Exit codes: 0 for success or a positive verdict, 1 for a negative verdict
(ill-formed, axiom FAIL, proof rejected, false sentence), 2 for usage and
parse errors, 3 when an enumeration exceeds the budget.

```
let out = hotk::cli::run(["hotk", "check", "--theory", "stt", "c^2(a^0)"]);
assert_eq!(out.code, 1);
assert!(out.stdout.contains("application gap 2 ≠ 1"));
```
*/

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::models::{ModelError, DEFAULT_BUDGET};
use crate::settheory::SetError;
use crate::translate::TranslateError;

#[derive(Parser, Debug)]
#[command(name = "hotk", version, about = "Typed higher-order logic workbench")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// stt, sttu, sttd, fjt, ctt[:idx], ctt-liberal[:idx] or pctt[:idx].
    #[arg(long, global = true, default_value = "ctt")]
    pub theory: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest domain, subset family or assignment space to enumerate.
    #[arg(long, global = true, env = "HOTK_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check formation of formulas under --theory.
    Check(FormulaInput),
    /// Expand defined notation into primitive syntax.
    Expand {
        #[command(flatten)]
        input: FormulaInput,
        /// Print with canonical bound-variable names.
        #[arg(long)]
        normalize: bool,
    },
    /// Translate formulas line by line.
    Translate {
        /// kappa:<idx>, i-ctt-sttu, j-sttu-ctt, i-fjt-sttd or j-sttd-fjt.
        #[arg(long)]
        map: String,
        /// A .hol file, or `-` for standard input.
        file: PathBuf,
        /// Also run the round trip through the inverse map.
        #[arg(long)]
        roundtrip: bool,
    },
    /// Evaluate a formula in a model file; free variables are read universally.
    Eval {
        #[arg(long)]
        model: PathBuf,
        formula: String,
    },
    /// Decide an FJT sentence in the canonical model.
    Decide {
        #[arg(long)]
        height: u32,
        formula: String,
    },
    #[command(subcommand)]
    Model(ModelCommand),
    #[command(subcommand)]
    Sets(SetsCommand),
    #[command(subcommand)]
    Prove(ProveCommand),
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Args, Debug)]
pub struct FormulaInput {
    pub formulas: Vec<String>,
    /// Read formulas from a .hol file, one per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildKind {
    Class,
    Pure,
    Fjt,
    Graph,
    Astruct,
    Quine,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Companion {
    Sttu,
    Sttd,
}

#[derive(Subcommand, Debug)]
pub enum ModelCommand {
    /// Build a finite model and print it as JSON.
    Build {
        #[arg(long, value_enum)]
        kind: BuildKind,
        #[arg(long, default_value_t = 3)]
        height: u32,
        /// Type-0 urelements, for class models.
        #[arg(long, default_value_t = 1)]
        urelements: u32,
        /// Membership graph file, for graph models.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum)]
        companion: Option<Companion>,
    },
    /// Check the axioms of --theory in a model file.
    Check {
        model: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_type: u32,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetTheoryArg {
    Lt,
    Zr,
}

#[derive(Subcommand, Debug)]
pub enum SetsCommand {
    /// Print V_n as a membership graph.
    BuildV { n: u32 },
    /// Check LT or Zr in a membership graph.
    Check {
        #[arg(value_enum)]
        which: SetTheoryArg,
        graph: PathBuf,
        /// Separation corpus; the bundled one by default.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// List the levels and check that they are well-ordered.
    Levels { graph: PathBuf },
    /// Mostowski collapse of a well-founded extensional graph.
    Collapse { graph: PathBuf },
    /// The cumulative type model T(A), as JSON.
    TModel { graph: PathBuf },
    /// Evaluate the kappa-translated axioms in T(A).
    KappaCheck {
        #[arg(long)]
        kappa: u32,
        graph: PathBuf,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ProveCommand {
    /// Check a proof file.
    Check { proof: PathBuf },
    /// Check every bundled proof against its expected verdict.
    Fixtures,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusKind {
    /// The formation matrix over six regimes.
    Formation,
    /// The expansion goldens.
    Expansion,
}

#[derive(Subcommand, Debug)]
pub enum CorpusCommand {
    /// Run a corpus and compare against its recorded verdicts.
    Run {
        #[arg(value_enum)]
        kind: CorpusKind,
        /// A corpus file, or for expansion a directory of .golden files.
        path: Option<PathBuf>,
    },
}

/// Exit code, standard output and standard error of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub(crate) enum Fail {
    Usage(String),
    Negative(String),
    Budget(String),
}

impl Fail {
    fn code(&self) -> i32 {
        match self {
            Fail::Negative(_) => 1,
            Fail::Usage(_) => 2,
            Fail::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Fail::Usage(m) | Fail::Negative(m) | Fail::Budget(m) => m,
        }
    }
}

impl From<ModelError> for Fail {
    fn from(e: ModelError) -> Self {
        if e.is_budget() {
            Fail::Budget(e.to_string())
        } else {
            Fail::Usage(e.to_string())
        }
    }
}

impl From<SetError> for Fail {
    fn from(e: SetError) -> Self {
        match e {
            SetError::Budget { .. } => Fail::Budget(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

impl From<TranslateError> for Fail {
    fn from(e: TranslateError) -> Self {
        match e {
            TranslateError::Model(m) => m.into(),
            TranslateError::Formation(_) | TranslateError::Unsupported(_) | TranslateError::Bound(_) => {
                Fail::Negative(e.to_string())
            }
            _ => Fail::Usage(e.to_string()),
        }
    }
}

/// What a command produced: its exit code and both renderings.
pub(crate) struct Report {
    pub code: i32,
    pub text: String,
    pub json: serde_json::Value,
}

/// Run the command line `argv` (program name first).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.global.format;
    match commands::dispatch(&cli) {
        Ok(r) => {
            let stdout = match format {
                Format::Text => r.text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&r.json).expect("reports serialize");
                    s.push('\n');
                    s
                }
            };
            Outcome { code: r.code, stdout, stderr: String::new() }
        }
        Err(f) => Outcome { code: f.code(), stdout: String::new(), stderr: format!("error: {}\n", f.message()) },
    }
}

/// Run with the process arguments, print the output, and return the exit code.
pub fn main_from_env() -> i32 {
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
