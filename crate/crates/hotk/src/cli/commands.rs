use std::io::Read;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use super::{
    BuildKind, Cli, Command, Companion, CorpusCommand, CorpusKind, Fail, FormulaInput, ModelCommand, ProveCommand,
    Report, SetTheoryArg, SetsCommand,
};
use crate::kernel::corpus::{self, FORMATION_CORPUS};
use crate::kernel::{
    alpha_normalize, check_formation, expand_abbreviations, free_vars, hol_lines, parse_formula, parse_hol,
    FormationVerdict, Formula, Theory,
};
use crate::models::{
    build_astruct_model, build_class_model_with, build_fjt_canonical, build_graph_model, build_pure_model,
    build_quine_model, build_sttd_companion, build_sttu_companion, check_axiom_suite, decide_fjt, describe_assignment,
    find_counterexample, Assignment, Model, ModelError,
};
use crate::proofkit::{check_proof, parse_proof, verify_fixture_suite};
use crate::settheory::{
    check_kappa_axioms_in_t, check_set_axioms, check_wellordering_of_levels, levels, mostowski_collapse,
    parse_set_corpus, parse_set_formula, t_construction, MembershipGraph, SetTheory, SEPARATION_CORPUS,
};
use crate::translate::{kappa_translate, roundtrip_check, MapName, TranslationMap};

fn read(path: &Path) -> Result<String, Fail> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Fail::Usage(format!("standard input: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn usage(e: impl std::fmt::Display) -> Fail {
    Fail::Usage(e.to_string())
}

fn theory(cli: &Cli) -> Result<Theory, Fail> {
    cli.global.theory.parse().map_err(Fail::Usage)
}

fn to_json(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn verdict(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn formulas(input: &FormulaInput) -> Result<Vec<Formula>, Fail> {
    let mut out = Vec::new();
    if let Some(p) = &input.file {
        out.extend(parse_hol(&read(p)?).map_err(usage)?);
    }
    for f in &input.formulas {
        out.push(parse_formula(f).map_err(usage)?);
    }
    if out.is_empty() {
        return Err(Fail::Usage("no formulas given".into()));
    }
    Ok(out)
}

fn load_model(p: &Path) -> Result<Model, Fail> {
    Model::from_json_str(&read(p)?).map_err(usage)
}

fn load_graph(p: &Path) -> Result<MembershipGraph, Fail> {
    MembershipGraph::from_json_str(&read(p)?).map_err(usage)
}

fn set_corpus(p: &Option<PathBuf>) -> Result<Vec<crate::settheory::SetFormula>, Fail> {
    let text = match p {
        Some(p) => read(p)?,
        None => SEPARATION_CORPUS.to_string(),
    };
    parse_set_corpus(&text).map_err(usage)
}

pub(super) fn dispatch(cli: &Cli) -> Result<Report, Fail> {
    let budget = cli.global.budget;
    match &cli.command {
        Command::Check(input) => check(&theory(cli)?, input),
        Command::Expand { input, normalize } => expand(&theory(cli)?, input, *normalize),
        Command::Translate { map, file, roundtrip } => translate(map, file, *roundtrip, budget),
        Command::Eval { model, formula } => eval(model, formula, budget),
        Command::Decide { height, formula } => decide(*height, formula),
        Command::Model(c) => model(cli, c, budget),
        Command::Sets(c) => sets(c, budget),
        Command::Prove(c) => prove(c),
        Command::Corpus(CorpusCommand::Run { kind, path }) => corpus_run(*kind, path.as_deref()),
    }
}

fn check(t: &Theory, input: &FormulaInput) -> Result<Report, Fail> {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for f in formulas(input)? {
        let v = check_formation(&f, t.regime);
        all &= v.is_well_formed();
        match &v {
            FormationVerdict::WellFormed => text.push_str(&format!("{f}: well-formed\n")),
            FormationVerdict::IllFormed(e) => text.push_str(&format!("{f}: ill-formed: {e}\n")),
        }
        let mut row = to_json(&v);
        row["formula"] = json!(f.to_string());
        row["theory"] = json!(t.to_string());
        rows.push(row);
    }
    Ok(Report { code: verdict(all), text, json: Value::Array(rows) })
}

fn expand(t: &Theory, input: &FormulaInput, normalize: bool) -> Result<Report, Fail> {
    let mut text = String::new();
    let mut rows = Vec::new();
    for f in formulas(input)? {
        let mut e = expand_abbreviations(&f, t.regime).map_err(|e| Fail::Negative(format!("`{f}`: {e}")))?;
        if normalize {
            e = alpha_normalize(&e);
        }
        text.push_str(&format!("{e}\n"));
        rows.push(json!({ "input": f.to_string(), "expanded": e.to_string() }));
    }
    Ok(Report { code: 0, text, json: Value::Array(rows) })
}

fn translate(map: &str, file: &Path, roundtrip: bool, budget: usize) -> Result<Report, Fail> {
    let map: TranslationMap = map.parse().map_err(Fail::Usage)?;
    let src = read(file)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut code = 0;
    for (line, l) in hol_lines(&src) {
        if let MapName::KappaTranslate(k) = map.name {
            if roundtrip {
                return Err(Fail::Usage("the kappa-translation has no inverse".into()));
            }
            let f = parse_set_formula(l).map_err(|e| Fail::Usage(format!("line {line}: {e}")))?;
            let out = kappa_translate(&f, k);
            text.push_str(&format!("{out}\n"));
            rows.push(json!({ "input": f.to_string(), "output": out.to_string() }));
            continue;
        }
        let f = parse_formula(l).map_err(|e| Fail::Usage(format!("line {line}: {e}")))?;
        if roundtrip {
            let r = roundtrip_check(&f, map, budget)?;
            if !r.semantic {
                code = 1;
            }
            text.push_str(&format!(
                "{} => {} => {} [syntactic: {}, semantic: {}]\n",
                r.input, r.image, r.round_trip, r.syntactic, r.semantic
            ));
            rows.push(to_json(&r));
        } else {
            let out = map.apply(&f)?;
            text.push_str(&format!("{out}\n"));
            rows.push(json!({ "input": f.to_string(), "output": out.to_string() }));
        }
    }
    Ok(Report { code, text, json: json!({ "map": map.to_string(), "results": rows }) })
}

fn eval(model: &Path, formula: &str, budget: usize) -> Result<Report, Fail> {
    let m = load_model(model)?;
    let f = parse_formula(formula).map_err(usage)?;
    let open: Vec<_> = free_vars(&f).into_iter().filter(|s| m.constant(s).is_none()).collect();
    let closed = Formula::forall_many(open, f.clone());
    let cex = find_counterexample(&m, &closed, &Assignment::new(), budget).map_err(ModelError::from)?;
    let holds = cex.is_none();
    let witness = cex.map(|a| describe_assignment(&m, &a));
    let mut text = format!("{holds}\n");
    if let Some(w) = &witness {
        text.push_str(&format!("counterexample: {w}\n"));
    }
    Ok(Report {
        code: verdict(holds),
        text,
        json: json!({ "formula": f.to_string(), "holds": holds, "counterexample": witness }),
    })
}

fn decide(height: u32, formula: &str) -> Result<Report, Fail> {
    let f = parse_formula(formula).map_err(usage)?;
    let v = decide_fjt(&f, height)?;
    Ok(Report {
        code: verdict(v),
        text: format!("{v}\n"),
        json: json!({ "formula": f.to_string(), "height": height, "value": v }),
    })
}

fn model(cli: &Cli, c: &ModelCommand, budget: usize) -> Result<Report, Fail> {
    match c {
        ModelCommand::Build { kind, height, urelements, graph, companion } => {
            let mut m = match kind {
                BuildKind::Class => build_class_model_with(*urelements, *height, budget)?,
                BuildKind::Pure => build_pure_model(*height)?,
                BuildKind::Fjt => build_fjt_canonical(*height)?,
                BuildKind::Astruct => build_astruct_model(*height)?,
                BuildKind::Quine => build_quine_model(*height)?,
                BuildKind::Graph => {
                    let p = graph.as_ref().ok_or_else(|| Fail::Usage("--kind graph needs --graph <file>".into()))?;
                    let g = load_graph(p)?;
                    let rho = match g.rank_labels() {
                        Some(r) => r.to_vec(),
                        None => g
                            .set_ranks()
                            .ok_or_else(|| Fail::Usage("the graph has no rank labels and is ill-founded".into()))?,
                    };
                    build_graph_model(&g, &rho, *height)?
                }
            };
            m = match companion {
                Some(Companion::Sttu) => build_sttu_companion(&m)?,
                Some(Companion::Sttd) => build_sttd_companion(&m)?,
                None => m,
            };
            let text = m.to_json_string() + "\n";
            Ok(Report { code: 0, json: to_json(&m.to_json()), text })
        }
        ModelCommand::Check { model, max_type } => {
            let m = load_model(model)?;
            let r = check_axiom_suite(&m, theory(cli)?, *max_type, budget)?;
            Ok(Report { code: verdict(r.all_pass()), text: r.render_text(), json: to_json(&r) })
        }
    }
}

fn sets(c: &SetsCommand, budget: usize) -> Result<Report, Fail> {
    match c {
        SetsCommand::BuildV { n } => {
            let g = crate::settheory::build_v_with(*n, budget)?;
            Ok(Report { code: 0, text: g.to_json_string() + "\n", json: to_json(&g.to_json()) })
        }
        SetsCommand::Check { which, graph, corpus } => {
            let g = load_graph(graph)?;
            let which = match which {
                SetTheoryArg::Lt => SetTheory::Lt,
                SetTheoryArg::Zr => SetTheory::Zr,
            };
            let r = check_set_axioms(&g, which, &set_corpus(corpus)?, budget)?;
            Ok(Report { code: verdict(r.all_pass()), text: r.render_text(), json: to_json(&r) })
        }
        SetsCommand::Levels { graph } => {
            let g = load_graph(graph)?;
            let lv = levels(&g, budget)?;
            let r = check_wellordering_of_levels(&g, budget)?;
            let names: Vec<&str> = lv.iter().map(|&l| g.name(l)).collect();
            let text = format!(
                "levels: {}\nwell-ordered by membership: {}\n",
                if names.is_empty() { "(none)".to_string() } else { names.join(" < ") },
                r.holds()
            );
            Ok(Report { code: verdict(r.holds()), text, json: to_json(&r) })
        }
        SetsCommand::Collapse { graph } => {
            let g = load_graph(graph)?;
            let c = mostowski_collapse(&g)?;
            let mut text = String::new();
            for (from, to) in c.renaming(&g) {
                text.push_str(&format!("{from} -> {to}\n"));
            }
            Ok(Report { code: 0, text, json: to_json(&c) })
        }
        SetsCommand::TModel { graph } => {
            let m = t_construction(&load_graph(graph)?)?;
            Ok(Report { code: 0, text: m.to_json_string() + "\n", json: to_json(&m.to_json()) })
        }
        SetsCommand::KappaCheck { kappa, graph, corpus } => {
            let g = load_graph(graph)?;
            let r = check_kappa_axioms_in_t(&g, *kappa, &set_corpus(corpus)?, budget)?;
            Ok(Report { code: verdict(r.all_pass()), text: r.render_text(), json: to_json(&r) })
        }
    }
}

fn prove(c: &ProveCommand) -> Result<Report, Fail> {
    match c {
        ProveCommand::Check { proof } => {
            let p = parse_proof(&read(proof)?).map_err(usage)?;
            let v = check_proof(&p);
            Ok(Report { code: verdict(v.is_accepted()), text: format!("{v}\n"), json: to_json(&v) })
        }
        ProveCommand::Fixtures => {
            let r = verify_fixture_suite().map_err(usage)?;
            Ok(Report { code: verdict(r.all_as_expected()), text: r.render_text(), json: to_json(&r) })
        }
    }
}

fn corpus_run(kind: CorpusKind, path: Option<&Path>) -> Result<Report, Fail> {
    match kind {
        CorpusKind::Formation => {
            let text = match path {
                Some(p) => read(p)?,
                None => FORMATION_CORPUS.to_string(),
            };
            let cases = corpus::parse_formation_corpus(&text).map_err(usage)?;
            let rows = corpus::run_formation_matrix(&cases);
            let bad = rows.iter().filter(|r| !r.matches()).count();
            let mut out = format!("# {}\n", corpus::MATRIX_THEORIES.join(" "));
            for r in &rows {
                let mark = if r.matches() { "ok  " } else { "FAIL" };
                out.push_str(&format!("{mark} {} {}", r.got, r.formula));
                if !r.matches() {
                    out.push_str(&format!("  (expected {})", r.expected));
                }
                out.push('\n');
            }
            out.push_str(&format!("{} of {} rows match\n", rows.len() - bad, rows.len()));
            Ok(Report {
                code: verdict(bad == 0),
                text: out,
                json: json!({ "theories": corpus::MATRIX_THEORIES, "rows": rows }),
            })
        }
        CorpusKind::Expansion => {
            let goldens = match path {
                None => corpus::bundled_goldens().map_err(usage)?,
                Some(dir) => {
                    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
                        .map_err(|e| Fail::Usage(format!("{}: {e}", dir.display())))?
                        .filter_map(|e| e.ok().map(|e| e.path()))
                        .filter(|p| p.extension().is_some_and(|x| x == "golden"))
                        .collect();
                    files.sort();
                    files
                        .iter()
                        .map(|p| {
                            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                            corpus::parse_golden(&name, &read(p)?).map_err(usage)
                        })
                        .collect::<Result<Vec<_>, Fail>>()?
                }
            };
            let mut results = Vec::new();
            for g in &goldens {
                results.push(corpus::check_golden(g).map_err(|e| Fail::Negative(format!("{}: {e}", g.name)))?);
            }
            let bad = results.iter().filter(|r| !r.matches()).count();
            let mut out = String::new();
            for r in &results {
                if r.matches() {
                    out.push_str(&format!("ok   {}\n", r.name));
                } else {
                    out.push_str(&format!("FAIL {}\n  got  {}\n  want {}\n", r.name, r.got, r.want));
                }
            }
            out.push_str(&format!("{} of {} goldens match\n", results.len() - bad, results.len()));
            Ok(Report { code: verdict(bad == 0), text: out, json: json!({ "results": results }) })
        }
    }
}
