use std::path::PathBuf;
use std::process::Command;

use hotk::cli::{run, Outcome};
use hotk::kernel::{free_vars, parse_formula, Formula, Theory};
use hotk::models::{
    build_fjt_canonical, build_pure_model, check_axiom_suite, exactly_n, find_counterexample, Assignment, Model,
    DEFAULT_BUDGET,
};

fn hotk(args: &[&str]) -> Outcome {
    run(std::iter::once("hotk").chain(args.iter().copied()))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hotk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn exit_codes() {
    let ill = hotk(&["check", "--theory", "stt", "c^2(a^0)"]);
    assert_eq!(ill.code, 1);
    assert!(ill.stdout.contains("application gap 2 ≠ 1"), "{}", ill.stdout);
    assert_eq!(hotk(&["check", "--theory", "ctt", "c^2(a^0)"]).code, 0);
    assert_eq!(hotk(&["check", "c^2(a^0"]).code, 2);
    assert_eq!(hotk(&["frobnicate"]).code, 2);
    assert_eq!(hotk(&["check", "--theory", "nonsense", "a^1(b^0)"]).code, 2);
    assert_eq!(hotk(&["--budget", "10", "sets", "build-v", "4"]).code, 3);
    let decide = hotk(&["decide", "--height", "2", &exactly_n(2, 8).to_string()]);
    assert_eq!((decide.code, decide.stdout.trim()), (0, "true"));
    let decide = hotk(&["decide", "--height", "2", &exactly_n(2, 7).to_string()]);
    assert_eq!((decide.code, decide.stdout.trim()), (1, "false"));
    let fixtures = hotk(&["prove", "fixtures"]);
    assert_eq!(fixtures.code, 0, "{}", fixtures.stdout);
    assert_eq!(hotk(&["corpus", "run", "formation"]).code, 0);
    assert_eq!(hotk(&["corpus", "run", "expansion"]).code, 0);
    assert_eq!(hotk(&["--help"]).code, 0);
}

#[test]
fn the_binary_reads_the_budget_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hotk"))
        .args(["sets", "build-v", "4"])
        .env("HOTK_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_hotk")).args(["sets", "build-v", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stdout.is_empty());
}

#[test]
fn built_models_check_and_evaluate_like_the_library() {
    let built = hotk(&["model", "build", "--kind", "pure", "--height", "3"]);
    assert_eq!(built.code, 0);
    let path = scratch("pure3.json", &built.stdout);
    let m = build_pure_model(3).unwrap();
    assert_eq!(Model::from_json_str(&built.stdout).unwrap().to_json_string(), m.to_json_string());

    let p = path.to_str().unwrap();
    let out = hotk(&["--format", "json", "--theory", "ctt", "model", "check", p, "--max-type", "1"]);
    let got: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let ctt: Theory = "ctt".parse().unwrap();
    let want = serde_json::to_value(check_axiom_suite(&m, ctt, 1, DEFAULT_BUDGET).unwrap()).unwrap();
    assert_eq!(got, want);

    for (src, expect) in [("all x^0. some y^1. x^0 eq y^1", true), ("c^1(a^0)", false), ("U^1(a^0)", true)] {
        let out = hotk(&["--format", "json", "eval", "--model", p, src]);
        let got: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        let f = parse_formula(src).unwrap();
        let open: Vec<_> = free_vars(&f).into_iter().filter(|s| m.constant(s).is_none()).collect();
        let lib = find_counterexample(&m, &Formula::forall_many(open, f), &Assignment::new(), DEFAULT_BUDGET)
            .unwrap()
            .is_none();
        assert_eq!(lib, expect, "{src}");
        assert_eq!(got["holds"], serde_json::Value::Bool(lib), "{src}");
        assert_eq!(out.code, if lib { 0 } else { 1 });
    }
}

#[test]
fn fjt_model_round_trips_through_files() {
    let built = hotk(&["model", "build", "--kind", "fjt", "--height", "3"]);
    let m = build_fjt_canonical(3).unwrap();
    assert_eq!(Model::from_json_str(&built.stdout).unwrap().to_json_string(), m.to_json_string());
    let p = scratch("fjt3.json", &built.stdout);
    let out = hotk(&["eval", "--model", p.to_str().unwrap(), "~(all x^1. H^2(x^1))"]);
    assert_eq!((out.code, out.stdout.trim()), (0, "true"));
}

#[test]
fn identical_invocations_print_identical_bytes() {
    let commands: [&[&str]; 6] = [
        &["model", "build", "--kind", "fjt", "--height", "3"],
        &["model", "build", "--kind", "class", "--height", "3", "--urelements", "2"],
        &["sets", "build-v", "3"],
        &["--format", "json", "prove", "fixtures"],
        &["--format", "json", "corpus", "run", "formation"],
        &["--format", "json", "expand", "a^1 in b^0", "c^0 eq d^2"],
    ];
    for args in commands {
        let a = hotk(args);
        let b = hotk(args);
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
    }
}
