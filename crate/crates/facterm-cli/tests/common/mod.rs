//! Shared by the golden, fuzz and acceptance suites.
#![allow(dead_code)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use serde::Deserialize;
use serde_json::{json, Value};

use facterm_cli::{run_with, Bounds};

#[derive(Deserialize)]
struct Case {
    name: String,
    args: Vec<String>,
    #[serde(default)]
    stdin: String,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn execute(case: &Case) -> String {
    let inputs = golden_dir().join("inputs");
    let mut argv = vec!["facterm".to_string()];
    argv.extend(case.args.iter().map(|a| a.replace("{inputs}", inputs.to_str().unwrap())));
    let (code, out) = run_with(Bounds::default(), argv, &mut case.stdin.as_bytes());
    // Paths in messages would tie the files to one checkout.
    format!("exit {code}\n{}", out.replace(inputs.to_str().unwrap(), "{inputs}"))
}

/// Cases whose output differs from the expected file, or from a second run.
/// With `update` the expected files are rewritten instead.
pub fn golden_mismatches(update: bool) -> Vec<String> {
    let cases: Vec<Case> = serde_json::from_str(&std::fs::read_to_string(golden_dir().join("cases.json")).unwrap()).unwrap();
    let mut mismatched = Vec::new();
    for case in &cases {
        let got = execute(case);
        if got != execute(case) {
            mismatched.push(format!("{} (nondeterministic)", case.name));
        }
        let path = golden_dir().join("expected").join(format!("{}.out", case.name));
        if update {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &got).unwrap();
        } else if std::fs::read_to_string(&path).ok().as_deref() != Some(got.as_str()) {
            mismatched.push(case.name.clone());
        }
    }
    mismatched
}

/// Subcommands without a golden case.
pub fn uncovered_subcommands() -> Vec<String> {
    let cases = std::fs::read_to_string(golden_dir().join("cases.json")).unwrap();
    let single = [
        "normalize", "compose", "factor", "classify", "check-fs", "nerve", "restrict", "segal-check", "core", "complete",
        "homology",
    ];
    let nested = [
        ("distlaw", "check"),
        ("distlaw", "from-fs"),
        ("distlaw", "to-fs"),
        ("laxdata", "extract"),
        ("laxdata", "reconstruct"),
        ("orientals", "enumerate"),
        ("orientals", "validate"),
        ("orientals", "compose"),
    ];
    let mut missing: Vec<String> =
        single.iter().filter(|sub| !cases.contains(&format!("[\"{sub}\""))).map(|s| s.to_string()).collect();
    for (sub, action) in nested {
        if !cases.contains(&format!("[\"{sub}\", \"{action}\"")) {
            missing.push(format!("{sub} {action}"));
        }
    }
    missing
}

/// Subcommands and the valid input each mutation starts from.
const TARGETS: [(&[&str], &str); 16] = [
    (&["normalize", "--input"], "morphism.json"),
    (&["compose", "--input"], "compose.json"),
    (&["factor", "--system", "active-inert", "--input"], "morphism.json"),
    (&["factor", "--system", "covering-inclusion", "--input"], "inert.json"),
    (&["classify", "--input"], "morphism.json"),
    (&["check-fs", "--input"], "square.json"),
    (&["nerve", "--string", "hv", "--input"], "square.json"),
    (&["restrict", "--input"], "restrict.json"),
    (&["segal-check", "--input"], "table.json"),
    (&["core", "--input"], "c1xc1.json"),
    (&["complete", "--input"], "c1xc1.json"),
    (&["distlaw", "to-fs", "--input"], "distlaw.json"),
    (&["laxdata", "extract", "--input"], "extract.json"),
    (&["laxdata", "reconstruct", "--input"], "laxdata.json"),
    (&["orientals", "validate", "--input"], "triangle.json"),
    (&["orientals", "compose", "--input"], "edges.json"),
];

fn input(name: &str) -> Value {
    let path = golden_dir().join("inputs").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn replacement(pick: u32) -> Value {
    match pick % 12 {
        0 => Value::Null,
        1 => json!(-1),
        2 => json!(u64::MAX),
        3 => json!(0),
        4 => json!(3),
        5 => json!(""),
        6 => json!("(0,0)"),
        7 => json!([]),
        8 => json!({}),
        9 => json!(true),
        10 => json!("hvhv"),
        _ => json!([0, 0]),
    }
}

/// Walk to a node chosen by `steps` and disturb it.
fn mutate(node: &mut Value, steps: &[u32], op: u32, pick: u32) {
    if let Some((&s, rest)) = steps.split_first() {
        match node {
            Value::Array(a) if !a.is_empty() => {
                let k = s as usize % a.len();
                return mutate(&mut a[k], rest, op, pick);
            }
            Value::Object(m) if !m.is_empty() => {
                let key = m.keys().nth(s as usize % m.len()).unwrap().clone();
                return mutate(m.get_mut(&key).unwrap(), rest, op, pick);
            }
            _ => {}
        }
    }
    match (op % 5, &mut *node) {
        (0, Value::Number(_)) => *node = json!([0, 1, 2, 5, 9, u32::MAX as u64][pick as usize % 6]),
        (0, Value::String(s)) => *s = ["h", "v", "hv", "vh", "", "(1|1)", "x", "02", "(0,0)", "gh0"][pick as usize % 10].into(),
        (1, Value::Array(a)) if !a.is_empty() => {
            let k = pick as usize % a.len();
            if pick % 2 == 0 {
                a.remove(k);
            } else {
                let dup = a[k].clone();
                a.push(dup);
            }
        }
        (1, Value::Object(m)) if !m.is_empty() => {
            let key = m.keys().nth(pick as usize % m.len()).unwrap().clone();
            m.remove(&key);
        }
        (2, Value::Number(n)) => {
            let bumped = n.as_u64().unwrap_or(0).wrapping_add(1 + pick as u64 % 5);
            *node = json!(bumped);
        }
        (2, Value::String(s)) => s.push_str(["x", "h", "v", ")", "|"][pick as usize % 5]),
        (3, Value::Bool(b)) | (0, Value::Bool(b)) => *b = !*b,
        _ => *node = replacement(pick),
    }
}

fn mutated() -> impl Strategy<Value = (usize, Vec<(Vec<u32>, u32, u32)>, Option<usize>)> {
    (
        0..TARGETS.len(),
        prop::collection::vec((prop::collection::vec(any::<u32>(), 0..6), any::<u32>(), any::<u32>()), 1..3),
        prop::option::weighted(0.05, any::<usize>()),
    )
}

/// Runs one invocation, failing the case on a panic, an unknown exit code,
/// or output that is not JSON.
fn survive(argv: Vec<String>, stdin: &str) -> Result<i32, TestCaseError> {
    let shown = format!("{argv:?} <<< {stdin}");
    let outcome = catch_unwind(AssertUnwindSafe(|| run_with(Bounds::default(), argv, &mut stdin.as_bytes())));
    let (code, out) = outcome.map_err(|_| TestCaseError::fail(format!("panic on {shown}")))?;
    prop_assert!((0..=2).contains(&code), "{shown}");
    let parsed: Value = serde_json::from_str(&out).map_err(|e| TestCaseError::fail(format!("{e}: {out}")))?;
    if code != 0 {
        prop_assert!(parsed["error"].is_string(), "{shown}");
    }
    Ok(code)
}

/// Mutated JSON inputs: each is answered with exit 1 or 2 and a JSON error
/// object, and nothing panics. Returns how often each exit code came up.
pub fn fuzz_mutated_inputs(cases: u32) -> Result<[usize; 3], String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]));
    let codes = std::cell::RefCell::new([0usize; 3]);
    runner
        .run(&mutated(), |(target, mutations, truncate)| {
            let (args, file) = TARGETS[target];
            let mut v = input(file);
            for (steps, op, pick) in &mutations {
                mutate(&mut v, steps, *op, *pick);
            }
            let mut text = v.to_string();
            if let Some(cut) = truncate {
                let mut cut = cut % (text.len() + 1);
                while !text.is_char_boundary(cut) {
                    cut -= 1;
                }
                text.truncate(cut);
            }
            let mut argv: Vec<String> = std::iter::once("facterm").chain(args.iter().copied()).map(String::from).collect();
            argv.push("-".into());
            let code = survive(argv, &text)?;
            codes.borrow_mut()[code as usize] += 1;
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(codes.into_inner())
}

fn word_text() -> impl Strategy<Value = String> {
    let token = prop_oneof![
        "(gh|gv|dh|dv|sh|sv)[0-9]{1,2}",
        "g[0-9],[0-9]",
        "g[0-9]",
        "[a-z*|()0-9]{0,4}",
    ];
    prop::collection::vec(token, 0..6).prop_map(|ts| ts.join(" "))
}

/// Arguments given on the command line rather than as JSON: strings,
/// generator words, cells and sizes.
fn argument_cases() -> impl Strategy<Value = Vec<String>> {
    let string = "[hv]{0,4}|[hv*()|0-9]{0,6}";
    prop_oneof![
        (string, word_text()).prop_map(|(s, w)| vec!["normalize".into(), "--source".into(), s, "--word".into(), w]),
        string.prop_map(|s| vec!["homology".into(), "--string".into(), s]),
        (string, 0usize..4).prop_map(|(s, _)| vec!["nerve".into(), "--string".into(), s, "--input".into(), "{}".into()]),
        (0usize..6, 0usize..6).prop_map(|(n, k)| vec!["orientals".into(), "enumerate".into(), "--n".into(), n.to_string(), "--k".into(), k.to_string()]),
        (0usize..5, "[(){}|,0-9]{0,24}").prop_map(|(n, c)| vec!["orientals".into(), "validate".into(), "--n".into(), n.to_string(), "--cell".into(), c]),
        // Help and version are plain text by design.
        prop::collection::vec("[a-z-]{0,8}", 0..4)
            .prop_filter("help", |ws| !ws.iter().any(|w| ["help", "-h", "--help", "-V", "--version"].contains(&w.as_str()))),
    ]
}

pub fn fuzz_arguments(cases: u32) -> Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[11; 32]));
    runner
        .run(&argument_cases(), |args| {
            let argv = std::iter::once("facterm".to_string()).chain(args).collect();
            survive(argv, "").map(|_| ())
        })
        .map_err(|e| e.to_string())
}
