use std::process::{Command, Output};

use serde_json::Value;

const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
const HOPF: &str = "X[1,3,2,4] X[3,1,4,2]";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_udiag")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Vec<Value>, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let records = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON record per line"))
        .collect();
    (records, out.status.code().unwrap())
}

#[test]
fn report_unknot_and_trefoil() {
    let (r, code) = json(&["report", "O"]);
    assert_eq!(code, 0);
    assert_eq!(r[0]["c"], 0);
    assert_eq!(r[0]["mu"], 1);
    let (r, _) = json(&["report", TREFOIL]);
    assert_eq!(r[0]["c"], 3);
    assert_eq!(r[0]["alternating"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["validate", "O1+O2+U1+U2+"]).status.code(), Some(3));
    assert_eq!(run(&["validate", "X[1,2,3]"]).status.code(), Some(2));
    assert_eq!(run(&["validate", TREFOIL]).status.code(), Some(0));
    assert_eq!(run(&["census", "9"]).status.code(), Some(4));
    // A level cap below the answer leaves an interval.
    assert_eq!(run(&["--level-cap", "1", "u", &torus(5)]).status.code(), Some(4));
}

fn torus(p: usize) -> String {
    let w: String = (0..2 * p).map(|i| format!("{}{}+", if i % 2 == 0 { 'O' } else { 'U' }, i % p + 1)).collect();
    w
}

#[test]
fn unknotting_numbers() {
    for (input, want) in [("O".to_string(), "Exact(0)"), (TREFOIL.to_string(), "Exact(1)"), (torus(5), "Exact(2)")] {
        let (r, code) = json(&["u", &input]);
        assert_eq!(code, 0);
        assert_eq!(r[0]["status"], want, "{input}");
    }
}

#[test]
fn transforms() {
    let (r, code) = json(&["transform", "double", "O"]);
    assert_eq!(code, 0);
    assert_eq!(r[0]["pd"], "O");
    let (r, _) = json(&["transform", "double", FIGURE_EIGHT]);
    assert_eq!(r[0]["c"], 24);
    let (r, code) = json(&["transform", "taniyama", TREFOIL, "--set", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r[0]["c"], 51);
    let pd = r[0]["pd"].as_str().unwrap();
    let (r, _) = json(&["report", pd]);
    assert_eq!(r[0]["mu"], 1);
    assert_eq!(run(&["transform", "taniyama", TREFOIL, "--set", "1,2"]).status.code(), Some(1));
}

#[test]
fn classify() {
    let (r, _) = json(&["classify", &torus(7)]);
    assert_eq!(r[0]["equality"], true);
    let (r, _) = json(&["classify", HOPF]);
    assert_eq!(r[0]["kind"], "link");
    assert_eq!(r[0]["equality"], true);
    let (r, _) = json(&["classify", FIGURE_EIGHT]);
    assert_eq!(r[0]["equality"], false);
}

#[test]
fn census_tables() {
    let (r, code) = json(&["census", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r.len(), 2);
    assert_eq!(r[0]["equality"], true);
    let (r, code) = json(&["census", "3"]);
    assert_eq!(code, 0);
    let eq: Vec<_> = r.iter().filter(|x| x["equality"] == true).map(|x| x["c"].as_u64().unwrap()).collect();
    assert_eq!(eq, vec![1, 3]);
    assert_eq!(r.last().unwrap()["counterexamples"], 0);
}

#[test]
fn templates_and_env_override() {
    let out = run(&["check-template", "doubling"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("udiag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("doubling.tpl"), "template broken\nlegs 1 2 3 4\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_udiag"))
        .env("UDIAG_TEMPLATE_DIR", &dir)
        .args(["transform", "double", TREFOIL])
        .output()
        .unwrap();
    assert_ne!(out.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn structured_output_is_reproducible() {
    let args = ["--format", "json", "--seed", "5", "inequalities", "--count", "20", "--max-crossings", "7"];
    let a = run(&args).stdout;
    assert_eq!(a.iter().filter(|&&b| b == b'\n').count(), 21);
    assert_eq!(a, run(&args).stdout);
}
