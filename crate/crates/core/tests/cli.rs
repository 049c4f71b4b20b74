use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nhgraph::foliation::parse_obstacles;
use nhgraph::presentation::parse_presentation;
use nhgraph::quotient::QuotientDoc;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn nhgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nhgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn diagnostic(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("diagnostic is json")
}

fn data_files(ext: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(data(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    v.sort();
    v
}

#[test]
fn quotient_output_is_deterministic() {
    let x = data("X.mfd");
    for format in ["json", "dot"] {
        let a = nhgraph(&["quotient", "--in", x.to_str().unwrap(), "--format", format]);
        let b = nhgraph(&["quotient", "--in", x.to_str().unwrap(), "--format", format]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn presentations_round_trip() {
    let files = data_files("mfd");
    assert!(files.len() >= 8);
    for f in files {
        let text = std::fs::read_to_string(&f).unwrap();
        let p = parse_presentation(&text).unwrap();
        assert_eq!(
            parse_presentation(&p.to_json()).unwrap(),
            p,
            "{}",
            f.display()
        );
    }
}

#[test]
fn obstacle_sets_round_trip_and_compile_to_shipped_presentations() {
    for f in data_files("obs") {
        let q = parse_obstacles(&std::fs::read_to_string(&f).unwrap()).unwrap();
        assert_eq!(parse_obstacles(&q.to_json()).unwrap(), q);
        let out = nhgraph(&["foliation-compile", "--in", f.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let shipped = std::fs::read_to_string(f.with_extension("mfd")).unwrap();
        assert_eq!(stdout(&out), shipped, "{}", f.display());
    }
}

#[test]
fn quotient_documents_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for f in data_files("mfd") {
        let qg = dir.path().join(f.file_stem().unwrap()).with_extension("qg");
        let out = nhgraph(&[
            "quotient",
            "--in",
            f.to_str().unwrap(),
            "--out",
            qg.to_str().unwrap(),
        ]);
        if out.status.code() != Some(0) {
            continue;
        }
        assert!(out.stdout.is_empty());
        let text = std::fs::read_to_string(&qg).unwrap();
        let doc = QuotientDoc::parse(&text).unwrap();
        let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
        assert_eq!(again, text, "{}", f.display());
    }
}

#[test]
fn compile_then_quotient_letter_x() {
    let dir = tempfile::tempdir().unwrap();
    let mfd = dir.path().join("X.mfd");
    let o = nhgraph(&[
        "foliation-compile",
        "--in",
        data("X.obs").to_str().unwrap(),
        "--out",
        mfd.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = nhgraph(&["quotient", "--in", mfd.to_str().unwrap(), "--oracle-check"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = QuotientDoc::parse(&stdout(&o)).unwrap();
    assert_eq!(
        (doc.vertex_count(), doc.edge_count(), doc.open_end_count()),
        (2, 5, 4)
    );
}

#[test]
fn dot_for_two_origins() {
    let o = nhgraph(&[
        "quotient",
        "--in",
        data("L.mfd").to_str().unwrap(),
        "--format",
        "dot",
    ]);
    let dot = stdout(&o);
    assert_eq!(dot.matches("[label=\"v").count(), 1);
    assert_eq!(dot.matches("shape=point, label=\"open\"").count(), 2);
    assert_eq!(dot.matches(" -- ").count(), 2);
}

#[test]
fn rejected_inputs_exit_one_with_codes() {
    let cases = [
        (vec!["validate", "--in", "selfglue.mfd"], "E_NOT_INJECTIVE"),
        (vec!["validate", "--in", "nottame.mfd"], "E_NOT_TAME"),
        (vec!["quotient", "--in", "missing.mfd"], "E_IO"),
        (
            vec!["classify", "--in", "L.mfd", "--component", "0"],
            "E_NOT_APPLICABLE",
        ),
        (
            vec![
                "oracle", "--in", "L.mfd", "--pair", "c1:0", "c2:0", "--method", "coin",
            ],
            "E_UNKNOWN_METHOD",
        ),
        (
            vec!["oracle", "--in", "L.mfd", "--pair", "c1:3", "c2:3"],
            "E_SAME_POINT",
        ),
        (
            vec!["oracle", "--in", "L.mfd", "--pair", "c9:0", "c2:0"],
            "E_UNKNOWN_CHART",
        ),
        (vec!["foliation-compile", "--in", "L.mfd"], "E_PARSE"),
    ];
    for (args, code) in cases {
        let args: Vec<String> = args
            .iter()
            .map(|a| {
                if a.ends_with(".mfd") {
                    data(a).to_str().unwrap().to_string()
                } else {
                    a.to_string()
                }
            })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = nhgraph(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert_eq!(diagnostic(&o)["code"], code, "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn classify_shipped_intervals() {
    for (file, class) in [
        ("closed_interval.mfd", "[0,1]"),
        ("half_open.mfd", "[0,1)"),
        ("open_interval.mfd", "(0,1)"),
        ("circle.mfd", "S1"),
    ] {
        let o = nhgraph(&[
            "classify",
            "--in",
            data(file).to_str().unwrap(),
            "--component",
            "0",
        ]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["class"], class, "{file}");
    }
}

#[test]
fn oracle_and_endpoint_methods() {
    let x = data("X.mfd");
    let x = x.to_str().unwrap();
    let run = |a: &str, b: &str, method: &str| {
        let v: Value = serde_json::from_str(&stdout(&nhgraph(&[
            "oracle", "--in", x, "--pair", a, b, "--method", method,
        ])))
        .unwrap();
        v["answer"].as_str().unwrap().to_string()
    };
    assert_eq!(run("c1:0", "c4:0", "epsilon"), "separable");
    assert_eq!(run("c1:0", "c4:0", "endpoint"), "separable");
    assert_eq!(run("c2:1", "c3:1", "epsilon"), "unresolved");
    assert_eq!(run("c2:1", "c3:1", "endpoint"), "inseparable");
}

#[test]
fn branch_points_of_letter_x() {
    let o = nhgraph(&["branch-points", "--in", data("X.mfd").to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["inseparable_pairs"].as_array().unwrap().len(), 3);
    let sizes: Vec<usize> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_array().unwrap().len())
        .collect();
    assert_eq!(sizes, vec![3, 2]);
    assert_eq!(v["branch_points"].as_array().unwrap().len(), 5);
}
