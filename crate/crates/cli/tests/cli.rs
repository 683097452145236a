use std::process::{Command, Output};

use serde_json::Value;

fn wreath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wreath"))
        .args(args)
        .env_remove("WREATH_JOBS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
        .collect()
}

const Z2_FILE: &str = r#"{
  "name": "c2",
  "order": 2,
  "cayley": [[0, 1], [1, 0]],
  "exponent": 2,
  "irreducibles": ["1", "chi"],
  "character_table": [["1", "1"], ["1", "-1"]]
}"#;

#[test]
fn type_b_range_generates() {
    let out = wreath(&[
        "verify",
        "--group",
        "z2",
        "--n-range",
        "2..4",
        "--theorem",
        "4.3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let records = json_lines(&out);
    assert_eq!(records.len(), 3);
    for (r, n) in records.iter().zip(2..) {
        assert_eq!(r["n"], n);
        assert_eq!(r["verdict"], "generates");
        assert_eq!(r["index"], "1");
    }
}

#[test]
fn hooks_generate_for_s5() {
    let out = wreath(&["verify", "--group", "trivial", "--n", "5", "--theorem", "marin-hooks"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("generates"));
}

#[test]
fn unit_alone_fails_with_exit_1() {
    let out = wreath(&[
        "verify",
        "--group",
        "z2",
        "--n",
        "2",
        "--gens",
        "custom",
        "--gen-list",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 1);
    let r = &json_lines(&out)[0];
    assert_eq!(r["verdict"], "fails");
    assert_eq!(r["index"], "inf");
    assert_eq!(r["span_rank"], 1);
}

#[test]
fn inapplicable_theorems_exit_3() {
    for (group, theorem) in [("z3", "4.3"), ("s3", "4.2"), ("z2", "marin-hooks")] {
        let out = wreath(&["verify", "--group", group, "--n", "2", "--theorem", theorem]);
        assert_eq!(code(&out), 3, "{group} {theorem}");
    }
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, Z2_FILE.replace("[[0, 1], [1, 0]]", "[[0, 1], [1, 1]]")).unwrap();
    let bad_table = dir.path().join("table.json");
    std::fs::write(&bad_table, Z2_FILE.replace(r#"["1", "-1"]"#, r#"["1", "1"]"#)).unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "verify",
            "--group-file",
            bad.to_str().unwrap(),
            "--n",
            "2",
            "--theorem",
            "4.3",
        ],
        vec![
            "verify",
            "--group-file",
            bad_table.to_str().unwrap(),
            "--n",
            "2",
            "--theorem",
            "4.3",
        ],
        vec![
            "verify",
            "--group-file",
            "/nonexistent.json",
            "--n",
            "2",
            "--theorem",
            "4.3",
        ],
        vec!["verify", "--group", "q8", "--n", "2", "--theorem", "4.3"],
        vec![
            "verify",
            "--group",
            "z2",
            "--group-file",
            "x.json",
            "--n",
            "2",
            "--theorem",
            "4.3",
        ],
        vec!["verify", "--group", "z2", "--n-range", "4..2", "--theorem", "4.3"],
        vec!["verify", "--group", "z2", "--n", "2"],
        vec!["verify", "--group", "z2", "--n", "2", "--theorem", "9.9"],
        vec![
            "verify",
            "--group",
            "s3",
            "--n",
            "2",
            "--theorem",
            "4.1",
            "--eps",
            "W:sign",
        ],
        vec![
            "verify",
            "--group",
            "z2",
            "--n",
            "2",
            "--theorem",
            "4.3",
            "--eps",
            "chi:sign",
        ],
        vec![
            "verify",
            "--group",
            "z2",
            "--n",
            "2",
            "--gens",
            "custom",
            "--gen-list",
            "((1),∅)",
        ],
        vec!["verify", "--group", "z2", "--n", "2", "--theorem", "4.3", "--jobs", "0"],
        vec!["decompose", "--group", "trivial", "--n", "4", "(3,2)", "(3,1)"],
        vec!["decompose", "--group", "z2", "--n", "2", "(2)", "((1),(1))"],
        vec!["graded-check", "--group", "z2", "--degree", "0"],
        vec!["graded-check", "--group", "z2", "--flavors", "e", "--degree", "2"],
        vec![
            "stability",
            "--group",
            "trivial",
            "--lambda",
            "(2,1)",
            "--mu",
            "(1)",
            "--bound",
            "2",
        ],
    ];
    for args in cases {
        assert_eq!(code(&wreath(&args)), 2, "{args:?}");
    }
}

#[test]
fn group_file_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c2.json");
    std::fs::write(&path, Z2_FILE).unwrap();
    let out = wreath(&[
        "verify",
        "--group-file",
        path.to_str().unwrap(),
        "--n",
        "3",
        "--theorem",
        "4.3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = &json_lines(&out)[0];
    assert_eq!(r["group"], "c2");
    assert_eq!(r["rank"], 10);
}

#[test]
fn json_records_carry_the_stable_fields() {
    let out = wreath(&[
        "verify",
        "--group",
        "s3",
        "--n",
        "2",
        "--theorem",
        "4.1",
        "--format",
        "json",
    ]);
    let r = &json_lines(&out)[0];
    for key in ["group", "n", "theorem", "verdict", "index", "rounds", "elapsed_ms"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["eps"], "sgn:sign,V:sign");
    assert_eq!(r["flavor"], "hook");
}

#[test]
fn text_and_json_agree() {
    let base = [
        "verify",
        "--group",
        "s3",
        "--n-range",
        "2..3",
        "--theorem",
        "4.1",
        "--eps",
        "all",
        "--unit-flavor",
        "both",
    ];
    let text = wreath(&base);
    let json = wreath(&[&base[..], &["--format", "json"]].concat());
    assert_eq!(code(&text), code(&json));
    let text = stdout(&text);
    let mut lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.pop(), Some("32 of 32 runs generate"));
    let records = json_lines(&json);
    assert_eq!(lines.len(), records.len());
    for (line, r) in lines.iter().zip(&records) {
        let verdict = r["verdict"].as_str().unwrap();
        assert!(line.starts_with(verdict), "{line}");
        assert!(line.contains(&format!(" n={} ", r["n"])));
        assert!(line.contains(&format!(" eps={} ", r["eps"].as_str().unwrap())));
        assert!(line.contains(&format!(" index={} ", r["index"].as_str().unwrap())));
    }
}

fn strip_timing(records: Vec<Value>) -> Vec<Value> {
    records
        .into_iter()
        .map(|mut r| {
            r.as_object_mut().unwrap().remove("elapsed_ms");
            r
        })
        .collect()
}

#[test]
fn output_order_is_independent_of_worker_count() {
    let args = [
        "verify",
        "--group",
        "s3",
        "--n-range",
        "1..3",
        "--theorem",
        "4.1",
        "--eps",
        "all",
        "--format",
        "json",
    ];
    let one = strip_timing(json_lines(&wreath(&[&args[..], &["--jobs", "1"]].concat())));
    let four = strip_timing(json_lines(&wreath(&[&args[..], &["--jobs", "4"]].concat())));
    assert_eq!(one, four);
    let ordered: Vec<(u64, String)> = one
        .iter()
        .map(|r| (r["n"].as_u64().unwrap(), r["eps"].as_str().unwrap().to_string()))
        .collect();
    let mut sorted = ordered.clone();
    sorted.sort();
    assert_eq!(ordered, sorted);
}

#[test]
fn worker_count_from_environment() {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_wreath"))
            .args(["verify", "--group", "z2", "--n", "2", "--theorem", "4.3"])
            .env("WREATH_JOBS", jobs)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("2")), 0);
    assert_eq!(code(&run("0")), 2);
    assert_eq!(code(&run("many")), 2);
}

#[test]
fn decompose_examples() {
    let out = wreath(&[
        "decompose",
        "--group",
        "z2",
        "--n",
        "2",
        "((1),(1))",
        "((1),(1))",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let d = &json_lines(&out)[0];
    let parts = d["constituents"].as_array().unwrap();
    assert_eq!(parts.len(), 4);
    assert!(parts.iter().all(|c| c["multiplicity"] == 1 && c["dimension"] == 1));

    let out = wreath(&[
        "decompose",
        "--group",
        "trivial",
        "--n",
        "4",
        "(3,1)",
        "(3,1)",
        "--format",
        "json",
    ]);
    let d = &json_lines(&out)[0];
    let labels: Vec<&str> = d["constituents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["(2,1,1)", "(2,2)", "(3,1)", "(4)"]);

    let out = wreath(&[
        "decompose",
        "--group",
        "s3",
        "--n",
        "2",
        "((1),∅,(1))",
        "((2),∅,∅)",
        "--format",
        "json",
    ]);
    let d = &json_lines(&out)[0];
    let parts = d["constituents"].as_array().unwrap();
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[0]["label"], "((1),∅,(1))");
}

#[test]
fn graded_checks() {
    let out = wreath(&["graded-check", "--group", "trivial", "--degree", "4"]);
    assert_eq!(code(&out), 0);
    let out = wreath(&[
        "graded-check",
        "--group",
        "z3",
        "--flavors",
        "e,h,e",
        "--degree",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let r = &json_lines(&out)[0];
    assert_eq!(r["passes"], true);
    assert_eq!(r["degrees"].as_array().unwrap().len(), 4);
    let out = wreath(&[
        "graded-check",
        "--group",
        "klein",
        "--flavors",
        "all",
        "--degree",
        "1",
        "--format",
        "json",
    ]);
    let records = json_lines(&out);
    assert_eq!(records.len(), 16);
    for r in &records {
        assert_eq!(r["degrees"][0]["determinant"], "1");
    }
}

#[test]
fn stability_examples() {
    let out = wreath(&[
        "stability",
        "--group",
        "trivial",
        "--lambda",
        "(1)",
        "--mu",
        "(1)",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let r = &json_lines(&out)[0];
    for t in r["multiplicities"].as_array().unwrap() {
        let values: Vec<i64> = t["values"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_i64().unwrap())
            .collect();
        assert_eq!(values[2..], [1, 1, 1], "{}", t["nu"]);
    }

    let out = wreath(&[
        "stability",
        "--group",
        "trivial",
        "--lambda",
        "∅",
        "--mu",
        "∅",
        "--format",
        "json",
    ]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["product_lead_term"]["onset"], 0);

    let out = wreath(&[
        "stability",
        "--group",
        "z2",
        "--lambda",
        "(∅,(1))",
        "--mu",
        "(∅,(1))",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let r = &json_lines(&out)[0];
    assert!(r["product_lead_term"]["onset"].is_u64());
    assert!(r["restriction_lead_term"]["onset"].is_u64());
}

#[test]
fn stability_sweep_is_ordered() {
    let out = wreath(&["stability", "--group", "trivial", "--bound", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let pairs: Vec<(String, String)> = json_lines(&out)
        .iter()
        .map(|r| (r["lambda"].as_str().unwrap().into(), r["mu"].as_str().unwrap().into()))
        .collect();
    assert_eq!(pairs.len(), 5);
    assert_eq!(pairs[0], ("∅".into(), "∅".into()));
}
