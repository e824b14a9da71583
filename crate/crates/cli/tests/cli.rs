use std::process::{Command, Output};

use serde_json::Value;

fn lefforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefforge"))
        .args(args)
        .env_remove("LEFFORGE_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = lefforge(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn shape(t: &str, m: &str, n: &str) -> Vec<&'static str> {
    let leak = |s: &str| -> &'static str { Box::leak(s.to_string().into_boxed_str()) };
    vec!["--t", leak(t), "--m", leak(m), "--n", leak(n)]
}

#[test]
fn slp_examples_on_both_rings() {
    let mut args = vec!["check"];
    args.extend(shape("3", "4", "5"));
    args.extend(["--property", "slp"]);
    let v = json(&args);
    assert_eq!(v["result"]["outcome"], "fails_probabilistic");
    assert_eq!(v["result"]["trials"].as_array().unwrap().len(), 3);
    args.extend(["--ring", "minors"]);
    let v = json(&args);
    assert_eq!(v["result"]["outcome"], "holds_certified");
    let evidence = v["result"]["evidence"].as_array().unwrap();
    assert!(evidence.iter().all(|c| c["maximal"] == true));
}

#[test]
fn betti_corner_with_witnesses() {
    let mut args = vec!["betti"];
    args.extend(shape("2", "3", "3"));
    args.push("--full");
    let v = json(&args);
    let r = &v["result"];
    assert_eq!(r["i"], 4);
    assert_eq!(r["j"], 5);
    assert_eq!(r["value"], 2);
    assert_eq!(r["kind"], "exact");
    let mut cells: Vec<Value> = r["witness_cells"].as_array().unwrap().clone();
    cells.sort_by_key(|c| c.to_string());
    let v0 = serde_json::json!([[1, 1], [1, 2], [2, 1], [2, 2], [3, 3]]);
    let v1 = serde_json::json!([[1, 1], [2, 2], [2, 3], [3, 2], [3, 3]]);
    assert_eq!(cells, vec![v0, v1]);
}

#[test]
fn survey_csv_has_frozen_columns() {
    let out = lefforge(&[
        "survey", "--t", "2", "--max-m", "4", "--max-n", "4", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        [
            "t",
            "m",
            "n",
            "F_value",
            "classify_case",
            "betti_corner",
            "betti_kind",
            "wlp_initial",
            "slp_initial",
            "wlp_minors",
            "slp_minors",
            "wall_time_ms"
        ]
    );
    let mut saw_four = false;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let m: usize = rec[1].parse().unwrap();
        let n: usize = rec[2].parse().unwrap();
        if m * n <= 15 {
            assert_eq!(&rec[8], "holds_certified", "{m}x{n}");
        }
        if (m, n) == (4, 4) {
            saw_four = true;
            assert_eq!(&rec[7], "fails_certified");
        }
    }
    assert!(saw_four);
}

#[test]
fn survey_marks_skipped_work() {
    let out = lefforge(&[
        "survey",
        "--t",
        "2",
        "--max-m",
        "3",
        "--max-n",
        "4",
        "--max-height",
        "4",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().find(|l| l.starts_with("2,3,4,")).unwrap();
    assert!(row.contains("skipped(budget)"));
}

#[test]
fn json_is_reproducible() {
    let mut args = shape("2", "4", "4");
    args.insert(0, "check");
    args.extend(["--format", "json"]);
    let a = lefforge(&args);
    let b = lefforge(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["outcome"], "fails_certified");
    let survey = [
        "survey", "--t", "2", "--max-m", "3", "--max-n", "3", "--format", "json",
    ];
    assert_eq!(lefforge(&survey).stdout, lefforge(&survey).stdout);
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lefforge"))
        .args([
            "criteria", "--t", "2", "--m", "3", "--n", "3", "--format", "json",
        ])
        .env("LEFFORGE_SEED", "77")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 77);
    let v = json(&[
        "criteria", "--t", "2", "--m", "3", "--n", "3", "--seed", "5",
    ]);
    assert_eq!(v["config"]["seed"], 5);
}

#[test]
fn exit_codes_and_error_lines() {
    let cases: [(&[&str], i32, &str); 5] = [
        (
            &["check", "--t", "5", "--m", "3", "--n", "3"],
            2,
            "error[parameter]",
        ),
        (
            &[
                "betti", "--t", "3", "--m", "5", "--n", "6", "--full", "--budget", "10",
            ],
            3,
            "error[budget]",
        ),
        (
            &["check", "--t", "2", "--m", "3", "--n", "3", "--prime", "7"],
            2,
            "error[parameter]",
        ),
        (
            &[
                "criteria", "--t", "2", "--m", "3", "--n", "3", "--format", "csv",
            ],
            2,
            "error[parameter]",
        ),
        (
            &["betti", "--t", "2", "--m", "3", "--n", "3", "--i", "1"],
            2,
            "error[parameter]",
        ),
    ];
    for (args, code, prefix) in cases {
        let out = lefforge(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with(prefix), "{err}");
    }
    let out = lefforge(&[
        "check",
        "--t",
        "2",
        "--m",
        "3",
        "--n",
        "3",
        "--prime",
        "2305843009213693951",
        "--rational",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rational_mode_and_output_file() {
    let path = std::env::temp_dir().join(format!("lefforge-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = lefforge(&[
        "check",
        "--t",
        "2",
        "--m",
        "3",
        "--n",
        "4",
        "--property",
        "slp",
        "--rational",
        "--format",
        "json",
        "--output",
        p,
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["config"]["characteristic"], 0);
    assert_eq!(v["result"]["outcome"], "holds_certified");
    assert_eq!(v["result"]["trials"][0]["field"], "Rational");
}

#[test]
fn small_commands() {
    let v = json(&["ideal", "--t", "2", "--m", "2", "--n", "3"]);
    assert_eq!(v["result"]["generators"].as_array().unwrap().len(), 3);
    let v = json(&["facets", "--t", "2", "--m", "3", "--n", "3"]);
    assert_eq!(v["result"]["facet_count"], 6);
    assert_eq!(v["result"]["lgv_count"], "6");
    let v = json(&["omega", "--t", "3", "--m", "4", "--n", "5"]);
    assert_eq!(v["result"]["regions"].as_array().unwrap().len(), 3);
    assert!(v["result"]["betti_lower_bound"].as_u64().unwrap() >= 3);
    let v = json(&[
        "homology",
        "--t",
        "2",
        "--m",
        "3",
        "--n",
        "3",
        "--cells",
        "1,1;1,2;2,1;2,2;3,3",
    ]);
    assert_eq!(v["result"]["reduced_homology"][1], 1);
    let v = json(&["criteria", "--t", "2", "--m", "3", "--n", "6"]);
    assert_eq!(v["result"]["f_value"], "0");
    assert_eq!(v["result"]["certifies_wlp_failure"], true);
    assert_eq!(v["result"]["main_theorem_case"], "t2_fails");
    let out = lefforge(&[
        "--threads",
        "1",
        "criteria",
        "--t",
        "4",
        "--m",
        "5",
        "--n",
        "6",
    ]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("F_4(5,6) = -5"));
}
