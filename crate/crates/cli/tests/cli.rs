use std::fs;
use std::process::{Command, Output};

fn aczel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aczel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn remark_json_reproduces_published_values() {
    let o = aczel(&["remark", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let want = [0.0833059, -0.500368, 0.501632, -0.655227];
    for (row, w) in rows.iter().zip(want) {
        assert!((row["difference"].as_f64().unwrap() - w).abs() <= 1e-4, "{row}");
        assert!(row["abs_error"].as_f64().unwrap() <= 1e-4);
    }
    let literal = &doc["literal"][0];
    assert!((literal["difference"].as_f64().unwrap() - 0.745208).abs() < 1e-5);
    assert_eq!(doc["reproduced"], true);
}

#[test]
fn remark_csv_lists_all_rows() {
    let o = aczel(&["remark"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("case_id,alpha,s,t,"));
    assert_eq!(text.lines().count(), 6);
    assert!(text.contains("2(ii)-literal"));
}

#[test]
fn single_trial_verify_succeeds() {
    let o = aczel(&["verify", "--cases", "YOUNG", "--trials", "1", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("case_id,trials,failures,errors,min_margin,worst_seed")
    );
    assert!(lines.next().unwrap().starts_with("YOUNG,3,0,0,"));
}

#[test]
fn full_verify_run_writes_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("summary.csv");
    let o = aczel(&[
        "verify",
        "--trials",
        "200",
        "--dims",
        "2,3,5,8",
        "--seed",
        "42",
        "--output",
        out.to_str().unwrap(),
    ]);
    let summary = fs::read_to_string(&out).unwrap();
    assert_eq!(summary.lines().count(), 29);
    assert_eq!(o.status.code(), Some(0), "{summary}");
}

#[test]
fn failing_cases_exit_one_and_dump_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let dumps = dir.path().join("dumps");
    let o = aczel(&[
        "verify",
        "--cases",
        "COR_2_6_HALF",
        "--dims",
        "2",
        "--trials",
        "400",
        "--seed",
        "42",
        "--dump-dir",
        dumps.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failures = report["failures"].as_array().unwrap().len();
    assert!(failures > 0);
    assert_eq!(fs::read_dir(&dumps).unwrap().count(), failures);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--cases", "NOT_A_CASE"][..],
        &["verify", "--trials", "0"],
        &["verify", "--dims", "0"],
        &["compare", "--input", "pair.json", "--s", "0.3"],
        &["compare", "--function", "EXP"],
        &["compare", "--alpha", "1.5"],
        &["sample", "--kind", "sandwich", "--s", "2", "--t", "1"],
        &["frobnicate"],
    ] {
        let o = aczel(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn identical_arguments_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = aczel(&[
            "verify",
            "--dims",
            "2,3",
            "--trials",
            "3",
            "--seed",
            "11",
            "--format",
            "json",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.code().is_some());
        fs::read(path).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn compare_loads_sampled_pair() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("pair.json");
    let o = aczel(&[
        "sample",
        "--kind",
        "sandwich",
        "--dim",
        "3",
        "--s",
        "0.3",
        "--t",
        "1",
        "--seed",
        "4",
        "--output",
        pair.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = aczel(&[
        "compare",
        "--input",
        pair.to_str().unwrap(),
        "--alpha",
        "0.9",
        "--function",
        "NEG_POWER_0.5",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let records: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &records[0];
    let diff = r["kantorovich"].as_f64().unwrap() - r["dragomir"].as_f64().unwrap();
    assert!((diff - 0.0833059).abs() < 1e-4);
    assert!(r["realized_ratio"].as_f64().unwrap() <= r["kantorovich"].as_f64().unwrap());
    assert_eq!(r["dominated"], true);
}

#[test]
fn compare_samples_many_pairs() {
    let o = aczel(&[
        "compare", "--count", "20", "--dim", "4", "--s", "0.5", "--t", "2", "--alpha", "0.3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 21);
    // M_α is not applicable above t = 1: empty column
    assert!(text.lines().nth(1).unwrap().contains(",,"));
}

#[test]
fn catalog_lists_functions() {
    let o = aczel(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<&str> = doc
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids.len(), 8);
    assert!(ids.contains(&"ONE_MINUS_T") && ids.contains(&"NEG_POWER_0.25"));
}

#[test]
fn sample_kinds_emit_json() {
    for kind in ["hpd", "hermitian", "sandwich", "commuting", "vector", "sequences"] {
        let o = aczel(&["sample", "--kind", kind, "--seed", "1"]);
        assert_eq!(o.status.code(), Some(0), "{kind}");
        let _: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    }
}
