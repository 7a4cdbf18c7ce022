use std::process::{Command, Output};

fn holochar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holochar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = holochar(&all);
    assert_eq!(out.status.code(), Some(0), "{args:?}");
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn character_eight() {
    let out = holochar(&["character", "--c", "8", "--terms", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stdout(&out).starts_with("q^(-1/3) * (1 + 248q + "),
        "{}",
        stdout(&out)
    );
}

#[test]
fn character_twenty_four() {
    let out = holochar(&["character", "--c", "24", "--const", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stdout(&out).starts_with("q^-1 + 196884q + "),
        "{}",
        stdout(&out)
    );
}

#[test]
fn bad_central_charge_is_a_usage_error() {
    assert_eq!(holochar(&["character", "--c", "12"]).status.code(), Some(2));
    assert_eq!(
        holochar(&["character", "--c", "8", "--terms", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        holochar(&["theta", "--lattice", "no-such-lattice"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        holochar(&["enumerate", "--rational-levels"]).status.code(),
        Some(2)
    );
    assert_eq!(holochar(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn theta_and_sugawara() {
    let out = holochar(&["theta", "--lattice", "E8", "--terms", "3"]);
    assert_eq!(stdout(&out), "1 + 240q + 2160q^2 + O(q^3)\n");
    let out = holochar(&["sugawara", "--type", "E8", "--level", "1"]);
    assert_eq!(stdout(&out), "8\n");
}

#[test]
fn verify_suites() {
    let out = holochar(&["verify", "--suite", "cor23"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() > 3);
    assert!(!text.contains("FAIL"));
    assert_eq!(
        holochar(&["verify", "--suite", "bogus"]).status.code(),
        Some(2)
    );

    let report = json(&["verify", "--suite", "enum-oracle"]);
    assert_eq!(report["passed"], true);
    for check in report["checks"].as_array().unwrap() {
        assert!(
            check["name"].is_string()
                && check["expected"].is_string()
                && check["actual"].is_string()
        );
    }
}

#[test]
fn enumerate_contains_niemeier_slice() {
    let v = json(&[
        "enumerate",
        "--rank-exact",
        "24",
        "--integer-levels",
        "--level-cap",
        "1",
    ]);
    let candidates = v["candidates"].as_array().unwrap();
    assert_eq!(v["count"], candidates.len());
    assert_eq!(candidates.len(), 23);
    for c in candidates {
        assert_eq!(c["rank"], 24);
        for p in c["pairs"].as_array().unwrap() {
            assert_eq!(p["level"], "1");
            assert!(p["type"].is_string());
        }
    }
    assert!(v["special_cases"].as_array().unwrap().len() >= 2);
}

#[test]
fn series_json_schema() {
    let v = json(&["character", "--c", "16", "--terms", "2"]);
    let s = &v["series"];
    assert_eq!(s["base"], -16);
    assert_eq!(s["unit"], "q^(1/24)");
    let coeffs = s["coeffs"].as_array().unwrap();
    assert_eq!(coeffs[0], "1");
    assert_eq!(coeffs[24], "496");
}

#[test]
fn csv_output() {
    let out = holochar(&[
        "--format",
        "csv",
        "theta",
        "--lattice",
        "E8",
        "--terms",
        "3",
    ]);
    let mut rows = csv::Reader::from_reader(out.stdout.as_slice());
    let got: Vec<(String, String)> = rows.deserialize().map(|r| r.unwrap()).collect();
    let want = [("0", "1"), ("24", "240"), ("48", "2160")];
    assert_eq!(got, want.map(|(a, b)| (a.to_string(), b.to_string())));
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("roots.json");
    let out = holochar(&[
        "roots",
        "--lattice",
        "Gamma16",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["roots"], 480);
    assert_eq!(v["root_system"], "D16");
}

#[test]
fn gram_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2.gram");
    std::fs::write(&path, "2\n2 -1\n-1 2\n").unwrap();
    let out = holochar(&["roots", "--lattice", path.to_str().unwrap()]);
    assert_eq!(stdout(&out), "6 roots, root system A2\n");
    let out = holochar(&["theta", "--lattice", path.to_str().unwrap(), "--terms", "2"]);
    assert_eq!(stdout(&out), "1 + 6q + O(q^2)\n");
}

#[test]
fn output_is_independent_of_jobs() {
    let args = ["enumerate", "--rank-max", "24"];
    let one = holochar(&[&["--jobs", "1"][..], &args].concat());
    let two = holochar(&[&["--jobs", "2"][..], &args].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let one = holochar(&[
        "--jobs",
        "1",
        "theta",
        "--lattice",
        "Gamma16",
        "--terms",
        "4",
    ]);
    let two = holochar(&[
        "--jobs",
        "2",
        "theta",
        "--lattice",
        "Gamma16",
        "--terms",
        "4",
    ]);
    assert_eq!(one.stdout, two.stdout);
}
