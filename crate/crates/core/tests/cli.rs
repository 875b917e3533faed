use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transvect"))
        .args(args)
        .env_remove("TRANSVECT_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_block(text: &str) -> serde_json::Value {
    let start = text.find("--- machine-readable ---").expect("json marker");
    let body = &text[start + "--- machine-readable ---".len()..];
    serde_json::from_str(body.trim()).expect("valid json")
}

#[test]
fn construct_prints_descriptor() {
    let o = run(&[
        "construct",
        "--case",
        "nilpotent",
        "--n",
        "2",
        "--p",
        "2",
        "--q",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for key in ["case=nilpotent", "mu=0", "Omega=", "A=", "chart=darboux"] {
        assert!(text.contains(key), "{key} missing in\n{text}");
    }
}

#[test]
fn verify_geometry_passes_and_reports_schema() {
    let o = run(&[
        "verify-geometry",
        "--case",
        "elliptic",
        "--n",
        "2",
        "--p",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json_block(&stdout(&o));
    assert_eq!(doc["verdict"], "PASS");
    for field in ["command", "config", "entries", "notes", "witnesses"] {
        assert!(doc.get(field).is_some(), "{field}");
    }
    let entry = &doc["entries"][0];
    for field in ["name", "kind", "value", "relation", "threshold", "verdict"] {
        assert!(entry.get(field).is_some(), "{field}");
    }
}

#[test]
fn corrupted_form_exits_one_with_witness() {
    let o = run(&["verify-geometry", "--corrupt-omega", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let doc = json_block(&stdout(&o));
    assert_eq!(doc["verdict"], "FAIL");
    assert!(!doc["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["quaternion-evidence", "--w", "0", "0", "0"],
        vec![
            "construct",
            "--case",
            "nilpotent",
            "--n",
            "2",
            "--p",
            "1",
            "--q",
            "2",
        ],
        vec!["construct", "--case", "elliptic", "--n", "2"],
        vec!["construct", "--n", "1"],
        vec!["construct", "--samples", "0"],
        vec!["construct", "--k", "-1"],
        vec!["no-such-command"],
        vec!["verify-geometry", "--tol", "abc"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bad_tolerance_environment_exits_two() {
    let o = Command::new(env!("CARGO_BIN_EXE_transvect"))
        .args(["transvection"])
        .env("TRANSVECT_TOL", "-3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "find-transitive",
        "--case",
        "nilpotent",
        "--n",
        "2",
        "--p",
        "2",
        "--q",
        "1",
        "--samples",
        "20",
        "--seed",
        "9",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn documented_non_existence_exits_zero() {
    let o = run(&["find-transitive", "--case", "hyperbolic", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json_block(&stdout(&o));
    assert_eq!(doc["verdict"], "DOCUMENTED");
    assert!(stdout(&o).contains("never admits"));
}

#[test]
fn candidate_files_are_checked() {
    let dir = std::env::temp_dir().join(format!("transvect-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(
        &good,
        "# split involution\nB = 1 0 ; 0 -1\nc = 1\na_tilde = 0.3 -0.2\na = 0.5\n",
    )
    .unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "B = 1 1 ; 0 1\nc = 1\n").unwrap();
    let out = dir.join("report.txt");
    let base = [
        "find-transitive",
        "--case",
        "nilpotent",
        "--n",
        "2",
        "--p",
        "2",
        "--q",
        "1",
    ];
    let mut args = base.to_vec();
    let good_s = good.to_str().unwrap();
    let out_s = out.to_str().unwrap();
    args.extend([
        "--candidate-file",
        good_s,
        "--samples",
        "20",
        "--out",
        out_s,
    ]);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), stdout(&o));

    let mut args = base.to_vec();
    args.extend(["--candidate-file", bad.to_str().unwrap(), "--samples", "5"]);
    assert_eq!(run(&args).status.code(), Some(1));

    let mut args = base.to_vec();
    args.extend(["--candidate-file", "/nonexistent/candidate.txt"]);
    assert_eq!(run(&args).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn quaternion_evidence_passes() {
    let o = run(&[
        "quaternion-evidence",
        "--triples",
        "200",
        "--w",
        "0.5",
        "-1",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("orbit_rank_at_base"));
}
