use std::process::{Command, Output};

fn heckelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckelab")).args(args).env_remove("HECKELAB_JOBS").output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn passing_runs_exit_zero() {
    for args in [
        &["verify", "hecke", "--n", "3", "--e", "2"][..],
        &["verify", "deformation", "--n", "3", "--level", "2", "--e", "2", "--charge", "5,0"],
        &["verify", "klr", "--n", "3", "--mode", "degenerate-p", "--e", "3"],
        &["verify", "nilpotency", "--n", "3", "--e", "3"],
        &["gram", "--n", "3", "--variant", "degenerate-t1"],
        &["psi-basis", "--n", "2", "--level", "2", "--e", "2"],
        &["suite", "--n", "2", "--mode", "linear-quiver"],
    ] {
        let out = heckelab(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["pass"], true);
    }
}

#[test]
fn config_errors_exit_two() {
    for args in [
        &["verify", "klr", "--mode", "generic"][..],
        &["verify", "hecke", "--level", "2", "--charge", "0"],
        &["verify", "hecke", "--mode", "linear-quiver", "--e", "3"],
        &["suite", "--suite", "no-such-suite"],
        &["gram", "--mode", "bogus"],
        &["verify", "hecke", "--jobs", "0"],
    ] {
        let out = heckelab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn empty_algebra() {
    let out = heckelab(&["suite", "--n", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["config"]["n"], 0);
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let a = heckelab(&["suite", "--n", "3", "--level", "2", "--e", "2", "--jobs", "1"]);
    let b = heckelab(&["suite", "--n", "3", "--level", "2", "--e", "2", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_and_csv_files() {
    let dir = std::env::temp_dir().join(format!("heckelab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("r.json");
    let csv = dir.join("g.csv");
    let out = heckelab(&[
        "gram", "--n", "4", "--e", "3", "--out", report.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert!(!String::from_utf8_lossy(&out.stdout).trim().is_empty());
    let table = std::fs::read_to_string(&csv).unwrap();
    // five partitions of 4 plus the header
    assert_eq!(table.lines().count(), 6);
    std::fs::remove_dir_all(&dir).unwrap();
}
