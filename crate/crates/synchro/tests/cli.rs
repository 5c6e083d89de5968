use std::path::Path;
use std::process::{Command, Output};

fn synchro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_synchro"))
        .args(args)
        .env_remove("SYNCHRO_DATA")
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let manifest = dir.path().join("m.json");
    let run = || {
        let out = synchro(&[
            "--json", path(&json), "--manifest", path(&manifest),
            "witness", "random", "--count", "5", "--max-order", "24",
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let m = std::fs::read_to_string(&manifest).unwrap();
        (out.stdout, std::fs::read(&json).unwrap(), m)
    };
    let (a_out, a_json, a_man) = run();
    let (b_out, b_json, b_man) = run();
    assert_eq!(a_out, b_out);
    assert_eq!(a_json, b_json);
    assert_eq!(a_man, b_man);
    assert!(a_man.contains("\"seed\": 24301"));
}

#[test]
fn seed_changes_random_cases() {
    let a = synchro(&["--seed", "1", "witness", "random", "--count", "5", "--max-order", "24"]);
    let b = synchro(&["--seed", "2", "witness", "random", "--count", "5", "--max-order", "24"]);
    assert_eq!(a.status.code(), Some(0));
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(synchro(&["complete-mapping"]).status.code(), Some(2));
    assert_eq!(synchro(&["complete-mapping", "--group", "no such group"]).status.code(), Some(2));
    assert_eq!(synchro(&["diagonal", "--group", "S3", "--n", "1", "--color-even"]).status.code(), Some(2));
    assert_eq!(synchro(&["--help"]).status.code(), Some(0));
}

#[test]
fn missing_data_exits_3() {
    let empty = tempfile::tempdir().unwrap();
    let out = synchro(&["--data-dir", path(empty.path()), "matrep", "--verify-standard"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sha256"));
}

#[test]
fn failed_verification_exits_1() {
    // A = B = {0, 1} meets itself twice under the identity.
    let out = synchro(&["witness", "sep", "--group", "Z4", "--A", "[0,1]", "--B", "[0,1]"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn emitted_mapping_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let phi = dir.path().join("phi.json");
    let out = synchro(&["complete-mapping", "--group", "A4", "--emit-mapping", path(&phi)]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&phi).unwrap()).unwrap();
    let mapping: Vec<usize> = serde_json::from_value(v.get("phi").cloned().unwrap_or(v)).unwrap();
    let mut sorted = mapping.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (0..12).collect::<Vec<_>>());

    let w = dir.path().join("w.json");
    let json = dir.path().join("r.json");
    let out = synchro(&[
        "--json", path(&json), "diagonal", "--group", "A4", "--n", "3", "--color-odd",
        "--phi", path(&phi), "--verify", "--emit-witness", path(&w),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("proper, 12 colors"));
    let r: serde_json::Value = serde_json::from_slice(&std::fs::read(&json).unwrap()).unwrap();
    assert!(r.get("reproduces").is_some());
    assert_eq!(r["ok"], serde_json::Value::Bool(true));
    assert!(w.is_file());
}
