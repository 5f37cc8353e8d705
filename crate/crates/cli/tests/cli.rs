use std::io::Write;
use std::process::{Command, Output};

fn epistab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epistab")).args(args).output().expect("binary runs")
}

fn circuit_file(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("epistab-cli-{}-{name}.stab", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path
}

#[test]
fn same_seed_gives_identical_output() {
    let path = circuit_file("bell", "PREP Z\nGATE H 0\nGATE CNOT 0 1\nMEASURE XX\nMEASURE ZI\nMEASURE ZZ\n");
    let p = path.to_str().unwrap();
    for backend in ["oracle", "full", "compact"] {
        let a = epistab(&["run", p, "--backend", backend, "--shots", "200", "--seed", "5"]);
        let b = epistab(&["run", p, "--backend", backend, "--shots", "200", "--seed", "5"]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
        let text = String::from_utf8(a.stdout).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 201);
        let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(first["shot"], 0);
        assert_eq!(first["backend"], backend);
    }
}

#[test]
fn compare_passes_across_backends() {
    let path = circuit_file("cmp", "PREP Z\nGATE H 1\nMEASURE IX\nMEASURE XX\nGATE S 0\nMEASURE YZ\n");
    let out = epistab(&["compare", path.to_str().unwrap(), "--shots", "10000", "--seed", "7"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);
}

#[test]
fn experiments_pass() {
    for args in [
        &["experiment", "mp", "--backend", "full", "--seed", "1", "--shots", "2000"][..],
        &["experiment", "pbr", "--state", "0", "--backend", "compact", "--shots", "2000"],
        &["experiment", "pbr", "--state", "2", "--alternate", "--shots", "2000"],
        &["experiment", "witness", "--n", "3"],
    ] {
        let out = epistab(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(report["assertions"].as_array().unwrap().iter().all(|a| a["passed"] == true));
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(epistab(&["experiment", "nonsense"]).status.code(), Some(2));
    let bad = circuit_file("bad", "MEASURE ZZ\n");
    let out = epistab(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn full_backend_respects_qubit_cap() {
    let path = circuit_file("cap", "PREP Z\nMEASURE ZZZ\n");
    let p = path.to_str().unwrap();
    let capped = Command::new(env!("CARGO_BIN_EXE_epistab"))
        .args(["run", p, "--backend", "full", "--shots", "1"])
        .env("EPISTAB_MAX_N", "2")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(epistab(&["run", p, "--backend", "compact", "--shots", "1"]).status.success());
}

#[test]
fn dump_compact_has_exact_bit_count() {
    let out = epistab(&["dump-compact", "--state", "+ZII,+IZI,+IIX", "--seed", "4"]);
    assert!(out.status.success());
    let record: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record["bits"], 35);
    assert_eq!(record["hex"].as_str().unwrap().len(), 10);
    assert_eq!(record["rows"].as_array().unwrap().len(), 5);
}
