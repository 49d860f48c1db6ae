use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lalg"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("LALG_CONFIG")
        .output()
        .expect("spawn lalg")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str, args: &[&str]) {
    let out = lalg(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let want = fs::read_to_string(data("golden").join(name)).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), want, "{name} drifted");
}

#[test]
fn golden_reports() {
    golden("verify_so13.json", &["verify", "so13"]);
    golden("verify_string_lie2.json", &["verify", "file:tests/data/string_lie2.lalg"]);
    golden("entropy_rs2.json", &["entropy", "--rS", "2"]);
    golden("charge_phi.json", &["charge", "--rS", "1", "--r0", "3", "--xi", "phi"]);
}

fn header(text: &str, key: &str) -> Option<String> {
    text.lines()
        .take_while(|l| l.starts_with('#'))
        .find_map(|l| l.trim_start_matches('#').trim().strip_prefix(key).map(|v| v.trim().to_string()))
}

#[test]
fn corpus_exit_codes() {
    let mut seen = 0;
    for entry in fs::read_dir(data("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "lalg") {
            continue;
        }
        let text = fs::read_to_string(&path).unwrap();
        let want: i32 = header(&text, "expect-exit:").expect("expect-exit header").parse().unwrap();
        let target = format!("file:{}", path.display());
        let out = lalg(&["verify", &target, "--trials", "8", "--invariance-trials", "4"]);
        assert_eq!(out.status.code(), Some(want), "{}", path.display());
        if let Some(pos) = header(&text, "expect-error:") {
            let err = String::from_utf8_lossy(&out.stderr);
            assert!(err.contains(&format!(":{pos}")), "{}: {err}", path.display());
        }
        seen += 1;
    }
    assert!(seen >= 20);
}

#[test]
fn repeated_runs_are_identical() {
    let a = lalg(&["verify", "chern-simons", "--trials", "3", "--invariance-trials", "2"]);
    let b = lalg(&["verify", "chern-simons", "--trials", "3", "--invariance-trials", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = lalg(&["verify", "chern-simons", "--trials", "3", "--invariance-trials", "2", "--seed", "7"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn config_from_env() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let report = dir.path().join("report.json");
    fs::write(&cfg, format!("seed = 11\njacobi_trials = 2\noutput = {:?}\n", report.display().to_string())).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_lalg"))
        .args(["verify", "so13"])
        .env("LALG_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(fs::read_to_string(&report).unwrap(), stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(v["checks"][0]["trials"], 2);
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "seed = 1\njacobi_trials = \"many\"\n").unwrap();
    let out = lalg(&["--config", cfg.to_str().unwrap(), "verify", "so13"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2:"));

    assert_eq!(lalg(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(lalg(&["charge", "--rS", "2", "--r0", "1", "--xi", "t"]).status.code(), Some(2));
    assert_eq!(lalg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lalg(&["--help"]).status.code(), Some(0));
}
