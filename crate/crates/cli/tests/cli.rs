//! Runs the binary. Golden files live in `tests/golden`; set
//! `UPDATE_GOLDEN=1` to rewrite them.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn pseries(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseries")).args(args).output().unwrap()
}

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert!(expected == actual, "{name} differs from its golden file:\n{actual}");
}

#[test]
fn bundled_scenarios_match_golden_text() {
    for name in [
        "z",
        "z2",
        "heisenberg",
        "heisenberg-explicit",
        "heisenberg-default",
        "c4",
        "c9",
        "tower",
        "units",
    ] {
        let out = pseries(&["--builtin", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        golden(&format!("{name}.txt"), &String::from_utf8(out.stdout).unwrap());
    }
}

#[test]
fn json_reports_match_golden() {
    for name in ["heisenberg", "units"] {
        let out = pseries(&["--builtin", name, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["passed"], true);
        golden(&format!("{name}.json"), &text);
    }
}

#[test]
fn reports_are_deterministic() {
    let a = pseries(&["--builtin", "heisenberg", "--seed", "99"]);
    let b = pseries(&["--builtin", "heisenberg", "--seed", "99"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().contains("seed: 99"));
}

#[test]
fn overrides_and_out_file() {
    let dir = std::env::temp_dir().join(format!("pseries-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = pseries(&[
        "--builtin",
        "heisenberg",
        "--prime",
        "3",
        "--cutoff",
        "9",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((v["prime"].as_u64(), v["cutoff"].as_u64()), (Some(3), Some(9)));
    assert_eq!(v["lie"]["classification"]["up_to_degree"], 9);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn failing_check_sets_exit_status() {
    let dir = std::env::temp_dir().join(format!("pseries-cli-fail-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z.ini");
    fs::write(
        &path,
        "[scenario]\nprime = 2\ncutoff = 8\nseed = 1\n[group]\nbuiltin = Z\n[schedule]\nnamed = unit\n[checks]\nexponent_p = true\n",
    )
    .unwrap();
    let out = pseries(&["--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL exponent_p: expected true, found false"));
    assert!(text.ends_with("result: FAIL\n"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unusable_input_exits_with_two() {
    let out = pseries(&["--builtin", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = pseries(&["--scenario", "/nonexistent/scenario.ini"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn list_names_every_bundled_scenario() {
    let out = pseries(&["--list"]);
    let names: Vec<String> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect();
    assert!(names.contains(&"units".to_string()) && names.contains(&"heisenberg".to_string()));
}
