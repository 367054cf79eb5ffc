use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn cases() -> Vec<PathBuf> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut dirs: Vec<PathBuf> = fs::read_dir(root).unwrap().map(|e| e.unwrap().path()).collect();
    dirs.sort();
    dirs
}

/// Runs the binary with the case's arguments from inside its directory.
fn run(dir: &Path) -> (i32, String) {
    let args = fs::read_to_string(dir.join("args")).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_covlab"))
        .args(args.lines().filter(|l| !l.is_empty()))
        .current_dir(dir)
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn reports_match_byte_for_byte() {
    let dirs = cases();
    assert_eq!(dirs.len(), 10);
    for dir in dirs {
        let (code, stdout) = run(&dir);
        let expected = fs::read_to_string(dir.join("expected.json")).unwrap();
        let exit: i32 = fs::read_to_string(dir.join("exit")).unwrap().trim().parse().unwrap();
        assert_eq!(stdout, expected, "{}", dir.display());
        assert_eq!(code, exit, "{}", dir.display());
    }
}

#[test]
fn error_cases_are_present() {
    let kinds: Vec<String> = cases()
        .iter()
        .filter_map(|d| {
            let v: serde_json::Value =
                serde_json::from_str(&fs::read_to_string(d.join("expected.json")).unwrap()).unwrap();
            v.get("error").map(|e| e["kind"].as_str().unwrap().to_string())
        })
        .collect();
    assert!(kinds.contains(&"ValidationError".to_string()));
    assert!(kinds.contains(&"BudgetExceeded".to_string()));
}

#[test]
fn check_and_verify_reports_recheck() {
    for dir in cases() {
        let report = dir.join("expected.json");
        let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
        let command = v["command"].as_str().unwrap_or("");
        if v.get("error").is_some() || !(command.starts_with("check ") || command.starts_with("verify ")) {
            continue;
        }
        let out = Command::new(env!("CARGO_BIN_EXE_covlab"))
            .args(["recheck", "--report", report.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
}
