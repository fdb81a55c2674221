//! Golden-file harness shared by the golden and acceptance suites.
//!
//! Each `fixtures/NAME.json` holds `{"args": [...], "input_text": string | null}`.
//! The binary runs with those arguments and the text on stdin; its exit code
//! and stdout are compared byte for byte against `golden/NAME.out`. Setting
//! `UPDATE_GOLDEN=1` rewrites the golden files instead.

#![allow(dead_code)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use serde_json::Value;

fn dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(dir("fixtures"))
        .expect("fixtures directory")
        .filter_map(|e| {
            let p = e.ok()?.path();
            if p.extension()? != "json" {
                return None;
            }
            Some(p.file_stem()?.to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
}

/// `exit=N` line followed by stdout.
pub fn run_fixture(name: &str) -> String {
    let text = std::fs::read_to_string(dir("fixtures").join(format!("{name}.json"))).expect("fixture");
    let fx: Value = serde_json::from_str(&text).expect("fixture JSON");
    let args: Vec<&str> = fx["args"]
        .as_array()
        .expect("args array")
        .iter()
        .map(|a| a.as_str().expect("string argument"))
        .collect();
    let mut child = Command::new(env!("CARGO_BIN_EXE_deriv-closure"))
        .args(&args)
        .env_remove("DERIV_CLOSURE_PRECISION")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("spawn binary");
    {
        let mut stdin = child.stdin.take().unwrap();
        if let Some(input) = fx["input_text"].as_str() {
            stdin.write_all(input.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().expect("binary output");
    let code = out.status.code().map_or("signal".to_string(), |c| c.to_string());
    format!("exit={code}\n{}", String::from_utf8_lossy(&out.stdout))
}

/// Names of fixtures whose output differs from the golden file.
pub fn golden_mismatches() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut bad = Vec::new();
    for name in fixture_names() {
        let got = run_fixture(&name);
        let path = dir("golden").join(format!("{name}.out"));
        if update {
            std::fs::write(&path, &got).expect("write golden");
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            _ => bad.push(name),
        }
    }
    bad
}
