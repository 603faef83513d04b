//! Runs every `$ forge ...` line of the README against its golden report.

use std::path::{Path, PathBuf};
use std::process::Command;

use forge::report::strip_timings;
use serde_json::{json, Value};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn doc_commands() -> Vec<Vec<String>> {
    let readme = std::fs::read_to_string(root().join("README.md")).expect("README.md");
    readme
        .lines()
        .filter_map(|l| l.trim().strip_prefix("$ forge "))
        .map(|rest| shlex::split(rest).expect("shell words"))
        .collect()
}

fn slug(args: &[String]) -> String {
    let raw = args.iter().map(|a| a.trim_start_matches('-')).collect::<Vec<_>>().join("_");
    let mut s: String = raw
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '-' })
        .collect();
    while s.contains("--") {
        s = s.replace("--", "-");
    }
    s.trim_matches('-').to_string()
}

fn observe(args: &[String]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_forge")).args(args).current_dir(root()).output().expect("forge runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8 stdout");
    let report = if stdout.trim().is_empty() {
        Value::Null
    } else {
        let mut v: Value = serde_json::from_str(&stdout).expect("report is JSON");
        strip_timings(&mut v);
        v
    };
    json!({
        "args": args,
        "exit": out.status.code(),
        "stderr": String::from_utf8(out.stderr).expect("utf-8 stderr"),
        "report": report,
    })
}

#[test]
fn readme_examples_match_golden_reports() {
    let cmds = doc_commands();
    assert!(cmds.len() >= 10, "README lost its examples");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("FORGE_BLESS").is_some();
    let mut failures = Vec::new();
    for args in cmds {
        let got = observe(&args);
        let path = dir.join(format!("{}.json", slug(&args)));
        if bless {
            std::fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
            continue;
        }
        let want: Value = match std::fs::read_to_string(&path) {
            Ok(t) => serde_json::from_str(&t).expect("golden is JSON"),
            Err(_) => {
                failures.push(format!("missing golden file {}", path.display()));
                continue;
            }
        };
        if got != want {
            failures.push(format!("forge {} differs from {}", args.join(" "), path.display()));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn slugs_are_distinct() {
    let cmds = doc_commands();
    let mut slugs: Vec<String> = cmds.iter().map(|a| slug(a)).collect();
    slugs.sort();
    slugs.dedup();
    assert_eq!(slugs.len(), cmds.len());
}
