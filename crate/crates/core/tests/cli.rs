use serde_json::Value;
use std::process::{Command, Output};

fn schurlab(args: &[&str], cache: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_schurlab"));
    cmd.args(args).env_remove("SCHURLAB_CACHE");
    if let Some(dir) = cache {
        cmd.env("SCHURLAB_CACHE", dir);
    }
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn scan_of_z6_is_dci() {
    let out = schurlab(&["ci", "scan", "--group", "Z6"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dci"], true);
    assert!(v["verdicts"].as_array().unwrap().iter().all(|x| x["ci"] == true));
}

#[test]
fn clash_gap_at_three_five() {
    let out = schurlab(&["rat", "analyze", "--p", "3", "--q", "5", "--matrix", "M2"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["gap"], 26);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["group", "info", "--group", "Z0"],
        vec!["rat", "search", "--p", "5", "--q", "7"],
        vec!["rat", "analyze", "--p", "4", "--q", "5", "--matrix", "M1"],
        vec!["sring", "enumerate", "--group", "Z64"],
        vec!["lemma", "run"],
    ] {
        let out = schurlab(&args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn output_file_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("subgroups.json");
    let out = schurlab(&["group", "subgroups", "--group", "C3xC3", "--out", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["count"], 6);
    let table = schurlab(&["group", "subgroups", "--group", "C3xC3", "--table"], None);
    let text = String::from_utf8(table.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("order\tgenerators"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn cache_hits_and_corrupt_entries() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["sring", "enumerate", "--group", "C2xC2"];
    let first = schurlab(&args, Some(dir.path()));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    let record: Value = serde_json::from_str(&std::fs::read_to_string(&entries[0]).unwrap()).unwrap();
    assert_eq!(record["command"], "sring enumerate");
    assert_eq!(record["verdict"]["count"], 5);

    let second = schurlab(&args, Some(dir.path()));
    assert_eq!(first.stdout, second.stdout);
    assert!(second.stderr.is_empty());

    std::fs::write(&entries[0], "{ truncated").unwrap();
    let third = schurlab(&args, Some(dir.path()));
    assert_eq!(third.status.code(), Some(0));
    assert_eq!(third.stdout, first.stdout);
    assert!(String::from_utf8(third.stderr).unwrap().contains("warning"));
    let repaired: Value = serde_json::from_str(&std::fs::read_to_string(&entries[0]).unwrap()).unwrap();
    assert_eq!(repaired["verdict"]["count"], 5);
}

#[test]
fn failing_lemma_exits_with_one() {
    // Z5 has prime order, so its S-rings of rank 3 and 5 are primitive
    let out = schurlab(&["lemma", "run", "--id", "PropW", "--groups", "Z6,Z5"], None);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["reports"][0]["failed"], 2);
    let ok = schurlab(&["lemma", "run", "--id", "PropW", "--groups", "Z6,Z10"], None);
    assert_eq!(ok.status.code(), Some(0));
}
