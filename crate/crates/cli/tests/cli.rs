use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

const BIN: &str = env!("CARGO_BIN_EXE_plumb-hf");
const MAZUR_ROWS: &str = include_str!("../../core/tests/data/mazur_reduced_tau.json");

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    assert!(o.status.success(), "failed: {}", stderr(o));
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn mazur_piped_into_hf() {
    let graph = run(&["mazur", "2"], "");
    assert!(graph.status.success());
    let doc = json_of(&run(&["hf", "--d0", "--format", "json"], &stdout(&graph)));
    assert_eq!(doc["schema"], "plumb-hf/1");
    let mut want = vec![json!({"rank": 1, "deg": 0}); 4];
    want.extend(vec![json!({"rank": 1, "deg": 2}); 2]);
    want.extend(vec![json!({"rank": 1, "deg": 10}); 2]);
    assert_eq!(doc["hf"]["summands"], Value::Array(want));
    assert_eq!(doc["hf"]["tower_bottom"], 0);
    assert_eq!(doc["hf"]["grading_mode"], "absolute-d0");
    assert_eq!(doc["rank_red"], 8);
    assert_eq!(doc["casson"]["lambda"], -8);
    for key in ["graph_summary", "validation", "tau_full", "tau_reduced"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn seifert_invariants_of_237() {
    let o = run(&["brieskorn", "2", "3", "7", "--seifert"], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "Σ(2,3,7): e0 = -1, pairs (2,1), (3,1), (7,1)\n");
    let doc = json_of(&run(&["brieskorn", "2", "3", "7", "--seifert", "--format", "json"], ""));
    assert_eq!(doc["seifert"]["e0"], -1);
    assert_eq!(doc["seifert"]["pairs"], json!([[2, 1], [3, 1], [7, 1]]));
}

#[test]
fn path_graph_has_no_distinguished_vertex() {
    let path = "v 1 -1\nv 2 -2\ne 1 2\n";
    let tau = run(&["tau"], path);
    assert_eq!(tau.status.code(), Some(1));
    assert!(stderr(&tau).contains("no distinguished vertex"), "{}", stderr(&tau));
    assert!(tau.stdout.is_empty());

    let v = run(&["validate", "--format", "json"], path);
    assert_eq!(v.status.code(), Some(1));
    assert!(stderr(&v).contains("no distinguished vertex"));
    let doc: Value = serde_json::from_slice(&v.stdout).unwrap();
    assert_eq!(doc["validation"]["distinguished_vertex"], Value::Null);
    assert_eq!(doc["validation"]["determinant"], 1);
}

#[test]
fn invalid_inputs_exit_1() {
    let cases: [(&[&str], &str); 5] = [
        (&["tau"], "v 0 -2\nv 1 -2\ne 0 1\ne 1 0\n"),
        (&["tau"], "v 0 -1\nv 1 -1\ne 0 1\n"),
        (&["hf"], "garbage\n"),
        (&["brieskorn", "2", "4", "5"], ""),
        (&["hf", "--frobnicate"], ""),
    ];
    for (args, input) in cases {
        let o = run(args, input);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn exhausted_budget_exits_2() {
    let o = run(&["tau", "--mazur", "3", "--budget", "50"], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("step budget"), "{}", stderr(&o));
}

#[test]
fn dot_only_for_roots_and_graphs() {
    let root = run(&["root", "--mazur", "1", "--format", "dot"], "");
    assert!(stdout(&root).starts_with("graph graded_root {"));
    let graph = run(&["mazur", "1", "--format", "dot"], "");
    assert!(stdout(&graph).starts_with("graph plumbing {"));
    let hf = run(&["hf", "--mazur", "1", "--format", "dot"], "");
    assert_eq!(hf.status.code(), Some(1));
}

#[test]
fn v0_is_an_input_id() {
    // same star as Σ(2,3,7) with the center renamed 42
    let graph = "v 42 -1\nv 3 -2\nv 4 -3\nv 5 -7\ne 42 3\ne 42 4\ne 42 5\n";
    let doc = json_of(&run(&["hf", "--v0", "42", "--d0", "--format", "json"], graph));
    assert_eq!(doc["graph_summary"]["v0"], 42);
    assert_eq!(doc["tau_reduced"], json!([0, 1, 0]));
    let missing = run(&["hf", "--v0", "0"], graph);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn grading_modes() {
    let rel = json_of(&run(&["hf", "--brieskorn", "2", "3", "7", "--format", "json"], ""));
    assert_eq!(rel["hf"]["grading_mode"], "relative");
    assert!(rel.get("casson").is_none());
    let user = json_of(&run(&["hf", "--brieskorn", "2", "3", "7", "--d", "-2", "--format", "json"], ""));
    assert_eq!(user["hf"]["grading_mode"], "absolute-user(-2)");
    assert_eq!(user["hf"]["tower_bottom"], -2);
    assert_eq!(user["hf"]["summands"], json!([{"rank": 1, "deg": -2}]));
    let both = run(&["hf", "--mazur", "1", "--d0", "--relative"], "");
    assert_eq!(both.status.code(), Some(1));
}

#[test]
fn json_is_deterministic() {
    let args = ["hf", "--mazur", "4", "--format", "json"];
    let a = run(&args, "");
    let b = run(&args, "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn emitted_graphs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for fmt in ["text", "json"] {
        for gen in [&["mazur", "3"][..], &["brieskorn", "2", "5", "7"][..]] {
            let file = dir.path().join(format!("g.{fmt}"));
            let mut args = gen.to_vec();
            args.extend(["--format", fmt, "--out", file.to_str().unwrap()]);
            assert!(run(&args, "").status.success());
            let first = std::fs::read_to_string(&file).unwrap();

            // re-parse and re-emit through stdin
            let again = run(&["validate", "--format", "json", file.to_str().unwrap()], "");
            let doc = json_of(&again);
            assert_eq!(doc["validation"]["pipeline_ready"], true);
            let inline = if gen[0] == "mazur" {
                vec!["hf", "--d0", "--format", "json", "--mazur", gen[1]]
            } else {
                vec!["hf", "--d0", "--format", "json", "--brieskorn", gen[1], gen[2], gen[3]]
            };
            let from_file = json_of(&run(&["hf", "--d0", "--format", "json"], &first));
            let direct = json_of(&run(&inline, ""));
            for key in ["tau_full", "tau_reduced", "hf", "graph_summary"] {
                assert_eq!(from_file[key], direct[key], "{gen:?} {fmt}: {key}");
            }
        }
    }
}

fn write_manifest(dir: &Path, entries: &Value) -> String {
    let path = dir.join("manifest.json");
    std::fs::write(&path, entries.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn batch_reproduces_table() {
    let dir = tempfile::tempdir().unwrap();
    let entries: Vec<Value> = (1..=7).map(|n| json!(["tau", "--mazur", n.to_string()])).collect();
    let manifest = write_manifest(dir.path(), &Value::Array(entries));
    let out = run(&["batch", &manifest], "");
    let doc = json_of(&out);
    let table: Value = serde_json::from_str(MAZUR_ROWS).unwrap();
    let rows: Vec<Value> = doc.as_array().unwrap().iter().map(|e| e["result"]["tau_reduced"].clone()).collect();
    assert_eq!(Value::Array(rows), table);
}

#[test]
fn batch_order_and_isolation() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("path.txt"), "v 1 -1\nv 2 -2\ne 1 2\n").unwrap();
    let entries = vec![
        json!("hf --mazur 3"),
        json!(["tau", "path.txt"]),
        json!(["hf", "--brieskorn", "2", "5", "7", "--d0"]),
        json!(["rank-check", "--family2", "4", "3"]),
        json!(["tau"]),
    ];
    let forward = write_manifest(dir.path(), &Value::Array(entries.clone()));
    let out = run(&["batch", &forward], "");
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let codes: Vec<i64> = doc.as_array().unwrap().iter().map(|e| e["exit_code"].as_i64().unwrap()).collect();
    assert_eq!(codes, vec![0, 1, 0, 0, 1]);
    assert!(doc[1]["error"].as_str().unwrap().contains("no distinguished vertex"));
    assert_eq!(doc[2]["result"]["rank_red"], 2);

    // reversing the manifest reverses the report and nothing else
    let mut reversed = entries;
    reversed.reverse();
    let backward = write_manifest(dir.path(), &Value::Array(reversed));
    let back: Value = serde_json::from_slice(&run(&["batch", &backward], "").stdout).unwrap();
    let mut back = back.as_array().unwrap().clone();
    back.reverse();
    assert_eq!(Value::Array(back), doc);
}

#[test]
fn empty_batch() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_manifest(dir.path(), &json!([]));
    let out = run(&["batch", &manifest], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "[]\n");
}

#[test]
fn casson_harer_grid_batch() {
    let dir = tempfile::tempdir().unwrap();
    let mut entries = Vec::new();
    for p in ["3", "5", "7"] {
        for sign in ["plus", "minus"] {
            entries.push(json!(["rank-check", "--family1", p, "1", "--sign", sign]));
        }
    }
    for (p, s) in [("2", "3"), ("2", "5"), ("4", "1"), ("4", "3")] {
        entries.push(json!(["rank-check", "--family2", p, s]));
    }
    let manifest = write_manifest(dir.path(), &Value::Array(entries));
    let out = run(&["batch", &manifest], "");
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let mut checked = 0;
    for e in doc.as_array().unwrap() {
        if e["args"][3] == "1" && e["args"][2] == "3" && e["args"][5] == "minus" {
            // Σ(3,2,1) is not a valid triple
            assert_eq!(e["exit_code"], 1);
            continue;
        }
        assert_eq!(e["exit_code"], 0, "{e}");
        assert_eq!(e["result"]["rank_check"]["rank_matches"], true, "{e}");
        assert_eq!(e["result"]["rank_check"]["tau_matches"], true, "{e}");
        checked += 1;
    }
    assert_eq!(checked, 9);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn long_tau_is_elided_in_text_only() {
    // G_12 has 15506 tau values
    let text = stdout(&run(&["tau", "--mazur", "12"], ""));
    let line = text.lines().find(|l| l.starts_with("tau (")).unwrap();
    let n: usize = line["tau (".len()..].split(' ').next().unwrap().parse().unwrap();
    assert!(n > 10_000);
    assert!(line.contains("(15486 entries elided"), "{}", &line[..200]);
    let short = stdout(&run(&["tau", "--mazur", "7"], ""));
    assert!(!short.contains("elided"));
    let doc = json_of(&run(&["tau", "--mazur", "12", "--format", "json"], ""));
    assert_eq!(doc["tau_full"].as_array().unwrap().len(), n);
}
