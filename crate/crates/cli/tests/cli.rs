use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cfon-cli-tests-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn cfon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfon")).args(args).output().unwrap()
}

fn cfon_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cfon"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const P4: &str = "0 1\n1 2\n2 3\n";

#[test]
fn color_p4_succeeds_and_verifies() {
    let g = scratch("p4.txt", P4);
    let out = cfon(&["color", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("# palette_size "));
    let coloring = scratch("p4.coloring", &text);
    let out = cfon(&["verify", g.to_str().unwrap(), coloring.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("valid"));
}

#[test]
fn color_json_certificate_verifies() {
    let g = scratch("p4j.txt", P4);
    let out = cfon(&["color", g.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["vertex", "color", "witness", "palette_size", "modulator"] {
        assert!(cert.get(key).is_some(), "missing {key}");
    }
    assert!(cert["palette_size"].as_u64().unwrap() <= 3);
    let cert_file = scratch("p4.json", &stdout(&out));
    let out = cfon(&["verify", g.to_str().unwrap(), cert_file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn color_reads_stdin() {
    let out = cfon_stdin(&["color", "-"], "0 1\n1 2\n2 0\n");
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("# palette_size 3"));
}

#[test]
fn isolated_vertex_is_an_input_error() {
    let out = cfon_stdin(&["color", "-"], "p edge 3 1\n0 1\n");
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).contains("isolated"));
}

#[test]
fn invalid_modulator_names_the_triple() {
    let g = scratch("p4m.txt", P4);
    let m = scratch("empty.mod", "\n");
    let out = cfon(&["color", g.to_str().unwrap(), "--modulator", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains('0') && err.contains('1') && err.contains('2'), "{err}");
}

#[test]
fn given_modulator_is_used() {
    let g = scratch("p4g.txt", P4);
    let m = scratch("one.mod", "1\n");
    let out = cfon(&["color", g.to_str().unwrap(), "--modulator", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("# modulator 1\n"));
}

#[test]
fn verify_rejects_bad_coloring() {
    let g = scratch("k3.txt", "0 1\n1 2\n0 2\n");
    let c = scratch("k3.bad", "0 1 -\n1 1 -\n2 1 -\n");
    let out = cfon(&["verify", g.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("vertex")).count(), 3);
}

#[test]
fn chi_of_triangle() {
    let g = scratch("k3c.txt", "0 1\n1 2\n0 2\n");
    let out = cfon(&["chi", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "3");
    let out = cfon(&["chi", g.to_str().unwrap(), "--kmax", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dc_modes() {
    let g = scratch("p4d.txt", P4);
    let out = cfon(&["dc", g.to_str().unwrap(), "--exact", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["size"], 1);
    let out = cfon(&["dc", g.to_str().unwrap(), "--greedy"]);
    assert_eq!(out.status.code(), Some(0));
    let out = cfon(&["dc", g.to_str().unwrap(), "--exact", "--greedy"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cfon(&["dc", g.to_str().unwrap(), "--exact", "--kmax", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_lb_writes_graph_and_sidecar() {
    let sidecar = scratch("lb2.json", "");
    let out = cfon(&["gen-lb", "2", "--sidecar", sidecar.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let edges = stdout(&out);
    let mut vertices = std::collections::BTreeSet::new();
    assert!(edges.starts_with("p edge 15 "));
    for line in edges.lines().filter(|l| !l.starts_with('p')) {
        for tok in line.split_whitespace() {
            vertices.insert(tok.to_string());
        }
    }
    assert_eq!(vertices.len(), 15);
    let labels: serde_json::Value = serde_json::from_str(&fs::read_to_string(&sidecar).unwrap()).unwrap();
    assert!(labels.is_object());

    let g = scratch("lb2.txt", &edges);
    let out = cfon(&["color", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("# palette_size 3"));

    assert_eq!(cfon(&["gen-lb", "0"]).status.code(), Some(2));
}

#[test]
fn stress_runs_clean() {
    let out = cfon(&["stress", "--count", "100", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("failures 0"));
    let out = cfon(&["stress", "--count", "20", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["instances"], 20);
}

#[test]
fn missing_file_is_an_input_error() {
    let out = cfon(&["color", "/nonexistent/graph.txt"]);
    assert_eq!(out.status.code(), Some(2));
}
