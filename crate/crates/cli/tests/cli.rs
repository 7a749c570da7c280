use std::io::Write;
use std::process::{Command, Output, Stdio};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::NamedTempFile;
use vcblocks::random::{random_digraph, random_strongly_connected};
use vcblocks::Digraph;

const BI3: &str = "3 6\n0 1\n1 0\n1 2\n2 1\n0 2\n2 0\n";
const PATH3: &str = "3 4\n0 1\n1 0\n1 2\n2 1\n";

fn star(k: usize) -> String {
    let mut s = format!("{} {}\n", k + 1, 2 * k);
    for v in 1..=k {
        s += &format!("0 {v}\n{v} 0\n");
    }
    s
}

fn edge_list(g: &Digraph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        s += &format!("{u} {v}\n");
    }
    s
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vcblocks"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str], stdin: &str) -> String {
    let out = run(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn star_blocks() {
    assert_eq!(stdout(&["blocks"], &star(4)), "0 1\n0 2\n0 3\n0 4\n");
}

#[test]
fn path_has_no_2vc_blocks() {
    assert_eq!(stdout(&["blocks", "--mode", "2vcb"], PATH3), "");
    assert_eq!(stdout(&["blocks", "--mode", "vrb"], PATH3), "0 1\n1 2\n");
    assert_eq!(stdout(&["blocks", "--mode", "2ecb"], BI3), "0 1 2\n");
}

#[test]
fn algorithms_print_identical_output() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..6 {
        // some inputs are strongly connected, some split into many components
        let g =
            if i % 2 == 0 { random_strongly_connected(&mut rng, 40, 90) } else { random_digraph(&mut rng, 40, 100) };
        let text = edge_list(&g);
        for mode in ["vrb", "2vcb"] {
            let fast = stdout(&["blocks", "--mode", mode], &text);
            let simple = stdout(&["blocks", "--mode", mode, "--algo", "simple"], &text);
            assert_eq!(fast, simple);
            assert_eq!(fast, stdout(&["blocks", "--mode", mode], &text));
        }
    }
}

#[test]
fn json_lists_components_in_order() {
    let text = "5 6\n0 1\n1 0\n1 2\n3 4\n4 3\n2 3\n";
    let out = stdout(&["blocks", "--json"], text);
    assert_eq!(out, "[{\"scc\":0,\"blocks\":[[0,1]]},{\"scc\":1,\"blocks\":[]},{\"scc\":2,\"blocks\":[[3,4]]}]\n");
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 3);
}

#[test]
fn stats_go_to_stderr() {
    let out = run(&["blocks", "--stats"], BI3);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0 1 2\n");
    assert!(String::from_utf8(out.stderr).unwrap().contains("aux1: graphs=1"));
}

#[test]
fn query_examples() {
    assert_eq!(stdout(&["query", "0", "1"], BI3), "2vc\n");
    assert_eq!(stdout(&["query", "0", "1"], PATH3), "vr-only bridge (0,1)\n");
    assert_eq!(stdout(&["query", "1", "2"], &star(3)), "separated vertex 0\n");
    assert_eq!(stdout(&["query", "0", "2"], "3 3\n0 1\n1 0\n1 2\n"), "different-scc\n");
}

#[test]
fn witnesses_are_checked() {
    assert_eq!(stdout(&["witness", "1", "2", "--check"], &star(3)), "separated vertex 0 (checked)\n");
    assert_eq!(stdout(&["witness", "0", "1", "--check"], PATH3), "vr-only bridge (0,1) (checked)\n");
    assert_eq!(stdout(&["witness", "0", "1", "--check"], BI3), "2vc\n");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g = random_strongly_connected(&mut rng, 20, 35);
    let text = edge_list(&g);
    for (u, w) in [(0, 1), (3, 7), (19, 2), (5, 6)] {
        let line = stdout(&["witness", &u.to_string(), &w.to_string(), "--check"], &text);
        assert!(line == "2vc\n" || line.ends_with("(checked)\n"), "{line}");
    }
}

#[test]
fn cut_sets() {
    assert_eq!(stdout(&["saps"], PATH3), "1\n");
    assert_eq!(stdout(&["bridges"], PATH3), "0 1\n1 0\n1 2\n2 1\n");
    assert_eq!(stdout(&["saps"], BI3), "");
}

#[test]
fn certificate_round_trip() {
    let g = file(BI3);
    let path = g.path().to_str().unwrap();
    let cert = file(&stdout(&["-i", path, "certify"], ""));
    let cpath = cert.path().to_str().unwrap();
    assert_eq!(stdout(&["-i", path, "verify-certificate", "--certificate", cpath], ""), "OK ratio=2.0\n");
}

#[test]
fn broken_certificate_is_rejected() {
    let g = file(PATH3);
    let path = g.path().to_str().unwrap();
    let cert_text = stdout(&["-i", path, "certify"], "");
    assert_eq!(cert_text, PATH3);
    let broken = file("3 3\n1 0\n1 2\n2 1\n");
    let out = run(&["-i", path, "verify-certificate", "--certificate", broken.path().to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("FAIL"));
}

#[test]
fn random_certificate_is_sparse() {
    let mut rng = ChaCha8Rng::seed_from_u64(64);
    let g = file(&edge_list(&random_strongly_connected(&mut rng, 64, 512)));
    let path = g.path().to_str().unwrap();
    let cert = file(&stdout(&["-i", path, "certify"], ""));
    let line = stdout(&["-i", path, "verify-certificate", "--certificate", cert.path().to_str().unwrap()], "");
    let ratio: f64 = line.trim().strip_prefix("OK ratio=").unwrap().parse().unwrap();
    assert!(ratio <= 5.0, "{line}");
}

#[test]
fn dimacs_input() {
    let text = "c bidirected triangle\np sp 3 6\na 1 2\na 2 1\na 2 3\na 3 2\na 1 3\na 3 1\n";
    assert_eq!(stdout(&["--format", "dimacs", "blocks"], text), "0 1 2\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["blocks", "--mode", "nope"], BI3).status.code(), Some(1));
    assert_eq!(run(&["query", "0", "9"], BI3).status.code(), Some(1));
    assert_eq!(run(&["query", "1", "1"], BI3).status.code(), Some(1));
    assert_eq!(run(&["blocks"], "3 2\n0 1\n").status.code(), Some(2));
    assert_eq!(run(&["blocks"], "3 1\n0 7\n").status.code(), Some(2));
    assert_eq!(run(&["-i", "/nonexistent/graph", "blocks"], "").status.code(), Some(2));
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
}

#[test]
fn self_loops_are_dropped() {
    assert_eq!(stdout(&["blocks"], "2 3\n0 0\n0 1\n1 0\n"), "0 1\n");
}

#[test]
fn hidden_oracle_matches_blocks() {
    assert_eq!(stdout(&["oracle", "--relation", "vr"], PATH3), "0 1\n1 2\n");
    assert_eq!(stdout(&["oracle", "--relation", "2v"], PATH3), "");
    assert_eq!(stdout(&["oracle", "--relation", "2e"], BI3), "0 1\n0 2\n1 2\n");
}

#[test]
fn bench_prints_a_table() {
    let out = stdout(&["bench", "--min-log-n", "4", "--max-log-n", "5", "--runs", "1", "--simple"], "");
    assert_eq!(out.lines().count(), 3);
    assert!(out.starts_with("log_n n m fast_ms simple_ms\n4 16 128 "));
}
