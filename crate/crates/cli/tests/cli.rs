use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ghw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghw"))
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn decompose_then_validate() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write(
        dir.path(),
        "chain.hg",
        "e1(a,b)\ne2(b,c)\ne3(c,d)\ne4(d,e)\ne5(e,f)\ne6(f,g)\n",
    );
    let td = dir.path().join("chain.td");
    let td = td.to_str().unwrap();
    let o = ghw(&["decompose", "--k", "1", &hg, "-o", td]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(fs::read_to_string(td).unwrap().starts_with("s ghtd "));
    let o = ghw(&["validate", &hg, td]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("valid width"));
}

#[test]
fn tampered_decomposition_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write(dir.path(), "h.hg", "e1(a,b)\ne2(b,c)\n");
    let td = write(
        dir.path(),
        "h.td",
        "s ghtd 2 1 3 2\nb 1 a b\nc 1 e1\nb 2 c\nc 2 e2\n1 2\n",
    );
    let o = ghw(&["validate", &hg, &td]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("violation"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.hg", "e1()\n");
    let o = ghw(&["stats", &bad]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no vertices"));
    assert_eq!(code(&ghw(&["stats", "/nonexistent/file.hg"])), 2);
    assert_eq!(code(&ghw(&["gen-shyg", "--k", "2", "--d", "1"])), 2);
    assert_eq!(
        code(&ghw(&[
            "gen", "--n", "3", "--m", "2", "--d", "0", "--seed", "1"
        ])),
        2
    );
    assert_eq!(code(&ghw(&["decompose", "--k", "0", &bad])), 2);
    assert_eq!(code(&ghw(&["frobnicate"])), 2);
}

#[test]
fn declared_d_below_actual_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write(dir.path(), "h.hg", "e1(a,b,c)\ne2(a,b,d)\n");
    let o = ghw(&["decompose", "--k", "1", "--d", "1", &hg]);
    assert_eq!(code(&o), 2);
}

#[test]
fn cycle_is_rejected_for_k1() {
    let dir = tempfile::tempdir().unwrap();
    let n = 80;
    let text: String = (0..n)
        .map(|i| format!("e{i:03}(c{i:03},c{:03})\n", (i + 1) % n))
        .collect();
    let hg = write(dir.path(), "cycle.hg", &text);
    let o = ghw(&["decompose", "--k", "1", "--emit-stats", &hg]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("ghw > 1"));
    assert!(err.contains("compress_invocations"));
}

#[test]
fn generators_and_stats() {
    let a = stdout(&ghw(&[
        "gen", "--n", "10", "--m", "7", "--d", "2", "--seed", "5",
    ]));
    let b = stdout(&ghw(&[
        "gen", "--n", "10", "--m", "7", "--d", "2", "--seed", "5",
    ]));
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 7);

    let dir = tempfile::tempdir().unwrap();
    let shyg = stdout(&ghw(&["gen-shyg", "--k", "1", "--d", "1"]));
    let hg = write(dir.path(), "shyg.hg", &shyg);
    let s = stdout(&ghw(&["stats", &hg]));
    assert!(s.contains("vertices 55"));
    assert!(s.contains("edges 87"));
    assert!(s.contains("max_intersection 1"));
    assert!(s.contains("acyclic false"));
}

#[test]
fn exact_verb() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.hg", "e1(a,b)\ne2(b,c)\ne3(c,a)\n");
    assert_eq!(
        stdout(&ghw(&["exact", "--kmax", "3", &tri])).trim(),
        "ghw 2"
    );
    assert_eq!(
        stdout(&ghw(&["exact", "--kmax", "1", &tri])).trim(),
        "ghw > 1"
    );
}
