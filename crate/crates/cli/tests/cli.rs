use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn wreathkit(args: &[&str], stdin: Option<&str>, dir: &Path) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_wreathkit"))
        .args(args)
        .current_dir(dir)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn pentagon_wreath_f_vector_through_files_and_pipes() {
    let dir = tempfile::tempdir().unwrap();
    assert!(wreathkit(&["gen", "cycle", "5", "-o", "c5.cx"], None, dir.path()).status.success());
    let w = wreathkit(&["wreath", "-d", "1", "-i", "c5.cx"], None, dir.path());
    assert!(w.status.success());
    let f = wreathkit(&["analyze", "fvector"], Some(&stdout(&w)), dir.path());
    assert_eq!(stdout(&f), "10 45 120 205 222 140 40\n");
    let j = wreathkit(&["analyze", "fvector", "--json"], Some(&stdout(&w)), dir.path());
    assert_eq!(stdout(&j).trim(), r#"{"fvector":[10,45,120,205,222,140,40]}"#);
}

#[test]
fn collapsible_path_writes_a_matching_that_lifts() {
    let dir = tempfile::tempdir().unwrap();
    let path = stdout(&wreathkit(&["gen", "path", "4"], None, dir.path()));
    let c = wreathkit(&["check", "collapsible", "--certificate", "m.txt"], Some(&path), dir.path());
    assert_eq!(c.status.code(), Some(0));
    let m = fs::read_to_string(dir.path().join("m.txt")).unwrap();
    assert!(m.contains("-> EMPTYFACET"));
    let lifted = wreathkit(&["lift", "morse", "-v", "4", "--certificate", "m.txt", "-o", "lifted.txt"], Some(&path), dir.path());
    assert_eq!(lifted.status.code(), Some(0));
    assert_eq!(fs::read_to_string(dir.path().join("lifted.txt")).unwrap().lines().count(), 10);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = stdout(&wreathkit(&["gen", "cycle", "5"], None, dir.path()));
    assert_eq!(wreathkit(&["check", "nonevasive"], Some(&c5), dir.path()).status.code(), Some(1));
    assert_eq!(wreathkit(&["check", "shellable"], Some(&c5), dir.path()).status.code(), Some(0));
    let oct = stdout(&wreathkit(&["gen", "cross", "3"], None, dir.path()));
    let unknown = wreathkit(&["check", "vd", "--budget", "1"], Some(&oct), dir.path());
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stdout(&unknown).contains("unknown"));
    assert_eq!(wreathkit(&["frobnicate"], None, dir.path()).status.code(), Some(3));
    assert_eq!(wreathkit(&["analyze", "fvector"], Some("1 2\n1\n"), dir.path()).status.code(), Some(3));
    assert_eq!(wreathkit(&["--prune", "analyze", "fvector"], Some("1 2\n1\n"), dir.path()).status.code(), Some(0));
    assert_eq!(wreathkit(&["susp", "-v", "9"], Some(&c5), dir.path()).status.code(), Some(3));
    assert_eq!(wreathkit(&["gen", "cycle", "2"], None, dir.path()).status.code(), Some(3));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let c = stdout(&wreathkit(&["gen", "cyclic", "4", "7"], None, dir.path()));
    let runs: Vec<Vec<u8>> = (0..2).map(|_| wreathkit(&["wreath", "-d", "2"], Some(&c), dir.path()).stdout).collect();
    assert_eq!(runs[0], runs[1]);
    let a: Vec<Vec<u8>> = (0..2).map(|_| wreathkit(&["sym", "aut", "--threads", "2"], Some(&c), dir.path()).stdout).collect();
    assert_eq!(a[0], a[1]);
}

#[test]
fn suspension_join_and_homology() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = stdout(&wreathkit(&["gen", "cycle", "5"], None, dir.path()));
    let s = stdout(&wreathkit(&["susp", "-v", "1"], Some(&c5), dir.path()));
    let h = wreathkit(&["analyze", "homology"], Some(&s), dir.path());
    assert_eq!(stdout(&h), "H~_0 = 0\nH~_1 = 0\nH~_2 = Z\n");
    let r = stdout(&wreathkit(&["rjoin", "-d", "2", "-v", "1"], Some(&c5), dir.path()));
    assert_eq!(stdout(&wreathkit(&["analyze", "neighborly"], Some(&r), dir.path())), "1\n");
    fs::write(dir.path().join("s0.cx"), "a\nb\n").unwrap();
    let j = stdout(&wreathkit(&["join", "-i", "s0.cx", "-i", "s0.cx"], None, dir.path()));
    assert_eq!(stdout(&wreathkit(&["analyze", "pseudomanifold"], Some(&j), dir.path())), "closed\n");
    assert_eq!(stdout(&wreathkit(&["analyze", "hirsch"], Some(&c5), dir.path())), "1\n");
    assert_eq!(stdout(&wreathkit(&["analyze", "euler", "--json"], Some(&c5), dir.path())).trim(), r#"{"euler":0,"reduced_euler":-1}"#);
}

#[test]
fn symmetry_commands() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = stdout(&wreathkit(&["gen", "cycle", "5"], None, dir.path()));
    assert!(stdout(&wreathkit(&["sym", "aut"], Some(&c5), dir.path())).starts_with("order 10\n"));
    assert_eq!(wreathkit(&["sym", "transitive"], Some(&c5), dir.path()).status.code(), Some(0));
    assert_eq!(wreathkit(&["sym", "transitive"], Some("1 2\n2 3\n"), dir.path()).status.code(), Some(1));
    assert!(stdout(&wreathkit(&["sym", "wreathgroup", "-d", "1"], Some(&c5), dir.path())).starts_with("order 320\n"));
}

#[test]
fn polytope_commands() {
    let dir = tempfile::tempdir().unwrap();
    let seg = "POLYTOPE 1 2\na: -1\nb: 1\nFACET a | normal: 1\nFACET b | normal: -1\n";
    fs::write(dir.path().join("seg.poly"), seg).unwrap();
    assert_eq!(wreathkit(&["poly", "verify", "-i", "seg.poly"], None, dir.path()).status.code(), Some(0));
    let w = wreathkit(&["poly", "wreath", "-i", "seg.poly", "-i", "seg.poly", "-o", "tet.poly"], None, dir.path());
    assert_eq!(w.status.code(), Some(0));
    let tet = fs::read_to_string(dir.path().join("tet.poly")).unwrap();
    assert!(tet.starts_with("POLYTOPE 3 4\na^1: -1 0 -1\nb^1: 1 0 -1\na^2: 0 -1 1\nb^2: 0 1 1\n"));
    assert_eq!(tet.matches("FACET").count(), 4);
    assert_eq!(wreathkit(&["poly", "verify", "-i", "tet.poly"], None, dir.path()).status.code(), Some(0));
    // perturb the last coordinate of the last normal
    let mut lines: Vec<String> = tet.lines().map(String::from).collect();
    let last = lines.pop().unwrap();
    lines.push(format!("{} 5", last.rsplit_once(' ').unwrap().0));
    let broken = lines.join("\n") + "\n";
    fs::write(dir.path().join("bad.poly"), broken).unwrap();
    let v = wreathkit(&["poly", "verify", "-i", "bad.poly", "--json"], None, dir.path());
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("\"facet\":3"));
    let dw = wreathkit(&["poly", "dualwedge", "-i", "seg.poly", "-v", "a", "-o", "tri.poly"], None, dir.path());
    assert_eq!(dw.status.code(), Some(0));
    let tri = fs::read_to_string(dir.path().join("tri.poly")).unwrap();
    assert!(tri.starts_with("POLYTOPE 2 3\na': -1 1\na'': -1 -1\nb: 1 0\n"));
    assert_eq!(wreathkit(&["poly", "verify", "-i", "tri.poly"], None, dir.path()).status.code(), Some(0));
    assert_eq!(wreathkit(&["poly", "verify", "-i", "missing.poly"], None, dir.path()).status.code(), Some(3));
}

#[test]
fn suite_prints_fourteen_passing_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out = wreathkit(&["suite"], None, dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 14);
}
