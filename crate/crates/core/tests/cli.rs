use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_matroid-iso"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("matroid-iso-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn put(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    let mut c = bin();
    for a in args {
        c.arg(a);
    }
    c.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const K4: &str = "graph 4 6\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n";
const C4: &str = "graph 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n";
const P4: &str = "graph 5 4\ne 0 1\ne 1 2\ne 2 3\ne 3 4\n";

#[test]
fn gmi_verdicts_and_exit_codes() {
    let d = scratch("gmi");
    let k4 = put(&d, "k4.g", K4);
    let c4 = put(&d, "c4.g", C4);
    let p4 = put(&d, "p4.g", P4);
    let w = d.join("w.perm");
    let o = run(&[&"gmi", &k4, &k4, &"--witness", &w, &"--stats"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("ISO\n"));
    assert!(out.lines().nth(1).unwrap().starts_with("stats iterations="));
    assert!(fs::read_to_string(&w).unwrap().starts_with("perm 6"));

    let o = run(&[&"gmi", &c4, &p4]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NONISO\n");

    let o = run(&[&"gmi", &k4, &k4, &"--strict"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn malformed_input_reports_line_and_exits_2() {
    let d = scratch("bad");
    let bad = put(&d, "bad.g", "graph 3 2\ne 0 1\ne 1 7\n");
    let k4 = put(&d, "k4.g", K4);
    let o = run(&[&"gmi", &bad, &k4]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let o = run(&[&"gmi", &d.join("missing.g"), &k4]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn every_permutation_of_c4_is_a_member() {
    let d = scratch("aut");
    let c4 = put(&d, "c4.g", C4);
    let mut p = vec![0, 1, 2, 3];
    let mut count = 0;
    loop {
        let perm = put(&d, "p.perm", &format!("perm 4\n{} {} {} {}\n", p[0], p[1], p[2], p[3]));
        let o = run(&[&"aut-member", &c4, &perm]);
        assert_eq!(o.status.code(), Some(0), "{p:?}");
        count += 1;
        if !next_perm(&mut p) {
            break;
        }
    }
    assert_eq!(count, 24);
    let o = run(&[&"aut", &c4]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("order 24\n"));
}

fn next_perm(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[test]
fn non_member_exits_1() {
    let d = scratch("nonmember");
    let p4 = put(&d, "star.g", "graph 4 4\ne 0 1\ne 1 2\ne 2 0\ne 0 3\n");
    let perm = put(&d, "p.perm", "perm 4\n3 1 2 0\n");
    let o = run(&[&"aut-member", &p4, &perm]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NONMEMBER\n");
}

#[test]
fn generated_whitney_pair_is_accepted() {
    let d = scratch("gen");
    let prefix = d.join("wp");
    let o = run(&[&"gen", &"whitney-pair", &"--n", &"10", &"--ops", &"6", &"--seed", &"1", &"--out", &prefix]);
    assert_eq!(o.status.code(), Some(0));
    let manifest = fs::read_to_string(d.join("wp.manifest")).unwrap();
    assert!(manifest.contains("two_isomorphic=true"));
    assert_eq!(fs::read_to_string(d.join("wp.log")).unwrap().lines().count(), 6);
    let o = run(&[&"gmi", &d.join("wp.1.g"), &d.join("wp.2.g")]);
    assert_eq!(o.status.code(), Some(0));

    let again = d.join("again");
    run(&[&"gen", &"whitney-pair", &"--n", &"10", &"--ops", &"6", &"--seed", &"1", &"--out", &again]);
    assert_eq!(fs::read(d.join("wp.2.g")).unwrap(), fs::read(d.join("again.2.g")).unwrap());
}

#[test]
fn generated_modk_gadget_and_uniform_rep() {
    let d = scratch("gen2");
    let x = d.join("x3");
    assert_eq!(run(&[&"gen", &"modk-gadget", &"--k", &"3", &"--out", &x]).status.code(), Some(0));
    assert!(fs::read_to_string(d.join("x3.g")).unwrap().starts_with("graph 18 27\n"));
    let u = d.join("u");
    assert_eq!(
        run(&[&"gen", &"uniform-rep", &"--k", &"2", &"--m", &"4", &"--p", &"5", &"--out", &u]).status.code(),
        Some(0)
    );
    assert!(fs::read_to_string(d.join("u.manifest")).unwrap().contains("uniform=true"));
    let mat = d.join("u.mat");
    assert_eq!(run(&[&"lmi", &mat, &mat]).status.code(), Some(0));
    assert_eq!(run(&[&"mi", &mat, &mat]).status.code(), Some(0));
}

#[test]
fn reductions_emit_instances_with_the_right_verdict() {
    let d = scratch("reduce");
    let c4 = put(&d, "c4.g", C4);
    let star = put(&d, "paw.g", "graph 4 4\ne 0 1\ne 1 2\ne 2 0\ne 0 3\n");
    let prefix = d.join("gl");
    assert_eq!(run(&[&"reduce", &"gi-lmi", &c4, &star, &"--out", &prefix]).status.code(), Some(0));
    assert!(fs::read_to_string(d.join("gl.1.mat")).unwrap().starts_with("matrix 3 "));

    let u = put(&d, "u.mat", "matrix 2 4 5\n1 1 1 1\n1 2 3 4\n");
    let v = put(&d, "v.mat", "matrix 2 4 5\n1 0 1 1\n0 1 1 1\n");
    let prefix = d.join("lg");
    assert_eq!(run(&[&"reduce", &"lmi-gi", &u, &v, &"--out", &prefix]).status.code(), Some(0));
    assert_eq!(run(&[&"gi", &d.join("lg.1.g"), &d.join("lg.2.g")]).status.code(), Some(1));
    assert_eq!(run(&[&"mi", &u, &v]).status.code(), Some(1));

    let prefix = d.join("mg");
    assert_eq!(run(&[&"reduce", &"mib-gmi", &u, &u, &"--out", &prefix]).status.code(), Some(0));
    assert_eq!(run(&[&"gmi", &d.join("mg.1.g"), &d.join("mg.2.g")]).status.code(), Some(0));
    let prefix = d.join("mh");
    assert_eq!(run(&[&"reduce", &"mib-gmi", &u, &v, &"--out", &prefix]).status.code(), Some(0));
    assert_eq!(run(&[&"gmi", &d.join("mh.1.g"), &d.join("mh.2.g")]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[&"frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&[&"gen", &"uniform-rep", &"--k", &"2"]).status.code(), Some(2));
    assert_eq!(run(&[&"selfcheck", &"--criterion", &"A99"]).status.code(), Some(2));
}

#[test]
fn selfcheck_single_criterion() {
    let o = run(&[&"selfcheck", &"--criterion", &"A7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("A7 PASS"));
}
