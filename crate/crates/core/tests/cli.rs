//! End-to-end runs of the `reclearn` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn reclearn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reclearn")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn gen_three_terms(dir: &Path) {
    let source = data("three_terms.dnf");
    let out = reclearn(&["gen", "thm5", "--dnf", source.to_str().unwrap(), "--r", "3", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn generate_then_verify_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let bundle = tmp.path().join("bundle");
    gen_three_terms(&bundle);
    let out = reclearn(&["verify", "--bundle", bundle.to_str().unwrap(), "--exhaustive"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS tested=16 mismatches=0"));
}

#[test]
fn generated_bundles_are_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    gen_three_terms(&a);
    gen_three_terms(&b);
    let mut names: Vec<_> = fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 5);
    for name in names {
        assert_eq!(fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap(), "{name:?}");
    }
}

#[test]
fn corrupted_bundle_fails_verification() {
    let tmp = tempfile::tempdir().unwrap();
    let bundle = tmp.path().join("corrupted");
    gen_three_terms(&bundle);
    let db = bundle.join("database.db");
    let text = fs::read_to_string(&db).unwrap();
    let pruned: String = text.lines().filter(|l| *l != "true_3(1,3).").map(|l| format!("{l}\n")).collect();
    assert_ne!(pruned, text);
    fs::write(&db, pruned).unwrap();
    let out = reclearn(&["verify", "--bundle", bundle.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("mismatch \"1100\" expected=true actual=false"));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn map_prints_the_instance() {
    let tmp = tempfile::tempdir().unwrap();
    let bundle = tmp.path().join("bundle");
    gen_three_terms(&bundle);
    let out = reclearn(&["map", "--bundle", bundle.to_str().unwrap(), "--input", "1011"]);
    assert_eq!(stdout(&out), "fact: p(1)\ndesc: bit_1(1)\ndesc: bit_2(0)\ndesc: bit_3(1)\ndesc: bit_4(1)\n");
    let bad = reclearn(&["map", "--bundle", bundle.to_str().unwrap(), "--input", "10"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn analyze_reports_append_depth() {
    let out = reclearn(&["analyze", "--program", data("append.pl").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("clause 1 depth=2"));
    assert!(stdout(&out).contains("mode=components(+,-,-)"));
}

#[test]
fn eval_append_instance() {
    let out = reclearn(&[
        "eval",
        "--program",
        data("append.pl").to_str().unwrap(),
        "--database",
        data("append.db").to_str().unwrap(),
        "--instance",
        data("append.inst").to_str().unwrap(),
    ]);
    assert_eq!(stdout(&out), "covered true\ndepth 3\n");
}

#[test]
fn syntax_errors_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let program = tmp.path().join("bad.pl");
    fs::write(&program, "p(X").unwrap();
    let out = reclearn(&["analyze", "--program", program.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error at line 1"));
    assert_eq!(reclearn(&["gen", "thm9", "--out", "x"]).status.code(), Some(2));
}

#[test]
fn composed_programs_agree_with_the_original() {
    let tmp = tempfile::tempdir().unwrap();
    let bundle = tmp.path().join("bundle");
    gen_three_terms(&bundle);
    let unrolled = tmp.path().join("unrolled");
    let out = reclearn(&["compose", "unroll", "--bundle", bundle.to_str().unwrap(), "--out", unrolled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dnf = tmp.path().join("dnf");
    let out = reclearn(&[
        "compose",
        "dnf",
        "--bundle",
        bundle.to_str().unwrap(),
        "--program",
        unrolled.join("program.pl").to_str().unwrap(),
        "--out",
        dnf.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let formula = fs::read_to_string(dnf.join("formula.dnf")).unwrap();
    assert_eq!(formula.lines().filter(|l| l.starts_with("term:")).count(), 5);
    let chains = fs::read_to_string(dnf.join("chains.txt")).unwrap();
    assert!(chains.starts_with("chain_1 clause=0 literals=0\n"));
    // Assignments line up with the source formula: 1011 is not satisfied.
    let assignments = fs::read_to_string(dnf.join("assignments.txt")).unwrap();
    let truths: Vec<&str> = assignments.lines().map(|l| l.rsplit(' ').next().unwrap()).collect();
    assert_eq!(truths.len(), 16);
    assert_eq!(truths[0b1011], "false");
    assert_eq!(truths[0b1100], "true");
}

#[test]
fn tree_mesh_and_hat_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let bundle = tmp.path().join("tree");
    let out = reclearn(&["gen", "thm6", "--dnf", data("three_terms.dnf").to_str().unwrap(), "--out", bundle.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(reclearn(&["verify", "--bundle", bundle.to_str().unwrap()]).status.code(), Some(0));
    let mesh = reclearn(&["compose", "mesh", "--bundle", bundle.to_str().unwrap(), "--h-max", "3"]);
    let text = stdout(&mesh);
    assert_eq!(text.lines().filter(|l| l.starts_with("p(")).count(), 14);
    assert!(text.lines().filter(|l| l.starts_with("p(")).all(|l| !l.contains(" p(")));
    assert!(text.contains("p_hat("));
    let hat = reclearn(&["compose", "hat", "--bundle", bundle.to_str().unwrap(), "--hat", "leftson"]);
    assert_eq!(hat.status.code(), Some(2));
}

#[test]
fn machine_and_automaton_bundles_verify() {
    let tmp = tempfile::tempdir().unwrap();
    for (args, dir) in [
        (vec!["gen", "thm2", "--tm", "parity2.tm", "--n", "2"], "thm2"),
        (vec!["gen", "thm2alt", "--tm", "and.tm", "--n", "2"], "thm2alt"),
        (vec!["gen", "thm3", "--tm", "parity2.tm", "--n", "2"], "thm3"),
        (vec!["gen", "thm4", "--dfa", "parity.dfa"], "thm4"),
    ] {
        let path = tmp.path().join(dir);
        let mut full: Vec<String> = args.iter().map(|a| a.to_string()).collect();
        full[3] = data(args[3]).display().to_string();
        full.extend(["--out".into(), path.display().to_string()]);
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        assert_eq!(reclearn(&refs).status.code(), Some(0), "{dir}");
        let out = reclearn(&["verify", "--bundle", path.to_str().unwrap(), "--max-len", "4"]);
        assert_eq!(out.status.code(), Some(0), "{dir}: {}", stdout(&out));
    }
}
