//! End-to-end tests of the command-line surface: subcommands, flags,
//! configuration, exit codes, and output determinism.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vcprune"))
}

fn write_file(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    let mut file = std::fs::File::create(&path).unwrap();
    file.write_all(content.as_bytes()).unwrap();
    path
}

fn stdout(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).unwrap()
}

fn stderr(output: &Output) -> &str {
    std::str::from_utf8(&output.stderr).unwrap()
}

#[test]
fn prune_prints_the_residual_and_uses_exit_ten_for_false() {
    let dir = tempfile::tempdir().unwrap();
    let old = write_file(dir.path(), "old.vc", "(and f1 (not f2))\n");
    let new = write_file(
        dir.path(),
        "new.vc",
        "(or (and f1 (not f2)) (and f1 f2 (not f3)))\n",
    );
    let output = bin().arg("prune").arg(&old).arg(&new).output().unwrap();
    assert_eq!(stdout(&output), "(and f1 f2 (not f3))\n");
    assert_eq!(output.status.code(), Some(0));

    // a pure renaming prunes to `false` and signals it via the exit code
    let old = write_file(dir.path(), "o2.vc", "(and (> x 2) (not (> x 2)))\n");
    let new = write_file(dir.path(), "n2.vc", "(and (> y 2) (not (> y 2)))\n");
    let output = bin().arg("prune").arg(&old).arg(&new).output().unwrap();
    assert_eq!(stdout(&output), "false\n");
    assert_eq!(output.status.code(), Some(10));
}

#[test]
fn prune_emits_the_substitution_and_honors_no_match() {
    let dir = tempfile::tempdir().unwrap();
    let old = write_file(dir.path(), "old.vc", "(and (> x 2) (not (> x 2)))\n");
    let new = write_file(dir.path(), "new.vc", "(and (> y 2) (not (> y 2)))\n");
    let subst = dir.path().join("subst.txt");
    let output = bin()
        .arg("prune")
        .arg(&old)
        .arg(&new)
        .arg("--emit-substitution")
        .arg(&subst)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(10));
    assert_eq!(std::fs::read_to_string(&subst).unwrap(), "x y\n");

    let output = bin()
        .arg("prune")
        .arg(&old)
        .arg(&new)
        .arg("--no-match")
        .output()
        .unwrap();
    // without renaming nothing lines up, so the query survives
    assert_eq!(stdout(&output), "(and (> y 2) (not (> y 2)))\n");
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn parse_errors_exit_one_with_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let old = write_file(dir.path(), "old.vc", "(and f1 (not f2))\n");
    let bad = write_file(dir.path(), "bad.vc", "(and f1\n  !x)\n");
    let output = bin().arg("prune").arg(&old).arg(&bad).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(
        stderr(&output).contains("bad.vc:2:3"),
        "{}",
        stderr(&output)
    );

    let missing = dir.path().join("nope.vc");
    let output = bin().arg("prune").arg(&old).arg(&missing).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn vc_subcommand_prints_the_condition_and_rejects_cycles() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_file(
        dir.path(),
        "old.graph",
        "; assumption then assertion\nnode 1 assume f1\nnode 2 assert f2\nedge 1 2\n",
    );
    let output = bin().arg("vc").arg(&graph).output().unwrap();
    assert_eq!(stdout(&output), "(and f1 (not f2))\n");
    assert_eq!(output.status.code(), Some(0));

    let all_assume = write_file(dir.path(), "aa.graph", "node 1 assume f1\n");
    let output = bin().arg("vc").arg(&all_assume).output().unwrap();
    assert_eq!(stdout(&output), "false\n");

    let cyclic = write_file(
        dir.path(),
        "cyclic.graph",
        "node 1 assume f1\nnode 2 assert f2\nedge 1 2\nedge 2 1\n",
    );
    let output = bin().arg("vc").arg(&cyclic).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("cyclic"), "{}", stderr(&output));
}

#[test]
fn match_subcommand_prints_pairs_sorted_by_old_name() {
    let dir = tempfile::tempdir().unwrap();
    let old = write_file(
        dir.path(),
        "old.vc",
        "(and (> x 2) (or (f y) (not (> x 2))))\n",
    );
    let new = write_file(
        dir.path(),
        "new.vc",
        "(and (> u 2) (or (f v) (not (> u 2))))\n",
    );
    let output = bin().arg("match").arg(&old).arg(&new).output().unwrap();
    assert_eq!(stdout(&output), "x u\ny v\n");
    assert_eq!(output.status.code(), Some(0));

    // identical files need no renaming
    let output = bin().arg("match").arg(&old).arg(&old).output().unwrap();
    assert_eq!(stdout(&output), "");
    assert_eq!(output.status.code(), Some(0));

    // nothing lines up between unrelated formulas: every score is at most
    // zero, so the matching is empty
    let left = write_file(dir.path(), "left.vc", "p\n");
    let right = write_file(dir.path(), "right.vc", "(f q r)\n");
    let output = bin().arg("match").arg(&left).arg(&right).output().unwrap();
    assert_eq!(stdout(&output), "");
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn check_exit_codes_cover_pass_fail_vacuous_and_refusal() {
    let dir = tempfile::tempdir().unwrap();
    let old = write_file(dir.path(), "old.vc", "(and (> x 2) (not (> x 1)))\n");
    let new = write_file(
        dir.path(),
        "new.vc",
        "(or (and (> x 2) (not (> x 1))) (and (> x 2) (> x 1) (not (> x 0))))\n",
    );
    let output = bin().arg("check").arg(&old).arg(&new).output().unwrap();
    assert_eq!(stdout(&output), "verdict=pass\n");
    assert_eq!(output.status.code(), Some(0));

    // satisfiable old formula: the check is vacuous
    let sat = write_file(dir.path(), "sat.vc", "(or p q)\n");
    let output = bin().arg("check").arg(&sat).arg(&new).output().unwrap();
    assert!(stdout(&output).starts_with("verdict=vacuous counterexample="));
    assert_eq!(output.status.code(), Some(4));

    // too many atoms for the enumeration cap: explicit refusal
    let atoms: Vec<String> = (0..30).map(|i| format!("p{i}")).collect();
    let wide = write_file(
        dir.path(),
        "wide.vc",
        &format!("(and {} (not p0))\n", atoms.join(" ")),
    );
    let output = bin().arg("check").arg(&wide).arg(&new).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(
        stderr(&output).contains("universe too large"),
        "{}",
        stderr(&output)
    );

    // a narrowed range can hide the witness: x>6 is UNSAT within 0..5
    let narrow_old = write_file(dir.path(), "narrow.vc", "(> x 6)\n");
    let narrow_new = write_file(dir.path(), "narrow_new.vc", "(> x 6)\n");
    let output = bin()
        .args(["check"])
        .arg(&narrow_old)
        .arg(&narrow_new)
        .args(["--range", "0", "5"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));

    let output = bin()
        .args(["check"])
        .arg(&narrow_old)
        .arg(&narrow_new)
        .args(["--range", "5", "0"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn fuzz_is_deterministic_and_exits_zero_without_failures() {
    let run = || {
        bin()
            .args(["fuzz", "--seed", "42", "--count", "60", "--max-atoms", "6"])
            .output()
            .unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(
        first.stdout, second.stdout,
        "fuzz output must be byte-identical"
    );
    let lines: Vec<&str> = stdout(&first).lines().collect();
    assert_eq!(lines.len(), 60);
    assert!(lines[0].starts_with("seed=42 verdict="));
    assert!(lines
        .iter()
        .all(|l| l.contains("verdict=pass") || l.contains("verdict=vacuous")));

    let empty = bin().args(["fuzz", "--count", "0"]).output().unwrap();
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(stdout(&empty), "");

    let integers = bin()
        .args(["fuzz", "--seed", "7", "--count", "40", "--mode", "integer"])
        .output()
        .unwrap();
    assert_eq!(integers.status.code(), Some(0), "{}", stderr(&integers));
    assert_eq!(stdout(&integers).lines().count(), 40);
}

#[test]
fn commutativity_is_configurable_by_flag_and_file() {
    // literals cannot be renamed, so only commutativity can line these up
    let dir = tempfile::tempdir().unwrap();
    let old = write_file(dir.path(), "old.vc", "(and (= a 1) (not (= a 1)))\n");
    let new = write_file(dir.path(), "new.vc", "(and (= 1 a) (not (= 1 a)))\n");

    // by default `=` is not commutative, so the formulas do not line up
    let output = bin().arg("prune").arg(&old).arg(&new).output().unwrap();
    assert_eq!(output.status.code(), Some(0));

    let output = bin()
        .args(["--commutative", "="])
        .arg("prune")
        .arg(&old)
        .arg(&new)
        .output()
        .unwrap();
    assert_eq!(stdout(&output), "false\n");
    assert_eq!(output.status.code(), Some(10));

    let config = write_file(
        dir.path(),
        "prune.conf",
        "# project defaults\ncommutative = =, +\nenv-weight = 12\n",
    );
    let output = bin()
        .arg("--config")
        .arg(&config)
        .arg("prune")
        .arg(&old)
        .arg(&new)
        .output()
        .unwrap();
    assert_eq!(stdout(&output), "false\n");
    assert_eq!(output.status.code(), Some(10));
}

#[test]
fn bad_configuration_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let old = write_file(dir.path(), "old.vc", "p\n");

    // weights must keep the environment component dominant
    let output = bin()
        .args(["--env-weight", "1", "--lcs-weight", "5"])
        .arg("match")
        .arg(&old)
        .arg(&old)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(
        stderr(&output).contains("must exceed"),
        "{}",
        stderr(&output)
    );

    let config = write_file(dir.path(), "bad.conf", "nonsense-key = 3\n");
    let output = bin()
        .arg("--config")
        .arg(&config)
        .arg("match")
        .arg(&old)
        .arg(&old)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(
        stderr(&output).contains("unknown key"),
        "{}",
        stderr(&output)
    );

    let config = write_file(dir.path(), "weights.conf", "env-weight = twelve\n");
    let output = bin()
        .arg("--config")
        .arg(&config)
        .arg("match")
        .arg(&old)
        .arg(&old)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn prune_output_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let old = write_file(
        dir.path(),
        "old.vc",
        "(or (and p3 p1 (not p2)) (and p2 (or p4 p0)) (and p0 p1))\n",
    );
    let new = write_file(
        dir.path(),
        "new.vc",
        "(or (and p1 p3 (not p2)) (and (or p0 p4) p2) (and p1 p0) (and p5 p3))\n",
    );
    let run = || bin().arg("prune").arg(&old).arg(&new).output().unwrap();
    let first = run();
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), second.status.code());
}
