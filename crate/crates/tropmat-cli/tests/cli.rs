//! End-to-end CLI tests: exit codes, JSON round-trips, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tropmat"))
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const WEIGHTS_2X3: &str = r#"{"n":2,"d":3,"w":[["0","0","0"],["0","2","5"]]}"#;

#[test]
fn check_valid_tom_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.json", WEIGHTS_2X3);
    let tom = dir.path().join("tom.json");
    let out = run(&[
        "realize",
        "--weights",
        w.to_str().unwrap(),
        "--out",
        tom.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = run(&["check", "--tom", tom.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("boundary: pass"));
    assert!(text.contains("surrounding: pass"));
}

#[test]
fn check_failure_exits_one_with_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"n":1,"d":2,"types":[[[1]],[[2]]]}"#);
    let out = run(&[
        "check",
        "--tom",
        bad.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let eliminations: Vec<_> = report
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["axiom"] == "elimination")
        .collect();
    assert_eq!(eliminations.len(), 1);
    assert_eq!(eliminations[0]["pass"], false);
    assert!(eliminations[0]["witness"].is_string());
}

#[test]
fn malformed_input_exits_two_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "w.json", r#"{"n":1,"d":2,"w":[["zzz","0"]]}"#);
    let out = run(&["realize", "--weights", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("'w'"), "stderr: {err}");

    let missing = dir.path().join("missing.json");
    let out = run(&["check", "--tom", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn realize_counts_match_spec_example() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.json", WEIGHTS_2X3);
    let out = run(&["realize", "--weights", w.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("3 vertices, 6 topes"));
}

#[test]
fn emitted_json_reparses_to_equal_values() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.json", WEIGHTS_2X3);
    let s1 = dir.path().join("s1.json");
    let out = run(&[
        "subdivide",
        "--weights",
        w.to_str().unwrap(),
        "--out",
        s1.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // feed the emitted subdivision back through a verb that re-emits it
    let s2 = dir.path().join("s2.json");
    let out = run(&[
        "dual",
        "--subdivision",
        s1.to_str().unwrap(),
        "--out",
        s2.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let s3 = dir.path().join("s3.json");
    let out = run(&[
        "dual",
        "--subdivision",
        s2.to_str().unwrap(),
        "--out",
        s3.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    // double dual recovers the original file verbatim (canonical order)
    assert_eq!(
        std::fs::read_to_string(&s1).unwrap(),
        std::fs::read_to_string(&s3).unwrap()
    );
}

#[test]
fn repeated_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.json", WEIGHTS_2X3);
    let a = run(&["realize", "--weights", w.to_str().unwrap(), "--format", "json"]);
    let b = run(&["realize", "--weights", w.to_str().unwrap(), "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn census_2_2_lists_three_certified_subdivisions() {
    let out = run(&["census", "--n", "2", "--d", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("census(2,2): 3 subdivisions"), "{text}");
    assert_eq!(text.matches("verified=true tom=true").count(), 3);
}

#[test]
fn placing_blowup_hull_eliminate_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "s.json",
        r#"{"n":2,"d":3,"maximal_cells":[[[1,2,3],[1]],[[2,3],[1,2]],[[3],[1,2,3]]]}"#,
    );
    let out = run(&[
        "place-n",
        "--subdivision",
        s.to_str().unwrap(),
        "--perm",
        "1,2,3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(parsed["n"], 3);

    let out = run(&[
        "place-d",
        "--subdivision",
        s.to_str().unwrap(),
        "--perm",
        "1,2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(parsed["d"], 4);

    let out = run(&[
        "blowup",
        "--subdivision",
        s.to_str().unwrap(),
        "--position",
        "1",
        "--perm",
        "1,2,3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());

    let tom = dir.path().join("tom.json");
    let w = write(dir.path(), "w.json", WEIGHTS_2X3);
    assert!(run(&[
        "realize",
        "--weights",
        w.to_str().unwrap(),
        "--out",
        tom.to_str().unwrap()
    ])
    .status
    .success());
    let out = run(&[
        "hull",
        "--tom",
        tom.to_str().unwrap(),
        "--a",
        "[[3],[1,2,3]]",
        "--b",
        "[[1,2,3],[1]]",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("(123,1)"));

    let out = run(&[
        "eliminate",
        "--subdivision",
        s.to_str().unwrap(),
        "--a",
        "[[1,2,3],[1]]",
        "--b",
        "[[3],[1,2,3]]",
        "--position",
        "1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("(123,"));
}

#[test]
fn mij_and_covectors_verbs() {
    let dir = tempfile::tempdir().unwrap();
    // single hyperplane in d = 4: all 15 nonempty subsets
    let types: Vec<Vec<Vec<u8>>> = (1u16..16)
        .map(|mask| {
            vec![(1..=4).filter(|j| mask & (1 << (j - 1)) != 0).collect::<Vec<u8>>()]
        })
        .collect();
    let tom_json = serde_json::json!({"n": 1, "d": 4, "types": types}).to_string();
    let tom = write(dir.path(), "tom.json", &tom_json);
    let out = run(&[
        "mij",
        "--tom",
        tom.to_str().unwrap(),
        "--i",
        "[[1,2,3,4]]",
        "--j",
        "[[[1,4],[2,3]]]",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let cells: Vec<Vec<Vec<u8>>> = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(cells.contains(&vec![vec![1u8, 2]]));
    assert!(!cells.contains(&vec![vec![1u8, 4]])); // misses block {2,3}

    let out = run(&[
        "covectors",
        "--tom",
        tom.to_str().unwrap(),
        "--positions",
        "1",
        "--i",
        "[[1,2]]",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for sign in ["+", "-", "0"] {
        assert!(text.lines().any(|l| l == sign), "missing {sign}: {text}");
    }
}

#[test]
fn render_svg_and_dot_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "s.json",
        r#"{"n":2,"d":3,"maximal_cells":[[[1,2,3],[1]],[[2,3],[1,2]],[[3],[1,2,3]]]}"#,
    );
    let a = run(&["render", "--subdivision", s.to_str().unwrap(), "--labels"]);
    let b = run(&["render", "--subdivision", s.to_str().unwrap(), "--labels"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let svg = stdout(&a);
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\""));
    assert_eq!(svg.matches("<polyline").count(), 2); // one star per position
    assert_eq!(svg.matches("<text").count(), 6); // one label per tope

    // trivial subdivision: a single star
    let t = write(
        dir.path(),
        "t.json",
        r#"{"n":1,"d":3,"maximal_cells":[[[1,2,3]]]}"#,
    );
    let out = run(&["render", "--subdivision", t.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).matches("<polyline").count(), 1);

    // coarse subdivision renders with merged stars
    let c = write(
        dir.path(),
        "c.json",
        r#"{"n":2,"d":3,"maximal_cells":[[[1,2,3],[1,2,3]]]}"#,
    );
    let out = run(&["render", "--subdivision", c.to_str().unwrap(), "--labels"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).matches("<polyline").count(), 2);
    assert_eq!(stdout(&out).matches("<text").count(), 3); // only corner topes

    let out = run(&["render", "--type", "[[1,2],[3]]", "--d", "3", "--dot"]);
    assert!(out.status.success());
    let dot = stdout(&out);
    assert!(dot.contains("N1 -- D1"));
    assert!(dot.contains("N2 -- D3"));

    // d ≠ 3 is rejected
    let line = write(
        dir.path(),
        "line.json",
        r#"{"n":2,"d":2,"maximal_cells":[[[1,2],[1,2]]]}"#,
    );
    let out = run(&["render", "--subdivision", line.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn max_d_environment_cap() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.json", WEIGHTS_2X3);
    let out = bin()
        .args(["realize", "--weights", w.to_str().unwrap()])
        .env("TROPMAT_MAX_D", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("TROPMAT_MAX_D"), "{err}");
}
