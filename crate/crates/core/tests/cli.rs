//! End-to-end runs of the `mbqc` binary against golden files.
//!
//! Set `MBQC_BLESS=1` to rewrite the golden files from the current output.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn mbqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbqc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn check_golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("MBQC_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden file {name} differs");
}

fn golden_run(name: &str, args: &[&str]) {
    let out = mbqc(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    check_golden(name, &stdout(&out));
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn quantum_depth_of_seven_vertex_pattern() {
    let p = data("seven_vertex.pattern");
    let out = mbqc(&["depth", "--quantum", path_str(&p)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "4\n");
}

#[test]
fn flow_of_seven_vertex_pattern() {
    let p = data("seven_vertex.pattern");
    golden_run("seven_vertex.flow", &["flow", path_str(&p)]);
    let text = stdout(&mbqc(&["flow", path_str(&p)]));
    assert!(text.contains("layers = 4\n"));
}

#[test]
fn paths_of_seven_vertex_pattern() {
    let p = data("seven_vertex.pattern");
    golden_run("seven_vertex.paths", &["paths", path_str(&p)]);
}

#[test]
fn full_depth_report() {
    let p = data("seven_vertex.pattern");
    golden_run("seven_vertex.depth", &["depth", path_str(&p)]);
}

#[test]
fn geometry_dot() {
    let p = data("seven_vertex.pattern");
    golden_run(
        "seven_vertex.dot",
        &["dot", "--graph", "geometry", path_str(&p)],
    );
}

#[test]
fn execution_dot() {
    let p = data("seven_vertex.pattern");
    golden_run(
        "seven_vertex_execution.dot",
        &["dot", "--graph", "execution", path_str(&p)],
    );
}

#[test]
fn translation_of_three_wire_circuit() {
    let c = data("three_wire.circuit");
    golden_run(
        "three_wire.pattern",
        &["translate", "--to", "pattern", path_str(&c)],
    );
}

#[test]
fn circuit_paths() {
    let c = data("three_wire.circuit");
    golden_run("three_wire.paths", &["paths", path_str(&c)]);
}

#[test]
fn parallelize_report_of_parity_circuit() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("parity.target");
    let c = data("parity.circuit");
    let out = mbqc(&["parallelize", path_str(&c), "-o", path_str(&out_path)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    check_golden("parity.parallelize", &stdout(&out));
    let verify = mbqc(&["verify", path_str(&out_path), "--against", path_str(&c)]);
    assert_eq!(verify.status.code(), Some(0), "{}", stdout(&verify));
    assert!(stdout(&verify).contains("equivalent = true"));
}

#[test]
fn verify_circuit_against_its_translation() {
    let dir = tempfile::tempdir().unwrap();
    let c = data("three_wire.circuit");
    for variant in ["direct", "cluster"] {
        let p = dir.path().join(format!("{variant}.pattern"));
        let out = mbqc(&[
            "translate",
            "--to",
            "pattern",
            "--variant",
            variant,
            path_str(&c),
            "-o",
            path_str(&p),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        assert!(stdout(&out).contains(&format!(
            "command = translate --to pattern --variant {variant}"
        )));
        let verify = mbqc(&["verify", path_str(&c), "--against", path_str(&p)]);
        assert_eq!(verify.status.code(), Some(0), "{}", stdout(&verify));
    }
}

#[test]
fn pattern_to_circuit_and_back() {
    let dir = tempfile::tempdir().unwrap();
    let p = data("seven_vertex.pattern");
    let standard = dir.path().join("shifted.pattern");
    let out = mbqc(&["shift", path_str(&p), "-o", path_str(&standard)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = stdout(&out);
    assert!(report.contains("quantum_depth.before = 4\n"), "{report}");
    assert!(report.contains("quantum_depth.after = 3\n"), "{report}");
    for fanin in ["linear", "tree"] {
        let circ = dir.path().join(format!("{fanin}.circuit"));
        let out = mbqc(&[
            "translate",
            "--to",
            "circuit",
            "--fanin",
            fanin,
            path_str(&standard),
            "-o",
            path_str(&circ),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        let verify = mbqc(&["verify", path_str(&circ), "--against", path_str(&p)]);
        assert_eq!(verify.status.code(), Some(0), "{}", stdout(&verify));
    }
}

#[test]
fn unshifted_pattern_is_not_translated_to_a_circuit() {
    let p = data("seven_vertex.pattern");
    let out = mbqc(&["translate", "--to", "circuit", path_str(&p)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("shift"));
}

#[test]
fn verification_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let other = dir.path().join("other.circuit");
    std::fs::write(&other, "circuit 3\nJ 0 1/4\nJ 1 1/4\nJ 2 1/4\n").unwrap();
    let c = data("three_wire.circuit");
    let out = mbqc(&["verify", path_str(&c), "--against", path_str(&other)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("equivalent = false"));
}

#[test]
fn noflow_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("triangle.pattern");
    std::fs::write(
        &p,
        "pattern V=[0,1,2] I=[0] O=[2]\nN 1\nN 2\nE 0 1\nE 0 2\nE 1 2\nM 0 a=1/4\nM 1 a=1/4\n",
    )
    .unwrap();
    let out = mbqc(&["flow", path_str(&p)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "NOFLOW\n");
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(mbqc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mbqc(&["flow", "/no/such/file"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.circuit");
    std::fs::write(&bad, "circuit 2\nJ 0 1/4\nFOO 1\n").unwrap();
    let out = mbqc(&["depth", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("line 3"), "{err}");
    let c = data("three_wire.circuit");
    assert_eq!(mbqc(&["flow", path_str(&c)]).status.code(), Some(2));
    assert_eq!(
        mbqc(&[
            "translate",
            "--to",
            "pattern",
            "--fanin",
            "tree",
            path_str(&c)
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn reads_standard_input() {
    let text = std::fs::read_to_string(data("seven_vertex.pattern")).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_mbqc"))
        .args(["depth", "--preparation", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "4\n");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let c = data("parity.circuit");
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<String> = (0..2)
        .map(|i| {
            let o = dir.path().join(format!("{i}.circuit"));
            stdout(&mbqc(&[
                "translate",
                "--to",
                "pattern",
                path_str(&c),
                "-o",
                path_str(&o),
            ]))
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let a = std::fs::read(dir.path().join("0.circuit")).unwrap();
    let b = std::fs::read(dir.path().join("1.circuit")).unwrap();
    assert_eq!(a, b);
}
