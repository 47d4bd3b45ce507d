use std::io::Write;
use std::process::{Command, Output, Stdio};

use tame_orders::{parse_poset, pattern_r22, r_lambda, to_text};

fn tame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tame"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tame_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tame"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn check_r22_exits_three_with_witness() {
    let f = write_temp(&to_text(&pattern_r22()));
    let o = tame(&["check", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("witness: x0 < y0, x1 < y1"));

    let o = tame(&["--json", "check", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tame"], false);
    assert_eq!(v["witness"], serde_json::json!(["x0", "x1", "y0", "y1"]));
}

#[test]
fn rank_of_generated_template() {
    let gen = tame(&["gen", "--r-lambda", "4"]);
    assert_eq!(code(&gen), 0);
    let o = tame_stdin(&["rank", "-"], &stdout(&gen));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "4\n");
}

#[test]
fn embed_table_for_truncated_pattern() {
    let gen = stdout(&tame(&["gen", "--s-n2", "2"]));
    let o = tame_stdin(&["embed", "-"], &gen);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for line in ["x1 -> (0,0)", "x0 -> (0,1)", "y1 -> (1,2)", "y0 -> (2,2)"] {
        assert!(out.lines().any(|l| l == line), "missing {line} in {out}");
    }
    let o = tame_stdin(&["--json", "embed", "-"], &gen);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lambda"], 3);
    assert_eq!(v["embedding"]["x0"], serde_json::json!([0, 1]));
}

#[test]
fn embed_rejects_non_reduced_and_non_tame() {
    let o = tame_stdin(&["embed", "-"], "elements: a b\n");
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("not reduced"));
    let o = tame_stdin(&["rank", "-"], &to_text(&pattern_r22()));
    assert_eq!(code(&o), 3);
}

#[test]
fn gen_round_trips() {
    let cases: [&[&str]; 6] = [
        &["gen", "--r-lambda", "5"],
        &["gen", "--s-n2", "3"],
        &["gen", "--r22"],
        &["gen", "--cummings", "4"],
        &["gen", "--random", "9", "0.4", "7"],
        &["gen", "--r-lambda", "0"],
    ];
    for args in cases {
        let o = tame(args);
        assert_eq!(code(&o), 0, "{args:?}");
        let text = stdout(&o);
        let p = parse_poset(&text).unwrap();
        assert_eq!(to_text(&p), text);
    }
    let p = parse_poset(&stdout(&tame(&["gen", "--r-lambda", "3"]))).unwrap();
    assert_eq!(p, r_lambda(3).unwrap());
}

#[test]
fn reduce_prints_quotient_and_classes() {
    let o = tame_stdin(&["reduce", "-"], "elements: a b c\nrel: a c\nrel: b c\n");
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("elements: a c\nrel: a c\n"));
    assert!(out.contains("# class a: a b\n"));
    // comment lines keep the output parseable
    assert_eq!(parse_poset(&out).unwrap().len(), 2);

    let o = tame_stdin(
        &["--json", "reduce", "-"],
        "elements: a b c\nrel: a c\nrel: b c\n",
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classes"]["a"], serde_json::json!(["a", "b"]));
}

#[test]
fn realize_json_document() {
    let o = tame_stdin(&["--json", "realize", "-"], "elements: p q r\n");
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lambda"], 1);
    assert_eq!(v["window"], serde_json::json!(["0,0#0", "0,0#1", "0,0#2"]));
    assert_eq!(v["iso"]["map"]["r"], "0,0#2");
}

#[test]
fn verify_exit_codes() {
    let o = tame(&["verify", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("counterexamples: 0"));
    let o = tame(&[
        "--json",
        "verify",
        "--n",
        "8",
        "--samples",
        "20",
        "--seed",
        "5",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 20);
    assert_eq!(v["counterexamples"], serde_json::json!([]));
    // n = 6 exhaustive is opt-in
    assert_eq!(code(&tame(&["verify", "--n", "6"])), 1);
    assert_eq!(code(&tame(&["--budget", "1", "verify", "--n", "4"])), 2);
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(code(&tame(&["check", "/nonexistent/file"])), 1);
    let o = tame_stdin(&["check", "-"], "elements: a b\nrel: a b\nrel: b a\n");
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("cycle"));
    assert_eq!(code(&tame_stdin(&["check", "-"], "garbage\n")), 1);
    assert_eq!(code(&tame(&["frobnicate"])), 1);
    assert_eq!(code(&tame(&["gen", "--random", "3", "2.0", "1"])), 1);
    assert_eq!(code(&tame(&["gen", "--s-n2", "0"])), 1);
    assert_eq!(code(&tame(&["--help"])), 0);
}

#[test]
fn json_outputs_are_single_documents() {
    let r22 = to_text(&pattern_r22());
    let chain = "elements: a b c\nrel: a b\nrel: b c\n";
    for (args, input) in [
        (&["--json", "check", "-"][..], chain),
        (&["--json", "check", "-"][..], r22.as_str()),
        (&["--json", "rank", "-"][..], chain),
        (&["--json", "embed", "-"][..], chain),
        (&["--json", "reduce", "-"][..], chain),
        (&["--json", "realize", "-"][..], chain),
    ] {
        let o = tame_stdin(args, input);
        assert!(o.stderr.is_empty(), "{args:?}");
        serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap();
    }
}
