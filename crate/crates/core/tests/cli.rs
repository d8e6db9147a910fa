//! The binary's documented examples, exit codes and determinism.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_addbasis"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn order_example() {
    let (code, out) = run(&["order", "--T", "0+1N", "--A", "{1}, 0+2N"]);
    assert_eq!(code, 0);
    assert!(out.starts_with(r#"{"verdict":"basis","order":2"#), "{out}");
}

#[test]
fn essential_example() {
    let (code, out) = run(&[
        "essential",
        "--T",
        "0+1N",
        "--A",
        "{1}, 0+2N",
        "--kmax",
        "2",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["reservoir"], serde_json::json!(["1"]));
    assert_eq!(v["essentials"], serde_json::json!([["1"]]));
}

#[test]
fn density_example() {
    let (code, out) = run(&["density", "--T", "0+1N", "--S", "0+3N"]);
    assert_eq!((code, out.trim()), (0, "\"1/3\""));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["order", "--T", "0+1N", "--A", "{1, 0+2N"]).0, 4);
    assert_eq!(run(&["classify", "--T", "0+2N"]).0, 2);
    assert_eq!(
        run(&["fpt-verify", "--p", "2", "--r", "2", "--h", "3", "--D", "5"]).0,
        2
    );
    assert_eq!(
        run(&["audit", "twobases", "--T", "0+1N", "--F", "{2}", "--B", "0+2N", "--b", "0"]).0,
        2
    );
}

#[test]
fn seeded_runs_are_identical() {
    let args = [
        "search", "X", "--T", "0+1N", "--h", "2", "--p-max", "4", "--w-max", "6", "--seed", "3",
    ];
    let (c1, a) = run(&args);
    let (c2, b) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let witness = v["best_x"]["basis"].as_str().unwrap();
    let (code, again) = run(&["sumset", "--A", witness, "--h", "1"]);
    assert_eq!(code, 0);
    assert!(again.contains(witness), "{witness} vs {again}");
}

#[test]
fn tsv_output() {
    let (code, out) = run(&["classify", "--T", "{0, 3, 5, 6}, 8+1N", "--tsv"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "kind\tpositive"), "{out}");
}
