use std::path::PathBuf;
use std::process::{Command, Output};

fn kirwan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kirwan")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kirwan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn bundled_datasets_validate() {
    for n in ["s2", "s2xs2-t2", "s2xs2-nonisolated", "s2cubed-su2"] {
        let out = kirwan(&["validate", &format!("builtin:{n}")]);
        assert_eq!(out.status.code(), Some(0), "{n}");
        assert_eq!(report(&out)["pass"], true);
    }
}

#[test]
fn flipped_euler_weight_fails_abbv() {
    let src = kirwan(&["example", "s2"]).stdout;
    let mut v: serde_json::Value = serde_json::from_slice(&src).unwrap();
    v["components"][0]["normal_lines"][0]["weight"] = serde_json::json!([1]);
    let p = scratch("flipped.json", &v.to_string());
    let out = kirwan(&["validate", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["checks"]["abbv_polynomial"], false);
    // 1/X + 1/X
    assert_eq!(r["results"]["abbv"][0]["sum"], "(2) / ((X))");
}

#[test]
fn malformed_input_exits_two() {
    let p = scratch("broken.json", "{\"torus_rank\": 1");
    let out = kirwan(&["validate", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert_eq!(kirwan(&["kernel", "builtin:s2", "--nonabelian"]).status.code(), Some(2));
    let out = kirwan(&["kernel", "builtin:s2xs2-t2", "--circle", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("component NN"));
}

#[test]
fn residue_examples_round_trip() {
    let cases = [
        (r#"{"variables":["X"],"numerator":"1","denominator":[{"form":[1],"power":1}],"variable":"X"}"#, "1"),
        (
            r#"{"variables":["X","Y1","Y2"],"numerator":"X","denominator":[{"form":[1,-1,0],"power":1},{"form":[1,0,-1],"power":1}],"variable":"X"}"#,
            "1",
        ),
        (
            r#"{"variables":["X","Y1"],"numerator":"1","denominator":[{"form":[1,0],"power":1},{"form":[1,-1],"power":1}],"variable":"X"}"#,
            "0",
        ),
        (
            r#"{"variables":["X","Y1"],"numerator":"X^2","denominator":[{"form":[1,-1],"power":3}],"variable":"X"}"#,
            "1",
        ),
    ];
    for (i, (text, expected)) in cases.iter().enumerate() {
        let p = scratch(&format!("expr{i}.json"), text);
        let out = kirwan(&["residue", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let r = report(&out);
        assert_eq!(r["results"]["partial_fractions"], *expected, "case {i}");
        assert_eq!(r["results"]["laurent"], *expected, "case {i}");
    }
    let p = scratch("bad-expr.json", r#"{"variables":["X"],"numerator":"X+*2","variable":"X"}"#);
    let out = kirwan(&["residue", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("numerator"));
}

#[test]
fn kernel_examples_pass() {
    for args in [
        &["kernel", "builtin:s2", "--circle", "1", "--max-degree", "4"][..],
        &["kernel", "builtin:s2xs2-t2", "--full", "--max-degree", "4"],
        &["kernel", "builtin:s2cubed-su2", "--nonabelian", "--max-degree", "6"],
    ] {
        let out = kirwan(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(report(&out)["pass"], true);
    }
}

#[test]
fn calibration_is_recorded() {
    let out = kirwan(&["integrate", "builtin:s2", "--class", "1", "--circle", "-1"]);
    let r = report(&out);
    assert_eq!(r["results"]["kappa_s"], "1");
    assert_eq!(r["results"]["calibrated"], "1");
    let out = kirwan(&["integrate", "builtin:s2cubed-su2", "--class", "X^2", "--calibrate", "X*a1"]);
    let r = report(&out);
    assert_eq!(r["results"]["kappa_t"], "2");
    assert_eq!(r["results"]["calibrated"], "2");
}

#[test]
fn text_format_and_output_file() {
    let p = std::env::temp_dir().join(format!("kirwan-out-{}.txt", std::process::id()));
    let out = kirwan(&["validate", "builtin:s2", "--format", "text", "--output", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&p).unwrap();
    assert!(text.starts_with("validate: PASS"));
}
