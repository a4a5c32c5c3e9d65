use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extshuffle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

#[test]
fn shuffle_prints_canonical_form() {
    let out = run(&["shuffle", "[1]", "[-1]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "[-1,1] - [0,0]");
    assert_eq!(stdout(&run(&["shuffle", "1", "[5]"])), "[5]");
    assert_eq!(stdout(&run(&["shuffle", "[0]", "[-1]"])), "[0,-1]");
    assert_eq!(stdout(&run(&["shuffle", "2[1] + [0]", "[0]"])), "[0,0] + 2[0,1]");
}

#[test]
fn shuffle_json_round_trips() {
    let out = run(&["--json", "shuffle", "[2]", "[2]"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let parsed = extshuffle::LinComb::<extshuffle::Composition>::from_json(&v).unwrap();
    assert_eq!(parsed.to_string(), "2[2,2] + 4[3,1]");
}

#[test]
fn stuffle_product() {
    assert_eq!(stdout(&run(&["stuffle", "[2]", "[2]"])), "[4] + 2[2,2]");
}

#[test]
fn parse_errors_exit_2() {
    let out = run(&["shuffle", "[1,", "[2]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert_eq!(run(&["shuffle", "[1]"]).status.code(), Some(2));
}

#[test]
fn convergence_check() {
    let out = run(&["convergent", "[3,-1]"]);
    assert_eq!(out.status.code(), Some(1));
    let text = format!("{}{}", stdout(&out), String::from_utf8_lossy(&out.stderr));
    assert!(text.contains("partial weight at j=2 is 2, requires > 2"), "{text}");
    assert_eq!(run(&["convergent", "[4,-1]"]).status.code(), Some(0));
}

#[test]
fn zeta_value() {
    let out = run(&["zeta", "[2]", "--tol", "1e-6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let value: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("value = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 1.6449340668).abs() < 1e-6, "{text}");
    assert!(text.contains("converged = true"));
}

#[test]
fn zeta_reports_unconverged_at_small_cap() {
    let out = run(&["--max-n", "4096", "--json", "zeta", "[2,1]", "--tol", "1e-8"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["converged"], false);
    assert_eq!(v["cutoff"], 4096);
}

#[test]
fn zeta_rejects_divergent() {
    assert_eq!(run(&["zeta", "[1]"]).status.code(), Some(1));
}

#[test]
fn verify_passes() {
    let out = run(&["verify", "[2]", "[2]", "--tol", "1e-5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).ends_with("PASS"));
    let out = run(&["--json", "verify", "[4,-1]", "[2]", "--tol", "1e-4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn symbol_product_needs_disjoint_labels() {
    let out = run(&["symbol-product", "<[-1];[1]>", "<[0];[2]>"]);
    assert_eq!(stdout(&out), "<[-1,0];[1,2]> - <[0,-1];[1,2]>");
    assert_eq!(
        run(&["symbol-product", "<[-1];[1]>", "<[0];[1]>"]).status.code(),
        Some(1)
    );
    let out = run(&["symbol-product", "--fresh", "<[-1];[1]>", "<[0];[1]>"]);
    assert_eq!(stdout(&out), "<[-1,0];[1,2]> - <[0,-1];[1,2]>");
}

#[test]
fn fraction_eval_at_point_and_panel() {
    let out = run(&["fraction-eval", "f([-1,0];[1,2]) - f([0,-1];[1,2])", "1=2/3", "2=5"]);
    assert_eq!(stdout(&out), "2/3");
    let out = run(&["fraction-eval", "f([2,1];[1,2])"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 8);
}

#[test]
fn relations_text_and_json() {
    let out = run(&["relations", "--max-depth", "1", "--min-entry", "2", "--max-entry", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[2] [2]: [4] - 4[3,1] = 0"));
    let out = run(&[
        "relations",
        "--max-depth",
        "1",
        "--min-entry",
        "2",
        "--max-entry",
        "3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["relations"].as_array().unwrap().len(), 4);
    assert!(v["failed"].as_array().unwrap().is_empty());
}
