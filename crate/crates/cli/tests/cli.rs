use std::process::{Command, Output};

fn fan(name: &str) -> String {
    format!("{}/../../fans/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topvertex"))
        .args(args)
        .env("TOPVERTEX_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gw_table_for_local_p2() {
    let o = run(&["gw", &fan("local_p2"), "--cap", "3", "--genus-max", "2"], "2");
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "1\t0\t3"), "{out}");
    assert!(out.lines().any(|l| l == "3\t0\t244/9"), "{out}");
}

#[test]
fn invalid_fan_is_reported() {
    let o = run(&["fan", "validate", &fan("bad")], "1");
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["kind"], "not-unimodular");
}

#[test]
fn unknown_edge_lists_valid_names() {
    let o = run(&["flop-compare", &fan("conifold"), "--edge", "nope", "--cap", "1"], "1");
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "unknown-edge");
    assert!(v["valid"].as_array().unwrap().iter().any(|n| n == "Q0"));
}

#[test]
fn malformed_json_reports_location() {
    let path = std::env::temp_dir().join("topvertex_cli_broken.json");
    std::fs::write(&path, "{\"rays\": [[0,0],\n").unwrap();
    let o = run(&["fan", "graph", path.to_str().unwrap()], "1");
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "parse");
    assert!(v["message"].as_str().unwrap().contains("line"));
}

#[test]
fn checks_pass() {
    let o = run(&["check", "identities", "--max-size", "3", "--oracle-points", "1"], "2");
    assert!(o.status.success(), "{}", stdout(&o));
    let o = run(&["check", "flop-local", "--max-size", "2"], "2");
    assert!(o.status.success());
    let o = run(&["flop-compare", &fan("local_f1"), "--edge", "E", "--cap", "2"], "2");
    assert!(o.status.success());
    let o = run(&["blowup-compare", &fan("p2_surface"), "--cone", "0,1", "--cap", "4"], "2");
    assert!(o.status.success());
    let o = run(&["nekrasov", "--cap", "1"], "2");
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "difference: "));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    for args in [
        vec!["zfun", &fan("figure5"), "--cap", "2", "--by-class"],
        vec!["gw", &fan("local_f1"), "--cap", "3"],
        vec!["fan", "graph", &fan("figure5")],
    ] {
        let a = run(&args.iter().map(|s| s.as_ref()).collect::<Vec<&str>>(), "1");
        let b = run(&args.iter().map(|s| s.as_ref()).collect::<Vec<&str>>(), "4");
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn vertex_values() {
    let o = run(&["vertex", "1", "", ""], "1");
    assert_eq!(stdout(&o).trim(), "(t)/(t^2 - 1)");
}
