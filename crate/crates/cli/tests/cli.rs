use std::process::{Command, Output};

use thetachar::characters::{boundary_character, sl2_descriptor};
use thetachar::record::OutputRecord;
use thetachar::Rational;

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_thetachar"));
    c.args(args).env_remove("THETACHAR_ORDER");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn character_text() {
    let o = run(&["character", "--algebra", "A1", "--u", "3", "--j", "1", "--order", "10"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("θ11(3τ, [\"2\"](z) + (-1)τ)^1"), "{s}");
    assert!(s.contains("θ11(1τ, [\"2\"](z) + (0)τ)^-1"));
}

#[test]
fn invalid_u_is_a_usage_error() {
    let o = run(&["character", "--algebra", "A1", "--u", "2", "--j", "0"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("gcd(u, h∨)"));
    let o = run(&["fusion-table", "--algebra", "A2", "--u", "3"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["character", "--algebra", "A1", "--u", "3"], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_round_trip_and_determinism() {
    let args = ["character", "--algebra", "A1", "--u", "5", "--j", "2", "--format", "json"];
    let a = run(&args, &[("THETACHAR_ORDER", "8")]);
    let b = run(&args, &[("THETACHAR_ORDER", "8")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let rec = OutputRecord::from_json(&stdout(&a)).unwrap();
    assert_eq!(rec.meta.order, 8);
    let d = sl2_descriptor(5, 2).unwrap();
    let s = boundary_character(&d, &Rational::from_integer(8)).unwrap().series;
    let back = rec.to_series().unwrap();
    assert_eq!(back.terms(), s.terms());
    assert_eq!((back.t_exp(), back.unit(), back.trunc()), (s.t_exp(), s.unit(), s.trunc()));

    let explicit = run(
        &["character", "--algebra", "A1", "--u", "5", "--j", "2", "--format", "json", "--order", "3"],
        &[("THETACHAR_ORDER", "8")],
    );
    assert_eq!(OutputRecord::from_json(&stdout(&explicit)).unwrap().meta.order, 3);
}

#[test]
fn selectors_agree() {
    let by_label = run(
        &["character", "--algebra", "A2", "--u", "2", "--p-k1-k2", "0,1,0", "--order", "3", "--format", "json"],
        &[],
    );
    let by_beta =
        run(&["character", "--algebra", "A2", "--u", "2", "--beta", "-1,0", "--order", "3", "--format", "json"], &[]);
    let a = OutputRecord::from_json(&stdout(&by_label)).unwrap();
    let b = OutputRecord::from_json(&stdout(&by_beta)).unwrap();
    assert_eq!(a.terms, b.terms);
}

#[test]
fn fusion_tables() {
    let o = run(&["fusion-table", "--algebra", "A2", "--u", "2"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 64);
    let o = run(&["fusion-table", "--algebra", "A1", "--u", "3", "--format", "json"], &[]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tensor"].as_array().unwrap().len(), 3);
    assert_eq!(v["tensor"][0][0][0], 1);
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "fusion"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[PASS]  8."));
    assert_eq!(run(&["verify", "nonsense"], &[]).status.code(), Some(2));
}
