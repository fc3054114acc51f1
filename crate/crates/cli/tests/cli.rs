use serde_json::Value;
use stirling_cli::run;

fn argv(args: &[&str]) -> Vec<String> {
    std::iter::once("stirling").chain(args.iter().copied()).map(String::from).collect()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = run(argv(&a));
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid JSON")
}

#[test]
fn every_subcommand_supports_every_format() {
    let commands: &[&[&str]] = &[
        &["bernoulli"],
        &["zeta"],
        &["emsum"],
        &["stirling", "--x", "10"],
        &["lgamma", "--x", "10"],
        &["discrepancy", "--x", "3"],
        &["factor-coeffs"],
        &["verify-resum"],
        &["solve-ode", "--coeffs", "2,3,1"],
        &["oracle", "--x", "2.5"],
        &["constant-claim"],
    ];
    for cmd in commands {
        for format in ["json", "csv", "text"] {
            let mut a = cmd.to_vec();
            a.extend(["--format", format]);
            let out = run(argv(&a));
            assert_eq!(out.code, 0, "{cmd:?} {format}: {}", out.stderr);
            assert!(!out.stdout.is_empty());
            assert!(out.stderr.is_empty());
        }
    }
}

#[test]
fn output_is_deterministic() {
    for _ in 0..3 {
        assert_eq!(run(argv(&["lgamma", "--x", "7.25", "--format", "json"])), run(argv(&["lgamma", "--x", "7.25", "--format", "json"])));
    }
}

#[test]
fn bernoulli_twelve_is_an_exact_string() {
    let v = json(&["bernoulli", "--max", "12"]);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "bernoulli");
    assert_eq!(v["results"][12]["value"], "-691/2730");
}

#[test]
fn discrepancy_at_one_is_zero() {
    let v = json(&["discrepancy", "--x", "1"]);
    assert_eq!(v["results"][0]["discrepancy"].as_f64(), Some(0.0));
}

#[test]
fn json_numbers_round_trip() {
    let lib = stirling_core::asymptotic::log_gamma_corrected(33.3, 15).unwrap();
    let v = json(&["lgamma", "--x", "33.3"]);
    let emitted = v["results"][0]["value"].as_f64().unwrap();
    assert_eq!(emitted.to_bits(), lib.value.to_bits());
    let x = v["inputs"]["x"].as_f64().unwrap();
    assert_eq!(x, 33.3);
}

#[test]
fn fractions_are_accepted_for_reals() {
    let a = json(&["discrepancy", "--x", "1/2"]);
    let b = json(&["discrepancy", "--x", "0.5"]);
    assert_eq!(a["results"], b["results"]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &[],
        &["stirling"],
        &["stirling", "--x", "ten"],
        &["stirling", "--x", "1e999"],
        &["stirling", "--x", "-3"],
        &["bernoulli", "--max", "-1"],
        &["lgamma", "--x", "0"],
        &["emsum", "--g", "sin(x)"],
        &["bernoulli", "--format", "yaml"],
        &["solve-ode", "--coeffs", "1,,2"],
        &["oracle"],
    ] {
        let out = run(argv(args));
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn computational_failures_exit_one() {
    // (D + 1)^2 has a double root, so the simple-root solution does not apply.
    let out = run(argv(&["solve-ode", "--coeffs", "1,2,1"]));
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("not simple"));
}

#[test]
fn help_goes_to_stdout() {
    let out = run(argv(&["--help"]));
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("verify-resum"));
}

#[test]
fn solve_ode_reports_roots_and_small_residuals() {
    let v = json(&["solve-ode", "--coeffs", "6,5,1", "--forcing", "exp(0.5 x)", "--x", "3"]);
    let rows = v["results"].as_array().unwrap();
    let roots: Vec<f64> = rows
        .iter()
        .filter(|r| r["kind"] == "root")
        .map(|r| r["re"].as_f64().unwrap())
        .collect();
    assert_eq!(roots.len(), 2);
    assert!(roots.iter().any(|r| (r + 2.0).abs() < 1e-12));
    assert!(roots.iter().any(|r| (r + 3.0).abs() < 1e-12));
    for r in rows.iter().filter(|r| r["kind"] == "residual") {
        assert!(r["residual"].as_f64().unwrap() <= 1e-8);
    }
}

#[test]
fn constant_claim_marks_the_smallest_term() {
    let v = json(&["constant-claim"]);
    assert_eq!(v["inputs"]["optimal_index"], 4);
    let target = v["inputs"]["target"].as_f64().unwrap();
    let value = v["inputs"]["optimal_value"].as_f64().unwrap();
    assert!((value - target).abs() < 5e-3);
}
