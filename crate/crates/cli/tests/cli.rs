use std::io::Cursor;

use qext_cli::{run_command, run_command_with_stdin, Status};

fn run(args: &[&str]) -> qext_cli::CommandResult {
    run_command(&args.iter().map(|s| s.to_string()).collect::<Vec<_>>())
}

fn exit(args: &[&str]) -> i32 {
    run(args).exit_code
}

#[test]
fn normalize_prints_the_normal_form() {
    let r = run(&["normalize", "--type", "1", "phi*Theta"]);
    assert_eq!(r.exit_code, 0);
    assert_eq!(r.status, Status::Value);
    assert_eq!(r.output.trim(), "p*Theta*phi + (1 - p*q)*Phi*theta");
}

#[test]
fn unicode_printing() {
    let r = run(&["--unicode", "normalize", "--type", "1", "phi*Theta"]);
    assert_eq!(r.output.trim(), "p*Θ*φ + (1 - p*q)*Φ*θ");
}

#[test]
fn expressions_from_stdin() {
    let argv: Vec<String> = ["normalize", "--type", "1", "-"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let r = run_command_with_stdin(&argv, &mut Cursor::new("phi*Theta\n"));
    assert_eq!(r.exit_code, 0);
    assert_eq!(r.output.trim(), "p*Theta*phi + (1 - p*q)*Phi*theta");
}

#[test]
fn value_commands_exit_zero() {
    assert_eq!(exit(&["d", "--type", "2", "theta*phi"]), 0);
    assert_eq!(exit(&["derive", "--wrt", "phi", "--type", "1", "theta*phi"]), 0);
    assert_eq!(
        run(&["derive", "--wrt", "theta", "--type", "1", "theta*phi"])
            .output
            .trim(),
        "phi"
    );
    assert_eq!(
        run(&["d", "--type", "1", "theta*phi"]).output.trim(),
        "Theta*phi - q*Phi*theta"
    );
}

#[test]
fn passing_checks_exit_zero() {
    assert_eq!(exit(&["solve-ansatz"]), 0);
    for t in ["1", "2"] {
        for cmd in ["consistency", "confluence", "ybe", "rcheck", "rtt", "covariance"] {
            assert_eq!(exit(&[cmd, "--type", t]), 0, "{cmd} --type {t}");
        }
        assert_eq!(exit(&["fock", "--type", t, "--q", "0.5,0.5"]), 0);
    }
}

#[test]
fn fock_at_two_i() {
    let r = run(&["--output", "json", "fock", "--type", "1", "--q", "0,2"]);
    assert_eq!(r.exit_code, 0);
    assert!(r.payload["max_residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(r.payload["status"], "pass");
}

#[test]
fn printed_sign_variant_fails() {
    let r = run(&["confluence", "--type", "2", "--printed-sign"]);
    assert_eq!(r.exit_code, 1);
    assert_eq!(r.status, Status::Fail);
    assert!(r.output.contains("FAIL"));
    assert_eq!(exit(&["consistency", "--type", "2", "--printed-sign"]), 1);
    assert_eq!(exit(&["confluence", "--type", "1", "--printed-sign"]), 2);
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(exit(&["bogus"]), 2);
    assert_eq!(exit(&[]), 2);
    assert_eq!(exit(&["ybe"]), 2);
    assert_eq!(exit(&["ybe", "--type", "3"]), 2);
    assert_eq!(exit(&["ybe", "--type", "1", "--frobnicate"]), 2);
    assert_eq!(exit(&["normalize", "--type", "1", "theta +* phi"]), 2);
    assert_eq!(exit(&["fock", "--type", "1", "--q", "0"]), 2);
    assert_eq!(exit(&["fock", "--type", "1", "--q", "x,y"]), 2);
    assert_eq!(exit(&["d", "--type", "1", "d_theta"]), 2);
    let r = run(&["normalize", "--type", "1", "theta^-1"]);
    assert_eq!(r.exit_code, 2);
    assert!(r.output.contains("negative exponents are parameter-only"));
    let r = run(&["normalize", "--type", "1", "theta )"]);
    assert!(r.output.contains("line 1, column 7"), "{}", r.output);
}

#[test]
fn help_exits_zero() {
    assert_eq!(exit(&["--help"]), 0);
    assert_eq!(exit(&["--version"]), 0);
}

#[test]
fn json_output_is_exact() {
    let r = run(&["--output", "json", "normalize", "--type", "1", "phi*Theta"]);
    let parsed: serde_json::Value = serde_json::from_str(&r.output).unwrap();
    assert_eq!(parsed, r.payload);
    let terms = parsed["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["word"], serde_json::json!(["Theta", "phi"]));
    assert_eq!(
        terms[0]["coeff"]["terms"],
        serde_json::json!([{ "p_exp": 1, "q_exp": 0, "num": 1, "den": 1 }])
    );
}

#[test]
fn rtt_lists_six_relations() {
    for t in ["1", "2"] {
        let r = run(&["--output", "json", "rtt", "--type", t]);
        assert_eq!(r.payload["count"], 6);
        assert_eq!(r.payload["confluent"], true);
    }
}

#[test]
fn runs_are_deterministic() {
    let a = run(&["--seed", "7", "--output", "json", "verify-all"]);
    let b = run(&["--seed", "7", "--output", "json", "verify-all"]);
    assert_eq!(a.output, b.output);
}
