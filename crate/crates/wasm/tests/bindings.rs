use qext_wasm::{derive_json, fock_json, normalize_json};

#[test]
fn normalize_reports_text_and_unicode() {
    let v = normalize_json(1, "phi*Theta").unwrap();
    assert_eq!(v["text"], "p*Theta*phi + (1 - p*q)*Phi*theta");
    assert_eq!(v["unicode"], "p*Θ*φ + (1 - p*q)*Φ*θ");
    assert_eq!(v["json"]["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn derivatives() {
    assert_eq!(derive_json(1, "theta", "theta*phi").unwrap()["text"], "phi");
    assert_eq!(
        derive_json(1, "d", "theta*phi").unwrap()["text"],
        "Theta*phi - q*Phi*theta"
    );
    assert!(derive_json(1, "psi", "theta").is_err());
    assert!(derive_json(1, "d", "d_theta").is_err());
}

#[test]
fn fock_at_two_i() {
    let v = fock_json(1, 0.0, 2.0).unwrap();
    assert!(v["max_residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["relations"].as_array().unwrap().len(), 10);
    assert_eq!(v["p"], serde_json::json!([0.0, -2.0]));
    assert_eq!(v["b1"].as_array().unwrap().len(), 4);
}

#[test]
fn bad_input_is_an_error() {
    assert!(normalize_json(3, "theta").is_err());
    assert!(normalize_json(1, "theta +").unwrap_err().contains("column"));
    assert!(fock_json(2, 0.0, 0.0).is_err());
}
