//! Browser bindings. Each export takes plain strings and returns a JSON
//! document; errors come back as a JS exception carrying the message.

use num_complex::Complex64;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use qext_core::fock::{build_rep, number_operators, verify_osc_relations};
use qext_core::rewrite::{apply_derivative, build_ruleset, exterior_d};
use qext_core::text::{expr_to_json, format_with, parse_expr, Style};
use qext_core::{CalculusType, Expr};

fn calculus(ty: u8) -> Result<CalculusType, String> {
    CalculusType::from_number(ty).ok_or_else(|| format!("unknown calculus type {ty}; use 1 or 2"))
}

fn expr_report(e: &Expr) -> Value {
    json!({
        "text": format_with(e, Style::default()),
        "unicode": format_with(e, Style { unicode: true }),
        "json": expr_to_json(e),
    })
}

pub fn normalize_json(ty: u8, src: &str) -> Result<Value, String> {
    let rs = build_ruleset(calculus(ty)?);
    let e = parse_expr(src).map_err(|e| e.to_string())?;
    Ok(expr_report(&rs.normalize(&e)))
}

/// `wrt` is `"d"` for the exterior derivative, `"theta"` or `"phi"` for a
/// partial derivative.
pub fn derive_json(ty: u8, wrt: &str, src: &str) -> Result<Value, String> {
    let rs = build_ruleset(calculus(ty)?);
    let e = parse_expr(src).map_err(|e| e.to_string())?;
    let out = match wrt {
        "d" => exterior_d(&e, &rs).map_err(|e| e.to_string())?,
        "theta" => apply_derivative(1, &e, &rs),
        "phi" => apply_derivative(2, &e, &rs),
        other => return Err(format!("unknown derivative '{other}'")),
    };
    Ok(expr_report(&out))
}

fn matrix_json(m: &qext_core::fock::CMatrix4) -> Value {
    json!(m
        .0
        .iter()
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

pub fn fock_json(ty: u8, re: f64, im: f64) -> Result<Value, String> {
    let rep = build_rep(calculus(ty)?, Complex64::new(re, im)).map_err(|e| e.to_string())?;
    let report = verify_osc_relations(&rep);
    let (n1, n2) = number_operators(&rep);
    let diag = |m: qext_core::fock::CMatrix4| m.diagonal().iter().map(|z| z.re).collect::<Vec<_>>();
    Ok(json!({
        "q": [rep.q_val.re, rep.q_val.im],
        "p": [rep.p_val.re, rep.p_val.im],
        "b1": matrix_json(&rep.b1),
        "b2": matrix_json(&rep.b2),
        "relations": report
            .per_relation
            .iter()
            .map(|(l, r)| json!({ "relation": l, "residual": r }))
            .collect::<Vec<_>>(),
        "max_residual": report.max_residual,
        "number_operators": [diag(n1), diag(n2)],
    }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn normalize(ty: u8, src: &str) -> Result<String, JsValue> {
    to_js(normalize_json(ty, src))
}

#[wasm_bindgen]
pub fn derive(ty: u8, wrt: &str, src: &str) -> Result<String, JsValue> {
    to_js(derive_json(ty, wrt, src))
}

#[wasm_bindgen]
pub fn fock(ty: u8, re: f64, im: f64) -> Result<String, JsValue> {
    to_js(fock_json(ty, re, im))
}
