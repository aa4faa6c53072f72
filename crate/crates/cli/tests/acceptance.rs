//! One verdict line per acceptance criterion, written straight to stderr so
//! it shows up without `--nocapture`. The test fails if any criterion fails.

use std::io::Write;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use qext_cli::random::random_expr;
use qext_cli::{run_command, verify_all_view};
use qext_core::ansatz::derive_branches;
use qext_core::covariance::{check_covariance_with, QGNormalizer};
use qext_core::fock::{build_rep, CMatrix4};
use qext_core::rewrite::build_ruleset;
use qext_core::rmatrix::{hat, r_of, rtt_relations, RMatrix4};
use qext_core::text::{format_expr, parse_expr};
use qext_core::{CalculusType, LaurentCoeff, RuleSet};

/// Max-entry tolerance for every numeric comparison.
const TOL: f64 = 1e-12;

const GOLDEN: &str = include_str!("golden/verify_all.json");

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["--output".to_string(), "json".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let r = run_command(&argv);
    (r.exit_code, r.payload)
}

fn c(src: &str) -> LaurentCoeff {
    qext_core::text::parse_coeff(src).unwrap()
}

fn criterion_1() -> (bool, String) {
    let expected_f = [
        [
            ("A", "1"),
            ("B", "1"),
            ("F11", "q"),
            ("F12", "0"),
            ("F21", "p"),
            ("F22", "1 - p*q"),
        ],
        [
            ("A", "1"),
            ("B", "1"),
            ("F11", "p^-1"),
            ("F12", "1 - p^-1*q^-1"),
            ("F21", "q^-1"),
            ("F22", "0"),
        ],
    ];
    let expected_ab = [
        [
            ("A11", "1"),
            ("A12", "1 - p^-1*q^-1"),
            ("A21", "q^-1"),
            ("A22", "0"),
            ("B11", "p^-1"),
            ("B12", "0"),
            ("B21", "1"),
            ("B22", "0"),
        ],
        [
            ("A11", "1"),
            ("A12", "0"),
            ("A21", "p"),
            ("A22", "0"),
            ("B11", "q"),
            ("B12", "0"),
            ("B21", "1"),
            ("B22", "1 - p*q"),
        ],
    ];
    let Ok(branches) = derive_branches() else {
        return (false, "ansatz solver failed".into());
    };
    let mut ok = branches.len() == 2;
    for (i, (_, f, ab)) in branches.iter().enumerate().take(2) {
        ok &= f
            .named()
            .iter()
            .zip(expected_f[i])
            .all(|((k, v), (ek, ev))| *k == ek && **v == c(ev));
        ok &= ab
            .named()
            .iter()
            .zip(expected_ab[i])
            .all(|((k, v), (ek, ev))| *k == ek && **v == c(ev));
    }
    let (code, payload) = json(&["solve-ansatz"]);
    ok &= code == 0 && payload["branches"].as_array().map(Vec::len) == Some(2);
    (ok, format!("{} branches, exact coefficient match", branches.len()))
}

fn criterion_2() -> (bool, String) {
    let mut ok = true;
    let mut checks = 0;
    for t in ["1", "2"] {
        let (code, payload) = json(&["consistency", "--type", t]);
        let list = payload["checks"].as_array().cloned().unwrap_or_default();
        checks += list.len();
        ok &= code == 0 && !list.is_empty() && list.iter().all(|c| c["passed"] == true);
        let families: Vec<&str> = list.iter().filter_map(|c| c["family"].as_str()).collect();
        for needed in ["plane_relation", "d_of_exchange_relations", "d_squared"] {
            ok &= families.contains(&needed);
        }
    }
    (ok, format!("{checks} identities reduce to exactly 0"))
}

fn criterion_3() -> (bool, String) {
    let mut ok = true;
    for t in ["1", "2"] {
        let (code, payload) = json(&["confluence", "--type", t]);
        ok &= code == 0
            && payload["triples_examined"] == 216
            && payload["failures"].as_array().is_some_and(Vec::is_empty);
    }
    let (code, payload) = json(&["confluence", "--type", "2", "--printed-sign"]);
    let bad = payload["failures"].as_array().map_or(0, Vec::len);
    ok &= code == 1 && bad >= 1;
    (
        ok,
        format!("216 triples per type join; printed-sign variant: {bad} non-joining pairs"),
    )
}

fn criterion_4() -> (bool, String) {
    let mut ok = true;
    for t in ["1", "2"] {
        let (code, p) = json(&["ybe", "--type", t]);
        ok &= code == 0 && p["plain"] == true && p["braid"] == true && p["entries_compared"] == 64;
    }
    (ok, "plain and braid form, 64 exact entries, both types".into())
}

fn criterion_5() -> (bool, String) {
    let expected = [("1", "-p^-1*q^-1"), ("2", "-p*q")];
    let mut ok = true;
    for (t, s) in expected {
        let (code, p) = json(&["rcheck", "--type", t]);
        ok &= code == 0 && p["coordinate_scaling"] == s && p["derivative_scaling"] == s;
        ok &= p["families"]
            .as_array()
            .is_some_and(|f| f.len() == 6 && f.iter().all(|x| x["passed"] == true));
    }
    (ok, "six families per type; scalings -(pq)^-1 and -pq".into())
}

fn criterion_6() -> (bool, String) {
    let ok = qext_core::rmatrix::transpose_inverse_check(true) && !qext_core::rmatrix::transpose_inverse_check(false);
    (ok, "equality at p = q, fails at generic p, q".into())
}

fn criterion_7() -> (bool, String) {
    let mut ok = true;
    let mut images = 0;
    for t in ["1", "2"] {
        let (code, p) = json(&["covariance", "--type", t]);
        let rel = p["relations"].as_array().cloned().unwrap_or_default();
        images += rel.len();
        ok &= code == 0 && !rel.is_empty() && p["quantum_group_confluent"] == true;
    }
    let control = check_covariance_with(&build_ruleset(CalculusType::TypeI), &QGNormalizer::commutative());
    let broken = control.failures().count();
    ok &= broken >= 1;
    (
        ok,
        format!("{images} relation images vanish; commuting a, b, c, d break {broken}"),
    )
}

fn criterion_8() -> (bool, String) {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for t in ["1", "2"] {
        for q in ["0,2", "0.5,0.5", "3,0"] {
            let (code, p) = json(&["fock", "--type", t, "--q", q]);
            ok &= code == 0;
            worst = worst.max(p["max_residual"].as_f64().unwrap_or(f64::INFINITY));
        }
    }
    let id = CMatrix4::identity();
    for t in CalculusType::BOTH {
        for k in 0..8 {
            let rep = build_rep(t, Complex64::from_polar(1.0, 0.8 * k as f64)).unwrap();
            for b in [rep.b1, rep.b2] {
                worst = worst.max((b * b.adjoint() + b.adjoint() * b - id).max_abs());
            }
        }
    }
    let rep = build_rep(CalculusType::TypeI, Complex64::new(0.0, 2.0)).unwrap();
    let target = CMatrix4::diag([1.0, 1.0, 4.0, 4.0].map(|x| Complex64::new(x, 0.0)));
    let special = (rep.b2 * rep.b2_dag() + rep.b2_dag() * rep.b2 - target).max_abs();
    ok &= worst < TOL && special < TOL;
    (
        ok,
        format!("max residual {worst:.1e}, {{B2, B2+}} at q = 2i off by {special:.1e} (tolerance {TOL:.0e})"),
    )
}

fn criterion_9() -> (bool, String) {
    let classical = RuleSet::classical();
    let ok = CalculusType::BOTH.iter().all(|t| {
        build_ruleset(*t).specialize((0, 0), (0, 0)).same_rules(&classical)
            && r_of(*t).at_classical() == RMatrix4::identity()
            && rtt_relations(&hat(&r_of(*t)))
                .map_coeffs(LaurentCoeff::at_classical)
                .all_commutators()
    });
    (ok, "rules, R-matrices and RTT relations at p = q = 1".into())
}

fn criterion_10() -> (bool, String) {
    let (code, payload) = json(&["verify-all"]);
    let pinned: Value = serde_json::from_str(GOLDEN).unwrap();
    let schema_ok = verify_all_view(&payload) == pinned;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let round_trips = (0..1000)
        .filter(|_| {
            let e = random_expr(&mut rng);
            parse_expr(&format_expr(&e)).ok() == Some(e)
        })
        .count();
    let ok = code == 0 && schema_ok && round_trips == 1000;
    (
        ok,
        format!("verify-all exit {code}, golden schema match {schema_ok}, {round_trips}/1000 round trips"),
    )
}

#[test]
fn acceptance() {
    let criteria: [fn() -> (bool, String); 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failed = Vec::new();
    for (i, f) in criteria.iter().enumerate() {
        let (ok, detail) = f();
        let line = format!("criterion {}: {} {detail}\n", i + 1, if ok { "PASS" } else { "FAIL" });
        let _ = std::io::stderr().write_all(line.as_bytes());
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
