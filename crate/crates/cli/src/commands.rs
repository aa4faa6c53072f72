use std::fmt::Write as _;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qext_core::ansatz::{derive_branches, ruleset_from_branch};
use qext_core::covariance::{check_covariance_with, CovarianceReport, QGNormalizer, TensorExpr};
use qext_core::fock::{build_rep, number_operators, symbolic_residuals, verify_osc_relations};
use qext_core::rewrite::{apply_derivative, build_ruleset, check_consistency, exterior_d};
use qext_core::rmatrix::{
    check_r_form_calculus, hat, hat_eigenvalues, quadratic_identity_residual, r_of, rtt_relations,
    transpose_inverse_check, ybe_check, RMatrix4, PAIR_LABELS,
};
use qext_core::text::{coeff_to_json, expr_to_json, format_with, parse_expr, Style};
use qext_core::{CalculusType, Expr, LaurentCoeff, Letter, RuleSet};

use crate::random::{random_expr, random_q};
use crate::{InputError, Outcome, Status};

/// Max-entry tolerance for the numeric oscillator checks.
pub const FOCK_TOLERANCE: f64 = 1e-12;

/// Sample points for the oscillator checks of `verify-all`.
pub const FOCK_SAMPLES: [(f64, f64); 3] = [(0.0, 2.0), (0.5, 0.5), (3.0, 0.0)];

/// Random expressions printed and re-parsed by `verify-all`.
pub const ROUND_TRIP_COUNT: usize = 1000;

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn type_json(t: CalculusType) -> Value {
    json!(t.number())
}

pub(crate) fn rule_set(t: CalculusType, printed_sign: bool) -> Result<RuleSet, InputError> {
    match (t, printed_sign) {
        (_, false) => Ok(build_ruleset(t)),
        (CalculusType::TypeII, true) => Ok(RuleSet::type_ii_printed_sign()),
        (CalculusType::TypeI, true) => Err(InputError("--printed-sign applies to --type 2 only".into())),
    }
}

fn expr_value(command: &str, t: CalculusType, input: &str, e: &Expr, style: Style) -> Outcome {
    let text = format_with(e, style);
    Outcome {
        status: Status::Value,
        payload: json!({
            "command": command,
            "type": type_json(t),
            "input": input,
            "result": expr_to_json(e),
            "text": format_with(e, Style::default()),
        }),
        text,
    }
}

pub(crate) fn normalize(t: CalculusType, src: &str, style: Style) -> Result<Outcome, InputError> {
    let e = parse_expr(src)?;
    Ok(expr_value("normalize", t, src, &build_ruleset(t).normalize(&e), style))
}

pub(crate) fn exterior(t: CalculusType, src: &str, style: Style) -> Result<Outcome, InputError> {
    let e = parse_expr(src)?;
    let d = exterior_d(&e, &build_ruleset(t))?;
    Ok(expr_value("d", t, src, &d, style))
}

pub(crate) fn derive(t: CalculusType, i: usize, src: &str, style: Style) -> Result<Outcome, InputError> {
    let e = parse_expr(src)?;
    let out = apply_derivative(i, &e, &build_ruleset(t));
    let mut o = expr_value("derive", t, src, &out, style);
    o.payload["wrt"] = json!(if i == 1 { "theta" } else { "phi" });
    Ok(o)
}

fn named_json<'a>(items: impl IntoIterator<Item = (&'static str, &'a LaurentCoeff)>) -> Value {
    Value::Object(
        items
            .into_iter()
            .map(|(k, v)| {
                (
                    k.to_string(),
                    json!({ "value": coeff_to_json(v), "text": v.to_string() }),
                )
            })
            .collect(),
    )
}

fn named_text<'a>(items: impl IntoIterator<Item = (&'static str, &'a LaurentCoeff)>) -> String {
    items
        .into_iter()
        .map(|(k, v)| format!("{k} = {v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub(crate) fn solve_ansatz() -> Result<Outcome, InputError> {
    let branches = derive_branches()?;
    let mut text = String::new();
    let mut items = Vec::new();
    let mut ok = branches.len() == 2;
    for (t, f, ab) in &branches {
        let rebuilt = ruleset_from_branch(*t, "derived", f, ab)?;
        let matches = rebuilt.same_rules(&build_ruleset(*t));
        ok &= matches;
        let _ = writeln!(text, "{t}");
        let _ = writeln!(text, "  coordinate-differential: {}", named_text(f.named()));
        let _ = writeln!(text, "  derivative-differential: {}", named_text(ab.named()));
        let _ = writeln!(text, "  {} rebuilt rules equal the shipped {t} rules", verdict(matches));
        items.push(json!({
            "type": type_json(*t),
            "coordinate_differential": named_json(f.named()),
            "derivative_differential": named_json(ab.named()),
            "matches_shipped_rules": matches,
        }));
    }
    let _ = writeln!(text, "{} {} branches", verdict(ok), branches.len());
    Ok(Outcome {
        status: Status::from_check(ok),
        payload: json!({ "command": "solve-ansatz", "branches": items }),
        text,
    })
}

pub(crate) fn consistency(rs: RuleSet, style: Style) -> Result<Outcome, InputError> {
    let report = check_consistency(&rs);
    let mut text = format!("{}\n", rs.label());
    let mut checks = Vec::new();
    for c in &report.checks {
        let _ = write!(
            text,
            "{} {}: {} [{} case",
            verdict(c.passed()),
            c.family,
            c.label,
            c.cases
        );
        text.push_str(if c.cases == 1 { "]\n" } else { "s]\n" });
        if !c.passed() {
            let _ = writeln!(text, "    residual: {}", format_with(&c.residual, style));
        }
        checks.push(json!({
            "family": c.family,
            "label": c.label,
            "cases": c.cases,
            "passed": c.passed(),
            "residual": expr_to_json(&c.residual),
        }));
    }
    Ok(Outcome {
        status: Status::from_check(report.passed()),
        payload: json!({
            "command": "consistency",
            "type": type_json(rs.calculus_type()),
            "rule_set": rs.label(),
            "checks": checks,
        }),
        text,
    })
}

pub(crate) fn confluence(rs: RuleSet, style: Style) -> Result<Outcome, InputError> {
    let report = rs.check_confluence();
    let mut text = format!(
        "{}\ntriples examined: {}, overlaps checked: {}\n",
        rs.label(),
        report.triples_examined,
        report.overlaps_checked
    );
    let mut failures = Vec::new();
    for f in &report.failures {
        let overlap = format_with(&Expr::word(f.overlap.letters()), style);
        let _ = writeln!(
            text,
            "FAIL {overlap}: {}  vs  {}",
            format_with(&f.left_normal_form, style),
            format_with(&f.right_normal_form, style)
        );
        failures.push(json!({
            "overlap": f.overlap.letters().iter().map(|g| g.ascii()).collect::<Vec<_>>(),
            "left": expr_to_json(&f.left_normal_form),
            "right": expr_to_json(&f.right_normal_form),
        }));
    }
    let _ = writeln!(
        text,
        "{} {} non-joining pairs",
        verdict(report.is_confluent()),
        report.failures.len()
    );
    Ok(Outcome {
        status: Status::from_check(report.is_confluent()),
        payload: json!({
            "command": "confluence",
            "type": type_json(rs.calculus_type()),
            "rule_set": rs.label(),
            "triples_examined": report.triples_examined,
            "overlaps_checked": report.overlaps_checked,
            "failures": failures,
        }),
        text,
    })
}

fn matrix_text(r: &RMatrix4) -> String {
    let m = r.matrix();
    let mut s = String::new();
    for (i, label) in PAIR_LABELS.iter().enumerate() {
        let row: Vec<String> = (0..4).map(|j| m[(i, j)].to_string()).collect();
        let _ = writeln!(s, "  {label}: [{}]", row.join(", "));
    }
    s
}

fn residuals_json(entries: &[(usize, usize, LaurentCoeff)]) -> Value {
    json!(entries
        .iter()
        .map(|(i, j, c)| json!({ "row": i, "col": j, "value": c.to_string() }))
        .collect::<Vec<_>>())
}

pub(crate) fn ybe(t: CalculusType) -> Outcome {
    let r = r_of(t);
    let rep = ybe_check(&r);
    let ok = rep.plain_ybe && rep.braid_ybe;
    let mut text = format!("R for {t}:\n{}", matrix_text(&r));
    let _ = writeln!(text, "{} R12 R13 R23 = R23 R13 R12", verdict(rep.plain_ybe));
    let _ = writeln!(
        text,
        "{} Rhat12 Rhat23 Rhat12 = Rhat23 Rhat12 Rhat23",
        verdict(rep.braid_ybe)
    );
    Outcome {
        status: Status::from_check(ok),
        payload: json!({
            "command": "ybe",
            "type": type_json(t),
            "plain": rep.plain_ybe,
            "braid": rep.braid_ybe,
            "entries_compared": rep.entries_compared,
            "plain_residuals": residuals_json(&rep.plain_residuals),
            "braid_residuals": residuals_json(&rep.braid_residuals),
        }),
        text,
    }
}

pub(crate) fn rcheck(t: CalculusType) -> Result<Outcome, InputError> {
    let report = check_r_form_calculus(t)?;
    let rh = hat(&r_of(t));
    let mut text = format!("Rhat for {t}:\n{}", matrix_text(&rh));
    let eig = hat_eigenvalues(&rh);
    let identity_ok = eig
        .as_ref()
        .is_some_and(|(a, b)| quadratic_identity_residual(&rh, a, b).is_zero());
    if let Some((a, b)) = &eig {
        let _ = writeln!(
            text,
            "{} eigenvalues {a} and {b}; (Rhat - ({a}))(Rhat - ({b})) = 0",
            verdict(identity_ok)
        );
    } else {
        let _ = writeln!(text, "FAIL eigenvalues not of the expected block form");
    }
    let mut families = Vec::new();
    for f in &report.families {
        let _ = write!(text, "{} {}", verdict(f.passed), f.name);
        if let Some(r) = &f.resolved {
            let _ = write!(text, " ({r})");
        }
        text.push('\n');
        for c in &f.conditions {
            let _ = writeln!(text, "    valid where {c} != 0");
        }
        for m in &f.mismatches {
            let _ = writeln!(text, "    {m}");
        }
        families.push(json!({
            "family": f.name,
            "passed": f.passed,
            "resolved": f.resolved,
            "conditions": f.conditions.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "mismatches": f.mismatches,
        }));
    }
    let scaling = |s: &Option<LaurentCoeff>| s.as_ref().map(|c| c.to_string());
    Ok(Outcome {
        status: Status::from_check(report.passed() && identity_ok),
        payload: json!({
            "command": "rcheck",
            "type": type_json(t),
            "eigenvalues": eig.as_ref().map(|(a, b)| vec![a.to_string(), b.to_string()]),
            "coordinate_scaling": scaling(&report.coordinate_scaling),
            "derivative_scaling": scaling(&report.derivative_scaling),
            "families": families,
        }),
        text,
    })
}

pub(crate) fn rtt(t: CalculusType) -> Result<Outcome, InputError> {
    let qg = QGNormalizer::for_calculus(t)?;
    let mut text = format!("relations from Rhat T1 T2 = T1 T2 Rhat, {t}:\n");
    let mut relations = Vec::new();
    for r in &qg.relations().relations {
        let s = format_with(r, Style::default());
        let _ = writeln!(text, "  {s} = 0");
        relations.push(json!({ "relation": expr_to_json(r), "text": s }));
    }
    let mut rules = Vec::new();
    text.push_str("rewriting (a < b < c < d):\n");
    for (lhs, rhs) in qg.system().rules() {
        let (l, r) = (
            format_with(&qg_word(&lhs), Style::default()),
            format_with(rhs, Style::default()),
        );
        let _ = writeln!(text, "  {l} -> {r}");
        rules.push(json!({ "lhs": l, "rhs": r }));
    }
    let ok = qg.is_confluent();
    let _ = writeln!(text, "{} rewriting is confluent", verdict(ok));
    Ok(Outcome {
        status: Status::from_check(ok),
        payload: json!({
            "command": "rtt",
            "type": type_json(t),
            "count": relations.len(),
            "relations": relations,
            "rules": rules,
            "confluent": ok,
        }),
        text,
    })
}

fn qg_word(w: &qext_core::Word<qext_core::rmatrix::QgLetter>) -> qext_core::rmatrix::QgExpr {
    qext_core::rmatrix::QgExpr::word(w.letters())
}

fn tensor_text(t: &TensorExpr, style: Style) -> String {
    if t.is_zero() {
        return "0".into();
    }
    t.terms()
        .map(|(a, b, c)| {
            let left = format_with(&qg_word(a).scale(c), Style::default());
            let right = format_with(&Expr::word(b.letters()), style);
            format!("({left}) (x) {right}")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn covariance_outcome(report: &CovarianceReport, style: Style) -> Outcome {
    let mut text = format!("coaction images, {}\n", report.calculus_type);
    let mut items = Vec::new();
    for r in &report.relations {
        let _ = writeln!(
            text,
            "{} {}: image of the {} relation vanishes",
            verdict(r.passed()),
            r.family,
            r.label
        );
        if !r.passed() {
            let _ = writeln!(text, "    residual: {}", tensor_text(&r.residual, style));
        }
        items.push(json!({
            "family": r.family,
            "relation": r.label,
            "passed": r.passed(),
            "residual_terms": r.residual.len(),
        }));
    }
    if !report.quantum_group_confluent {
        text.push_str("note: quantum-group rewriting is not confluent; nonzero residuals are inconclusive\n");
    }
    Outcome {
        status: Status::from_check(report.passed()),
        payload: json!({
            "command": "covariance",
            "type": type_json(report.calculus_type),
            "quantum_group_confluent": report.quantum_group_confluent,
            "relations": items,
        }),
        text,
    }
}

pub(crate) fn covariance(t: CalculusType, style: Style) -> Result<Outcome, InputError> {
    let qg = QGNormalizer::for_calculus(t)?;
    Ok(covariance_outcome(
        &check_covariance_with(&build_ruleset(t), &qg),
        style,
    ))
}

pub(crate) fn parse_complex(s: &str) -> Result<Complex64, InputError> {
    let bad = || InputError(format!("cannot parse '{s}' as re,im"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |x: &str| x.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(bad);
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(bad()),
    }
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub(crate) fn fock(t: CalculusType, q: Complex64) -> Result<Outcome, InputError> {
    let rep = build_rep(t, q)?;
    let report = verify_osc_relations(&rep);
    let symbolic = symbolic_residuals(&rep, &build_ruleset(t))?;
    let ok = report.passed(FOCK_TOLERANCE) && symbolic.passed(FOCK_TOLERANCE);
    let mut text = format!("{t}, q = {}{:+}i, p = conj(q)\n", q.re, q.im);
    for (label, r) in &report.per_relation {
        let _ = writeln!(text, "{} {label} = 0  (residual {r:.3e})", verdict(*r < FOCK_TOLERANCE));
    }
    let _ = writeln!(
        text,
        "{} rewrite rules as operator identities (max residual {:.3e})",
        verdict(symbolic.passed(FOCK_TOLERANCE)),
        symbolic.max_residual
    );
    let (n1, n2) = number_operators(&rep);
    let diag = |m: qext_core::fock::CMatrix4| m.diagonal().iter().map(|z| z.re).collect::<Vec<_>>();
    let _ = writeln!(text, "B1+ B1 = diag{:?}", diag(n1));
    let _ = writeln!(text, "B2+ B2 = diag{:?}", diag(n2));
    let _ = writeln!(text, "max residual {:.3e}", report.max_residual);
    Ok(Outcome {
        status: Status::from_check(ok),
        payload: json!({
            "command": "fock",
            "type": type_json(t),
            "q": complex_json(q),
            "p": complex_json(rep.p_val),
            "tolerance": FOCK_TOLERANCE,
            "max_residual": report.max_residual,
            "relations": report
                .per_relation
                .iter()
                .map(|(l, r)| json!({ "relation": l, "residual": r }))
                .collect::<Vec<_>>(),
            "rule_residual": symbolic.max_residual,
            "number_operators": [diag(n1), diag(n2)],
        }),
        text,
    })
}

/// One line of the `verify-all` report.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyVerdict {
    pub family: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn family(family: &'static str, passed: bool, detail: impl Into<String>) -> FamilyVerdict {
    FamilyVerdict {
        family,
        passed,
        detail: detail.into(),
    }
}

fn ansatz_family() -> FamilyVerdict {
    match derive_branches() {
        Ok(branches) => {
            let ok = branches.len() == 2
                && branches.iter().all(|(t, f, ab)| {
                    ruleset_from_branch(*t, "derived", f, ab).is_ok_and(|r| r.same_rules(&build_ruleset(*t)))
                });
            family(
                "ansatz",
                ok,
                format!("{} branches re-derived and equal to the shipped rules", branches.len()),
            )
        }
        Err(e) => family("ansatz", false, e.to_string()),
    }
}

fn consistency_family() -> FamilyVerdict {
    let ok = CalculusType::BOTH
        .iter()
        .all(|t| check_consistency(&build_ruleset(*t)).passed());
    family(
        "consistency",
        ok,
        "plane relation times differentials, d of the exchange relations, d^2 on words of length <= 3, derivative products",
    )
}

fn confluence_family() -> FamilyVerdict {
    let reports: Vec<_> = CalculusType::BOTH
        .iter()
        .map(|t| build_ruleset(*t).check_confluence())
        .collect();
    let variant = RuleSet::type_ii_printed_sign().check_confluence();
    let ok = reports.iter().all(|r| r.is_confluent() && r.triples_examined == 216) && !variant.is_confluent();
    family(
        "confluence",
        ok,
        format!(
            "216 triples per type; printed-sign variant has {} non-joining pairs",
            variant.failures.len()
        ),
    )
}

fn ybe_family() -> FamilyVerdict {
    let ok = CalculusType::BOTH.iter().all(|t| {
        let r = ybe_check(&r_of(*t));
        r.plain_ybe && r.braid_ybe
    });
    family(
        "yang-baxter",
        ok,
        "both R-matrices, plain and braid form, 64 entries each",
    )
}

fn rform_family() -> FamilyVerdict {
    let expected = [
        (CalculusType::TypeI, -LaurentCoeff::pq_pow(-1, -1)),
        (CalculusType::TypeII, -LaurentCoeff::pq_pow(1, 1)),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (t, s) in expected {
        match check_r_form_calculus(t) {
            Ok(r) => {
                ok &= r.passed()
                    && r.coordinate_scaling.as_ref() == Some(&s)
                    && r.derivative_scaling.as_ref() == Some(&s);
                parts.push(format!("{t} scaling {s}"));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{t}: {e}"));
            }
        }
    }
    family("r-matrix form", ok, parts.join("; "))
}

fn transpose_family() -> FamilyVerdict {
    let at_pq = transpose_inverse_check(true);
    let generic = transpose_inverse_check(false);
    family(
        "transpose-inverse",
        at_pq && !generic,
        format!("holds at p = q: {at_pq}; holds at generic p, q: {generic}"),
    )
}

fn covariance_family() -> FamilyVerdict {
    let mut ok = true;
    let mut counts = Vec::new();
    for t in CalculusType::BOTH {
        match QGNormalizer::for_calculus(t) {
            Ok(qg) => {
                counts.push(qg.relations().relations.len());
                let rep = check_covariance_with(&build_ruleset(t), &qg);
                ok &= qg.relations().relations.len() == 6 && qg.is_confluent() && rep.passed();
            }
            Err(_) => ok = false,
        }
    }
    let control = check_covariance_with(&build_ruleset(CalculusType::TypeI), &QGNormalizer::commutative());
    ok &= !control.passed();
    family(
        "rtt-covariance",
        ok,
        format!(
            "{counts:?} quantum-group relations; commuting entries break {} relation images",
            control.failures().count()
        ),
    )
}

fn oscillator_family() -> FamilyVerdict {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for t in CalculusType::BOTH {
        for (re, im) in FOCK_SAMPLES {
            match build_rep(t, Complex64::new(re, im)) {
                Ok(rep) => worst = worst.max(verify_osc_relations(&rep).max_residual),
                Err(_) => ok = false,
            }
        }
        if let Ok(rep) = build_rep(t, Complex64::from_polar(1.0, 0.7)) {
            let id = qext_core::fock::CMatrix4::identity();
            for b in [rep.b1, rep.b2] {
                worst = worst.max((b * b.adjoint() + b.adjoint() * b - id).max_abs());
            }
        }
    }
    let specific = build_rep(CalculusType::TypeI, Complex64::new(0.0, 2.0)).map(|rep| {
        let a = rep.b2 * rep.b2_dag() + rep.b2_dag() * rep.b2;
        let target = qext_core::fock::CMatrix4::diag([1.0, 1.0, 4.0, 4.0].map(|x| Complex64::new(x, 0.0)));
        (a - target).max_abs()
    });
    let specific_ok = specific.as_ref().is_ok_and(|r| *r < FOCK_TOLERANCE);
    ok &= worst < FOCK_TOLERANCE && specific_ok;
    family(
        "oscillators",
        ok,
        format!("q in {{2i, 0.5+0.5i, 3}} and |q| = 1, both types; max residual {worst:.1e}"),
    )
}

fn classical_family() -> FamilyVerdict {
    let classical = RuleSet::classical();
    let ok = CalculusType::BOTH.iter().all(|t| {
        build_ruleset(*t).specialize((0, 0), (0, 0)).same_rules(&classical)
            && r_of(*t).at_classical() == RMatrix4::identity()
            && rtt_relations(&hat(&r_of(*t)))
                .map_coeffs(LaurentCoeff::at_classical)
                .all_commutators()
    });
    family(
        "classical limit",
        ok,
        "rules, R-matrices and RTT relations at p = q = 1",
    )
}

fn round_trip_family(seed: u64) -> FamilyVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..ROUND_TRIP_COUNT {
        let e = random_expr(&mut rng);
        for style in [Style::default(), Style { unicode: true }] {
            if parse_expr(&format_with(&e, style)).ok().as_ref() != Some(&e) {
                failures += 1;
            }
        }
    }
    let mut assoc_failures = 0;
    for t in CalculusType::BOTH {
        let rs = build_ruleset(t);
        for _ in 0..25 {
            let (a, b, c) = (random_expr(&mut rng), random_expr(&mut rng), random_expr(&mut rng));
            let left = rs.normalize(&(&rs.normalize(&(&a * &b)) * &c));
            let right = rs.normalize(&(&a * &rs.normalize(&(&b * &c))));
            if left != right {
                assoc_failures += 1;
            }
        }
        let rep_ok =
            build_rep(t, random_q(&mut rng)).is_ok_and(|rep| verify_osc_relations(&rep).passed(FOCK_TOLERANCE));
        if !rep_ok {
            assoc_failures += 1;
        }
    }
    family(
        "round trip",
        failures == 0 && assoc_failures == 0,
        format!(
            "seed {seed}: {ROUND_TRIP_COUNT} random expressions printed and re-parsed ({failures} failures); \
             normal forms associative on 50 random triples ({assoc_failures} failures)"
        ),
    )
}

/// Every check, one verdict per family.
pub fn verify_all(seed: u64) -> Vec<FamilyVerdict> {
    vec![
        ansatz_family(),
        consistency_family(),
        confluence_family(),
        ybe_family(),
        rform_family(),
        transpose_family(),
        covariance_family(),
        oscillator_family(),
        classical_family(),
        round_trip_family(seed),
    ]
}

pub(crate) fn verify_all_outcome(seed: u64) -> Outcome {
    let verdicts = verify_all(seed);
    let ok = verdicts.iter().all(|v| v.passed);
    let mut text = String::new();
    for v in &verdicts {
        let _ = writeln!(text, "{} {}: {}", verdict(v.passed), v.family, v.detail);
    }
    let passed = verdicts.iter().filter(|v| v.passed).count();
    let _ = writeln!(text, "{} {passed}/{} families", verdict(ok), verdicts.len());
    Outcome {
        status: Status::from_check(ok),
        payload: json!({
            "command": "verify-all",
            "seed": seed,
            "families": verdicts
                .iter()
                .map(|v| json!({ "family": v.family, "passed": v.passed, "detail": v.detail }))
                .collect::<Vec<_>>(),
        }),
        text,
    }
}
