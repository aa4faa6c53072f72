//! Rewriting systems for the Type I and Type II calculi: normal forms,
//! critical pairs, the exterior derivative, the action of the partial
//! derivatives and the consistency checks that tie them together.

pub(crate) mod rules;
mod system;

pub use rules::{build_ruleset, CalculusType, RuleSet};
pub use system::{ConfluenceFailure, ConfluenceReport, CriticalPair, RewriteSystem};

use crate::algebra::{Expr, Generator, Kind, Letter, Word};
use crate::error::{Error, Result};
use crate::laurent::LaurentCoeff;

use Generator as G;

/// `d` on the free algebra, without normalization.
///
/// `d(θ) = Θ`, `d(φ) = Φ`, `d(Θ) = d(Φ) = 0`, scalars are closed and the
/// graded Leibniz rule supplies the sign `(-1)^{parity of the prefix}`.
pub fn exterior_d_free(e: &Expr) -> Result<Expr> {
    if !e.is_derivative_free() {
        return Err(Error::DerivativeInExteriorD);
    }
    let mut out = Expr::zero();
    for (word, c) in e.terms() {
        let letters = word.letters();
        let mut odd_prefix = false;
        for (k, g) in letters.iter().enumerate() {
            if g.kind() == Kind::Coordinate {
                let mut v = letters.to_vec();
                v[k] = Generator::diff(g.index());
                let sign = if odd_prefix { -c } else { c.clone() };
                out.add_term(Word(v), sign);
            }
            if g.parity() == crate::algebra::Parity::Odd {
                odd_prefix = !odd_prefix;
            }
        }
    }
    Ok(out)
}

/// `d(e)` reduced to normal form under `rs`.
pub fn exterior_d(e: &Expr, rs: &RuleSet) -> Result<Expr> {
    exterior_d_free(e).map(|d| rs.normalize(&d))
}

/// Action of `∂_i` (`i = 1` for `∂θ`, `2` for `∂φ`) on `f`.
///
/// The product `∂_i · f` is normalized and every term still ending in a
/// derivative is dropped: derivatives annihilate the constant function. In
/// normal form all derivatives sit at the right end of a word, and no rule
/// moves the last derivative of a word, so the truncation is compatible with
/// composition.
pub fn apply_derivative(i: usize, f: &Expr, rs: &RuleSet) -> Expr {
    let nf = rs.normalize(&(&Expr::letter(Generator::deriv(i)) * f));
    Expr::from_terms(
        nf.into_terms()
            .filter(|(w, _)| w.letters().last().is_none_or(|g| g.kind() != Kind::Derivative)),
    )
}

/// One identity that should reduce to zero, with its actual normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub family: &'static str,
    pub label: String,
    /// Number of instances folded into this check.
    pub cases: usize,
    /// Normal form of the first instance that failed, or zero.
    pub residual: Expr,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checks: Vec<IdentityCheck>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

fn plane_relation() -> Expr {
    Expr::word(&[G::THETA, G::PHI]) + Expr::term(LaurentCoeff::pq_pow(-1, 0), Word(vec![G::PHI, G::THETA]))
}

fn folded(family: &'static str, label: String, residuals: impl IntoIterator<Item = Expr>) -> IdentityCheck {
    let mut cases = 0;
    let mut first_bad = None;
    for r in residuals {
        cases += 1;
        if first_bad.is_none() && !r.is_zero() {
            first_bad = Some(r);
        }
    }
    IdentityCheck {
        family,
        label,
        cases,
        residual: first_bad.unwrap_or_default(),
    }
}

/// Normal-form words of length ≤ `max_len` in coordinates and differentials.
pub fn plane_basis_words(rs: &RuleSet, max_len: usize) -> Vec<Word<Generator>> {
    let plane = [G::BIG_THETA, G::BIG_PHI, G::THETA, G::PHI];
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &g in &plane {
                let mut v = w.0.clone();
                v.push(g);
                let nw = Word(v);
                if rs.system().is_normal(&nw) {
                    next.push(nw);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Runs the consistency conditions of the calculus:
///
/// * the plane relation multiplied on the right by `Θ` and by `Φ`, and `d` of
///   it, reduce to zero;
/// * `d` of each coordinate–differential relation reduces to zero;
/// * `d²w = 0` for every word of length ≤ 3 in coordinates and differentials;
/// * `∂θ∂φ + q∂φ∂θ`, `∂θ∂θ` and `∂φ∂φ`, acting by composition, annihilate all
///   basis words of length ≤ 2.
pub fn check_consistency(rs: &RuleSet) -> ConsistencyReport {
    let mut checks = Vec::new();
    let rel = plane_relation();

    for dg in [G::BIG_THETA, G::BIG_PHI] {
        checks.push(IdentityCheck {
            family: "plane_relation",
            label: format!("(theta*phi + p^-1*phi*theta)*{}", dg.ascii()),
            cases: 1,
            residual: rs.normalize(&(&rel * &Expr::letter(dg))),
        });
    }
    checks.push(IdentityCheck {
        family: "plane_relation",
        label: "d(theta*phi + p^-1*phi*theta)".into(),
        cases: 1,
        residual: exterior_d(&rel, rs).expect("plane relation is derivative free"),
    });

    for (x, y) in [
        (G::THETA, G::BIG_THETA),
        (G::THETA, G::BIG_PHI),
        (G::PHI, G::BIG_PHI),
        (G::PHI, G::BIG_THETA),
    ] {
        let Some(r) = rs.relation(x, y) else { continue };
        checks.push(IdentityCheck {
            family: "d_of_exchange_relations",
            label: format!("d({}*{} - rhs)", x.ascii(), y.ascii()),
            cases: 1,
            residual: exterior_d(&r, rs).expect("relation is derivative free"),
        });
    }

    let plane = [G::BIG_THETA, G::BIG_PHI, G::THETA, G::PHI];
    let words: Vec<Word<Generator>> = (0..=3)
        .flat_map(|len| {
            let mut ws = vec![Word::empty()];
            for _ in 0..len {
                ws = ws
                    .into_iter()
                    .flat_map(|w| {
                        plane.iter().map(move |&g| {
                            let mut v = w.0.clone();
                            v.push(g);
                            Word(v)
                        })
                    })
                    .collect();
            }
            ws
        })
        .collect();
    checks.push(folded(
        "d_squared",
        "d(d(w)) = 0 for all words of length <= 3".into(),
        words.iter().map(|w| {
            let e = Expr::term(LaurentCoeff::one(), w.clone());
            let d1 = exterior_d(&e, rs).expect("derivative free");
            exterior_d(&d1, rs).expect("derivative free")
        }),
    ));

    let basis = plane_basis_words(rs, 2);
    let act = |i: usize, f: &Expr| apply_derivative(i, f, rs);
    let q = LaurentCoeff::q();
    checks.push(folded(
        "derivative_products",
        "(d_theta*d_phi + q*d_phi*d_theta) f = 0 for basis f of length <= 2".into(),
        basis.iter().map(|w| {
            let f = Expr::term(LaurentCoeff::one(), w.clone());
            act(1, &act(2, &f)) + act(2, &act(1, &f)).scale(&q)
        }),
    ));
    for i in [1, 2] {
        checks.push(folded(
            "derivative_products",
            format!("{0}*{0} f = 0 for basis f of length <= 2", Generator::deriv(i).ascii()),
            basis.iter().map(|w| {
                let f = Expr::term(LaurentCoeff::one(), w.clone());
                act(i, &act(i, &f))
            }),
        ));
    }

    ConsistencyReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(gs: &[Generator]) -> Expr {
        Expr::word(gs)
    }

    fn rs1() -> RuleSet {
        build_ruleset(CalculusType::TypeI)
    }

    #[test]
    fn plane_relation_normalizes_to_zero() {
        for t in CalculusType::BOTH {
            assert!(build_ruleset(t).normalize(&plane_relation()).is_zero());
        }
    }

    #[test]
    fn theta_big_phi_type_i() {
        let nf = rs1().normalize(&x(&[G::THETA, G::BIG_PHI]));
        assert_eq!(nf, Expr::term(LaurentCoeff::q(), Word(vec![G::BIG_PHI, G::THETA])));
    }

    #[test]
    fn consistency_product_with_big_theta() {
        let e = &plane_relation() * &Expr::letter(G::BIG_THETA);
        assert!(rs1().normalize(&e).is_zero());
    }

    #[test]
    fn differentials_commute_with_q() {
        for t in CalculusType::BOTH {
            let nf = build_ruleset(t).normalize(&x(&[G::BIG_PHI, G::BIG_THETA]));
            assert_eq!(
                nf,
                Expr::term(LaurentCoeff::pq_pow(0, -1), Word(vec![G::BIG_THETA, G::BIG_PHI]))
            );
        }
    }

    #[test]
    fn exterior_d_examples() {
        assert_eq!(exterior_d_free(&x(&[G::THETA])).unwrap(), x(&[G::BIG_THETA]));
        let d = exterior_d_free(&x(&[G::THETA, G::PHI])).unwrap();
        assert_eq!(d, x(&[G::BIG_THETA, G::PHI]) - x(&[G::THETA, G::BIG_PHI]));
        // normalized, θΦ = qΦθ
        let d = exterior_d(&x(&[G::THETA, G::PHI]), &rs1()).unwrap();
        assert_eq!(
            d,
            x(&[G::BIG_THETA, G::PHI]) - Expr::term(LaurentCoeff::q(), Word(vec![G::BIG_PHI, G::THETA]))
        );
        let dd = exterior_d(&d, &rs1()).unwrap();
        assert!(dd.is_zero());
    }

    #[test]
    fn exterior_d_rejects_derivatives() {
        assert_eq!(
            exterior_d_free(&x(&[G::PARTIAL_THETA])),
            Err(Error::DerivativeInExteriorD)
        );
    }

    #[test]
    fn derivative_examples() {
        let rs = rs1();
        let tp = x(&[G::THETA, G::PHI]);
        assert_eq!(apply_derivative(1, &tp, &rs), x(&[G::PHI]));
        assert_eq!(
            apply_derivative(2, &tp, &rs),
            Expr::term(-LaurentCoeff::q(), Word(vec![G::THETA]))
        );
        assert!(apply_derivative(1, &x(&[G::PHI]), &rs).is_zero());
        assert!(apply_derivative(2, &Expr::one(), &rs).is_zero());
    }

    #[test]
    fn derivatives_see_through_differentials() {
        let rs = rs1();
        // ∂θ(Θθ) = Θ∂θθ + (1 - p⁻¹q⁻¹)Φ∂φθ → Θ
        let f = x(&[G::BIG_THETA, G::THETA]);
        assert_eq!(apply_derivative(1, &f, &rs), x(&[G::BIG_THETA]));
    }

    #[test]
    fn both_calculi_are_consistent() {
        for t in CalculusType::BOTH {
            let report = check_consistency(&build_ruleset(t));
            assert!(report.passed(), "{t}: {:?}", report.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn printed_sign_variant_fails_consistency() {
        let report = check_consistency(&RuleSet::type_ii_printed_sign());
        assert!(!report.passed());
        let failed: Vec<_> = report.failures().map(|c| c.label.as_str()).collect();
        assert!(failed.contains(&"d(theta*phi + p^-1*phi*theta)"), "{failed:?}");
        assert!(failed.contains(&"d(theta*Phi - rhs)"), "{failed:?}");
        // the right products with the differentials still vanish
        assert!(!failed.iter().any(|l| l.starts_with("(theta*phi")));
    }

    #[test]
    fn confluence_of_shipped_rule_sets() {
        for t in CalculusType::BOTH {
            let rep = build_ruleset(t).check_confluence();
            assert!(rep.is_confluent(), "{t}: {:?}", rep.failures);
            assert_eq!(rep.triples_examined, 216);
        }
    }

    #[test]
    fn printed_sign_variant_is_not_confluent() {
        assert!(!RuleSet::type_ii_printed_sign().check_confluence().is_confluent());
    }

    #[test]
    fn plane_basis_words_up_to_two() {
        // 1, Θ, Φ, θ, φ, ΘΘ, ΘΦ, Θθ, Θφ, ΦΦ, Φθ, Φφ, θφ
        assert_eq!(plane_basis_words(&rs1(), 2).len(), 13);
    }
}
