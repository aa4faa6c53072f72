use std::fmt;

use crate::algebra::{Expr, Generator, Word};
use crate::error::{Error, Result};
use crate::laurent::{Exponent, LaurentCoeff};

use super::system::{ConfluenceReport, CriticalPair, RewriteSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CalculusType {
    TypeI,
    TypeII,
}

impl CalculusType {
    pub const BOTH: [CalculusType; 2] = [CalculusType::TypeI, CalculusType::TypeII];

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Self::TypeI),
            2 => Some(Self::TypeII),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Self::TypeI => 1,
            Self::TypeII => 2,
        }
    }
}

impl fmt::Display for CalculusType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TypeI => f.write_str("Type I"),
            Self::TypeII => f.write_str("Type II"),
        }
    }
}

/// The relations of one calculus, oriented toward `Θ^a Φ^b θ^c φ^d ∂θ^e ∂φ^f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSet {
    calculus_type: CalculusType,
    label: String,
    system: RewriteSystem<Generator>,
}

use Generator as G;

fn w(gs: &[Generator]) -> Word<Generator> {
    Word(gs.to_vec())
}

fn m(a: i32, b: i32) -> LaurentCoeff {
    LaurentCoeff::pq_pow(a, b)
}

fn one() -> LaurentCoeff {
    LaurentCoeff::one()
}

fn lin(terms: Vec<(LaurentCoeff, &[Generator])>) -> Expr {
    Expr::from_terms(terms.into_iter().map(|(c, gs)| (w(gs), c)))
}

/// Relations common to both calculi: the plane (θφ + p⁻¹φθ = 0, θ² = φ² = 0),
/// the differentials (ΘΦ = qΦΘ) and the derivatives (∂θ∂φ + q∂φ∂θ = 0,
/// ∂θ² = ∂φ² = 0).
pub(crate) fn shared_rules() -> Vec<((Generator, Generator), Expr)> {
    vec![
        ((G::PHI, G::THETA), lin(vec![(-m(1, 0), &[G::THETA, G::PHI])])),
        ((G::THETA, G::THETA), Expr::zero()),
        ((G::PHI, G::PHI), Expr::zero()),
        (
            (G::BIG_PHI, G::BIG_THETA),
            lin(vec![(m(0, -1), &[G::BIG_THETA, G::BIG_PHI])]),
        ),
        (
            (G::PARTIAL_PHI, G::PARTIAL_THETA),
            lin(vec![(-m(0, -1), &[G::PARTIAL_THETA, G::PARTIAL_PHI])]),
        ),
        ((G::PARTIAL_THETA, G::PARTIAL_THETA), Expr::zero()),
        ((G::PARTIAL_PHI, G::PARTIAL_PHI), Expr::zero()),
    ]
}

fn type_i_rules() -> Vec<((Generator, Generator), Expr)> {
    let one_minus_pq = &one() - &m(1, 1);
    let one_minus_inv = &one() - &m(-1, -1);
    vec![
        // coordinates and differentials
        ((G::THETA, G::BIG_THETA), lin(vec![(one(), &[G::BIG_THETA, G::THETA])])),
        ((G::THETA, G::BIG_PHI), lin(vec![(m(0, 1), &[G::BIG_PHI, G::THETA])])),
        ((G::PHI, G::BIG_PHI), lin(vec![(one(), &[G::BIG_PHI, G::PHI])])),
        (
            (G::PHI, G::BIG_THETA),
            lin(vec![
                (m(1, 0), &[G::BIG_THETA, G::PHI]),
                (one_minus_pq.clone(), &[G::BIG_PHI, G::THETA]),
            ]),
        ),
        // derivatives and coordinates
        (
            (G::PARTIAL_THETA, G::THETA),
            lin(vec![(one(), &[]), (-one(), &[G::THETA, G::PARTIAL_THETA])]),
        ),
        (
            (G::PARTIAL_THETA, G::PHI),
            lin(vec![(-m(1, 0), &[G::PHI, G::PARTIAL_THETA])]),
        ),
        (
            (G::PARTIAL_PHI, G::PHI),
            lin(vec![
                (one(), &[]),
                (-one(), &[G::PHI, G::PARTIAL_PHI]),
                (-one_minus_pq, &[G::THETA, G::PARTIAL_THETA]),
            ]),
        ),
        (
            (G::PARTIAL_PHI, G::THETA),
            lin(vec![(-m(0, 1), &[G::THETA, G::PARTIAL_PHI])]),
        ),
        // derivatives and differentials
        (
            (G::PARTIAL_THETA, G::BIG_THETA),
            lin(vec![
                (one(), &[G::BIG_THETA, G::PARTIAL_THETA]),
                (one_minus_inv, &[G::BIG_PHI, G::PARTIAL_PHI]),
            ]),
        ),
        (
            (G::PARTIAL_THETA, G::BIG_PHI),
            lin(vec![(m(0, -1), &[G::BIG_PHI, G::PARTIAL_THETA])]),
        ),
        (
            (G::PARTIAL_PHI, G::BIG_THETA),
            lin(vec![(m(-1, 0), &[G::BIG_THETA, G::PARTIAL_PHI])]),
        ),
        (
            (G::PARTIAL_PHI, G::BIG_PHI),
            lin(vec![(one(), &[G::BIG_PHI, G::PARTIAL_PHI])]),
        ),
    ]
}

/// `sign` is the sign in front of `(1 - p⁻¹q⁻¹)Θφ` in the `θΦ` rule: `+1` is
/// the value forced by the ansatz, `-1` the misprinted variant.
fn type_ii_rules(sign: i64) -> Vec<((Generator, Generator), Expr)> {
    let one_minus_pq = &one() - &m(1, 1);
    let one_minus_inv = &one() - &m(-1, -1);
    vec![
        ((G::THETA, G::BIG_THETA), lin(vec![(one(), &[G::BIG_THETA, G::THETA])])),
        (
            (G::THETA, G::BIG_PHI),
            lin(vec![
                (m(-1, 0), &[G::BIG_PHI, G::THETA]),
                (&LaurentCoeff::integer(sign) * &one_minus_inv, &[G::BIG_THETA, G::PHI]),
            ]),
        ),
        ((G::PHI, G::BIG_PHI), lin(vec![(one(), &[G::BIG_PHI, G::PHI])])),
        ((G::PHI, G::BIG_THETA), lin(vec![(m(0, -1), &[G::BIG_THETA, G::PHI])])),
        (
            (G::PARTIAL_THETA, G::THETA),
            lin(vec![
                (one(), &[]),
                (-one(), &[G::THETA, G::PARTIAL_THETA]),
                (-one_minus_inv, &[G::PHI, G::PARTIAL_PHI]),
            ]),
        ),
        (
            (G::PARTIAL_THETA, G::PHI),
            lin(vec![(-m(0, -1), &[G::PHI, G::PARTIAL_THETA])]),
        ),
        (
            (G::PARTIAL_PHI, G::PHI),
            lin(vec![(one(), &[]), (-one(), &[G::PHI, G::PARTIAL_PHI])]),
        ),
        (
            (G::PARTIAL_PHI, G::THETA),
            lin(vec![(-m(-1, 0), &[G::THETA, G::PARTIAL_PHI])]),
        ),
        (
            (G::PARTIAL_THETA, G::BIG_THETA),
            lin(vec![(one(), &[G::BIG_THETA, G::PARTIAL_THETA])]),
        ),
        (
            (G::PARTIAL_THETA, G::BIG_PHI),
            lin(vec![(m(1, 0), &[G::BIG_PHI, G::PARTIAL_THETA])]),
        ),
        (
            (G::PARTIAL_PHI, G::BIG_THETA),
            lin(vec![(m(0, 1), &[G::BIG_THETA, G::PARTIAL_PHI])]),
        ),
        (
            (G::PARTIAL_PHI, G::BIG_PHI),
            lin(vec![
                (one(), &[G::BIG_PHI, G::PARTIAL_PHI]),
                (one_minus_pq, &[G::BIG_THETA, G::PARTIAL_THETA]),
            ]),
        ),
    ]
}

/// The oriented rule set of the given calculus.
pub fn build_ruleset(calculus_type: CalculusType) -> RuleSet {
    let (specific, label) = match calculus_type {
        CalculusType::TypeI => (type_i_rules(), "Type I"),
        CalculusType::TypeII => (type_ii_rules(1), "Type II"),
    };
    let mut rules = shared_rules();
    rules.extend(specific);
    RuleSet::from_rules(calculus_type, label, rules).expect("shipped rules are well formed")
}

impl RuleSet {
    /// Validates orientation, parity and uniqueness of left sides.
    pub fn from_rules<I>(calculus_type: CalculusType, label: impl Into<String>, rules: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((Generator, Generator), Expr)>,
    {
        let rules: Vec<_> = rules.into_iter().collect();
        for ((x, y), rhs) in &rules {
            let lhs = Word(vec![*x, *y]);
            if let Some((bad, _)) = rhs.terms().find(|(rw, _)| rw.parity() != lhs.parity()) {
                return Err(Error::InvalidRule {
                    lhs: format!("{lhs:?}"),
                    reason: format!("word {bad:?} has the wrong parity"),
                });
            }
        }
        Ok(Self {
            calculus_type,
            label: label.into(),
            system: RewriteSystem::new(rules)?,
        })
    }

    /// Type II with the coefficient of `Θφ` in the `θΦ` rule negated, as the
    /// relation is sometimes printed. This rule set is not confluent.
    pub fn type_ii_printed_sign() -> Self {
        let mut rules = shared_rules();
        rules.extend(type_ii_rules(-1));
        Self::from_rules(CalculusType::TypeII, "Type II (printed sign)", rules).expect("variant rules are well formed")
    }

    /// The undeformed exterior calculus (`p = q = 1`).
    pub fn classical() -> Self {
        let sw = |a: Generator, b: Generator, c: i64| lin(vec![(LaurentCoeff::integer(c), &[b, a])]);
        let rules = vec![
            ((G::PHI, G::THETA), sw(G::PHI, G::THETA, -1)),
            ((G::THETA, G::THETA), Expr::zero()),
            ((G::PHI, G::PHI), Expr::zero()),
            ((G::BIG_PHI, G::BIG_THETA), sw(G::BIG_PHI, G::BIG_THETA, 1)),
            (
                (G::PARTIAL_PHI, G::PARTIAL_THETA),
                sw(G::PARTIAL_PHI, G::PARTIAL_THETA, -1),
            ),
            ((G::PARTIAL_THETA, G::PARTIAL_THETA), Expr::zero()),
            ((G::PARTIAL_PHI, G::PARTIAL_PHI), Expr::zero()),
            ((G::THETA, G::BIG_THETA), sw(G::THETA, G::BIG_THETA, 1)),
            ((G::THETA, G::BIG_PHI), sw(G::THETA, G::BIG_PHI, 1)),
            ((G::PHI, G::BIG_THETA), sw(G::PHI, G::BIG_THETA, 1)),
            ((G::PHI, G::BIG_PHI), sw(G::PHI, G::BIG_PHI, 1)),
            (
                (G::PARTIAL_THETA, G::THETA),
                lin(vec![(one(), &[]), (-one(), &[G::THETA, G::PARTIAL_THETA])]),
            ),
            ((G::PARTIAL_THETA, G::PHI), sw(G::PARTIAL_THETA, G::PHI, -1)),
            ((G::PARTIAL_PHI, G::THETA), sw(G::PARTIAL_PHI, G::THETA, -1)),
            (
                (G::PARTIAL_PHI, G::PHI),
                lin(vec![(one(), &[]), (-one(), &[G::PHI, G::PARTIAL_PHI])]),
            ),
            ((G::PARTIAL_THETA, G::BIG_THETA), sw(G::PARTIAL_THETA, G::BIG_THETA, 1)),
            ((G::PARTIAL_THETA, G::BIG_PHI), sw(G::PARTIAL_THETA, G::BIG_PHI, 1)),
            ((G::PARTIAL_PHI, G::BIG_THETA), sw(G::PARTIAL_PHI, G::BIG_THETA, 1)),
            ((G::PARTIAL_PHI, G::BIG_PHI), sw(G::PARTIAL_PHI, G::BIG_PHI, 1)),
        ];
        Self::from_rules(CalculusType::TypeI, "classical", rules).expect("classical rules are well formed")
    }

    pub fn calculus_type(&self) -> CalculusType {
        self.calculus_type
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn system(&self) -> &RewriteSystem<Generator> {
        &self.system
    }

    pub fn rule(&self, x: Generator, y: Generator) -> Option<&Expr> {
        self.system.rule(x, y)
    }

    pub fn rules(&self) -> impl Iterator<Item = (Word<Generator>, &Expr)> {
        self.system.rules()
    }

    /// The relation `lhs - rhs` of the rule with left side `xy`.
    pub fn relation(&self, x: Generator, y: Generator) -> Option<Expr> {
        self.rule(x, y).map(|rhs| &Expr::word(&[x, y]) - rhs)
    }

    pub fn normalize(&self, e: &Expr) -> Expr {
        self.system.normalize(e)
    }

    pub fn normalize_counted(&self, e: &Expr) -> (Expr, usize) {
        self.system.normalize_counted(e)
    }

    pub fn critical_pairs(&self) -> Vec<CriticalPair<Generator>> {
        self.system.critical_pairs()
    }

    pub fn check_confluence(&self) -> ConfluenceReport<Generator> {
        self.system.check_confluence()
    }

    /// Applies `p ↦ p_image`, `q ↦ q_image` (monomials) to every coefficient.
    pub fn specialize(&self, p_image: Exponent, q_image: Exponent) -> Self {
        Self {
            calculus_type: self.calculus_type,
            label: self.label.clone(),
            system: self
                .system
                .map_rhs(|rhs| rhs.map_coeffs(|c| c.substitute(p_image, q_image))),
        }
    }

    /// Rule-by-rule comparison ignoring labels.
    pub fn same_rules(&self, other: &RuleSet) -> bool {
        self.system == other.system
    }
}
