//! The coaction of the quantum matrix `T = [[a, b], [c, d]]` on coordinates
//! and differentials, and the check that every relation is carried into the
//! ideal of the quantum-group relations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::algebra::{Expr, Generator, Kind, Letter, Word};
use crate::error::{Error, Result};
use crate::laurent::LaurentCoeff;
use crate::rewrite::{build_ruleset, CalculusType, ConfluenceReport, RewriteSystem, RuleSet};
use crate::rmatrix::{hat, r_of, rtt_relations, QgExpr, QgLetter, QuantumGroupRelations};

/// Element of (quantum-group algebra) ⊗ (plane algebra). The two factors
/// commute, so a term is a pair of words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorExpr {
    terms: BTreeMap<(Word<QgLetter>, Word<Generator>), LaurentCoeff>,
}

impl TensorExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(LaurentCoeff::one(), Word::empty(), Word::empty())
    }

    pub fn term(c: LaurentCoeff, qg: Word<QgLetter>, plane: Word<Generator>) -> Self {
        let mut t = Self::zero();
        t.add_term(qg, plane, c);
        t
    }

    /// `qg ⊗ plane` for single letters.
    pub fn simple(qg: QgLetter, plane: Generator) -> Self {
        Self::term(LaurentCoeff::one(), Word(vec![qg]), Word(vec![plane]))
    }

    /// `x ⊗ y` for arbitrary elements of the two factors.
    pub fn product(qg: &QgExpr, plane: &Expr) -> Self {
        let mut out = Self::zero();
        for (qw, qc) in qg.terms() {
            for (pw, pc) in plane.terms() {
                out.add_term(qw.clone(), pw.clone(), qc * pc);
            }
        }
        out
    }

    pub fn add_term(&mut self, qg: Word<QgLetter>, plane: Word<Generator>, c: LaurentCoeff) {
        if c.is_zero() {
            return;
        }
        let key = (qg, plane);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word<QgLetter>, &Word<Generator>, &LaurentCoeff)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentCoeff) -> LaurentCoeff) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), f(c));
        }
        out
    }
}

impl<'a> Add<&'a TensorExpr> for &'a TensorExpr {
    type Output = TensorExpr;
    fn add(self, rhs: &'a TensorExpr) -> TensorExpr {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a TensorExpr> for &'a TensorExpr {
    type Output = TensorExpr;
    fn sub(self, rhs: &'a TensorExpr) -> TensorExpr {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(a.clone(), b.clone(), -c);
        }
        out
    }
}

/// Quantum-group letters are even, so `(x ⊗ y)(x' ⊗ y') = xx' ⊗ yy'`.
impl<'a> Mul<&'a TensorExpr> for &'a TensorExpr {
    type Output = TensorExpr;
    fn mul(self, rhs: &'a TensorExpr) -> TensorExpr {
        let mut out = TensorExpr::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                out.add_term(a1.concat(a2), b1.concat(b2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Debug for TensorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("({c}) {a:?} ⊗ {b:?}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Rewriting modulo the quantum-group relations, each oriented so that its
/// largest word (in `a < b < c < d` degree-lexicographic order) is replaced.
#[derive(Clone, Debug)]
pub struct QGNormalizer {
    relations: QuantumGroupRelations,
    system: RewriteSystem<QgLetter>,
    confluence: ConfluenceReport<QgLetter>,
}

impl QGNormalizer {
    /// Fails when a relation is not quadratic, its leading coefficient is not a
    /// unit, or two relations share a leading word.
    pub fn from_relations(relations: QuantumGroupRelations) -> Result<Self> {
        let mut rules = Vec::new();
        for r in &relations.relations {
            let (lead, lc) = r.leading().ok_or_else(|| Error::InvalidRule {
                lhs: "0".into(),
                reason: "zero relation".into(),
            })?;
            let [x, y] = lead.letters() else {
                return Err(Error::InvalidRule {
                    lhs: format!("{lead:?}"),
                    reason: "leading word is not quadratic".into(),
                });
            };
            let inv = lc.unit_inverse().ok_or_else(|| Error::InvalidRule {
                lhs: format!("{lead:?}"),
                reason: format!("leading coefficient {lc} is not a unit"),
            })?;
            let mut rhs = QgExpr::zero();
            for (w, c) in r.terms().filter(|(w, _)| *w != lead) {
                rhs.add_term(w.clone(), -(c * &inv));
            }
            rules.push(((*x, *y), rhs));
        }
        let system = RewriteSystem::new(rules)?;
        let confluence = system.check_confluence();
        Ok(Self {
            relations,
            system,
            confluence,
        })
    }

    /// The relations cut out by `R̂T₁T₂ = T₁T₂R̂` for the given calculus.
    pub fn for_calculus(calculus_type: CalculusType) -> Result<Self> {
        Self::from_relations(rtt_relations(&hat(&r_of(calculus_type))))
    }

    /// Commuting `a, b, c, d`: `yx → xy` whenever `y > x`.
    pub fn commutative() -> Self {
        let mut relations = Vec::new();
        for (i, &x) in QgLetter::ALL.iter().enumerate() {
            for &y in &QgLetter::ALL[i + 1..] {
                relations.push(QgExpr::word(&[y, x]) - QgExpr::word(&[x, y]));
            }
        }
        Self::from_relations(QuantumGroupRelations { relations }).expect("commutator rules are well formed")
    }

    pub fn relations(&self) -> &QuantumGroupRelations {
        &self.relations
    }

    pub fn system(&self) -> &RewriteSystem<QgLetter> {
        &self.system
    }

    pub fn is_confluent(&self) -> bool {
        self.confluence.is_confluent()
    }

    pub fn confluence(&self) -> &ConfluenceReport<QgLetter> {
        &self.confluence
    }

    pub fn normalize(&self, e: &QgExpr) -> QgExpr {
        self.system.normalize(e)
    }
}

fn image(g: Generator) -> Result<TensorExpr> {
    let (first, second) = match g.kind() {
        Kind::Coordinate => (Generator::THETA, Generator::PHI),
        Kind::Differential => (Generator::BIG_THETA, Generator::BIG_PHI),
        Kind::Derivative => return Err(Error::CoactionDomain),
    };
    let i = g.index();
    Ok(&TensorExpr::simple(QgLetter::entry(i, 1), first) + &TensorExpr::simple(QgLetter::entry(i, 2), second))
}

/// `θ → a⊗θ + b⊗φ`, `φ → c⊗θ + d⊗φ`, and likewise for `Θ, Φ`, extended
/// multiplicatively. No normalization is applied.
pub fn coact(e: &Expr) -> Result<TensorExpr> {
    let mut out = TensorExpr::zero();
    for (w, c) in e.terms() {
        let mut acc = TensorExpr::term(c.clone(), Word::empty(), Word::empty());
        for &g in w.letters() {
            acc = &acc * &image(g)?;
        }
        out = &out + &acc;
    }
    Ok(out)
}

/// Replaces `a, b, c, d` by scalar values, leaving a plane expression.
pub fn specialize_quantum_factor(t: &TensorExpr, values: [LaurentCoeff; 4]) -> Expr {
    let mut out = Expr::zero();
    for (a, b, c) in t.terms() {
        let scalar = a.letters().iter().fold(c.clone(), |acc, l| &acc * &values[*l as usize]);
        out.add_term(b.clone(), scalar);
    }
    out
}

/// Normalizes the quantum-group factor with `qg` and the plane factor with `rs`.
pub fn tensor_normalize(t: &TensorExpr, qg: &QGNormalizer, rs: &RuleSet) -> TensorExpr {
    let mut out = TensorExpr::zero();
    for (a, b, c) in t.terms() {
        let left = qg.normalize(&QgExpr::term(c.clone(), a.clone()));
        let right = rs.normalize(&Expr::term(LaurentCoeff::one(), b.clone()));
        out = &out + &TensorExpr::product(&left, &right);
    }
    out
}

#[derive(Clone, Debug)]
pub struct RelationImage {
    /// The left side of the rule, e.g. `phi*theta`.
    pub label: String,
    pub family: &'static str,
    pub relation: Expr,
    pub residual: TensorExpr,
}

impl RelationImage {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct CovarianceReport {
    pub calculus_type: CalculusType,
    pub quantum_group_confluent: bool,
    pub relations: Vec<RelationImage>,
}

impl CovarianceReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(RelationImage::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationImage> {
        self.relations.iter().filter(|r| !r.passed())
    }
}

fn family(x: Generator, y: Generator) -> &'static str {
    match (x.kind(), y.kind()) {
        (Kind::Coordinate, Kind::Coordinate) => "plane",
        (Kind::Differential, Kind::Differential) => "differentials",
        _ => "coordinate-differential",
    }
}

/// Image of every derivative-free relation of `rs` under the coaction,
/// normalized with `qg` and `rs`.
pub fn check_covariance_with(rs: &RuleSet, qg: &QGNormalizer) -> CovarianceReport {
    let mut relations = Vec::new();
    for (lhs, _) in rs.rules() {
        let [x, y] = lhs.letters() else { continue };
        if x.kind() == Kind::Derivative || y.kind() == Kind::Derivative {
            continue;
        }
        let relation = rs.relation(*x, *y).expect("rule exists");
        let residual = tensor_normalize(&coact(&relation).expect("derivative free"), qg, rs);
        relations.push(RelationImage {
            label: format!("{}*{}", x.ascii(), y.ascii()),
            family: family(*x, *y),
            relation,
            residual,
        });
    }
    CovarianceReport {
        calculus_type: rs.calculus_type(),
        quantum_group_confluent: qg.is_confluent(),
        relations,
    }
}

pub fn check_covariance(calculus_type: CalculusType) -> Result<CovarianceReport> {
    let qg = QGNormalizer::for_calculus(calculus_type)?;
    Ok(check_covariance_with(&build_ruleset(calculus_type), &qg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use QgLetter::*;

    fn qw(ls: &[QgLetter]) -> Word<QgLetter> {
        Word(ls.to_vec())
    }
    fn pw(gs: &[Generator]) -> Word<Generator> {
        Word(gs.to_vec())
    }

    #[test]
    fn coact_of_generators() {
        let t = coact(&Expr::letter(Generator::THETA)).unwrap();
        let expected = &TensorExpr::simple(A, Generator::THETA) + &TensorExpr::simple(B, Generator::PHI);
        assert_eq!(t, expected);
    }

    #[test]
    fn coact_of_a_product() {
        use Generator as G;
        let t = coact(&Expr::word(&[G::THETA, G::PHI])).unwrap();
        let one = LaurentCoeff::one;
        let mut expected = TensorExpr::zero();
        expected.add_term(qw(&[A, C]), pw(&[G::THETA, G::THETA]), one());
        expected.add_term(qw(&[A, D]), pw(&[G::THETA, G::PHI]), one());
        expected.add_term(qw(&[B, C]), pw(&[G::PHI, G::THETA]), one());
        expected.add_term(qw(&[B, D]), pw(&[G::PHI, G::PHI]), one());
        assert_eq!(t, expected);
    }

    #[test]
    fn coact_rejects_derivatives() {
        assert!(matches!(
            coact(&Expr::letter(Generator::PARTIAL_PHI)),
            Err(Error::CoactionDomain)
        ));
    }

    #[test]
    fn rtt_relations_orient_and_are_confluent() {
        for t in CalculusType::BOTH {
            let qg = QGNormalizer::for_calculus(t).unwrap();
            assert_eq!(qg.system().len(), 6);
            assert!(qg.is_confluent(), "{t}");
        }
    }

    #[test]
    fn ba_is_reordered() {
        let qg = QGNormalizer::for_calculus(CalculusType::TypeI).unwrap();
        let rs = build_ruleset(CalculusType::TypeI);
        let t = TensorExpr::term(
            LaurentCoeff::one(),
            qw(&[B, A]),
            pw(&[Generator::THETA, Generator::PHI]),
        );
        let n = tensor_normalize(&t, &qg, &rs);
        let expected = TensorExpr::term(
            LaurentCoeff::pq_pow(-1, 0),
            qw(&[A, B]),
            pw(&[Generator::THETA, Generator::PHI]),
        );
        assert_eq!(n, expected);
        assert_eq!(tensor_normalize(&expected, &qg, &rs), expected);
    }

    #[test]
    fn both_calculi_are_covariant() {
        for t in CalculusType::BOTH {
            let rep = check_covariance(t).unwrap();
            assert_eq!(rep.relations.len(), 8);
            assert!(rep.passed(), "{t}: {:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn commuting_entries_break_the_plane_relation() {
        let rep = check_covariance_with(&build_ruleset(CalculusType::TypeI), &QGNormalizer::commutative());
        let plane = rep.relations.iter().find(|r| r.label == "phi*theta").unwrap();
        assert!(!plane.passed());
    }

    #[test]
    fn classical_point_with_commuting_entries() {
        let rep = check_covariance_with(&RuleSet::classical(), &QGNormalizer::commutative());
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }
}
