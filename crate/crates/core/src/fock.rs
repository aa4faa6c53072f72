//! Two-mode fermionic Fock representations of the deformed oscillator
//! algebras, with `θ → B₁⁺`, `φ → B₂⁺`, `∂θ → B₁`, `∂φ → B₂` and `p = q̄`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::algebra::{Expr, Generator, Kind, Letter};
use crate::error::{Error, Result};
use crate::laurent::LaurentCoeff;
use crate::rewrite::{CalculusType, RuleSet};

/// 4×4 complex matrix on the basis `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Clone, Copy, PartialEq)]
pub struct CMatrix4(pub [[Complex64; 4]; 4]);

impl CMatrix4 {
    pub fn zero() -> Self {
        CMatrix4([[Complex64::new(0.0, 0.0); 4]; 4])
    }

    pub fn identity() -> Self {
        Self::diag([Complex64::new(1.0, 0.0); 4])
    }

    pub fn diag(d: [Complex64; 4]) -> Self {
        let mut m = Self::zero();
        for (i, x) in d.into_iter().enumerate() {
            m.0[i][i] = x;
        }
        m
    }

    /// `x ⊗ y` with the first factor acting on mode 1.
    #[allow(clippy::needless_range_loop)]
    pub fn kron(x: [[Complex64; 2]; 2], y: [[Complex64; 2]; 2]) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m.0[2 * i + k][2 * j + l] = x[i][j] * y[k][l];
                    }
                }
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[j][i] = self.0[i][j].conj();
            }
        }
        m
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|x| *x *= c);
        m
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.0.iter().flatten().all(|x| *x == Complex64::new(0.0, 0.0))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| i == j || self.0[i][j] == Complex64::new(0.0, 0.0)))
    }

    pub fn diagonal(&self) -> [Complex64; 4] {
        [self.0[0][0], self.0[1][1], self.0[2][2], self.0[3][3]]
    }
}

impl Add for CMatrix4 {
    type Output = CMatrix4;
    fn add(self, rhs: CMatrix4) -> CMatrix4 {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl Sub for CMatrix4 {
    type Output = CMatrix4;
    fn sub(self, rhs: CMatrix4) -> CMatrix4 {
        self + rhs.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for CMatrix4 {
    type Output = CMatrix4;
    fn mul(self, rhs: CMatrix4) -> CMatrix4 {
        let mut m = CMatrix4::zero();
        for i in 0..4 {
            for k in 0..4 {
                for j in 0..4 {
                    m.0[i][j] += self.0[i][k] * rhs.0[k][j];
                }
            }
        }
        m
    }
}

impl fmt::Debug for CMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            let cells: Vec<String> = row.iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

const SIGMA_MINUS: [[Complex64; 2]; 2] = [
    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
];
const ID2: [[Complex64; 2]; 2] = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
];

fn diag2(a: Complex64, b: Complex64) -> [[Complex64; 2]; 2] {
    [[a, Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), b]]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscillatorRep {
    pub calculus_type: CalculusType,
    pub b1: CMatrix4,
    pub b2: CMatrix4,
    pub q_val: Complex64,
    pub p_val: Complex64,
}

impl OscillatorRep {
    /// A representation with caller-supplied matrices, for example to probe
    /// what breaks when the deformation twist is dropped.
    pub fn from_matrices(calculus_type: CalculusType, q_val: Complex64, b1: CMatrix4, b2: CMatrix4) -> Result<Self> {
        if q_val == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroDeformation);
        }
        Ok(Self {
            calculus_type,
            b1,
            b2,
            q_val,
            p_val: q_val.conj(),
        })
    }

    pub fn b1_dag(&self) -> CMatrix4 {
        self.b1.adjoint()
    }

    pub fn b2_dag(&self) -> CMatrix4 {
        self.b2.adjoint()
    }

    /// Image of a generator; differentials have none.
    pub fn generator(&self, g: Generator) -> Result<CMatrix4> {
        match (g.kind(), g.index()) {
            (Kind::Coordinate, 1) => Ok(self.b1_dag()),
            (Kind::Coordinate, _) => Ok(self.b2_dag()),
            (Kind::Derivative, 1) => Ok(self.b1),
            (Kind::Derivative, _) => Ok(self.b2),
            (Kind::Differential, _) => Err(Error::NotRepresented(g.ascii().to_string())),
        }
    }

    /// Matrix of an expression in coordinates and derivatives, with the
    /// coefficients evaluated at `(p, q) = (q̄, q)`.
    pub fn represent(&self, e: &Expr) -> Result<CMatrix4> {
        let mut out = CMatrix4::zero();
        for (w, coeff) in e.terms() {
            let mut m = CMatrix4::identity().scale(coeff.eval(self.p_val, self.q_val)?);
            for &g in w.letters() {
                m = m * self.generator(g)?;
            }
            out = out + m;
        }
        Ok(out)
    }
}

/// Type I: `B₁ = σ⁻⊗1`, `B₂ = K⊗σ⁻`, `K = diag(1, −q)`.
/// Type II: `B₂ = 1⊗σ⁻`, `B₁ = σ⁻⊗D`, `D = diag(−q, 1)/|q|`.
pub fn build_rep(calculus_type: CalculusType, q_val: Complex64) -> Result<OscillatorRep> {
    if q_val == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroDeformation);
    }
    let (b1, b2) = match calculus_type {
        CalculusType::TypeI => (
            CMatrix4::kron(SIGMA_MINUS, ID2),
            CMatrix4::kron(diag2(c(1.0), -q_val), SIGMA_MINUS),
        ),
        CalculusType::TypeII => {
            let n = q_val.norm();
            (
                CMatrix4::kron(SIGMA_MINUS, diag2(-q_val / n, c(1.0 / n))),
                CMatrix4::kron(ID2, SIGMA_MINUS),
            )
        }
    };
    OscillatorRep::from_matrices(calculus_type, q_val, b1, b2)
}

/// The defining relations of the oscillator algebra, each written as an
/// expression that must vanish.
pub fn oscillator_relations(calculus_type: CalculusType) -> Vec<(&'static str, Expr)> {
    use Generator as G;
    let w = |gs: &[Generator]| Expr::word(gs);
    let t = |c: LaurentCoeff, gs: &[Generator]| Expr::term(c, crate::algebra::Word(gs.to_vec()));
    let m = LaurentCoeff::pq_pow;
    let (b1, b2, b1d, b2d) = (G::PARTIAL_THETA, G::PARTIAL_PHI, G::THETA, G::PHI);
    let mut rels = vec![
        ("B1 B2 + q B2 B1", w(&[b1, b2]) + t(m(0, 1), &[b2, b1])),
        ("B1 B1", w(&[b1, b1])),
        ("B1+ B1+", w(&[b1d, b1d])),
        ("B1+ B2+ + p^-1 B2+ B1+", w(&[b1d, b2d]) + t(m(-1, 0), &[b2d, b1d])),
        ("B2 B2", w(&[b2, b2])),
        ("B2+ B2+", w(&[b2d, b2d])),
    ];
    let anti = |x, y| w(&[x, y]) + w(&[y, x]);
    match calculus_type {
        CalculusType::TypeI => rels.extend([
            ("B1 B2+ + p B2+ B1", w(&[b1, b2d]) + t(m(1, 0), &[b2d, b1])),
            ("B2 B1+ + q B1+ B2", w(&[b2, b1d]) + t(m(0, 1), &[b1d, b2])),
            ("{B1, B1+} - 1", anti(b1, b1d) - Expr::one()),
            (
                "{B2, B2+} - 1 - (p*q - 1) B1+ B1",
                anti(b2, b2d) - Expr::one() - t(&m(1, 1) - &LaurentCoeff::one(), &[b1d, b1]),
            ),
        ]),
        CalculusType::TypeII => rels.extend([
            ("B1 B2+ + q^-1 B2+ B1", w(&[b1, b2d]) + t(m(0, -1), &[b2d, b1])),
            ("B2 B1+ + p^-1 B1+ B2", w(&[b2, b1d]) + t(m(-1, 0), &[b1d, b2])),
            (
                "{B1, B1+} - 1 - (p^-1*q^-1 - 1) B2+ B2",
                anti(b1, b1d) - Expr::one() - t(&m(-1, -1) - &LaurentCoeff::one(), &[b2d, b2]),
            ),
            ("{B2, B2+} - 1", anti(b2, b2d) - Expr::one()),
        ]),
    }
    rels
}

#[derive(Clone, Debug, PartialEq)]
pub struct OscReport {
    pub max_residual: f64,
    pub per_relation: Vec<(String, f64)>,
}

impl OscReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual < tol
    }
}

fn report(items: Vec<(String, f64)>) -> OscReport {
    OscReport {
        max_residual: items.iter().map(|(_, r)| *r).fold(0.0, f64::max),
        per_relation: items,
    }
}

/// Max-entry residual of every oscillator relation of the representation's type.
pub fn verify_osc_relations(rep: &OscillatorRep) -> OscReport {
    report(
        oscillator_relations(rep.calculus_type)
            .into_iter()
            .map(|(label, e)| {
                let r = rep
                    .represent(&e)
                    .expect("oscillator relations avoid differentials")
                    .max_abs();
                (label.to_string(), r)
            })
            .collect(),
    )
}

/// Residuals of the rewrite rules of `rs` that involve only coordinates and
/// derivatives, read as operator identities in the representation.
pub fn symbolic_residuals(rep: &OscillatorRep, rs: &RuleSet) -> Result<OscReport> {
    let mut items = Vec::new();
    for (lhs, _) in rs.rules() {
        if lhs.letters().iter().any(|g| g.kind() == Kind::Differential) {
            continue;
        }
        let [x, y] = lhs.letters() else { continue };
        let rel = rs.relation(*x, *y).expect("rule exists");
        items.push((format!("{}*{}", x.ascii(), y.ascii()), rep.represent(&rel)?.max_abs()));
    }
    Ok(report(items))
}

/// `(B₁⁺B₁, B₂⁺B₂)`.
pub fn number_operators(rep: &OscillatorRep) -> (CMatrix4, CMatrix4) {
    (rep.b1_dag() * rep.b1, rep.b2_dag() * rep.b2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::build_ruleset;

    const TOL: f64 = 1e-12;

    fn close(a: [Complex64; 4], b: [f64; 4]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - c(y)).norm() < TOL)
    }

    #[test]
    fn zero_q_is_rejected() {
        assert!(matches!(
            build_rep(CalculusType::TypeI, Complex64::new(0.0, 0.0)),
            Err(Error::ZeroDeformation)
        ));
    }

    #[test]
    fn both_types_at_the_sample_points() {
        for t in CalculusType::BOTH {
            for q in [Complex64::new(0.0, 2.0), Complex64::new(0.5, 0.5), c(3.0), c(1.0)] {
                let rep = build_rep(t, q).unwrap();
                let r = verify_osc_relations(&rep);
                assert!(r.passed(TOL), "{t} q={q}: {r:?}");
                assert_eq!(r.per_relation.len(), 10);
            }
        }
    }

    #[test]
    fn deformed_anticommutators() {
        let q = Complex64::new(0.0, 2.0);
        let rep = build_rep(CalculusType::TypeI, q).unwrap();
        let a = rep.b2 * rep.b2_dag() + rep.b2_dag() * rep.b2;
        assert!(a.is_diagonal() && close(a.diagonal(), [1.0, 1.0, 4.0, 4.0]));
        let rep = build_rep(CalculusType::TypeII, q).unwrap();
        let a = rep.b1 * rep.b1_dag() + rep.b1_dag() * rep.b1;
        assert!(a.is_diagonal() && close(a.diagonal(), [1.0, 0.25, 1.0, 0.25]));
    }

    #[test]
    fn number_operator_spectra() {
        let q = Complex64::new(0.0, 2.0);
        let (n1, n2) = number_operators(&build_rep(CalculusType::TypeI, q).unwrap());
        assert!(close(n1.diagonal(), [0.0, 0.0, 1.0, 1.0]));
        assert!(close(n2.diagonal(), [0.0, 1.0, 0.0, 4.0]));
        let (_, n2) = number_operators(&build_rep(CalculusType::TypeII, q).unwrap());
        assert!(close(n2.diagonal(), [0.0, 1.0, 0.0, 1.0]));
    }

    #[test]
    fn squares_vanish_exactly() {
        for t in CalculusType::BOTH {
            let rep = build_rep(t, Complex64::new(0.3, -1.7)).unwrap();
            assert!((rep.b1 * rep.b1).is_exactly_zero());
            assert!((rep.b2 * rep.b2).is_exactly_zero());
        }
    }

    #[test]
    fn dropping_the_twist_breaks_the_first_relation() {
        let q = Complex64::new(0.0, 2.0);
        let b1 = CMatrix4::kron(SIGMA_MINUS, ID2);
        let b2 = CMatrix4::kron(ID2, SIGMA_MINUS);
        let rep = OscillatorRep::from_matrices(CalculusType::TypeI, q, b1, b2).unwrap();
        let r = verify_osc_relations(&rep);
        let (_, first) = &r.per_relation[0];
        assert!((first - 5f64.sqrt()).abs() < TOL, "{first}");
    }

    #[test]
    fn oscillator_relations_lie_in_the_calculus() {
        for t in CalculusType::BOTH {
            let rs = build_ruleset(t);
            for (label, e) in oscillator_relations(t) {
                assert!(rs.normalize(&e).is_zero(), "{t}: {label}");
            }
        }
    }

    #[test]
    fn rule_relations_hold_as_operators() {
        for t in CalculusType::BOTH {
            let rep = build_rep(t, Complex64::new(-1.2, 0.4)).unwrap();
            let r = symbolic_residuals(&rep, &build_ruleset(t)).unwrap();
            assert_eq!(r.per_relation.len(), 10);
            assert!(r.passed(TOL), "{t}: {r:?}");
        }
    }

    #[test]
    fn differentials_are_not_represented() {
        let rep = build_rep(CalculusType::TypeI, c(2.0)).unwrap();
        assert!(matches!(
            rep.represent(&Expr::letter(Generator::BIG_PHI)),
            Err(Error::NotRepresented(_))
        ));
    }
}
