//! Re-derivation of the two solution branches of the calculus from the
//! ansatz constraints.
//!
//! The F-system has exactly one nonlinear equation, the product
//! `F12 · F22 = 0`. The solver splits on it and finishes each branch by linear
//! back-substitution, dividing only by units of the Laurent ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{Expr, Generator, Word};
use crate::error::{Error, Result};
use crate::laurent::{Exponent, LaurentCoeff};
use crate::rewrite::{rules::shared_rules, CalculusType, RuleSet};

/// Commutative polynomial in the unknowns of a [`ConstraintSystem`].
/// Monomials are sorted lists of unknown indices.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Vec<usize>, LaurentCoeff>,
}

impl Poly {
    pub fn constant(c: LaurentCoeff) -> Self {
        let mut p = Self::default();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut p = Self::default();
        p.add_term(vec![i], LaurentCoeff::one());
        p
    }

    fn add_term(&mut self, mut mono: Vec<usize>, c: LaurentCoeff) {
        if c.is_zero() {
            return;
        }
        mono.sort_unstable();
        let slot = self.terms.entry(mono.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn unknowns(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn as_constant(&self) -> Option<LaurentCoeff> {
        match self.terms.len() {
            0 => Some(LaurentCoeff::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn coeff_of(&self, mono: &[usize]) -> LaurentCoeff {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// Replaces unknown `x` by `value`.
    pub fn substitute(&self, x: usize, value: &Poly) -> Poly {
        let mut out = Poly::default();
        for (mono, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for &u in mono {
                term = if u == x { &term * value } else { &term * &Poly::var(u) };
            }
            out = out + term;
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentCoeff) -> LaurentCoeff) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if mono.is_empty() {
                write!(f, "({c})")?;
                continue;
            }
            if !c.is_one() {
                write!(f, "({c})*")?;
            }
            let vars: Vec<&str> = mono.iter().map(|&u| names[u].as_str()).collect();
            f.write_str(&vars.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.unknowns().last().copied().unwrap_or(0))
            .map(|i| format!("x{i}"))
            .collect();
        self.fmt_with(&names, f)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_coeffs(|c| -c)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut out = Poly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl Mul<Poly> for LaurentCoeff {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        rhs.map_coeffs(|c| c * &self)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Equation {
    pub label: String,
    /// The equation is `poly = 0`.
    pub poly: Poly,
}

/// Polynomial identities in named unknowns with Laurent coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub unknowns: Vec<String>,
    pub equations: Vec<Equation>,
}

impl fmt::Debug for ConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for eq in &self.equations {
            write!(f, "{}: ", eq.label)?;
            eq.poly.fmt_with(&self.unknowns, f)?;
            writeln!(f, " = 0")?;
        }
        Ok(())
    }
}

impl fmt::Display for ConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub type Assignment = Vec<LaurentCoeff>;

impl ConstraintSystem {
    fn new(unknowns: &[&str]) -> Self {
        Self {
            unknowns: unknowns.iter().map(|s| s.to_string()).collect(),
            equations: Vec::new(),
        }
    }

    fn var(&self, name: &str) -> Poly {
        Poly::var(self.index(name).expect("known unknown"))
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.unknowns.iter().position(|u| u == name)
    }

    fn push(&mut self, label: &str, lhs: Poly, rhs: Poly) {
        self.equations.push(Equation {
            label: label.to_string(),
            poly: lhs - rhs,
        });
    }

    pub fn display_equation(&self, eq: &Equation) -> String {
        struct D<'a>(&'a Poly, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(self.1, f)
            }
        }
        format!("{} = 0", D(&eq.poly, &self.unknowns))
    }

    /// Coefficient endomorphism `p ↦ p_image`, `q ↦ q_image`.
    pub fn specialize(&self, p_image: Exponent, q_image: Exponent) -> Self {
        Self {
            unknowns: self.unknowns.clone(),
            equations: self
                .equations
                .iter()
                .map(|e| Equation {
                    label: e.label.clone(),
                    poly: e.poly.map_coeffs(|c| c.substitute(p_image, q_image)),
                })
                .collect(),
        }
    }

    /// True when every equation vanishes identically at `values`.
    pub fn is_satisfied_by(&self, values: &[LaurentCoeff]) -> bool {
        self.residuals(values).iter().all(LaurentCoeff::is_zero)
    }

    pub fn residuals(&self, values: &[LaurentCoeff]) -> Vec<LaurentCoeff> {
        self.equations
            .iter()
            .map(|eq| {
                let mut p = eq.poly.clone();
                for (i, v) in values.iter().enumerate() {
                    p = p.substitute(i, &Poly::constant(v.clone()));
                }
                p.as_constant().expect("all unknowns substituted")
            })
            .collect()
    }

    /// All solutions, found by splitting on single-product equations and
    /// eliminating linear equations with unit coefficients.
    pub fn solve(&self) -> Result<Vec<Assignment>> {
        let polys: Vec<Poly> = self.equations.iter().map(|e| e.poly.clone()).collect();
        let mut out = Vec::new();
        solve_rec(self.unknowns.len(), polys, BTreeMap::new(), &mut out)?;
        out.dedup();
        for sol in &out {
            debug_assert!(self.is_satisfied_by(sol));
            if !self.is_satisfied_by(sol) {
                return Err(Error::Unsolvable);
            }
        }
        Ok(out)
    }
}

fn eliminate(
    n: usize,
    polys: &[Poly],
    subst: &BTreeMap<usize, Poly>,
    x: usize,
    value: Poly,
    out: &mut Vec<Assignment>,
) -> Result<()> {
    let polys = polys.iter().map(|p| p.substitute(x, &value)).collect();
    let mut subst: BTreeMap<usize, Poly> = subst.iter().map(|(&k, v)| (k, v.substitute(x, &value))).collect();
    subst.insert(x, value);
    solve_rec(n, polys, subst, out)
}

fn solve_rec(n: usize, polys: Vec<Poly>, subst: BTreeMap<usize, Poly>, out: &mut Vec<Assignment>) -> Result<()> {
    let mut live = Vec::new();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        if p.as_constant().is_some() {
            // nonzero constant: this branch is inconsistent
            return Ok(());
        }
        live.push(p);
    }

    if live.is_empty() {
        let mut sol = Vec::with_capacity(n);
        for i in 0..n {
            match subst.get(&i).and_then(Poly::as_constant) {
                Some(c) => sol.push(c),
                None => return Err(Error::Unsolvable),
            }
        }
        out.push(sol);
        return Ok(());
    }

    // a linear equation in a single unknown
    if let Some(p) = live.iter().find(|p| p.degree() == 1 && p.unknowns().len() == 1) {
        let x = p.unknowns()[0];
        let value = (-p.coeff_of(&[])).div_unit(&p.coeff_of(&[x]))?;
        return eliminate(n, &live, &subst, x, Poly::constant(value), out);
    }

    // a single product c·x·y = 0
    if let Some(p) = live.iter().find(|p| p.terms.len() == 1 && p.degree() == 2) {
        let mono = p.terms.keys().next().expect("one term").clone();
        let mut factors = mono.clone();
        factors.dedup();
        for x in factors {
            eliminate(n, &live, &subst, x, Poly::default(), out)?;
        }
        return Ok(());
    }

    // a linear equation with a unit coefficient on some unknown
    for p in live.iter().filter(|p| p.degree() == 1) {
        if let Some(x) = p.unknowns().into_iter().find(|&x| p.coeff_of(&[x]).is_unit()) {
            let c = p.coeff_of(&[x]);
            let rest = p.clone() - c.clone() * Poly::var(x);
            let inv = c.unit_inverse().expect("unit");
            return eliminate(n, &live, &subst, x, -(inv * rest), out);
        }
    }

    Err(Error::Unsolvable)
}

/// Coefficients of the coordinate–differential ansatz
/// `θΘ = AΘθ, θΦ = F11Φθ + F12Θφ, φΦ = BΦφ, φΘ = F21Θφ + F22Φθ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzCoefficients {
    pub a: LaurentCoeff,
    pub b: LaurentCoeff,
    pub f11: LaurentCoeff,
    pub f12: LaurentCoeff,
    pub f21: LaurentCoeff,
    pub f22: LaurentCoeff,
}

/// Coefficients of the derivative–differential ansatz
/// `∂θΘ = A11Θ∂θ + A12Φ∂φ, ∂θΦ = A21Φ∂θ + A22Θ∂φ,
///  ∂φΘ = B11Θ∂φ + B12Φ∂θ, ∂φΦ = B21Φ∂φ + B22Θ∂θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffDerivCoefficients {
    pub a11: LaurentCoeff,
    pub a12: LaurentCoeff,
    pub a21: LaurentCoeff,
    pub a22: LaurentCoeff,
    pub b11: LaurentCoeff,
    pub b12: LaurentCoeff,
    pub b21: LaurentCoeff,
    pub b22: LaurentCoeff,
}

const F_UNKNOWNS: [&str; 6] = ["A", "B", "F11", "F12", "F21", "F22"];
const AB_UNKNOWNS: [&str; 8] = ["A11", "A12", "A21", "A22", "B11", "B12", "B21", "B22"];

impl AnsatzCoefficients {
    pub fn named(&self) -> [(&'static str, &LaurentCoeff); 6] {
        [
            ("A", &self.a),
            ("B", &self.b),
            ("F11", &self.f11),
            ("F12", &self.f12),
            ("F21", &self.f21),
            ("F22", &self.f22),
        ]
    }

    fn from_values(v: &[LaurentCoeff]) -> Self {
        Self {
            a: v[0].clone(),
            b: v[1].clone(),
            f11: v[2].clone(),
            f12: v[3].clone(),
            f21: v[4].clone(),
            f22: v[5].clone(),
        }
    }

    pub fn values(&self) -> Vec<LaurentCoeff> {
        self.named().iter().map(|(_, c)| (*c).clone()).collect()
    }

    pub fn map(&self, f: impl Fn(&LaurentCoeff) -> LaurentCoeff) -> Self {
        Self::from_values(&self.values().iter().map(f).collect::<Vec<_>>())
    }
}

impl DiffDerivCoefficients {
    pub fn named(&self) -> [(&'static str, &LaurentCoeff); 8] {
        [
            ("A11", &self.a11),
            ("A12", &self.a12),
            ("A21", &self.a21),
            ("A22", &self.a22),
            ("B11", &self.b11),
            ("B12", &self.b12),
            ("B21", &self.b21),
            ("B22", &self.b22),
        ]
    }

    fn from_values(v: &[LaurentCoeff]) -> Self {
        Self {
            a11: v[0].clone(),
            a12: v[1].clone(),
            a21: v[2].clone(),
            a22: v[3].clone(),
            b11: v[4].clone(),
            b12: v[5].clone(),
            b21: v[6].clone(),
            b22: v[7].clone(),
        }
    }
}

fn c(x: LaurentCoeff) -> Poly {
    Poly::constant(x)
}

/// Constraints on `A, B, F11, F12, F21, F22`: nilpotency of the coordinates,
/// right multiplication of the plane relation by the differentials, `d` of the
/// exchange relations and the differential relation `ΘΦ = qΦΘ`.
pub fn build_f_constraints() -> ConstraintSystem {
    let mut cs = ConstraintSystem::new(&F_UNKNOWNS);
    let (a, b) = (cs.var("A"), cs.var("B"));
    let (f11, f12, f21, f22) = (cs.var("F11"), cs.var("F12"), cs.var("F21"), cs.var("F22"));
    let one = || c(LaurentCoeff::one());
    let p = LaurentCoeff::p;
    let q = LaurentCoeff::q;
    let q_inv = || LaurentCoeff::pq_pow(0, -1);

    cs.push("nilpotency of theta", a.clone(), one());
    cs.push("nilpotency of phi", b.clone(), one());
    cs.push("plane relation times Phi", f22.clone() + p() * f11.clone(), one());
    cs.push("plane relation times Theta", f21.clone() + p() * f12.clone(), c(p()));
    cs.push("product constraint", &f12 * &f22, Poly::default());
    cs.push(
        "d of the exchange relations",
        &f11 * &f21,
        one() - f12.clone() - f22.clone(),
    );
    cs.push("differential relation (theta, Phi)", f11, q() * (one() - f12));
    cs.push("differential relation (phi, Theta)", f21, q_inv() * (one() - f22));
    cs
}

/// The solution branches of the F-system; Type I first (`F12 = 0`).
pub fn solve_f(cs: &ConstraintSystem) -> Result<Vec<AnsatzCoefficients>> {
    let order: Vec<usize> = F_UNKNOWNS
        .iter()
        .map(|n| cs.index(n).ok_or(Error::Unsolvable))
        .collect::<Result<_>>()?;
    let sols = cs.solve()?;
    if sols.is_empty() {
        return Err(Error::NoSolution);
    }
    Ok(sols
        .iter()
        .map(|s| AnsatzCoefficients::from_values(&order.iter().map(|&i| s[i].clone()).collect::<Vec<_>>()))
        .collect())
}

/// Constraints on the derivative–differential coefficients for one branch.
pub fn build_ab_constraints(branch: &AnsatzCoefficients) -> ConstraintSystem {
    let mut cs = ConstraintSystem::new(&AB_UNKNOWNS);
    let v = |n: &str| cs.var(n);
    let (a11, a12, a21, a22) = (v("A11"), v("A12"), v("A21"), v("A22"));
    let (b11, b12, b21, b22) = (v("B11"), v("B12"), v("B21"), v("B22"));
    let one = || c(LaurentCoeff::one());
    let zero = Poly::default;
    let f = branch;

    cs.push("d_theta on Theta", a11, one());
    cs.push("d_theta on Phi (Theta d_phi part)", a22, zero());
    cs.push("d_phi on Phi", b21, one());
    cs.push("d_phi on Theta (Phi d_theta part)", b12, zero());
    cs.push(
        "d_theta on theta Phi",
        f.f11.clone() * a21.clone() + f.f12.clone() * a12.clone(),
        one(),
    );
    cs.push(
        "d_theta on phi Theta",
        f.f21.clone() * a12 + f.f22.clone() * a21,
        zero(),
    );
    cs.push(
        "d_phi on phi Theta",
        f.f21.clone() * b11.clone() + f.f22.clone() * b22.clone(),
        one(),
    );
    cs.push("d_phi on theta Phi", f.f11.clone() * b22 + f.f12.clone() * b11, zero());
    cs
}

/// The unique derivative–differential coefficients of a branch.
pub fn solve_ab(branch: &AnsatzCoefficients) -> Result<DiffDerivCoefficients> {
    let sols = build_ab_constraints(branch).solve()?;
    match sols.len() {
        0 => Err(Error::NoSolution),
        1 => Ok(DiffDerivCoefficients::from_values(&sols[0])),
        n => Err(Error::NotUnique(n)),
    }
}

/// Inserts branch coefficients into the ansatz templates for the
/// coordinate–differential, derivative–coordinate and
/// derivative–differential relations.
pub fn ruleset_from_branch(
    calculus_type: CalculusType,
    label: &str,
    f: &AnsatzCoefficients,
    ab: &DiffDerivCoefficients,
) -> Result<RuleSet> {
    use Generator as G;
    let t =
        |terms: Vec<(LaurentCoeff, Vec<Generator>)>| Expr::from_terms(terms.into_iter().map(|(c, gs)| (Word(gs), c)));
    let one = LaurentCoeff::one;
    let mut rules = shared_rules();
    rules.extend([
        (
            (G::THETA, G::BIG_THETA),
            t(vec![(f.a.clone(), vec![G::BIG_THETA, G::THETA])]),
        ),
        (
            (G::THETA, G::BIG_PHI),
            t(vec![
                (f.f11.clone(), vec![G::BIG_PHI, G::THETA]),
                (f.f12.clone(), vec![G::BIG_THETA, G::PHI]),
            ]),
        ),
        ((G::PHI, G::BIG_PHI), t(vec![(f.b.clone(), vec![G::BIG_PHI, G::PHI])])),
        (
            (G::PHI, G::BIG_THETA),
            t(vec![
                (f.f21.clone(), vec![G::BIG_THETA, G::PHI]),
                (f.f22.clone(), vec![G::BIG_PHI, G::THETA]),
            ]),
        ),
        (
            (G::PARTIAL_THETA, G::THETA),
            t(vec![
                (one(), vec![]),
                (-one(), vec![G::THETA, G::PARTIAL_THETA]),
                (-&f.f12, vec![G::PHI, G::PARTIAL_PHI]),
            ]),
        ),
        (
            (G::PARTIAL_THETA, G::PHI),
            t(vec![(-&f.f21, vec![G::PHI, G::PARTIAL_THETA])]),
        ),
        (
            (G::PARTIAL_PHI, G::PHI),
            t(vec![
                (one(), vec![]),
                (-one(), vec![G::PHI, G::PARTIAL_PHI]),
                (-&f.f22, vec![G::THETA, G::PARTIAL_THETA]),
            ]),
        ),
        (
            (G::PARTIAL_PHI, G::THETA),
            t(vec![(-&f.f11, vec![G::THETA, G::PARTIAL_PHI])]),
        ),
        (
            (G::PARTIAL_THETA, G::BIG_THETA),
            t(vec![
                (ab.a11.clone(), vec![G::BIG_THETA, G::PARTIAL_THETA]),
                (ab.a12.clone(), vec![G::BIG_PHI, G::PARTIAL_PHI]),
            ]),
        ),
        (
            (G::PARTIAL_THETA, G::BIG_PHI),
            t(vec![
                (ab.a21.clone(), vec![G::BIG_PHI, G::PARTIAL_THETA]),
                (ab.a22.clone(), vec![G::BIG_THETA, G::PARTIAL_PHI]),
            ]),
        ),
        (
            (G::PARTIAL_PHI, G::BIG_THETA),
            t(vec![
                (ab.b11.clone(), vec![G::BIG_THETA, G::PARTIAL_PHI]),
                (ab.b12.clone(), vec![G::BIG_PHI, G::PARTIAL_THETA]),
            ]),
        ),
        (
            (G::PARTIAL_PHI, G::BIG_PHI),
            t(vec![
                (ab.b21.clone(), vec![G::BIG_PHI, G::PARTIAL_PHI]),
                (ab.b22.clone(), vec![G::BIG_THETA, G::PARTIAL_THETA]),
            ]),
        ),
    ]);
    RuleSet::from_rules(calculus_type, label, rules)
}

/// Solves both systems and returns `(F-branch, AB-solution)` per calculus
/// type, Type I first.
pub fn derive_branches() -> Result<Vec<(CalculusType, AnsatzCoefficients, DiffDerivCoefficients)>> {
    let branches = solve_f(&build_f_constraints())?;
    branches
        .into_iter()
        .zip(CalculusType::BOTH)
        .map(|(f, t)| solve_ab(&f).map(|ab| (t, f, ab)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::build_ruleset;

    fn m(a: i32, b: i32) -> LaurentCoeff {
        LaurentCoeff::pq_pow(a, b)
    }
    fn one() -> LaurentCoeff {
        LaurentCoeff::one()
    }
    fn zero() -> LaurentCoeff {
        LaurentCoeff::zero()
    }

    fn branch_i() -> AnsatzCoefficients {
        AnsatzCoefficients {
            a: one(),
            b: one(),
            f11: m(0, 1),
            f12: zero(),
            f21: m(1, 0),
            f22: &one() - &m(1, 1),
        }
    }

    fn branch_ii() -> AnsatzCoefficients {
        AnsatzCoefficients {
            a: one(),
            b: one(),
            f11: m(-1, 0),
            f12: &one() - &m(-1, -1),
            f21: m(0, -1),
            f22: zero(),
        }
    }

    #[test]
    fn f_system_has_the_product_constraint() {
        let cs = build_f_constraints();
        let (f12, f22) = (cs.index("F12").unwrap(), cs.index("F22").unwrap());
        let product = &Poly::var(f12) * &Poly::var(f22);
        assert!(cs.equations.iter().any(|e| e.poly == product));
        assert_eq!(cs.equations.len(), 8);
        assert!(cs.equations.iter().all(|e| e.poly.degree() <= 2));
    }

    #[test]
    fn branch_values_satisfy_the_system() {
        let cs = build_f_constraints();
        assert!(cs.is_satisfied_by(&branch_i().values()));
        assert!(cs.is_satisfied_by(&branch_ii().values()));
        let mut bad = branch_i().values();
        bad[3] = one();
        bad[5] = one();
        assert!(!cs.is_satisfied_by(&bad));
    }

    #[test]
    fn solve_f_returns_both_branches() {
        let sols = solve_f(&build_f_constraints()).unwrap();
        assert_eq!(sols, vec![branch_i(), branch_ii()]);
    }

    #[test]
    fn solve_f_at_p_equals_q() {
        let cs = build_f_constraints().specialize((0, 1), (0, 1));
        let sols = solve_f(&cs).unwrap();
        assert_eq!(
            sols,
            vec![
                branch_i().map(LaurentCoeff::at_p_equals_q),
                branch_ii().map(LaurentCoeff::at_p_equals_q)
            ]
        );
    }

    #[test]
    fn inconsistent_system_reports_no_solution() {
        let mut cs = build_f_constraints();
        let a = cs.var("A");
        cs.push("contradiction", a, Poly::constant(LaurentCoeff::integer(2)));
        assert_eq!(solve_f(&cs), Err(Error::NoSolution));
    }

    #[test]
    fn non_monomial_division_is_refused() {
        let mut cs = ConstraintSystem::new(&["x"]);
        let x = cs.var("x");
        cs.push("x(1+p) = 1", (&one() + &LaurentCoeff::p()) * x, Poly::constant(one()));
        assert!(matches!(cs.solve(), Err(Error::NonMonomialDivision(_))));
    }

    #[test]
    fn ab_system_for_branch_i() {
        let cs = build_ab_constraints(&branch_i());
        let (a12, a21) = (cs.index("A12").unwrap(), cs.index("A21").unwrap());
        let expected = m(1, 0) * Poly::var(a12) + (&one() - &m(1, 1)) * Poly::var(a21);
        assert!(cs.equations.iter().any(|e| e.poly == expected));
        let ab = solve_ab(&branch_i()).unwrap();
        assert_eq!(
            ab,
            DiffDerivCoefficients {
                a11: one(),
                a12: &one() - &m(-1, -1),
                a21: m(0, -1),
                a22: zero(),
                b11: m(-1, 0),
                b12: zero(),
                b21: one(),
                b22: zero(),
            }
        );
    }

    #[test]
    fn ab_solution_for_branch_ii() {
        let ab = solve_ab(&branch_ii()).unwrap();
        assert_eq!(ab.b22, &one() - &m(1, 1));
        assert_eq!(ab.a21, m(1, 0));
        assert_eq!(ab.b11, m(0, 1));
        assert!(ab.a12.is_zero() && ab.a22.is_zero() && ab.b12.is_zero());
    }

    #[test]
    fn classical_limit_of_ab() {
        for f in [branch_i(), branch_ii()] {
            let ab = solve_ab(&f).unwrap();
            assert!(ab.a12.at_classical().is_zero());
            assert!(ab.b22.at_classical().is_zero());
            assert!(ab.a21.at_classical().is_one());
            assert!(ab.b11.at_classical().is_one());
        }
    }

    #[test]
    fn branches_reproduce_shipped_rule_sets() {
        for (t, f, ab) in derive_branches().unwrap() {
            let rs = ruleset_from_branch(t, "derived", &f, &ab).unwrap();
            assert!(rs.same_rules(&build_ruleset(t)), "{t}");
        }
    }

    #[test]
    fn branches_are_exchanged_by_inversion() {
        // (p, q) -> (1/q, 1/p) with F12 and F22 swapped
        let t = |c: &LaurentCoeff| c.substitute((0, -1), (-1, 0));
        let i = branch_i();
        let swapped = AnsatzCoefficients {
            a: t(&i.a),
            b: t(&i.b),
            f11: t(&i.f11),
            f12: t(&i.f22),
            f21: t(&i.f21),
            f22: t(&i.f12),
        };
        assert_eq!(swapped, branch_ii());
    }

    #[test]
    fn every_solution_satisfies_every_equation() {
        let cs = build_f_constraints();
        for f in solve_f(&cs).unwrap() {
            assert!(cs.residuals(&f.values()).iter().all(LaurentCoeff::is_zero));
            let ab_cs = build_ab_constraints(&f);
            let ab = solve_ab(&f).unwrap();
            let vals: Vec<_> = ab.named().iter().map(|(_, c)| (*c).clone()).collect();
            assert!(ab_cs.is_satisfied_by(&vals));
        }
    }
}
