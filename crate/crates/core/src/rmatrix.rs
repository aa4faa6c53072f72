//! R-matrices of the two calculi: Yang–Baxter checks, the R-matrix form of the
//! exchange relations, and the quantum-group relations cut out by `R̂T₁T₂ = T₁T₂R̂`.

use std::fmt;
use std::ops::{Index, IndexMut, Mul, Sub};

use crate::algebra::{Expr, FreeAlgebra, Generator, Letter, Word};
use crate::error::{Error, Result};
use crate::laurent::LaurentCoeff;
use crate::rewrite::{build_ruleset, CalculusType, RuleSet};

/// Square matrix over the Laurent ring.
#[derive(Clone, PartialEq, Eq)]
pub struct LMatrix {
    n: usize,
    data: Vec<LaurentCoeff>,
}

impl LMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![LaurentCoeff::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = LaurentCoeff::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentCoeff>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn kron(&self, other: &LMatrix) -> LMatrix {
        let n = self.n * other.n;
        let mut out = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self[(i, j)].is_zero() {
                    continue;
                }
                for k in 0..other.n {
                    for l in 0..other.n {
                        out[(i * other.n + k, j * other.n + l)] = &self[(i, j)] * &other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(&LaurentCoeff) -> LaurentCoeff) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LaurentCoeff::is_zero)
    }

    /// Nonzero entries as `(row, column, value)`.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, LaurentCoeff)> {
        let mut v = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if !self[(i, j)].is_zero() {
                    v.push((i, j, self[(i, j)].clone()));
                }
            }
        }
        v
    }

    fn minor(&self, row: usize, col: usize) -> LMatrix {
        let mut rows = Vec::with_capacity(self.n - 1);
        for i in (0..self.n).filter(|&i| i != row) {
            rows.push(
                (0..self.n)
                    .filter(|&j| j != col)
                    .map(|j| self[(i, j)].clone())
                    .collect(),
            );
        }
        LMatrix::from_rows(rows)
    }

    /// Cofactor expansion; fine for the 4×4 matrices used here.
    pub fn determinant(&self) -> LaurentCoeff {
        match self.n {
            0 => LaurentCoeff::one(),
            1 => self[(0, 0)].clone(),
            _ => (0..self.n)
                .filter(|&j| !self[(0, j)].is_zero())
                .map(|j| {
                    let term = &self[(0, j)] * &self.minor(0, j).determinant();
                    if j % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum(),
        }
    }

    /// Inverse via the adjugate; the determinant must be a unit.
    pub fn inverse(&self) -> Result<LMatrix> {
        let det = self.determinant();
        let inv_det = det
            .unit_inverse()
            .ok_or_else(|| Error::NotInvertible(det.to_string()))?;
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let cof = self.minor(j, i).determinant();
                let signed = if (i + j) % 2 == 0 { cof } else { -cof };
                out[(i, j)] = &signed * &inv_det;
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for LMatrix {
    type Output = LaurentCoeff;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentCoeff {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for LMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentCoeff {
        &mut self.data[i * self.n + j]
    }
}

impl<'a> Mul<&'a LMatrix> for &'a LMatrix {
    type Output = LMatrix;
    fn mul(self, rhs: &'a LMatrix) -> LMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = LMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Sub<&'a LMatrix> for &'a LMatrix {
    type Output = LMatrix;
    fn sub(self, rhs: &'a LMatrix) -> LMatrix {
        LMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for LMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Position of the composite index `(i, j)`, `i, j ∈ {1, 2}`, in the order
/// `11, 12, 21, 22`.
pub fn pair(i: usize, j: usize) -> usize {
    debug_assert!((1..=2).contains(&i) && (1..=2).contains(&j));
    2 * (i - 1) + (j - 1)
}

pub const PAIR_LABELS: [&str; 4] = ["11", "12", "21", "22"];

/// A 4×4 R-matrix with entry `[(ij), (kl)] = R^{ij}_{kl}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RMatrix4(pub LMatrix);

impl RMatrix4 {
    pub fn from_rows(rows: [[LaurentCoeff; 4]; 4]) -> Self {
        RMatrix4(LMatrix::from_rows(rows.into_iter().map(Vec::from).collect()))
    }

    pub fn identity() -> Self {
        RMatrix4(LMatrix::identity(4))
    }

    /// `R^{ij}_{kl}` with 1-based indices.
    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> &LaurentCoeff {
        &self.0[(pair(i, j), pair(k, l))]
    }

    pub fn matrix(&self) -> &LMatrix {
        &self.0
    }

    pub fn map(&self, f: impl Fn(&LaurentCoeff) -> LaurentCoeff) -> Self {
        RMatrix4(self.0.map(f))
    }

    pub fn scale(&self, c: &LaurentCoeff) -> Self {
        self.map(|x| x * c)
    }

    pub fn transpose(&self) -> Self {
        RMatrix4(self.0.transpose())
    }

    pub fn inverse(&self) -> Result<Self> {
        self.0.inverse().map(RMatrix4)
    }

    pub fn at_p_equals_q(&self) -> Self {
        self.map(LaurentCoeff::at_p_equals_q)
    }

    pub fn at_classical(&self) -> Self {
        self.map(LaurentCoeff::at_classical)
    }
}

fn swap_matrix() -> LMatrix {
    let mut p = LMatrix::zeros(4);
    for i in 1..=2 {
        for j in 1..=2 {
            p[(pair(i, j), pair(j, i))] = LaurentCoeff::one();
        }
    }
    p
}

/// The R-matrix of a calculus, read off from its coordinate–differential
/// relations `θ^i Θ^j = R^{ji}_{kl} Θ^k θ^l`.
pub fn r_of(calculus_type: CalculusType) -> RMatrix4 {
    let one = LaurentCoeff::one;
    let zero = LaurentCoeff::zero;
    let m = LaurentCoeff::pq_pow;
    match calculus_type {
        CalculusType::TypeI => RMatrix4::from_rows([
            [one(), zero(), zero(), zero()],
            [zero(), m(1, 0), &one() - &m(1, 1), zero()],
            [zero(), zero(), m(0, 1), zero()],
            [zero(), zero(), zero(), one()],
        ]),
        CalculusType::TypeII => RMatrix4::from_rows([
            [one(), zero(), zero(), zero()],
            [zero(), m(0, -1), zero(), zero()],
            [zero(), &one() - &m(-1, -1), m(-1, 0), zero()],
            [zero(), zero(), zero(), one()],
        ]),
    }
}

/// `R̂^{ij}_{kl} = R^{ji}_{kl}`.
pub fn hat(r: &RMatrix4) -> RMatrix4 {
    RMatrix4(&swap_matrix() * &r.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YbeReport {
    pub plain_ybe: bool,
    pub braid_ybe: bool,
    /// Nonzero entries of `R₁₂R₁₃R₂₃ − R₂₃R₁₃R₁₂`.
    pub plain_residuals: Vec<(usize, usize, LaurentCoeff)>,
    /// Nonzero entries of `R̂₁₂R̂₂₃R̂₁₂ − R̂₂₃R̂₁₂R̂₂₃`.
    pub braid_residuals: Vec<(usize, usize, LaurentCoeff)>,
    pub entries_compared: usize,
}

/// Both forms of the Yang–Baxter equation on the eightfold tensor space.
pub fn ybe_check(r: &RMatrix4) -> YbeReport {
    let i2 = LMatrix::identity(2);
    let r12 = r.0.kron(&i2);
    let r23 = i2.kron(&r.0);
    let p23 = i2.kron(&swap_matrix());
    let r13 = &(&p23 * &r12) * &p23;
    let plain = &(&(&r12 * &r13) * &r23) - &(&(&r23 * &r13) * &r12);

    let rh = hat(r);
    let h12 = rh.0.kron(&i2);
    let h23 = i2.kron(&rh.0);
    let braid = &(&(&h12 * &h23) * &h12) - &(&(&h23 * &h12) * &h23);

    YbeReport {
        plain_ybe: plain.is_zero(),
        braid_ybe: braid.is_zero(),
        plain_residuals: plain.nonzero_entries(),
        braid_residuals: braid.nonzero_entries(),
        entries_compared: 64,
    }
}

/// Eigenvalues `(λ₁, λ₂)` of `R̂` for the shipped block shape: `λ₁ = 1` from
/// the corner entries and `λ₂` the determinant of the central 2×2 block,
/// returned only when the block trace equals `λ₁ + λ₂`.
pub fn hat_eigenvalues(rhat: &RMatrix4) -> Option<(LaurentCoeff, LaurentCoeff)> {
    let m = &rhat.0;
    let one = LaurentCoeff::one();
    if m[(0, 0)] != one || m[(3, 3)] != one {
        return None;
    }
    let (a, b, c, d) = (&m[(1, 1)], &m[(1, 2)], &m[(2, 1)], &m[(2, 2)]);
    let det = &(a * d) - &(b * c);
    let trace = a + d;
    (trace == &one + &det).then_some((one, det))
}

/// `(R̂ − λ₁)(R̂ − λ₂)`.
pub fn quadratic_identity_residual(rhat: &RMatrix4, l1: &LaurentCoeff, l2: &LaurentCoeff) -> LMatrix {
    let id = LMatrix::identity(4);
    let a = &rhat.0 - &id.map(|x| x * l1);
    let b = &rhat.0 - &id.map(|x| x * l2);
    &a * &b
}

/// `R_I|_{p=q} = ((R_II|_{p=q})⁻¹)ᵀ`, or the same comparison at generic `p, q`
/// when `at_p_equals_q` is false.
pub fn transpose_inverse_check(at_p_equals_q: bool) -> bool {
    let (mut r1, mut r2) = (r_of(CalculusType::TypeI), r_of(CalculusType::TypeII));
    if at_p_equals_q {
        r1 = r1.at_p_equals_q();
        r2 = r2.at_p_equals_q();
    }
    match r2.inverse() {
        Ok(inv) => r1 == inv.transpose(),
        Err(_) => false,
    }
}

// ---------------------------------------------------------------------------
// R-matrix form of the calculus

/// One family of relations written with `R̂`, compared with the rule set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Which candidate (scaling or index placement) was used.
    pub resolved: Option<String>,
    /// Nonzero normal forms or mismatched rules, rendered for reporting.
    pub mismatches: Vec<String>,
    /// Non-unit factors `c` for which an R-form relation equals `c` times a
    /// defining relation; the family implies the relation only when `c ≠ 0`.
    pub conditions: Vec<LaurentCoeff>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RFormReport {
    pub calculus_type: CalculusType,
    pub families: Vec<FamilyCheck>,
    pub coordinate_scaling: Option<LaurentCoeff>,
    pub derivative_scaling: Option<LaurentCoeff>,
}

impl RFormReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.passed)
    }
}

type Rule = ((Generator, Generator), Expr);

fn word2(a: Generator, b: Generator) -> Word<Generator> {
    Word(vec![a, b])
}

/// `θ^i Θ^j → R̂^{ij}_{kl} Θ^k θ^l`.
pub fn coordinate_differential_rules(rhat: &RMatrix4) -> Vec<Rule> {
    let mut out = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            let mut rhs = Expr::zero();
            for k in 1..=2 {
                for l in 1..=2 {
                    rhs.add_term(
                        word2(Generator::diff(k), Generator::coord(l)),
                        rhat.entry(i, j, k, l).clone(),
                    );
                }
            }
            out.push(((Generator::coord(i), Generator::diff(j)), rhs));
        }
    }
    out
}

/// `∂_i θ^j → δ^j_i − R̂^{jk}_{il} θ^l ∂_k`.
pub fn derivative_coordinate_rules(rhat: &RMatrix4) -> Vec<Rule> {
    let mut out = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            let mut rhs = if i == j { Expr::one() } else { Expr::zero() };
            for k in 1..=2 {
                for l in 1..=2 {
                    rhs.add_term(word2(Generator::coord(l), Generator::deriv(k)), -rhat.entry(j, k, i, l));
                }
            }
            out.push(((Generator::deriv(i), Generator::coord(j)), rhs));
        }
    }
    out
}

/// Index placement for the derivative–differential family
/// `∂_i Θ^j → M Θ^l ∂_k` with `M` read from `R̂⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffDerivPlacement {
    /// `M = (R̂⁻¹)^{kj}_{li}`
    UpperKJ,
    /// `M = (R̂⁻¹)^{jk}_{il}`, the placement of the derivative–coordinate family.
    UpperJK,
}

impl DiffDerivPlacement {
    pub fn describe(self) -> &'static str {
        match self {
            Self::UpperKJ => "(Rhat^-1)^{kj}_{li}",
            Self::UpperJK => "(Rhat^-1)^{jk}_{il}",
        }
    }
}

pub fn derivative_differential_rules(rhat_inv: &RMatrix4, placement: DiffDerivPlacement) -> Vec<Rule> {
    let mut out = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            let mut rhs = Expr::zero();
            for k in 1..=2 {
                for l in 1..=2 {
                    let c = match placement {
                        DiffDerivPlacement::UpperKJ => rhat_inv.entry(k, j, l, i),
                        DiffDerivPlacement::UpperJK => rhat_inv.entry(j, k, i, l),
                    };
                    rhs.add_term(word2(Generator::diff(l), Generator::deriv(k)), c.clone());
                }
            }
            out.push(((Generator::deriv(i), Generator::diff(j)), rhs));
        }
    }
    out
}

/// `x^i x^j − s R̂^{ij}_{kl} x^k x^l` for a family of generators.
fn quadratic_relations(rhat: &RMatrix4, s: &LaurentCoeff, gen: fn(usize) -> Generator) -> Vec<Expr> {
    let mut out = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            let mut e = Expr::word(&[gen(i), gen(j)]);
            for k in 1..=2 {
                for l in 1..=2 {
                    e.add_term(word2(gen(k), gen(l)), -(s * rhat.entry(i, j, k, l)));
                }
            }
            out.push(e);
        }
    }
    out
}

/// `∂_i ∂_j − s R̂^{kl}_{ji} ∂_l ∂_k`.
fn derivative_relations(rhat: &RMatrix4, s: &LaurentCoeff) -> Vec<Expr> {
    let mut out = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            let mut e = Expr::word(&[Generator::deriv(i), Generator::deriv(j)]);
            for k in 1..=2 {
                for l in 1..=2 {
                    e.add_term(
                        word2(Generator::deriv(l), Generator::deriv(k)),
                        -(s * rhat.entry(k, l, j, i)),
                    );
                }
            }
            out.push(e);
        }
    }
    out
}

fn compare_rules(generated: &[Rule], rs: &RuleSet) -> Vec<String> {
    generated
        .iter()
        .filter_map(|((x, y), rhs)| {
            let shipped = rs.rule(*x, *y);
            (shipped != Some(rhs)).then(|| {
                format!(
                    "{}{}: R-form gives {rhs:?}, rule set has {:?}",
                    x.unicode(),
                    y.unicode(),
                    shipped
                )
            })
        })
        .collect()
}

/// Every relation must reduce to zero and be a nonzero multiple of one of
/// `targets`; every target must be reached.
fn match_relations(relations: &[Expr], targets: &[Expr], rs: &RuleSet) -> (Vec<String>, Vec<LaurentCoeff>) {
    let mut mismatches = Vec::new();
    let mut conditions = Vec::new();
    let mut hit = vec![false; targets.len()];
    for r in relations.iter().filter(|r| !r.is_zero()) {
        let nf = rs.normalize(r);
        if !nf.is_zero() {
            mismatches.push(format!("{r:?} reduces to {nf:?}"));
            continue;
        }
        match targets
            .iter()
            .enumerate()
            .find_map(|(t, target)| r.proportionality(target).map(|c| (t, c)))
        {
            Some((t, c)) => {
                hit[t] = true;
                if !c.is_unit() && !conditions.contains(&c) {
                    conditions.push(c);
                }
            }
            None => mismatches.push(format!("{r:?} is not a multiple of a defining relation")),
        }
    }
    for (t, h) in hit.iter().enumerate() {
        if !h {
            mismatches.push(format!("{:?} is not produced", targets[t]));
        }
    }
    (mismatches, conditions)
}

fn scaling_candidates() -> [LaurentCoeff; 2] {
    [-LaurentCoeff::pq_pow(-1, -1), -LaurentCoeff::pq_pow(1, 1)]
}

fn resolve_scaling(
    name: &'static str,
    relations_for: impl Fn(&LaurentCoeff) -> Vec<Expr>,
    targets: &[Expr],
    rs: &RuleSet,
) -> (FamilyCheck, Option<LaurentCoeff>) {
    let mut tried = Vec::new();
    for s in scaling_candidates() {
        let (mismatches, conditions) = match_relations(&relations_for(&s), targets, rs);
        if mismatches.is_empty() {
            return (
                FamilyCheck {
                    name,
                    passed: true,
                    resolved: Some(format!("scaling {s}")),
                    mismatches: vec![],
                    conditions,
                },
                Some(s),
            );
        }
        tried.extend(mismatches.into_iter().map(|m| format!("scaling {s}: {m}")));
    }
    (
        FamilyCheck {
            name,
            passed: false,
            resolved: None,
            mismatches: tried,
            conditions: vec![],
        },
        None,
    )
}

/// Checks every family of the R-matrix formulation against the rule set of
/// the calculus, resolving the free choices (the scalar in front of the
/// coordinate and derivative families, the index placement of the
/// derivative–differential family) by trying each candidate.
pub fn check_r_form_calculus(calculus_type: CalculusType) -> Result<RFormReport> {
    use Generator as G;
    let rs = build_ruleset(calculus_type);
    let rhat = hat(&r_of(calculus_type));
    let mut families = Vec::new();

    let mismatches = compare_rules(&coordinate_differential_rules(&rhat), &rs);
    families.push(FamilyCheck {
        name: "coordinate-differential",
        passed: mismatches.is_empty(),
        resolved: None,
        mismatches,
        conditions: vec![],
    });

    let big = |gs: &[Generator]| Expr::word(gs);
    let diff_target = big(&[G::BIG_THETA, G::BIG_PHI]) - Expr::term(LaurentCoeff::q(), word2(G::BIG_PHI, G::BIG_THETA));
    let (mm, conditions) = match_relations(
        &quadratic_relations(&rhat, &LaurentCoeff::one(), Generator::diff),
        &[diff_target],
        &rs,
    );
    families.push(FamilyCheck {
        name: "differential-differential",
        passed: mm.is_empty(),
        resolved: Some("scaling 1 (d of the coordinate-differential family)".into()),
        mismatches: mm,
        conditions,
    });

    let plane_targets = [
        big(&[G::THETA, G::PHI]) + Expr::term(LaurentCoeff::pq_pow(-1, 0), word2(G::PHI, G::THETA)),
        big(&[G::THETA, G::THETA]),
        big(&[G::PHI, G::PHI]),
    ];
    let (fc, coordinate_scaling) = resolve_scaling(
        "coordinate-coordinate",
        |s| quadratic_relations(&rhat, s, Generator::coord),
        &plane_targets,
        &rs,
    );
    families.push(fc);

    let deriv_targets = [
        big(&[G::PARTIAL_THETA, G::PARTIAL_PHI])
            + Expr::term(LaurentCoeff::q(), word2(G::PARTIAL_PHI, G::PARTIAL_THETA)),
        big(&[G::PARTIAL_THETA, G::PARTIAL_THETA]),
        big(&[G::PARTIAL_PHI, G::PARTIAL_PHI]),
    ];
    let (fc, derivative_scaling) = resolve_scaling(
        "derivative-derivative",
        |s| derivative_relations(&rhat, s),
        &deriv_targets,
        &rs,
    );
    families.push(fc);

    let mismatches = compare_rules(&derivative_coordinate_rules(&rhat), &rs);
    families.push(FamilyCheck {
        name: "derivative-coordinate",
        passed: mismatches.is_empty(),
        resolved: None,
        mismatches,
        conditions: vec![],
    });

    let rhat_inv = rhat.inverse()?;
    let mut tried = Vec::new();
    let mut resolved = None;
    for placement in [DiffDerivPlacement::UpperKJ, DiffDerivPlacement::UpperJK] {
        let mm = compare_rules(&derivative_differential_rules(&rhat_inv, placement), &rs);
        if mm.is_empty() {
            resolved = Some(placement);
            break;
        }
        tried.extend(mm.into_iter().map(|m| format!("{}: {m}", placement.describe())));
    }
    families.push(FamilyCheck {
        name: "derivative-differential",
        passed: resolved.is_some(),
        resolved: resolved.map(|p| format!("index placement {}", p.describe())),
        mismatches: if resolved.is_some() { vec![] } else { tried },
        conditions: vec![],
    });

    Ok(RFormReport {
        calculus_type,
        families,
        coordinate_scaling,
        derivative_scaling,
    })
}

// ---------------------------------------------------------------------------
// Quantum-group relations

/// Entries `a, b, c, d` of the quantum matrix `T = [[a, b], [c, d]]`,
/// ordered `a < b < c < d`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum QgLetter {
    A,
    B,
    C,
    D,
}

impl QgLetter {
    pub const ALL: [QgLetter; 4] = [QgLetter::A, QgLetter::B, QgLetter::C, QgLetter::D];

    /// `T^i_j` with 1-based indices.
    pub fn entry(i: usize, j: usize) -> Self {
        Self::ALL[pair(i, j)]
    }
}

impl Letter for QgLetter {
    fn alphabet() -> &'static [Self] {
        &Self::ALL
    }

    fn ascii(&self) -> &'static str {
        match self {
            QgLetter::A => "a",
            QgLetter::B => "b",
            QgLetter::C => "c",
            QgLetter::D => "d",
        }
    }
}

pub type QgExpr = FreeAlgebra<QgLetter>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumGroupRelations {
    /// Each relation is required to vanish. Leading coefficients are 1
    /// whenever they are units.
    pub relations: Vec<QgExpr>,
}

impl QuantumGroupRelations {
    /// Evaluates every relation at commuting values of `a, b, c, d`.
    pub fn evaluate_commutative(&self, values: [LaurentCoeff; 4]) -> Vec<LaurentCoeff> {
        self.relations
            .iter()
            .map(|r| {
                r.terms()
                    .map(|(w, c)| w.letters().iter().fold(c.clone(), |acc, l| &acc * &values[*l as usize]))
                    .sum()
            })
            .collect()
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentCoeff) -> LaurentCoeff) -> Self {
        Self {
            relations: self.relations.iter().map(|r| r.map_coeffs(&f)).collect(),
        }
    }

    /// True when every relation is a nonzero multiple of a commutator `xy − yx`.
    pub fn all_commutators(&self) -> bool {
        self.relations.iter().all(|r| {
            let terms: Vec<_> = r.terms().collect();
            if terms.len() != 2 {
                return false;
            }
            let ((w1, c1), (w2, c2)) = (terms[0], terms[1]);
            w1.len() == 2
                && w2.letters() == [w1.letters()[1], w1.letters()[0]]
                && w1.letters()[0] != w1.letters()[1]
                && *c1 == -c2
        })
    }

    /// Same relations up to unit multiples and order.
    pub fn equivalent(&self, other: &Self) -> bool {
        let covers = |x: &Self, y: &Self| {
            x.relations.iter().all(|r| {
                y.relations
                    .iter()
                    .any(|s| r.proportionality(s).is_some_and(|c| c.is_unit()))
            })
        };
        self.relations.len() == other.relations.len() && covers(self, other) && covers(other, self)
    }
}

fn monic(e: QgExpr) -> QgExpr {
    match e.leading().and_then(|(_, c)| c.unit_inverse()) {
        Some(inv) => e.scale(&inv),
        None => e,
    }
}

/// Incremental rank test over the fraction field, by division-free
/// Gauss–Jordan elimination on coefficient vectors.
struct Echelon {
    rows: Vec<(usize, Vec<LaurentCoeff>)>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<LaurentCoeff>) -> bool {
        for (pc, row) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let (a, b) = (row[*pc].clone(), v[*pc].clone());
            v = v.iter().zip(row).map(|(x, y)| &(&a * x) - &(&b * y)).collect();
        }
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        for (_, row) in self.rows.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let (a, b) = (v[pc].clone(), row[pc].clone());
            *row = row.iter().zip(&v).map(|(x, y)| &(&a * x) - &(&b * y)).collect();
        }
        self.rows.push((pc, v));
        true
    }
}

/// Entry equations of `R̂ T₁T₂ = T₁T₂ R̂` for `T = [[a, b], [c, d]]` with
/// non-commuting entries, before any deduplication.
pub fn rtt_entry_equations(rhat: &RMatrix4) -> Vec<QgExpr> {
    let t = QgLetter::entry;
    let mut out = Vec::with_capacity(16);
    for i in 1..=2 {
        for j in 1..=2 {
            for k in 1..=2 {
                for l in 1..=2 {
                    let mut e = QgExpr::zero();
                    for m in 1..=2 {
                        for n in 1..=2 {
                            // (R̂ T₁T₂)^{ij}_{kl} = R̂^{ij}_{mn} T^m_k T^n_l
                            e.add_term(Word(vec![t(m, k), t(n, l)]), rhat.entry(i, j, m, n).clone());
                            // (T₁T₂ R̂)^{ij}_{kl} = T^i_m T^j_n R̂^{mn}_{kl}
                            e.add_term(Word(vec![t(i, m), t(j, n)]), -rhat.entry(m, n, k, l));
                        }
                    }
                    out.push(e);
                }
            }
        }
    }
    out
}

/// Independent quadratic relations among `a, b, c, d` from the RTT equation.
///
/// Zero equations and unit multiples of earlier ones are dropped, then any
/// equation in the linear span (over the fraction field) of the kept ones.
pub fn rtt_relations(rhat: &RMatrix4) -> QuantumGroupRelations {
    let words = Word::<QgLetter>::all_of_length(2);
    let mut echelon = Echelon { rows: Vec::new() };
    let mut relations: Vec<QgExpr> = Vec::new();
    for e in rtt_entry_equations(rhat) {
        if e.is_zero() {
            continue;
        }
        let e = monic(e);
        if relations
            .iter()
            .any(|r| e.proportionality(r).is_some_and(|c| c.is_unit()))
        {
            continue;
        }
        let v = words.iter().map(|w| e.coeff(w)).collect();
        if echelon.insert(v) {
            relations.push(e);
        }
    }
    QuantumGroupRelations { relations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> LaurentCoeff {
        LaurentCoeff::one()
    }
    fn m(a: i32, b: i32) -> LaurentCoeff {
        LaurentCoeff::pq_pow(a, b)
    }

    #[test]
    fn shipped_entries() {
        let r1 = r_of(CalculusType::TypeI);
        assert_eq!(r1.entry(1, 2, 2, 1), &(&one() - &m(1, 1)));
        let r2 = r_of(CalculusType::TypeII);
        assert_eq!(r2.entry(2, 1, 1, 2), &(&one() - &m(-1, -1)));
        assert_eq!(r1.at_classical(), RMatrix4::identity());
        assert_eq!(r2.at_classical(), RMatrix4::identity());
    }

    #[test]
    fn hat_swaps_middle_rows() {
        let h = hat(&r_of(CalculusType::TypeI));
        let row = |r: usize| (0..4).map(|c| h.0[(r, c)].clone()).collect::<Vec<_>>();
        let z = LaurentCoeff::zero;
        assert_eq!(row(1), vec![z(), z(), m(0, 1), z()]);
        assert_eq!(row(2), vec![z(), m(1, 0), &one() - &m(1, 1), z()]);
        assert_eq!(hat(&RMatrix4::identity()), RMatrix4(swap_matrix()));
    }

    #[test]
    fn hat_is_an_involution() {
        for t in CalculusType::BOTH {
            let r = r_of(t);
            assert_eq!(hat(&hat(&r)), r);
        }
    }

    #[test]
    fn yang_baxter_holds_for_both() {
        for t in CalculusType::BOTH {
            let rep = ybe_check(&r_of(t));
            assert!(rep.plain_ybe && rep.braid_ybe, "{t}: {rep:?}");
        }
        let rep = ybe_check(&RMatrix4::identity());
        assert!(rep.plain_ybe && rep.braid_ybe);
    }

    #[test]
    fn yang_baxter_detects_a_bad_matrix() {
        let mut r = r_of(CalculusType::TypeI);
        r.0[(2, 1)] = one();
        let rep = ybe_check(&r);
        assert!(!rep.plain_ybe);
        assert!(!rep.plain_residuals.is_empty());
    }

    #[test]
    fn quadratic_identity() {
        let expected = [(CalculusType::TypeI, -m(1, 1)), (CalculusType::TypeII, -m(-1, -1))];
        for (t, l2) in expected {
            let rh = hat(&r_of(t));
            let (a, b) = hat_eigenvalues(&rh).unwrap();
            assert_eq!((a.clone(), b.clone()), (one(), l2));
            assert!(quadratic_identity_residual(&rh, &a, &b).is_zero());
        }
    }

    #[test]
    fn transpose_inverse_remark() {
        assert!(transpose_inverse_check(true));
        assert!(!transpose_inverse_check(false));
    }

    #[test]
    fn inverse_round_trip() {
        for t in CalculusType::BOTH {
            let r = r_of(t);
            let inv = r.inverse().unwrap();
            assert_eq!(&r.0 * &inv.0, LMatrix::identity(4));
        }
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = LMatrix::zeros(4);
        assert!(matches!(m.inverse(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn r_form_scalings() {
        let r1 = check_r_form_calculus(CalculusType::TypeI).unwrap();
        assert!(r1.passed(), "{r1:#?}");
        assert_eq!(r1.coordinate_scaling, Some(-m(-1, -1)));
        assert_eq!(r1.derivative_scaling, Some(-m(-1, -1)));
        let r2 = check_r_form_calculus(CalculusType::TypeII).unwrap();
        assert!(r2.passed(), "{r2:#?}");
        assert_eq!(r2.coordinate_scaling, Some(-m(1, 1)));
        assert_eq!(r2.derivative_scaling, Some(-m(1, 1)));
    }

    #[test]
    fn nilpotency_from_the_coordinate_family_is_conditional() {
        let r1 = check_r_form_calculus(CalculusType::TypeI).unwrap();
        let fam = r1.families.iter().find(|f| f.name == "coordinate-coordinate").unwrap();
        // θθ = -(pq)⁻¹ θθ gives (1 + p⁻¹q⁻¹)θθ = 0
        assert_eq!(fam.conditions, vec![&one() + &m(-1, -1)]);
    }

    #[test]
    fn diff_deriv_placement_is_the_jk_one() {
        for t in CalculusType::BOTH {
            let r = check_r_form_calculus(t).unwrap();
            let fam = r.families.iter().find(|f| f.name == "derivative-differential").unwrap();
            assert_eq!(fam.resolved.as_deref(), Some("index placement (Rhat^-1)^{jk}_{il}"));
        }
    }

    #[test]
    fn rtt_relation_count() {
        for t in CalculusType::BOTH {
            let rels = rtt_relations(&hat(&r_of(t)));
            assert_eq!(rels.relations.len(), 6, "{t}: {rels:?}");
        }
    }

    #[test]
    fn identity_matrix_is_a_quantum_group_point() {
        for t in CalculusType::BOTH {
            let rels = rtt_relations(&hat(&r_of(t)));
            let vals = rels.evaluate_commutative([one(), LaurentCoeff::zero(), LaurentCoeff::zero(), one()]);
            assert!(vals.iter().all(LaurentCoeff::is_zero));
        }
    }

    #[test]
    fn classical_rtt_relations_are_commutators() {
        for t in CalculusType::BOTH {
            let rels = rtt_relations(&hat(&r_of(t))).map_coeffs(LaurentCoeff::at_classical);
            assert!(rels.all_commutators(), "{rels:?}");
        }
    }

    #[test]
    fn rtt_is_invariant_under_unit_rescaling() {
        let rh = hat(&r_of(CalculusType::TypeI));
        let base = rtt_relations(&rh);
        for unit in [m(1, 0), -m(2, -3), LaurentCoeff::rational(3, 7)] {
            assert!(rtt_relations(&rh.scale(&unit)).equivalent(&base));
        }
    }
}
