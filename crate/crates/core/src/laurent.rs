//! Sparse Laurent polynomials in the two central deformation parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent pair `(a, b)` of the monomial `p^a q^b`.
pub type Exponent = (i32, i32);

/// An element `Σ c_ab p^a q^b` of `Q[p, 1/p, q, 1/q]`.
///
/// The term map never stores a zero coefficient, so structural equality is
/// ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentCoeff {
    terms: BTreeMap<Exponent, BigRational>,
}

impl LaurentCoeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: i64) -> Self {
        Self::monomial(BigRational::from_integer(n.into()), 0, 0)
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Self::monomial(BigRational::new(num.into(), den.into()), 0, 0)
    }

    pub fn p() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    /// `c · p^a q^b`.
    pub fn monomial(c: BigRational, a: i32, b: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        Self { terms }
    }

    /// `p^a q^b` with unit coefficient.
    pub fn pq_pow(a: i32, b: i32) -> Self {
        Self::monomial(BigRational::one(), a, b)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Units of the Laurent ring are exactly the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next()?;
        Some(Self::monomial(c.recip(), -a, -b))
    }

    /// Exact quotient when the divisor is a unit; errors otherwise.
    pub fn div_unit(&self, divisor: &Self) -> Result<Self> {
        divisor
            .unit_inverse()
            .map(|inv| self * &inv)
            .ok_or_else(|| Error::NonMonomialDivision(divisor.to_string()))
    }

    /// The constant term, when the value is a rational constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Ring endomorphism sending `p ↦ p^a q^b` and `q ↦ p^c q^d`.
    ///
    /// Monomial images keep the result inside the Laurent ring. `(0, 0)` for
    /// both images specializes to `p = q = 1`.
    pub fn substitute(&self, p_image: Exponent, q_image: Exponent) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| {
            (
                (a * p_image.0 + b * q_image.0, a * p_image.1 + b * q_image.1),
                c.clone(),
            )
        }))
    }

    /// Specialization `p = q`.
    pub fn at_p_equals_q(&self) -> Self {
        self.substitute((0, 1), (0, 1))
    }

    /// Specialization `p = q = 1`.
    pub fn at_classical(&self) -> Self {
        self.substitute((0, 0), (0, 0))
    }

    pub fn eval(&self, p: Complex64, q: Complex64) -> Result<Complex64> {
        if p == Complex64::zero() || q == Complex64::zero() {
            return Err(Error::NonunitalEvaluation);
        }
        Ok(self
            .terms
            .iter()
            .map(|(&(a, b), c)| p.powi(a) * q.powi(b) * rational_to_f64(c))
            .sum())
    }

    /// Pretty form with `p`, `q` as ASCII names, e.g. `1 - p*q`.
    ///
    /// Terms are ordered by total absolute degree, then by descending `p`
    /// and `q` exponents.
    pub fn ordered_terms(&self) -> Vec<(Exponent, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        v.sort_by_key(|&((a, b), _)| (a.abs() + b.abs(), std::cmp::Reverse(a), std::cmp::Reverse(b)));
        v
    }
}

pub(crate) fn rational_to_f64(c: &BigRational) -> f64 {
    let n = c.numer().to_f64().unwrap_or(f64::NAN);
    let d = c.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

fn write_monomial(f: &mut fmt::Formatter<'_>, a: i32, b: i32) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("p", a), ("q", b)] {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

fn write_magnitude(f: &mut fmt::Formatter<'_>, c: &BigRational, a: i32, b: i32) -> fmt::Result {
    let unit_monomial = (a, b) != (0, 0);
    if c.is_one() && unit_monomial {
        return write_monomial(f, a, b);
    }
    if c.is_integer() {
        write!(f, "{}", c.numer())?;
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())?;
    }
    if unit_monomial {
        f.write_str("*")?;
        write_monomial(f, a, b)?;
    }
    Ok(())
}

impl fmt::Display for LaurentCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((a, b), c)) in self.ordered_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_magnitude(f, &c.abs(), a, b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentCoeff({self})")
    }
}

impl From<i64> for LaurentCoeff {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<BigRational> for LaurentCoeff {
    fn from(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }
}

impl From<BigInt> for LaurentCoeff {
    fn from(n: BigInt) -> Self {
        Self::monomial(BigRational::from_integer(n), 0, 0)
    }
}

impl<'a> Add<&'a LaurentCoeff> for &'a LaurentCoeff {
    type Output = LaurentCoeff;
    fn add(self, rhs: &'a LaurentCoeff) -> LaurentCoeff {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentCoeff {
    type Output = LaurentCoeff;
    fn add(mut self, rhs: LaurentCoeff) -> LaurentCoeff {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentCoeff> for LaurentCoeff {
    fn add_assign(&mut self, rhs: &LaurentCoeff) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &LaurentCoeff {
    type Output = LaurentCoeff;
    fn neg(self) -> LaurentCoeff {
        LaurentCoeff {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentCoeff {
    type Output = LaurentCoeff;
    fn neg(self) -> LaurentCoeff {
        -&self
    }
}

impl<'a> Sub<&'a LaurentCoeff> for &'a LaurentCoeff {
    type Output = LaurentCoeff;
    fn sub(self, rhs: &'a LaurentCoeff) -> LaurentCoeff {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentCoeff {
    type Output = LaurentCoeff;
    fn sub(self, rhs: LaurentCoeff) -> LaurentCoeff {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentCoeff> for &'a LaurentCoeff {
    type Output = LaurentCoeff;
    fn mul(self, rhs: &'a LaurentCoeff) -> LaurentCoeff {
        let mut out = LaurentCoeff::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentCoeff {
    type Output = LaurentCoeff;
    fn mul(self, rhs: LaurentCoeff) -> LaurentCoeff {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentCoeff {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> LaurentCoeff {
        LaurentCoeff::p()
    }
    fn q() -> LaurentCoeff {
        LaurentCoeff::q()
    }
    fn one() -> LaurentCoeff {
        LaurentCoeff::one()
    }

    #[test]
    fn product_of_one_minus_pq_and_minus_inverse() {
        let a = &one() - &(p() * q());
        let b = -LaurentCoeff::pq_pow(-1, -1);
        let expected = &one() - &LaurentCoeff::pq_pow(-1, -1);
        // (1 - pq)(-1/(pq)) = 1 - 1/(pq)
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn additive_inverse_is_canonical_zero() {
        let z = &p() + &(-p());
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
        assert_eq!(z, LaurentCoeff::zero());
    }

    #[test]
    fn clearing_denominators() {
        let lhs = &one() - &LaurentCoeff::pq_pow(-1, -1);
        let rhs = &(&(p() * q()) - &one()) * &LaurentCoeff::pq_pow(-1, -1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_examples() {
        let c = |re, im| Complex64::new(re, im);
        let v = (&one() - &(p() * q())).eval(c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!((v - c(-5.0, 0.0)).norm() < 1e-15);
        let v = LaurentCoeff::pq_pow(-1, 0).eval(c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((v - c(0.5, 0.0)).norm() < 1e-15);
        let v = (&one() - &LaurentCoeff::pq_pow(-1, -1))
            .eval(c(0.0, -2.0), c(0.0, 2.0))
            .unwrap();
        assert!((v - c(0.75, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn evaluation_at_zero_is_rejected() {
        let err = p().eval(Complex64::zero(), Complex64::new(1.0, 0.0));
        assert_eq!(err, Err(Error::NonunitalEvaluation));
    }

    #[test]
    fn display() {
        assert_eq!((&one() - &(p() * q())).to_string(), "1 - p*q");
        assert_eq!((&one() - &LaurentCoeff::pq_pow(-1, -1)).to_string(), "1 - p^-1*q^-1");
        assert_eq!((-LaurentCoeff::rational(1, 2) * q()).to_string(), "-1/2*q");
        assert_eq!(LaurentCoeff::zero().to_string(), "0");
        assert_eq!((&p() + &q()).to_string(), "p + q");
    }

    #[test]
    fn units_and_division() {
        assert!(LaurentCoeff::pq_pow(3, -2).is_unit());
        assert!(!(&one() + &p()).is_unit());
        let x = &one() + &p();
        assert_eq!(x.div_unit(&p()).unwrap(), &LaurentCoeff::pq_pow(-1, 0) + &one());
        assert!(matches!(p().div_unit(&x), Err(Error::NonMonomialDivision(_))));
    }

    #[test]
    fn specializations() {
        let x = &one() - &(p() * q());
        assert!(x.at_classical().is_zero());
        assert_eq!(x.at_p_equals_q(), &one() - &LaurentCoeff::pq_pow(0, 2));
    }
}
