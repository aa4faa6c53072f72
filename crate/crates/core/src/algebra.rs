//! Free associative algebras over [`LaurentCoeff`] and the six generators of
//! the calculus.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use crate::laurent::LaurentCoeff;

/// A letter of a free monoid. The derived `Ord` is the generator precedence
/// used by every rewriting system in the crate.
pub trait Letter: Copy + Ord + Hash + Debug + 'static {
    fn alphabet() -> &'static [Self];
    fn ascii(&self) -> &'static str;
    fn unicode(&self) -> &'static str {
        self.ascii()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Differential,
    Coordinate,
    Derivative,
}

/// One of `Θ, Φ, θ, φ, ∂θ, ∂φ`. Ordered `Θ < Φ < θ < φ < ∂θ < ∂φ`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    kind: Kind,
    index: u8,
}

impl Generator {
    pub const BIG_THETA: Generator = Generator {
        kind: Kind::Differential,
        index: 1,
    };
    pub const BIG_PHI: Generator = Generator {
        kind: Kind::Differential,
        index: 2,
    };
    pub const THETA: Generator = Generator {
        kind: Kind::Coordinate,
        index: 1,
    };
    pub const PHI: Generator = Generator {
        kind: Kind::Coordinate,
        index: 2,
    };
    pub const PARTIAL_THETA: Generator = Generator {
        kind: Kind::Derivative,
        index: 1,
    };
    pub const PARTIAL_PHI: Generator = Generator {
        kind: Kind::Derivative,
        index: 2,
    };

    pub const ALL: [Generator; 6] = [
        Self::BIG_THETA,
        Self::BIG_PHI,
        Self::THETA,
        Self::PHI,
        Self::PARTIAL_THETA,
        Self::PARTIAL_PHI,
    ];

    /// `index` is 1 or 2.
    pub fn coord(index: usize) -> Self {
        Self::new(Kind::Coordinate, index)
    }

    pub fn diff(index: usize) -> Self {
        Self::new(Kind::Differential, index)
    }

    pub fn deriv(index: usize) -> Self {
        Self::new(Kind::Derivative, index)
    }

    fn new(kind: Kind, index: usize) -> Self {
        assert!(index == 1 || index == 2, "generator index must be 1 or 2");
        Generator {
            kind,
            index: index as u8,
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn index(&self) -> usize {
        self.index as usize
    }

    pub fn parity(&self) -> Parity {
        match self.kind {
            Kind::Differential => Parity::Even,
            Kind::Coordinate | Kind::Derivative => Parity::Odd,
        }
    }
}

impl Letter for Generator {
    fn alphabet() -> &'static [Self] {
        &Self::ALL
    }

    fn ascii(&self) -> &'static str {
        match (self.kind, self.index) {
            (Kind::Differential, 1) => "Theta",
            (Kind::Differential, _) => "Phi",
            (Kind::Coordinate, 1) => "theta",
            (Kind::Coordinate, _) => "phi",
            (Kind::Derivative, 1) => "d_theta",
            (Kind::Derivative, _) => "d_phi",
        }
    }

    fn unicode(&self) -> &'static str {
        match (self.kind, self.index) {
            (Kind::Differential, 1) => "Θ",
            (Kind::Differential, _) => "Φ",
            (Kind::Coordinate, 1) => "θ",
            (Kind::Coordinate, _) => "φ",
            (Kind::Derivative, 1) => "∂θ",
            (Kind::Derivative, _) => "∂φ",
        }
    }
}

impl Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.unicode())
    }
}

/// A finite sequence of letters. Ordered degree-lexicographically, which is
/// compatible with concatenation.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word<L>(pub Vec<L>);

impl<L: Letter> Word<L> {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[L] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word<L>) -> Word<L> {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// All words of exactly `len` letters over the alphabet.
    pub fn all_of_length(len: usize) -> Vec<Word<L>> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    L::alphabet().iter().map(move |&g| {
                        let mut v = w.0.clone();
                        v.push(g);
                        Word(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl Word<Generator> {
    pub fn parity(&self) -> Parity {
        self.0.iter().fold(Parity::Even, |acc, g| acc + g.parity())
    }
}

impl<L: Letter> From<Vec<L>> for Word<L> {
    fn from(v: Vec<L>) -> Self {
        Word(v)
    }
}

impl<L: Letter> PartialOrd for Word<L> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<L: Letter> Ord for Word<L> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl<L: Letter> Debug for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for g in &self.0 {
            f.write_str(g.unicode())?;
        }
        Ok(())
    }
}

/// Finite formal sum of words with Laurent coefficients; no relations are
/// applied by the arithmetic here.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeAlgebra<L: Letter> {
    terms: BTreeMap<Word<L>, LaurentCoeff>,
}

/// Element of the free algebra on the six calculus generators.
pub type Expr = FreeAlgebra<Generator>;

impl<L: Letter> Default for FreeAlgebra<L> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<L: Letter> FreeAlgebra<L> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(LaurentCoeff::one())
    }

    pub fn scalar(c: LaurentCoeff) -> Self {
        Self::term(c, Word::empty())
    }

    pub fn letter(g: L) -> Self {
        Self::term(LaurentCoeff::one(), Word(vec![g]))
    }

    pub fn word(letters: &[L]) -> Self {
        Self::term(LaurentCoeff::one(), Word(letters.to_vec()))
    }

    pub fn term(c: LaurentCoeff, w: Word<L>) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Word<L>, LaurentCoeff)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (w, c) in it {
            out.add_term(w, c);
        }
        out
    }

    pub fn add_term(&mut self, w: Word<L>, c: LaurentCoeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
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

    /// Terms in ascending word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word<L>, &LaurentCoeff)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word<L>, LaurentCoeff)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word<L>) -> LaurentCoeff {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Largest word with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&Word<L>, &LaurentCoeff)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &LaurentCoeff) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, v)| (w.clone(), v * c)))
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentCoeff) -> LaurentCoeff) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, v)| (w.clone(), f(v))))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Largest word length occurring.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// `Some(c)` when `self = c · other` for some coefficient `c` that is
    /// nonzero; `other` must have a unit leading coefficient.
    pub fn proportionality(&self, other: &Self) -> Option<LaurentCoeff> {
        let (w, lead) = other.leading()?;
        let c = self.coeff(w).div_unit(lead).ok()?;
        if c.is_zero() || &other.scale(&c) != self {
            return None;
        }
        Some(c)
    }

    pub fn contains_letter(&self, pred: impl Fn(L) -> bool) -> bool {
        self.terms.keys().any(|w| w.0.iter().any(|&g| pred(g)))
    }
}

impl<L: Letter> Debug for FreeAlgebra<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})·{w:?}")?;
        }
        Ok(())
    }
}

impl<L: Letter> From<L> for FreeAlgebra<L> {
    fn from(g: L) -> Self {
        Self::letter(g)
    }
}

impl<L: Letter> From<LaurentCoeff> for FreeAlgebra<L> {
    fn from(c: LaurentCoeff) -> Self {
        Self::scalar(c)
    }
}

impl<'a, L: Letter> Add<&'a FreeAlgebra<L>> for &'a FreeAlgebra<L> {
    type Output = FreeAlgebra<L>;
    fn add(self, rhs: &'a FreeAlgebra<L>) -> FreeAlgebra<L> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<L: Letter> Add for FreeAlgebra<L> {
    type Output = FreeAlgebra<L>;
    fn add(mut self, rhs: FreeAlgebra<L>) -> FreeAlgebra<L> {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl<'a, L: Letter> Sub<&'a FreeAlgebra<L>> for &'a FreeAlgebra<L> {
    type Output = FreeAlgebra<L>;
    fn sub(self, rhs: &'a FreeAlgebra<L>) -> FreeAlgebra<L> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl<L: Letter> Sub for FreeAlgebra<L> {
    type Output = FreeAlgebra<L>;
    fn sub(self, rhs: FreeAlgebra<L>) -> FreeAlgebra<L> {
        &self - &rhs
    }
}

impl<L: Letter> Neg for &FreeAlgebra<L> {
    type Output = FreeAlgebra<L>;
    fn neg(self) -> FreeAlgebra<L> {
        self.map_coeffs(|c| -c)
    }
}

impl<L: Letter> Neg for FreeAlgebra<L> {
    type Output = FreeAlgebra<L>;
    fn neg(self) -> FreeAlgebra<L> {
        -&self
    }
}

impl<'a, L: Letter> Mul<&'a FreeAlgebra<L>> for &'a FreeAlgebra<L> {
    type Output = FreeAlgebra<L>;
    fn mul(self, rhs: &'a FreeAlgebra<L>) -> FreeAlgebra<L> {
        let mut out = FreeAlgebra::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

impl<L: Letter> Mul for FreeAlgebra<L> {
    type Output = FreeAlgebra<L>;
    fn mul(self, rhs: FreeAlgebra<L>) -> FreeAlgebra<L> {
        &self * &rhs
    }
}

impl<L: Letter> Mul<LaurentCoeff> for FreeAlgebra<L> {
    type Output = FreeAlgebra<L>;
    fn mul(self, rhs: LaurentCoeff) -> FreeAlgebra<L> {
        self.scale(&rhs)
    }
}

impl<L: Letter> Mul<FreeAlgebra<L>> for LaurentCoeff {
    type Output = FreeAlgebra<L>;
    fn mul(self, rhs: FreeAlgebra<L>) -> FreeAlgebra<L> {
        rhs.scale(&self)
    }
}

impl Expr {
    /// True when no partial-derivative generator occurs.
    pub fn is_derivative_free(&self) -> bool {
        !self.contains_letter(|g| g.kind() == Kind::Derivative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator as G;

    #[test]
    fn six_generators_in_precedence_order() {
        let mut v = G::ALL.to_vec();
        v.sort();
        assert_eq!(v, G::ALL.to_vec());
        assert_eq!(v.len(), 6);
        assert_eq!(G::ALL.iter().filter(|g| g.parity() == Parity::Even).count(), 2);
    }

    #[test]
    fn product_concatenates() {
        let e = Expr::letter(G::THETA) * Expr::letter(G::PHI);
        assert_eq!(e, Expr::word(&[G::THETA, G::PHI]));
        let e = e * Expr::letter(G::BIG_THETA);
        assert_eq!(e, Expr::word(&[G::THETA, G::PHI, G::BIG_THETA]));
    }

    #[test]
    fn sum_builds_plane_relation_without_reducing() {
        let e = Expr::word(&[G::THETA, G::PHI]) + Expr::term(LaurentCoeff::pq_pow(-1, 0), Word(vec![G::PHI, G::THETA]));
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(Word(vec![G::THETA, G::PHI]).parity(), Parity::Even);
        assert_eq!(Word(vec![G::THETA, G::BIG_PHI]).parity(), Parity::Odd);
        assert_eq!(Word::<Generator>::empty().parity(), Parity::Even);
    }

    #[test]
    fn deglex_order() {
        let short = Word(vec![G::PARTIAL_PHI]);
        let long = Word(vec![G::BIG_THETA, G::BIG_THETA]);
        assert!(short < long);
        assert!(Word(vec![G::THETA, G::PHI]) < Word(vec![G::PHI, G::THETA]));
    }

    #[test]
    fn cancellation_leaves_zero() {
        let e = Expr::letter(G::THETA) - Expr::letter(G::THETA);
        assert!(e.is_zero());
    }
}
