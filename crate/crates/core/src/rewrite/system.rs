use std::collections::BTreeMap;

use crate::algebra::{FreeAlgebra, Letter, Word};
use crate::error::{Error, Result};
use crate::laurent::LaurentCoeff;

/// Oriented quadratic rewriting rules `xy → rhs` over a free algebra.
///
/// Every right-hand word is strictly smaller than its left side in the
/// degree-lexicographic order, so reduction terminates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteSystem<L: Letter> {
    rules: BTreeMap<(L, L), FreeAlgebra<L>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair<L: Letter> {
    pub overlap: Word<L>,
    /// `rhs(xy)·z`
    pub left: FreeAlgebra<L>,
    /// `x·rhs(yz)`
    pub right: FreeAlgebra<L>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceFailure<L: Letter> {
    pub overlap: Word<L>,
    pub left_normal_form: FreeAlgebra<L>,
    pub right_normal_form: FreeAlgebra<L>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport<L: Letter> {
    pub triples_examined: usize,
    pub overlaps_checked: usize,
    pub failures: Vec<ConfluenceFailure<L>>,
}

impl<L: Letter> ConfluenceReport<L> {
    pub fn is_confluent(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<L: Letter> RewriteSystem<L> {
    pub fn new<I>(rules: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((L, L), FreeAlgebra<L>)>,
    {
        let mut map = BTreeMap::new();
        for ((x, y), rhs) in rules {
            let lhs = Word(vec![x, y]);
            if let Some((w, _)) = rhs.terms().find(|(w, _)| **w >= lhs) {
                return Err(Error::InvalidRule {
                    lhs: format!("{lhs:?}"),
                    reason: format!("right-hand word {w:?} is not smaller than the left side"),
                });
            }
            if map.insert((x, y), rhs).is_some() {
                return Err(Error::InvalidRule {
                    lhs: format!("{lhs:?}"),
                    reason: "duplicate left side".into(),
                });
            }
        }
        Ok(Self { rules: map })
    }

    pub fn rule(&self, x: L, y: L) -> Option<&FreeAlgebra<L>> {
        self.rules.get(&(x, y))
    }

    pub fn rules(&self) -> impl Iterator<Item = (Word<L>, &FreeAlgebra<L>)> {
        self.rules.iter().map(|(&(x, y), rhs)| (Word(vec![x, y]), rhs))
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn map_rhs(&self, f: impl Fn(&FreeAlgebra<L>) -> FreeAlgebra<L>) -> Self {
        Self {
            rules: self.rules.iter().map(|(k, v)| (*k, f(v))).collect(),
        }
    }

    fn first_redex(&self, w: &Word<L>) -> Option<(usize, &FreeAlgebra<L>)> {
        w.0.windows(2)
            .enumerate()
            .find_map(|(i, pair)| self.rules.get(&(pair[0], pair[1])).map(|r| (i, r)))
    }

    pub fn is_normal(&self, w: &Word<L>) -> bool {
        self.first_redex(w).is_none()
    }

    pub fn normalize(&self, e: &FreeAlgebra<L>) -> FreeAlgebra<L> {
        self.normalize_counted(e).0
    }

    /// Normal form together with the number of single-rule applications.
    ///
    /// Pending terms are kept in a map keyed by word and the largest word is
    /// always rewritten first; every rewrite produces strictly smaller words,
    /// so like terms are merged before they are expanded further.
    pub fn normalize_counted(&self, e: &FreeAlgebra<L>) -> (FreeAlgebra<L>, usize) {
        let mut pending: BTreeMap<Word<L>, LaurentCoeff> = e.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out = FreeAlgebra::zero();
        let mut steps = 0;
        while let Some((w, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.first_redex(&w) {
                None => out.add_term(w, c),
                Some((i, rhs)) => {
                    steps += 1;
                    for (rw, rc) in rhs.terms() {
                        let mut v = Vec::with_capacity(w.len());
                        v.extend_from_slice(&w.0[..i]);
                        v.extend_from_slice(&rw.0);
                        v.extend_from_slice(&w.0[i + 2..]);
                        let slot = pending.entry(Word(v)).or_default();
                        *slot += &(&c * rc);
                    }
                }
            }
        }
        (out, steps)
    }

    /// One-step reducts of every overlap `xyz` with `xy` and `yz` both
    /// reducible, over all triples of the alphabet.
    pub fn critical_pairs(&self) -> Vec<CriticalPair<L>> {
        let mut out = Vec::new();
        for (&(x, y), rhs_xy) in &self.rules {
            for &z in L::alphabet() {
                let Some(rhs_yz) = self.rules.get(&(y, z)) else {
                    continue;
                };
                out.push(CriticalPair {
                    overlap: Word(vec![x, y, z]),
                    left: rhs_xy * &FreeAlgebra::letter(z),
                    right: &FreeAlgebra::letter(x) * rhs_yz,
                });
            }
        }
        out
    }

    pub fn check_confluence(&self) -> ConfluenceReport<L> {
        let pairs = self.critical_pairs();
        let overlaps_checked = pairs.len();
        let failures = pairs
            .into_iter()
            .filter_map(|cp| {
                let l = self.normalize(&cp.left);
                let r = self.normalize(&cp.right);
                (l != r).then_some(ConfluenceFailure {
                    overlap: cp.overlap,
                    left_normal_form: l,
                    right_normal_form: r,
                })
            })
            .collect();
        ConfluenceReport {
            triples_examined: L::alphabet().len().pow(3),
            overlaps_checked,
            failures,
        }
    }
}
