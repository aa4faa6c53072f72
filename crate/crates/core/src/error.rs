use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("nonunital evaluation point: p and q must be nonzero")]
    NonunitalEvaluation,
    #[error("d undefined on derivative generators")]
    DerivativeInExteriorD,
    #[error("coaction defined on coordinates and differentials only")]
    CoactionDomain,
    #[error("no representation for generator {0}")]
    NotRepresented(String),
    #[error("no solution")]
    NoSolution,
    #[error("division by non-monomial coefficient {0}")]
    NonMonomialDivision(String),
    #[error("constraint system is underdetermined or not of case-split/linear form")]
    Unsolvable,
    #[error("expected a unique solution, found {0}")]
    NotUnique(usize),
    #[error("matrix is not invertible over the Laurent ring (determinant {0})")]
    NotInvertible(String),
    #[error("deformation parameter must be nonzero")]
    ZeroDeformation,
    #[error("invalid rewrite rule {lhs}: {reason}")]
    InvalidRule { lhs: String, reason: String },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
        expected: Vec<String>,
    },
    #[error("nilpotent generators admit only exponents 0 and 1 via ^; negative exponents are parameter-only")]
    NegativeExponent { line: usize, column: usize },
}
