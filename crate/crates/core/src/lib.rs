//! Exact symbolic engine for the two-parameter differential calculus on the
//! quantum exterior plane.
//!
//! The scalar ring is `Q[p, 1/p, q, 1/q]` ([`LaurentCoeff`]). Elements of the
//! algebra generated by the coordinates `θ, φ`, their differentials `Θ, Φ` and
//! the partial derivatives `∂θ, ∂φ` are [`Expr`] values; the Type I and
//! Type II calculi are oriented rewriting systems ([`RuleSet`]) that reduce
//! every expression to the basis `Θ^a Φ^b θ^c φ^d ∂θ^e ∂φ^f`.

pub mod algebra;
pub mod ansatz;
pub mod covariance;
mod error;
pub mod fock;
pub mod laurent;
pub mod rewrite;
pub mod rmatrix;
pub mod text;

pub use algebra::{Expr, FreeAlgebra, Generator, Kind, Letter, Parity, Word};
pub use error::{Error, Result};
pub use laurent::LaurentCoeff;
pub use rewrite::{CalculusType, RuleSet};
