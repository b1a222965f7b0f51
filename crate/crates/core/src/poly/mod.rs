//! Exact polynomials over `Q[i]`.

pub mod gcd;
pub mod matrix;
pub mod multi;
pub mod resultant;
pub mod text;
pub mod univariate;

pub use gcd::{exact_div, gcd, squarefree_part};
pub use matrix::{hessian_det, PolyMatrix};
pub use multi::{Monomial, MultiPoly};
pub use resultant::{discriminant, has_repeated_roots, resultant};
pub use text::poly;
pub use univariate::{BivariatePoly, IntPoly, RealPoly, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("matrix is not square")]
    NotSquare,
    #[error("polynomial has degree 0 in `{0}`")]
    DegreeZero(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial involves variables other than `{0}`")]
    NotUnivariate(String),
    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
}
