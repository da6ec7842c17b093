//! Exact polynomial arithmetic over the Gaussian rationals.

mod division;
mod gaussian;
mod laurent;
mod monomial;
mod system;
mod univariate;

pub use division::{divide_linear, gcd_univariate};
pub use gaussian::GaussianRational;
pub(crate) use gaussian::fmt_rational;
pub use laurent::{grlex_cmp, Exponent, LaurentPolynomial};
pub use monomial::{apply_monomial_change, is_normalized, normalize_to_direction, MonomialChange};
pub use system::{default_names, PolySystem};
pub use univariate::UniPoly;

use thiserror::Error;

use crate::polytope::PolytopeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("negative exponent in variable {var}")]
    LaurentInput { var: usize },
    #[error("polynomial is not univariate in the requested variable")]
    NotUnivariate,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected {expected} shift vectors, found {found}")]
    ShiftCount { expected: usize, found: usize },
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable still occurs after elimination")]
    VariableStillPresent,
    #[error("division by x_i - alpha needs alpha != 0")]
    ZeroDivisorRoot,
    #[error("direction is zero")]
    ZeroDirection,
    #[error("direction is not primitive")]
    NonPrimitiveDirection,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}
