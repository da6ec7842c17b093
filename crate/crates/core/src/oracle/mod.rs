//! Independent checks: torus-solution counts of bivariate systems and
//! alternative mixed-volume formulas.

mod mvcheck;
mod resultant;
mod roots;
mod solve2;

pub use mvcheck::{double_area, mixed_area, mv_cross_check, CrossCheck};
pub use resultant::{coefficients_in, sylvester_resultant};
pub use roots::{aberth, backward_error, MAX_ITERATIONS};
pub use solve2::{
    count_torus_solutions_2d, count_torus_solutions_2d_seeded, relative_residual, ApproxSolution,
    SolutionCount, DEFAULT_TOL,
};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::polytope::PolytopeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("expected a system in 2 variables, found {nvars}")]
    NotBivariate { nvars: usize },
    #[error("system is not square: {polys} polynomials in {vars} variables")]
    NotSquare { polys: usize, vars: usize },
    #[error("resultant vanishes identically (common factor or positive-dimensional solution set)")]
    ResultantVanishes,
    #[error("root finder did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("mixed-volume cross-check supports dimensions 2 and 3, got {0}")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}
