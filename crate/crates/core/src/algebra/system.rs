use std::collections::HashSet;

use super::{AlgebraError, LaurentPolynomial};
use crate::polytope::LatticePolytope;

/// An ordered tuple of nonzero Laurent polynomials over a shared variable list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolySystem {
    vars: Vec<String>,
    polys: Vec<LaurentPolynomial>,
}

impl PolySystem {
    pub fn new(vars: Vec<String>, polys: Vec<LaurentPolynomial>) -> Result<Self, AlgebraError> {
        let mut seen = HashSet::new();
        for v in &vars {
            if !seen.insert(v.as_str()) {
                return Err(AlgebraError::DuplicateVariable(v.clone()));
            }
        }
        for p in &polys {
            if p.nvars() != vars.len() {
                return Err(AlgebraError::DimensionMismatch {
                    expected: vars.len(),
                    found: p.nvars(),
                });
            }
            if p.is_zero() {
                return Err(AlgebraError::ZeroPolynomial);
            }
        }
        Ok(Self { vars, polys })
    }

    /// A system over variables named `x1, x2, ...`.
    pub fn with_default_names(nvars: usize, polys: Vec<LaurentPolynomial>) -> Result<Self, AlgebraError> {
        Self::new(default_names(nvars), polys)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn polys(&self) -> &[LaurentPolynomial] {
        &self.polys
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.polys.len() == self.vars.len()
    }

    pub fn newton_polytopes(&self) -> Vec<LatticePolytope> {
        self.polys
            .iter()
            .map(|p| p.newton_polytope().expect("nonzero by construction"))
            .collect()
    }

    /// Component-wise facial restriction.
    pub fn facial_system(&self, u: &[i64]) -> Self {
        Self {
            vars: self.vars.clone(),
            polys: self.polys.iter().map(|p| p.facial_restriction(u)).collect(),
        }
    }

    /// Replaces the polynomials, keeping the variable names.
    pub fn with_polys(&self, polys: Vec<LaurentPolynomial>) -> Result<Self, AlgebraError> {
        Self::new(self.vars.clone(), polys)
    }
}

pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("x{i}")).collect()
}
