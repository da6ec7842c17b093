//! Liftings of a polynomial system to an equivalent system in more variables
//! whose Newton polytopes have smaller mixed volume.
//!
//! Every strategy first brings the system into the normal form for the chosen
//! direction (see [`normalize_to_direction`]); the lifted system and all
//! substitution data refer to the normalized coordinates. New variables
//! `y1, y2, ...` are appended after the original ones and each is defined by
//! one trailing polynomial `y_l - E_l(x)`.

mod auto;
mod bigcd;
mod division;
mod lindep;
mod monomial;
mod roots;

pub use auto::{auto_lift, auto_lift_with, AutoOptions};
pub use bigcd::lift_bivariate_gcd;
pub use division::{facial_root_candidates, lift_division, lift_division_ordered};
pub use lindep::{find_dependency, lift_linear_dependent};
pub use monomial::lift_monomial;
pub use roots::{find_rational_roots, rational_roots, RationalRoots};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::algebra::{
    apply_monomial_change, normalize_to_direction, AlgebraError, GaussianRational, LaurentPolynomial,
    MonomialChange, PolySystem,
};
use crate::polytope::{mixed_volume, Direction, PolytopeError};
use crate::saturation::SaturationError;
use crate::sysio::serialize_system;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Division,
    Lindep,
    Bigcd,
    Monomial,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Division => "division",
            Strategy::Lindep => "lindep",
            Strategy::Bigcd => "bigcd",
            Strategy::Monomial => "monomial",
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Data defining the substitution of a lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Substitution {
    /// Common facial root `(alpha_1, ..., alpha_k, 0, ..., 0)` and the
    /// variables divided by, in order.
    Alpha { alpha: Vec<GaussianRational>, order: Vec<usize> },
    /// `f_{i2}^u = lambda f_{i1}^u`.
    Lambda { lambda: GaussianRational, i1: usize, i2: usize },
    /// Monic gcd of the two facial polynomials, of degree `m`.
    Gcd { gcd: LaurentPolynomial, m: usize },
    Monomial { exponent: Vec<i64> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("system is not square: {polys} polynomials in {vars} variables")]
    NotSquare { polys: usize, vars: usize },
    #[error("strategy needs at least {min} variables, system has {d}")]
    TooFewVariables { d: usize, min: usize },
    #[error("system must have exactly 2 variables, found {d}")]
    NotBivariate { d: usize },
    #[error("k = {k} is outside 1..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("polynomial {poly} is divisible by the last variable")]
    DivisibleByLastVariable { poly: usize },
    #[error("facial polynomial {poly} is not saturated (step {step}, variable x{})", var + 1)]
    FacialNotSaturated { poly: usize, step: usize, var: usize },
    #[error("MV(N_1, ..., N_d) = 0")]
    ProjectedVolumeZero,
    #[error("expected {expected} root coordinates, found {found}")]
    AlphaLength { expected: usize, found: usize },
    #[error("root coordinate {index} is zero")]
    AlphaZero { index: usize },
    #[error("facial polynomial {poly} does not vanish at the given root")]
    AlphaNotRoot { poly: usize },
    #[error("division order must be a permutation of 0..{k}")]
    BadOrder { k: usize },
    #[error("facial system has no common root with Gaussian-rational coordinates (irrational: {irrational})")]
    NoRationalRoot { irrational: bool },
    #[error("index {index} out of range for {len} polynomials")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("the two polynomial indices must differ")]
    SameIndex,
    #[error("facial polynomials {i1} and {i2} are not proportional")]
    NoDependency { i1: usize, i2: usize },
    #[error("facial tuple without polynomial {i1} has zero mixed volume")]
    FacialMixedVolumeZero { i1: usize },
    #[error("polynomial {poly} equals its facial part")]
    FacialOnly { poly: usize },
    #[error("facial polynomials are coprime (gcd degree 0)")]
    CoprimeFacialParts,
    #[error("facial polynomial {poly} has no constant term after normalization")]
    MissingConstantTerm { poly: usize },
    #[error("monomial exponent must be non-negative and nonzero")]
    BadMonomial,
    #[error("the monomial divides no term of the system")]
    VacuousSubstitution,
    #[error("lifted polynomial {poly} is not of the form y - E(x)")]
    MalformedDefinition { poly: usize },
    #[error("no applicable lifting")]
    NoApplicableLifting,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Saturation(#[from] SaturationError),
}

impl LiftError {
    /// Short machine-readable name of the failed condition.
    pub fn condition(&self) -> &'static str {
        match self {
            LiftError::NotSquare { .. } => "square_system",
            LiftError::TooFewVariables { .. } => "dimension",
            LiftError::NotBivariate { .. } => "bivariate",
            LiftError::KOutOfRange { .. } => "k_in_range",
            LiftError::DivisibleByLastVariable { .. } => "not_divisible_by_last_variable",
            LiftError::FacialNotSaturated { .. } => "facial_saturated",
            LiftError::ProjectedVolumeZero => "mv_n_positive",
            LiftError::AlphaLength { .. } | LiftError::BadOrder { .. } => "alpha_shape",
            LiftError::AlphaZero { .. } => "alpha_nonzero",
            LiftError::AlphaNotRoot { .. } => "alpha_facial_root",
            LiftError::NoRationalRoot { .. } => "alpha_representable",
            LiftError::IndexOutOfRange { .. } | LiftError::SameIndex => "pair_indices",
            LiftError::NoDependency { .. } => "facial_dependency",
            LiftError::FacialMixedVolumeZero { .. } => "facial_mv_positive",
            LiftError::FacialOnly { .. } => "not_facial_only",
            LiftError::CoprimeFacialParts => "gcd_degree_positive",
            LiftError::MissingConstantTerm { .. } => "constant_terms",
            LiftError::BadMonomial => "monomial_exponent",
            LiftError::VacuousSubstitution => "monomial_occurs",
            LiftError::MalformedDefinition { .. } => "definition_form",
            LiftError::NoApplicableLifting => "applicable_lifting",
            LiftError::Algebra(_) => "algebra",
            LiftError::Polytope(_) => "polytope",
            LiftError::Saturation(_) => "saturation",
        }
    }
}

#[derive(Debug, Clone)]
pub struct LiftResult {
    /// `d + k` polynomials in `d + k` variables; the last `k` define the `y_l`.
    pub system: PolySystem,
    pub strategy: Strategy,
    /// Facial direction in the coordinates of the input system.
    pub direction: Option<Direction>,
    pub substitution: Substitution,
    pub mv_before: u128,
    pub mv_after: u128,
    /// Monomial change taking the input system to `normalized`.
    pub transform: MonomialChange,
    pub normalized: PolySystem,
    pub diagnostics: Vec<String>,
}

impl LiftResult {
    pub fn original_nvars(&self) -> usize {
        self.normalized.nvars()
    }

    pub fn new_variables(&self) -> usize {
        self.system.nvars() - self.normalized.nvars()
    }

    pub fn mv_drop(&self) -> u128 {
        self.mv_before - self.mv_after
    }

    pub fn provenance(&self) -> serde_json::Value {
        let mut v = json!({
            "strategy": self.strategy.name(),
            "u": self.direction.as_ref().map(|d| d.as_slice().to_vec()),
            "mv_before": self.mv_before as u64,
            "mv_after": self.mv_after as u64,
            "transform": self.transform,
            "original_vars": self.normalized.nvars(),
        });
        let obj = v.as_object_mut().unwrap();
        match &self.substitution {
            Substitution::Alpha { alpha, order } => {
                obj.insert(
                    "alpha".into(),
                    json!(alpha.iter().map(|a| a.to_plain_string()).collect::<Vec<_>>()),
                );
                obj.insert("order".into(), json!(order));
            }
            Substitution::Lambda { lambda, i1, i2 } => {
                obj.insert("lambda".into(), json!(lambda.to_plain_string()));
                obj.insert("pair".into(), json!([i1, i2]));
            }
            Substitution::Gcd { gcd, m } => {
                let names: Vec<String> = self.normalized.vars().to_vec();
                obj.insert("gcd".into(), json!(crate::sysio::format_polynomial(gcd, &names)));
                obj.insert("m".into(), json!(m));
            }
            Substitution::Monomial { exponent } => {
                obj.insert("monomial".into(), json!(exponent));
            }
        }
        if !self.diagnostics.is_empty() {
            obj.insert("diagnostics".into(), json!(self.diagnostics));
        }
        v
    }

    /// The lifted system file with a single-line provenance comment.
    pub fn to_file(&self) -> String {
        let prov = serde_json::to_string(&self.provenance()).expect("serializable");
        format!("# provenance: {prov}\n{}", serialize_system(&self.system))
    }

    /// Extends a torus point of the input system to a point of the lifted
    /// system by evaluating the definitions of the new variables.
    pub fn extend_point(&self, x: &[Complex64]) -> Vec<Complex64> {
        let d = self.original_nvars();
        let mut full = self.transform.push_forward_point_complex(x);
        full.resize(self.system.nvars(), Complex64::new(0.0, 0.0));
        for (l, h) in self.system.polys()[d..].iter().enumerate() {
            // h = y - E(x) and y is still zero here
            full[d + l] = -h.eval_complex(&full);
        }
        full
    }
}

/// Names for `k` new variables, `y1, ..., yk`, avoiding clashes.
pub(crate) fn fresh_names(existing: &[String], k: usize) -> Vec<String> {
    let mut prefix = String::from("y");
    while (1..=k).any(|l| existing.contains(&format!("{prefix}{l}"))) {
        prefix.push('y');
    }
    (1..=k).map(|l| format!("{prefix}{l}")).collect()
}

pub(crate) fn system_mv(sys: &PolySystem) -> u128 {
    mixed_volume(&sys.newton_polytopes()).expect("square system")
}

pub(crate) fn check_square(sys: &PolySystem) -> Result<(), LiftError> {
    if !sys.is_square() {
        return Err(LiftError::NotSquare {
            polys: sys.len(),
            vars: sys.nvars(),
        });
    }
    Ok(())
}

pub(crate) fn normalize(sys: &PolySystem, u: &Direction) -> Result<(PolySystem, MonomialChange), LiftError> {
    Ok(normalize_to_direction(sys, u.as_slice())?)
}

/// Builds the lifted system from the first `d` lifted polynomials and the
/// definitions `y_l = E_l(x)`.
pub(crate) fn assemble(
    normalized: &PolySystem,
    lifted: Vec<LaurentPolynomial>,
    definitions: &[LaurentPolynomial],
) -> Result<PolySystem, LiftError> {
    let d = normalized.nvars();
    let k = definitions.len();
    let n = d + k;
    let mut vars = normalized.vars().to_vec();
    vars.extend(fresh_names(normalized.vars(), k));
    let mut polys = lifted;
    for (l, e) in definitions.iter().enumerate() {
        let y = LaurentPolynomial::variable(n, d + l);
        polys.push(&y - &e.embed(n));
    }
    Ok(PolySystem::new(vars, polys)?)
}

/// Eliminates the new variables of a lifted system through its trailing
/// definitions `y_l - E_l(x)` and returns the system in the first `d`
/// variables.
pub fn resubstitute_system(lifted: &PolySystem, d: usize) -> Result<PolySystem, LiftError> {
    let n = lifted.nvars();
    if d > n || lifted.len() != n {
        return Err(LiftError::NotSquare {
            polys: lifted.len(),
            vars: n,
        });
    }
    let mut defs = Vec::with_capacity(n - d);
    for (l, h) in lifted.polys()[d..].iter().enumerate() {
        let mut unit = vec![0; n];
        unit[d + l] = 1;
        let y = LaurentPolynomial::variable(n, d + l);
        let e = &y - h;
        let ok = h.coeff(&unit).is_some_and(|c| *c == GaussianRational::from_integer(1))
            && (d..n).all(|j| !e.occurs(j));
        if !ok {
            return Err(LiftError::MalformedDefinition { poly: d + l });
        }
        defs.push(e);
    }
    let mut polys = Vec::with_capacity(d);
    for f in &lifted.polys()[..d] {
        let mut g = f.clone();
        for (l, e) in defs.iter().enumerate() {
            g = g.substitute(d + l, e)?;
        }
        polys.push(g.truncate_vars(d)?);
    }
    Ok(PolySystem::new(lifted.vars()[..d].to_vec(), polys)?)
}

/// Undoes a lift: the system in the original variables that the lift encodes.
pub fn resubstitute(lift: &LiftResult) -> PolySystem {
    resubstitute_system(&lift.system, lift.original_nvars()).expect("lift has trailing definitions")
}

/// Whether resubstitution reproduces the normalized input exactly.
pub fn roundtrip_holds(lift: &LiftResult) -> bool {
    resubstitute(lift) == lift.normalized
}

/// Normalized form of `original` under the transform recorded in a provenance
/// block.
pub fn normalized_from_provenance(
    original: &PolySystem,
    provenance: &serde_json::Value,
) -> Result<PolySystem, LiftError> {
    let t: MonomialChange = serde_json::from_value(provenance["transform"].clone())
        .map_err(|_| LiftError::Algebra(AlgebraError::NotUnimodular))?;
    Ok(apply_monomial_change(original, &t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_names_avoid_clashes() {
        let v = vec!["x".to_string(), "y1".to_string()];
        assert_eq!(fresh_names(&v, 2), vec!["yy1", "yy2"]);
        assert_eq!(fresh_names(&["x".to_string()], 1), vec!["y1"]);
    }
}
