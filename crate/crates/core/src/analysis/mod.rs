//! Diagnosis of a square system: its BKK bound, the directions whose facial
//! systems have torus solutions, which liftings apply there, and the
//! touching criterion for a strict mixed-volume decrease.

mod facial;
mod touch;

pub use facial::{decide, Decision, Solvability};
pub use touch::{strict_decrease, touch_set, TouchError, TouchSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{GaussianRational, PolySystem};
use crate::lifting::{
    facial_root_candidates, find_dependency, lift_bivariate_gcd, lift_division, lift_linear_dependent,
    LiftError, LiftResult, Strategy,
};
use crate::polytope::{enumerate_fan_directions, mixed_volume, Direction, PolytopeError};
use crate::sysio::json::gaussian_opt_vec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("system is not square: {polys} polynomials in {vars} variables")]
    NotSquare { polys: usize, vars: usize },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectionReport {
    pub u: Vec<i64>,
    pub status: Solvability,
    #[serde(with = "gaussian_opt_vec", skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<GaussianRational>>,
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategyReport {
    pub u: Vec<i64>,
    pub strategy: Strategy,
    pub applicable: bool,
    /// Name of the first failed precondition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mv_after: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub bkk_bound: u128,
    pub degenerate_directions: Vec<DirectionReport>,
    pub strategies: Vec<StrategyReport>,
}

impl AnalysisReport {
    pub fn solvable_directions(&self) -> impl Iterator<Item = &DirectionReport> {
        self.degenerate_directions
            .iter()
            .filter(|r| r.status == Solvability::Solvable)
    }

    /// Whether every facial system was shown to have no torus solution, so
    /// that the BKK bound is attained.
    pub fn bound_attained(&self) -> bool {
        self.degenerate_directions
            .iter()
            .all(|r| r.status == Solvability::NoSolution)
    }
}

fn check_square(sys: &PolySystem) -> Result<(), AnalysisError> {
    if !sys.is_square() {
        return Err(AnalysisError::NotSquare {
            polys: sys.len(),
            vars: sys.nvars(),
        });
    }
    Ok(())
}

pub fn bkk_bound(sys: &PolySystem) -> Result<u128, AnalysisError> {
    check_square(sys)?;
    Ok(mixed_volume(&sys.newton_polytopes())?)
}

pub fn facial_system(sys: &PolySystem, u: &Direction) -> PolySystem {
    sys.facial_system(u.as_slice())
}

pub fn analyze_direction(sys: &PolySystem, u: &Direction) -> DirectionReport {
    let facial = facial_system(sys, u);
    let out = decide(facial.polys(), sys.nvars());
    DirectionReport {
        u: u.as_slice().to_vec(),
        status: out.status,
        witness: out.witness,
        certificate: out.certificate,
    }
}

fn report(u: &Direction, strategy: Strategy, r: Result<LiftResult, LiftError>) -> StrategyReport {
    let u = u.as_slice().to_vec();
    match r {
        Ok(lift) => StrategyReport {
            u,
            strategy,
            applicable: lift.mv_after < lift.mv_before,
            condition: (lift.mv_after >= lift.mv_before).then(|| "mv_decrease".to_string()),
            detail: format!("mixed volume {} -> {}", lift.mv_before, lift.mv_after),
            mv_after: Some(lift.mv_after),
        },
        Err(e) => StrategyReport {
            u,
            strategy,
            applicable: false,
            condition: Some(e.condition().to_string()),
            detail: e.to_string(),
            mv_after: None,
        },
    }
}

/// Applicability of the direction-based liftings at `u`.
pub fn strategy_reports(sys: &PolySystem, u: &Direction) -> Vec<StrategyReport> {
    let d = sys.nvars();
    let mut out = Vec::new();
    if d == 2 {
        out.push(report(u, Strategy::Bigcd, lift_bivariate_gcd(sys, u)));
    }
    match find_dependency(sys, u) {
        Ok(pairs) if pairs.is_empty() => out.push(report(
            u,
            Strategy::Lindep,
            Err(LiftError::NoDependency { i1: 0, i2: 1 }),
        )),
        Ok(pairs) => {
            for (i1, i2, _) in pairs {
                out.push(report(u, Strategy::Lindep, lift_linear_dependent(sys, u, i1, i2)));
            }
        }
        Err(e) => out.push(report(u, Strategy::Lindep, Err(e))),
    }
    for k in 1..=(d - 1).min(2) {
        let attempt = crate::algebra::normalize_to_direction(sys, u.as_slice())
            .map_err(LiftError::from)
            .and_then(|(n, _)| facial_root_candidates(&n, k))
            .and_then(|cands| {
                let mut last = Err(LiftError::NoRationalRoot { irrational: false });
                for alpha in cands {
                    last = lift_division(sys, u, &alpha, k);
                    if last.is_ok() {
                        break;
                    }
                }
                last
            });
        out.push(report(u, Strategy::Division, attempt));
    }
    out
}

/// Scans every cone of the common normal fan, decides torus solvability of
/// the facial system where possible, and reports which liftings apply at the
/// directions not shown to be unsolvable.
pub fn find_degenerate_directions(sys: &PolySystem) -> Result<AnalysisReport, AnalysisError> {
    let bkk_bound = bkk_bound(sys)?;
    let directions = enumerate_fan_directions(&sys.newton_polytopes())?;
    let per: Vec<(DirectionReport, Vec<StrategyReport>)> = directions
        .par_iter()
        .map(|u| {
            let r = analyze_direction(sys, u);
            let s = if r.status == Solvability::NoSolution || sys.nvars() < 2 {
                Vec::new()
            } else {
                strategy_reports(sys, u)
            };
            (r, s)
        })
        .collect();
    let (degenerate_directions, strategies): (Vec<_>, Vec<_>) = per.into_iter().unzip();
    Ok(AnalysisReport {
        bkk_bound,
        degenerate_directions,
        strategies: strategies.into_iter().flatten().collect(),
    })
}
