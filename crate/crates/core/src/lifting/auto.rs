use rayon::prelude::*;

use super::{
    check_square, facial_root_candidates, find_dependency, lift_bivariate_gcd, lift_division,
    lift_linear_dependent, normalize, LiftError, LiftResult, Strategy,
};
use crate::algebra::PolySystem;
use crate::analysis::{decide, Solvability};
use crate::polytope::{enumerate_fan_directions, Direction};

#[derive(Debug, Clone)]
pub struct AutoOptions {
    /// Directions to try; all cones of the common normal fan by default.
    pub directions: Option<Vec<Direction>>,
    pub strategies: Vec<Strategy>,
    /// Largest number of new variables tried by the division lift.
    pub max_k: usize,
    /// Also try directions whose facial system provably has no torus
    /// solution.
    pub include_unsolvable: bool,
}

impl Default for AutoOptions {
    fn default() -> Self {
        Self {
            directions: None,
            strategies: vec![Strategy::Bigcd, Strategy::Lindep, Strategy::Division],
            max_k: 2,
            include_unsolvable: false,
        }
    }
}

pub fn auto_lift(sys: &PolySystem) -> Result<LiftResult, LiftError> {
    auto_lift_with(sys, &AutoOptions::default())
}

fn candidates_for(sys: &PolySystem, u: &Direction, opts: &AutoOptions) -> Vec<LiftResult> {
    let d = sys.nvars();
    let mut out = Vec::new();
    for s in &opts.strategies {
        match s {
            Strategy::Bigcd if d == 2 => out.extend(lift_bivariate_gcd(sys, u).ok()),
            Strategy::Lindep => {
                for (i1, i2, _) in find_dependency(sys, u).unwrap_or_default() {
                    out.extend(lift_linear_dependent(sys, u, i1, i2).ok());
                }
            }
            Strategy::Division => {
                let Ok((normalized, _)) = normalize(sys, u) else {
                    continue;
                };
                for k in 1..=opts.max_k.min(d - 1) {
                    for alpha in facial_root_candidates(&normalized, k).unwrap_or_default() {
                        out.extend(lift_division(sys, u, &alpha, k).ok());
                    }
                }
            }
            _ => {}
        }
    }
    out
}

/// Tries every requested strategy in every direction whose facial system is
/// not known to be unsolvable and returns the lift
/// with the largest mixed-volume decrease; ties go to the earliest direction,
/// then the earliest strategy in `opts.strategies`.
pub fn auto_lift_with(sys: &PolySystem, opts: &AutoOptions) -> Result<LiftResult, LiftError> {
    check_square(sys)?;
    if sys.nvars() < 2 {
        return Err(LiftError::TooFewVariables { d: sys.nvars(), min: 2 });
    }
    let directions = match &opts.directions {
        Some(ds) => ds.clone(),
        None => enumerate_fan_directions(&sys.newton_polytopes())?,
    };
    let per_direction: Vec<Vec<LiftResult>> = directions
        .par_iter()
        .map(|u| {
            let unsolvable = !opts.include_unsolvable
                && decide(sys.facial_system(u.as_slice()).polys(), sys.nvars()).status
                    == Solvability::NoSolution;
            if unsolvable {
                Vec::new()
            } else {
                candidates_for(sys, u, opts)
            }
        })
        .collect();
    let mut best: Option<LiftResult> = None;
    for lift in per_direction.into_iter().flatten() {
        if lift.mv_after >= lift.mv_before {
            continue;
        }
        if best.as_ref().is_none_or(|b| lift.mv_drop() > b.mv_drop()) {
            best = Some(lift);
        }
    }
    best.ok_or(LiftError::NoApplicableLifting)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::roundtrip_holds;
    use crate::sysio::parse_system;

    #[test]
    fn example_one_is_lifted() {
        let s = parse_system("vars: x1 x2\n(1 - x1^2)*x2 + 2\n(1 - x1)^2*x2 + 3").unwrap();
        let lift = auto_lift(&s).unwrap();
        assert_eq!((lift.mv_before, lift.mv_after), (2, 1));
        assert_eq!(lift.strategy, Strategy::Bigcd);
        assert!(roundtrip_holds(&lift));
    }

    #[test]
    fn unsolvable_directions_are_skipped_by_default() {
        let s = parse_system(
            "vars: x1 x2 x3\n\
             1 + x1^2*x2^2 + x1^2*x2^4 + x3^2 + x1*x3 + x2*x3\n\
             1 + x1^2*x2^2 + x1^2*x2^4 + 2*x3^2 + x1*x3 + x2*x3\n\
             2 + x1*x2 + x1^2*x2^2 + x1^2*x2^4 + x3^2 + x1*x3 + x2*x3",
        )
        .unwrap();
        let opts = AutoOptions {
            strategies: vec![Strategy::Lindep],
            ..AutoOptions::default()
        };
        let lift = auto_lift_with(&s, &opts).unwrap();
        assert_eq!(lift.mv_after, 12);
        assert_eq!(lift.direction.unwrap().as_slice(), &[0, 0, -1]);
        // the facial system at (1, 0, 1) has no torus solution, yet the
        // dependency there gives a larger decrease
        let all = AutoOptions {
            include_unsolvable: true,
            ..opts
        };
        let lift = auto_lift_with(&s, &all).unwrap();
        assert_eq!(lift.mv_after, 10);
        assert_eq!(lift.direction.unwrap().as_slice(), &[1, 0, 1]);
    }

    #[test]
    fn generic_system_has_no_lift() {
        let s = parse_system("vars: x y\n1 + 2*x + 3*y\n5 - x + 7*y").unwrap();
        assert_eq!(auto_lift(&s).unwrap_err(), LiftError::NoApplicableLifting);
    }
}
