use super::{assemble, check_square, normalize, system_mv, LiftError, LiftResult, Strategy, Substitution};
use crate::algebra::{GaussianRational, LaurentPolynomial, PolySystem};
use crate::polytope::{mixed_volume, Direction, LatticePolytope};

fn facial_parts(normalized: &PolySystem) -> Vec<LaurentPolynomial> {
    let d = normalized.nvars();
    let down = Direction::neg_unit(d, d - 1);
    normalized
        .polys()
        .iter()
        .map(|f| f.facial_restriction(down.as_slice()))
        .collect()
}

/// Ordered pairs `(i1, i2, lambda)` with `f_{i2}^u = lambda f_{i1}^u`.
pub fn find_dependency(
    sys: &PolySystem,
    u: &Direction,
) -> Result<Vec<(usize, usize, GaussianRational)>, LiftError> {
    check_square(sys)?;
    let (normalized, _) = normalize(sys, u)?;
    let facial = facial_parts(&normalized);
    let mut out = Vec::new();
    for i1 in 0..facial.len() {
        for i2 in 0..facial.len() {
            if i1 != i2 {
                if let Some(lambda) = facial[i2].ratio_to(&facial[i1]) {
                    out.push((i1, i2, lambda));
                }
            }
        }
    }
    Ok(out)
}

/// Lift through a linear dependency `f_{i2}^u = lambda f_{i1}^u` of two
/// facial polynomials, with the single new variable `y = f_{i1}^u`.
pub fn lift_linear_dependent(
    sys: &PolySystem,
    u: &Direction,
    i1: usize,
    i2: usize,
) -> Result<LiftResult, LiftError> {
    check_square(sys)?;
    let d = sys.nvars();
    if d < 2 {
        return Err(LiftError::TooFewVariables { d, min: 2 });
    }
    for index in [i1, i2] {
        if index >= sys.len() {
            return Err(LiftError::IndexOutOfRange { index, len: sys.len() });
        }
    }
    if i1 == i2 {
        return Err(LiftError::SameIndex);
    }
    let (normalized, transform) = normalize(sys, u)?;
    let facial = facial_parts(&normalized);
    let lambda = facial[i2]
        .ratio_to(&facial[i1])
        .ok_or(LiftError::NoDependency { i1, i2 })?;

    let keep: Vec<usize> = (0..d - 1).collect();
    let tuple: Vec<LatticePolytope> = facial
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i1)
        .map(|(_, f)| Ok(f.newton_polytope()?.project(&keep)))
        .collect::<Result<_, LiftError>>()?;
    if mixed_volume(&tuple)? == 0 {
        return Err(LiftError::FacialMixedVolumeZero { i1 });
    }
    let f1 = &normalized.polys()[i1];
    if *f1 == facial[i1] {
        return Err(LiftError::FacialOnly { poly: i1 });
    }

    let n = d + 1;
    let y = LaurentPolynomial::variable(n, d);
    let lifted: Vec<LaurentPolynomial> = normalized
        .polys()
        .iter()
        .zip(&facial)
        .enumerate()
        .map(|(j, (f, fu))| {
            if j == i1 {
                &y + &(f - fu).embed(n)
            } else if j == i2 {
                &y.scale(&lambda) + &(f - fu).embed(n)
            } else {
                f.embed(n)
            }
        })
        .collect();
    let system = assemble(&normalized, lifted, std::slice::from_ref(&facial[i1]))?;
    let mv_before = system_mv(&normalized);
    let mv_after = system_mv(&system);
    let mut diagnostics = Vec::new();
    if mv_after >= mv_before {
        diagnostics.push(format!("mixed volume did not decrease ({mv_before} -> {mv_after})"));
    }
    Ok(LiftResult {
        system,
        strategy: Strategy::Lindep,
        direction: Some(u.clone()),
        substitution: Substitution::Lambda { lambda, i1, i2 },
        mv_before,
        mv_after,
        transform,
        normalized,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::roundtrip_holds;
    use crate::sysio::parse_system;

    fn sec4() -> PolySystem {
        parse_system(
            "vars: x1 x2 x3\n\
             1 + x1^2*x2^2 + x1^2*x2^4 + x3^2 + x1*x3 + x2*x3\n\
             1 + x1^2*x2^2 + x1^2*x2^4 + 2*x3^2 + x1*x3 + x2*x3\n\
             2 + x1*x2 + x1^2*x2^2 + x1^2*x2^4 + x3^2 + x1*x3 + x2*x3",
        )
        .unwrap()
    }

    #[test]
    fn three_variable_example() {
        let u = Direction::new(vec![0, 0, -1]).unwrap();
        let deps = find_dependency(&sec4(), &u).unwrap();
        assert!(deps.iter().any(|&(a, b, _)| (a, b) == (0, 1)));
        let lift = lift_linear_dependent(&sec4(), &u, 0, 1).unwrap();
        assert_eq!(lift.mv_before, 16);
        assert_eq!(lift.mv_after, 12);
        assert_eq!(lift.substitution, Substitution::Lambda {
            lambda: GaussianRational::from_integer(1),
            i1: 0,
            i2: 1
        });
        assert!(roundtrip_holds(&lift));
    }

    #[test]
    fn conditions_are_checked() {
        let u = Direction::new(vec![0, 0, -1]).unwrap();
        assert_eq!(
            lift_linear_dependent(&sec4(), &u, 0, 2).unwrap_err(),
            LiftError::NoDependency { i1: 0, i2: 2 }
        );
        assert_eq!(lift_linear_dependent(&sec4(), &u, 1, 1).unwrap_err(), LiftError::SameIndex);
        let s = parse_system("vars: x y\n1 + x\n2 + 2*x + y").unwrap();
        let u = Direction::new(vec![0, -1]).unwrap();
        assert_eq!(
            lift_linear_dependent(&s, &u, 0, 1).unwrap_err(),
            LiftError::FacialOnly { poly: 0 }
        );
    }
}
