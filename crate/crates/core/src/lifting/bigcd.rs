use num_traits::Zero;

use super::{assemble, check_square, normalize, system_mv, LiftError, LiftResult, Strategy, Substitution};
use crate::algebra::{LaurentPolynomial, PolySystem};
use crate::polytope::Direction;

/// Lift of a system in two variables through the gcd `g` of its two facial
/// polynomials: `f_j = y q_j + (f_j - f_j^u)` with `f_j^u = g q_j` and
/// `y = g`. The mixed volume drops by at least `deg g`.
pub fn lift_bivariate_gcd(sys: &PolySystem, u: &Direction) -> Result<LiftResult, LiftError> {
    check_square(sys)?;
    if sys.nvars() != 2 {
        return Err(LiftError::NotBivariate { d: sys.nvars() });
    }
    let (normalized, transform) = normalize(sys, u)?;
    let down = Direction::neg_unit(2, 1);
    let facial: Vec<LaurentPolynomial> = normalized
        .polys()
        .iter()
        .map(|f| f.facial_restriction(down.as_slice()))
        .collect();
    for (j, fu) in facial.iter().enumerate() {
        if fu.coeff(&[0, 0]).is_none_or(|c| c.is_zero()) {
            return Err(LiftError::MissingConstantTerm { poly: j });
        }
    }
    let a = facial[0].to_univariate(0)?;
    let b = facial[1].to_univariate(0)?;
    let g = a.gcd(&b).monic();
    let m = g.degree().unwrap_or(0);
    if m == 0 {
        return Err(LiftError::CoprimeFacialParts);
    }
    let gpoly = LaurentPolynomial::from_univariate(2, 0, &g);
    let y = LaurentPolynomial::variable(3, 2);
    let lifted: Vec<LaurentPolynomial> = [(&a, 0), (&b, 1)]
        .iter()
        .map(|&(p, j)| {
            let q = p.exact_div(&g).expect("gcd divides");
            let q = LaurentPolynomial::from_univariate(3, 0, &q);
            let rest = (&normalized.polys()[j] - &facial[j]).embed(3);
            &(&y * &q) + &rest
        })
        .collect();
    let system = assemble(&normalized, lifted, std::slice::from_ref(&gpoly))?;
    let mv_before = system_mv(&normalized);
    let mv_after = system_mv(&system);
    let mut diagnostics = Vec::new();
    if mv_after + (m as u128) > mv_before {
        diagnostics.push(format!(
            "mixed volume dropped by less than the gcd degree {m} ({mv_before} -> {mv_after})"
        ));
    }
    Ok(LiftResult {
        system,
        strategy: Strategy::Bigcd,
        direction: Some(u.clone()),
        substitution: Substitution::Gcd { gcd: gpoly, m },
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

    #[test]
    fn example_one_gcd() {
        let s = parse_system("vars: x1 x2\n(1 - x1^2)*x2 + 2\n(1 - x1)^2*x2 + 3").unwrap();
        let u = Direction::new(vec![0, 1]).unwrap();
        let lift = lift_bivariate_gcd(&s, &u).unwrap();
        let Substitution::Gcd { gcd, m } = &lift.substitution else {
            panic!()
        };
        assert_eq!(*m, 1);
        let expected = &LaurentPolynomial::variable(2, 0) - &LaurentPolynomial::constant(2, 1.into());
        assert_eq!(*gcd, expected);
        assert_eq!((lift.mv_before, lift.mv_after), (2, 1));
        assert!(lift.diagnostics.is_empty());
        assert!(roundtrip_holds(&lift));
    }

    #[test]
    fn coprime_facial_parts() {
        let s = parse_system("vars: x1 x2\n(1 - x1)*x2 + 2\n(1 + x1)*x2 + 3").unwrap();
        let u = Direction::new(vec![0, 1]).unwrap();
        assert_eq!(lift_bivariate_gcd(&s, &u).unwrap_err(), LiftError::CoprimeFacialParts);
    }

    #[test]
    fn quadratic_gcd_drops_by_two() {
        let s = parse_system(
            "vars: x1 x2\n(x1^2 - 2)*(x1 + 3)*x2 + 1 + x1^4\n(x1^2 - 2)*(x1 - 5)*x2 + 2 - x1^4",
        )
        .unwrap();
        let u = Direction::new(vec![0, 1]).unwrap();
        let lift = lift_bivariate_gcd(&s, &u).unwrap();
        assert!(matches!(lift.substitution, Substitution::Gcd { m: 2, .. }));
        assert!(lift.mv_drop() >= 2);
        assert!(roundtrip_holds(&lift));
    }
}
