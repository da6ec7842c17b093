use super::{assemble, check_square, system_mv, LiftError, LiftResult, Strategy, Substitution};
use crate::algebra::{GaussianRational, LaurentPolynomial, MonomialChange, PolySystem};

/// Replaces `x^a` by a new variable `y` wherever it divides a term, as often
/// as possible, and appends `y - x^a`. This never lowers the mixed volume.
pub fn lift_monomial(sys: &PolySystem, a: &[i64]) -> Result<LiftResult, LiftError> {
    check_square(sys)?;
    let d = sys.nvars();
    if a.len() != d || a.iter().any(|&x| x < 0) || a.iter().all(|&x| x == 0) {
        return Err(LiftError::BadMonomial);
    }
    let n = d + 1;
    let mut changed = false;
    let lifted: Vec<LaurentPolynomial> = sys
        .polys()
        .iter()
        .map(|f| {
            let terms: Vec<(Vec<i64>, GaussianRational)> = f
                .terms()
                .map(|(e, c)| {
                    let t = e
                        .iter()
                        .zip(a)
                        .filter(|&(_, &ai)| ai > 0)
                        .map(|(&ei, &ai)| if ei < 0 { 0 } else { ei / ai })
                        .min()
                        .unwrap_or(0);
                    if t > 0 {
                        changed = true;
                    }
                    let mut g: Vec<i64> = e.iter().zip(a).map(|(ei, ai)| ei - t * ai).collect();
                    g.push(t);
                    (g, c.clone())
                })
                .collect();
            LaurentPolynomial::from_terms(n, terms)
        })
        .collect();
    if !changed {
        return Err(LiftError::VacuousSubstitution);
    }
    let def = LaurentPolynomial::monomial(a.to_vec(), GaussianRational::from_integer(1));
    let system = assemble(sys, lifted, &[def])?;
    let mv = system_mv(sys);
    let mv_after = system_mv(&system);
    let mut diagnostics = Vec::new();
    if mv_after != mv {
        diagnostics.push(format!("mixed volume changed ({mv} -> {mv_after})"));
    }
    Ok(LiftResult {
        system,
        strategy: Strategy::Monomial,
        direction: None,
        substitution: Substitution::Monomial { exponent: a.to_vec() },
        mv_before: mv,
        mv_after,
        transform: MonomialChange::identity(d, sys.len()),
        normalized: sys.clone(),
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::roundtrip_holds;
    use crate::sysio::parse_system;

    #[test]
    fn replaces_maximal_powers() {
        let s = parse_system("vars: x y\nx^2*y^2 + x*y + x + 1\nx^3*y + y + 2").unwrap();
        let lift = lift_monomial(&s, &[1, 1]).unwrap();
        assert_eq!(lift.system.nvars(), 3);
        let f0 = &lift.system.polys()[0];
        assert!(f0.coeff(&[0, 0, 2]).is_some());
        assert!(f0.coeff(&[0, 0, 1]).is_some());
        assert!(lift.system.polys()[1].coeff(&[2, 0, 1]).is_some());
        assert!(roundtrip_holds(&lift));
        assert_eq!(lift.mv_before, lift.mv_after);
    }

    #[test]
    fn rejects_bad_exponents() {
        let s = parse_system("vars: x y\nx + y + 1\nx - y").unwrap();
        assert_eq!(lift_monomial(&s, &[0, 0]).unwrap_err(), LiftError::BadMonomial);
        assert_eq!(lift_monomial(&s, &[-1, 0]).unwrap_err(), LiftError::BadMonomial);
        assert_eq!(lift_monomial(&s, &[2, 0]).unwrap_err(), LiftError::VacuousSubstitution);
    }
}
