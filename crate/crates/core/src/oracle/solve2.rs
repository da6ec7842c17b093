use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::resultant::{coefficients_in, sylvester_resultant};
use super::roots::aberth;
use super::OracleError;
use crate::algebra::{LaurentPolynomial, PolySystem};

pub const DEFAULT_TOL: f64 = 1e-10;
const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxSolution {
    pub point: Vec<Complex64>,
    /// Largest relative backward error over the equations.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionCount {
    pub count: usize,
    pub solutions: Vec<ApproxSolution>,
    /// The count equals the number of distinct nonzero roots of the exact
    /// eliminant, so every projection root produced exactly one solution.
    pub exact: bool,
}

/// `|f(z)| / sum |c_a| |z^a|`.
pub fn relative_residual(f: &LaurentPolynomial, z: &[Complex64]) -> f64 {
    let mag = f.magnitude_at(z);
    if mag == 0.0 {
        0.0
    } else {
        f.eval_complex(z).norm() / mag
    }
}

pub fn count_torus_solutions_2d(sys: &PolySystem, tol: f64) -> Result<SolutionCount, OracleError> {
    count_torus_solutions_2d_seeded(sys, tol, DEFAULT_SEED)
}

/// Counts the distinct solutions in `(C*)^2` of a square bivariate system.
///
/// The first variable's candidates are the nonzero roots of the squarefree
/// part of the exact resultant eliminating the second variable. For each, the
/// roots of both specialized polynomials in the second variable are polished
/// by Newton's method on the full system and kept when the residual is below
/// `tol`. Solutions agreeing to `sqrt(tol)` in each coordinate (relative) are
/// merged, and a coordinate below `sqrt(tol)` in modulus counts as zero.
pub fn count_torus_solutions_2d_seeded(
    sys: &PolySystem,
    tol: f64,
    seed: u64,
) -> Result<SolutionCount, OracleError> {
    if sys.nvars() != 2 {
        return Err(OracleError::NotBivariate { nvars: sys.nvars() });
    }
    if sys.len() != 2 {
        return Err(OracleError::NotSquare {
            polys: sys.len(),
            vars: 2,
        });
    }
    let (f, _) = sys.polys()[0].strip_monomial_factor();
    let (g, _) = sys.polys()[1].strip_monomial_factor();
    let r1 = sylvester_resultant(&f, &g, 1)?;
    let r0 = sylvester_resultant(&f, &g, 0)?;
    if r1.is_zero() || r0.is_zero() {
        return Err(OracleError::ResultantVanishes);
    }
    let eliminant = r1.strip_zero_roots().squarefree_part();
    let distinct = eliminant.degree().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = aberth(&eliminant.to_complex(), tol, &mut rng)?;

    let df = [f.partial_derivative(0), f.partial_derivative(1)];
    let dg = [g.partial_derivative(0), g.partial_derivative(1)];
    let cf = coefficients_in(&f, 1)?;
    let cg = coefficients_in(&g, 1)?;
    let merge = tol.sqrt();
    let mut solutions: Vec<ApproxSolution> = Vec::new();
    for &a in &xs {
        let mut candidates = Vec::new();
        for coeffs in [&cf, &cg] {
            let spec = specialize(coeffs, a);
            if spec.len() > 1 {
                candidates.extend(aberth(&spec, tol, &mut rng)?);
            }
        }
        for b in candidates {
            let Some(z) = polish(&f, &g, &df, &dg, [a, b]) else {
                continue;
            };
            let moved = ((z[0] - a).norm() + (z[1] - b).norm()) / (1.0 + a.norm() + b.norm());
            if moved > 1e-3 {
                continue;
            }
            if z[0].norm() < merge || z[1].norm() < merge {
                continue;
            }
            let point = vec![z[0], z[1]];
            let residual = sys
                .polys()
                .iter()
                .map(|p| relative_residual(p, &point))
                .fold(0.0, f64::max);
            if residual >= tol {
                continue;
            }
            let dup = solutions.iter().any(|s| {
                (0..2).all(|i| (s.point[i] - z[i]).norm() <= merge * (1.0 + z[i].norm()))
            });
            if !dup {
                solutions.push(ApproxSolution { point, residual });
            }
        }
    }
    solutions.sort_by(|p, q| {
        let key = |s: &ApproxSolution| (s.point[0].re, s.point[0].im, s.point[1].re, s.point[1].im);
        key(p).partial_cmp(&key(q)).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(SolutionCount {
        count: solutions.len(),
        exact: solutions.len() == distinct,
        solutions,
    })
}

/// Coefficients in the second variable after setting the first to `a`,
/// with numerically vanishing leading terms removed.
fn specialize(coeffs: &[crate::algebra::UniPoly], a: Complex64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = coeffs
        .iter()
        .map(|p| {
            p.to_complex()
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, c| acc * a + c)
        })
        .collect();
    let scale = out.iter().map(|c| c.norm()).fold(0.0, f64::max);
    while out.last().is_some_and(|c| c.norm() <= 1e-12 * scale) {
        out.pop();
    }
    out
}

fn polish(
    f: &LaurentPolynomial,
    g: &LaurentPolynomial,
    df: &[LaurentPolynomial; 2],
    dg: &[LaurentPolynomial; 2],
    mut z: [Complex64; 2],
) -> Option<[Complex64; 2]> {
    for _ in 0..30 {
        let fv = f.eval_complex(&z);
        let gv = g.eval_complex(&z);
        let j = [
            [df[0].eval_complex(&z), df[1].eval_complex(&z)],
            [dg[0].eval_complex(&z), dg[1].eval_complex(&z)],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.norm() == 0.0 || !det.re.is_finite() {
            return None;
        }
        let dx = (fv * j[1][1] - gv * j[0][1]) / det;
        let dy = (gv * j[0][0] - fv * j[1][0]) / det;
        z[0] -= dx;
        z[1] -= dy;
        if !(z[0].re.is_finite() && z[0].im.is_finite() && z[1].re.is_finite() && z[1].im.is_finite()) {
            return None;
        }
        let size = z[0].norm() + z[1].norm();
        if dx.norm() + dy.norm() <= 4.0 * f64::EPSILON * size {
            break;
        }
    }
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sysio::parse_system;

    #[test]
    fn example_one_has_a_single_torus_solution() {
        let s = parse_system("vars: x1 x2\n(1 - x1^2)*x2 + 2\n(1 - x1)^2*x2 + 3").unwrap();
        let c = count_torus_solutions_2d(&s, DEFAULT_TOL).unwrap();
        assert_eq!(c.count, 1);
        let p = &c.solutions[0].point;
        assert!((p[0] - Complex64::new(-0.2, 0.0)).norm() < 1e-9);
        assert!((p[1] - Complex64::new(-25.0 / 12.0, 0.0)).norm() < 1e-9);
        assert!(c.solutions[0].residual < DEFAULT_TOL);
    }

    #[test]
    fn linear_pair() {
        let s = parse_system("vars: x y\n2x + 3y - 1\nx - y + 4").unwrap();
        assert_eq!(count_torus_solutions_2d(&s, DEFAULT_TOL).unwrap().count, 1);
    }

    #[test]
    fn common_factor_is_rejected() {
        let s = parse_system("vars: x y\n(x + y + 1)*(x - 2)\n(x + y + 1)*(y + 3)").unwrap();
        assert!(matches!(
            count_torus_solutions_2d(&s, DEFAULT_TOL),
            Err(OracleError::ResultantVanishes)
        ));
    }

    #[test]
    fn shared_first_coordinate() {
        // (2, 1) and (2, -1)
        let s = parse_system("vars: x y\nx + y^2 - 3\nx + 3y^2 - 5").unwrap();
        let c = count_torus_solutions_2d(&s, DEFAULT_TOL).unwrap();
        assert!(c.solutions.iter().all(|s| s.residual < DEFAULT_TOL));
        assert_eq!(c.count, 2);
        assert!(!c.exact);
    }
}
