use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::OracleError;

pub const MAX_ITERATIONS: usize = 500;
const RESTARTS: usize = 4;

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    let az = z.norm();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        mag = mag * az + a.norm();
    }
    (p, dp, mag)
}

/// Relative backward error `|p(z)| / sum |a_k| |z|^k`.
pub fn backward_error(c: &[Complex64], z: Complex64) -> f64 {
    let (p, _, mag) = horner(c, z);
    if mag == 0.0 {
        0.0
    } else {
        p.norm() / mag
    }
}

/// All complex roots of `sum c_k z^k` (ascending coefficients, nonzero
/// leading coefficient) by simultaneous Aberth iteration.
///
/// Starting points lie on a circle with a random phase; a run that does not
/// converge within the iteration cap is restarted with a fresh phase.
pub fn aberth(c: &[Complex64], tol: f64, rng: &mut ChaCha8Rng) -> Result<Vec<Complex64>, OracleError> {
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    assert!(lead.norm() > 0.0, "leading coefficient must be nonzero");
    let monic: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    if n == 1 {
        return Ok(vec![-monic[0]]);
    }
    let radius = {
        let r = monic[0].norm().powf(1.0 / n as f64);
        if r.is_finite() && r > 0.0 {
            r
        } else {
            1.0
        }
    };
    for _ in 0..RESTARTS {
        let phase: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                let t = phase + std::f64::consts::TAU * k as f64 / n as f64;
                Complex64::from_polar(radius * (1.0 + 0.1 * rng.gen::<f64>()), t)
            })
            .collect();
        let mut done = vec![false; n];
        for _ in 0..MAX_ITERATIONS {
            for k in 0..n {
                if done[k] {
                    continue;
                }
                let (p, dp, mag) = horner(&monic, z[k]);
                if p.norm() <= f64::EPSILON * mag {
                    done[k] = true;
                    continue;
                }
                let w = p / dp;
                let s: Complex64 = (0..n)
                    .filter(|&j| j != k)
                    .map(|j| (z[k] - z[j]).inv())
                    .sum();
                let step = w / (Complex64::new(1.0, 0.0) - w * s);
                if !step.re.is_finite() || !step.im.is_finite() {
                    break;
                }
                z[k] -= step;
                let rel = step.norm() / z[k].norm().max(f64::MIN_POSITIVE);
                if rel < tol && backward_error(&monic, z[k]) < tol {
                    done[k] = true;
                }
            }
            if done.iter().all(|&d| d) {
                return Ok(z);
            }
        }
    }
    Err(OracleError::NonConvergence {
        iterations: MAX_ITERATIONS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn roots_of_unity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let c = vec![-one, zero, zero, zero, zero, one];
        let mut roots = aberth(&c, 1e-12, &mut rng).unwrap();
        roots.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
        for (k, r) in roots.iter().enumerate() {
            let t = std::f64::consts::TAU * (k as f64 - 2.0) / 5.0;
            assert!((r - Complex64::from_polar(1.0, t)).norm() < 1e-10);
        }
    }

    #[test]
    fn spread_out_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // (z - 1e-3)(z - 1)(z - 1e3)
        let c = [-1.0, 1001.001, -1002.001, 1.0].map(|x| Complex64::new(x, 0.0));
        let roots = aberth(&c, 1e-12, &mut rng).unwrap();
        for r in roots {
            assert!(backward_error(&c, r) < 1e-12);
        }
    }
}
