use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AlgebraError, GaussianRational, LaurentPolynomial, UniPoly};
use crate::oracle::aberth;
use crate::sysio::json::gaussian_vec;

/// Gaussian-rational roots of a univariate polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalRoots {
    #[serde(with = "gaussian_vec")]
    pub roots: Vec<GaussianRational>,
    pub multiplicities: Vec<usize>,
    /// Some nonzero root is not a Gaussian rational.
    pub irrational: bool,
}

impl RationalRoots {
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// Nonzero Gaussian-rational roots of `f`, which must involve at most one
/// variable. Negative exponents are allowed; zero roots are ignored.
pub fn find_rational_roots(f: &LaurentPolynomial) -> Result<RationalRoots, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let vars = f.occurring_variables();
    if vars.len() > 1 {
        return Err(AlgebraError::NotUnivariate);
    }
    let Some(&i) = vars.first() else {
        return Ok(RationalRoots {
            roots: Vec::new(),
            multiplicities: Vec::new(),
            irrational: false,
        });
    };
    let (g, _) = f.strip_monomial_factor();
    Ok(rational_roots(&g.to_univariate(i)?))
}

/// Nonzero Gaussian-rational roots of a univariate polynomial.
///
/// Clearing denominators of the squarefree part gives Gaussian-integer
/// coefficients with leading coefficient `a`; every Gaussian-rational root `r`
/// then has `a r` in `Z[i]`. Degrees one and two are solved in closed form.
/// Otherwise approximate roots `z` propose the candidates `round(a z) / a`,
/// each accepted only after exact evaluation. Whatever remains after dividing
/// out accepted roots is re-examined in closed form once it has degree at
/// most two.
pub fn rational_roots(p: &UniPoly) -> RationalRoots {
    let p0 = p.strip_zero_roots();
    let total = p0.degree().unwrap_or(0);
    let mut found: Vec<GaussianRational> = Vec::new();
    if total > 0 {
        let mut rest = p0.squarefree_part();
        if rest.degree().unwrap_or(0) > 2 {
            for r in numeric_candidates(&rest) {
                if !found.contains(&r) && rest.eval(&r).is_zero() {
                    rest = rest.exact_div(&UniPoly::linear(&r)).expect("verified root");
                    found.push(r);
                }
            }
        }
        found.extend(closed_form(&rest));
    }
    found.sort_by(|a, b| a.re().cmp(b.re()).then(a.im().cmp(b.im())));
    let mut multiplicities = Vec::with_capacity(found.len());
    for r in &found {
        let lin = UniPoly::linear(r);
        let mut q = p0.clone();
        let mut m = 0;
        while let Some(next) = q.exact_div(&lin) {
            q = next;
            m += 1;
        }
        multiplicities.push(m);
    }
    let accounted: usize = multiplicities.iter().sum();
    RationalRoots {
        roots: found,
        multiplicities,
        irrational: accounted < total,
    }
}

fn closed_form(p: &UniPoly) -> Vec<GaussianRational> {
    match p.degree() {
        Some(1) => vec![-(&p.coeff(0) / &p.coeff(1))],
        Some(2) => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let four = GaussianRational::from_integer(4);
            let disc = &(&b * &b) - &(&four * &(&a * &c));
            let Some(s) = disc.sqrt() else {
                return Vec::new();
            };
            let two_a = &GaussianRational::from_integer(2) * &a;
            let nb = -&b;
            let mut out = vec![&(&nb + &s) / &two_a, &(&nb - &s) / &two_a];
            out.dedup();
            out
        }
        _ => Vec::new(),
    }
}

/// Gaussian-integer multiple of `p`: every coefficient times the lcm of all
/// denominators.
fn integral_coefficients(p: &UniPoly) -> Vec<(BigInt, BigInt)> {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(&c.denom_lcm()));
    let lr = BigRational::from_integer(l);
    p.coeffs()
        .iter()
        .map(|c| {
            let re = c.re() * &lr;
            let im = c.im() * &lr;
            (re.to_integer(), im.to_integer())
        })
        .collect()
}

fn numeric_candidates(p: &UniPoly) -> Vec<GaussianRational> {
    let coeffs = integral_coefficients(p);
    let (lre, lim) = coeffs.last().cloned().unwrap();
    let lead = GaussianRational::new(BigRational::from_integer(lre), BigRational::from_integer(lim));
    let mut rng = ChaCha8Rng::seed_from_u64(0x2007);
    let Ok(approx) = aberth(&p.to_complex(), 1e-14, &mut rng) else {
        return Vec::new();
    };
    let lead_c = lead.to_complex();
    approx
        .into_iter()
        .filter_map(|z| {
            let w: Complex64 = lead_c * z;
            if !(w.re.is_finite() && w.im.is_finite()) || w.norm() > 1e15 {
                return None;
            }
            let c = GaussianRational::new(
                BigRational::from_integer(BigInt::from(w.re.round() as i64)),
                BigRational::from_integer(BigInt::from(w.im.round() as i64)),
            );
            let r = &c / &lead;
            (!r.is_zero()).then_some(r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sysio::parse_system;

    fn roots_of(text: &str) -> RationalRoots {
        let s = parse_system(&format!("vars: x\n{text}")).unwrap();
        find_rational_roots(&s.polys()[0]).unwrap()
    }

    fn g(re: i64, im: i64) -> GaussianRational {
        &GaussianRational::from_integer(re) + &(&GaussianRational::i() * &GaussianRational::from_integer(im))
    }

    #[test]
    fn plus_minus_one() {
        let r = roots_of("1 - x^2");
        assert_eq!(r.roots, vec![g(-1, 0), g(1, 0)]);
        assert!(!r.irrational);
    }

    #[test]
    fn double_root() {
        let r = roots_of("(1 - x)^2");
        assert_eq!(r.roots, vec![g(1, 0)]);
        assert_eq!(r.multiplicities, vec![2]);
    }

    #[test]
    fn irrational_pair() {
        let r = roots_of("x^2 + 1/2");
        assert!(r.is_empty());
        assert!(r.irrational);
    }

    #[test]
    fn mixed_degree_five() {
        // (x - 2/3)(x + i)(x - 1 + i/2)(x^2 - 3) x^2
        let r = roots_of("(x - 2/3)*(x + i)*(x - 1 + i/2)*(x^2 - 3)*x^2");
        let third = &GaussianRational::from_integer(1) - &(&GaussianRational::i() * &GaussianRational::from_ratio(1, 2));
        assert!(r.roots.contains(&GaussianRational::from_ratio(2, 3)));
        assert!(r.roots.contains(&g(0, -1)));
        assert!(r.roots.contains(&third));
        assert_eq!(r.roots.len(), 3);
        assert!(r.irrational);
    }

    #[test]
    fn constants_and_monomials() {
        let r = roots_of("x^3");
        assert!(r.is_empty() && !r.irrational);
        let r = roots_of("5");
        assert!(r.is_empty() && !r.irrational);
    }
}
