use num_traits::{One, Zero};

use super::roots::rational_roots;
use super::{assemble, check_square, normalize, system_mv, LiftError, LiftResult, Strategy, Substitution};
use crate::algebra::{divide_linear, GaussianRational, LaurentPolynomial, PolySystem, UniPoly};
use crate::oracle::sylvester_resultant;
use crate::polytope::{mixed_volume, Direction};
use crate::saturation::{build_lemma_polytopes, is_saturated, projected_polytopes};

/// Division lifting with `k` new variables through the facial root
/// `(alpha_1, ..., alpha_k, 0, ..., 0)` of the system normalized for `u`.
pub fn lift_division(
    sys: &PolySystem,
    u: &Direction,
    alpha: &[GaussianRational],
    k: usize,
) -> Result<LiftResult, LiftError> {
    lift_division_ordered(sys, u, alpha, k, None)
}

/// As [`lift_division`], dividing by `x_l - alpha_l` in the given order of
/// `l` (default `0, 1, ..., k-1`). Saturation is required in the same order,
/// followed by the remaining variables.
pub fn lift_division_ordered(
    sys: &PolySystem,
    u: &Direction,
    alpha: &[GaussianRational],
    k: usize,
    order: Option<&[usize]>,
) -> Result<LiftResult, LiftError> {
    check_square(sys)?;
    let d = sys.nvars();
    if d < 2 {
        return Err(LiftError::TooFewVariables { d, min: 2 });
    }
    if k == 0 || k >= d {
        return Err(LiftError::KOutOfRange { k, max: d - 1 });
    }
    let order: Vec<usize> = match order {
        Some(o) => {
            let mut s = o.to_vec();
            s.sort_unstable();
            if s != (0..k).collect::<Vec<_>>() {
                return Err(LiftError::BadOrder { k });
            }
            o.to_vec()
        }
        None => (0..k).collect(),
    };
    let (normalized, transform) = normalize(sys, u)?;
    let mut diagnostics = Vec::new();

    for (j, f) in normalized.polys().iter().enumerate() {
        if f.min_degree_in(d - 1).is_some_and(|m| m > 0) {
            return Err(LiftError::DivisibleByLastVariable { poly: j });
        }
    }

    let down = Direction::neg_unit(d, d - 1);
    let facial: Vec<LaurentPolynomial> = normalized
        .polys()
        .iter()
        .map(|f| f.facial_restriction(down.as_slice()))
        .collect();
    let full_order: Vec<usize> = order.iter().copied().chain(k..d).collect();
    for (j, fu) in facial.iter().enumerate() {
        let profile = is_saturated(&fu.newton_polytope()?, &full_order)?;
        if let Some(step) = profile.first_failure() {
            return Err(LiftError::FacialNotSaturated {
                poly: j,
                step,
                var: full_order[step],
            });
        }
        for step in profile.disagreements() {
            diagnostics.push(format!(
                "facial polynomial {j}: face test disagrees with saturation at step {step}"
            ));
        }
    }

    let n = projected_polytopes(&normalized, k)?;
    let projected = mixed_volume(&n)?;
    if projected == 0 {
        return Err(LiftError::ProjectedVolumeZero);
    }
    if order.iter().copied().eq(0..k) {
        // only positivity of the padded volume is needed for the decrease
        let padded = build_lemma_polytopes(&normalized, k)?.padded_mixed_volume();
        if padded != projected {
            diagnostics.push(format!(
                "padded mixed volume {padded} differs from projected mixed volume {projected}"
            ));
        }
    }

    if alpha.len() != k {
        return Err(LiftError::AlphaLength {
            expected: k,
            found: alpha.len(),
        });
    }
    if let Some(index) = alpha.iter().position(|a| a.is_zero()) {
        return Err(LiftError::AlphaZero { index });
    }
    let mut point = alpha.to_vec();
    point.resize(d, GaussianRational::zero());
    for (j, fu) in facial.iter().enumerate() {
        if !fu.eval(&point).is_zero() {
            return Err(LiftError::AlphaNotRoot { poly: j });
        }
    }

    let total = d + k;
    let mut lifted = Vec::with_capacity(d);
    for (f, fu) in normalized.polys().iter().zip(&facial) {
        let mut cur = fu.clone();
        let mut quotients = vec![LaurentPolynomial::zero(d); k];
        for &l in &order {
            let (q, r) = divide_linear(&cur, l, &alpha[l])?;
            quotients[l] = q;
            cur = r;
        }
        let mut g = (&cur + &(f - fu)).embed(total);
        for (l, q) in quotients.iter().enumerate() {
            let y = LaurentPolynomial::variable(total, d + l);
            g = &g + &(&y * &q.embed(total));
        }
        lifted.push(g);
    }
    let definitions: Vec<LaurentPolynomial> = (0..k)
        .map(|l| &LaurentPolynomial::variable(d, l) - &LaurentPolynomial::constant(d, alpha[l].clone()))
        .collect();
    let system = assemble(&normalized, lifted, &definitions)?;
    let mv_before = system_mv(&normalized);
    let mv_after = system_mv(&system);
    if mv_after >= mv_before {
        diagnostics.push(format!("mixed volume did not decrease ({mv_before} -> {mv_after})"));
    } else if mv_before - mv_after != 1 {
        diagnostics.push(format!("mixed volume decreased by {}, not by one", mv_before - mv_after));
    }
    Ok(LiftResult {
        system,
        strategy: Strategy::Division,
        direction: Some(u.clone()),
        substitution: Substitution::Alpha {
            alpha: alpha.to_vec(),
            order,
        },
        mv_before,
        mv_after,
        transform,
        normalized,
        diagnostics,
    })
}

/// Keeps the terms of `f` free of `x_k, ..., x_{d-1}`, i.e. sets those
/// variables to zero.
fn restrict_to_leading(f: &LaurentPolynomial, k: usize) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(
        f.nvars(),
        f.terms()
            .filter(|(e, _)| e[k..].iter().all(|&x| x == 0))
            .map(|(e, c)| (e.clone(), c.clone())),
    )
}

fn gcd_all(polys: &[UniPoly]) -> Option<UniPoly> {
    let mut it = polys.iter().filter(|p| !p.is_zero());
    let first = it.next()?.clone();
    Some(it.fold(first, |g, p| g.gcd(p)))
}

/// Gaussian-rational common roots `(alpha_1, ..., alpha_k)` with nonzero
/// entries of the facial system (direction `-e_d`) of a normalized system,
/// restricted to `x_{k+1} = ... = x_{d-1} = 0`. Supported for `k <= 2`.
pub fn facial_root_candidates(normalized: &PolySystem, k: usize) -> Result<Vec<Vec<GaussianRational>>, LiftError> {
    let d = normalized.nvars();
    if k == 0 || k >= d {
        return Err(LiftError::KOutOfRange { k, max: d - 1 });
    }
    let down = Direction::neg_unit(d, d - 1);
    let restricted: Vec<LaurentPolynomial> = normalized
        .polys()
        .iter()
        .map(|f| restrict_to_leading(&f.facial_restriction(down.as_slice()), k))
        .filter(|f| !f.is_zero())
        .collect();
    let one = GaussianRational::one();
    if restricted.is_empty() {
        return Ok(vec![vec![one; k]]);
    }
    match k {
        1 => {
            let unis: Vec<UniPoly> = restricted
                .iter()
                .map(|f| f.to_univariate(0))
                .collect::<Result<_, _>>()?;
            let g = gcd_all(&unis).expect("nonempty");
            let roots = rational_roots(&g);
            if roots.is_empty() {
                return Err(LiftError::NoRationalRoot {
                    irrational: roots.irrational,
                });
            }
            Ok(roots.roots.into_iter().map(|r| vec![r]).collect())
        }
        2 => {
            let bi: Vec<LaurentPolynomial> = restricted
                .iter()
                .map(|f| f.truncate_vars(2).map(|g| g.strip_monomial_factor().0))
                .collect::<Result<_, _>>()?;
            let mut xs: Vec<GaussianRational> = Vec::new();
            let mut found_pair = false;
            'outer: for a in 0..bi.len() {
                for b in a + 1..bi.len() {
                    let r = sylvester_resultant(&bi[a], &bi[b], 1)?;
                    if !r.is_zero() {
                        xs = rational_roots(&r).roots;
                        found_pair = true;
                        break 'outer;
                    }
                }
            }
            if !found_pair {
                // a single polynomial, or all pairs share a factor
                let f = &bi[0];
                let x1 = f.to_univariate(0).ok();
                xs = match x1 {
                    Some(p) => rational_roots(&p).roots,
                    None => vec![one.clone()],
                };
            }
            let mut out = Vec::new();
            for a in xs {
                let specialized: Vec<UniPoly> = bi
                    .iter()
                    .map(|f| {
                        let s = f.substitute(0, &LaurentPolynomial::constant(2, a.clone()))?;
                        s.to_univariate(1)
                    })
                    .collect::<Result<_, _>>()?;
                let Some(g) = gcd_all(&specialized) else {
                    continue;
                };
                for b in rational_roots(&g).roots {
                    let mut pt = vec![a.clone(), b.clone()];
                    pt.resize(d, GaussianRational::zero());
                    if restricted.iter().all(|f| f.eval(&pt).is_zero()) {
                        out.push(vec![a.clone(), b]);
                    }
                }
            }
            if out.is_empty() {
                return Err(LiftError::NoRationalRoot { irrational: false });
            }
            Ok(out)
        }
        _ => Err(LiftError::NoRationalRoot { irrational: false }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::roundtrip_holds;
    use crate::sysio::parse_system;

    fn ex1() -> PolySystem {
        parse_system("vars: x1 x2\n(1 - x1^2)*x2 + 2\n(1 - x1)^2*x2 + 3").unwrap()
    }

    #[test]
    fn example_one_division() {
        let u = Direction::new(vec![0, 1]).unwrap();
        let lift = lift_division(&ex1(), &u, &[GaussianRational::one()], 1).unwrap();
        assert_eq!(lift.mv_before, 2);
        assert_eq!(lift.mv_after, 1);
        assert!(roundtrip_holds(&lift));
        assert!(lift.diagnostics.is_empty(), "{:?}", lift.diagnostics);
        assert_eq!(lift.system.nvars(), 3);
    }

    #[test]
    fn preconditions_are_named() {
        let u = Direction::new(vec![0, 1]).unwrap();
        let two = GaussianRational::from_integer(2);
        assert!(matches!(
            lift_division(&ex1(), &u, &[two], 1),
            Err(LiftError::AlphaNotRoot { poly: 0 })
        ));
        assert!(matches!(
            lift_division(&ex1(), &u, &[GaussianRational::zero()], 1),
            Err(LiftError::AlphaZero { index: 0 })
        ));
        assert!(matches!(
            lift_division(&ex1(), &u, &[], 2),
            Err(LiftError::KOutOfRange { k: 2, max: 1 })
        ));
    }

    #[test]
    fn constant_facial_parts_have_zero_projected_volume() {
        // facial parts in direction -e_2 are constants
        let s = parse_system("vars: x1 x2\n1 + x1*x2 + x2\n2 + x1*x2^2 + x2").unwrap();
        let u = Direction::new(vec![0, -1]).unwrap();
        let err = lift_division(&s, &u, &[GaussianRational::one()], 1).unwrap_err();
        assert_eq!(err, LiftError::ProjectedVolumeZero);
    }

    #[test]
    fn candidates_for_example_one() {
        let u = Direction::new(vec![0, 1]).unwrap();
        let (n, _) = normalize(&ex1(), &u).unwrap();
        let c = facial_root_candidates(&n, 1).unwrap();
        assert_eq!(c, vec![vec![GaussianRational::one()]]);
    }
}
