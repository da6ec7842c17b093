use std::collections::BTreeMap;

use num_traits::Zero;

use super::{AlgebraError, Exponent, GaussianRational, LaurentPolynomial};

/// Divides `f` by `x_i - alpha`, returning `(q, r)` with `f = q (x_i - alpha) + r`
/// and `r` free of `x_i`.
///
/// The terms of `f` are grouped by their exponent outside `x_i`; each group is
/// a univariate polynomial in `x_i` and is reduced by synthetic division,
/// highest power first. The identity is re-checked by expansion.
pub fn divide_linear(
    f: &LaurentPolynomial,
    i: usize,
    alpha: &GaussianRational,
) -> Result<(LaurentPolynomial, LaurentPolynomial), AlgebraError> {
    if alpha.is_zero() {
        return Err(AlgebraError::ZeroDivisorRoot);
    }
    if f.has_negative_exponents() {
        let var = (0..f.nvars())
            .find(|&j| f.min_degree_in(j).is_some_and(|m| m < 0))
            .unwrap_or(0);
        return Err(AlgebraError::LaurentInput { var });
    }
    let n = f.nvars();
    let mut groups: BTreeMap<Exponent, BTreeMap<i64, GaussianRational>> = BTreeMap::new();
    for (e, c) in f.terms() {
        let mut rest = e.clone();
        rest[i] = 0;
        groups.entry(rest).or_default().insert(e[i], c.clone());
    }
    let mut q_terms = Vec::new();
    let mut r_terms = Vec::new();
    for (rest, by_deg) in groups {
        let top = *by_deg.keys().next_back().unwrap();
        // synthetic division: carry_k = c_k + alpha * carry_{k+1}
        let mut carry = GaussianRational::zero();
        for k in (0..=top).rev() {
            let c = by_deg.get(&k).cloned().unwrap_or_else(GaussianRational::zero);
            let next = &c + &(alpha * &carry);
            if k == 0 {
                r_terms.push((rest.clone(), next.clone()));
            } else {
                let mut e = rest.clone();
                e[i] = k - 1;
                q_terms.push((e, next.clone()));
            }
            carry = next;
        }
    }
    let q = LaurentPolynomial::from_terms(n, q_terms);
    let r = LaurentPolynomial::from_terms(n, r_terms);
    let lin = &LaurentPolynomial::variable(n, i)
        - &LaurentPolynomial::constant(n, alpha.clone());
    assert_eq!(&(&q * &lin) + &r, *f, "division identity failed");
    Ok((q, r))
}

/// Monic gcd of two polynomials univariate in `x_i`.
pub fn gcd_univariate(
    f: &LaurentPolynomial,
    g: &LaurentPolynomial,
    i: usize,
) -> Result<LaurentPolynomial, AlgebraError> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let a = f.to_univariate(i)?;
    let b = g.to_univariate(i)?;
    Ok(LaurentPolynomial::from_univariate(f.nvars(), i, &a.gcd(&b)))
}
