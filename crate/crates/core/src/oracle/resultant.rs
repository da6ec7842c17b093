use crate::algebra::{AlgebraError, GaussianRational, LaurentPolynomial, UniPoly};

/// Coefficients of a bivariate `f` as a polynomial in `x_var`; entry `k` is
/// the coefficient of `x_var^k`, a polynomial in the other variable.
pub fn coefficients_in(f: &LaurentPolynomial, var: usize) -> Result<Vec<UniPoly>, AlgebraError> {
    if f.nvars() != 2 {
        return Err(AlgebraError::DimensionMismatch {
            expected: 2,
            found: f.nvars(),
        });
    }
    let other = 1 - var;
    let mut dense: Vec<Vec<GaussianRational>> = Vec::new();
    for (e, c) in f.terms() {
        if e[0] < 0 || e[1] < 0 {
            let v = if e[0] < 0 { 0 } else { 1 };
            return Err(AlgebraError::LaurentInput { var: v });
        }
        let (k, j) = (e[var] as usize, e[other] as usize);
        if dense.len() <= k {
            dense.resize(k + 1, Vec::new());
        }
        if dense[k].len() <= j {
            dense[k].resize(j + 1, GaussianRational::from_integer(0));
        }
        dense[k][j] = c.clone();
    }
    Ok(dense.into_iter().map(UniPoly::from_coeffs).collect())
}

/// Sylvester resultant of two bivariate polynomials with respect to `x_var`,
/// as a polynomial in the other variable.
///
/// The determinant is evaluated by fraction-free (Bareiss) elimination over
/// the polynomial ring; every intermediate division is exact. Two inputs of
/// degree zero in `x_var` give the empty determinant `1`.
pub fn sylvester_resultant(
    f: &LaurentPolynomial,
    g: &LaurentPolynomial,
    var: usize,
) -> Result<UniPoly, AlgebraError> {
    let a = coefficients_in(f, var)?;
    let b = coefficients_in(g, var)?;
    if a.is_empty() || b.is_empty() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut mat = vec![vec![UniPoly::zero(); size]; size];
    for row in 0..n {
        for (k, c) in a.iter().enumerate() {
            mat[row][row + m - k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in b.iter().enumerate() {
            mat[n + row][row + n - k] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

pub(crate) fn bareiss_det(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut negate = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("fraction-free step is exact");
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sysio::parse_system;

    #[test]
    fn cofactor_agreement_on_constants() {
        let c = |x: i64| UniPoly::from_integers(&[x]);
        let m = vec![
            vec![c(2), c(-1), c(3)],
            vec![c(0), c(4), c(1)],
            vec![c(5), c(2), c(-2)],
        ];
        assert_eq!(bareiss_det(m), c(-85));
    }

    #[test]
    fn example_one_resultant() {
        let s = parse_system("vars: x1 x2\n(1 - x1^2)*x2 + 2\n(1 - x1)^2*x2 + 3").unwrap();
        // linear in x2: Res = (1 - x1^2)*3 - 2*(1 - x1)^2 = (1 - x1)(1 + 5 x1)
        let r = sylvester_resultant(&s.polys()[0], &s.polys()[1], 1).unwrap();
        assert_eq!(r, UniPoly::from_integers(&[1, 4, -5]));
    }

    #[test]
    fn common_factor_gives_zero() {
        let s = parse_system("vars: x y\n(x + y + 1)*(x - 2)\n(x + y + 1)*(y + 3)").unwrap();
        assert!(sylvester_resultant(&s.polys()[0], &s.polys()[1], 1).unwrap().is_zero());
        assert!(sylvester_resultant(&s.polys()[0], &s.polys()[1], 0).unwrap().is_zero());
    }

    #[test]
    fn factor_in_one_variable_only_detected_by_the_other() {
        let s = parse_system("vars: x y\nx - 1\n(x - 1)*(y + 1)").unwrap();
        let ry = sylvester_resultant(&s.polys()[0], &s.polys()[1], 1).unwrap();
        assert!(!ry.is_zero());
        assert!(sylvester_resultant(&s.polys()[0], &s.polys()[1], 0).unwrap().is_zero());
    }
}
