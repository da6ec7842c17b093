use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{AlgebraError, GaussianRational, UniPoly};
use crate::polytope::{LatticePolytope, PolytopeError};

/// An exponent vector in `Z^d`.
pub type Exponent = Vec<i64>;

/// Graded-lexicographic comparison: total degree first, then lexicographic.
pub fn grlex_cmp(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Sparse Laurent polynomial over the Gaussian rationals.
///
/// Zero coefficients are never stored, so the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, GaussianRational>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: Exponent, c: GaussianRational) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { nvars, terms }
    }

    /// The variable `x_i` (0-based).
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, GaussianRational::one())
    }

    /// Collects like terms; zero sums are dropped.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, GaussianRational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &GaussianRational)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lexicographic order.
    pub fn terms_grlex(&self) -> Vec<(&Exponent, &GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_cmp(b.0, a.0));
        v
    }

    pub fn coeff(&self, e: &[i64]) -> Option<&GaussianRational> {
        self.terms.get(e)
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn newton_polytope(&self) -> Result<LatticePolytope, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        LatticePolytope::convex_hull(&self.support()).map_err(|e| match e {
            PolytopeError::Empty => AlgebraError::ZeroPolynomial,
            other => AlgebraError::Polytope(other),
        })
    }

    /// Maximum of `<u, a>` over the support.
    pub fn support_value(&self, u: &[i64]) -> Option<i64> {
        self.terms.keys().map(|e| dot(e, u)).max()
    }

    /// The terms whose exponents maximize `<., u>` over the support.
    pub fn facial_restriction(&self, u: &[i64]) -> Self {
        let Some(h) = self.support_value(u) else {
            return self.clone();
        };
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| dot(e, u) == h)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&x| x < 0))
    }

    pub fn max_degree_in(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn min_degree_in(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[i]).min()
    }

    /// Does `x_i` appear with a nonzero exponent in some term?
    pub fn occurs(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] != 0)
    }

    /// Indices of variables that occur.
    pub fn occurring_variables(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.occurs(i)).collect()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Applies `f` to every exponent, collecting like terms.
    pub fn map_exponents<F>(&self, nvars: usize, f: F) -> Self
    where
        F: Fn(&[i64]) -> Exponent,
    {
        Self::from_terms(nvars, self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    /// Appends `extra` variables that do not occur.
    pub fn embed(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        self.map_exponents(nvars, |e| {
            let mut v = e.to_vec();
            v.resize(nvars, 0);
            v
        })
    }

    /// Drops the trailing variables, which must not occur.
    pub fn truncate_vars(&self, nvars: usize) -> Result<Self, AlgebraError> {
        if self.terms.keys().any(|e| e[nvars..].iter().any(|&x| x != 0)) {
            return Err(AlgebraError::VariableStillPresent);
        }
        Ok(self.map_exponents(nvars, |e| e[..nvars].to_vec()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.nvars, GaussianRational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.nvars);
        let mut s = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k != 0 {
                    t = &t * &x.pow(k);
                }
            }
            s += &t;
        }
        s
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_complex() * monomial_value(e, point))
            .sum()
    }

    /// `sum |c_a| |z^a|`, the natural scale for a backward-error residual.
    pub fn magnitude_at(&self, point: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_complex().norm() * monomial_value(e, point).norm())
            .sum()
    }

    pub fn partial_derivative(&self, i: usize) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().filter(|(e, _)| e[i] != 0).map(|(e, c)| {
                let mut d = e.clone();
                d[i] -= 1;
                (d, c * &GaussianRational::from_integer(e[i]))
            }),
        )
    }

    /// Replaces `x_i` by `g`; `x_i` must occur only with non-negative exponents.
    pub fn substitute(&self, i: usize, g: &LaurentPolynomial) -> Result<Self, AlgebraError> {
        assert_eq!(g.nvars, self.nvars);
        let mut powers: Vec<LaurentPolynomial> =
            vec![Self::constant(self.nvars, GaussianRational::one())];
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[i];
            if k < 0 {
                return Err(AlgebraError::LaurentInput { var: i });
            }
            while powers.len() <= k as usize {
                let next = powers.last().unwrap() * g;
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[i] = 0;
            let t = powers[k as usize].mul_monomial(&rest).scale(c);
            out = &out + &t;
        }
        Ok(out)
    }

    /// Is every term free of variables other than `x_i`?
    pub fn is_univariate_in(&self, i: usize) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().enumerate().all(|(j, &x)| j == i || x == 0))
    }

    /// Dense univariate view in `x_i`; requires non-negative exponents.
    pub fn to_univariate(&self, i: usize) -> Result<UniPoly, AlgebraError> {
        if !self.is_univariate_in(i) {
            return Err(AlgebraError::NotUnivariate);
        }
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            let k = e[i];
            if k < 0 {
                return Err(AlgebraError::LaurentInput { var: i });
            }
            let k = k as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, GaussianRational::zero());
            }
            coeffs[k] = c.clone();
        }
        Ok(UniPoly::from_coeffs(coeffs))
    }

    pub fn from_univariate(nvars: usize, i: usize, p: &UniPoly) -> Self {
        Self::from_terms(
            nvars,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[i] = k as i64;
                (e, c.clone())
            }),
        )
    }

    /// Multiplies by the monomial that makes every exponent non-negative with
    /// each variable's minimum exponent equal to zero.
    pub fn strip_monomial_factor(&self) -> (Self, Exponent) {
        let mins: Exponent = (0..self.nvars)
            .map(|i| self.min_degree_in(i).unwrap_or(0))
            .collect();
        let neg: Exponent = mins.iter().map(|x| -x).collect();
        (self.mul_monomial(&neg), mins)
    }

    /// `self = c * other` for a nonzero constant `c`; returns `c`.
    pub fn ratio_to(&self, other: &Self) -> Option<GaussianRational> {
        if self.terms.len() != other.terms.len() || self.is_zero() {
            return None;
        }
        let mut ratio: Option<GaussianRational> = None;
        for ((e1, c1), (e2, c2)) in self.terms.iter().zip(&other.terms) {
            if e1 != e2 {
                return None;
            }
            let r = c1 / c2;
            match &ratio {
                None => ratio = Some(r),
                Some(q) if *q == r => {}
                Some(_) => return None,
            }
        }
        ratio
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn monomial_value(e: &[i64], point: &[Complex64]) -> Complex64 {
    let mut t = Complex64::new(1.0, 0.0);
    for (z, &k) in point.iter().zip(e) {
        if k != 0 {
            t *= z.powi(k as i32);
        }
    }
    t
}

impl<'a> std::ops::Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c);
        }
        r
    }
}

impl<'a> std::ops::Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), &-c);
        }
        r
    }
}

impl<'a> std::ops::Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, o.nvars);
        let mut r = LaurentPolynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, &(c1 * c2));
            }
        }
        r
    }
}

impl std::ops::Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(&-GaussianRational::one())
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Formats with generic variable names `x1, x2, ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&crate::sysio::format_polynomial(self, &names))
    }
}
