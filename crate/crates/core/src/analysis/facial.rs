use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{GaussianRational, LaurentPolynomial, UniPoly};
use crate::intmat::lattice_coordinates;
use crate::lifting::rational_roots;
use crate::oracle::{coefficients_in, sylvester_resultant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Solvability {
    Solvable,
    NoSolution,
    Unknown,
}

/// Outcome of the torus-solvability test for one facial system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub status: Solvability,
    /// Exact torus point, in the original coordinates.
    pub witness: Option<Vec<GaussianRational>>,
    pub certificate: String,
}

impl Decision {
    fn new(status: Solvability, certificate: impl Into<String>) -> Self {
        Self {
            status,
            witness: None,
            certificate: certificate.into(),
        }
    }
}

/// Rewrites the facial polynomials in coordinates adapted to the lattice
/// spanned by their supports' differences: every polynomial then lives in the
/// first `r` variables.
struct Reduced {
    r: usize,
    t: Vec<Vec<i64>>,
    polys: Vec<LaurentPolynomial>,
}

fn reduce(facial: &[LaurentPolynomial], d: usize) -> Option<Reduced> {
    let mut diffs = Vec::new();
    for f in facial {
        let s = f.support();
        for e in &s[1..] {
            diffs.push(e.iter().zip(&s[0]).map(|(a, b)| a - b).collect());
        }
    }
    let (r, t) = lattice_coordinates(&diffs, d)?;
    let polys = facial
        .iter()
        .map(|f| {
            let g = f.map_exponents(d, |e| crate::intmat::mat_vec(&t, e));
            g.strip_monomial_factor().0.truncate_vars(r).expect("support lies in the span")
        })
        .collect();
    Some(Reduced { r, t, polys })
}

impl Reduced {
    /// `x_i = prod_j z_j^{T_ji}`, with `z_j = 1` beyond the first `r`.
    fn pull_back(&self, z: &[GaussianRational]) -> Vec<GaussianRational> {
        let n = self.t.len();
        (0..n)
            .map(|i| {
                (0..z.len()).fold(GaussianRational::one(), |acc, j| &acc * &z[j].pow(self.t[j][i]))
            })
            .collect()
    }
}

/// Decides whether the facial polynomials have a common zero in the torus.
pub fn decide(facial: &[LaurentPolynomial], d: usize) -> Decision {
    if let Some(j) = facial.iter().position(|f| f.is_monomial() || f.is_zero()) {
        return Decision::new(Solvability::NoSolution, format!("facial polynomial {j} is a monomial"));
    }
    let Some(red) = reduce(facial, d) else {
        return Decision::new(Solvability::Unknown, "lattice reduction overflowed");
    };
    let mut out = match red.r {
        1 => univariate(&red),
        2 => bivariate(&red),
        r => Decision::new(
            Solvability::Unknown,
            format!("facial system has effective dimension {r}; no exact test"),
        ),
    };
    if let Some(w) = &out.witness {
        let w = red.pull_back(w);
        debug_assert!(facial.iter().all(|f| f.eval(&w).is_zero()));
        out.witness = Some(w);
    }
    out
}

fn gcd_all(polys: &[UniPoly]) -> UniPoly {
    polys.iter().fold(UniPoly::zero(), |g, p| g.gcd(p))
}

fn univariate(red: &Reduced) -> Decision {
    let unis: Vec<UniPoly> = red
        .polys
        .iter()
        .map(|f| f.to_univariate(0).expect("one variable"))
        .collect();
    let g = gcd_all(&unis).strip_zero_roots();
    let m = g.degree().unwrap_or(0);
    if m == 0 {
        return Decision::new(Solvability::NoSolution, "gcd of the facial polynomials is a monomial");
    }
    let mut out = Decision::new(Solvability::Solvable, format!("gcd of degree {m} has a nonzero root"));
    out.witness = rational_roots(&g).roots.first().map(|z| vec![z.clone()]);
    out
}

fn dedup_proportional(polys: &[LaurentPolynomial]) -> Vec<LaurentPolynomial> {
    let mut out: Vec<LaurentPolynomial> = Vec::new();
    for f in polys {
        if !out.iter().any(|g| f.ratio_to(g).is_some()) {
            out.push(f.clone());
        }
    }
    out
}

fn specialize_first(f: &LaurentPolynomial, a: &GaussianRational) -> UniPoly {
    f.substitute(0, &LaurentPolynomial::constant(2, a.clone()))
        .and_then(|g| g.to_univariate(1))
        .expect("polynomial in two variables")
}

/// Exact common torus zero with `z_1` among the rational roots of `s`.
fn rational_witness(polys: &[LaurentPolynomial], s: &UniPoly) -> Option<Vec<GaussianRational>> {
    for a in rational_roots(s).roots {
        let unis: Vec<UniPoly> = polys.iter().map(|f| specialize_first(f, &a)).collect();
        let g = gcd_all(&unis);
        if g.is_zero() {
            return Some(vec![a, GaussianRational::one()]);
        }
        if let Some(b) = rational_roots(&g).roots.into_iter().next() {
            return Some(vec![a, b]);
        }
    }
    None
}

/// Whether `f` is not a monomial in `z_2` times a polynomial in `z_1`.
fn involves_second(f: &LaurentPolynomial) -> bool {
    f.min_degree_in(1) != f.max_degree_in(1)
}

fn zero_free_squarefree(p: &UniPoly) -> UniPoly {
    p.strip_zero_roots().squarefree_part()
}

fn bivariate(red: &Reduced) -> Decision {
    let polys = dedup_proportional(&red.polys);
    if polys.len() == 1 {
        let f = &polys[0];
        let mut out = Decision::new(Solvability::Solvable, "single non-monomial polynomial");
        for c in 1..=4i64 {
            let z2 = GaussianRational::from_integer(c);
            let g = f
                .substitute(1, &LaurentPolynomial::constant(2, z2.clone()))
                .and_then(|g| g.to_univariate(0))
                .expect("two variables");
            if let Some(a) = rational_roots(&g).roots.into_iter().next() {
                out.witness = Some(vec![a, z2]);
                break;
            }
        }
        return out;
    }
    let mut first_pair = None;
    for a in 0..polys.len() {
        for b in a + 1..polys.len() {
            if !involves_second(&polys[a]) && !involves_second(&polys[b]) {
                // the resultant in z_2 is the empty determinant here
                let g = polys[a]
                    .strip_monomial_factor()
                    .0
                    .to_univariate(0)
                    .expect("free of z_2")
                    .gcd(&polys[b].strip_monomial_factor().0.to_univariate(0).expect("free of z_2"))
                    .strip_zero_roots();
                if g.degree() == Some(0) {
                    return Decision::new(
                        Solvability::NoSolution,
                        format!("facial polynomials {a} and {b} depend on z_1 only and have no common nonzero root"),
                    );
                }
                if polys.len() == 2 {
                    let mut out = Decision::new(
                        Solvability::Solvable,
                        "the two facial polynomials depend on z_1 only and share a nonzero root",
                    );
                    out.witness = rational_roots(&g)
                        .roots
                        .into_iter()
                        .next()
                        .map(|z| vec![z, GaussianRational::one()]);
                    return out;
                }
                if first_pair.is_none() {
                    first_pair = Some((a, b, g.squarefree_part()));
                }
                continue;
            }
            let r = sylvester_resultant(&polys[a], &polys[b], 1).expect("two variables");
            if r.is_zero() {
                if polys.len() == 2 {
                    return Decision::new(
                        Solvability::Solvable,
                        "the two facial polynomials share a non-monomial factor",
                    );
                }
                continue;
            }
            let s = zero_free_squarefree(&r);
            if s.degree() == Some(0) {
                return Decision::new(
                    Solvability::NoSolution,
                    format!("resultant of facial polynomials {a} and {b} has no nonzero root"),
                );
            }
            if first_pair.is_none() {
                first_pair = Some((a, b, s));
            }
        }
    }
    let Some((a, b, s)) = first_pair else {
        return Decision::new(Solvability::Unknown, "every pair of facial polynomials shares a factor");
    };
    if let Some(w) = rational_witness(&polys, &s) {
        let mut out = Decision::new(Solvability::Solvable, "exact rational common root");
        out.witness = Some(w);
        return out;
    }
    if polys.len() > 2 {
        return Decision::new(
            Solvability::Unknown,
            "three or more independent facial polynomials without a rational common root",
        );
    }
    // Roots of the resultant that are neither common roots of the leading
    // coefficients nor of the z_2 = 0 restrictions lift to common torus zeros.
    let ca = coefficients_in(&polys[a], 1).expect("two variables");
    let cb = coefficients_in(&polys[b], 1).expect("two variables");
    let lead = ca.last().unwrap().gcd(cb.last().unwrap());
    let low = ca[0].gcd(&cb[0]);
    let spurious = zero_free_squarefree(&(&lead * &low));
    let genuine = s.exact_div(&s.gcd(&spurious)).expect("gcd divides");
    if genuine.degree().unwrap_or(0) > 0 {
        Decision::new(
            Solvability::Solvable,
            "resultant has a root that is not a common root of the leading or trailing coefficients",
        )
    } else {
        Decision::new(
            Solvability::Unknown,
            "every resultant root is also a root of the leading or trailing coefficients",
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sysio::parse_system;

    fn polys(text: &str) -> (Vec<LaurentPolynomial>, usize) {
        let s = parse_system(text).unwrap();
        (s.polys().to_vec(), s.nvars())
    }

    #[test]
    fn example_one_face() {
        let (f, d) = polys("vars: x1 x2\n(1 - x1^2)*x2\n(1 - x1)^2*x2");
        let out = decide(&f, d);
        assert_eq!(out.status, Solvability::Solvable);
        let w = out.witness.unwrap();
        assert_eq!(w[0], GaussianRational::one());
        assert!(f.iter().all(|p| p.eval(&w).is_zero()));
    }

    #[test]
    fn monomial_face() {
        let (f, d) = polys("vars: x y\n3*x*y\n1 + y");
        assert_eq!(decide(&f, d).status, Solvability::NoSolution);
    }

    #[test]
    fn coprime_univariate_face() {
        let (f, d) = polys("vars: x y\ny*(1 + x)\n2*y + 5*x*y");
        assert_eq!(decide(&f, d).status, Solvability::NoSolution);
    }

    #[test]
    fn skew_univariate_face() {
        // both polynomials are polynomials in x*y^2
        let (f, d) = polys("vars: x y\n1 - x^2*y^4\n1 - 2*x*y^2 + x^2*y^4");
        let out = decide(&f, d);
        assert_eq!(out.status, Solvability::Solvable);
        let w = out.witness.unwrap();
        assert!(f.iter().all(|p| p.eval(&w).is_zero()));
    }

    #[test]
    fn irrational_common_roots_certified_by_resultant() {
        let (f, d) = polys(
            "vars: x1 x2 x3\n1 + x1^2*x2^2 + x1^2*x2^4\n1 + x1^2*x2^2 + x1^2*x2^4\n2 + x1*x2 + x1^2*x2^2 + x1^2*x2^4",
        );
        let out = decide(&f, d);
        assert_eq!(out.status, Solvability::Solvable, "{}", out.certificate);
    }

    #[test]
    fn generic_pair_has_no_common_zero() {
        let (f, d) = polys("vars: x y\n1 + x + y\n2 + x + y");
        assert_eq!(decide(&f, d).status, Solvability::NoSolution);
    }

    #[test]
    fn three_polynomials_with_rational_root() {
        let (f, d) = polys("vars: x y\nx + y - 3\nx - 2*y\nx*y - 2");
        let out = decide(&f[..3], d);
        assert_eq!(out.status, Solvability::Solvable);
        assert_eq!(
            out.witness.unwrap(),
            vec![GaussianRational::from_integer(2), GaussianRational::one()]
        );
    }

    #[test]
    fn polynomials_free_of_the_second_coordinate() {
        // the first two vanish on the line x = 4
        let (f, d) = polys(
            "vars: x y z\n4*x^2 - 24*x + 32\n-5*x^2 + 23*x - 12\n3*x^2 - 2*x*y - 7*x + 8*y - 20",
        );
        let out = decide(&f, d);
        assert_eq!(out.status, Solvability::Solvable);
        let w = out.witness.unwrap();
        assert!(f.iter().all(|p| p.eval(&[w[0].clone(), w[1].clone(), GaussianRational::one()]).is_zero()));

        let (g, d) = polys("vars: x y\nx - 2\nx^2 - 9");
        assert_eq!(decide(&g, d).status, Solvability::NoSolution);
        let (g, d) = polys("vars: x y\n(x - 2)*y\nx^2 - 4");
        let out = decide(&g, d);
        assert_eq!(out.status, Solvability::Solvable);
        assert_eq!(out.witness.unwrap()[0], GaussianRational::from_integer(2));
    }
}
