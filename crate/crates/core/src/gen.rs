//! Seeded generators of random polytopes, random systems and systems with a
//! planted degenerate face.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{GaussianRational, LaurentPolynomial, PolySystem};
use crate::polytope::LatticePolytope;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero integer coefficient in `[-range, range]`.
pub fn coefficient(rng: &mut ChaCha8Rng, range: i64) -> GaussianRational {
    loop {
        let c = rng.gen_range(-range..=range);
        if c != 0 {
            return GaussianRational::from_integer(c);
        }
    }
}

/// Random nonzero Gaussian rational `p/q + i r/q` with small entries.
pub fn small_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let q = rng.gen_range(1..=3);
        let re = GaussianRational::from_ratio(rng.gen_range(-4..=4), q);
        let im = if rng.gen_bool(0.25) {
            GaussianRational::from_ratio(rng.gen_range(-2..=2), q)
        } else {
            GaussianRational::from_integer(0)
        };
        let z = &re + &(&GaussianRational::i() * &im);
        if z != GaussianRational::from_integer(0) {
            return z;
        }
    }
}

pub fn random_points(rng: &mut ChaCha8Rng, dim: usize, count: usize, max: i64) -> Vec<Vec<i64>> {
    (0..count)
        .map(|_| (0..dim).map(|_| rng.gen_range(0..=max)).collect())
        .collect()
}

pub fn random_polytope(rng: &mut ChaCha8Rng, dim: usize, count: usize, max: i64) -> LatticePolytope {
    LatticePolytope::convex_hull_in(dim, &random_points(rng, dim, count, max)).expect("nonempty")
}

/// A random tuple of `dim` polytopes in `R^dim` and a contained tuple: each
/// `P_i'` is the hull of a random nonempty subset of the lattice points of
/// `P_i`, and with probability 1/2 equals `P_i` with one vertex removed.
pub fn random_contained_tuples(
    rng: &mut ChaCha8Rng,
    dim: usize,
    max: i64,
) -> (Vec<LatticePolytope>, Vec<LatticePolytope>) {
    let mut p = Vec::with_capacity(dim);
    let mut q = Vec::with_capacity(dim);
    for _ in 0..dim {
        let count = rng.gen_range(1..=dim + 3);
        let a = random_polytope(rng, dim, count, max);
        let b = if rng.gen_bool(0.5) || a.vertices().len() == 1 {
            let pts = a.lattice_points();
            let keep = rng.gen_range(1..=pts.len());
            let sub: Vec<Vec<i64>> = pts.choose_multiple(rng, keep).cloned().collect();
            LatticePolytope::convex_hull_in(dim, &sub).expect("nonempty")
        } else {
            let drop = rng.gen_range(0..a.vertices().len());
            let rest: Vec<Vec<i64>> = a
                .lattice_points()
                .iter()
                .filter(|x| **x != a.vertices()[drop])
                .cloned()
                .collect();
            LatticePolytope::convex_hull_in(dim, &rest).expect("more than one lattice point")
        };
        p.push(a);
        q.push(b);
    }
    (p, q)
}

pub fn random_polynomial(
    rng: &mut ChaCha8Rng,
    support: &[Vec<i64>],
    range: i64,
) -> LaurentPolynomial {
    let n = support[0].len();
    LaurentPolynomial::from_terms(n, support.iter().map(|e| (e.clone(), coefficient(rng, range))))
}

/// Exponents `e` with non-negative entries and `|e|_1 <= deg`.
pub fn simplex_support(n: usize, deg: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|e: Vec<i64>| {
                let used: i64 = e.iter().sum();
                (0..=deg - used).map(move |k| {
                    let mut f = e.clone();
                    f.push(k);
                    f
                })
            })
            .collect();
    }
    out
}

pub fn box_support(degs: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &m in degs {
        out = out
            .into_iter()
            .flat_map(|e: Vec<i64>| {
                (0..=m).map(move |k| {
                    let mut f = e.clone();
                    f.push(k);
                    f
                })
            })
            .collect();
    }
    out
}

/// Support families for random bivariate systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Both polynomials dense of total degree 2.
    DenseQuadrics,
    /// Total degrees 1 and 3.
    LineCubic,
    /// Bidegree (1, 1) and (2, 1).
    Boxes,
    /// Random sparse supports of 3 to 6 points in `[0, 3]^2`.
    Sparse,
    /// Supports with negative exponents.
    Laurent,
    /// Two trinomials.
    Trinomials,
}

impl Profile {
    pub const ALL: [Profile; 6] = [
        Profile::DenseQuadrics,
        Profile::LineCubic,
        Profile::Boxes,
        Profile::Sparse,
        Profile::Laurent,
        Profile::Trinomials,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Profile::DenseQuadrics => "dense_quadrics",
            Profile::LineCubic => "line_cubic",
            Profile::Boxes => "boxes",
            Profile::Sparse => "sparse",
            Profile::Laurent => "laurent",
            Profile::Trinomials => "trinomials",
        }
    }

    fn supports(self, rng: &mut ChaCha8Rng) -> [Vec<Vec<i64>>; 2] {
        let sparse = |rng: &mut ChaCha8Rng, count: usize, lo: i64, hi: i64| -> Vec<Vec<i64>> {
            let mut pts: Vec<Vec<i64>> = Vec::new();
            while pts.len() < count {
                let p = vec![rng.gen_range(lo..=hi), rng.gen_range(lo..=hi)];
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
            pts
        };
        match self {
            Profile::DenseQuadrics => [simplex_support(2, 2), simplex_support(2, 2)],
            Profile::LineCubic => [simplex_support(2, 1), simplex_support(2, 3)],
            Profile::Boxes => [box_support(&[1, 1]), box_support(&[2, 1])],
            Profile::Sparse => {
                let a = rng.gen_range(3..=6);
                let b = rng.gen_range(3..=6);
                [sparse(rng, a, 0, 3), sparse(rng, b, 0, 3)]
            }
            Profile::Laurent => [sparse(rng, 4, -2, 2), sparse(rng, 4, -2, 2)],
            Profile::Trinomials => [sparse(rng, 3, 0, 4), sparse(rng, 3, 0, 4)],
        }
    }
}

/// Random bivariate system with the supports of `profile`, resampled until its
/// mixed volume is positive.
pub fn random_bivariate_system(rng: &mut ChaCha8Rng, profile: Profile, range: i64) -> PolySystem {
    loop {
        let [a, b] = profile.supports(rng);
        let sys = PolySystem::with_default_names(
            2,
            vec![random_polynomial(rng, &a, range), random_polynomial(rng, &b, range)],
        )
        .expect("two variables");
        let mv = crate::polytope::mixed_volume(&sys.newton_polytopes()).expect("square");
        if mv > 0 {
            return sys;
        }
    }
}

fn poly_in(n: usize, terms: Vec<(Vec<i64>, GaussianRational)>) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(n, terms)
}

/// Random polynomial in `x_1..x_{n-1}` (no `x_n`) of total degree at most
/// `deg` with a nonzero constant term.
fn facial_polynomial(rng: &mut ChaCha8Rng, n: usize, deg: i64, range: i64) -> LaurentPolynomial {
    let mut terms: Vec<(Vec<i64>, GaussianRational)> = Vec::new();
    for e in simplex_support(n - 1, deg) {
        if e.iter().all(|&x| x == 0) || rng.gen_bool(0.6) {
            let mut f = e;
            f.push(0);
            terms.push((f, coefficient(rng, range)));
        }
    }
    poly_in(n, terms)
}

/// Random terms containing `x_n` with positive exponent.
fn upper_part(rng: &mut ChaCha8Rng, n: usize, range: i64) -> LaurentPolynomial {
    let mut terms = vec![];
    let mut e = vec![0; n];
    e[n - 1] = rng.gen_range(1..=2);
    terms.push((e, coefficient(rng, range)));
    for _ in 0..rng.gen_range(1..=3) {
        let mut e: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(0..=2)).collect();
        e.push(rng.gen_range(1..=2));
        terms.push((e, coefficient(rng, range)));
    }
    poly_in(n, terms)
}

fn linear_factor(n: usize, i: usize, alpha: &GaussianRational) -> LaurentPolynomial {
    &LaurentPolynomial::variable(n, i) - &LaurentPolynomial::constant(n, alpha.clone())
}

/// A system normalized for `-e_n` whose facial polynomials all vanish at
/// `(alpha, 0, ..., 0)`: `f_j = (x_1 - alpha) p_j + x_n g_j` with `p_j` having
/// a nonzero constant term. Returns the system and `alpha`.
pub fn planted_division(rng: &mut ChaCha8Rng, n: usize) -> (PolySystem, GaussianRational) {
    let alpha = small_gaussian(rng);
    let polys = (0..n)
        .map(|_| {
            let p = facial_polynomial(rng, n, 1, 9);
            &(&linear_factor(n, 0, &alpha) * &p) + &upper_part(rng, n, 9)
        })
        .collect();
    (PolySystem::with_default_names(n, polys).expect("valid"), alpha)
}

/// A system whose facial polynomials for `-e_n` satisfy
/// `f_{2}^u = lambda f_{1}^u`.
pub fn planted_dependency(rng: &mut ChaCha8Rng, n: usize) -> (PolySystem, GaussianRational) {
    let lambda = small_gaussian(rng);
    let g = facial_polynomial(rng, n, 2, 9);
    let mut polys = vec![&g + &upper_part(rng, n, 9), &g.scale(&lambda) + &upper_part(rng, n, 9)];
    for _ in 2..n {
        polys.push(&facial_polynomial(rng, n, 2, 9) + &upper_part(rng, n, 9));
    }
    (PolySystem::with_default_names(n, polys).expect("valid"), lambda)
}

/// A bivariate system whose facial polynomials for `-e_2` share a factor of
/// degree `m` with nonzero roots.
pub fn planted_gcd(rng: &mut ChaCha8Rng, m: usize) -> PolySystem {
    let mut g = LaurentPolynomial::constant(2, GaussianRational::from_integer(1));
    for _ in 0..m {
        g = &g * &linear_factor(2, 0, &small_gaussian(rng));
    }
    let polys = (0..2)
        .map(|_| {
            let deg = rng.gen_range(0..=2);
            let q = facial_polynomial(rng, 2, deg, 9);
            &(&g * &q) + &upper_part(rng, 2, 9)
        })
        .collect();
    PolySystem::with_default_names(2, polys).expect("valid")
}

/// Random polynomial system of total degree `deg` in `n` variables.
pub fn random_dense_system(rng: &mut ChaCha8Rng, n: usize, deg: i64, density: f64) -> PolySystem {
    let support = simplex_support(n, deg);
    let polys = (0..n)
        .map(|_| {
            let mut terms: Vec<(Vec<i64>, GaussianRational)> = Vec::new();
            for e in &support {
                if e.iter().all(|&x| x == 0) || rng.gen_bool(density) {
                    terms.push((e.clone(), coefficient(rng, 9)));
                }
            }
            poly_in(n, terms)
        })
        .collect();
    PolySystem::with_default_names(n, polys).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a = random_bivariate_system(&mut rng(7), Profile::Sparse, 50);
        let b = random_bivariate_system(&mut rng(7), Profile::Sparse, 50);
        assert_eq!(a, b);
    }

    #[test]
    fn contained_tuples_are_contained() {
        let mut r = rng(1);
        for dim in [2, 3] {
            for _ in 0..20 {
                let (p, q) = random_contained_tuples(&mut r, dim, 3);
                assert!(p.iter().zip(&q).all(|(a, b)| a.contains(b)));
            }
        }
    }

    #[test]
    fn planted_root_is_a_facial_root() {
        let mut r = rng(3);
        let (sys, alpha) = planted_division(&mut r, 3);
        let mut pt = vec![GaussianRational::from_integer(0); 3];
        pt[0] = alpha;
        let down = [0, 0, -1];
        for f in sys.polys() {
            assert_eq!(f.facial_restriction(&down).eval(&pt), GaussianRational::from_integer(0));
        }
    }

    #[test]
    fn simplex_sizes() {
        assert_eq!(simplex_support(2, 2).len(), 6);
        assert_eq!(simplex_support(3, 1).len(), 4);
        assert_eq!(box_support(&[2, 1]).len(), 6);
    }
}
