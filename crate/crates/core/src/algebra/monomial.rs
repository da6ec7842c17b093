use num_complex::Complex64;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{AlgebraError, GaussianRational, LaurentPolynomial, PolySystem};
use crate::intmat;

/// A unimodular exponent transformation together with one monomial shift per
/// polynomial.
///
/// A term `c x^a` of polynomial `j` becomes `c x^(U a + s_j)`. On torus points
/// this corresponds to `x_i = prod_j z_j^(U[j][i])`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MonomialChange {
    pub matrix: Vec<Vec<i64>>,
    pub shifts: Vec<Vec<i64>>,
}

impl MonomialChange {
    pub fn identity(nvars: usize, npolys: usize) -> Self {
        Self {
            matrix: intmat::identity(nvars),
            shifts: vec![vec![0; nvars]; npolys],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == intmat::identity(self.matrix.len())
            && self.shifts.iter().all(|s| s.iter().all(|&x| x == 0))
    }

    pub fn nvars(&self) -> usize {
        self.matrix.len()
    }

    fn check(&self) -> Result<(), AlgebraError> {
        let n = self.matrix.len();
        if self.matrix.iter().any(|r| r.len() != n) || intmat::det_i64(&self.matrix).abs() != 1 {
            return Err(AlgebraError::NotUnimodular);
        }
        if self.shifts.iter().any(|s| s.len() != n) {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: self.shifts.iter().map(|s| s.len()).find(|&l| l != n).unwrap(),
            });
        }
        Ok(())
    }

    /// Image of a polynomial under the exponent map with the given shift.
    pub fn transform_poly(&self, f: &LaurentPolynomial, shift: &[i64]) -> LaurentPolynomial {
        f.map_exponents(f.nvars(), |e| {
            intmat::mat_vec(&self.matrix, e)
                .into_iter()
                .zip(shift)
                .map(|(a, b)| a + b)
                .collect()
        })
    }

    /// The direction `U^{-T} u`, which selects the image of the face `P^u`.
    pub fn transform_direction(&self, u: &[i64]) -> Vec<i64> {
        let inv = intmat::inverse_unimodular(&self.matrix).expect("unimodular");
        let n = inv.len();
        (0..n).map(|j| (0..n).map(|i| inv[i][j] * u[i]).sum()).collect()
    }

    /// Maps a torus point of the transformed system back to the original one.
    pub fn pull_back_point(&self, z: &[GaussianRational]) -> Vec<GaussianRational> {
        let n = self.matrix.len();
        (0..n)
            .map(|i| {
                (0..n).fold(GaussianRational::one(), |acc, j| &acc * &z[j].pow(self.matrix[j][i]))
            })
            .collect()
    }

    /// Maps a torus point of the original system to the transformed one.
    pub fn push_forward_point(&self, x: &[GaussianRational]) -> Vec<GaussianRational> {
        let inv = intmat::inverse_unimodular(&self.matrix).expect("unimodular");
        let n = inv.len();
        (0..n)
            .map(|j| (0..n).fold(GaussianRational::one(), |acc, i| &acc * &x[i].pow(inv[i][j])))
            .collect()
    }

    pub fn push_forward_point_complex(&self, x: &[Complex64]) -> Vec<Complex64> {
        let inv = intmat::inverse_unimodular(&self.matrix).expect("unimodular");
        let n = inv.len();
        (0..n)
            .map(|j| {
                (0..n).fold(Complex64::new(1.0, 0.0), |acc, i| acc * x[i].powi(inv[i][j] as i32))
            })
            .collect()
    }

    pub fn pull_back_point_complex(&self, z: &[Complex64]) -> Vec<Complex64> {
        let n = self.matrix.len();
        (0..n)
            .map(|i| {
                (0..n).fold(Complex64::new(1.0, 0.0), |acc, j| {
                    acc * z[j].powi(self.matrix[j][i] as i32)
                })
            })
            .collect()
    }
}

/// Applies `t` to every polynomial of `sys`.
pub fn apply_monomial_change(sys: &PolySystem, t: &MonomialChange) -> Result<PolySystem, AlgebraError> {
    t.check()?;
    if t.nvars() != sys.nvars() {
        return Err(AlgebraError::DimensionMismatch {
            expected: sys.nvars(),
            found: t.nvars(),
        });
    }
    if t.shifts.len() != sys.len() {
        return Err(AlgebraError::ShiftCount {
            expected: sys.len(),
            found: t.shifts.len(),
        });
    }
    let polys = sys
        .polys()
        .iter()
        .zip(&t.shifts)
        .map(|(f, s)| t.transform_poly(f, s))
        .collect();
    sys.with_polys(polys)
}

/// Transforms `sys` so that the face selected by `u` becomes the face selected
/// by `-e_d`, every exponent is non-negative, and every facial polynomial has a
/// nonzero constant term.
pub fn normalize_to_direction(
    sys: &PolySystem,
    u: &[i64],
) -> Result<(PolySystem, MonomialChange), AlgebraError> {
    let d = sys.nvars();
    if u.len() != d {
        return Err(AlgebraError::DimensionMismatch {
            expected: d,
            found: u.len(),
        });
    }
    if u.iter().all(|&x| x == 0) {
        return Err(AlgebraError::ZeroDirection);
    }
    let v: Vec<i64> = u.iter().map(|x| -x).collect();
    let mut matrix = intmat::complete_to_unimodular(&v).ok_or(AlgebraError::NonPrimitiveDirection)?;

    let facial_points = |m: &[Vec<i64>]| -> Vec<Vec<Vec<i64>>> {
        sys.polys()
            .iter()
            .map(|f| {
                f.facial_restriction(u)
                    .support()
                    .iter()
                    .map(|e| intmat::mat_vec(m, e))
                    .collect()
            })
            .collect()
    };

    if d >= 3 && !facial_points(&matrix).iter().all(|pts| componentwise_min(pts, d - 1).is_some()) {
        matrix = reorient_hyperplane(&matrix, &facial_points(&matrix), d);
    }

    // shear x_j += c_j x_d so that non-facial terms dominate the facial minimum
    let faces = facial_points(&matrix);
    let mins: Vec<Vec<i64>> = faces
        .iter()
        .map(|pts| componentwise_min(pts, d - 1).expect("reoriented"))
        .collect();
    let mut shear = vec![0i64; d - 1];
    for (f, m) in sys.polys().iter().zip(&mins) {
        for e in f.support() {
            let p = intmat::mat_vec(&matrix, &e);
            let gap = p[d - 1] - m[d - 1];
            if gap == 0 {
                continue;
            }
            debug_assert!(gap > 0);
            for j in 0..d - 1 {
                if p[j] < m[j] {
                    let need = (m[j] - p[j] + gap - 1) / gap;
                    shear[j] = shear[j].max(need);
                }
            }
        }
    }
    for j in 0..d - 1 {
        if shear[j] != 0 {
            let last = matrix[d - 1].clone();
            for (x, y) in matrix[j].iter_mut().zip(last) {
                *x += shear[j] * y;
            }
        }
    }
    let faces = facial_points(&matrix);
    let shifts: Vec<Vec<i64>> = faces
        .iter()
        .map(|pts| {
            componentwise_min(pts, d - 1)
                .expect("shear keeps the minimum")
                .iter()
                .map(|x| -x)
                .collect()
        })
        .collect();
    let t = MonomialChange { matrix, shifts };
    let out = apply_monomial_change(sys, &t)?;
    debug_assert!(is_normalized(&out));
    Ok((out, t))
}

/// Whether `sys` is in the normal form produced by [`normalize_to_direction`]
/// for `u = -e_d`.
pub fn is_normalized(sys: &PolySystem) -> bool {
    let d = sys.nvars();
    let mut dir = vec![0; d];
    dir[d - 1] = -1;
    sys.polys().iter().all(|f| {
        !f.has_negative_exponents()
            && f.facial_restriction(&dir).coeff(&vec![0; d]).is_some()
    })
}

/// The point of `pts` that is componentwise minimal in the first `k`
/// coordinates, if one exists.
fn componentwise_min(pts: &[Vec<i64>], k: usize) -> Option<Vec<i64>> {
    let lo: Vec<i64> = (0..k).map(|j| pts.iter().map(|p| p[j]).min().unwrap()).collect();
    pts.iter().find(|p| p[..k] == lo[..]).cloned()
}

/// Replaces the first `d - 1` rows of `matrix` by a basis of the same lattice
/// complement in which every facial point set has a componentwise minimum.
///
/// A generic `w` picks a unique minimizing point on each face; the new rows
/// are `w` and `M w + c_j` for a completion `{w, c_j}`, with `M` large enough
/// that each row is minimized at the same points as `w`.
fn reorient_hyperplane(matrix: &[Vec<i64>], faces: &[Vec<Vec<i64>>], d: usize) -> Vec<Vec<i64>> {
    let k = d - 1;
    let proj: Vec<Vec<Vec<i64>>> = faces
        .iter()
        .map(|pts| pts.iter().map(|p| p[..k].to_vec()).collect())
        .collect();
    let argmin_unique = |w: &[i64], pts: &[Vec<i64>]| -> Option<Vec<i64>> {
        let vals: Vec<i64> = pts.iter().map(|p| intmat_dot(w, p)).collect();
        let m = *vals.iter().min()?;
        let hits: Vec<&Vec<i64>> = pts.iter().zip(&vals).filter(|(_, &v)| v == m).map(|(p, _)| p).collect();
        hits.windows(2).all(|w| w[0] == w[1]).then(|| hits[0].clone())
    };
    let w = (1i64..)
        .map(|t| (0..k).map(|j| t.pow(j as u32)).collect::<Vec<i64>>())
        .find(|w| proj.iter().all(|pts| argmin_unique(w, pts).is_some()))
        .unwrap();
    let comp = intmat::complete_to_unimodular(&w).expect("w starts with 1");
    let mins: Vec<Vec<i64>> = proj.iter().map(|pts| argmin_unique(&w, pts).unwrap()).collect();
    let good = |r: &[i64]| {
        proj.iter()
            .zip(&mins)
            .all(|(pts, m)| pts.iter().all(|p| intmat_dot(r, p) >= intmat_dot(r, m)))
    };
    let mut rows = vec![w.clone()];
    for c in comp.iter().take(k - 1) {
        let mut big = 0i64;
        loop {
            let r: Vec<i64> = w.iter().zip(c).map(|(a, b)| big * a + b).collect();
            if good(&r) {
                rows.push(r);
                break;
            }
            big += 1;
        }
    }
    // rows act on the first k coordinates of the current exponent image
    let mut out: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            (0..d)
                .map(|col| (0..k).map(|j| r[j] * matrix[j][col]).sum())
                .collect()
        })
        .collect();
    out.push(matrix[d - 1].clone());
    debug_assert_eq!(intmat::det_i64(&out).abs(), 1);
    out
}

fn intmat_dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), GaussianRational::from_integer(*c))),
        )
    }

    fn example_one() -> PolySystem {
        PolySystem::with_default_names(
            2,
            vec![
                p(2, &[(&[0, 0], 2), (&[0, 1], 1), (&[2, 1], -1)]),
                p(2, &[(&[0, 0], 3), (&[0, 1], 1), (&[1, 1], -2), (&[2, 1], 1)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn example_one_normal_form() {
        let (n, t) = normalize_to_direction(&example_one(), &[0, 1]).unwrap();
        assert_eq!(t.matrix, vec![vec![1, 0], vec![0, -1]]);
        assert_eq!(t.shifts, vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(n.polys()[0], p(2, &[(&[0, 0], 1), (&[2, 0], -1), (&[0, 1], 2)]));
        assert_eq!(
            n.polys()[1],
            p(2, &[(&[0, 0], 1), (&[1, 0], -2), (&[2, 0], 1), (&[0, 1], 3)])
        );
    }

    #[test]
    fn already_normal_is_identity() {
        let (n, _) = normalize_to_direction(&example_one(), &[0, 1]).unwrap();
        let (m, t) = normalize_to_direction(&n, &[0, -1]).unwrap();
        assert!(t.is_identity());
        assert_eq!(m, n);
    }

    #[test]
    fn reorientation_for_a_face_without_minimum() {
        // facial part at x3 = 0 is the triangle conv{(1,0),(0,1),(1,1)} shifted,
        // which has no componentwise-minimal vertex
        let f = p(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[1, 1, 0], 1), (&[0, 0, 1], 1)]);
        let g = p(3, &[(&[0, 0, 0], 1), (&[1, 0, 1], 1)]);
        let h = p(3, &[(&[0, 0, 0], 1), (&[0, 1, 2], 1)]);
        let sys = PolySystem::with_default_names(3, vec![f, g, h]).unwrap();
        let (n, t) = normalize_to_direction(&sys, &[0, 0, -1]).unwrap();
        assert!(is_normalized(&n));
        assert_eq!(t.matrix[2], vec![0, 0, 1]);
    }

    #[test]
    fn point_maps_are_inverse() {
        let t = MonomialChange {
            matrix: vec![vec![2, 1], vec![1, 1]],
            shifts: vec![],
        };
        let x = vec![GaussianRational::from_ratio(3, 2), GaussianRational::i()];
        assert_eq!(t.pull_back_point(&t.push_forward_point(&x)), x);
    }

    #[test]
    fn non_unimodular_rejected() {
        let t = MonomialChange {
            matrix: vec![vec![2, 0], vec![0, 1]],
            shifts: vec![vec![0, 0]; 2],
        };
        assert!(matches!(
            apply_monomial_change(&example_one(), &t),
            Err(AlgebraError::NotUnimodular)
        ));
    }
}
