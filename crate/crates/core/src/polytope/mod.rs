//! Lattice polytopes: hulls, faces, Minkowski sums, volumes and mixed volumes.

mod essential;
mod fan;
mod hull;
mod volume;

use std::fmt;
use std::ops::Deref;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use essential::is_essential;
pub use fan::enumerate_fan_directions;
pub use hull::Facet;
pub use volume::mixed_volume;

use hull::HullData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("empty point set")]
    Empty,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("mixed volume in dimension {dim} needs {dim} polytopes, got {found}")]
    Arity { dim: usize, found: usize },
    #[error("{found} polytopes cannot be essential in dimension {dim}")]
    TooMany { dim: usize, found: usize },
    #[error("direction is zero")]
    ZeroDirection,
    #[error("direction is not primitive")]
    NotPrimitive,
    #[error("polytope {index} is not contained in its counterpart")]
    NotContained { index: usize },
}

/// A nonzero primitive integer vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Direction(Vec<i64>);

impl Direction {
    pub fn new(v: Vec<i64>) -> Result<Self, PolytopeError> {
        let g = v.iter().fold(0i64, |g, x| g.gcd(x));
        match g {
            0 => Err(PolytopeError::ZeroDirection),
            1 => Ok(Self(v)),
            _ => Err(PolytopeError::NotPrimitive),
        }
    }

    /// Divides out the content of `v`.
    pub fn primitive(v: &[i64]) -> Result<Self, PolytopeError> {
        let g = v.iter().fold(0i64, |g, x| g.gcd(x));
        if g == 0 {
            return Err(PolytopeError::ZeroDirection);
        }
        Ok(Self(v.iter().map(|x| x / g).collect()))
    }

    /// `-e_i` in dimension `n` (0-based `i`).
    pub fn neg_unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = -1;
        Self(v)
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }
}

impl Deref for Direction {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl std::ops::Neg for &Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Convex hull of finitely many integer points; possibly empty.
///
/// Vertices are stored sorted, so structural equality is geometric equality.
#[derive(Clone)]
pub struct LatticePolytope {
    ambient: usize,
    hull: Option<Arc<HullData>>,
    lattice_points: Arc<OnceLock<Vec<Vec<i64>>>>,
}

impl LatticePolytope {
    pub fn convex_hull(points: &[Vec<i64>]) -> Result<Self, PolytopeError> {
        let n = points.first().ok_or(PolytopeError::Empty)?.len();
        Self::convex_hull_in(n, points)
    }

    /// Like [`Self::convex_hull`] with an explicit ambient dimension, so that
    /// an empty input gives the empty polytope.
    pub fn convex_hull_in(n: usize, points: &[Vec<i64>]) -> Result<Self, PolytopeError> {
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(PolytopeError::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        if points.is_empty() {
            return Err(PolytopeError::Empty);
        }
        Ok(Self {
            ambient: n,
            hull: Some(Arc::new(hull::compute_hull(points, n))),
            lattice_points: Arc::default(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            ambient: n,
            hull: None,
            lattice_points: Arc::default(),
        }
    }

    pub fn point(p: Vec<i64>) -> Self {
        Self::convex_hull(&[p]).unwrap()
    }

    /// `[0, e_i]` in dimension `n`.
    pub fn unit_segment(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::convex_hull(&[vec![0; n], e]).unwrap()
    }

    /// `[0, 1]^n`.
    pub fn unit_cube(n: usize) -> Self {
        let pts: Vec<Vec<i64>> = (0..1u32 << n)
            .map(|m| (0..n).map(|b| ((m >> b) & 1) as i64).collect())
            .collect();
        Self::convex_hull(&pts).unwrap()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_empty(&self) -> bool {
        self.hull.is_none()
    }

    /// Dimension of the affine hull; `None` for the empty polytope.
    pub fn dim(&self) -> Option<usize> {
        self.hull.as_ref().map(|h| h.affine_dim)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == Some(self.ambient)
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        self.hull.as_ref().map(|h| h.vertices.as_slice()).unwrap_or(&[])
    }

    /// Facets of the polytope relative to its affine hull.
    pub fn facets(&self) -> &[Facet] {
        self.hull.as_ref().map(|h| h.facets.as_slice()).unwrap_or(&[])
    }

    /// Equations `<c, x> = b` cutting out the affine hull.
    pub fn equations(&self) -> &[(Vec<i64>, i64)] {
        self.hull.as_ref().map(|h| h.equations.as_slice()).unwrap_or(&[])
    }

    /// `n!` times the Euclidean volume; zero unless full-dimensional.
    pub fn normalized_volume(&self) -> u128 {
        self.hull.as_ref().map(|h| h.normalized_volume).unwrap_or(0)
    }

    /// `max <v, x>` over the polytope; `None` when empty.
    pub fn support_value(&self, v: &[i64]) -> Option<i64> {
        self.vertices().iter().map(|p| dot(p, v)).max()
    }

    /// The face maximizing `<u, .>`.
    pub fn face(&self, u: &[i64]) -> Self {
        let Some(h) = self.support_value(u) else {
            return self.clone();
        };
        let pts: Vec<Vec<i64>> = self.vertices().iter().filter(|p| dot(p, u) == h).cloned().collect();
        Self::convex_hull(&pts).unwrap()
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self, PolytopeError> {
        if self.ambient != other.ambient {
            return Err(PolytopeError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(self.ambient));
        }
        let mut pts = Vec::with_capacity(self.vertices().len() * other.vertices().len());
        for a in self.vertices() {
            for b in other.vertices() {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Self::convex_hull(&pts)
    }

    /// Coordinate projection onto the listed coordinates, in the given order.
    pub fn project(&self, keep: &[usize]) -> Self {
        if self.is_empty() {
            return Self::empty(keep.len());
        }
        let pts: Vec<Vec<i64>> = self
            .vertices()
            .iter()
            .map(|p| keep.iter().map(|&c| p[c]).collect())
            .collect();
        Self::convex_hull_in(keep.len(), &pts).unwrap()
    }

    /// Image under `x -> A x + b`.
    pub fn affine_image(&self, a: &[Vec<i64>], b: &[i64]) -> Self {
        if self.is_empty() {
            return Self::empty(a.len());
        }
        let pts: Vec<Vec<i64>> = self
            .vertices()
            .iter()
            .map(|p| {
                a.iter()
                    .zip(b)
                    .map(|(row, s)| dot(row, p) + s)
                    .collect()
            })
            .collect();
        Self::convex_hull_in(a.len(), &pts).unwrap()
    }

    pub fn translate(&self, t: &[i64]) -> Self {
        let id = crate::intmat::identity(self.ambient);
        self.affine_image(&id, t)
    }

    /// Appends zero coordinates up to dimension `n`.
    pub fn embed(&self, n: usize) -> Self {
        if self.is_empty() {
            return Self::empty(n);
        }
        let pts: Vec<Vec<i64>> = self
            .vertices()
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.resize(n, 0);
                q
            })
            .collect();
        Self::convex_hull_in(n, &pts).unwrap()
    }

    pub fn contains_point(&self, p: &[i64]) -> bool {
        let Some(h) = &self.hull else {
            return false;
        };
        if h.affine_dim == 0 {
            return h.vertices[0] == p;
        }
        h.equations.iter().all(|(c, b)| dot(c, p) == *b)
            && h.facets.iter().all(|f| dot(&f.normal, p) <= f.offset)
    }

    /// Does `self` contain every vertex of `other`?
    pub fn contains(&self, other: &Self) -> bool {
        other.vertices().iter().all(|v| self.contains_point(v))
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let vs = self.vertices();
        if vs.is_empty() {
            return None;
        }
        let lo = (0..self.ambient).map(|j| vs.iter().map(|v| v[j]).min().unwrap()).collect();
        let hi = (0..self.ambient).map(|j| vs.iter().map(|v| v[j]).max().unwrap()).collect();
        Some((lo, hi))
    }

    /// All integer points, in lexicographic order. Cached.
    pub fn lattice_points(&self) -> &[Vec<i64>] {
        self.lattice_points.get_or_init(|| {
            let Some((lo, hi)) = self.bounding_box() else {
                return Vec::new();
            };
            let mut out = Vec::new();
            let mut cur = lo.clone();
            loop {
                if self.contains_point(&cur) {
                    out.push(cur.clone());
                }
                // odometer, last coordinate fastest
                let mut j = self.ambient;
                loop {
                    if j == 0 {
                        return out;
                    }
                    j -= 1;
                    if cur[j] < hi[j] {
                        cur[j] += 1;
                        break;
                    }
                    cur[j] = lo[j];
                }
            }
        })
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices() == other.vertices()
    }
}

impl Eq for LatticePolytope {}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "conv{{}} in R^{}", self.ambient);
        }
        write!(f, "conv{:?}", self.vertices())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::convex_hull(&pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn example_one_hull_and_face() {
        let p = poly(&[&[0, 0], &[0, 1], &[1, 1], &[2, 1]]);
        assert_eq!(p.vertices(), &[vec![0, 0], vec![0, 1], vec![2, 1]]);
        assert_eq!(p.normalized_volume(), 2);
        assert_eq!(p.face(&[0, 1]), poly(&[&[0, 1], &[2, 1]]));
        assert_eq!(p.support_value(&[0, 1]), Some(1));
        assert_eq!(p.minkowski_sum(&p).unwrap().normalized_volume(), 8);
    }

    #[test]
    fn trivial_shapes() {
        assert!(LatticePolytope::convex_hull(&[]).is_err());
        let pt = poly(&[&[3, -1]]);
        assert_eq!(pt.vertices(), &[vec![3, -1]]);
        assert_eq!(pt.normalized_volume(), 0);
        assert_eq!(poly(&[&[0, 0], &[5, 1]]).normalized_volume(), 0);
        for n in 1..=4 {
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(LatticePolytope::unit_cube(n).normalized_volume(), fact);
        }
        let cube = LatticePolytope::unit_cube(3);
        assert_eq!(cube.face(&[0, 0, 1]).vertices().len(), 4);
    }

    #[test]
    fn sums_and_projection() {
        let t = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(t.minkowski_sum(&t).unwrap(), poly(&[&[0, 0], &[2, 0], &[0, 2]]));
        let sq = LatticePolytope::unit_segment(2, 0)
            .minkowski_sum(&LatticePolytope::unit_segment(2, 1))
            .unwrap();
        assert_eq!(sq, LatticePolytope::unit_cube(2));
        let seg = poly(&[&[0, 0, 1], &[2, 0, 0]]);
        assert_eq!(seg.project(&[0, 1]), poly(&[&[0, 0], &[2, 0]]));
        assert_eq!(seg.project(&[0, 1, 2]), seg);
        assert!(LatticePolytope::empty(2).minkowski_sum(&t).unwrap().is_empty());
    }

    #[test]
    fn lattice_points_of_triangle() {
        let t = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert_eq!(t.lattice_points().len(), 6);
        let tilted = poly(&[&[0, 0, 0], &[2, 2, 2]]);
        assert_eq!(tilted.lattice_points().len(), 3);
    }

    #[test]
    fn direction_validation() {
        assert!(Direction::new(vec![0, 0]).is_err());
        assert!(Direction::new(vec![2, 4]).is_err());
        assert_eq!(Direction::primitive(&[2, -4]).unwrap().as_slice(), &[1, -2]);
    }
}
