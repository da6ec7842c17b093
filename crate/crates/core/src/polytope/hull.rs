//! Exact convex hulls of integer point sets in any dimension.
//!
//! The point set is first reduced to its affine hull: the differences to a
//! base point span a lattice subspace `L`, and coordinates are projected onto
//! a set of columns on which `L` projects injectively. In those coordinates the
//! set is full-dimensional and an incremental beneath-beyond construction
//! maintains a simplicial triangulation of the boundary. Simplices lying on a
//! common hyperplane are merged into true facets afterwards.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::intmat::{self, EchelonBasis};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Primitive outer normal lying in the linear span of the polytope.
    pub normal: Vec<i64>,
    pub offset: i64,
    /// Indices into the vertex list.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct HullData {
    pub affine_dim: usize,
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<Facet>,
    /// `(c, b)` with `<c, x> = b` on the affine hull; a basis of the complement.
    pub equations: Vec<(Vec<i64>, i64)>,
    /// `n!` times the Euclidean volume; zero unless full-dimensional.
    pub normalized_volume: u128,
}

struct Simplex {
    verts: Vec<usize>,
    normal: Vec<i128>,
    offset: i128,
}

pub(crate) fn compute_hull(points: &[Vec<i64>], n: usize) -> HullData {
    let pts: Vec<Vec<i64>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    assert!(!pts.is_empty());
    let p0 = &pts[0];
    let mut basis = EchelonBasis::new(n);
    let mut simplex = vec![0usize];
    for (idx, p) in pts.iter().enumerate().skip(1) {
        let d: Vec<i128> = p.iter().zip(p0).map(|(a, b)| (a - b) as i128).collect();
        if basis.insert(&d) {
            simplex.push(idx);
        }
    }
    let k = basis.rank();
    let equations: Vec<(Vec<i64>, i64)> = basis
        .orthogonal_complement()
        .into_iter()
        .map(|c| {
            let c: Vec<i64> = c.iter().map(|&x| x as i64).collect();
            let b = dot64(&c, p0);
            (c, b)
        })
        .collect();
    if k == 0 {
        return HullData {
            affine_dim: 0,
            vertices: pts,
            facets: Vec::new(),
            equations,
            normalized_volume: if n == 0 { 1 } else { 0 },
        };
    }
    let mut cols: Vec<usize> = basis.pivots().to_vec();
    cols.sort_unstable();
    let proj: Vec<Vec<i128>> = pts
        .iter()
        .map(|p| cols.iter().map(|&c| (p[c] - p0[c]) as i128).collect())
        .collect();

    let simplices = boundary_triangulation(&proj, &simplex, k);

    let normalized_volume = if k == n {
        let apex = simplices[0].verts[0];
        simplices
            .iter()
            .filter(|s| !s.verts.contains(&apex))
            .map(|s| {
                let m: Vec<Vec<i128>> = s
                    .verts
                    .iter()
                    .map(|&v| proj[v].iter().zip(&proj[apex]).map(|(a, b)| a - b).collect())
                    .collect();
                intmat::det(&m).unsigned_abs()
            })
            .sum()
    } else {
        0
    };

    // merge coplanar simplices into facets
    let mut planes: BTreeMap<(Vec<i128>, i128), ()> = BTreeMap::new();
    let mut candidates: BTreeSet<usize> = BTreeSet::new();
    for s in &simplices {
        planes.insert((s.normal.clone(), s.offset), ());
        candidates.extend(s.verts.iter().copied());
    }
    let planes: Vec<(Vec<i128>, i128)> = planes.into_keys().collect();
    let incident: Vec<Vec<usize>> = candidates
        .iter()
        .map(|&c| {
            planes
                .iter()
                .enumerate()
                .filter(|(_, (a, b))| intmat::dot(a, &proj[c]) == *b)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let mut vertex_ids = Vec::new();
    for (&c, inc) in candidates.iter().zip(&incident) {
        let normals: Vec<Vec<i128>> = inc.iter().map(|&j| planes[j].0.clone()).collect();
        if intmat::rank(&normals, k) == k {
            vertex_ids.push(c);
        }
    }
    // `pts` is sorted, so `vertex_ids` (ascending) yields sorted vertices
    let vertices: Vec<Vec<i64>> = vertex_ids.iter().map(|&c| pts[c].clone()).collect();
    let lift = NormalLift::new(&basis, &cols, n);
    let facets = planes
        .iter()
        .map(|(a, b)| {
            let on: Vec<usize> = vertex_ids
                .iter()
                .enumerate()
                .filter(|(_, &c)| intmat::dot(a, &proj[c]) == *b)
                .map(|(i, _)| i)
                .collect();
            let normal = lift.lift(a);
            let offset = dot64(&normal, &vertices[on[0]]);
            Facet {
                normal,
                offset,
                vertices: on,
            }
        })
        .collect();
    HullData {
        affine_dim: k,
        vertices,
        facets,
        equations,
        normalized_volume,
    }
}

fn dot64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Beneath-beyond over full-dimensional points in `Z^k`, starting from the
/// affinely independent indices in `simplex`.
fn boundary_triangulation(pts: &[Vec<i128>], simplex: &[usize], k: usize) -> Vec<Simplex> {
    // k+1 times the centroid of the initial simplex: strictly interior forever
    let mut center = vec![0i128; k];
    for &s in simplex {
        for (c, x) in center.iter_mut().zip(&pts[s]) {
            *c += x;
        }
    }
    let scale = (k + 1) as i128;
    let make = |mut verts: Vec<usize>| -> Simplex {
        verts.sort_unstable();
        let mut b = EchelonBasis::new(k);
        for &v in &verts[1..] {
            let d: Vec<i128> = pts[v].iter().zip(&pts[verts[0]]).map(|(a, b)| a - b).collect();
            b.insert(&d);
        }
        let mut normal = b.orthogonal_complement().pop().expect("simplex facet spans a hyperplane");
        let mut offset = intmat::dot(&normal, &pts[verts[0]]);
        if intmat::dot(&normal, &center) > intmat::mul(offset, scale) {
            normal.iter_mut().for_each(|x| *x = -*x);
            offset = -offset;
        }
        Simplex { verts, normal, offset }
    };

    let mut facets: Vec<Simplex> = (0..=k)
        .map(|skip| {
            simplex
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &v)| v)
                .collect()
        })
        .map(make)
        .collect();
    let in_simplex: BTreeSet<usize> = simplex.iter().copied().collect();
    for p in (0..pts.len()).filter(|i| !in_simplex.contains(i)) {
        let visible: Vec<bool> = facets
            .iter()
            .map(|f| intmat::dot(&f.normal, &pts[p]) > f.offset)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for f in facets.iter().zip(&visible).filter(|(_, &v)| v).map(|(f, _)| f) {
            for skip in 0..f.verts.len() {
                let r: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *ridges.entry(r).or_insert(0) += 1;
            }
        }
        let mut kept: Vec<Simplex> = facets
            .into_iter()
            .zip(visible)
            .filter(|(_, v)| !v)
            .map(|(f, _)| f)
            .collect();
        let mut horizon: Vec<Vec<usize>> = ridges
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort();
        for mut r in horizon {
            r.push(p);
            kept.push(make(r));
        }
        facets = kept;
    }
    facets
}

/// Turns a functional on the projected coordinates into the unique vector of
/// the linear span `L` inducing the same functional on `L`.
struct NormalLift {
    rows: Vec<Vec<BigRational>>,
    cols: Vec<usize>,
    n: usize,
    full: bool,
}

impl NormalLift {
    fn new(basis: &EchelonBasis, cols: &[usize], n: usize) -> Self {
        let k = cols.len();
        let full = k == n;
        let rows = if full { Vec::new() } else { span_rows(basis, n) };
        Self {
            rows,
            cols: cols.to_vec(),
            n,
            full,
        }
    }

    fn lift(&self, a: &[i128]) -> Vec<i64> {
        if self.full {
            return a.iter().map(|&x| x as i64).collect();
        }
        let k = self.rows.len();
        // Gram system: (B B^T) c = B_cols a
        let mut m: Vec<Vec<BigRational>> = (0..k)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..k)
                    .map(|j| {
                        self.rows[i]
                            .iter()
                            .zip(&self.rows[j])
                            .map(|(x, y)| x * y)
                            .fold(BigRational::zero(), |s, t| s + t)
                    })
                    .collect();
                let rhs = self
                    .cols
                    .iter()
                    .zip(a)
                    .map(|(&c, &x)| &self.rows[i][c] * BigRational::from_integer(BigInt::from(x)))
                    .fold(BigRational::zero(), |s, t| s + t);
                row.push(rhs);
                row
            })
            .collect();
        for col in 0..k {
            let piv = (col..k).find(|&r| !m[r][col].is_zero()).expect("Gram matrix is nonsingular");
            m.swap(col, piv);
            let inv = BigRational::from_integer(1.into()) / &m[col][col];
            for x in m[col].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot = m[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot) {
                        *x = &*x - &f * p;
                    }
                }
            }
        }
        let coef: Vec<BigRational> = m.iter().map(|r| r[k].clone()).collect();
        let v: Vec<BigRational> = (0..self.n)
            .map(|j| {
                coef.iter()
                    .zip(&self.rows)
                    .map(|(c, r)| c * &r[j])
                    .fold(BigRational::zero(), |s, t| s + t)
            })
            .collect();
        let l = v.iter().fold(BigInt::from(1), |l, r| l.lcm(r.denom()));
        let ints: Vec<BigInt> = v.iter().map(|r| r.numer() * (&l / r.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        ints.iter()
            .map(|x| (x / &g).to_i64().expect("normal fits in i64"))
            .collect()
    }
}

fn span_rows(basis: &EchelonBasis, n: usize) -> Vec<Vec<BigRational>> {
    // the complement of the complement is the span itself
    let comp = basis.orthogonal_complement();
    let mut b2 = EchelonBasis::new(n);
    for c in &comp {
        b2.insert(c);
    }
    b2.orthogonal_complement()
        .into_iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_with_interior_and_edge_points() {
        let pts: Vec<Vec<i64>> = (0..3).flat_map(|x| (0..3).map(move |y| vec![x, y])).collect();
        let h = compute_hull(&pts, 2);
        assert_eq!(h.vertices, vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]]);
        assert_eq!(h.facets.len(), 4);
        assert_eq!(h.normalized_volume, 8);
    }

    #[test]
    fn segment_in_space() {
        let pts = vec![vec![0, 0, 1], vec![1, 1, 1], vec![2, 2, 1], vec![3, 3, 1]];
        let h = compute_hull(&pts, 3);
        assert_eq!(h.affine_dim, 1);
        assert_eq!(h.vertices, vec![vec![0, 0, 1], vec![3, 3, 1]]);
        assert_eq!(h.equations.len(), 2);
        for f in &h.facets {
            // normals lie along the segment direction
            assert_eq!(f.normal[0], f.normal[1]);
            assert_eq!(f.normal[2], 0);
        }
    }

    #[test]
    fn tilted_triangle_in_space() {
        let pts = vec![vec![0, 0, 0], vec![2, 0, 1], vec![0, 2, 1], vec![1, 1, 1]];
        let h = compute_hull(&pts, 3);
        assert_eq!(h.affine_dim, 2);
        assert_eq!(h.vertices.len(), 3);
        assert_eq!(h.facets.len(), 3);
        for f in &h.facets {
            for &v in &f.vertices {
                assert_eq!(dot64(&f.normal, &h.vertices[v]), f.offset);
            }
            for v in &h.vertices {
                assert!(dot64(&f.normal, v) <= f.offset);
            }
        }
    }

    #[test]
    fn cube_volume() {
        let pts: Vec<Vec<i64>> = (0..8).map(|m| (0..3).map(|b| (m >> b) & 1).collect()).collect();
        let h = compute_hull(&pts, 3);
        assert_eq!(h.normalized_volume, 6);
        assert_eq!(h.facets.len(), 6);
        assert_eq!(h.vertices.len(), 8);
    }
}
