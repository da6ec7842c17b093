use serde::Serialize;

use super::OracleError;
use crate::intmat::complete_to_unimodular;
use crate::polytope::{mixed_volume, LatticePolytope};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub method: &'static str,
    pub inclusion_exclusion: u128,
    pub alternative: u128,
    pub agree: bool,
}

/// Recomputes the mixed volume of a 2- or 3-tuple by a formula that shares
/// no code with the inclusion-exclusion engine: the closed form in the plane,
/// and the decomposition over facet normals `v` of `P_2 + P_3`,
/// `sum_v h_{P_1}(v) MV_{v⊥}(P_2^v, P_3^v)`, in space.
pub fn mv_cross_check(tuple: &[LatticePolytope]) -> Result<CrossCheck, OracleError> {
    let n = tuple.first().map_or(0, |p| p.ambient_dim());
    if !(n == 2 || n == 3) || tuple.len() != n {
        return Err(OracleError::UnsupportedDimension(n.max(tuple.len())));
    }
    let reference = mixed_volume(tuple)?;
    let (method, alternative) = if tuple.iter().any(|p| p.is_empty()) {
        (if n == 2 { "closed_form_2d" } else { "support_decomposition_3d" }, 0)
    } else if n == 2 {
        let m = mixed_area(tuple[0].vertices(), tuple[1].vertices());
        ("closed_form_2d", m)
    } else {
        let m = support_decomposition(tuple[0].vertices(), tuple[1].vertices(), tuple[2].vertices());
        ("support_decomposition_3d", m)
    };
    let alternative = u128::try_from(alternative).expect("mixed volume is non-negative");
    Ok(CrossCheck {
        method,
        inclusion_exclusion: reference,
        alternative,
        agree: reference == alternative,
    })
}

fn cross(o: &[i64; 2], a: &[i64; 2], b: &[i64; 2]) -> i128 {
    (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128 - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
}

/// Twice the area of the convex hull (monotone chain plus shoelace).
pub fn double_area(points: &[[i64; 2]]) -> i128 {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return 0;
    }
    let mut hull: Vec<[i64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[i64; 2]>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while hull.len() >= start + 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(*p);
        }
        hull.pop();
    }
    let m = hull.len();
    let s: i128 = (0..m)
        .map(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % m]);
            a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128
        })
        .sum();
    s.abs()
}

fn to2(v: &[i64]) -> [i64; 2] {
    [v[0], v[1]]
}

fn sums<const N: usize>(a: &[[i64; N]], b: &[[i64; N]]) -> Vec<[i64; N]> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            let mut s = [0; N];
            for k in 0..N {
                s[k] = p[k] + q[k];
            }
            out.push(s);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `(A(P + Q) - A(P) - A(Q)) / 2` with `A` twice the area.
fn mixed_area_pts(p: &[[i64; 2]], q: &[[i64; 2]]) -> i128 {
    let s = double_area(&sums(p, q)) - double_area(p) - double_area(q);
    debug_assert_eq!(s % 2, 0);
    s / 2
}

pub fn mixed_area(p: &[Vec<i64>], q: &[Vec<i64>]) -> i128 {
    let p: Vec<[i64; 2]> = p.iter().map(|v| to2(v)).collect();
    let q: Vec<[i64; 2]> = q.iter().map(|v| to2(v)).collect();
    mixed_area_pts(&p, &q)
}

fn sub3(a: &[i64; 3], b: &[i64; 3]) -> [i64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross3(a: &[i64; 3], b: &[i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: &[i64; 3], b: &[i64; 3]) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn primitive3(v: [i64; 3]) -> [i64; 3] {
    let g = v.iter().fold(0i64, |g, &x| num_integer::Integer::gcd(&g, &x));
    [v[0] / g, v[1] / g, v[2] / g]
}

/// Outer normals `v` such that the face of `conv(points)` maximizing `v` is
/// two-dimensional, by brute force over point triples.
fn two_dimensional_face_normals(points: &[[i64; 3]]) -> Vec<[i64; 3]> {
    let n = points.len();
    let mut normals = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let c = cross3(&sub3(&points[j], &points[i]), &sub3(&points[k], &points[i]));
                if c == [0, 0, 0] {
                    continue;
                }
                let c = primitive3(c);
                let h = dot3(&c, &points[i]);
                let above = points.iter().any(|p| dot3(&c, p) > h);
                let below = points.iter().any(|p| dot3(&c, p) < h);
                if !above {
                    normals.push(c);
                }
                if !below {
                    normals.push([-c[0], -c[1], -c[2]]);
                }
            }
        }
    }
    normals.sort();
    normals.dedup();
    normals
}

fn support_decomposition(p1: &[Vec<i64>], p2: &[Vec<i64>], p3: &[Vec<i64>]) -> i128 {
    let to3 = |vs: &[Vec<i64>]| -> Vec<[i64; 3]> { vs.iter().map(|v| [v[0], v[1], v[2]]).collect() };
    let (a, b, c) = (to3(p1), to3(p2), to3(p3));
    let sum = sums(&b, &c);
    let mut total: i128 = 0;
    for v in two_dimensional_face_normals(&sum) {
        let face = |pts: &[[i64; 3]]| -> Vec<[i64; 3]> {
            let h = pts.iter().map(|p| dot3(&v, p)).max().unwrap();
            pts.iter().copied().filter(|p| dot3(&v, p) == h).collect()
        };
        let u = complete_to_unimodular(&v).expect("primitive normal");
        let proj = |pts: Vec<[i64; 3]>| -> Vec<[i64; 2]> {
            pts.iter()
                .map(|p| [dot3(&[u[0][0], u[0][1], u[0][2]], p), dot3(&[u[1][0], u[1][1], u[1][2]], p)])
                .collect()
        };
        let m = mixed_area_pts(&proj(face(&b)), &proj(face(&c)));
        if m == 0 {
            continue;
        }
        let h = a.iter().map(|p| dot3(&v, p)).max().unwrap() as i128;
        total += h * m;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::convex_hull(&pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn example_one_pair() {
        let p = poly(&[&[0, 0], &[0, 1], &[2, 1]]);
        let c = mv_cross_check(&[p.clone(), p]).unwrap();
        assert_eq!((c.inclusion_exclusion, c.alternative), (2, 2));
    }

    #[test]
    fn unit_segments_in_space() {
        let t: Vec<_> = (0..3).map(|i| LatticePolytope::unit_segment(3, i)).collect();
        let c = mv_cross_check(&t).unwrap();
        assert!(c.agree);
        assert_eq!(c.alternative, 1);
    }

    #[test]
    fn cubes() {
        let t = vec![LatticePolytope::unit_cube(3); 3];
        assert_eq!(mv_cross_check(&t).unwrap().alternative, 6);
    }

    #[test]
    fn lifted_example_one_triple() {
        // y(1 + x1)x2 + 2, y(1 - x1)x2 + 3, y - (1 - x1) in (x1, x2, y)
        let p1 = poly(&[&[0, 1, 1], &[1, 1, 1], &[0, 0, 0]]);
        let p3 = poly(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]);
        let c = mv_cross_check(&[p1.clone(), p1, p3]).unwrap();
        assert!(c.agree, "{c:?}");
        assert_eq!(c.alternative, 1);
    }

    #[test]
    fn wrong_dimension() {
        let t = vec![LatticePolytope::unit_cube(4); 4];
        assert!(matches!(mv_cross_check(&t), Err(OracleError::UnsupportedDimension(4))));
    }
}
