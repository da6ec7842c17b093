use std::collections::{BTreeSet, HashSet};

use super::{Direction, LatticePolytope, PolytopeError};

/// One primitive relative-interior representative for every nonzero cone of
/// the normal fan of the Minkowski sum of `tuple`, sorted.
///
/// Faces of the sum are the nonempty intersections of facet vertex sets; the
/// representative of a face is the sum of the outer normals of the facets
/// containing it. If the sum is not full-dimensional, the normal cone of the
/// whole polytope is the orthogonal complement of its affine hull, represented
/// by the first equation normal.
pub fn enumerate_fan_directions(tuple: &[LatticePolytope]) -> Result<Vec<Direction>, PolytopeError> {
    let first = tuple.first().ok_or(PolytopeError::Empty)?;
    let mut sum = first.clone();
    for p in &tuple[1..] {
        sum = sum.minkowski_sum(p)?;
    }
    if sum.is_empty() {
        return Err(PolytopeError::Empty);
    }
    let facets = sum.facets();
    let facet_sets: Vec<BTreeSet<usize>> = facets
        .iter()
        .map(|f| f.vertices.iter().copied().collect())
        .collect();
    let mut faces: HashSet<BTreeSet<usize>> = facet_sets.iter().cloned().collect();
    let mut frontier: Vec<BTreeSet<usize>> = facet_sets.clone();
    while let Some(face) = frontier.pop() {
        for f in &facet_sets {
            let meet: BTreeSet<usize> = face.intersection(f).copied().collect();
            if !meet.is_empty() && faces.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    let mut out: BTreeSet<Direction> = BTreeSet::new();
    for face in &faces {
        let mut v = vec![0i64; sum.ambient_dim()];
        for (f, set) in facets.iter().zip(&facet_sets) {
            if face.is_subset(set) {
                for (x, y) in v.iter_mut().zip(&f.normal) {
                    *x += y;
                }
            }
        }
        out.insert(Direction::primitive(&v)?);
    }
    if let Some((c, _)) = sum.equations().first() {
        out.insert(Direction::primitive(c)?);
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_and_square() {
        let seg = LatticePolytope::unit_segment(1, 0);
        let dirs: Vec<Vec<i64>> = enumerate_fan_directions(&[seg])
            .unwrap()
            .into_iter()
            .map(|d| d.into_vec())
            .collect();
        assert_eq!(dirs, vec![vec![-1], vec![1]]);
        let sq = LatticePolytope::unit_cube(2);
        assert_eq!(enumerate_fan_directions(&[sq]).unwrap().len(), 8);
        let sq2 = [LatticePolytope::unit_segment(2, 0), LatticePolytope::unit_segment(2, 1)];
        assert_eq!(enumerate_fan_directions(&sq2).unwrap().len(), 8);
    }

    #[test]
    fn example_one_contains_critical_direction() {
        let p = LatticePolytope::convex_hull(&[vec![0, 0], vec![0, 1], vec![2, 1]]).unwrap();
        let dirs = enumerate_fan_directions(&[p.clone(), p]).unwrap();
        assert!(dirs.iter().any(|d| d.as_slice() == [0, 1]));
        assert_eq!(dirs.len(), 6);
    }
}
