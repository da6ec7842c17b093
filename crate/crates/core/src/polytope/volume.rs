use std::collections::HashMap;

use rayon::prelude::*;

use super::{LatticePolytope, PolytopeError};

/// Normalized mixed volume of `n` polytopes in `R^n` by inclusion-exclusion:
///
/// `MV = (1/n!) sum_{S} (-1)^(n-|S|) Vol_n(sum_{i in S} P_i)`
///
/// where `Vol_n` is the normalized volume. Partial sums are built layer by
/// layer from the sums one element smaller, each layer in parallel.
pub fn mixed_volume(tuple: &[LatticePolytope]) -> Result<u128, PolytopeError> {
    let n = tuple.first().map(|p| p.ambient_dim()).unwrap_or(0);
    if tuple.len() != n {
        return Err(PolytopeError::Arity {
            dim: n,
            found: tuple.len(),
        });
    }
    if let Some(p) = tuple.iter().find(|p| p.ambient_dim() != n) {
        return Err(PolytopeError::DimensionMismatch {
            expected: n,
            found: p.ambient_dim(),
        });
    }
    if n == 0 {
        return Ok(1);
    }
    if tuple.iter().any(|p| p.is_empty()) {
        return Ok(0);
    }
    assert!(n < 32, "mixed volume limited to dimension < 32");
    let mut prev: HashMap<u32, LatticePolytope> = HashMap::new();
    let mut total: i128 = 0;
    for size in 1..=n {
        let masks: Vec<u32> = (1u32..1 << n).filter(|m| m.count_ones() as usize == size).collect();
        let layer: Vec<(u32, LatticePolytope)> = masks
            .par_iter()
            .map(|&m| {
                let low = m.trailing_zeros() as usize;
                let rest = m & (m - 1);
                let sum = if rest == 0 {
                    tuple[low].clone()
                } else {
                    prev[&rest].minkowski_sum(&tuple[low]).expect("dimensions checked")
                };
                (m, sum)
            })
            .collect();
        for (_, s) in &layer {
            let v = s.normalized_volume() as i128;
            if (n - size).is_multiple_of(2) {
                total += v;
            } else {
                total -= v;
            }
        }
        prev = layer.into_iter().collect();
    }
    let fact: i128 = (1..=n as i128).product();
    assert!(total >= 0 && total % fact == 0, "inclusion-exclusion gave {total}");
    Ok((total / fact) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::convex_hull(&pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn small_values() {
        let p = poly(&[&[0, 0], &[0, 1], &[2, 1]]);
        assert_eq!(mixed_volume(&[p.clone(), p]).unwrap(), 2);
        let s = [LatticePolytope::unit_segment(2, 0), LatticePolytope::unit_segment(2, 1)];
        assert_eq!(mixed_volume(&s).unwrap(), 1);
        let par = [LatticePolytope::unit_segment(2, 0), LatticePolytope::unit_segment(2, 0)];
        assert_eq!(mixed_volume(&par).unwrap(), 0);
        assert!(matches!(
            mixed_volume(&s[..1]),
            Err(PolytopeError::Arity { dim: 2, found: 1 })
        ));
    }

    #[test]
    fn diagonal_equals_volume() {
        let p = poly(&[&[0, 0, 0], &[2, 0, 1], &[0, 3, 0], &[1, 1, 2], &[0, 0, 1]]);
        let mv = mixed_volume(&[p.clone(), p.clone(), p.clone()]).unwrap();
        assert_eq!(mv, p.normalized_volume());
    }
}
