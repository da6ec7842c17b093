use crate::intmat::EchelonBasis;

use super::{LatticePolytope, PolytopeError};

/// Whether the tuple admits linearly independent segments `s_i ⊆ P_i`.
///
/// Tested through the rank condition: no nonempty subset `I` may have
/// `dim(sum_{i in I} P_i) < |I|`. Empty members make the tuple inessential.
pub fn is_essential(tuple: &[LatticePolytope]) -> Result<bool, PolytopeError> {
    let Some(first) = tuple.first() else {
        return Ok(true);
    };
    let n = first.ambient_dim();
    if let Some(p) = tuple.iter().find(|p| p.ambient_dim() != n) {
        return Err(PolytopeError::DimensionMismatch {
            expected: n,
            found: p.ambient_dim(),
        });
    }
    let k = tuple.len();
    if k > n {
        return Err(PolytopeError::TooMany { dim: n, found: k });
    }
    if tuple.iter().any(|p| p.is_empty()) {
        return Ok(false);
    }
    let spans: Vec<Vec<Vec<i128>>> = tuple
        .iter()
        .map(|p| {
            let vs = p.vertices();
            vs[1..]
                .iter()
                .map(|v| v.iter().zip(&vs[0]).map(|(a, b)| (a - b) as i128).collect())
                .collect()
        })
        .collect();
    for mask in 1u64..1 << k {
        let mut b = EchelonBasis::new(n);
        for (i, span) in spans.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for v in span {
                    b.insert(v);
                }
            }
        }
        if b.rank() < mask.count_ones() as usize {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segments() {
        let a = LatticePolytope::unit_segment(2, 0);
        let b = LatticePolytope::unit_segment(2, 1);
        assert!(is_essential(&[a.clone(), b]).unwrap());
        assert!(!is_essential(&[a.clone(), a.clone()]).unwrap());
        assert!(is_essential(std::slice::from_ref(&a)).unwrap());
        assert!(!is_essential(&[LatticePolytope::point(vec![1, 1])]).unwrap());
        assert!(is_essential(&[a.clone(), a.clone(), a]).is_err());
    }
}
