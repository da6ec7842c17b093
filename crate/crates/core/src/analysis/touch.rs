use serde::Serialize;
use thiserror::Error;

use crate::polytope::{enumerate_fan_directions, is_essential, Direction, LatticePolytope, PolytopeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TouchError {
    #[error("tuples differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("polytope {index} of the second tuple is not contained in the first")]
    NotContained { index: usize },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TouchSet {
    pub u: Vec<i64>,
    /// Indices `i` with `P_i'` meeting the face `P_i^u`.
    pub indices: Vec<usize>,
}

fn check_contained(p: &[LatticePolytope], q: &[LatticePolytope]) -> Result<(), TouchError> {
    if p.len() != q.len() {
        return Err(TouchError::LengthMismatch(p.len(), q.len()));
    }
    for (index, (a, b)) in p.iter().zip(q).enumerate() {
        if !a.contains(b) {
            return Err(TouchError::NotContained { index });
        }
    }
    Ok(())
}

/// Since `P_i' ⊆ P_i`, the two meet on `P_i^u` exactly when their support
/// functions agree at `u`.
fn touching(p: &[LatticePolytope], q: &[LatticePolytope], u: &[i64]) -> Vec<usize> {
    p.iter()
        .zip(q)
        .enumerate()
        .filter(|(_, (a, b))| b.support_value(u).is_some() && b.support_value(u) == a.support_value(u))
        .map(|(i, _)| i)
        .collect()
}

pub fn touch_set(
    original: &[LatticePolytope],
    shrunken: &[LatticePolytope],
    u: &Direction,
) -> Result<TouchSet, TouchError> {
    check_contained(original, shrunken)?;
    Ok(TouchSet {
        u: u.as_slice().to_vec(),
        indices: touching(original, shrunken, u.as_slice()),
    })
}

/// Whether replacing `original` by the contained tuple `shrunken` lowers the
/// mixed volume, decided by searching for a direction `u` at which the tuple
/// of faces `P_i^u` (for touching `i`) and full polytopes (otherwise) is
/// essential. Returns that direction as witness.
pub fn strict_decrease(
    original: &[LatticePolytope],
    shrunken: &[LatticePolytope],
) -> Result<(bool, Option<Direction>), TouchError> {
    check_contained(original, shrunken)?;
    if shrunken.iter().any(|p| p.is_empty()) {
        let full = is_essential(original)?;
        return Ok((full, None));
    }
    let all: Vec<LatticePolytope> = original.iter().chain(shrunken).cloned().collect();
    for u in enumerate_fan_directions(&all)? {
        let t = touching(original, shrunken, u.as_slice());
        let tuple: Vec<LatticePolytope> = original
            .iter()
            .enumerate()
            .map(|(i, p)| if t.contains(&i) { p.face(u.as_slice()) } else { p.clone() })
            .collect();
        if is_essential(&tuple)? {
            return Ok((true, Some(u)));
        }
    }
    Ok((false, None))
}
