//! Quotient and remainder polytopes of division by `x_i - alpha`, saturation,
//! and the auxiliary polytopes used to certify division liftings.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::PolySystem;
use crate::polytope::{mixed_volume, Direction, LatticePolytope, PolytopeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SaturationError {
    #[error("coordinate {index} takes negative values")]
    NegativeCoordinates { index: usize },
    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("k = {k} is outside 1..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("facial polynomial {poly} is not saturated at step {step} (variable {var})")]
    Unsaturated { poly: usize, step: usize, var: usize },
    #[error("system has negative exponents")]
    NotPolynomial,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

fn check_index(p: &LatticePolytope, i: usize) -> Result<(), SaturationError> {
    let dim = p.ambient_dim();
    if i >= dim {
        return Err(SaturationError::IndexOutOfRange { index: i, dim });
    }
    if p.vertices().iter().any(|v| v[i] < 0) {
        return Err(SaturationError::NegativeCoordinates { index: i });
    }
    Ok(())
}

/// `conv{ x - e_i, x - x_i e_i : x in P ∩ Z^d, x_i > 0 }`, possibly empty.
pub fn quotient_polytope(p: &LatticePolytope, i: usize) -> Result<LatticePolytope, SaturationError> {
    check_index(p, i)?;
    let mut pts = Vec::new();
    for x in p.lattice_points().iter().filter(|x| x[i] > 0) {
        let mut a = x.clone();
        a[i] -= 1;
        pts.push(a);
        let mut b = x.clone();
        b[i] = 0;
        pts.push(b);
    }
    if pts.is_empty() {
        return Ok(LatticePolytope::empty(p.ambient_dim()));
    }
    Ok(LatticePolytope::convex_hull(&pts)?)
}

/// `conv{ x - x_i e_i : x in P ∩ Z^d }`.
pub fn remainder_polytope(p: &LatticePolytope, i: usize) -> Result<LatticePolytope, SaturationError> {
    check_index(p, i)?;
    if p.is_empty() {
        return Ok(p.clone());
    }
    let pts: Vec<Vec<i64>> = p
        .lattice_points()
        .iter()
        .map(|x| {
            let mut b = x.clone();
            b[i] = 0;
            b
        })
        .collect();
    Ok(LatticePolytope::convex_hull(&pts)?)
}

/// `R_{order[last]}(... R_{order[0]}(P))`; the identity for an empty order.
pub fn remainder_chain(p: &LatticePolytope, order: &[usize]) -> Result<LatticePolytope, SaturationError> {
    let mut cur = p.clone();
    for &i in order {
        cur = remainder_polytope(&cur, i)?;
    }
    Ok(cur)
}

/// Verdict of one saturation step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepVerdict {
    /// The coordinate tested (0-based).
    pub index: usize,
    pub saturated: bool,
    /// A lattice point of `conv((Q_i + [0, e_i]) ∪ R_i)` outside the polytope.
    pub witness: Option<Vec<i64>>,
    /// Outcome of the face test `R_i(P) = P ∩ {x_i = 0}`.
    pub face_test: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationProfile {
    pub polytope: LatticePolytope,
    pub order: Vec<usize>,
    pub verdicts: Vec<StepVerdict>,
}

impl SaturationProfile {
    pub fn is_saturated(&self) -> bool {
        self.verdicts.iter().all(|v| v.saturated)
    }

    /// Steps where the definition and the face test disagree.
    pub fn disagreements(&self) -> Vec<usize> {
        self.verdicts
            .iter()
            .enumerate()
            .filter(|(_, v)| v.saturated != v.face_test)
            .map(|(j, _)| j)
            .collect()
    }

    /// First failing step, if any.
    pub fn first_failure(&self) -> Option<usize> {
        self.verdicts.iter().position(|v| !v.saturated)
    }
}

/// Tests whether `P` is `i`-saturated; returns the verdict for that single step.
pub fn step_verdict(p: &LatticePolytope, i: usize) -> Result<StepVerdict, SaturationError> {
    check_index(p, i)?;
    let r = remainder_polytope(p, i)?;
    let face_test = face_criterion(p, &r, i);
    if p.lattice_points().iter().all(|x| x[i] == 0) {
        return Ok(StepVerdict {
            index: i,
            saturated: true,
            witness: None,
            face_test,
        });
    }
    let q = quotient_polytope(p, i)?;
    let n = p.ambient_dim();
    let qe = q.minkowski_sum(&LatticePolytope::unit_segment(n, i))?;
    let mut pts: Vec<Vec<i64>> = qe.vertices().to_vec();
    pts.extend(r.vertices().iter().cloned());
    let s = LatticePolytope::convex_hull(&pts)?;
    let witness = s.vertices().iter().find(|v| !p.contains_point(v)).cloned();
    Ok(StepVerdict {
        index: i,
        saturated: witness.is_none(),
        witness,
        face_test,
    })
}

/// `R_i(P) = P ∩ {x_i = 0}`. With `x_i >= 0` on `P` the intersection is the
/// face minimizing `x_i` when that minimum is zero, and empty otherwise.
fn face_criterion(p: &LatticePolytope, r: &LatticePolytope, i: usize) -> bool {
    let n = p.ambient_dim();
    let mut dir = vec![0; n];
    dir[i] = -1;
    match p.support_value(&dir) {
        Some(0) => *r == p.face(&dir),
        _ => r.is_empty(),
    }
}

/// Tests `(order[0], ..., order[m-1])`-saturation: step `j` checks that the
/// iterated remainder over `order[..j]` is `order[j]`-saturated.
pub fn is_saturated(p: &LatticePolytope, order: &[usize]) -> Result<SaturationProfile, SaturationError> {
    let mut verdicts = Vec::with_capacity(order.len());
    let mut cur = p.clone();
    for &i in order {
        verdicts.push(step_verdict(&cur, i)?);
        cur = remainder_polytope(&cur, i)?;
    }
    Ok(SaturationProfile {
        polytope: p.clone(),
        order: order.to_vec(),
        verdicts,
    })
}

/// The polytopes attached to a division lifting with `k` new variables of a
/// system normalized for the direction `-e_d`.
///
/// Coordinates of `R^{d+k}` are `x_1..x_d, y_1..y_k`. The `N_j` live in the
/// image of the projection forgetting `x_1..x_k`, with coordinates
/// `x_{k+1}..x_d, y_1..y_k`.
#[derive(Debug, Clone)]
pub struct LemmaPolytopes {
    pub d: usize,
    pub k: usize,
    /// Always `-e_d`.
    pub u: Direction,
    pub p: Vec<LatticePolytope>,
    pub n: Vec<LatticePolytope>,
    /// `conv(0, e_j, e_{d+j})` for `j` in `1..=k`.
    pub delta: Vec<LatticePolytope>,
}

impl LemmaPolytopes {
    /// `MV(P_1, ..., P_d, [0, e_1], ..., [0, e_k])` in `R^{d+k}`.
    pub fn padded_mixed_volume(&self) -> u128 {
        let m = self.d + self.k;
        let mut tuple = self.p.clone();
        tuple.extend((0..self.k).map(|j| LatticePolytope::unit_segment(m, j)));
        mixed_volume(&tuple).expect("arity matches")
    }

    /// `MV(N_1, ..., N_d)` in `R^d`.
    pub fn projected_mixed_volume(&self) -> u128 {
        mixed_volume(&self.n).expect("arity matches")
    }

    /// `MV(P_1, ..., P_d, Δ_1, ..., Δ_k)`.
    pub fn lifted_envelope_mixed_volume(&self) -> u128 {
        let mut tuple = self.p.clone();
        tuple.extend(self.delta.iter().cloned());
        mixed_volume(&tuple).expect("arity matches")
    }
}

/// The polytopes `N_j = conv(π(NP(f_j)), 0, e_{d+l} : x_l occurs in f_j^u)`
/// in the coordinates `x_{k+1}..x_d, y_1..y_k`.
pub fn projected_polytopes(sys: &PolySystem, k: usize) -> Result<Vec<LatticePolytope>, SaturationError> {
    let d = sys.nvars();
    if k == 0 || k + 1 > d {
        return Err(SaturationError::KOutOfRange {
            k,
            max: d.saturating_sub(1),
        });
    }
    let mut u = vec![0; d];
    u[d - 1] = -1;
    let mut out = Vec::with_capacity(sys.len());
    for f in sys.polys() {
        let fu = f.facial_restriction(&u);
        let mut npts: Vec<Vec<i64>> = f
            .support()
            .iter()
            .map(|v| {
                let mut w: Vec<i64> = v[k..].to_vec();
                w.resize(d, 0);
                w
            })
            .collect();
        npts.push(vec![0; d]);
        for l in 0..k {
            if fu.occurs(l) {
                let mut e = vec![0; d];
                e[d - k + l] = 1;
                npts.push(e);
            }
        }
        out.push(LatticePolytope::convex_hull(&npts)?);
    }
    Ok(out)
}

/// Builds `P_j`, `N_j` and `Δ_j` for a system already normalized so that the
/// relevant facial system is the one in direction `-e_d`.
pub fn build_lemma_polytopes(sys: &PolySystem, k: usize) -> Result<LemmaPolytopes, SaturationError> {
    let d = sys.nvars();
    if k == 0 || k + 1 > d {
        return Err(SaturationError::KOutOfRange {
            k,
            max: d.saturating_sub(1),
        });
    }
    if sys.polys().iter().any(|f| f.has_negative_exponents()) {
        return Err(SaturationError::NotPolynomial);
    }
    let m = d + k;
    let mut u = vec![0; d];
    u[d - 1] = -1;
    let prefix: Vec<usize> = (0..k).collect();
    let ns = projected_polytopes(sys, k)?;
    let mut ps = Vec::with_capacity(d);
    for (j, f) in sys.polys().iter().enumerate() {
        let fu = f.facial_restriction(&u);
        let npu = fu.newton_polytope().expect("nonzero");
        let profile = is_saturated(&npu, &prefix)?;
        if let Some(step) = profile.first_failure() {
            return Err(SaturationError::Unsaturated {
                poly: j,
                step,
                var: prefix[step],
            });
        }
        let mut pts: Vec<Vec<i64>> = Vec::new();
        let rest = f - &fu;
        pts.extend(rest.support());
        let mut chain = npu.clone();
        for i in 0..k {
            let q = quotient_polytope(&chain, i)?;
            for v in q.vertices() {
                let mut w = v.clone();
                w.resize(m, 0);
                w[d + i] += 1;
                pts.push(w);
            }
            chain = remainder_polytope(&chain, i)?;
        }
        pts.extend(chain.vertices().iter().cloned());
        let pts: Vec<Vec<i64>> = pts
            .into_iter()
            .map(|mut v| {
                v.resize(m, 0);
                v
            })
            .collect();
        ps.push(LatticePolytope::convex_hull(&pts)?);

    }
    let delta = (0..k)
        .map(|j| {
            let mut a = vec![0; m];
            a[j] = 1;
            let mut b = vec![0; m];
            b[d + j] = 1;
            LatticePolytope::convex_hull(&[vec![0; m], a, b]).unwrap()
        })
        .collect();
    Ok(LemmaPolytopes {
        d,
        k,
        u: Direction::neg_unit(d, d - 1),
        p: ps,
        n: ns,
        delta,
    })
}
