//! Exact integer linear algebra for the polytope kernel and monomial changes.
//!
//! Everything here works on `i128` with checked arithmetic. Entries stay small
//! at the scale this crate targets (exponents of desk-sized systems), so an
//! overflow is treated as a bug and panics with a clear message.

use num_integer::Integer;
use num_rational::Ratio;

#[inline]
pub(crate) fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("exact integer arithmetic overflow")
}

#[inline]
pub(crate) fn add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("exact integer arithmetic overflow")
}

#[inline]
pub(crate) fn sub(a: i128, b: i128) -> i128 {
    a.checked_sub(b).expect("exact integer arithmetic overflow")
}

pub(crate) fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| add(acc, mul(x, y)))
}

/// Divides `v` by the gcd of its entries. Zero vectors are left alone.
pub(crate) fn make_primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub(crate) fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = sub(mul(a[k][k], a[i][j]), mul(a[i][k], a[k][j]));
                a[i][j] = num / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    mul(sign, a[n - 1][n - 1])
}

/// Incrementally built row-echelon basis of a subspace of `Z^n`.
///
/// Row `j` is zero on the pivot columns of all rows inserted before it, so the
/// square submatrix on the pivot columns is triangular with nonzero diagonal.
#[derive(Clone, Debug)]
pub(crate) struct EchelonBasis {
    n: usize,
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &mut [i128]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc] != 0 {
                let (a, b) = (row[pc], v[pc]);
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = sub(mul(a, *x), mul(b, r));
                }
                make_primitive(v);
            }
        }
    }

    /// Inserts `v`; returns `true` if it increased the rank.
    pub fn insert(&mut self, v: &[i128]) -> bool {
        debug_assert_eq!(v.len(), self.n);
        if self.rows.len() == self.n {
            return false;
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        match w.iter().position(|&x| x != 0) {
            Some(pc) => {
                self.rows.push(w);
                self.pivots.push(pc);
                true
            }
            None => false,
        }
    }

    /// Primitive integer basis of the orthogonal complement of the span.
    pub fn orthogonal_complement(&self) -> Vec<Vec<i128>> {
        let k = self.rows.len();
        let mut out = Vec::new();
        for free in (0..self.n).filter(|c| !self.pivots.contains(c)) {
            let mut e: Vec<Ratio<i128>> = vec![Ratio::from_integer(0); self.n];
            e[free] = Ratio::from_integer(1);
            for j in (0..k).rev() {
                let row = &self.rows[j];
                let pc = self.pivots[j];
                let mut s = Ratio::from_integer(0);
                for (c, &x) in row.iter().enumerate() {
                    if c != pc && x != 0 {
                        s += e[c] * Ratio::from_integer(x);
                    }
                }
                e[pc] = -s / Ratio::from_integer(row[pc]);
            }
            let l = e.iter().fold(1i128, |l, r| l.lcm(r.denom()));
            let mut v: Vec<i128> = e.iter().map(|r| mul(*r.numer(), l / r.denom())).collect();
            make_primitive(&mut v);
            out.push(v);
        }
        out
    }
}

pub(crate) fn rank(vectors: &[Vec<i128>], n: usize) -> usize {
    let mut b = EchelonBasis::new(n);
    for v in vectors {
        b.insert(v);
        if b.rank() == n {
            break;
        }
    }
    b.rank()
}

/// Integer inverse of a unimodular matrix, `None` if `|det| != 1`.
pub fn inverse_unimodular(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let big: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let d = det(&big);
    if d.abs() != 1 {
        return None;
    }
    // Gauss-Jordan over the rationals; the result is integral.
    let mut a: Vec<Vec<Ratio<i128>>> = (0..n)
        .map(|i| {
            let mut row: Vec<Ratio<i128>> =
                big[i].iter().map(|&x| Ratio::from_integer(x)).collect();
            row.extend((0..n).map(|j| Ratio::from_integer((i == j) as i128)));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != Ratio::from_integer(0))?;
        a.swap(c, p);
        let piv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c && a[r][c] != Ratio::from_integer(0) {
                let f = a[r][c];
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    let inv = a
        .iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    debug_assert!(x.is_integer());
                    i64::try_from(x.to_integer()).expect("inverse entry fits i64")
                })
                .collect()
        })
        .collect();
    Some(inv)
}

pub fn det_i64(m: &[Vec<i64>]) -> i128 {
    let big: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    det(&big)
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(&a, &b)| a.checked_mul(b).expect("exponent overflow"))
                .fold(0i64, |s, x| s.checked_add(x).expect("exponent overflow"))
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(&x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect()
}

/// Greedy completion of a primitive row vector `v` to a unimodular matrix
/// whose last row is `v`.
///
/// Column operations reduce `v` to `e_n`, then the accumulated transform is
/// inverted. The free rows are size-reduced against each other afterwards.
pub(crate) fn complete_greedy(v: &[i64]) -> Option<Vec<Vec<i64>>> {
    let n = v.len();
    let mut r: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    // columns of `t` track the operations: v * t == r
    let mut t: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i128).collect())
        .collect();
    let col_op = |t: &mut Vec<Vec<i128>>, r: &mut Vec<i128>, dst: usize, src: usize, f: i128| {
        r[dst] = sub(r[dst], mul(f, r[src]));
        for row in t.iter_mut() {
            row[dst] = sub(row[dst], mul(f, row[src]));
        }
    };
    let swap = |t: &mut Vec<Vec<i128>>, r: &mut Vec<i128>, a: usize, b: usize| {
        r.swap(a, b);
        for row in t.iter_mut() {
            row.swap(a, b);
        }
    };
    loop {
        let nz: Vec<usize> = (0..n).filter(|&i| r[i] != 0).collect();
        if nz.is_empty() {
            return None;
        }
        if nz.len() == 1 {
            let i = nz[0];
            if r[i].abs() != 1 {
                return None;
            }
            if i != n - 1 {
                swap(&mut t, &mut r, i, n - 1);
            }
            if r[n - 1] == -1 {
                r[n - 1] = 1;
                for row in t.iter_mut() {
                    row[n - 1] = -row[n - 1];
                }
            }
            break;
        }
        let &p = nz.iter().min_by_key(|&&i| r[i].abs()).unwrap();
        for &i in &nz {
            if i != p {
                let f = Integer::div_floor(&r[i], &r[p]);
                col_op(&mut t, &mut r, i, p, f);
            }
        }
    }
    let t64: Vec<Vec<i64>> = t
        .iter()
        .map(|row| row.iter().map(|&x| i64::try_from(x).ok()).collect::<Option<_>>())
        .collect::<Option<_>>()?;
    let mut m = inverse_unimodular(&t64)?;
    debug_assert_eq!(m[n - 1], v.to_vec());
    size_reduce(&mut m);
    Some(m)
}

/// Reduces rows `0..n-1` against every other row (the last row is fixed).
fn size_reduce(m: &mut [Vec<i64>]) {
    let n = m.len();
    for _ in 0..8 {
        let mut changed = false;
        for i in 0..n.saturating_sub(1) {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let nn: i64 = m[j].iter().map(|x| x * x).sum();
                if nn == 0 {
                    continue;
                }
                let ip: i64 = m[i].iter().zip(&m[j]).map(|(a, b)| a * b).sum();
                let f = (2 * ip + nn).div_euclid(2 * nn);
                if f != 0 {
                    let rj = m[j].clone();
                    for (x, y) in m[i].iter_mut().zip(rj) {
                        *x -= f * y;
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Completes a primitive `v` to a unimodular matrix with last row `v`.
///
/// For `n <= 3` the free rows are searched exhaustively over entries in
/// `{-1, 0, 1}`, picking the matrix closest to the identity in L1 distance
/// (ties broken lexicographically on the flattened entries). Larger sizes, or
/// vectors with no such small completion, use the greedy construction.
pub fn complete_to_unimodular(v: &[i64]) -> Option<Vec<Vec<i64>>> {
    let n = v.len();
    if n == 0 {
        return None;
    }
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g != 1 {
        return None;
    }
    if n <= 3 {
        let free = (n - 1) * n;
        let total = 3usize.pow(free as u32);
        let mut best: Option<(i64, Vec<i64>)> = None;
        for code in 0..total {
            let mut c = code;
            let mut flat = Vec::with_capacity(n * n);
            for _ in 0..free {
                flat.push((c % 3) as i64 - 1);
                c /= 3;
            }
            flat.extend_from_slice(v);
            let m: Vec<Vec<i64>> = flat.chunks(n).map(|r| r.to_vec()).collect();
            if det_i64(&m).abs() != 1 {
                continue;
            }
            let dist: i64 = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| (m[i][j] - (i == j) as i64).abs())
                .sum();
            let better = match &best {
                None => true,
                Some((bd, bf)) => dist < *bd || (dist == *bd && flat < *bf),
            };
            if better {
                best = Some((dist, flat));
            }
        }
        if let Some((_, flat)) = best {
            return Some(flat.chunks(n).map(|r| r.to_vec()).collect());
        }
    }
    complete_greedy(v)
}

/// Unimodular `T` adapted to the rational span `L` of `vectors`.
///
/// Returns `(r, T)` with `r = dim L`. For every integer point `x` of `L`,
/// `T x` vanishes in its last `n - r` entries, and the first `r` entries are
/// the coordinates of `x` in a basis of the lattice `L ∩ Z^n` (the first `r`
/// columns of `T^{-1}`).
pub fn lattice_coordinates(vectors: &[Vec<i64>], n: usize) -> Option<(usize, Vec<Vec<i64>>)> {
    let mut basis = EchelonBasis::new(n);
    for v in vectors {
        basis.insert(&v.iter().map(|&x| x as i128).collect::<Vec<_>>());
    }
    let r = basis.rank();
    let mut k = basis.orthogonal_complement();
    // column operations on `k`, recorded in `v`: k_orig * v == k
    let mut v: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i128).collect())
        .collect();
    let col_op = |k: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, dst: usize, src: usize, f: i128| {
        for row in k.iter_mut().chain(v.iter_mut()) {
            row[dst] = sub(row[dst], mul(f, row[src]));
        }
    };
    let swap = |k: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, a: usize, b: usize| {
        for row in k.iter_mut().chain(v.iter_mut()) {
            row.swap(a, b);
        }
    };
    for rho in 0..k.len() {
        let last = n - 1 - rho;
        loop {
            let nz: Vec<usize> = (0..=last).filter(|&c| k[rho][c] != 0).collect();
            if nz.len() <= 1 {
                let &c = nz.first()?;
                swap(&mut k, &mut v, c, last);
                break;
            }
            let &p = nz.iter().min_by_key(|&&c| k[rho][c].abs()).unwrap();
            for &c in &nz {
                if c != p {
                    let f = Integer::div_floor(&k[rho][c], &k[rho][p]);
                    col_op(&mut k, &mut v, c, p, f);
                }
            }
        }
    }
    let v64: Vec<Vec<i64>> = v
        .iter()
        .map(|row| row.iter().map(|&x| i64::try_from(x).ok()).collect::<Option<_>>())
        .collect::<Option<_>>()?;
    Some((r, inverse_unimodular(&v64)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![vec![2, -1, 3], vec![0, 4, 1], vec![5, 2, -2]];
        // 2*(4*-2 - 1*2) - (-1)*(0*-2 - 1*5) + 3*(0*2 - 4*5) = -20 - 5 - 60
        assert_eq!(det(&m), -85);
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), -1);
    }

    #[test]
    fn complement_is_orthogonal() {
        let mut b = EchelonBasis::new(4);
        b.insert(&[1, 2, 0, -1]);
        b.insert(&[0, 1, 1, 3]);
        assert!(!b.insert(&[1, 3, 1, 2]));
        let comp = b.orthogonal_complement();
        assert_eq!(comp.len(), 2);
        for c in &comp {
            assert_eq!(dot(c, &[1, 2, 0, -1]), 0);
            assert_eq!(dot(c, &[0, 1, 1, 3]), 0);
        }
    }

    #[test]
    fn completion_of_unit_vector_is_identity() {
        assert_eq!(complete_to_unimodular(&[0, 0, 1]).unwrap(), identity(3));
        let m = complete_to_unimodular(&[0, -1]).unwrap();
        assert_eq!(m, vec![vec![1, 0], vec![0, -1]]);
    }

    #[test]
    fn completion_of_awkward_vectors() {
        for v in [vec![5, 7], vec![3, 5, 7], vec![2, 3, 5, 7, 11], vec![-4, 9, 0, 1]] {
            let m = complete_to_unimodular(&v).unwrap();
            assert_eq!(det_i64(&m).abs(), 1);
            assert_eq!(m.last().unwrap(), &v);
            let inv = inverse_unimodular(&m).unwrap();
            assert_eq!(mat_mul(&m, &inv), identity(v.len()));
        }
        assert!(complete_to_unimodular(&[2, 4]).is_none());
    }

    #[test]
    fn lattice_coordinates_of_a_plane() {
        let vs = vec![vec![1, 1, 0], vec![2, 4, 0]];
        let (r, t) = lattice_coordinates(&vs, 3).unwrap();
        assert_eq!(r, 2);
        assert_eq!(det_i64(&t).abs(), 1);
        for x in [vec![1, 0, 0], vec![0, 1, 0], vec![3, -7, 0]] {
            assert_eq!(mat_vec(&t, &x)[2], 0);
        }
        let (r, t) = lattice_coordinates(&[vec![2, 4, 6]], 3).unwrap();
        assert_eq!(r, 1);
        let c = mat_vec(&t, &[1, 2, 3]);
        assert_eq!(c[1..], [0, 0]);
        assert_eq!(c[0].abs(), 1);
    }
}
