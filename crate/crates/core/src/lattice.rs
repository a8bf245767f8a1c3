//! Exact integer linear algebra over arbitrary-precision integers: Hermite
//! and Smith normal forms, lattice membership, kernels and indices.
//!
//! Convention: row-style Hermite normal form. Rows are in echelon form, each
//! pivot is positive, and the entries above a pivot lie in `[0, pivot)`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Matrix = Vec<Vec<BigInt>>;

/// A subgroup of `Z^dim` given by spanning vectors, with its HNF basis.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    dim: usize,
    generators: Matrix,
    hnf: Matrix,
}

impl IntegerLattice {
    pub fn new(dim: usize, generators: Matrix) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch(dim, bad.len()));
        }
        let hnf = hermite_normal_form(&generators, dim);
        Ok(IntegerLattice { dim, generators, hnf })
    }

    pub fn from_i64(dim: usize, generators: &[Vec<i64>]) -> Result<Self> {
        Self::new(dim, generators.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// Integral rational vectors are accepted; anything else is an error.
    pub fn from_rational(dim: usize, generators: &[Vec<Rational>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(generators.len());
        for g in generators {
            let mut row = Vec::with_capacity(g.len());
            for q in g {
                if !q.is_integer() {
                    return Err(Error::NotIntegral("lattice generator"));
                }
                row.push(q.to_integer());
            }
            rows.push(row);
        }
        Self::new(dim, rows)
    }

    pub fn zero(dim: usize) -> Self {
        IntegerLattice { dim, generators: Vec::new(), hnf: Vec::new() }
    }

    /// The full lattice `Z^dim`.
    pub fn standard(dim: usize) -> Self {
        let rows: Matrix =
            (0..dim).map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        IntegerLattice { dim, generators: rows.clone(), hnf: rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &Matrix {
        &self.generators
    }

    pub fn hnf(&self) -> &Matrix {
        &self.hnf
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.dim && self.coordinates(v).is_some()
    }

    /// Membership for rational vectors; non-integral vectors are never members.
    pub fn contains_rational(&self, v: &[Rational]) -> bool {
        v.iter().all(|q| q.is_integer()) && self.contains(&v.iter().map(|q| q.to_integer()).collect::<Vec<_>>())
    }

    /// Integer coordinates of `v` in the HNF basis, if `v` is in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.hnf.len());
        let mut col = 0;
        for row in &self.hnf {
            let pivot_col = row.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero");
            // entries left of this pivot must already be cleared
            if rest[col..pivot_col].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[pivot_col].div_rem(&row[pivot_col]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
            coords.push(q);
            col = pivot_col + 1;
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> bool {
        other.dim == self.dim && other.hnf.iter().all(|r| self.contains(r))
    }
}

impl fmt::Debug for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegerLattice").field("dim", &self.dim).field("hnf", &DebugMatrix(&self.hnf)).finish()
    }
}

struct DebugMatrix<'a>(&'a Matrix);

impl fmt::Debug for DebugMatrix<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.0.iter().map(|r| alloc::format!("{:?}", r.iter().map(|x| x.to_string()).collect::<Vec<_>>())))
            .finish()
    }
}

use alloc::string::ToString;

/// Index of a sublattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    /// The sublattice has smaller rank.
    Infinite,
}

/// `[B : A]` as the product of the Smith invariant factors of `A`'s basis
/// written in a basis of `B`. Errors unless `A ⊆ B`.
pub fn sublattice_index(a: &IntegerLattice, b: &IntegerLattice) -> Result<LatticeIndex> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(a.dim, b.dim));
    }
    let mut coords = Vec::with_capacity(a.rank());
    for row in &a.hnf {
        coords.push(b.coordinates(row).ok_or(Error::NotASublattice)?);
    }
    if a.rank() < b.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    let invariants = smith_invariants(&coords);
    Ok(LatticeIndex::Finite(invariants.iter().fold(BigInt::one(), |acc, d| acc * d)))
}

/// Row-style HNF of the row span of `rows` (zero rows dropped).
pub fn hermite_normal_form(rows: &[Vec<BigInt>], ncols: usize) -> Matrix {
    let mut m: Matrix = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        // Euclid on the column below the current pivot row
        loop {
            let best =
                (r..m.len()).filter(|&i| !m[i][col].is_zero()).min_by(|&i, &j| m[i][col].abs().cmp(&m[j][col].abs()));
            let Some(best) = best else { break };
            m.swap(r, best);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[r][col]);
                let (head, tail) = m.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                    *x -= &q * y;
                }
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[r][col].is_zero() {
            continue;
        }
        if m[r][col].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = m[i][col].div_floor(&m[r][col]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = m.split_at_mut(r);
            for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

/// The left integer kernel `{c ∈ Z^k : c·M = 0}` of a `k × n` matrix, as a
/// lattice in `Z^k`.
pub fn left_kernel(m: &[Vec<BigInt>], ncols: usize) -> IntegerLattice {
    let k = m.len();
    let augmented: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let h = hermite_normal_form(&augmented, ncols + k);
    let basis: Matrix =
        h.into_iter().filter(|r| r[..ncols].iter().all(Zero::is_zero)).map(|r| r[ncols..].to_vec()).collect();
    IntegerLattice::new(k, basis).expect("kernel rows have length k")
}

/// Invariant factors `d_1 | d_2 | ⋯` of an integer matrix (nonzero only).
pub fn smith_invariants(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Matrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let pos = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
        let Some((pi, pj)) = pos else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[t]) {
                    *x -= &q * y;
                }
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for row in a.iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
        if let Some(i) = bad {
            let (head, tail) = a.split_at_mut(i);
            for (x, y) in head[t].iter_mut().zip(&tail[0]) {
                *x += y;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Determinant of a square integer matrix (fraction-free elimination).
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Matrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Inverse of a square rational matrix by Gauss–Jordan; `None` if singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = Rational::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let (pivot, other) = if i < c {
                let (h, t) = a.split_at_mut(c);
                (&t[0], &mut h[i])
            } else {
                let (h, t) = a.split_at_mut(i);
                (&h[c], &mut t[0])
            };
            for (x, y) in other.iter_mut().zip(pivot) {
                *x -= &f * y;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn to_bigint_matrix(m: &[Vec<i64>]) -> Matrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Converts an integral rational matrix.
pub fn rational_to_integer(m: &[Vec<Rational>]) -> Result<Matrix> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|q| if q.is_integer() { Ok(q.to_integer()) } else { Err(Error::NotIntegral("matrix")) })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hermite_normal_form(&identity(3), 3), identity(3));
        assert_eq!(hermite_normal_form(&mat(&[&[2, 0], &[0, 2], &[1, 1]]), 2), mat(&[&[1, 1], &[0, 2]]));
        let empty = IntegerLattice::new(3, Vec::new()).unwrap();
        assert_eq!(empty.rank(), 0);
        assert!(empty.hnf().is_empty());
    }

    #[test]
    fn membership() {
        let l = IntegerLattice::new(2, mat(&[&[2, 0], &[0, 2], &[1, 1]])).unwrap();
        assert!(l.contains(&mat(&[&[3, 1]])[0]));
        assert!(!l.contains(&mat(&[&[1, 0]])[0]));
        assert!(!l.contains(&mat(&[&[1]])[0]));
    }

    #[test]
    fn index_examples() {
        let z2 = IntegerLattice::standard(2);
        let two_z2 = IntegerLattice::new(2, mat(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(sublattice_index(&two_z2, &z2).unwrap(), LatticeIndex::Finite(BigInt::from(4)));
        assert_eq!(sublattice_index(&z2, &z2).unwrap(), LatticeIndex::Finite(BigInt::one()));
        assert_eq!(sublattice_index(&z2, &two_z2), Err(Error::NotASublattice));
        let line = IntegerLattice::new(2, mat(&[&[2, 0]])).unwrap();
        assert_eq!(sublattice_index(&line, &z2).unwrap(), LatticeIndex::Infinite);
    }

    #[test]
    fn smith_and_det() {
        let m = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        assert_eq!(smith_invariants(&m), mat(&[&[2, 6, 12]])[0]);
        assert_eq!(determinant(&m).abs(), BigInt::from(144));
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn kernels() {
        // rows (1,1), (2,2), (0,1): kernel spanned by (2,-1,0)
        let k = left_kernel(&mat(&[&[1, 1], &[2, 2], &[0, 1]]), 2);
        assert_eq!(k.rank(), 1);
        assert!(k.contains(&mat(&[&[2, -1, 0]])[0]));
        assert!(!k.contains(&mat(&[&[1, -1, 0]])[0]));
    }

    #[test]
    fn rational_inverse() {
        use crate::rational::{int, ratio};
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
        let m = vec![vec![int(2), int(0)], vec![int(0), int(4)]];
        assert_eq!(inverse(&m).unwrap()[1][1], ratio(1, 4));
        assert!(inverse(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }
}
