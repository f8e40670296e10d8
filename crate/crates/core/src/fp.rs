//! Prime-field scalars, vectors and small dense matrices over F_p.
//!
//! Vectors in F_p^r are indexed little-endian: the vector `(c_0, …, c_{r-1})`
//! has index `Σ c_i p^i`. Every enumeration in the crate relies on this order.

use std::fmt;

use serde::{Serialize, Serializer};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "zero has no inverse");
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let mut acc = 1u64 % p as u64;
    let mut b = base as u64 % p as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// `p^k`, panicking on overflow.
pub fn ipow(p: u64, k: u32) -> u64 {
    p.checked_pow(k).expect("integer power overflow")
}

/// The vector with the given little-endian index.
pub fn vector_from_index(mut index: usize, p: u32, len: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(len);
    for _ in 0..len {
        v.push((index % p as usize) as u32);
        index /= p as usize;
    }
    v
}

pub fn vector_index(v: &[u32], p: u32) -> usize {
    v.iter()
        .rev()
        .fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// All of F_p^len in index order.
pub fn all_vectors(p: u32, len: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = ipow(p as u64, len as u32) as usize;
    (0..count).map(move |i| vector_from_index(i, p, len))
}

/// A dense matrix over F_p, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    /// Builds a `rows × columns.len()` matrix whose j-th column is `columns[j]`.
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        assert_eq!(self.p, other.p, "matrix prime mismatch");
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u64 * other.get(k, j) as u64;
                }
                out.data[i * other.cols + j] = (acc % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let acc: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (acc % p) as u32
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as u32))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), p);
            for j in 0..m.cols {
                let v = (m.get(r, j) as u64 * inv as u64 % p as u64) as u32;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = (m.get(i, j) + p
                        - (factor as u64 * m.get(r, j) as u64 % p as u64) as u32)
                        % p;
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn has_full_column_rank(&self) -> bool {
        self.rank() == self.cols
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column,
    /// in increasing order of the free column.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - r.get(row, f)) % p;
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Self::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl Serialize for FpMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

/// All `k`-dimensional subspaces of F_p^r, each given by the rows of its
/// reduced row echelon basis. Deterministic order: pivot sets in lexicographic
/// order, then free entries in index order.
pub fn subspaces(p: u32, r: usize, k: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    if k > r {
        return out;
    }
    for pivots in combinations(r, k) {
        // free slots: (row, column) with column > pivot of row and not a pivot column
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|row| {
                let pv = pivots[row];
                let pivots = &pivots;
                (pv + 1..r)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (row, c))
            })
            .collect();
        for fill in all_vectors(p, slots.len()) {
            let mut basis = vec![vec![0u32; r]; k];
            for (row, &pc) in pivots.iter().enumerate() {
                basis[row][pc] = 1;
            }
            for (&(row, c), &v) in slots.iter().zip(&fill) {
                basis[row][c] = v;
            }
            out.push(basis);
        }
    }
    out
}

/// k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Number of `rows × cols` matrices of full column rank, `∏_{i<cols} (p^rows − p^i)`.
pub fn injective_count(p: u32, rows: usize, cols: usize) -> u64 {
    if cols > rows {
        return 0;
    }
    let top = ipow(p as u64, rows as u32);
    (0..cols).map(|i| top - ipow(p as u64, i as u32)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn inverse_of_gl2_element() {
        let m = FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(FpMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]])
            .inverse()
            .is_none());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = FpMatrix::from_rows(3, &[vec![1, 2, 0, 1], vec![0, 1, 1, 2]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        // [3 choose 1]_2 = 7, [3 choose 2]_2 = 7, [2 choose 1]_3 = 4
        assert_eq!(subspaces(2, 3, 1).len(), 7);
        assert_eq!(subspaces(2, 3, 2).len(), 7);
        assert_eq!(subspaces(3, 2, 1).len(), 4);
        assert_eq!(subspaces(2, 4, 2).len(), 35);
        assert_eq!(subspaces(2, 2, 0).len(), 1);
    }

    #[test]
    fn vector_index_round_trip() {
        for i in 0..81 {
            assert_eq!(vector_index(&vector_from_index(i, 3, 4), 3), i);
        }
    }
}
