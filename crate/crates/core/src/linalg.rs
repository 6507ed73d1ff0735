//! Dense linear algebra over F_p: rank, row echelon forms, kernels.

use std::fmt;

use crate::poly::field::{Coeff, PrimeField};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
    field: PrimeField,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: PrimeField) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
            field,
        }
    }

    pub fn identity(n: usize, field: PrimeField) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Coeff>], cols: usize, field: PrimeField) -> Self {
        let mut m = Self::zeros(rows.len(), cols, field);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }

    /// Build from integer entries (reduced mod p).
    pub fn from_i64(rows: &[&[i64]], field: PrimeField) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols, field);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, field.from_i64(v));
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Coeff {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Coeff) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: Coeff) {
        let k = i * self.cols + j;
        self.data[k] = self.field.add(self.data[k], v);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Coeff] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Coeff] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Coeff> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let p = self.field.characteristic() as u64;
        let mut out = Matrix::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, j) as u64) % p;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.set(i, j, v as Coeff);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Coeff]) -> Vec<Coeff> {
        assert_eq!(self.cols, v.len());
        let p = self.field.characteristic() as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = (acc + *a as u64 * *b as u64) % p;
                }
                acc as Coeff
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.characteristic() as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for v in self.row_mut(r)[c..].iter_mut() {
                *v = f.mul(*v, inv);
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [Coeff]| {
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                let neg = p - factor as u64;
                for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if y != 0 {
                        *x = ((*x as u64 + neg * y as u64) % p) as Coeff;
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank by forward elimination on a copy.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminate along the shorter side.
        let mut m = if self.rows > self.cols {
            self.transpose()
        } else {
            self.clone()
        };
        m.forward_eliminate()
    }

    fn forward_eliminate(&mut self) -> usize {
        let f = self.field;
        let p = f.characteristic() as u64;
        let cols = self.cols;
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for v in self.row_mut(r)[c..].iter_mut() {
                *v = f.mul(*v, inv);
            }
            let (head, tail) = self.data.split_at_mut((r + 1) * cols);
            let pivot_row = &head[r * cols..];
            for row in tail.chunks_mut(cols) {
                let factor = row[c];
                if factor == 0 {
                    continue;
                }
                let neg = p - factor as u64;
                for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if y != 0 {
                        *x = ((*x as u64 + neg * y as u64) % p) as Coeff;
                    }
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Coeff>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let f = self.field;
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, self.field);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n, self.field);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
        }
        Some(inv)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{}", self.rows, self.cols, self.field.characteristic())?;
        for i in 0..self.rows.min(12) {
            writeln!(f, "  {:?}", &self.row(i)[..self.cols.min(12)])?;
        }
        Ok(())
    }
}

/// Rank and a kernel basis of `m`; every kernel vector is checked by
/// re-multiplication in debug builds.
pub fn rank_kernel(m: &Matrix) -> (usize, Vec<Vec<Coeff>>) {
    let kernel = m.kernel();
    let rank = m.cols() - kernel.len();
    debug_assert!(kernel.iter().all(|v| m.mul_vec(v).iter().all(|&x| x == 0)));
    (rank, kernel)
}

/// An incrementally built reduced row echelon basis of a subspace of
/// `F_p^dim`. Supports membership tests and coordinate extraction.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    field: PrimeField,
    /// Reduced rows, each with a leading 1 in its pivot column.
    rows: Vec<Vec<Coeff>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(dim: usize, field: PrimeField) -> Self {
        EchelonBasis {
            dim,
            field,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduce `v` against the basis (not fully reduced against later
    /// insertions, but zero iff `v` lies in the span).
    pub fn reduce(&self, v: &mut [Coeff]) {
        let p = self.field.characteristic() as u64;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let factor = v[c];
            if factor == 0 {
                continue;
            }
            let neg = p - factor as u64;
            for (x, &y) in v[c..].iter_mut().zip(&row[c..]) {
                if y != 0 {
                    *x = ((*x as u64 + neg * y as u64) % p) as Coeff;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Coeff]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Insert `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: &[Coeff]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[c]);
        for x in w[c..].iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        // keep earlier rows reduced in the new pivot column
        let p = self.field.characteristic() as u64;
        for row in self.rows.iter_mut() {
            let factor = row[c];
            if factor == 0 {
                continue;
            }
            let neg = p - factor as u64;
            for (x, &y) in row[c..].iter_mut().zip(&w[c..]) {
                if y != 0 {
                    *x = ((*x as u64 + neg * y as u64) % p) as Coeff;
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(c);
        true
    }

    /// Coordinates of `v` in terms of the stored rows, if `v` is in the span.
    pub fn coordinates(&self, v: &[Coeff]) -> Option<Vec<Coeff>> {
        let coords: Vec<Coeff> = self.pivots.iter().map(|&c| v[c]).collect();
        // v - sum coords_i row_i must vanish
        let p = self.field.characteristic() as u64;
        let mut w = v.to_vec();
        for (row, &a) in self.rows.iter().zip(&coords) {
            if a == 0 {
                continue;
            }
            let neg = p - a as u64;
            for (x, &y) in w.iter_mut().zip(row) {
                if y != 0 {
                    *x = ((*x as u64 + neg * y as u64) % p) as Coeff;
                }
            }
        }
        w.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn rows(&self) -> &[Vec<Coeff>] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn zero_map() {
        let m = Matrix::zeros(2, 3, fp());
        let (rank, ker) = rank_kernel(&m);
        assert_eq!(rank, 0);
        assert_eq!(ker.len(), 3);
    }

    #[test]
    fn identity_map() {
        let m = Matrix::identity(4, fp());
        let (rank, ker) = rank_kernel(&m);
        assert_eq!(rank, 4);
        assert!(ker.is_empty());
    }

    #[test]
    fn all_ones_two_by_two() {
        let f = fp();
        let m = Matrix::from_i64(&[&[1, 1], &[1, 1]], f);
        let (rank, ker) = rank_kernel(&m);
        assert_eq!(rank, 1);
        assert_eq!(ker, vec![vec![f.from_i64(-1), 1]]);
    }

    #[test]
    fn rank_of_tall_and_wide_agree() {
        let f = fp();
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]], f);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
        assert_eq!(m.kernel().len(), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = fp();
        let m = Matrix::from_i64(&[&[2, 1, 0], &[0, 1, 5], &[7, 0, 1]], f);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3, f));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]], f).inverse().is_none());
    }

    #[test]
    fn echelon_membership_and_coordinates() {
        let f = fp();
        let mut e = EchelonBasis::new(3, f);
        assert!(e.insert(&[1, 2, 0]));
        assert!(e.insert(&[0, 1, 1]));
        assert!(!e.insert(&[1, 3, 1]));
        assert!(e.contains(&[2, 5, 1]));
        assert!(!e.contains(&[0, 0, 1]));
        let coords = e.coordinates(&[2, 5, 1]).unwrap();
        let rebuilt: Vec<Coeff> = (0..3)
            .map(|j| {
                let mut acc = 0;
                for (r, &a) in e.rows().iter().zip(&coords) {
                    acc = f.mul_add(acc, a, r[j]);
                }
                acc
            })
            .collect();
        assert_eq!(rebuilt, vec![2, 5, 1]);
    }
}
