//! Dense exact matrices over a [`Ring`], with the rank / kernel / pfaffian /
//! minor kernel that every dimension computation reduces to.

use crate::error::Error;
use crate::scalar::{Ring, Scalar};

/// Row-major dense matrix with immutable dimensions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![R::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = R::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix::new(r, c, data)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| R::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut R {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Vertically stack matrices with equal column counts.
    pub fn vstack(parts: &[&Matrix<R>]) -> Self {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols, "column mismatch in vstack");
            data.extend(m.data.iter().cloned());
        }
        Matrix::new(rows, cols, data)
    }

    pub fn matmul(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out: Matrix<R> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a.mul(rhs.at(k, j));
                    *out.at_mut(i, j) = out.at(i, j).add(&t);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix<R> {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Matrix::new(self.cols, self.rows, data)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            if !self.at(i, i).is_zero() {
                return false;
            }
            for j in i + 1..self.cols {
                if *self.at(i, j) != self.at(j, i).neg() {
                    return false;
                }
            }
        }
        true
    }

    /// Pfaffian of an even-sized skew-symmetric matrix, by recursive
    /// expansion along the first row. The empty matrix has pfaffian 1.
    pub fn pfaffian(&self) -> Result<R, Error> {
        if self.rows != self.cols || self.rows % 2 != 0 {
            return Err(Error::NotSkewSymmetric);
        }
        if !self.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.pfaffian_rec(&idx))
    }

    fn pfaffian_rec(&self, idx: &[usize]) -> R {
        if idx.is_empty() {
            return R::one();
        }
        if idx.len() == 2 {
            return self.at(idx[0], idx[1]).clone();
        }
        let mut acc = R::zero();
        for (pos, &j) in idx.iter().enumerate().skip(1) {
            let entry = self.at(idx[0], j);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..]
                .iter()
                .copied()
                .filter(|&c| c != j)
                .collect();
            let term = entry.mul(&self.pfaffian_rec(&rest));
            acc = if pos % 2 == 1 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }

    /// Determinant by Laplace expansion along the first row. Intended for
    /// the small symbolic matrices used to build charts.
    pub fn det_expansion(&self) -> R {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let idx: Vec<usize> = (0..self.cols).collect();
        self.det_rec(0, &idx)
    }

    fn det_rec(&self, row: usize, cols: &[usize]) -> R {
        if cols.is_empty() {
            return R::one();
        }
        if cols.len() == 1 {
            return self.at(row, cols[0]).clone();
        }
        let mut acc = R::zero();
        for (pos, &j) in cols.iter().enumerate() {
            let entry = self.at(row, j);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
            let term = entry.mul(&self.det_rec(row + 1, &rest));
            acc = if pos % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }

    /// All `rows`-sized minors, in lexicographic order of the column
    /// subsets. Requires `rows <= cols`.
    pub fn maximal_minors(&self) -> Vec<R> {
        assert!(self.rows <= self.cols, "maximal_minors needs rows <= cols");
        let mut out = Vec::new();
        let mut subset: Vec<usize> = (0..self.rows).collect();
        loop {
            out.push(self.det_rec(0, &subset));
            // next lexicographic subset
            let k = self.rows;
            let n = self.cols;
            if k == 0 {
                break;
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if subset[i] != i + n - k {
                    break;
                }
                if i == 0 {
                    return out;
                }
            }
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
        out
    }
}

impl<F: Scalar> Matrix<F> {
    /// Exact rank over the scalar field. Fraction-free elimination in
    /// rational mode, ordinary elimination in prime-field mode.
    pub fn rank(&self) -> usize {
        F::rank_rows(self.rows, self.cols, self.data.clone())
    }

    /// Determinant by Gaussian elimination with division; the independent
    /// route used to cross-check the pfaffian.
    pub fn det_elimination(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = F::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&i| !m[i * n + col].is_zero()) else {
                return F::zero();
            };
            if piv != col {
                for j in 0..n {
                    m.swap(col * n + j, piv * n + j);
                }
                det = det.neg();
            }
            det = det.mul(&m[col * n + col]);
            let inv = m[col * n + col].inv();
            for i in col + 1..n {
                if m[i * n + col].is_zero() {
                    continue;
                }
                let factor = m[i * n + col].mul(&inv);
                for j in col..n {
                    let sub = factor.mul(&m[col * n + j]);
                    m[i * n + j] = m[i * n + j].sub(&sub);
                }
            }
        }
        det
    }

    /// Reduced row echelon form; returns the pivot column indices.
    fn rref(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&i| !self.at(i, col).is_zero()) else {
                continue;
            };
            if piv != rank {
                for j in 0..cols {
                    let a = self.at(rank, j).clone();
                    let b = self.at(piv, j).clone();
                    *self.at_mut(rank, j) = b;
                    *self.at_mut(piv, j) = a;
                }
            }
            let inv = self.at(rank, col).inv();
            for j in col..cols {
                *self.at_mut(rank, j) = self.at(rank, j).mul(&inv);
            }
            for i in 0..rows {
                if i == rank || self.at(i, col).is_zero() {
                    continue;
                }
                let factor = self.at(i, col).clone();
                for j in col..cols {
                    let sub = factor.mul(self.at(rank, j));
                    *self.at_mut(i, j) = self.at(i, j).sub(&sub);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }

    /// A matrix whose rows span the annihilator of the row space of `self`:
    /// `N · v = 0` for every row `v`, and `rank(N) = cols - rank(self)`.
    pub fn annihilator(&self) -> Matrix<F> {
        let mut rref = self.clone();
        let pivots = rref.rref();
        let cols = self.cols;
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), cols);
        for (row, &fc) in free.iter().enumerate() {
            *out.at_mut(row, fc) = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                *out.at_mut(row, pc) = rref.at(r, fc).neg();
            }
        }
        out
    }
}
