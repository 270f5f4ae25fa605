use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ChainError;

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    #[serde(with = "super::bigstr")]
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, ChainError> {
        if data.len() != rows * cols {
            return Err(ChainError::EntryCount {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from small-integer rows. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[&[T]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| x.into()));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Single column.
    pub fn column(entries: Vec<BigInt>) -> Self {
        IntMatrix {
            rows: entries.len(),
            cols: 1,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, ChainError> {
        if self.cols != rhs.rows {
            return Err(ChainError::Shape {
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        IntMatrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                out.set(i, c, self.get(i, j).clone());
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, ChainError> {
        if !self.is_square() {
            return Err(ChainError::NotSquare(self.shape()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    /// Rank over the rationals (equivalently over Z).
    pub fn rank(&self) -> usize {
        super::snf::smith_normal_form(self).rank()
    }

    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    // Elementary operations, used by the Smith normal form.

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[dst] += factor * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = &self.data[src * self.cols + c];
            if !s.is_zero() {
                let v = s * factor;
                self.data[dst * self.cols + c] += v;
            }
        }
    }

    /// col[dst] += factor * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = &self.data[r * self.cols + src];
            if !s.is_zero() {
                let v = s * factor;
                self.data[r * self.cols + dst] += v;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + c]);
            self.data[i * self.cols + c] = v;
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -std::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = v;
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            }))
            .finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_transpose() {
        let a = IntMatrix::from_rows(&[&[1, 2], &[3, 4]]);
        let b = IntMatrix::from_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, IntMatrix::from_rows(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), IntMatrix::from_rows(&[&[1, 3], &[2, 4]]));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = IntMatrix::zeros(2, 3);
        assert!(a.checked_mul(&a).is_err());
        assert!(IntMatrix::from_vec(2, 2, vec![BigInt::one()]).is_err());
    }

    #[test]
    fn determinant_bareiss() {
        let a = IntMatrix::from_rows(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(a.determinant().unwrap(), BigInt::zero());
        let b = IntMatrix::from_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(b.determinant().unwrap(), BigInt::from(-1));
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), BigInt::one());
    }

    #[test]
    fn empty_shapes_multiply() {
        let a = IntMatrix::zeros(3, 0);
        let b = IntMatrix::zeros(0, 2);
        assert_eq!(&a * &b, IntMatrix::zeros(3, 2));
    }
}
