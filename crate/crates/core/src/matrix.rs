//! Dense integer matrices.
//!
//! Everything in this crate is desk scale (a few hundred rows at most), so a
//! row-major `Vec<i64>` is all the structure we need.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged matrix rows");
            data.extend_from_slice(row.as_ref());
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// `[[a, b], [c, d]]` assembled from four blocks of compatible shapes.
    pub fn from_blocks(a: &IntMatrix, b: &IntMatrix, c: &IntMatrix, d: &IntMatrix) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let (top, left) = (a.rows, a.cols);
        Self::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| match (i < top, j < left) {
            (true, true) => a[(i, j)],
            (true, false) => b[(i, j - left)],
            (false, true) => c[(i - top, j)],
            (false, false) => d[(i - top, j - left)],
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub(crate) fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal_is_zero(&self) -> bool {
        (0..self.rows.min(self.cols)).all(|i| self[(i, i)] == 0)
    }

    pub fn entry_sum(&self) -> i64 {
        self.data.iter().sum()
    }

    pub fn row_sum(&self, i: usize) -> i64 {
        self.row(i).iter().sum()
    }

    /// Copy of the `h x w` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        assert!(r0 + h <= self.rows && c0 + w <= self.cols, "block out of range");
        Self::from_fn(h, w, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &IntMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|&x| x == 0 || x == 1)
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Symmetric row/column permutation: result[p[i]][p[j]] = self[i][j].
    pub fn permute(&self, p: &[usize]) -> Self {
        assert!(self.is_square() && p.len() == self.rows);
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(p[i], p[j])] = self[(i, j)];
            }
        }
        out
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// One row per line, entries separated by commas, no header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] as f64)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_round_trip() {
        let a = IntMatrix::from_rows(&[[1, 2], [3, 4]]);
        let z = IntMatrix::zeros(2, 2);
        let i = IntMatrix::identity(2);
        let big = IntMatrix::from_blocks(&a, &z, &i, &a);
        assert_eq!(big.block(0, 0, 2, 2), a);
        assert_eq!(big.block(2, 0, 2, 2), i);
        assert_eq!(big.block(2, 2, 2, 2), a);
        assert_eq!(big.trace(), 10);
    }

    #[test]
    fn product_and_power() {
        let c3 = IntMatrix::from_rows(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]]);
        assert_eq!(c3.pow(3).trace(), 6);
        assert_eq!(&c3 * &IntMatrix::identity(3), c3);
    }

    #[test]
    fn csv_layout() {
        let m = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(m.to_csv(), "0,1\n1,0\n");
    }
}
