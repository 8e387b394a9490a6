//! Dense exact-rational matrices and block-sparse matrices indexed by vertex
//! pairs.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::digraph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// `None` if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<BigRational>>, cols: usize) -> Option<Matrix> {
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect(),
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

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: BigRational) {
        self.data[r * self.cols + c] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Panics on a shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Stacks blocks with equal column counts on top of each other.
    pub fn vstack(blocks: &[&Matrix], cols: usize) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "shape mismatch in stack");
            data.extend(b.data.iter().cloned());
        }
        Matrix { rows, cols, data }
    }

    pub fn sub_block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    /// Row echelon form by Gaussian elimination; returns the rank.
    fn eliminate(&mut self, companion: Option<&mut Matrix>) -> usize {
        let mut companion = companion;
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            self.swap_rows(p, rank);
            if let Some(m) = companion.as_deref_mut() {
                m.swap_rows(p, rank);
            }
            let inv = self.get(rank, c).recip();
            self.scale_row(rank, &inv);
            if let Some(m) = companion.as_deref_mut() {
                m.scale_row(rank, &inv);
            }
            for r in 0..self.rows {
                if r == rank || self.get(r, c).is_zero() {
                    continue;
                }
                let f = self.get(r, c).clone();
                self.axpy_row(r, rank, &f);
                if let Some(m) = companion.as_deref_mut() {
                    m.axpy_row(r, rank, &f);
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: &BigRational) {
        for j in 0..self.cols {
            self.data[r * self.cols + j] *= c;
        }
    }

    /// row[r] -= f · row[src]
    fn axpy_row(&mut self, r: usize, src: usize, f: &BigRational) {
        for j in 0..self.cols {
            let d = f * &self.data[src * self.cols + j];
            self.data[r * self.cols + j] -= d;
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(None)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let mut work = self.clone();
        let mut inv = Matrix::identity(self.rows);
        (work.eliminate(Some(&mut inv)) == self.rows).then_some(inv)
    }
}

impl fmt::Display for Matrix {
    /// One row per line, entries separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Operator on `⊕_v ρ(v)` stored as blocks `(row vertex, column vertex)`;
/// block `(i, j)` maps `ρ(j)` into `ρ(i)`. Absent blocks are zero.
#[derive(Debug, Clone, Default)]
pub struct BlockMatrix {
    blocks: BTreeMap<(VertexId, VertexId), Matrix>,
}

impl BlockMatrix {
    pub fn zero() -> BlockMatrix {
        BlockMatrix::default()
    }

    pub fn single(row: VertexId, col: VertexId, m: Matrix) -> BlockMatrix {
        let mut b = BlockMatrix::zero();
        b.insert(row, col, m);
        b
    }

    pub fn diagonal(blocks: impl IntoIterator<Item = (VertexId, Matrix)>) -> BlockMatrix {
        let mut b = BlockMatrix::zero();
        for (v, m) in blocks {
            b.insert(v, v, m);
        }
        b
    }

    pub fn insert(&mut self, row: VertexId, col: VertexId, m: Matrix) {
        if m.is_zero() {
            self.blocks.remove(&(row, col));
        } else {
            self.blocks.insert((row, col), m);
        }
    }

    pub fn block(&self, row: VertexId, col: VertexId) -> Option<&Matrix> {
        self.blocks.get(&(row, col))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&(VertexId, VertexId), &Matrix)> {
        self.blocks.iter()
    }

    pub fn mul(&self, other: &BlockMatrix) -> BlockMatrix {
        let mut acc: BTreeMap<(VertexId, VertexId), Matrix> = BTreeMap::new();
        for (&(i, j), a) in &self.blocks {
            for (&(_, k), b) in other.blocks.range((j, VertexId(0))..=(j, VertexId(u32::MAX))) {
                let p = a.mul(b);
                match acc.get_mut(&(i, k)) {
                    Some(s) => *s = s.add(&p),
                    None => {
                        acc.insert((i, k), p);
                    }
                }
            }
        }
        let mut out = BlockMatrix::zero();
        for ((i, k), m) in acc {
            out.insert(i, k, m);
        }
        out
    }

    pub fn add(&self, other: &BlockMatrix) -> BlockMatrix {
        let mut out = self.clone();
        for (&(i, j), m) in &other.blocks {
            let sum = match out.blocks.get(&(i, j)) {
                Some(s) => s.add(m),
                None => m.clone(),
            };
            out.insert(i, j, sum);
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> BlockMatrix {
        let mut out = BlockMatrix::zero();
        for (&(i, j), m) in &self.blocks {
            out.insert(i, j, m.scale(c));
        }
        out
    }

    /// Dense form on `⊕_v ρ(v)` with blocks in vertex order.
    pub fn to_dense(&self, dims: &[usize]) -> Matrix {
        let offsets: Vec<usize> = dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let n = dims.iter().sum();
        let mut out = Matrix::zeros(n, n);
        for (&(i, j), m) in &self.blocks {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    out.set(offsets[i.index()] + r, offsets[j.index()] + c, m.get(r, c).clone());
                }
            }
        }
        out
    }
}

impl PartialEq for BlockMatrix {
    fn eq(&self, other: &BlockMatrix) -> bool {
        self.blocks == other.blocks
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn inverse_and_rank() {
        let m = Matrix::from_i64(2, 2, &[2, 1, 1, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert_eq!(Matrix::from_i64(2, 2, &[1, 2, 2, 4]).rank(), 1);
        assert!(Matrix::from_i64(2, 2, &[1, 2, 2, 4]).inverse().is_none());
        assert_eq!(Matrix::from_i64(1, 1, &[2]).inverse().unwrap().get(0, 0), &q(1, 2));
        assert_eq!(Matrix::zeros(0, 0).inverse(), Some(Matrix::zeros(0, 0)));
        assert_eq!(Matrix::zeros(2, 3).rank(), 0);
    }

    #[test]
    fn block_products() {
        let (a, b) = (VertexId(0), VertexId(1));
        let x = BlockMatrix::single(b, a, Matrix::from_i64(1, 2, &[1, 1]));
        let y = BlockMatrix::single(a, b, Matrix::from_i64(2, 1, &[1, 0]));
        let xy = x.mul(&y);
        assert_eq!(xy, BlockMatrix::single(b, b, Matrix::from_i64(1, 1, &[1])));
        assert_eq!(y.mul(&y), BlockMatrix::zero());
        let dense = x.to_dense(&[2, 1]);
        assert_eq!(dense, Matrix::from_i64(3, 3, &[0, 0, 0, 0, 0, 0, 1, 1, 0]));
        assert_eq!(x.add(&x.scale(&q(-1, 1))), BlockMatrix::zero());
    }
}
