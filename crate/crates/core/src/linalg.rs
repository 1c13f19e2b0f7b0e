//! Exact Gaussian elimination over the coefficient field.

use crate::coeff::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    /// Builds from sparse columns of `(row, value)` pairs.
    pub fn from_sparse_columns(field: Field, rows: usize, columns: &[Vec<(usize, Scalar)>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                let cur = m.get(*i, j).clone();
                m.set(*i, j, &cur + x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    /// Side-by-side concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut m = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = &m.data[i * m.cols + j] + &(a * b);
                        m.set(i, j, cur);
                    }
                }
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).try_inverse().expect("pivot is nonzero");
            for j in c..self.cols {
                let x = self.get(r, j) * &inv;
                self.set(r, j, x);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let rj = self.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let x = self.get(i, j) - &(&f * rj);
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{x : self · x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        (0..self.cols)
            .filter(|&f| is_pivot[f].is_none())
            .map(|f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = -m.get(r, f);
                }
                v
            })
            .collect()
    }
}
