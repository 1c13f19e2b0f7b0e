//! Matrices with path-algebra entries.

use crate::algebra::{Element, PathAlgebra};
use crate::module::ModuleVector;
use crate::syntax::render_element;

/// Row-major matrix of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Element>,
}

impl ElementMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ElementMatrix {
            rows,
            cols,
            entries: vec![Element::zero(); rows * cols],
        }
    }

    /// Column `j` is read from `columns[j]`, coordinate `i` giving row `i`.
    pub fn from_columns(rows: usize, columns: &[ModuleVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.entries() {
                m.set(*i, j, x.clone());
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

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Element) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn column(&self, alg: &PathAlgebra, j: usize) -> ModuleVector {
        ModuleVector::from_entries(alg, (0..self.rows).map(|i| (i, self.get(i, j).clone())))
    }

    pub fn columns(&self, alg: &PathAlgebra) -> Vec<ModuleVector> {
        (0..self.cols).map(|j| self.column(alg, j)).collect()
    }

    pub fn map(&self, mut f: impl FnMut(&Element) -> Element) -> Self {
        ElementMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(&mut f).collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Element)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, x)| (k / self.cols.max(1), k % self.cols.max(1), x))
    }

    pub fn mul(&self, alg: &PathAlgebra, other: &ElementMatrix) -> ElementMatrix {
        assert_eq!(self.cols, other.rows);
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Element::zero();
                for k in 0..self.cols {
                    acc = alg.add(&acc, &alg.mul(self.get(i, k), other.get(k, j)));
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    /// Aligned rows, one line each: `[ a  c ]`.
    pub fn render(&self, alg: &PathAlgebra) -> Vec<String> {
        let cells: Vec<String> = self.entries.iter().map(|x| render_element(alg, x)).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| cells[i * self.cols + j].chars().count()).max().unwrap_or(0))
            .collect();
        (0..self.rows)
            .map(|i| {
                let row: Vec<String> = (0..self.cols)
                    .map(|j| {
                        let w = if j + 1 == self.cols { 0 } else { widths[j] };
                        format!("{:<w$}", cells[i * self.cols + j])
                    })
                    .collect();
                format!("[ {} ]", row.join("  "))
            })
            .collect()
    }
}
