use std::fmt;
use std::ops::{Index, IndexMut};

use crate::laurent::LaurentPoly;
use crate::qmat::QMatrix;
use crate::rational::Rational;

/// Dense matrix with entries in `R = Q[t, t^-1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixOverR {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl MatrixOverR {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixOverR { rows, cols, entries: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one();
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[LaurentPoly]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        MatrixOverR { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    /// Parses each entry with the Laurent polynomial text syntax.
    pub fn from_strs(rows: &[&[&str]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| s.parse().expect("bad polynomial literal")).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        MatrixOverR { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    /// Entrywise `t -> t^-1`.
    pub fn conjugate(&self) -> Self {
        self.map(LaurentPoly::conjugate)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &MatrixOverR) -> MatrixOverR {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Substitutes a nonzero rational for `t`.
    pub fn specialize(&self, x: &Rational) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].eval(x);
            }
        }
        out
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += q * row[src]`.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, q: &LaurentPoly) {
        for j in 0..self.cols {
            let s = &self[(src, j)];
            if !s.is_zero() {
                let v = &self[(dst, j)] + &(q * s);
                self[(dst, j)] = v;
            }
        }
    }

    /// `col[dst] += q * col[src]`.
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, q: &LaurentPoly) {
        for i in 0..self.rows {
            let s = &self[(i, src)];
            if !s.is_zero() {
                let v = &self[(i, dst)] + &(s * q);
                self[(i, dst)] = v;
            }
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, u: &LaurentPoly) {
        for j in 0..self.cols {
            let v = &self[(i, j)] * u;
            self[(i, j)] = v;
        }
    }

    /// Fraction-free (Bareiss) elimination; returns the rank and, for square
    /// input, the determinant.
    fn bareiss(&self) -> (usize, LaurentPoly) {
        let mut m = self.clone();
        let mut prev = LaurentPoly::one();
        let mut sign = false;
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            if p != row {
                m.swap_rows(p, row);
                sign = !sign;
            }
            let piv = m[(row, col)].clone();
            for i in row + 1..m.rows {
                let lead = m[(i, col)].clone();
                for j in col + 1..m.cols {
                    let num = &(&piv * &m[(i, j)]) - &(&lead * &m[(row, j)]);
                    m[(i, j)] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[(i, col)] = LaurentPoly::zero();
            }
            prev = piv;
            row += 1;
        }
        let det = if m.rows == m.cols && row == m.rows {
            if sign {
                -prev
            } else {
                prev
            }
        } else {
            LaurentPoly::zero()
        };
        (row, det)
    }

    /// Rank over the fraction field of `R`.
    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    pub fn det(&self) -> LaurentPoly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return LaurentPoly::one();
        }
        self.bareiss().1
    }
}

impl Index<(usize, usize)> for MatrixOverR {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for MatrixOverR {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for MatrixOverR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
