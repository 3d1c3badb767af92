//! Dense matrices and subspaces over `Q`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::laurent::LaurentPoly;
use crate::rational::{format_rational, int, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors, all of length `n`.
    pub fn from_columns(n: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
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

    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
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
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, e: u64) -> QMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `p(self)` for an ordinary polynomial `p` (negative exponents need an
    /// invertible matrix and are rejected).
    pub fn eval_poly(&self, p: &LaurentPoly) -> QMatrix {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        if p.is_zero() {
            return acc;
        }
        let low = p.low_exp().unwrap();
        assert!(low >= 0, "negative exponent in matrix polynomial");
        let high = p.high_exp().unwrap();
        for k in (0..=high).rev() {
            acc = acc.mul(self);
            let c = p.coeff(k);
            if !c.is_zero() {
                for i in 0..n {
                    acc[(i, i)] += &c;
                }
            }
        }
        acc
    }

    pub fn hstack(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    pub fn vstack(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        QMatrix { rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn block_diag(blocks: &[QMatrix]) -> QMatrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut i0, mut j0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(i0 + i, j0 + j)] = b[(i, j)].clone();
                }
            }
            i0 += b.rows;
            j0 += b.cols;
        }
        out
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &f * &m[(r, j)];
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self x = 0}` as the columns of the result.
    pub fn nullspace(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out[(f, k)] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                out[(p, k)] = -r[(i, f)].clone();
            }
        }
        out
    }

    pub fn column_space(&self) -> Subspace {
        Subspace::span(self.rows, &self.columns())
    }

    /// Some `x` with `self x = b`.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&QMatrix::from_columns(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let (r, pivots) = self.hstack(&Self::identity(n)).rref();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        Some(r.select(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Characteristic polynomial `det(x I - self)` by Faddeev–LeVerrier.
    pub fn char_poly(&self) -> LaurentPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut mk = Self::zeros(n, n);
        let mut prev = Rational::one();
        for k in 1..=n {
            let mut next = self.mul(&mk);
            for i in 0..n {
                next[(i, i)] += &prev;
            }
            mk = next;
            let c = -self.mul(&mk).trace() / int(k as i64);
            coeffs[n - k] = c.clone();
            prev = c;
        }
        LaurentPoly::from_coeffs(0, coeffs)
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `Q^n`, kept as a reduced row echelon basis so that equal
/// subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: QMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: QMatrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_rows_matrix(QMatrix::identity(ambient))
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        Self::from_rows_matrix(QMatrix::from_rows(vectors.to_vec()))
    }

    /// Span of the coordinate vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vecs: Vec<Vec<Rational>> = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::one();
                v
            })
            .collect();
        Self::span(ambient, &vecs)
    }

    fn from_rows_matrix(m: QMatrix) -> Self {
        let ambient = m.cols;
        let (r, pivots) = m.rref();
        let k = pivots.len();
        let basis = r.select(&(0..k).collect::<Vec<_>>(), &(0..ambient).collect::<Vec<_>>());
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> Vec<Vec<Rational>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> QMatrix {
        self.basis.transpose()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, b) in r.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *x -= &f * b;
                }
            }
        }
        r.iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Self::from_rows_matrix(self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Self::zero(self.ambient);
        }
        let u = self.basis_matrix();
        let v = other.basis_matrix();
        let k = u.hstack(&v.scale(&-Rational::one())).nullspace();
        let coeffs = k.select(&(0..self.dim()).collect::<Vec<_>>(), &(0..k.cols()).collect::<Vec<_>>());
        Self::span(self.ambient, &u.mul(&coeffs).columns())
    }

    /// Image under a linear map.
    pub fn image(&self, map: &QMatrix) -> Subspace {
        assert_eq!(map.cols(), self.ambient);
        Self::span(map.rows(), &self.basis().iter().map(|v| map.apply(v)).collect::<Vec<_>>())
    }

    /// `{x : map x in target}`.
    pub fn preimage(map: &QMatrix, target: &Subspace) -> Subspace {
        assert_eq!(map.rows(), target.ambient);
        let q = target.annihilator();
        let eqs = q.mul(map);
        Self::span(map.cols(), &eqs.nullspace().columns())
    }

    /// Linear functionals (as rows) whose common kernel is this subspace.
    pub fn annihilator(&self) -> QMatrix {
        if self.dim() == 0 {
            return QMatrix::identity(self.ambient);
        }
        self.basis.nullspace().transpose()
    }

    /// Vectors of `self` completing a basis of `sub` to a basis of `self`.
    pub fn complement_in(&self, sub: &Subspace) -> Vec<Vec<Rational>> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in self.basis() {
            if !acc.contains(&v) {
                acc = acc.sum(&Subspace::span(self.ambient, std::slice::from_ref(&v)));
                out.push(v);
            }
        }
        out
    }
}

/// Coordinates on `space / sub` with respect to a fixed complement.
#[derive(Clone, Debug)]
pub struct Quotient {
    complement: Vec<Vec<Rational>>,
    solver: QMatrix,
    ambient: usize,
}

impl Quotient {
    pub fn new(space: &Subspace, sub: &Subspace) -> Self {
        debug_assert!(space.contains_subspace(sub));
        let complement = space.complement_in(sub);
        let ambient = space.ambient();
        let mut cols = complement.clone();
        cols.extend(sub.basis());
        Quotient { solver: QMatrix::from_columns(ambient, &cols), complement, ambient }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn representatives(&self) -> &[Vec<Rational>] {
        &self.complement
    }

    /// Coordinates of the class of `v`, which must lie in the ambient space.
    pub fn coords(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient);
        let x = self.solver.solve(v).expect("vector outside the quotiented space");
        x[..self.dim()].to_vec()
    }

    /// Matrix of the induced endomorphism for a map preserving space and sub.
    pub fn induced(&self, map: &QMatrix) -> QMatrix {
        let cols: Vec<Vec<Rational>> = self.complement.iter().map(|v| self.coords(&map.apply(v))).collect();
        QMatrix::from_columns(self.dim(), &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = QMatrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let n = a.nullspace();
        assert_eq!(n.cols(), 1);
        assert!(a.mul(&n).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let a = QMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.solve(&v(&[3, 2])).unwrap(), v(&[1, 1]));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMatrix::identity(2));
        assert!(QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).solve(&v(&[1, 0])).is_none());
    }

    #[test]
    fn char_poly_matches_companion() {
        // companion of t^2 - t + 1
        let a = QMatrix::from_int_rows(&[&[0, -1], &[1, 1]]);
        assert_eq!(a.char_poly(), "t^2 - t + 1".parse().unwrap());
        let b = QMatrix::from_rows(vec![vec![rat(1, 2), int(0)], vec![int(3), int(2)]]);
        assert_eq!(b.char_poly(), "t^2 - 5/2*t + 1".parse().unwrap());
        assert!(QMatrix::identity(3).eval_poly(&"t - 1".parse().unwrap()).is_zero());
    }

    #[test]
    fn subspace_lattice() {
        let u = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let w = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(u.intersect(&w), Subspace::span(3, &[v(&[0, 2, 0])]));
        assert_eq!(u.sum(&w), Subspace::full(3));
        assert!(u.contains(&v(&[3, -1, 0])));
        assert!(!u.contains(&v(&[0, 0, 1])));
        let a = QMatrix::from_int_rows(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(Subspace::preimage(&a, &Subspace::zero(3)), u);
    }

    #[test]
    fn quotient_induced_map() {
        let space = Subspace::full(2);
        let sub = Subspace::span(2, &[v(&[1, 0])]);
        let q = Quotient::new(&space, &sub);
        assert_eq!(q.dim(), 1);
        let t = QMatrix::from_int_rows(&[&[1, 5], &[0, 3]]);
        assert_eq!(q.induced(&t), QMatrix::from_int_rows(&[&[3]]));
    }
}
