use std::fmt;

use num_traits::{One, Zero};

use super::rational::{self, Rational};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of [`rref`]: the canonical reduced echelon form, its pivot
/// columns and the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds from row vectors; all rows must share the length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Self { rows: n, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| rational::int(x))).collect();
        Self { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Rational] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        rational::is_zero_vec(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
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

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                rational::axpy(out.row_mut(i), false, a, other.row(k));
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rows];
        self.apply_into(&mut out, false, v);
        out
    }

    /// `out += (-1)^neg * self * v`.
    pub fn apply_into(&self, out: &mut [Rational], neg: bool, v: &[Rational]) {
        debug_assert_eq!(v.len(), self.cols);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = &self.data[i * self.cols + j];
                if a.is_zero() {
                    continue;
                }
                let t = a * x;
                if neg {
                    out[i] -= t;
                } else {
                    out[i] += t;
                }
            }
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Matrix, neg: bool) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        rational::add_signed(&mut out.data, neg, &other.data);
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn neg(&self) -> Matrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn rank(&self) -> usize {
        let mut e = RowEchelon::new(self.cols);
        for r in self.iter_rows() {
            e.push(r.to_vec());
        }
        e.rank()
    }

    pub fn rref(&self) -> Rref {
        rref(self)
    }

    /// Null space `{v : self * v = 0}`.
    pub fn kernel(&self) -> Subspace {
        kernel_basis(self)
    }

    /// Some `x` with `self * x = b`, free variables set to zero, or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut e = RowEchelon::new(self.cols + 1);
        for (i, r) in self.iter_rows().enumerate() {
            let mut row = r.to_vec();
            row.push(b[i].clone());
            e.push(row);
        }
        let Rref { matrix, pivots, .. } = e.finish();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.iter_rows().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let s: Vec<String> = r.iter().map(rational::format).collect();
            write!(f, "{}", s.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Incremental row echelon builder.
///
/// Rows are reduced against the pivots already present when pushed, so
/// tall constraint systems never need to be materialized; only the
/// independent rows are kept.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    cols: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl RowEchelon {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current pivots, leaving it zero iff it
    /// lies in the span of the rows pushed so far.
    pub fn reduce(&self, row: &mut [Rational]) {
        for (p, r) in &self.rows {
            if row[*p].is_zero() {
                continue;
            }
            let c = row[*p].clone();
            rational::axpy(row, true, &c, r);
        }
    }

    pub fn in_span(&self, row: &[Rational]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        rational::is_zero_vec(&r)
    }

    /// Adds a row; returns `true` if it increased the rank.
    pub fn push(&mut self, mut row: Vec<Rational>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        if rational::is_zero_vec(&row) {
            return false;
        }
        self.reduce(&mut row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[p].recip();
        if !inv.is_one() {
            for x in row.iter_mut().skip(p) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        self.rows.push((p, row));
        true
    }

    /// Back-substitutes into the canonical reduced echelon form.
    pub fn finish(mut self) -> Rref {
        self.rows.sort_by_key(|(p, _)| *p);
        let n = self.rows.len();
        for i in (0..n).rev() {
            let (pi, ri) = self.rows[i].clone();
            for j in 0..n {
                if j == i || self.rows[j].1[pi].is_zero() {
                    continue;
                }
                let c = self.rows[j].1[pi].clone();
                rational::axpy(&mut self.rows[j].1, true, &c, &ri);
            }
        }
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        let data = self.rows.into_iter().flat_map(|(_, r)| r).collect();
        Rref { matrix: Matrix { rows: n, cols: self.cols, data }, pivots, rank: n }
    }
}

/// Canonical reduced row echelon form. Zero rows are kept at the bottom
/// so the output has the shape of the input.
pub fn rref(m: &Matrix) -> Rref {
    let mut e = RowEchelon::new(m.cols);
    for r in m.iter_rows() {
        e.push(r.to_vec());
    }
    let Rref { matrix, pivots, rank } = e.finish();
    let mut data = matrix.data;
    data.resize(m.rows * m.cols, Rational::zero());
    Rref { matrix: Matrix { rows: m.rows, cols: m.cols, data }, pivots, rank }
}

/// Basis of `{v : m v = 0}` built from the free columns of the echelon form.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    kernel_of_rows(m.cols, m.iter_rows().map(|r| r.to_vec()))
}

/// Kernel of the matrix whose rows are produced by `rows`.
pub fn kernel_of_rows(cols: usize, rows: impl IntoIterator<Item = Vec<Rational>>) -> Subspace {
    let mut e = RowEchelon::new(cols);
    for r in rows {
        e.push(r);
    }
    kernel_from_echelon(e)
}

pub fn kernel_from_echelon(e: RowEchelon) -> Subspace {
    let cols = e.cols();
    let Rref { matrix, pivots, .. } = e.finish();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            let a = &matrix[(r, free)];
            if !a.is_zero() {
                v[p] = -a;
            }
        }
        basis.push(v);
    }
    Subspace::from_rows(cols, basis).expect("kernel vectors have the ambient length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::int;

    #[test]
    fn rref_examples() {
        let r = rref(&Matrix::identity(3));
        assert_eq!(r.matrix, Matrix::identity(3));
        assert_eq!(r.rank, 3);

        let r = rref(&Matrix::zeros(2, 5));
        assert_eq!(r.matrix, Matrix::zeros(2, 5));
        assert_eq!(r.rank, 0);

        // [[2,4],[1,2]]: halve row 0, subtract from row 1.
        let r = rref(&Matrix::from_i64(&[&[2, 4], &[1, 2]]));
        assert_eq!(r.matrix, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::zeros(3, 3).kernel().dim(), 3);
        assert_eq!(Matrix::identity(4).kernel().dim(), 0);
        let k = Matrix::from_i64(&[&[1, 2]]).kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains_vector(&[int(-2), int(1)]).unwrap());
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        let x = a.solve(&[int(3), int(6)]).unwrap().unwrap();
        assert_eq!(a.apply(&x), vec![int(3), int(6)]);
        assert!(a.solve(&[int(3), int(7)]).unwrap().is_none());
    }

    #[test]
    fn mul_and_transpose() {
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), Matrix::from_i64(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.mul(&Matrix::zeros(3, 1)).is_err());
    }
}
