use num_traits::Zero;

use super::matrix::{kernel_of_rows, Matrix, RowEchelon};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Subspace of `Q^ambient`, represented by the unique reduced row
/// echelon basis. Two subspaces are equal iff their bases are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Matrix::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: Matrix::identity(ambient) }
    }

    /// Span of the given vectors.
    pub fn from_rows(ambient: usize, rows: impl IntoIterator<Item = Vec<Rational>>) -> Result<Self> {
        let mut e = RowEchelon::new(ambient);
        for r in rows {
            if r.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: r.len() });
            }
            e.push(r);
        }
        Ok(Self::from_echelon(e))
    }

    pub fn from_echelon(e: RowEchelon) -> Self {
        let ambient = e.cols();
        Self { ambient, basis: e.finish().matrix }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        Self::from_rows(m.cols(), m.iter_rows().map(<[Rational]>::to_vec)).expect("row length matches")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Rational]> {
        self.basis.iter_rows()
    }

    fn echelon(&self) -> RowEchelon {
        let mut e = RowEchelon::new(self.ambient);
        for r in self.basis.iter_rows() {
            e.push(r.to_vec());
        }
        e
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        // Reduced echelon basis: subtract pivot multiples directly.
        let mut r = v.to_vec();
        for row in self.basis.iter_rows() {
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            super::rational::axpy(&mut r, true, &c, row);
        }
        Ok(r.iter().all(Zero::is_zero))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        for v in other.basis_vectors() {
            if !self.contains_vector(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok(self == other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut e = self.echelon();
        for v in other.basis_vectors() {
            e.push(v.to_vec());
        }
        Ok(Self::from_echelon(e))
    }

    /// Intersection from the kernel of the stacked system `αA − βB = 0`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Ok(Self::zero(self.ambient));
        }
        // Row c of the stacked system is coordinate c of αA − βB.
        let rows = (0..self.ambient).map(|c| {
            let mut r = Vec::with_capacity(da + db);
            r.extend((0..da).map(|i| self.basis[(i, c)].clone()));
            r.extend((0..db).map(|i| -&other.basis[(i, c)]));
            r
        });
        let k = kernel_of_rows(da + db, rows);
        let vecs = k.basis_vectors().map(|coef| {
            let mut v = vec![Rational::zero(); self.ambient];
            for (i, a) in coef[..da].iter().enumerate() {
                super::rational::axpy(&mut v, false, a, self.basis.row(i));
            }
            v
        });
        Self::from_rows(self.ambient, vecs.collect::<Vec<_>>())
    }

    /// `dim A − dim(A ∩ B)`, defined when `B ⊆ A`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize> {
        if !self.contains(sub)? {
            return Err(Error::NotContained("quotient divisor"));
        }
        Ok(self.dim() - self.intersect(sub)?.dim())
    }

    /// Vectors of `self`'s basis that extend a basis of `sub` to one of `self`.
    pub fn complement_representatives(&self, sub: &Subspace) -> Result<Vec<Vec<Rational>>> {
        self.check(sub)?;
        let mut e = sub.echelon();
        let mut out = Vec::new();
        for v in self.basis_vectors() {
            if e.push(v.to_vec()) {
                out.push(v.to_vec());
            }
        }
        Ok(out)
    }
}

/// Operation selector for [`subspace_algebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceOp {
    Sum,
    Intersect,
    Contains,
    Equals,
    QuotientDim,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubspaceValue {
    Space(Subspace),
    Bool(bool),
    Count(usize),
}

pub fn subspace_algebra(op: SubspaceOp, a: &Subspace, b: &Subspace) -> Result<SubspaceValue> {
    Ok(match op {
        SubspaceOp::Sum => SubspaceValue::Space(a.sum(b)?),
        SubspaceOp::Intersect => SubspaceValue::Space(a.intersect(b)?),
        SubspaceOp::Contains => SubspaceValue::Bool(a.contains(b)?),
        SubspaceOp::Equals => SubspaceValue::Bool(a.equals(b)?),
        SubspaceOp::QuotientDim => SubspaceValue::Count(a.quotient_dim(b)?),
    })
}
