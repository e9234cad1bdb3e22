use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};
use crate::system::SuperSpace;

/// Homogeneous endomorphism of a graded space. Column `j` of `matrix` is
/// the image of `eⱼ`; entry `(i, j)` may be nonzero only when
/// `|eᵢ| = |eⱼ| + degree (mod 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomMap {
    matrix: Matrix,
    degree: u8,
}

/// Row-major list of the `(row, col)` entries a degree-`s` map may use.
pub fn block_entries(space: &SuperSpace, degree: u8) -> Vec<(usize, usize)> {
    let n = space.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if space.parity(i) == (space.parity(j) + u32::from(degree)) % 2 {
                out.push((i, j));
            }
        }
    }
    out
}

impl HomMap {
    pub fn new(space: &SuperSpace, matrix: Matrix, degree: u8) -> Result<Self> {
        let n = space.dim();
        if degree > 1 {
            return Err(Error::InvalidParity(degree));
        }
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch { expected: n * n, found: matrix.rows() * matrix.cols() });
        }
        for i in 0..n {
            for j in 0..n {
                if !matrix[(i, j)].is_zero() && space.parity(i) != (space.parity(j) + u32::from(degree)) % 2 {
                    return Err(Error::NotHomogeneous { degree, row: i, col: j });
                }
            }
        }
        Ok(Self { matrix, degree })
    }

    pub fn identity(n: usize) -> Self {
        Self { matrix: Matrix::identity(n), degree: 0 }
    }

    pub fn zero(n: usize, degree: u8) -> Self {
        Self { matrix: Matrix::zeros(n, n), degree }
    }

    /// Splits an arbitrary endomorphism into its even and odd parts.
    pub fn split(space: &SuperSpace, matrix: &Matrix) -> Result<(HomMap, HomMap)> {
        let n = space.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch { expected: n * n, found: matrix.rows() * matrix.cols() });
        }
        let mut even = Matrix::zeros(n, n);
        let mut odd = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let target = if space.parity(i) == space.parity(j) { &mut even } else { &mut odd };
                target[(i, j)] = matrix[(i, j)].clone();
            }
        }
        Ok((HomMap { matrix: even, degree: 0 }, HomMap { matrix: odd, degree: 1 }))
    }

    /// Inverse of [`HomMap::coords`].
    pub fn from_coords(space: &SuperSpace, degree: u8, coords: &[Rational]) -> Result<Self> {
        let n = space.dim();
        let m = Matrix::from_vec(n, n, coords.to_vec())?;
        Self::new(space, m, degree)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Row-major matrix entries, the ambient coordinates of operator spaces.
    pub fn coords(&self) -> &[Rational] {
        self.matrix.as_slice()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix.apply(v)
    }

    pub fn compose(&self, other: &HomMap) -> Result<HomMap> {
        Ok(HomMap { matrix: self.matrix.mul(&other.matrix)?, degree: (self.degree + other.degree) % 2 })
    }

    /// `[D₁, D₂] = D₁D₂ − (−1)^{|D₁||D₂|} D₂D₁`.
    pub fn supercommutator(&self, other: &HomMap) -> Result<HomMap> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let ab = self.matrix.mul(&other.matrix)?;
        let ba = other.matrix.mul(&self.matrix)?;
        let matrix = if self.degree & other.degree == 1 { ab.add(&ba)? } else { ab.sub(&ba)? };
        Ok(HomMap { matrix, degree: (self.degree + other.degree) % 2 })
    }
}

impl Serialize for HomMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<String>> = self
            .matrix
            .iter_rows()
            .map(|r| r.iter().map(crate::linalg::rational::format).collect())
            .collect();
        let mut st = s.serialize_struct("HomMap", 2)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("matrix", &rows)?;
        st.end()
    }
}

/// Free function form of [`HomMap::supercommutator`].
pub fn supercommutator(d1: &HomMap, d2: &HomMap) -> Result<HomMap> {
    d1.supercommutator(d2)
}
