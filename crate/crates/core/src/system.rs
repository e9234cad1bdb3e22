//! Graded vector spaces and the triple systems living on them.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::rational::{self, Rational};
use crate::tensor::MultiLinearMap;

/// The sign `δ ∈ {+1, −1}` twisting skew-symmetry and the fundamental identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i64", try_from = "i64")]
pub enum Delta {
    Plus,
    Minus,
}

impl Delta {
    pub fn as_i64(self) -> i64 {
        match self {
            Delta::Plus => 1,
            Delta::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Delta::Minus
    }

    /// `true` when `δ^k = −1`.
    pub fn pow_is_minus(self, k: u32) -> bool {
        self.is_minus() && k % 2 == 1
    }

    pub fn flipped(self) -> Delta {
        match self {
            Delta::Plus => Delta::Minus,
            Delta::Minus => Delta::Plus,
        }
    }
}

impl From<Delta> for i64 {
    fn from(d: Delta) -> i64 {
        d.as_i64()
    }
}

impl TryFrom<i64> for Delta {
    type Error = Error;

    fn try_from(v: i64) -> Result<Delta> {
        match v {
            1 => Ok(Delta::Plus),
            -1 => Ok(Delta::Minus),
            _ => Err(Error::InvalidDelta(v)),
        }
    }
}

impl std::fmt::Display for Delta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_i64())
    }
}

/// A Z₂-graded space given by the degrees of its basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SuperSpace {
    parity: Vec<u8>,
}

impl SuperSpace {
    pub fn new(parity: Vec<u8>) -> Result<Self> {
        if let Some(&p) = parity.iter().find(|&&p| p > 1) {
            return Err(Error::InvalidParity(p));
        }
        Ok(Self { parity })
    }

    pub fn even(dim: usize) -> Self {
        Self { parity: vec![0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    #[inline]
    pub fn parity(&self, i: usize) -> u32 {
        u32::from(self.parity[i])
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    /// `(p, q)`: the number of even and odd basis vectors.
    pub fn counts(&self) -> (usize, usize) {
        let q = self.parity.iter().filter(|&&p| p == 1).count();
        (self.dim() - q, q)
    }

    pub fn concat(&self, other: &SuperSpace) -> SuperSpace {
        let mut parity = self.parity.clone();
        parity.extend_from_slice(&other.parity);
        SuperSpace { parity }
    }

    /// Sum of the degrees of the given basis indices, mod 2.
    pub fn degree_of(&self, idx: &[usize]) -> u32 {
        idx.iter().map(|&i| self.parity(i)).sum::<u32>() % 2
    }
}

/// Element of a graded space, optionally tagged with a degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVector {
    pub coords: Vec<Rational>,
    pub degree: Option<u8>,
}

impl GradedVector {
    pub fn new(space: &SuperSpace, coords: Vec<Rational>, degree: Option<u8>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: coords.len() });
        }
        if let Some(d) = degree {
            if d > 1 {
                return Err(Error::InvalidParity(d));
            }
            if let Some(i) = (0..coords.len()).find(|&i| !coords[i].is_zero() && space.parity(i) != u32::from(d)) {
                return Err(Error::NotHomogeneous { degree: d, row: i, col: 0 });
            }
        }
        Ok(Self { coords, degree })
    }

    pub fn basis(space: &SuperSpace, i: usize) -> Self {
        let mut coords = vec![Rational::zero(); space.dim()];
        coords[i] = rational::one();
        Self { coords, degree: Some(space.parities()[i]) }
    }

    pub fn is_zero(&self) -> bool {
        rational::is_zero_vec(&self.coords)
    }
}

/// A finite-dimensional δ-Jordan Lie supertriple system candidate.
///
/// `bracket` holds the structure constants: the value on basis tuple
/// `(i, j, k)` is the coordinate vector of `[eᵢ, eⱼ, e_k]`. Nothing about
/// the axioms is assumed; see [`crate::axioms::verify_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSystem {
    name: String,
    space: SuperSpace,
    delta: Delta,
    basis_names: Option<Vec<String>>,
    bracket: MultiLinearMap,
}

impl TripleSystem {
    pub fn new(name: impl Into<String>, space: SuperSpace, delta: Delta, bracket: MultiLinearMap) -> Result<Self> {
        let n = space.dim();
        if bracket.arity() != 3 || bracket.in_dim() != n || bracket.out_dim() != n {
            return Err(Error::DimensionMismatch { expected: n.pow(4), found: bracket.coords().len() });
        }
        Ok(Self { name: name.into(), space, delta, basis_names: None, bracket })
    }

    /// Builds from a sparse list of `([i, j, k], l, c)` meaning the
    /// coefficient of `e_l` in `[eᵢ, eⱼ, e_k]` is `c`.
    pub fn from_entries(
        name: impl Into<String>,
        parity: Vec<u8>,
        delta: Delta,
        entries: &[([usize; 3], usize, Rational)],
    ) -> Result<Self> {
        let space = SuperSpace::new(parity)?;
        let n = space.dim();
        let mut bracket = MultiLinearMap::zeros(3, n, n);
        for (args, l, c) in entries {
            for &i in args.iter().chain(std::iter::once(l)) {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, dim: n });
                }
            }
            bracket.value_mut(args)[*l] = c.clone();
        }
        Self::new(name, space, delta, bracket)
    }

    pub fn abelian(name: impl Into<String>, parity: Vec<u8>, delta: Delta) -> Result<Self> {
        Self::from_entries(name, parity, delta, &[])
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: names.len() });
        }
        self.basis_names = Some(names);
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same constants, other sign.
    pub fn with_delta(mut self, delta: Delta) -> Self {
        self.delta = delta;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    #[inline]
    pub fn parity(&self, i: usize) -> u32 {
        self.space.parity(i)
    }

    pub fn delta(&self) -> Delta {
        self.delta
    }

    pub fn basis_names(&self) -> Option<&[String]> {
        self.basis_names.as_deref()
    }

    pub fn structure_constants(&self) -> &MultiLinearMap {
        &self.bracket
    }

    /// Coordinates of `[eᵢ, eⱼ, e_k]`.
    #[inline]
    pub fn bracket_basis(&self, i: usize, j: usize, k: usize) -> &[Rational] {
        self.bracket.value(&[i, j, k])
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    /// Trilinear extension of the structure constants.
    pub fn bracket_coords(&self, a: &[Rational], b: &[Rational], c: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, z) in c.iter().enumerate().filter(|(_, z)| !z.is_zero()) {
                    rational::axpy(&mut out, false, &(&xy * z), self.bracket_basis(i, j, k));
                }
            }
        }
        out
    }

    pub fn bracket(&self, a: &GradedVector, b: &GradedVector, c: &GradedVector) -> Result<GradedVector> {
        let n = self.dim();
        for v in [a, b, c] {
            if v.coords.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.coords.len() });
            }
        }
        let degree = match (a.degree, b.degree, c.degree) {
            (Some(x), Some(y), Some(z)) => Some((x + y + z) % 2),
            _ => None,
        };
        Ok(GradedVector { coords: self.bracket_coords(&a.coords, &b.coords, &c.coords), degree })
    }
}
