//! n-cochains: graded n-linear maps `T × ⋯ × T → V` subject to a
//! twisted skew-symmetry in the two positions before the last and a graded
//! cyclic sum over the last three positions.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rational::{int, odd};
use crate::hom::HomMap;
use crate::linalg::{kernel_of_rows, Matrix, Rational, Subspace};
use crate::system::{Delta, SuperSpace, TripleSystem};
use crate::tensor::{decode_tuple, find_tuple, MultiLinearMap};

/// A homogeneous cochain; its arity is `map.arity()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub degree: u8,
    pub map: MultiLinearMap,
}

impl Cochain {
    /// Validates the grading and, for arity ≥ 3, the symmetry constraints.
    pub fn new(t: &TripleSystem, module: &SuperSpace, degree: u8, map: MultiLinearMap) -> Result<Self> {
        if degree > 1 {
            return Err(Error::InvalidParity(degree));
        }
        if map.in_dim() != t.dim() || map.out_dim() != module.dim() {
            return Err(Error::DimensionMismatch { expected: t.dim(), found: map.in_dim() });
        }
        if let Some(v) = cochain_violation(t.space(), t.delta(), module, degree, &map) {
            return Err(Error::Malformed(format!("not a cochain: {} fails at {:?}", v.rule, v.tuple)));
        }
        Ok(Self { degree, map })
    }

    pub fn zero(t: &TripleSystem, module: &SuperSpace, n: usize, degree: u8) -> Self {
        Self { degree, map: MultiLinearMap::zeros(n, t.dim(), module.dim()) }
    }

    pub fn arity(&self) -> usize {
        self.map.arity()
    }

    /// A linear map `T → T` as a 1-cochain for the adjoint module.
    pub fn from_hom(map: &HomMap) -> Self {
        let n = map.dim();
        let m = map.matrix();
        let coords = (0..n).flat_map(|i| (0..n).map(move |j| m[(j, i)].clone())).collect();
        Self { degree: map.degree(), map: MultiLinearMap::from_coords(1, n, n, coords).expect("n² entries") }
    }

    /// Inverse of [`Cochain::from_hom`] for square 1-cochains.
    pub fn to_hom(&self, space: &SuperSpace) -> Result<HomMap> {
        let n = space.dim();
        if self.arity() != 1 || self.map.in_dim() != n || self.map.out_dim() != n {
            return Err(Error::DimensionMismatch { expected: n * n, found: self.map.coords().len() });
        }
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for (j, v) in self.map.value(&[i]).iter().enumerate() {
                m[(j, i)] = v.clone();
            }
        }
        HomMap::new(space, m, self.degree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CochainViolation {
    /// `grading`, `skew` or `cyclic`.
    pub rule: &'static str,
    pub tuple: Vec<usize>,
    pub output: Option<usize>,
}

/// Applies the skew rule with positions `(n−3, n−2)` swapped (0-based):
/// `f(…, y, x, z) = −δ(−1)^{|x||y|} f(…, x, y, z)`.
fn skew_pairs(space: &SuperSpace, delta: Delta, x: &[usize]) -> (Vec<usize>, bool) {
    let n = x.len();
    let mut swapped = x.to_vec();
    swapped.swap(n - 3, n - 2);
    // f(swapped) + δ(−1)^{|x||y|} f(x) = 0
    let neg = delta.is_minus() ^ odd(space.parity(x[n - 3]) * space.parity(x[n - 2]));
    (swapped, neg)
}

/// The three tuples of the cyclic sum with their signs, starting from
/// `(…, x, y, z)`: `(−1)^{|x||z|}(…,x,y,z) + (−1)^{|y||x|}(…,y,z,x) + (−1)^{|z||y|}(…,z,x,y)`.
fn cyclic_terms(space: &SuperSpace, x: &[usize]) -> [(Vec<usize>, bool); 3] {
    let n = x.len();
    let (a, b, c) = (x[n - 3], x[n - 2], x[n - 1]);
    let p = |i: usize| space.parity(i);
    let with = |u: usize, v: usize, w: usize| {
        let mut t = x.to_vec();
        t[n - 3] = u;
        t[n - 2] = v;
        t[n - 1] = w;
        t
    };
    [(with(a, b, c), odd(p(a) * p(c))), (with(b, c, a), odd(p(b) * p(a))), (with(c, a, b), odd(p(c) * p(b)))]
}

/// First failure of the cochain constraints on an arbitrary tensor, for
/// any arity (the symmetry rules only apply from arity 3 on).
pub fn cochain_violation(
    space: &SuperSpace,
    delta: Delta,
    module: &SuperSpace,
    degree: u8,
    map: &MultiLinearMap,
) -> Option<CochainViolation> {
    let n = map.arity();
    let t_dim = space.dim();
    let grading = find_tuple(n, t_dim, |x| {
        let total = u32::from(degree) + space.degree_of(x);
        let v = map.value(x);
        (0..module.dim()).find(|&j| !v[j].is_zero() && module.parity(j) != total % 2).map(|j| (x.to_vec(), j))
    });
    if let Some((tuple, j)) = grading {
        return Some(CochainViolation { rule: "grading", tuple, output: Some(j) });
    }
    if n < 3 {
        return None;
    }
    let skew = find_tuple(n, t_dim, |x| {
        let (sw, neg) = skew_pairs(space, delta, x);
        let mut s = map.value(&sw).to_vec();
        crate::linalg::rational::add_signed(&mut s, neg, map.value(x));
        (!crate::linalg::rational::is_zero_vec(&s)).then(|| x.to_vec())
    });
    if let Some(tuple) = skew {
        return Some(CochainViolation { rule: "skew", tuple, output: None });
    }
    let cyclic = find_tuple(n, t_dim, |x| {
        let mut s = vec![Rational::zero(); module.dim()];
        for (tu, neg) in cyclic_terms(space, x) {
            crate::linalg::rational::add_signed(&mut s, neg, map.value(&tu));
        }
        (!crate::linalg::rational::is_zero_vec(&s)).then(|| x.to_vec())
    });
    cyclic.map(|tuple| CochainViolation { rule: "cyclic", tuple, output: None })
}

/// `C^n_δ(T, V)` in one degree, as a subspace of the flattened tensor
/// coordinates (`tuple_index · dim V + output`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainSpace {
    pub n: usize,
    pub degree: u8,
    pub t_dim: usize,
    pub v_dim: usize,
    pub basis: Subspace,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ambient_dim()
    }

    pub fn basis_cochains(&self) -> Vec<Cochain> {
        self.basis.basis_vectors().map(|v| self.cochain_from_coords(v.to_vec())).collect()
    }

    pub fn cochain_from_coords(&self, coords: Vec<Rational>) -> Cochain {
        Cochain { degree: self.degree, map: MultiLinearMap::from_coords(self.n, self.t_dim, self.v_dim, coords).expect("ambient length") }
    }

    pub fn contains(&self, f: &Cochain) -> bool {
        f.degree == self.degree && f.arity() == self.n && self.basis.contains_vector(f.map.coords()).unwrap_or(false)
    }
}

/// Basis of the n-cochains of the given degree, `n ∈ {1, 2, 3, 4}`.
pub fn cochain_space(t: &TripleSystem, module: &SuperSpace, n: usize, degree: u8) -> Result<CochainSpace> {
    if !(1..=4).contains(&n) {
        return Err(Error::UnsupportedArity(n));
    }
    if degree > 1 {
        return Err(Error::InvalidParity(degree));
    }
    Ok(cochain_space_any(t.space(), t.delta(), module, n, degree))
}

/// Same as [`cochain_space`] without the arity restriction.
pub fn cochain_space_any(space: &SuperSpace, delta: Delta, module: &SuperSpace, n: usize, degree: u8) -> CochainSpace {
    let (t_dim, v_dim) = (space.dim(), module.dim());
    let tuples = t_dim.pow(n as u32);
    let ambient = tuples * v_dim;
    let admissible = |x: &[usize], j: usize| (u32::from(degree) + space.degree_of(x)) % 2 == module.parity(j);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let unit = |idx: usize| {
        let mut v = vec![Rational::zero(); ambient];
        v[idx] = int(1);
        v
    };
    if n < 3 {
        for ti in 0..tuples {
            let x = decode_tuple(ti, n, t_dim);
            for j in (0..v_dim).filter(|&j| admissible(&x, j)) {
                rows.push(unit(ti * v_dim + j));
            }
        }
    } else {
        // Constraints only couple tuples that share the prefix and the
        // multiset of the last three entries; solve each orbit alone.
        let index = |x: &[usize]| x.iter().fold(0usize, |acc, &i| acc * t_dim + i);
        for ti in 0..tuples {
            let x = decode_tuple(ti, n, t_dim);
            let tail = &x[n - 3..];
            // Visit each orbit once, from its sorted representative.
            if !(tail[0] <= tail[1] && tail[1] <= tail[2]) {
                continue;
            }
            let mut orbit: Vec<Vec<usize>> = Vec::new();
            for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                let mut y = x.clone();
                for (k, &p) in perm.iter().enumerate() {
                    y[n - 3 + k] = tail[p];
                }
                if !orbit.contains(&y) {
                    orbit.push(y);
                }
            }
            orbit.sort_by_key(|y| index(y));
            let pos = |y: &[usize]| orbit.iter().position(|o| o == y).expect("orbit closed under permutations");
            let k = orbit.len();
            let mut local: Vec<Vec<Rational>> = Vec::new();
            for y in &orbit {
                let (sw, neg) = skew_pairs(space, delta, y);
                let mut r = vec![Rational::zero(); k];
                r[pos(&sw)] += int(1);
                r[pos(y)] += if neg { int(-1) } else { int(1) };
                local.push(r);
                let mut r = vec![Rational::zero(); k];
                for (tu, neg) in cyclic_terms(space, y) {
                    r[pos(&tu)] += if neg { int(-1) } else { int(1) };
                }
                local.push(r);
            }
            let kernel = kernel_of_rows(k, local);
            for j in (0..v_dim).filter(|&j| admissible(&x, j)) {
                for kv in kernel.basis_vectors() {
                    let mut v = vec![Rational::zero(); ambient];
                    for (c, y) in kv.iter().zip(&orbit) {
                        if !c.is_zero() {
                            v[index(y) * v_dim + j] = c.clone();
                        }
                    }
                    rows.push(v);
                }
            }
        }
    }
    let basis = Subspace::from_rows(ambient, rows).expect("ambient length");
    CochainSpace { n, degree, t_dim, v_dim, basis }
}
