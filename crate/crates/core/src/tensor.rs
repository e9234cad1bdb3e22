use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::rational::{self, Rational};

/// Multilinear map `T^arity → V` stored as a dense coefficient tensor.
///
/// The value on basis tuple `(i₁, …, i_n)` is the contiguous slice at
/// offset `((i₁·d + i₂)·d + …)·out_dim`, so the last argument varies
/// fastest and the output index fastest of all.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiLinearMap {
    arity: usize,
    in_dim: usize,
    out_dim: usize,
    data: Vec<Rational>,
}

impl MultiLinearMap {
    pub fn zeros(arity: usize, in_dim: usize, out_dim: usize) -> Self {
        let len = in_dim.pow(arity as u32) * out_dim;
        Self { arity, in_dim, out_dim, data: vec![Rational::zero(); len] }
    }

    pub fn from_coords(arity: usize, in_dim: usize, out_dim: usize, data: Vec<Rational>) -> Result<Self> {
        let len = in_dim.pow(arity as u32) * out_dim;
        if data.len() != len {
            return Err(Error::DimensionMismatch { expected: len, found: data.len() });
        }
        Ok(Self { arity, in_dim, out_dim, data })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    /// Number of basis tuples, `in_dim^arity`.
    pub fn num_tuples(&self) -> usize {
        self.in_dim.pow(self.arity as u32)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.data
    }

    pub fn tuple_index(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        args.iter().fold(0, |acc, &a| acc * self.in_dim + a)
    }

    pub fn value(&self, args: &[usize]) -> &[Rational] {
        let t = self.tuple_index(args);
        &self.data[t * self.out_dim..(t + 1) * self.out_dim]
    }

    pub fn value_mut(&mut self, args: &[usize]) -> &mut [Rational] {
        let t = self.tuple_index(args);
        &mut self.data[t * self.out_dim..(t + 1) * self.out_dim]
    }

    pub fn value_at(&self, tuple: usize) -> &[Rational] {
        &self.data[tuple * self.out_dim..(tuple + 1) * self.out_dim]
    }

    pub fn value_at_mut(&mut self, tuple: usize) -> &mut [Rational] {
        &mut self.data[tuple * self.out_dim..(tuple + 1) * self.out_dim]
    }

    pub fn is_zero(&self) -> bool {
        rational::is_zero_vec(&self.data)
    }

    /// `out += (-1)^neg · f(args[..slot], Σ_l combo[l] e_l, args[slot+1..])`.
    pub fn accumulate_with_slot(&self, out: &mut [Rational], neg: bool, args: &mut [usize], slot: usize, combo: &[Rational]) {
        let saved = args[slot];
        for (l, c) in combo.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            args[slot] = l;
            rational::axpy(out, neg, c, self.value(args));
        }
        args[slot] = saved;
    }

    /// Same shape as `other`.
    pub fn same_shape(&self, other: &MultiLinearMap) -> bool {
        self.arity == other.arity && self.in_dim == other.in_dim && self.out_dim == other.out_dim
    }

    fn check_shape(&self, other: &MultiLinearMap) -> Result<()> {
        if !self.same_shape(other) {
            return Err(Error::DimensionMismatch { expected: self.data.len(), found: other.data.len() });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiLinearMap) -> Result<MultiLinearMap> {
        self.check_shape(other)?;
        let mut out = self.clone();
        rational::add_signed(&mut out.data, false, &other.data);
        Ok(out)
    }

    pub fn sub(&self, other: &MultiLinearMap) -> Result<MultiLinearMap> {
        self.check_shape(other)?;
        let mut out = self.clone();
        rational::add_signed(&mut out.data, true, &other.data);
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> MultiLinearMap {
        let mut out = self.clone();
        for x in out.data.iter_mut().filter(|x| !x.is_zero()) {
            *x *= s;
        }
        out
    }

    /// First basis tuple (lexicographic) whose value is nonzero.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Vec<Rational>)> {
        (0..self.num_tuples()).find_map(|t| {
            let v = self.value_at(t);
            (!rational::is_zero_vec(v)).then(|| (decode_tuple(t, self.arity, self.in_dim), v.to_vec()))
        })
    }
}

/// Inverse of the row-major tuple index.
pub fn decode_tuple(mut t: usize, arity: usize, dim: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in (0..arity).rev() {
        out[slot] = t % dim;
        t /= dim;
    }
    out
}

/// Cursor over all tuples of `arity` indices below `dim`, in
/// lexicographic order (last slot fastest).
#[derive(Debug, Clone)]
pub struct Tuples {
    t: Vec<usize>,
    dim: usize,
    started: bool,
    done: bool,
}

impl Tuples {
    pub fn new(arity: usize, dim: usize) -> Self {
        Self { t: vec![0; arity], dim, started: false, done: dim == 0 && arity > 0 }
    }

    pub fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.t);
        }
        let mut slot = self.t.len();
        loop {
            if slot == 0 {
                self.done = true;
                return None;
            }
            slot -= 1;
            self.t[slot] += 1;
            if self.t[slot] < self.dim {
                return Some(&self.t);
            }
            self.t[slot] = 0;
        }
    }
}

/// Calls `f` on every tuple of `arity` indices below `dim`, in
/// lexicographic order.
pub fn for_each_tuple(arity: usize, dim: usize, mut f: impl FnMut(&[usize])) {
    let mut it = Tuples::new(arity, dim);
    while let Some(t) = it.advance() {
        f(t);
    }
}

/// Like [`for_each_tuple`] but stops at the first `Some`.
pub fn find_tuple<R>(arity: usize, dim: usize, mut f: impl FnMut(&[usize]) -> Option<R>) -> Option<R> {
    let mut it = Tuples::new(arity, dim);
    while let Some(t) = it.advance() {
        if let Some(r) = f(t) {
            return Some(r);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_order_matches_layout() {
        let mut seen = Vec::new();
        for_each_tuple(3, 2, |t| seen.push(t.to_vec()));
        assert_eq!(seen.len(), 8);
        let m = MultiLinearMap::zeros(3, 2, 1);
        for (i, t) in seen.iter().enumerate() {
            assert_eq!(m.tuple_index(t), i);
            assert_eq!(&decode_tuple(i, 3, 2), t);
        }
    }

    #[test]
    fn zero_arity_has_one_tuple() {
        let mut n = 0;
        for_each_tuple(0, 3, |_| n += 1);
        assert_eq!(n, 1);
    }
}
