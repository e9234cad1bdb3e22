//! The coboundary operators d¹–d⁴. The even ones are the odd ones with a
//! spectator first argument `y` whose degree is added to `|f|`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::rational::{is_zero_vec, odd};
use crate::linalg::Rational;
use crate::system::TripleSystem;
use crate::tensor::{decode_tuple, MultiLinearMap};

use super::cochain::Cochain;
use super::representation::{RepOps, Representation};

/// `dⁿf` for `n = f.arity() ∈ {1, 2, 3, 4}`, as a raw `(n+2)`-linear tensor.
pub fn coboundary(t: &TripleSystem, rep: &Representation, f: &Cochain) -> Result<MultiLinearMap> {
    if !(1..=4).contains(&f.arity()) {
        return Err(Error::UnsupportedArity(f.arity()));
    }
    if f.map.in_dim() != t.dim() || f.map.out_dim() != rep.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), found: f.map.in_dim() });
    }
    Ok(coboundary_with(t, &rep.ops(t), &f.map, f.degree))
}

/// As [`coboundary`], with θ and D precomputed and no shape checks.
pub fn coboundary_with(t: &TripleSystem, ops: &RepOps, f: &MultiLinearMap, degree: u8) -> MultiLinearMap {
    let n = f.arity();
    let (t_dim, m) = (t.dim(), f.out_dim());
    let out_arity = n + 2;
    let total = t_dim.pow(out_arity as u32);
    let values: Vec<Vec<Rational>> = (0..total)
        .into_par_iter()
        .map(|ti| {
            let x = decode_tuple(ti, out_arity, t_dim);
            let mut out = vec![Rational::from_integer(0.into()); m];
            eval(t, ops, f, degree, &x, &mut out);
            out
        })
        .collect();
    MultiLinearMap::from_coords(out_arity, t_dim, m, values.into_iter().flatten().collect()).expect("shape")
}

fn eval(t: &TripleSystem, ops: &RepOps, f: &MultiLinearMap, degree: u8, x: &[usize], out: &mut [Rational]) {
    let n = f.arity();
    let prefix = n % 2 == 0;
    let (pre, xs) = x.split_at(usize::from(prefix));
    let p = |i: usize| t.parity(i);
    let fp = u32::from(degree) + pre.iter().map(|&i| p(i)).sum::<u32>();
    let minus = t.delta().is_minus();
    let br = |a: usize, b: usize, c: usize| t.bracket_basis(a, b, c);
    let mut args: Vec<usize> = Vec::with_capacity(n);
    // f(pre, rest…)
    let fv = |args: &mut Vec<usize>, rest: &[usize]| -> Vec<Rational> {
        args.clear();
        args.extend_from_slice(pre);
        args.extend_from_slice(rest);
        f.value(args).to_vec()
    };
    let apply = |out: &mut [Rational], neg: bool, mat: &crate::linalg::Matrix, v: &[Rational]| {
        if !is_zero_vec(v) {
            mat.apply_into(out, neg, v);
        }
    };
    // f(pre, rest…) with a bracket substituted at `slot` of `rest`.
    let slot = |out: &mut [Rational], neg: bool, rest: &[usize], at: usize, combo: &[Rational]| {
        if is_zero_vec(combo) {
            return;
        }
        let mut a: Vec<usize> = pre.iter().chain(rest).copied().collect();
        f.accumulate_with_slot(out, neg, &mut a, pre.len() + at, combo);
    };
    if xs.len() == 3 {
        let (x1, x2, x3) = (xs[0], xs[1], xs[2]);
        let (p1, p2, p3) = (p(x1), p(x2), p(x3));
        apply(out, odd((fp + p1) * (p2 + p3)), ops.theta(x2, x3), &fv(&mut args, &[x1]));
        slot(out, true, &[0], 0, br(x1, x2, x3));
        apply(out, minus ^ odd(fp * (p1 + p2)), ops.d(x1, x2), &fv(&mut args, &[x3]));
        apply(out, !(minus ^ odd(p2 * p3 + fp * (p1 + p3))), ops.theta(x1, x3), &fv(&mut args, &[x2]));
    } else {
        let (x1, x2, x3, x4, x5) = (xs[0], xs[1], xs[2], xs[3], xs[4]);
        let (p1, p2, p3, p4, p5) = (p(x1), p(x2), p(x3), p(x4), p(x5));
        apply(out, odd((fp + p1 + p2 + p3) * (p4 + p5)), ops.theta(x4, x5), &fv(&mut args, &[x1, x2, x3]));
        apply(out, !(minus ^ odd((fp + p1 + p2) * (p3 + p5) + p4 * p5)), ops.theta(x3, x5), &fv(&mut args, &[x1, x2, x4]));
        apply(out, !(minus ^ odd(fp * (p1 + p2))), ops.d(x1, x2), &fv(&mut args, &[x3, x4, x5]));
        apply(out, odd((fp + p1 + p2) * (p3 + p4)), ops.d(x3, x4), &fv(&mut args, &[x1, x2, x5]));
        slot(out, false, &[0, x4, x5], 0, br(x1, x2, x3));
        slot(out, true, &[x1, x2, 0], 2, br(x3, x4, x5));
        slot(out, odd(p3 * (p1 + p2)), &[x3, 0, x5], 1, br(x1, x2, x4));
        slot(out, minus ^ odd((p1 + p2) * (p3 + p4)), &[x3, x4, 0], 2, br(x1, x2, x5));
    }
}

/// `dⁿ` applied to several cochains of one arity and degree, in parallel.
pub fn coboundaries(t: &TripleSystem, ops: &RepOps, fs: &[Cochain]) -> Vec<MultiLinearMap> {
    fs.par_iter().map(|f| coboundary_with(t, ops, &f.map, f.degree)).collect()
}

/// `Σ cᵢ vᵢ` over flattened coordinates.
pub(crate) fn combine(coeffs: &[Rational], vs: &[&[Rational]], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0.into()); len];
    for (c, v) in coeffs.iter().zip(vs) {
        if !num_traits::Zero::is_zero(c) {
            crate::linalg::rational::axpy(&mut out, false, c, v);
        }
    }
    out
}
