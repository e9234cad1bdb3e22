//! Cochain spaces and low-degree cohomology against an independent
//! assembly: the cochain rules are written out as one dense constraint
//! matrix, and Z, B come from ranks of stacked coboundary images.

use supertriple::cohomology::{adjoint_representation, coboundary, cochain_space, cohomology_degree, Cochain};
use supertriple::fixtures::{abelian, bundled, l2, s11};
use supertriple::linalg::rational::int;
use supertriple::{Delta, Matrix, MultiLinearMap, Rational, Subspace, TripleSystem};

fn sign(e: u32) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn index(args: &[usize], n: usize, l: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a) * n + l
}

/// Cochains of arity `arity` and degree `s` with values in `T` itself:
/// grading, skew on the second- and third-to-last slots, and the graded
/// cyclic rule on the last three.
fn cochain_oracle(t: &TripleSystem, arity: usize, s: u32) -> Subspace {
    let n = t.dim();
    let p = |i: usize| t.parity(i);
    let width = n.pow(arity as u32) * n;
    let delta = t.delta().as_i64();
    let mut rows = Vec::new();
    let unit = |pairs: &[(usize, i64)]| {
        let mut row = vec![int(0); width];
        for &(i, c) in pairs {
            row[i] += int(c);
        }
        row
    };
    for tuple in 0..n.pow(arity as u32) {
        let mut args = vec![0; arity];
        let mut rest = tuple;
        for slot in (0..arity).rev() {
            args[slot] = rest % n;
            rest /= n;
        }
        let total: u32 = args.iter().map(|&a| p(a)).sum::<u32>() + s;
        for l in 0..n {
            if (total + p(l)) % 2 == 1 {
                rows.push(unit(&[(index(&args, n, l), 1)]));
            }
            if arity < 3 {
                continue;
            }
            let o = arity - 3;
            let (x, y, z) = (args[o], args[o + 1], args[o + 2]);
            // f(…, y, x, z) + δ(−1)^{|x||y|} f(…, x, y, z) = 0
            let mut swapped = args.clone();
            swapped.swap(o, o + 1);
            rows.push(unit(&[(index(&swapped, n, l), 1), (index(&args, n, l), delta * sign(p(x) * p(y)))]));
            // (−1)^{|x||z|} f(…,x,y,z) + (−1)^{|y||x|} f(…,y,z,x) + (−1)^{|z||y|} f(…,z,x,y) = 0
            let mut c1 = args.clone();
            c1[o..].copy_from_slice(&[y, z, x]);
            let mut c2 = args.clone();
            c2[o..].copy_from_slice(&[z, x, y]);
            rows.push(unit(&[
                (index(&args, n, l), sign(p(x) * p(z))),
                (index(&c1, n, l), sign(p(y) * p(x))),
                (index(&c2, n, l), sign(p(z) * p(y))),
            ]));
        }
    }
    if rows.is_empty() {
        return Subspace::full(width);
    }
    Matrix::from_rows(width, rows).expect("rectangular").kernel()
}

fn as_cochains(t: &TripleSystem, arity: usize, s: u8, space: &Subspace) -> Vec<Cochain> {
    space
        .basis_vectors()
        .map(|v| {
            let map = MultiLinearMap::from_coords(arity, t.dim(), t.dim(), v.to_vec()).unwrap();
            Cochain::new(t, t.space(), s, map).expect("oracle basis satisfies the library's rules too")
        })
        .collect()
}

fn image_rank(t: &TripleSystem, cochains: &[Cochain]) -> usize {
    if cochains.is_empty() {
        return 0;
    }
    let rep = adjoint_representation(t);
    let rows: Vec<Vec<Rational>> = cochains.iter().map(|f| coboundary(t, &rep, f).unwrap().coords().to_vec()).collect();
    Matrix::from_rows(rows[0].len(), rows).unwrap().rank()
}

/// `(dim C, dim Z, dim B, dim H)` for arity 3 or 4 from ranks alone.
fn cohomology_oracle(t: &TripleSystem, arity: usize, s: u8) -> (usize, usize, usize, usize) {
    let c = cochain_oracle(t, arity, u32::from(s));
    let below = cochain_oracle(t, arity - 2, u32::from(s));
    let dim_z = c.dim() - image_rank(t, &as_cochains(t, arity, s, &c));
    let dim_b = image_rank(t, &as_cochains(t, arity - 2, s, &below));
    (c.dim(), dim_z, dim_b, dim_z - dim_b)
}

#[test]
fn cochain_spaces_match_oracle() {
    for t in bundled() {
        for arity in 1..=4 {
            for s in 0..=1u8 {
                let lib = cochain_space(&t, t.space(), arity, s).unwrap();
                let oracle = cochain_oracle(&t, arity, u32::from(s));
                assert!(lib.basis.equals(&oracle).unwrap(), "{} C{arity} degree {s}: {} vs {}", t.name(), lib.dim(), oracle.dim());
            }
        }
    }
}

#[test]
fn l2_three_cochains_even_only() {
    let t = l2();
    assert_eq!(cochain_oracle(&t, 3, 0).dim(), cochain_space(&t, t.space(), 3, 0).unwrap().dim());
    assert_eq!(cochain_space(&t, t.space(), 3, 1).unwrap().dim(), 0);
}

#[test]
fn low_cohomology_matches_rank_oracle() {
    for t in [l2(), s11(), abelian(&[0, 1], Delta::Plus), abelian(&[0, 1, 1], Delta::Minus)] {
        let rep = adjoint_representation(&t);
        for arity in 3..=4 {
            for s in 0..=1u8 {
                let h = cohomology_degree(&t, &rep, arity, s).unwrap();
                let got = (h.dim_c, h.dim_z, h.dim_b.unwrap(), h.dim_h.unwrap());
                assert_eq!(got, cohomology_oracle(&t, arity, s), "{} n={arity} degree {s}", t.name());
            }
        }
    }
}

#[test]
fn l2_h3_is_one_dimensional() {
    let t = l2();
    assert_eq!(cohomology_oracle(&t, 3, 0).3, 1);
    assert_eq!(cohomology_oracle(&t, 3, 1), (0, 0, 0, 0));
}

#[test]
fn abelian_cohomology_is_all_cochains() {
    // θ = 0 and the bracket vanishes, so every coboundary is zero.
    for t in [abelian(&[0], Delta::Plus), abelian(&[0, 1], Delta::Plus), abelian(&[1, 1], Delta::Minus)] {
        for s in 0..=1u8 {
            let (c, z, b, h) = cohomology_oracle(&t, 3, s);
            assert_eq!((z, b, h), (c, 0, c), "{}", t.name());
        }
    }
}
