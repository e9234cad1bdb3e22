//! Operator spaces against a brute-force oracle: one dense constraint matrix
//! per space over all `u·n²` matrix entries, assembled term by term from the
//! defining identities and reduced with `rref`.

use supertriple::fixtures::{bundled, l2, s11};
use supertriple::linalg::rational::int;
use supertriple::operators::{center, operator_space, OperatorKind};
use supertriple::{Matrix, Rational, Subspace, TripleSystem};

fn sign(e: u32) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Which map stands in each slot of `δᵏ[X a, b, c] + δᵏ(−1)^{s|a|}[a, Y b, c]
/// + δᵏ(−1)^{s(|a|+|b|)}[a, b, Z c] = W [a,b,c]`, as block indices.
struct Shape {
    blocks: usize,
    slots: [usize; 3],
    outer: usize,
}

struct Oracle<'a> {
    t: &'a TripleSystem,
    n: usize,
    par: Vec<u32>,
    delta_k: i64,
}

impl<'a> Oracle<'a> {
    fn new(t: &'a TripleSystem, k: u32) -> Self {
        let par = (0..t.dim()).map(|i| t.parity(i)).collect();
        Oracle { t, n: t.dim(), par, delta_k: if k % 2 == 1 { t.delta().as_i64() } else { 1 } }
    }

    fn col(&self, block: usize, r: usize, c: usize) -> usize {
        block * self.n * self.n + r * self.n + c
    }

    /// Rows forcing entries outside the degree-`s` blocks to zero.
    fn homogeneity(&self, blocks: usize, s: u32) -> Vec<Vec<Rational>> {
        let width = blocks * self.n * self.n;
        let mut rows = Vec::new();
        for b in 0..blocks {
            for r in 0..self.n {
                for c in 0..self.n {
                    if (self.par[r] + self.par[c] + s) % 2 == 1 {
                        let mut row = vec![int(0); width];
                        row[self.col(b, r, c)] = int(1);
                        rows.push(row);
                    }
                }
            }
        }
        rows
    }

    /// Adds `coeff · [.., X e_x, ..]_l` with `X` in `block` acting on slot `slot` of `(a,b,c)`.
    fn add_slot(&self, row: &mut [Rational], coeff: i64, block: usize, slot: usize, abc: [usize; 3], l: usize) {
        for r in 0..self.n {
            let mut args = abc;
            args[slot] = r;
            let v = &self.t.bracket_basis(args[0], args[1], args[2])[l];
            if *v != int(0) {
                row[self.col(block, r, abc[slot])] += int(coeff) * v;
            }
        }
    }

    /// Adds `coeff · (W [a,b,c])_l` with `W` in `block`.
    fn add_outer(&self, row: &mut [Rational], coeff: i64, block: usize, abc: [usize; 3], l: usize) {
        let v = self.t.bracket_basis(abc[0], abc[1], abc[2]);
        for (m, x) in v.iter().enumerate() {
            if *x != int(0) {
                row[self.col(block, l, m)] += int(coeff) * x;
            }
        }
    }

    fn triples(&self) -> impl Iterator<Item = ([usize; 3], usize)> + '_ {
        let n = self.n;
        (0..n * n * n * n).map(move |i| ([i / (n * n * n), (i / (n * n)) % n, (i / n) % n], i % n))
    }

    fn slot_signs(&self, s: u32, abc: [usize; 3]) -> [i64; 3] {
        let (pa, pb) = (self.par[abc[0]], self.par[abc[1]]);
        [self.delta_k, self.delta_k * sign(s * pa), self.delta_k * sign(s * (pa + pb))]
    }

    /// Kernel of the derivation-type identity, projected to block 0.
    fn derivation_like(&self, shape: &Shape, s: u32) -> Subspace {
        let width = shape.blocks * self.n * self.n;
        let mut rows = self.homogeneity(shape.blocks, s);
        for (abc, l) in self.triples() {
            let mut row = vec![int(0); width];
            let signs = self.slot_signs(s, abc);
            for slot in 0..3 {
                self.add_slot(&mut row, signs[slot], shape.slots[slot], slot, abc, l);
            }
            self.add_outer(&mut row, -1, shape.outer, abc, l);
            rows.push(row);
        }
        project(width, self.n * self.n, rows)
    }

    /// Maps satisfying every listed equation `Σ coeff·term = 0`, where a term
    /// is a slot action (`Some(slot)`) or the outer action (`None`).
    fn single_map(&self, s: u32, equations: &[Vec<(Option<usize>, i64)>], signed: bool) -> Subspace {
        let width = self.n * self.n;
        let mut rows = self.homogeneity(1, s);
        for (abc, l) in self.triples() {
            let signs = if signed { self.slot_signs(s, abc) } else { [1, 1, 1] };
            for eq in equations {
                let mut row = vec![int(0); width];
                for &(term, coeff) in eq {
                    match term {
                        Some(slot) => self.add_slot(&mut row, coeff * signs[slot], 0, slot, abc, l),
                        None => self.add_outer(&mut row, coeff, 0, abc, l),
                    }
                }
                rows.push(row);
            }
        }
        project(width, width, rows)
    }

    fn space(&self, kind: OperatorKind, s: u32) -> Subspace {
        let d = |slots, outer, blocks| self.derivation_like(&Shape { blocks, slots, outer }, s);
        match kind {
            OperatorKind::Der => d([0, 0, 0], 0, 1),
            OperatorKind::QDer => d([0, 0, 0], 1, 2),
            OperatorKind::GDer => d([0, 1, 2], 3, 4),
            OperatorKind::Centroid => {
                let eqs: Vec<Vec<(Option<usize>, i64)>> = (0..3).map(|slot| vec![(Some(slot), 1), (None, -1)]).collect();
                self.single_map(s, &eqs, true)
            }
            OperatorKind::Qc => self.single_map(s, &[vec![(None, 1), (Some(0), -1)]], false),
            OperatorKind::ZDer => self.single_map(s, &[vec![(None, 1)], vec![(Some(0), 1)]], false),
            OperatorKind::Center => unreachable!("vectors, handled separately"),
        }
    }
}

fn project(width: usize, keep: usize, rows: Vec<Vec<Rational>>) -> Subspace {
    let m = Matrix::from_rows(width, rows).expect("rectangular");
    let kernel = m.kernel();
    Subspace::from_rows(keep, kernel.basis_vectors().map(|v| v[..keep].to_vec())).expect("widths agree")
}

/// `{a : [a, b, c] = 0 ∀ b, c}` as the kernel of the stacked bracket maps.
fn center_oracle(t: &TripleSystem) -> Subspace {
    let n = t.dim();
    let mut rows = Vec::new();
    for b in 0..n {
        for c in 0..n {
            for l in 0..n {
                rows.push((0..n).map(|a| t.bracket_basis(a, b, c)[l].clone()).collect());
            }
        }
    }
    Matrix::from_rows(n, rows).expect("rectangular").kernel()
}

fn check_system(t: &TripleSystem) {
    for kind in OperatorKind::ALL {
        if kind == OperatorKind::Center {
            let lib = center(t);
            let z = center_oracle(t);
            assert_eq!(lib.dim(), z.dim(), "{}: center", t.name());
            let both = lib.even.sum(&lib.odd).unwrap();
            assert!(both.equals(&z).unwrap(), "{}: center differs", t.name());
            continue;
        }
        let ks: &[u32] = if kind.has_k() { &[0, 1] } else { &[0] };
        for &k in ks {
            let lib = operator_space(t, kind, k);
            let oracle = Oracle::new(t, k);
            for s in 0..=1u32 {
                let expected = oracle.space(kind, s);
                let got = lib.part(s as u8);
                assert!(got.equals(&expected).unwrap(), "{}: {} k={k} degree {s}: {} vs oracle {}", t.name(), kind.name(), got.dim(), expected.dim());
            }
        }
    }
}

#[test]
fn l2_spaces_match_oracle() {
    check_system(&l2());
}

#[test]
fn s11_spaces_match_oracle() {
    check_system(&s11());
}

#[test]
fn bundled_spaces_match_oracle() {
    for t in bundled() {
        check_system(&t);
    }
}

#[test]
fn l2_dimensions() {
    let t = l2();
    let dims: Vec<(usize, usize)> =
        [OperatorKind::Der, OperatorKind::QDer, OperatorKind::GDer, OperatorKind::Centroid, OperatorKind::Qc, OperatorKind::ZDer]
            .iter()
            .map(|&k| {
                let s = operator_space(&t, k, 0);
                (s.dim_even(), s.dim_odd())
            })
            .collect();
    let oracle = Oracle::new(&t, 0);
    let expected: Vec<(usize, usize)> =
        [OperatorKind::Der, OperatorKind::QDer, OperatorKind::GDer, OperatorKind::Centroid, OperatorKind::Qc, OperatorKind::ZDer]
            .iter()
            .map(|&k| (oracle.space(k, 0).dim(), oracle.space(k, 1).dim()))
            .collect();
    assert_eq!(dims, expected);
    assert_eq!(center(&t).dim(), 0);
}
