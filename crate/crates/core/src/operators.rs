//! Derivation-type operator spaces, each solved degree by degree as the
//! kernel of the linear conditions it is defined by.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::hom::{block_entries, HomMap};
use crate::linalg::rational::{self, odd};
use crate::linalg::{Rational, RowEchelon, Subspace};
use crate::system::TripleSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Der,
    QDer,
    GDer,
    Centroid,
    Qc,
    ZDer,
    Center,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 7] = [
        OperatorKind::Der,
        OperatorKind::QDer,
        OperatorKind::GDer,
        OperatorKind::Centroid,
        OperatorKind::Qc,
        OperatorKind::ZDer,
        OperatorKind::Center,
    ];

    /// Whether the space is indexed by `k`.
    pub fn has_k(self) -> bool {
        matches!(self, OperatorKind::Der | OperatorKind::QDer | OperatorKind::GDer | OperatorKind::Centroid)
    }

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Der => "der",
            OperatorKind::QDer => "qder",
            OperatorKind::GDer => "gder",
            OperatorKind::Centroid => "centroid",
            OperatorKind::Qc => "qc",
            OperatorKind::ZDer => "zder",
            OperatorKind::Center => "center",
        }
    }
}

impl std::str::FromStr for OperatorKind {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| crate::error::Error::Malformed(format!("unknown operator kind `{s}`")))
    }
}

/// A linear condition on one or more unknown maps of a common degree,
/// expressed as families of terms that must sum to zero on every basis
/// triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// `δᵏ[Da,b,c] + δᵏ(−1)^{s|a|}[a,Db,c] + δᵏ(−1)^{s(|a|+|b|)}[a,b,Dc] = D[a,b,c]`.
    Der { k: u32 },
    /// As `Der` with the outer map replaced by an auxiliary `D′`.
    QDer { k: u32 },
    /// As `Der` with `D′`, `D″` in the inner slots and `D‴` outside.
    GDer { k: u32 },
    /// All four expressions of the k-centroid chain agree.
    Centroid { k: u32 },
    /// `D[a,b,c] = [Da,b,c]`.
    Qc,
    /// `D[a,b,c] = 0` and `[Da,b,c] = 0`.
    ZDer,
    /// The identities a quasicentroid element is claimed to satisfy:
    /// `D[a,b,c] = (−1)^{s|a|}[a,Db,c] = (−1)^{s(|a|+|b|)}[a,b,Dc]`.
    QcDerived,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Place {
    Slot(usize),
    Outer,
}

#[derive(Debug, Clone, Copy)]
struct Term {
    unknown: usize,
    place: Place,
    neg: bool,
}

fn term(unknown: usize, place: Place, neg: bool) -> Term {
    Term { unknown, place, neg }
}

impl Condition {
    /// Number of unknown maps; the first is the one the space consists of.
    pub fn unknowns(self) -> usize {
        match self {
            Condition::QDer { .. } => 2,
            Condition::GDer { .. } => 4,
            _ => 1,
        }
    }

    fn families(self, t: &TripleSystem, s: u32, a: usize, b: usize) -> Vec<Vec<Term>> {
        let (pa, pb) = (t.parity(a), t.parity(b));
        let s1 = odd(s * pa);
        let s2 = odd(s * (pa + pb));
        let dk = |k: u32| t.delta().pow_is_minus(k);
        use Place::{Outer, Slot};
        match self {
            Condition::Der { k } => {
                vec![vec![term(0, Slot(0), dk(k)), term(0, Slot(1), dk(k) ^ s1), term(0, Slot(2), dk(k) ^ s2), term(0, Outer, true)]]
            }
            Condition::QDer { k } => {
                vec![vec![term(0, Slot(0), dk(k)), term(0, Slot(1), dk(k) ^ s1), term(0, Slot(2), dk(k) ^ s2), term(1, Outer, true)]]
            }
            Condition::GDer { k } => {
                vec![vec![term(0, Slot(0), dk(k)), term(1, Slot(1), dk(k) ^ s1), term(2, Slot(2), dk(k) ^ s2), term(3, Outer, true)]]
            }
            Condition::Centroid { k } => vec![
                vec![term(0, Slot(0), dk(k)), term(0, Slot(1), !(dk(k) ^ s1))],
                vec![term(0, Slot(1), dk(k) ^ s1), term(0, Slot(2), !(dk(k) ^ s2))],
                vec![term(0, Slot(2), dk(k) ^ s2), term(0, Outer, true)],
            ],
            Condition::Qc => vec![vec![term(0, Outer, false), term(0, Slot(0), true)]],
            Condition::ZDer => vec![vec![term(0, Outer, false)], vec![term(0, Slot(0), false)]],
            Condition::QcDerived => vec![
                vec![term(0, Outer, false), term(0, Slot(1), !s1)],
                vec![term(0, Outer, false), term(0, Slot(2), !s2)],
            ],
        }
    }
}

/// Block-entry index lookup for degree-`s` maps: `idx[i][j]` is the
/// position of entry `(i, j)` among the free entries, if it is free.
struct BlockIndex {
    entries: Vec<(usize, usize)>,
    idx: Vec<Vec<Option<usize>>>,
}

impl BlockIndex {
    fn new(t: &TripleSystem, s: u8) -> Self {
        let n = t.dim();
        let entries = block_entries(t.space(), s);
        let mut idx = vec![vec![None; n]; n];
        for (e, &(i, j)) in entries.iter().enumerate() {
            idx[i][j] = Some(e);
        }
        Self { entries, idx }
    }

    fn len(&self) -> usize {
        self.entries.len()
    }

    /// Embeds free-entry coordinates into the `n²` row-major ambient.
    fn embed(&self, n: usize, coords: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n * n];
        for (c, &(i, j)) in coords.iter().zip(&self.entries) {
            out[i * n + j] = c.clone();
        }
        out
    }
}

/// Echelon form of every linear constraint `cond` imposes on its unknown
/// maps of degree `s`, in concatenated free-entry coordinates.
fn constraint_echelon(t: &TripleSystem, cond: Condition, s: u8, block: &BlockIndex) -> RowEchelon {
    let n = t.dim();
    let m = block.len();
    let width = cond.unknowns() * m;
    let mut ech = RowEchelon::new(width);
    let f = t.structure_constants();
    for a in 0..n {
        for b in 0..n {
            let fams = cond.families(t, u32::from(s), a, b);
            for c in 0..n {
                let args = [a, b, c];
                for fam in &fams {
                    let mut rows = vec![vec![Rational::zero(); width]; n];
                    for tm in fam {
                        let base = tm.unknown * m;
                        match tm.place {
                            Place::Slot(p) => {
                                let x = args[p];
                                let mut inner = args;
                                for y in 0..n {
                                    let Some(e) = block.idx[y][x] else { continue };
                                    inner[p] = y;
                                    for (l, v) in f.value(&inner).iter().enumerate() {
                                        if !v.is_zero() {
                                            add_to(&mut rows[l][base + e], tm.neg, v);
                                        }
                                    }
                                }
                            }
                            Place::Outer => {
                                for (y, v) in f.value(&args).iter().enumerate() {
                                    if v.is_zero() {
                                        continue;
                                    }
                                    for (l, row) in rows.iter_mut().enumerate() {
                                        if let Some(e) = block.idx[l][y] {
                                            add_to(&mut row[base + e], tm.neg, v);
                                        }
                                    }
                                }
                            }
                        }
                    }
                    for r in rows {
                        ech.push(r);
                    }
                }
            }
        }
    }
    ech
}

fn add_to(x: &mut Rational, neg: bool, v: &Rational) {
    if neg {
        *x -= v;
    } else {
        *x += v;
    }
}

/// Solution space of `cond` in degree `s`: the projection onto the first
/// unknown (as a subspace of `n²` matrix coordinates) and, for each basis
/// vector, auxiliary maps completing it to a full solution.
fn solve_degree(t: &TripleSystem, cond: Condition, s: u8) -> (Subspace, Vec<Vec<HomMap>>) {
    let n = t.dim();
    let block = BlockIndex::new(t, s);
    let m = block.len();
    let r = cond.unknowns();
    let kernel = crate::linalg::matrix::kernel_from_echelon(constraint_echelon(t, cond, s, &block));
    // The kernel basis is reduced echelon with the first unknown's columns
    // leading, so rows pivoting there project to a reduced echelon basis
    // of the projection and their tails are witnesses.
    let mut proj = Vec::new();
    let mut witnesses = Vec::new();
    for row in kernel.basis_vectors() {
        if row[..m].iter().all(Zero::is_zero) {
            break;
        }
        proj.push(block.embed(n, &row[..m]));
        let aux = (1..r)
            .map(|u| {
                HomMap::from_coords(t.space(), s, &block.embed(n, &row[u * m..(u + 1) * m])).expect("block-constrained by construction")
            })
            .collect();
        witnesses.push(aux);
    }
    let space = Subspace::from_rows(n * n, proj).expect("ambient length n²");
    (space, witnesses)
}

/// A space of homogeneous maps (or, for the center, of vectors), stored as
/// its even and odd parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSpace {
    pub kind: OperatorKind,
    pub k: Option<u32>,
    pub even: Subspace,
    pub odd: Subspace,
    /// Auxiliary maps for each basis element of each part, in the order
    /// `D′` (quasiderivations) or `D′, D″, D‴` (generalized derivations).
    pub witnesses: [Vec<Vec<HomMap>>; 2],
    /// For the quasicentroid: whether every basis element also satisfies
    /// the identities in the other two slots.
    pub derived_identities_hold: Option<bool>,
}

impl OperatorSpace {
    pub fn part(&self, degree: u8) -> &Subspace {
        if degree == 0 {
            &self.even
        } else {
            &self.odd
        }
    }

    pub fn dim_even(&self) -> usize {
        self.even.dim()
    }

    pub fn dim_odd(&self) -> usize {
        self.odd.dim()
    }

    pub fn dim(&self) -> usize {
        self.even.dim() + self.odd.dim()
    }

    /// Basis maps of one degree.
    pub fn basis_maps(&self, t: &TripleSystem, degree: u8) -> Vec<HomMap> {
        assert_ne!(self.kind, OperatorKind::Center, "the center holds vectors, not maps");
        self.part(degree)
            .basis_vectors()
            .map(|v| HomMap::from_coords(t.space(), degree, v).expect("parts are block-constrained"))
            .collect()
    }

    pub fn contains_map(&self, d: &HomMap) -> bool {
        self.part(d.degree()).contains_vector(d.coords()).expect("ambient n²")
    }

    /// `other ⊆ self`, degree by degree.
    pub fn contains(&self, other: &OperatorSpace) -> bool {
        self.even.contains(&other.even).expect("same ambient") && self.odd.contains(&other.odd).expect("same ambient")
    }

    pub fn intersect(&self, other: &OperatorSpace) -> (Subspace, Subspace) {
        (self.even.intersect(&other.even).expect("same ambient"), self.odd.intersect(&other.odd).expect("same ambient"))
    }
}

fn map_space(t: &TripleSystem, kind: OperatorKind, k: Option<u32>, cond: Condition) -> OperatorSpace {
    let (even, we) = solve_degree(t, cond, 0);
    let (odd, wo) = solve_degree(t, cond, 1);
    OperatorSpace { kind, k, even, odd, witnesses: [we, wo], derived_identities_hold: None }
}

pub fn derivation_space(t: &TripleSystem, k: u32) -> OperatorSpace {
    map_space(t, OperatorKind::Der, Some(k), Condition::Der { k })
}

pub fn quasiderivation_space(t: &TripleSystem, k: u32) -> OperatorSpace {
    map_space(t, OperatorKind::QDer, Some(k), Condition::QDer { k })
}

pub fn generalized_derivation_space(t: &TripleSystem, k: u32) -> OperatorSpace {
    map_space(t, OperatorKind::GDer, Some(k), Condition::GDer { k })
}

pub fn centroid(t: &TripleSystem, k: u32) -> OperatorSpace {
    map_space(t, OperatorKind::Centroid, Some(k), Condition::Centroid { k })
}

/// The quasicentroid, with a report on whether its basis also satisfies
/// the slot-2 and slot-3 identities.
pub fn quasicentroid(t: &TripleSystem) -> OperatorSpace {
    let mut qc = map_space(t, OperatorKind::Qc, None, Condition::Qc);
    let holds = [0u8, 1].iter().all(|&s| qc.basis_maps(t, s).iter().all(|d| first_violation(t, Condition::QcDerived, d, &[]).is_none()));
    qc.derived_identities_hold = Some(holds);
    qc
}

pub fn central_derivations(t: &TripleSystem) -> OperatorSpace {
    map_space(t, OperatorKind::ZDer, None, Condition::ZDer)
}

/// `Z(T) = {a : [a, b, c] = 0 for all b, c}`, split by degree.
pub fn center(t: &TripleSystem) -> OperatorSpace {
    let n = t.dim();
    let f = t.structure_constants();
    let part = |s: u32| {
        let mut ech = RowEchelon::new(n);
        // Coordinates of the wrong degree are forced to zero.
        for i in (0..n).filter(|&i| t.parity(i) != s) {
            let mut r = vec![Rational::zero(); n];
            r[i] = rational::one();
            ech.push(r);
        }
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    ech.push((0..n).map(|a| f.value(&[a, j, k])[l].clone()).collect());
                }
            }
        }
        crate::linalg::matrix::kernel_from_echelon(ech)
    };
    OperatorSpace {
        kind: OperatorKind::Center,
        k: None,
        even: part(0),
        odd: part(1),
        witnesses: [Vec::new(), Vec::new()],
        derived_identities_hold: None,
    }
}

/// Dispatches on the kind; `k` is ignored for kinds not indexed by it.
pub fn operator_space(t: &TripleSystem, kind: OperatorKind, k: u32) -> OperatorSpace {
    match kind {
        OperatorKind::Der => derivation_space(t, k),
        OperatorKind::QDer => quasiderivation_space(t, k),
        OperatorKind::GDer => generalized_derivation_space(t, k),
        OperatorKind::Centroid => centroid(t, k),
        OperatorKind::Qc => quasicentroid(t),
        OperatorKind::ZDer => central_derivations(t),
        OperatorKind::Center => center(t),
    }
}

/// The whole block-constrained endomorphism space.
pub fn end_space(t: &TripleSystem) -> OperatorSpace {
    let n = t.dim();
    let part = |s: u8| {
        let rows = block_entries(t.space(), s).into_iter().map(|(i, j)| {
            let mut v = vec![Rational::zero(); n * n];
            v[i * n + j] = rational::one();
            v
        });
        Subspace::from_rows(n * n, rows.collect::<Vec<_>>()).expect("ambient n²")
    };
    OperatorSpace {
        kind: OperatorKind::Der,
        k: None,
        even: part(0),
        odd: part(1),
        witnesses: [Vec::new(), Vec::new()],
        derived_identities_hold: None,
    }
}

/// Evaluates `cond` pointwise with `d` as the first unknown and `aux` as
/// the rest, returning the first basis triple where some family fails.
/// This uses direct bracket evaluation, not the constraint assembly.
pub fn first_violation(t: &TripleSystem, cond: Condition, d: &HomMap, aux: &[HomMap]) -> Option<[usize; 3]> {
    assert_eq!(aux.len() + 1, cond.unknowns(), "wrong number of auxiliary maps");
    let n = t.dim();
    let s = u32::from(d.degree());
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); n];
        v[i] = rational::one();
        v
    };
    let maps: Vec<&HomMap> = std::iter::once(d).chain(aux).collect();
    crate::tensor::find_tuple(3, n, |idx| {
        let args: Vec<Vec<Rational>> = idx.iter().map(|&i| unit(i)).collect();
        for fam in cond.families(t, s, idx[0], idx[1]) {
            let mut total = vec![Rational::zero(); n];
            for tm in fam {
                let map = maps[tm.unknown];
                let v = match tm.place {
                    Place::Slot(p) => {
                        let mut a = args.clone();
                        a[p] = map.apply(&args[p]);
                        t.bracket_coords(&a[0], &a[1], &a[2])
                    }
                    Place::Outer => map.apply(&t.bracket_coords(&args[0], &args[1], &args[2])),
                };
                rational::add_signed(&mut total, tm.neg, &v);
            }
            if !rational::is_zero_vec(&total) {
                return Some([idx[0], idx[1], idx[2]]);
            }
        }
        None
    })
}

/// Re-verifies every basis element of a quasi- or generalized-derivation
/// space against its stored witnesses; other kinds are checked directly.
pub fn verify_witnesses(t: &TripleSystem, space: &OperatorSpace) -> bool {
    let cond = match (space.kind, space.k) {
        (OperatorKind::Der, Some(k)) => Condition::Der { k },
        (OperatorKind::QDer, Some(k)) => Condition::QDer { k },
        (OperatorKind::GDer, Some(k)) => Condition::GDer { k },
        (OperatorKind::Centroid, Some(k)) => Condition::Centroid { k },
        (OperatorKind::Qc, _) => Condition::Qc,
        (OperatorKind::ZDer, _) => Condition::ZDer,
        _ => return true,
    };
    [0u8, 1].iter().all(|&s| {
        space.basis_maps(t, s).iter().enumerate().all(|(i, d)| {
            let aux = space.witnesses[usize::from(s)].get(i).cloned().unwrap_or_default();
            first_violation(t, cond, d, &aux).is_none()
        })
    })
}
