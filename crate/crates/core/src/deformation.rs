//! Truncated one-parameter formal deformations, first-order equivalence,
//! rigidity, and Nijenhuis operators with their trivial deformations.
//! All cohomology here is taken with respect to the adjoint representation.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::{verify_axioms, AxiomReport};
use crate::cohomology::{
    adjoint_representation, coboundary, cochain_space, cochain_violation, cohomology_degree, Cochain, CochainViolation,
};
use crate::error::{Error, Result};
use crate::hom::HomMap;
use crate::linalg::rational::{axpy, format, is_zero_vec, odd, one};
use crate::linalg::{Matrix, Rational};
use crate::system::TripleSystem;
use crate::tensor::{decode_tuple, find_tuple, MultiLinearMap};

/// `f_t = [·,·,·] + f₁t + ⋯ + f_N t^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalDeformation {
    pub base: TripleSystem,
    /// `f₁, …, f_N`.
    pub terms: Vec<MultiLinearMap>,
}

impl FormalDeformation {
    pub fn new(base: TripleSystem, terms: Vec<MultiLinearMap>) -> Result<Self> {
        let n = base.dim();
        for f in &terms {
            check_trilinear(n, f)?;
        }
        Ok(Self { base, terms })
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `f₀` is the bracket.
    pub fn term(&self, i: usize) -> &MultiLinearMap {
        if i == 0 {
            self.base.structure_constants()
        } else {
            &self.terms[i - 1]
        }
    }
}

fn check_trilinear(n: usize, f: &MultiLinearMap) -> Result<()> {
    if f.arity() != 3 || f.in_dim() != n || f.out_dim() != n {
        return Err(Error::DimensionMismatch { expected: n.pow(4), found: f.coords().len() });
    }
    Ok(())
}

/// The composition `f_i ∘ f_j` whose sums over `i + j = n` encode the
/// order-n deformation equation:
/// `−f_i(x₁,x₂,f_j(x₃,x₄,x₅)) + (−1)^{|x₃|(|x₁|+|x₂|)} f_i(x₃,f_j(x₁,x₂,x₄),x₅)
///  + f_i(f_j(x₁,x₂,x₃),x₄,x₅) + δ(−1)^{(|x₁|+|x₂|)(|x₃|+|x₄|)} f_i(x₃,x₄,f_j(x₁,x₂,x₅))`.
pub fn circle(t: &TripleSystem, fi: &MultiLinearMap, fj: &MultiLinearMap) -> Result<MultiLinearMap> {
    let n = t.dim();
    check_trilinear(n, fi)?;
    check_trilinear(n, fj)?;
    let minus = t.delta().is_minus();
    let values: Vec<Vec<Rational>> = (0..n.pow(5))
        .into_par_iter()
        .map(|ti| {
            let x = decode_tuple(ti, 5, n);
            let p = |k: usize| t.parity(x[k]);
            let mut out = vec![Rational::zero(); n];
            let mut put = |neg: bool, args: [usize; 3], slot: usize, inner: [usize; 3]| {
                let combo = fj.value(&inner);
                if !is_zero_vec(combo) {
                    let mut a = args;
                    fi.accumulate_with_slot(&mut out, neg, &mut a, slot, combo);
                }
            };
            put(true, [x[0], x[1], 0], 2, [x[2], x[3], x[4]]);
            put(odd(p(2) * (p(0) + p(1))), [x[2], 0, x[4]], 1, [x[0], x[1], x[3]]);
            put(false, [0, x[3], x[4]], 0, [x[0], x[1], x[2]]);
            put(minus ^ odd((p(0) + p(1)) * (p(2) + p(3))), [x[2], x[3], 0], 2, [x[0], x[1], x[4]]);
            out
        })
        .collect();
    MultiLinearMap::from_coords(5, n, n, values.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderCheck {
    pub order: usize,
    pub holds: bool,
    /// First 5-tuple where `Σ_{i+j=n} f_i ∘ f_j` is nonzero.
    pub violation: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermCheck {
    pub order: usize,
    pub violation: Option<CochainViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    pub orders: Vec<OrderCheck>,
    /// Grading, skew and cyclic rules for each `f_i`, `i ≥ 1`.
    pub terms: Vec<TermCheck>,
    /// Whether `d³f₁ = 0`; absent when there are no terms.
    pub infinitesimal_cocycle: Option<bool>,
}

impl DeformationReport {
    pub fn all_hold(&self) -> bool {
        self.orders.iter().all(|o| o.holds) && self.terms.iter().all(|t| t.violation.is_none())
    }
}

/// Checks orders `0..=N` of the deformation equation and the cochain
/// rules of every term.
pub fn check_deformation(fd: &FormalDeformation) -> Result<DeformationReport> {
    let t = &fd.base;
    let n = t.dim();
    let big_n = fd.order();
    let mut orders = Vec::with_capacity(big_n + 1);
    for order in 0..=big_n {
        let mut sum = MultiLinearMap::zeros(5, n, n);
        for i in 0..=order {
            let c = circle(t, fd.term(i), fd.term(order - i))?;
            sum = sum.add(&c)?;
        }
        let violation = sum.first_nonzero().map(|(x, _)| x);
        orders.push(OrderCheck { order, holds: violation.is_none(), violation });
    }
    let terms = fd
        .terms
        .iter()
        .enumerate()
        .map(|(i, f)| TermCheck { order: i + 1, violation: cochain_violation(t.space(), t.delta(), t.space(), 0, f) })
        .collect();
    let infinitesimal_cocycle = match fd.terms.first() {
        Some(f1) => Some(is_adjoint_cocycle(t, f1)?),
        None => None,
    };
    Ok(DeformationReport { orders, terms, infinitesimal_cocycle })
}

fn is_adjoint_cocycle(t: &TripleSystem, f: &MultiLinearMap) -> Result<bool> {
    let rep = adjoint_representation(t);
    Ok(coboundary(t, &rep, &Cochain { degree: 0, map: f.clone() })?.is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum FirstOrderEquivalence {
    /// `f₁ − f₁′ = d¹φ₁` for the given even `φ₁`.
    Cohomologous {
        #[serde(serialize_with = "serialize_hom")]
        phi: HomMap,
    },
    NotCohomologous,
}

fn serialize_hom<S: serde::Serializer>(h: &HomMap, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(h.matrix().iter_rows().map(|r| r.iter().map(format).collect::<Vec<_>>()))
}

/// Decides whether two infinitesimal deformations differ by a coboundary
/// `d¹φ₁` of an even linear map, returning such a `φ₁` when they do.
pub fn first_order_equivalence(t: &TripleSystem, f1: &MultiLinearMap, f1p: &MultiLinearMap) -> Result<FirstOrderEquivalence> {
    let n = t.dim();
    for (name, f) in [("f1", f1), ("f1'", f1p)] {
        check_trilinear(n, f)?;
        if let Some(v) = cochain_violation(t.space(), t.delta(), t.space(), 0, f) {
            return Err(Error::Malformed(format!("{name} is not an even 3-cochain: {} fails at {:?}", v.rule, v.tuple)));
        }
        if !is_adjoint_cocycle(t, f)? {
            return Err(Error::NotCocycle(name));
        }
    }
    let target = f1.sub(f1p)?;
    match solve_coboundary(t, &target)? {
        Some(phi) => Ok(FirstOrderEquivalence::Cohomologous { phi }),
        None => Ok(FirstOrderEquivalence::NotCohomologous),
    }
}

/// Some even `φ` with `d¹φ = g` under the adjoint representation.
pub fn solve_coboundary(t: &TripleSystem, g: &MultiLinearMap) -> Result<Option<HomMap>> {
    let rep = adjoint_representation(t);
    let c1 = cochain_space(t, t.space(), 1, 0)?;
    let basis = c1.basis_cochains();
    let ops = rep.ops(t);
    let images = crate::cohomology::coboundaries(t, &ops, &basis);
    let r = basis.len();
    let rows: Vec<Vec<Rational>> = (0..g.coords().len()).map(|o| images.iter().map(|im| im.coords()[o].clone()).collect()).collect();
    let a = Matrix::from_rows(r, rows)?;
    let Some(coeffs) = a.solve(g.coords())? else {
        return Ok(None);
    };
    let mut coords = vec![Rational::zero(); c1.ambient_dim()];
    for (c, f) in coeffs.iter().zip(&basis) {
        if !c.is_zero() {
            axpy(&mut coords, false, c, f.map.coords());
        }
    }
    c1.cochain_from_coords(coords).to_hom(t.space()).map(Some)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    /// `dim H³` in the even degree, where deformation terms live.
    pub dim_h3: usize,
    pub dim_z3: usize,
    pub dim_b3: usize,
    /// `dim H³` in the odd degree, for reference.
    pub dim_h3_odd: usize,
    /// `H³ = 0` implies analytic rigidity; the converse is not claimed.
    pub rigid_sufficient: bool,
}

pub fn rigidity_report(t: &TripleSystem) -> Result<RigidityReport> {
    let rep = adjoint_representation(t);
    let even = cohomology_degree(t, &rep, 3, 0)?;
    let odd_part = cohomology_degree(t, &rep, 3, 1)?;
    let dim_h3 = even.dim_h.expect("defined for n = 3");
    Ok(RigidityReport {
        dim_h3,
        dim_z3: even.dim_z,
        dim_b3: even.dim_b.expect("defined for n = 3"),
        dim_h3_odd: odd_part.dim_h.expect("defined for n = 3"),
        rigid_sufficient: dim_h3 == 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NijenhuisReport {
    /// `[Nx₁, Nx₂, Nx₃] = 0` on all basis triples.
    pub image_bracket_vanishes: bool,
    /// `N²[x₁,x₂,x₃] = N[Nx₁,x₂,x₃] + N[x₁,Nx₂,x₃] + N[x₁,x₂,Nx₃]
    ///  − [Nx₁,Nx₂,x₃] − [x₁,Nx₂,Nx₃] − [Nx₁,x₂,Nx₃]` on all basis triples.
    pub quadratic_identity: bool,
    /// `(identity, basis triple)` of the first failure.
    pub violation: Option<(&'static str, [usize; 3])>,
}

impl NijenhuisReport {
    pub fn is_nijenhuis(&self) -> bool {
        self.image_bracket_vanishes && self.quadratic_identity
    }
}

fn columns(n_map: &HomMap) -> Vec<Vec<Rational>> {
    (0..n_map.dim()).map(|j| n_map.matrix().column(j)).collect()
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = one();
    v
}

fn require_even(t: &TripleSystem, n_map: &HomMap) -> Result<()> {
    if n_map.dim() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), found: n_map.dim() });
    }
    if n_map.degree() != 0 {
        return Err(Error::OddOperator(n_map.degree()));
    }
    Ok(())
}

pub fn is_nijenhuis(t: &TripleSystem, n_map: &HomMap) -> Result<NijenhuisReport> {
    require_even(t, n_map)?;
    let n = t.dim();
    let nc = columns(n_map);
    let br = |a: &[Rational], b: &[Rational], c: &[Rational]| t.bracket_coords(a, b, c);
    let first = find_tuple(3, n, |x| {
        let (a, b, c) = (x[0], x[1], x[2]);
        (!is_zero_vec(&br(&nc[a], &nc[b], &nc[c]))).then_some([a, b, c])
    });
    let second = find_tuple(3, n, |x| {
        let (ea, eb, ec) = (unit(n, x[0]), unit(n, x[1]), unit(n, x[2]));
        let (na, nb, nc_) = (&nc[x[0]], &nc[x[1]], &nc[x[2]]);
        let lhs = n_map.apply(&n_map.apply(t.bracket_basis(x[0], x[1], x[2])));
        let mut inner = br(na, &eb, &ec);
        axpy(&mut inner, false, &one(), &br(&ea, nb, &ec));
        axpy(&mut inner, false, &one(), &br(&ea, &eb, nc_));
        let mut rhs = n_map.apply(&inner);
        axpy(&mut rhs, true, &one(), &br(na, nb, &ec));
        axpy(&mut rhs, true, &one(), &br(&ea, nb, nc_));
        axpy(&mut rhs, true, &one(), &br(na, &eb, nc_));
        (lhs != rhs).then_some([x[0], x[1], x[2]])
    });
    let violation = first.map(|x| ("image-bracket", x)).or(second.map(|x| ("quadratic", x)));
    Ok(NijenhuisReport { image_bracket_vanishes: first.is_none(), quadratic_identity: second.is_none(), violation })
}

/// `ψ = [Nx₁,x₂,x₃] + [x₁,Nx₂,x₃] + [x₁,x₂,Nx₃] − N[x₁,x₂,x₃]`, expanded
/// directly from the bracket.
pub fn nijenhuis_psi_direct(t: &TripleSystem, n_map: &HomMap) -> MultiLinearMap {
    let n = t.dim();
    let nc = columns(n_map);
    let mut psi = MultiLinearMap::zeros(3, n, n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ea, eb, ec) = (unit(n, a), unit(n, b), unit(n, c));
                let mut v = t.bracket_coords(&nc[a], &eb, &ec);
                axpy(&mut v, false, &one(), &t.bracket_coords(&ea, &nc[b], &ec));
                axpy(&mut v, false, &one(), &t.bracket_coords(&ea, &eb, &nc[c]));
                axpy(&mut v, true, &one(), &n_map.apply(t.bracket_basis(a, b, c)));
                psi.value_mut(&[a, b, c]).clone_from_slice(&v);
            }
        }
    }
    psi
}

/// `ψ = d¹N` for a Nijenhuis operator `N`; agrees entrywise with
/// [`nijenhuis_psi_direct`].
pub fn nijenhuis_infinitesimal(t: &TripleSystem, n_map: &HomMap) -> Result<MultiLinearMap> {
    let report = is_nijenhuis(t, n_map)?;
    if let Some((which, x)) = report.violation {
        return Err(Error::NotNijenhuis(format!("{which} identity fails at {x:?}")));
    }
    let rep = adjoint_representation(t);
    let psi = coboundary(t, &rep, &Cochain::from_hom(n_map))?;
    assert_eq!(psi, nijenhuis_psi_direct(t, n_map), "d¹N disagrees with the direct expansion");
    Ok(psi)
}

/// `[x₁,x₂,x₃]_λ = [x₁,x₂,x₃] + λψ(x₁,x₂,x₃)`.
pub fn deform_specialize(t: &TripleSystem, psi: &MultiLinearMap, lambda: &Rational) -> Result<TripleSystem> {
    check_trilinear(t.dim(), psi)?;
    let bracket = t.structure_constants().add(&psi.scale(lambda))?;
    TripleSystem::new(format!("{}_lambda={}", t.name(), format(lambda)), t.space().clone(), t.delta(), bracket)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaSample {
    #[serde(with = "crate::linalg::rational::serde_str")]
    pub lambda: Rational,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaFamilyReport {
    /// Axioms for `ψ` on its own.
    pub psi_axioms: AxiomReport,
    pub psi_is_system: bool,
    /// `d³ψ = 0` under the adjoint representation.
    pub psi_cocycle: bool,
    /// Both conditions together: `T_λ` valid for every λ.
    pub predicted_valid: bool,
    pub samples: Vec<LambdaSample>,
    /// At least two distinct nonzero samples: each axiom is a polynomial
    /// of degree ≤ 2 in λ with no constant term, so the samples decide it.
    pub certified: bool,
    /// The samples are consistent with the prediction.
    pub agrees: bool,
}

/// Predicts the validity of `T_λ` from `ψ` and compares with
/// `verify_axioms` at each sample λ.
pub fn check_lambda_family(t: &TripleSystem, psi: &MultiLinearMap, lambdas: &[Rational]) -> Result<LambdaFamilyReport> {
    check_trilinear(t.dim(), psi)?;
    let psi_system = TripleSystem::new("psi", t.space().clone(), t.delta(), psi.clone())?;
    let psi_axioms = verify_axioms(&psi_system);
    let psi_is_system = psi_axioms.all_hold();
    let psi_cocycle = is_adjoint_cocycle(t, psi)?;
    let predicted_valid = psi_is_system && psi_cocycle;
    let samples = lambdas
        .par_iter()
        .map(|l| Ok(LambdaSample { lambda: l.clone(), valid: verify_axioms(&deform_specialize(t, psi, l)?).all_hold() }))
        .collect::<Result<Vec<_>>>()?;
    let mut nonzero: Vec<&Rational> = lambdas.iter().filter(|l| !l.is_zero()).collect();
    nonzero.sort();
    nonzero.dedup();
    let certified = nonzero.len() >= 2;
    let all_nonzero_valid = samples.iter().filter(|s| !s.lambda.is_zero()).all(|s| s.valid);
    let agrees = if predicted_valid { samples.iter().all(|s| s.valid) } else { !certified || !all_nonzero_valid };
    Ok(LambdaFamilyReport { psi_axioms, psi_is_system, psi_cocycle, predicted_valid, samples, certified, agrees })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum TrivialWitness {
    /// `φ_λ[x₁,x₂,x₃]_λ = [φ_λx₁, φ_λx₂, φ_λx₃]` on all basis triples.
    Holds,
    Fails { triple: [usize; 3] },
    /// `id + λN` is not invertible at this λ.
    Singular,
}

/// Checks that `φ_λ = id + λN` maps `T_λ` (built from `ψ = d¹N`) to `T`.
pub fn verify_trivial_witness(t: &TripleSystem, n_map: &HomMap, lambda: &Rational) -> Result<TrivialWitness> {
    let psi = nijenhuis_infinitesimal(t, n_map)?;
    Ok(trivial_witness_with(t, n_map, &psi, lambda))
}

fn trivial_witness_with(t: &TripleSystem, n_map: &HomMap, psi: &MultiLinearMap, lambda: &Rational) -> TrivialWitness {
    let n = t.dim();
    let phi = Matrix::identity(n).add(&n_map.matrix().scale(lambda)).expect("square");
    if phi.rank() < n {
        return TrivialWitness::Singular;
    }
    let cols: Vec<Vec<Rational>> = (0..n).map(|j| phi.column(j)).collect();
    let fail = find_tuple(3, n, |x| {
        let mut inner = t.bracket_basis(x[0], x[1], x[2]).to_vec();
        axpy(&mut inner, false, lambda, psi.value(x));
        let lhs = phi.apply(&inner);
        let rhs = t.bracket_coords(&cols[x[0]], &cols[x[1]], &cols[x[2]]);
        (lhs != rhs).then_some([x[0], x[1], x[2]])
    });
    match fail {
        Some(triple) => TrivialWitness::Fails { triple },
        None => TrivialWitness::Holds,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivialitySample {
    #[serde(with = "crate::linalg::rational::serde_str")]
    pub lambda: Rational,
    pub witness: TrivialWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivialityReport {
    pub samples: Vec<TrivialitySample>,
    /// At least four distinct nonsingular λ and no failures: the defining
    /// identity has degree ≤ 3 in λ, so this proves it for every λ.
    pub certified: bool,
}

pub fn certify_trivial(t: &TripleSystem, n_map: &HomMap, lambdas: &[Rational]) -> Result<TrivialityReport> {
    let psi = nijenhuis_infinitesimal(t, n_map)?;
    let samples: Vec<TrivialitySample> = lambdas
        .iter()
        .map(|l| TrivialitySample { lambda: l.clone(), witness: trivial_witness_with(t, n_map, &psi, l) })
        .collect();
    let mut ok: Vec<&Rational> = samples.iter().filter(|s| s.witness == TrivialWitness::Holds).map(|s| &s.lambda).collect();
    ok.sort();
    ok.dedup();
    let no_failures = samples.iter().all(|s| !matches!(s.witness, TrivialWitness::Fails { .. }));
    Ok(TrivialityReport { certified: no_failures && ok.len() >= 4, samples })
}
