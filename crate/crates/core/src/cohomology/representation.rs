//! Representations `(V, θ)`, the derived operators `D(a, b)`, and the
//! semidirect sum `T ⊕ V`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rational::odd;
use crate::linalg::{Matrix, Rational};
use crate::system::{SuperSpace, TripleSystem};
use crate::tensor::{find_tuple, MultiLinearMap};

/// A bilinear map `θ : T × T → End(V)` given on basis pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    module: SuperSpace,
    t_dim: usize,
    /// `theta[i * t_dim + j] = θ(eᵢ, eⱼ)`.
    theta: Vec<Matrix>,
}

impl Representation {
    /// Validates shapes and the block constraint: `θ(eᵢ, eⱼ)` shifts
    /// V-degree by `|eᵢ| + |eⱼ|`.
    pub fn new(t: &TripleSystem, module: SuperSpace, theta: Vec<Matrix>) -> Result<Self> {
        let (n, m) = (t.dim(), module.dim());
        if theta.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: theta.len() });
        }
        for (idx, mat) in theta.iter().enumerate() {
            if mat.rows() != m || mat.cols() != m {
                return Err(Error::DimensionMismatch { expected: m * m, found: mat.rows() * mat.cols() });
            }
            let shift = t.parity(idx / n) + t.parity(idx % n);
            for r in 0..m {
                for c in 0..m {
                    if !mat[(r, c)].is_zero() && (module.parity(c) + shift) % 2 != module.parity(r) {
                        return Err(Error::InvalidRepresentation(format!(
                            "θ(e{}, e{}) entry ({r}, {c}) breaks the grading",
                            idx / n,
                            idx % n
                        )));
                    }
                }
            }
        }
        Ok(Self { module, t_dim: n, theta })
    }

    /// `θ ≡ 0` on the given module.
    pub fn zero(t: &TripleSystem, module: SuperSpace) -> Self {
        let m = module.dim();
        Self { module, t_dim: t.dim(), theta: vec![Matrix::zeros(m, m); t.dim() * t.dim()] }
    }

    pub fn module(&self) -> &SuperSpace {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn t_dim(&self) -> usize {
        self.t_dim
    }

    pub fn theta(&self, i: usize, j: usize) -> &Matrix {
        &self.theta[i * self.t_dim + j]
    }

    pub fn thetas(&self) -> &[Matrix] {
        &self.theta
    }

    /// `D(eᵢ, eⱼ) = (−1)^{|eᵢ||eⱼ|}θ(eⱼ, eᵢ) − δθ(eᵢ, eⱼ)`.
    pub fn derived(&self, t: &TripleSystem, i: usize, j: usize) -> Matrix {
        let a = self.theta(j, i);
        let b = self.theta(i, j);
        let a = if odd(t.parity(i) * t.parity(j)) { a.neg() } else { a.clone() };
        if t.delta().is_minus() {
            a.add(b).expect("same shape")
        } else {
            a.sub(b).expect("same shape")
        }
    }

    /// All derived operators, indexed like `thetas`.
    pub fn derived_all(&self, t: &TripleSystem) -> Vec<Matrix> {
        let n = self.t_dim;
        (0..n * n).map(|idx| self.derived(t, idx / n, idx % n)).collect()
    }

    pub fn ops(&self, t: &TripleSystem) -> RepOps {
        RepOps { n: self.t_dim, theta: self.theta.clone(), d: self.derived_all(t) }
    }
}

/// θ and D for every basis pair, ready for repeated evaluation.
#[derive(Debug, Clone)]
pub struct RepOps {
    pub n: usize,
    pub theta: Vec<Matrix>,
    pub d: Vec<Matrix>,
}

impl RepOps {
    pub fn theta(&self, i: usize, j: usize) -> &Matrix {
        &self.theta[i * self.n + j]
    }

    pub fn d(&self, i: usize, j: usize) -> &Matrix {
        &self.d[i * self.n + j]
    }
}

/// `Σ_l v[l] · ops[(l, j)]` (first argument a vector).
fn comb_first(ops: &[Matrix], n: usize, v: &[Rational], j: usize) -> Matrix {
    let m = ops[0].rows();
    let mut out = Matrix::zeros(m, m);
    for (l, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&ops[l * n + j].scale(c)).expect("same shape");
        }
    }
    out
}

/// `Σ_l v[l] · ops[(i, l)]` (second argument a vector).
fn comb_second(ops: &[Matrix], n: usize, i: usize, v: &[Rational]) -> Matrix {
    let m = ops[0].rows();
    let mut out = Matrix::zeros(m, m);
    for (l, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&ops[i * n + l].scale(c)).expect("same shape");
        }
    }
    out
}

fn acc(total: &mut Matrix, neg: bool, m: &Matrix) {
    *total = if neg { total.sub(m) } else { total.add(m) }.expect("same shape");
}

fn prod(a: &Matrix, b: &Matrix) -> Matrix {
    a.mul(b).expect("square, same size")
}

/// One of the operator identities, evaluated on a basis 4-tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepIdentity {
    /// The θθ compatibility identity.
    ThetaTheta,
    /// The θD compatibility identity.
    ThetaD,
    /// The DD compatibility identity.
    DD,
    /// The θθ combination as it appears in the complex proof, on
    /// `(x₂, x₃, x₄, x₅)`; it carries an extra δ on the D-term.
    Lambda1,
    /// The same combination on `(x₁, x₃, x₄, x₅)`.
    Lambda2,
    /// The θD combination from the complex proof on `(x₁, x₂, x₄, x₅)`,
    /// with the δ on the first term that the θD identity requires (without
    /// it the combination does not vanish when δ = −1).
    Lambda3,
    /// The same combination on `(x₁, x₂, x₃, x₅)`.
    Lambda4,
    /// The DD combination on `(x₁, x₂, x₃, x₄)`.
    Lambda5,
}

impl RepIdentity {
    pub const DEFINING: [RepIdentity; 3] = [RepIdentity::ThetaTheta, RepIdentity::ThetaD, RepIdentity::DD];
    pub const LAMBDAS: [RepIdentity; 5] =
        [RepIdentity::Lambda1, RepIdentity::Lambda2, RepIdentity::Lambda3, RepIdentity::Lambda4, RepIdentity::Lambda5];

    pub fn label(self) -> &'static str {
        match self {
            RepIdentity::ThetaTheta => "theta-theta",
            RepIdentity::ThetaD => "theta-D",
            RepIdentity::DD => "D-D",
            RepIdentity::Lambda1 => "lambda1",
            RepIdentity::Lambda2 => "lambda2",
            RepIdentity::Lambda3 => "lambda3",
            RepIdentity::Lambda4 => "lambda4",
            RepIdentity::Lambda5 => "lambda5",
        }
    }

    /// The operator the identity asserts to be zero, on basis `(a, b, c, d)`.
    pub fn evaluate(self, t: &TripleSystem, ops: &RepOps, a: usize, b: usize, c: usize, d: usize) -> Matrix {
        let p = |i: usize| t.parity(i);
        let minus = t.delta().is_minus();
        let n = ops.n;
        let m = ops.theta[0].rows();
        let mut out = Matrix::zeros(m, m);
        let f = t.structure_constants();
        let s_ab_cd = odd((p(a) + p(b)) * (p(c) + p(d)));
        match self {
            RepIdentity::ThetaTheta | RepIdentity::Lambda1 | RepIdentity::Lambda2 => {
                // (−1)^{(|a|+|b|)(|c|+|d|)}θ(c,d)θ(a,b)
                acc(&mut out, s_ab_cd, &prod(ops.theta(c, d), ops.theta(a, b)));
                // −δ(−1)^{|a||b|+|d|(|c|+|a|)}θ(b,d)θ(a,c)
                acc(&mut out, !(minus ^ odd(p(a) * p(b) + p(d) * (p(c) + p(a)))), &prod(ops.theta(b, d), ops.theta(a, c)));
                // −θ(a,[b,c,d])
                acc(&mut out, true, &comb_second(&ops.theta, n, a, f.value(&[b, c, d])));
                // (−1)^{|a|(|b|+|c|)}D(b,c)θ(a,d), with an extra δ in the proof's version
                let extra = self != RepIdentity::ThetaTheta && minus;
                acc(&mut out, extra ^ odd(p(a) * (p(b) + p(c))), &prod(ops.d(b, c), ops.theta(a, d)));
            }
            RepIdentity::ThetaD | RepIdentity::Lambda3 | RepIdentity::Lambda4 => {
                // δ(−1)^{(|a|+|b|)(|c|+|d|)}θ(c,d)D(a,b)
                acc(&mut out, minus ^ s_ab_cd, &prod(ops.theta(c, d), ops.d(a, b)));
                // −δD(a,b)θ(c,d)
                acc(&mut out, !minus, &prod(ops.d(a, b), ops.theta(c, d)));
                // θ([a,b,c],d)
                acc(&mut out, false, &comb_first(&ops.theta, n, f.value(&[a, b, c]), d));
                // δ(−1)^{|c|(|a|+|b|)}θ(c,[a,b,d])
                acc(&mut out, minus ^ odd(p(c) * (p(a) + p(b))), &comb_second(&ops.theta, n, c, f.value(&[a, b, d])));
            }
            RepIdentity::DD | RepIdentity::Lambda5 => {
                // D([a,b,c],d) + (−1)^{|c|(|a|+|b|)}D(c,[a,b,d])
                acc(&mut out, false, &comb_first(&ops.d, n, f.value(&[a, b, c]), d));
                acc(&mut out, odd(p(c) * (p(a) + p(b))), &comb_second(&ops.d, n, c, f.value(&[a, b, d])));
                // −δD(a,b)D(c,d) + (−1)^{(|a|+|b|)(|c|+|d|)}D(c,d)D(a,b)
                acc(&mut out, !minus, &prod(ops.d(a, b), ops.d(c, d)));
                acc(&mut out, s_ab_cd, &prod(ops.d(c, d), ops.d(a, b)));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: RepIdentity,
    pub label: &'static str,
    pub holds: bool,
    /// First basis 4-tuple `(a, b, c, d)` in lexicographic order where the
    /// operator is nonzero.
    pub violation: Option<[usize; 4]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentationReport {
    /// The three defining identities.
    pub identities: Vec<IdentityCheck>,
    /// The five combinations from the complex proof, as a cross-check.
    pub lambdas: Vec<IdentityCheck>,
}

impl RepresentationReport {
    /// Whether `(V, θ)` is a representation.
    pub fn is_representation(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }

    pub fn lambdas_vanish(&self) -> bool {
        self.lambdas.iter().all(|c| c.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.is_representation() && self.lambdas_vanish()
    }
}

pub fn check_identity(t: &TripleSystem, ops: &RepOps, id: RepIdentity) -> IdentityCheck {
    let violation = find_tuple(4, t.dim(), |x| (!id.evaluate(t, ops, x[0], x[1], x[2], x[3]).is_zero()).then(|| [x[0], x[1], x[2], x[3]]));
    IdentityCheck { identity: id, label: id.label(), holds: violation.is_none(), violation }
}

pub fn check_representation(t: &TripleSystem, rep: &Representation) -> Result<RepresentationReport> {
    if rep.t_dim() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), found: rep.t_dim() });
    }
    let ops = rep.ops(t);
    let run = |ids: &[RepIdentity]| ids.iter().map(|&id| check_identity(t, &ops, id)).collect();
    Ok(RepresentationReport { identities: run(&RepIdentity::DEFINING), lambdas: run(&RepIdentity::LAMBDAS) })
}

/// `θ(a, b)(x) = (−1)^{|x|(|a|+|b|)}[x, a, b]` on `V = T`.
pub fn adjoint_representation(t: &TripleSystem) -> Representation {
    let n = t.dim();
    let mut theta = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut mat = Matrix::zeros(n, n);
            for x in 0..n {
                let neg = odd(t.parity(x) * (t.parity(a) + t.parity(b)));
                for (l, c) in t.bracket_basis(x, a, b).iter().enumerate() {
                    if !c.is_zero() {
                        mat.row_mut(l)[x] = if neg { -c } else { c.clone() };
                    }
                }
            }
            theta.push(mat);
        }
    }
    Representation { module: t.space().clone(), t_dim: n, theta }
}

/// Whether the adjoint's derived operators satisfy `D(a, b)x = δ[a, b, x]`.
pub fn adjoint_derived_matches(t: &TripleSystem) -> bool {
    let rep = adjoint_representation(t);
    let n = t.dim();
    find_tuple(2, n, |ab| {
        let d = rep.derived(t, ab[0], ab[1]);
        let bad = (0..n).any(|x| {
            let col = d.column(x);
            let br = t.bracket_basis(ab[0], ab[1], x);
            col.iter().zip(br).any(|(u, v)| if t.delta().is_minus() { *u != -v } else { u != v })
        });
        bad.then_some(())
    })
    .is_none()
}

/// The system on `T ⊕ V`: basis of `T` followed by basis of `V`, with
/// `[u, b, c] = (−1)^{|u|(|b|+|c|)}θ(b, c)u`, `[a, v, c] = −δ(−1)^{|v||c|}θ(a, c)v`,
/// `[a, b, w] = δD(a, b)w`, and brackets with two module arguments zero.
pub fn semidirect_sum(t: &TripleSystem, rep: &Representation) -> Result<TripleSystem> {
    let report = check_representation(t, rep)?;
    if let Some(bad) = report.identities.iter().find(|c| !c.holds) {
        return Err(Error::InvalidRepresentation(format!("{} fails at {:?}", bad.label, bad.violation.expect("failing check"))));
    }
    let (n, m) = (t.dim(), rep.dim());
    let total = n + m;
    let space = t.space().concat(rep.module());
    let ops = rep.ops(t);
    let minus = t.delta().is_minus();
    let mut br = MultiLinearMap::zeros(3, total, total);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for (l, v) in t.bracket_basis(a, b, c).iter().enumerate() {
                    br.value_mut(&[a, b, c])[l] = v.clone();
                }
            }
        }
    }
    let p = |i: usize| space.parity(i);
    let mut put = |args: [usize; 3], mat: &Matrix, col: usize, neg: bool| {
        let out = br.value_mut(&args);
        for r in 0..m {
            let v = &mat[(r, col)];
            if !v.is_zero() {
                out[n + r] = if neg { -v } else { v.clone() };
            }
        }
    };
    for u in 0..m {
        let ui = n + u;
        for b in 0..n {
            for c in 0..n {
                put([ui, b, c], ops.theta(b, c), u, odd(p(ui) * (p(b) + p(c))));
                put([b, ui, c], ops.theta(b, c), u, !(minus ^ odd(p(ui) * p(c))));
                put([b, c, ui], ops.d(b, c), u, minus);
            }
        }
    }
    let name = format!("{}+V", t.name());
    TripleSystem::new(name, space, t.delta(), br)
}
