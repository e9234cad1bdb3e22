//! Checking the four defining identities on basis tuples.
//!
//! All identities are multilinear, so checking them on basis elements is
//! equivalent to checking them everywhere.

use num_traits::Zero;
use serde::Serialize;

use crate::linalg::rational::{self, odd, serde_vec, Rational};
use crate::system::TripleSystem;
use crate::tensor::find_tuple;

/// The defining identities, named by what they say.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `|[a,b,c]| = |a| + |b| + |c|`.
    Grading,
    /// `[b,a,c] = −δ(−1)^{|a||b|}[a,b,c]`.
    SuperSkew,
    /// Graded cyclic sum of `[a,b,c]` vanishes.
    Cyclic,
    /// `[a,b,·]` acts as a δ-twisted superderivation of the bracket.
    Fundamental,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [Axiom::Grading, Axiom::SuperSkew, Axiom::Cyclic, Axiom::Fundamental];

    pub fn label(self) -> &'static str {
        match self {
            Axiom::Grading => "grading",
            Axiom::SuperSkew => "super-skew-symmetry",
            Axiom::Cyclic => "cyclic identity",
            Axiom::Fundamental => "fundamental identity",
        }
    }
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// First failing basis tuple of an identity, with both sides evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub indices: Vec<usize>,
    #[serde(with = "serde_vec")]
    pub lhs: Vec<Rational>,
    #[serde(with = "serde_vec")]
    pub rhs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub holds: bool,
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
    /// For `δ = +1` only: whether `[a,a,c] = 0` for every even basis `a`.
    /// Informational; it follows from skew-symmetry in characteristic 0.
    pub self_bracket_vanishes: Option<bool>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).expect("every axiom is checked")
    }

    pub fn failing(&self) -> Vec<Axiom> {
        self.checks.iter().filter(|c| !c.holds).map(|c| c.axiom).collect()
    }
}

pub fn verify_axioms(t: &TripleSystem) -> AxiomReport {
    let checks = vec![
        check(Axiom::Grading, grading_violation(t)),
        check(Axiom::SuperSkew, skew_violation(t)),
        check(Axiom::Cyclic, cyclic_violation(t)),
        check(Axiom::Fundamental, fundamental_violation(t)),
    ];
    let self_bracket_vanishes = (!t.delta().is_minus()).then(|| {
        let n = t.dim();
        (0..n)
            .filter(|&a| t.parity(a) == 0)
            .all(|a| (0..n).all(|c| rational::is_zero_vec(t.bracket_basis(a, a, c))))
    });
    AxiomReport { checks, self_bracket_vanishes }
}

fn check(axiom: Axiom, violation: Option<Violation>) -> AxiomCheck {
    AxiomCheck { axiom, holds: violation.is_none(), violation }
}

pub(crate) fn grading_violation(t: &TripleSystem) -> Option<Violation> {
    let n = t.dim();
    find_tuple(3, n, |idx| {
        let deg = t.space().degree_of(idx);
        let v = t.bracket_basis(idx[0], idx[1], idx[2]);
        (0..n).find(|&l| !v[l].is_zero() && t.parity(l) != deg).map(|l| Violation {
            indices: vec![idx[0], idx[1], idx[2], l],
            lhs: vec![v[l].clone()],
            rhs: vec![Rational::zero()],
        })
    })
}

pub(crate) fn skew_violation(t: &TripleSystem) -> Option<Violation> {
    let n = t.dim();
    let minus_delta = !t.delta().is_minus();
    find_tuple(3, n, |idx| {
        let (a, b, c) = (idx[0], idx[1], idx[2]);
        let lhs = t.bracket_basis(b, a, c).to_vec();
        // rhs = −δ(−1)^{|a||b|}[a,b,c]
        let neg = minus_delta ^ odd(t.parity(a) * t.parity(b));
        let mut rhs = vec![Rational::zero(); n];
        rational::add_signed(&mut rhs, neg, t.bracket_basis(a, b, c));
        (lhs != rhs).then(|| Violation { indices: idx.to_vec(), lhs, rhs })
    })
}

pub(crate) fn cyclic_violation(t: &TripleSystem) -> Option<Violation> {
    let n = t.dim();
    find_tuple(3, n, |idx| {
        let (a, b, c) = (idx[0], idx[1], idx[2]);
        let (pa, pb, pc) = (t.parity(a), t.parity(b), t.parity(c));
        let mut lhs = vec![Rational::zero(); n];
        rational::add_signed(&mut lhs, odd(pa * pc), t.bracket_basis(a, b, c));
        rational::add_signed(&mut lhs, odd(pb * pa), t.bracket_basis(b, c, a));
        rational::add_signed(&mut lhs, odd(pc * pb), t.bracket_basis(c, a, b));
        (!rational::is_zero_vec(&lhs)).then(|| Violation { indices: idx.to_vec(), lhs, rhs: vec![Rational::zero(); n] })
    })
}

pub(crate) fn fundamental_violation(t: &TripleSystem) -> Option<Violation> {
    let n = t.dim();
    let f = t.structure_constants();
    find_tuple(5, n, |idx| {
        let (a, b, c, d, e) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
        let p = |i: usize| t.parity(i);
        // [a,b,[c,d,e]]
        let mut lhs = vec![Rational::zero(); n];
        let mut args = [a, b, 0];
        f.accumulate_with_slot(&mut lhs, false, &mut args, 2, t.bracket_basis(c, d, e));

        let mut rhs = vec![Rational::zero(); n];
        // [[a,b,c],d,e]
        args = [0, d, e];
        f.accumulate_with_slot(&mut rhs, false, &mut args, 0, t.bracket_basis(a, b, c));
        // (−1)^{|c|(|a|+|b|)}[c,[a,b,d],e]
        args = [c, 0, e];
        f.accumulate_with_slot(&mut rhs, odd(p(c) * (p(a) + p(b))), &mut args, 1, t.bracket_basis(a, b, d));
        // δ(−1)^{(|a|+|b|)(|c|+|d|)}[c,d,[a,b,e]]
        args = [c, d, 0];
        let neg = t.delta().is_minus() ^ odd((p(a) + p(b)) * (p(c) + p(d)));
        f.accumulate_with_slot(&mut rhs, neg, &mut args, 2, t.bracket_basis(a, b, e));

        (lhs != rhs).then(|| Violation { indices: idx.to_vec(), lhs, rhs })
    })
}
