//! Complex sanity checks (d∘d = 0, images are cochains) and the
//! cocycle/coboundary/cohomology spaces.

use std::collections::HashSet;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::matrix::kernel_from_echelon;
use crate::linalg::{Rational, RowEchelon, Subspace};
use crate::system::TripleSystem;
use crate::tensor::MultiLinearMap;

use super::coboundary::{coboundaries, coboundary_with, combine};
use super::cochain::{cochain_space, cochain_space_any, cochain_violation, Cochain, CochainSpace};
use super::representation::{RepOps, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexFailure {
    /// `d3d1`, `d4d2`, `d1-image`, `d2-image` or `d3-image`.
    pub stage: &'static str,
    pub degree: u8,
    pub basis_index: usize,
    /// First offending argument tuple, when one is known.
    pub tuple: Option<Vec<usize>>,
    /// Which cochain rule failed, for the image checks.
    pub rule: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexDegree {
    pub degree: u8,
    pub dim_c1: usize,
    pub dim_c2: usize,
    pub dim_c3: usize,
    pub d3d1_zero: bool,
    pub d4d2_zero: bool,
    pub d1_lands_in_c3: bool,
    pub d2_lands_in_c4: bool,
    /// Informational: whether `d³` of every basis 3-cochain satisfies the
    /// arity-5 cochain rules.
    pub d3_lands_in_c5: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub degrees: Vec<ComplexDegree>,
    pub failures: Vec<ComplexFailure>,
}

impl ComplexReport {
    pub fn d_squared_zero(&self) -> bool {
        self.degrees.iter().all(|d| d.d3d1_zero && d.d4d2_zero)
    }

    pub fn images_are_cochains(&self) -> bool {
        self.degrees.iter().all(|d| d.d1_lands_in_c3 && d.d2_lands_in_c4)
    }

    /// Everything except the informational arity-5 check.
    pub fn all_hold(&self) -> bool {
        self.d_squared_zero() && self.images_are_cochains()
    }
}

/// Checks `d³∘d¹ = 0`, `d⁴∘d² = 0` and that `d¹`, `d²` (and, informationally,
/// `d³`) produce cochains, on every basis cochain of both degrees.
pub fn verify_complex(t: &TripleSystem, rep: &Representation) -> Result<ComplexReport> {
    let ops = rep.ops(t);
    let module = rep.module();
    let mut degrees = Vec::new();
    let mut failures = Vec::new();
    for degree in 0..2u8 {
        let c1 = cochain_space(t, module, 1, degree)?.basis_cochains();
        let c2 = cochain_space(t, module, 2, degree)?.basis_cochains();
        let c3 = cochain_space(t, module, 3, degree)?.basis_cochains();
        let mut row = ComplexDegree {
            degree,
            dim_c1: c1.len(),
            dim_c2: c2.len(),
            dim_c3: c3.len(),
            d3d1_zero: true,
            d4d2_zero: true,
            d1_lands_in_c3: true,
            d2_lands_in_c4: true,
            d3_lands_in_c5: true,
        };
        for (stage, image_stage, basis) in [("d3d1", "d1-image", &c1), ("d4d2", "d2-image", &c2)] {
            let firsts = coboundaries(t, &ops, basis);
            let results: Vec<(Option<Vec<usize>>, Option<(Vec<usize>, &'static str)>)> = firsts
                .par_iter()
                .map(|g| {
                    let dd = coboundary_with(t, &ops, g, degree);
                    let zero = dd.first_nonzero().map(|(x, _)| x);
                    let image = cochain_violation(t.space(), t.delta(), module, degree, g).map(|v| (v.tuple, v.rule));
                    (zero, image)
                })
                .collect();
            for (i, (dd, image)) in results.into_iter().enumerate() {
                if let Some(x) = dd {
                    if stage == "d3d1" {
                        row.d3d1_zero = false;
                    } else {
                        row.d4d2_zero = false;
                    }
                    failures.push(ComplexFailure { stage, degree, basis_index: i, tuple: Some(x), rule: None });
                }
                if let Some((x, rule)) = image {
                    if stage == "d3d1" {
                        row.d1_lands_in_c3 = false;
                    } else {
                        row.d2_lands_in_c4 = false;
                    }
                    failures.push(ComplexFailure { stage: image_stage, degree, basis_index: i, tuple: Some(x), rule: Some(rule) });
                }
            }
        }
        let thirds = coboundaries(t, &ops, &c3);
        for (i, g) in thirds.iter().enumerate() {
            if let Some(v) = cochain_violation(t.space(), t.delta(), module, degree, g) {
                row.d3_lands_in_c5 = false;
                failures.push(ComplexFailure { stage: "d3-image", degree, basis_index: i, tuple: Some(v.tuple), rule: Some(v.rule) });
                break;
            }
        }
        degrees.push(row);
    }
    Ok(ComplexReport { degrees, failures })
}

/// Cocycles, coboundaries and cohomology of one arity and degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyDegree {
    pub degree: u8,
    pub dim_c: usize,
    pub dim_z: usize,
    /// Only defined for `n ∈ {3, 4}`.
    pub dim_b: Option<usize>,
    pub dim_h: Option<usize>,
    pub b_in_z: Option<bool>,
    #[serde(skip)]
    pub cochains: CochainSpace,
    #[serde(skip)]
    pub z: Subspace,
    #[serde(skip)]
    pub b: Option<Subspace>,
    /// Cocycles whose classes form a basis of `H`.
    #[serde(skip)]
    pub representatives: Vec<MultiLinearMap>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub n: usize,
    pub degrees: Vec<CohomologyDegree>,
    pub dim_c: usize,
    pub dim_z: usize,
    pub dim_b: Option<usize>,
    pub dim_h: Option<usize>,
}

impl CohomologyReport {
    pub fn degree(&self, s: u8) -> &CohomologyDegree {
        &self.degrees[usize::from(s)]
    }
}

/// `{α : Σ αᵢ imageᵢ = 0}`, read off the transposed image matrix. Output
/// coordinates often repeat up to scale, so rows are normalized and
/// deduplicated before elimination.
pub(crate) fn relations_among(images: &[MultiLinearMap]) -> Subspace {
    let r = images.len();
    let mut e = RowEchelon::new(r);
    let Some(first) = images.first() else {
        return Subspace::zero(0);
    };
    let len = first.coords().len();
    let mut seen: HashSet<Vec<Rational>> = HashSet::new();
    for o in 0..len {
        let mut row: Vec<Rational> = images.iter().map(|g| g.coords()[o].clone()).collect();
        let Some(lead) = row.iter().find(|x| !x.is_zero()).cloned() else {
            continue;
        };
        if !lead.is_one() {
            let inv = lead.recip();
            row.iter_mut().for_each(|x| *x *= &inv);
        }
        if seen.insert(row.clone()) {
            e.push(row);
            if e.rank() == r {
                break;
            }
        }
    }
    kernel_from_echelon(e)
}

/// Span of the images of the basis cochains of `source`, inside the
/// coordinates of the `(n+2)`-tensors.
pub(crate) fn image_span(t: &TripleSystem, ops: &RepOps, source: &CochainSpace) -> Subspace {
    let n = source.n + 2;
    let ambient = t.dim().pow(n as u32) * source.v_dim;
    let images = coboundaries(t, ops, &source.basis_cochains());
    Subspace::from_rows(ambient, images.into_iter().map(MultiLinearMap::into_coords)).expect("ambient length")
}

pub fn cohomology_degree(t: &TripleSystem, rep: &Representation, n: usize, degree: u8) -> Result<CohomologyDegree> {
    if !(1..=4).contains(&n) {
        return Err(Error::UnsupportedArity(n));
    }
    let ops = rep.ops(t);
    let module = rep.module();
    let cs = cochain_space(t, module, n, degree)?;
    let basis = cs.basis_cochains();
    let images = coboundaries(t, &ops, &basis);
    let relations = relations_among(&images);
    let rows: Vec<Vec<Rational>> = relations
        .basis_vectors()
        .map(|alpha| combine(alpha, &basis.iter().map(|f| f.map.coords()).collect::<Vec<_>>(), cs.ambient_dim()))
        .collect();
    let z = Subspace::from_rows(cs.ambient_dim(), rows)?;
    let b = if n >= 3 {
        let lower = cochain_space_any(t.space(), t.delta(), module, n - 2, degree);
        Some(image_span(t, &ops, &lower))
    } else {
        None
    };
    let (dim_b, dim_h, b_in_z, representatives) = match &b {
        Some(b) => {
            let inside = z.contains(b)?;
            let meet = z.intersect(b)?;
            let reps = z.complement_representatives(&meet)?;
            let reps = reps.into_iter().map(|v| MultiLinearMap::from_coords(n, t.dim(), rep.dim(), v)).collect::<Result<Vec<_>>>()?;
            (Some(b.dim()), Some(z.dim() - meet.dim()), Some(inside), reps)
        }
        None => (None, None, None, Vec::new()),
    };
    Ok(CohomologyDegree { degree, dim_c: cs.dim(), dim_z: z.dim(), dim_b, dim_h, b_in_z, cochains: cs, z, b, representatives })
}

/// Both degrees of `Zⁿ`, and of `Bⁿ`, `Hⁿ` when `n ∈ {3, 4}`.
pub fn cohomology(t: &TripleSystem, rep: &Representation, n: usize) -> Result<CohomologyReport> {
    let degrees = vec![cohomology_degree(t, rep, n, 0)?, cohomology_degree(t, rep, n, 1)?];
    let sum = |f: fn(&CohomologyDegree) -> Option<usize>| -> Option<usize> { degrees.iter().map(f).sum() };
    Ok(CohomologyReport {
        n,
        dim_c: degrees.iter().map(|d| d.dim_c).sum(),
        dim_z: degrees.iter().map(|d| d.dim_z).sum(),
        dim_b: sum(|d| d.dim_b),
        dim_h: sum(|d| d.dim_h),
        degrees,
    })
}

/// Whether `f` is a cocycle.
pub fn is_cocycle(t: &TripleSystem, rep: &Representation, f: &Cochain) -> Result<bool> {
    Ok(super::coboundary::coboundary(t, rep, f)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::representation::adjoint_representation;
    use crate::fixtures::{abelian, l2, s11};
    use crate::system::Delta;

    #[test]
    fn complex_on_fixtures() {
        for t in [l2(), s11(), abelian(&[0, 1], Delta::Minus)] {
            let rep = adjoint_representation(&t);
            let r = verify_complex(&t, &rep).unwrap();
            assert!(r.all_hold(), "{}: {:?}", t.name(), r.failures);
        }
    }

    #[test]
    fn abelian_zero_module_cohomology_is_cochains() {
        let t = abelian(&[0, 1], Delta::Plus);
        let rep = adjoint_representation(&t);
        for n in 1..=4 {
            let r = cohomology(&t, &rep, n).unwrap();
            assert_eq!(r.dim_z, r.dim_c);
            if n >= 3 {
                assert_eq!(r.dim_b, Some(0));
                assert_eq!(r.dim_h, Some(r.dim_c));
            }
        }
    }

    #[test]
    fn coboundaries_are_cocycles() {
        for t in [l2(), s11()] {
            let rep = adjoint_representation(&t);
            for n in 3..=4 {
                let r = cohomology(&t, &rep, n).unwrap();
                for d in &r.degrees {
                    assert_eq!(d.b_in_z, Some(true));
                    assert_eq!(d.dim_h, Some(d.dim_z - d.dim_b.unwrap()));
                    assert_eq!(d.representatives.len(), d.dim_h.unwrap());
                }
            }
        }
    }
}
