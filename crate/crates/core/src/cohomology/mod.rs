//! Representations, cochains, coboundaries and low-degree cohomology.

pub mod coboundary;
pub mod cochain;
pub mod complex;
pub mod representation;

pub use coboundary::{coboundaries, coboundary, coboundary_with};
pub use cochain::{cochain_space, cochain_violation, Cochain, CochainSpace, CochainViolation};
pub use complex::{cohomology, cohomology_degree, is_cocycle, verify_complex, CohomologyDegree, CohomologyReport, ComplexDegree, ComplexFailure, ComplexReport};
pub use representation::{
    adjoint_derived_matches, adjoint_representation, check_identity, check_representation, semidirect_sum, IdentityCheck, RepIdentity, RepOps,
    Representation, RepresentationReport,
};
