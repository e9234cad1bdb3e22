//! Exact linear algebra for δ-Jordan Lie supertriple systems: identity
//! checks, operator spaces, representations, cohomology and deformations.

pub mod axioms;
pub mod cohomology;
pub mod construct;
pub mod deformation;
pub mod error;
pub mod fixtures;
pub mod hom;
pub mod io;
pub mod linalg;
pub mod operators;
pub mod random;
pub mod system;
pub mod theorems;
pub mod tensor;

pub use axioms::{verify_axioms, Axiom, AxiomCheck, AxiomReport, Violation};
pub use cohomology::{adjoint_representation, check_representation, semidirect_sum, Cochain, CochainSpace, Representation};
pub use construct::{current_extension, from_superalgebra, Superalgebra};
pub use deformation::FormalDeformation;
pub use error::{Error, Result};
pub use hom::{supercommutator, HomMap};
pub use linalg::{Matrix, Rational, Subspace};
pub use operators::{OperatorKind, OperatorSpace};
pub use system::{Delta, GradedVector, SuperSpace, TripleSystem};
pub use tensor::MultiLinearMap;
