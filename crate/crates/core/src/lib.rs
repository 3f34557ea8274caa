//! Polytope compatibility of Hermitian matrix tuples.

pub mod linalg;
pub mod polytope;
pub mod inclusion;
pub mod tuples;
pub mod hypergraph;
pub mod models;
pub mod checks;

pub use inclusion::{InclusionBound, ScalingCertificate};
pub use linalg::{rat, int, ExactHerm, FloatHerm, Gq, HermMatrix, Rational};
pub use polytope::Polytope;
pub use tuples::{CompatCertificate, ExactTuple, FloatTuple, HermTuple, Povm, PovmMode};
