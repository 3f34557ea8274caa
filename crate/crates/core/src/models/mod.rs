//! Model polytopes and the quantum application layer: magic squares, semiclassicality,
//! shared-effect POVMs and the fixture bundle.

mod builders;
pub mod fixtures;
mod magic;
mod shared_effect;

pub use builders::{
    birkhoff_body, birkhoff_t, hypercube, permutations, polysimplex, pyramid, pyramid_t, simplex_pk, MAX_BIRKHOFF_N,
};
pub use fixtures::{fixture, fixture_names, Fixture};
pub use magic::{
    magic_check, mixing_preimage, semiclassical_check, semiclassical_check_all, semiclassical_mix, tilde_map,
    trace_condition_check, truncate_shift, MagicSquare, MagicViolation, SemiclassicalCertificate, SemiclassicalOutcome,
    Strategy, MAX_EXACT_STRATEGY_N,
};
pub use shared_effect::{shared_effect_check, RestrictedVerdict, SharedEffectReport};

use crate::hypergraph::HypergraphError;
use crate::inclusion::InclusionError;
use crate::linalg::json::JsonError;
use crate::polytope::PolytopeError;
use crate::tuples::TupleError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("not a magic square: {0}")]
    NotMagic(MagicViolation),
    #[error("strategy {strategy} cannot run here: {reason}")]
    StrategyMismatch { strategy: &'static str, reason: String },
    #[error("strategies disagree: {0}")]
    StrategyConflict(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Inclusion(#[from] InclusionError),
    #[error(transparent)]
    Tuple(#[from] TupleError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Json(#[from] JsonError),
}

#[cfg(test)]
mod tests;
