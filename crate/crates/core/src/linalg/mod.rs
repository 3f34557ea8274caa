//! Exact rational linear algebra, an exact simplex solver and Hermitian eigenroutines.

pub mod eigen;
pub mod gauss;
pub mod gqmat;
pub mod herm;
pub mod json;
pub mod lp;
pub mod rational;
pub mod rmatrix;
pub mod scalar;

pub use eigen::{herm_eig_min, herm_eigenvalues, psd_check, psd_project, psd_project_with_min, PsdMode, DEFAULT_PSD_TOL};
pub use gauss::Gq;
pub use gqmat::GqMatrix;
pub use herm::{ExactHerm, FloatHerm, HermMatrix};
pub use lp::{lp_solve, LpOutcome, LpProblem, VarBound};
pub use rational::{int, rat, Rational};
pub use rmatrix::{rat_nullspace, rat_solve, RMatrix, SolveOutcome};
pub use scalar::{Backend, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not Hermitian at entry ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
    #[error("exact PSD check refused for dimension {0} (limit 8)")]
    ExactPsdTooLarge(usize),
    #[error("exact PSD check requires the exact backend")]
    ExactPsdNeedsExactBackend,
}
