//! Two 3-outcome POVMs `(A, B, I-A-B)` and `(A, C, I-A-C)` sharing the effect `A`, tested
//! against the pyramid after the shift by `(1/3, 1/3, 1/3)·I`.

use num_complex::Complex64;
use num_traits::One;

use super::builders::{pyramid, pyramid_t};
use super::ModelError;
use crate::hypergraph::{g_operators_check, pyramid_hypergraph};
use crate::linalg::{rat, ExactHerm, Gq, HermMatrix, Rational, Scalar};
use crate::tuples::{
    certificate_from_scaling, pmax_check, pmin_search_ap, range_pruned_feasibility, verify_certificate, ApOutcome,
    ApSettings, BlockConstraintSystem, BlockEquation, HermTuple, InfeasibilityWitness, PmaxReport, Povm, PovmMode,
    PruneOutcome, TupleError, MAX_PRUNING_DIM,
};

/// Verdict on the joint POVM pattern `Q_1 = A`, `Q_4 + Q_5 = B`, `Q_2 + Q_3 = I-A-B`,
/// `Q_3 + Q_5 = C`, `Q_2 + Q_4 = I-A-C`, with `Q_i` attached to the `i`-th pyramid vertex.
#[derive(Clone, Debug, PartialEq)]
pub enum RestrictedVerdict<S> {
    /// Exact certificate; `route` names the construction that produced it.
    Feasible { povm: Povm<S>, route: &'static str },
    NumericallyFeasible(Povm<Complex64>),
    ExactlyInfeasible(InfeasibilityWitness),
    /// The effects are not G-operators, so no pattern of PSD `Q_i` exists.
    OutsidePmax,
    Undecided { residual: Option<f64> },
}

impl<S> RestrictedVerdict<S> {
    pub fn label(&self) -> &'static str {
        match self {
            RestrictedVerdict::Feasible { .. } => "feasible",
            RestrictedVerdict::NumericallyFeasible(_) => "numerically-feasible",
            RestrictedVerdict::ExactlyInfeasible(_) => "exactly-infeasible",
            RestrictedVerdict::OutsidePmax => "outside-pmax",
            RestrictedVerdict::Undecided { .. } => "undecided",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SharedEffectReport<S> {
    /// `(A, B, I-A-B, C, I-A-C)` are G-operators of the two-edge hypergraph.
    pub g_operators: bool,
    /// Facet test of the shifted tuple against the pyramid.
    pub pmax: PmaxReport,
    pub restricted: RestrictedVerdict<S>,
}

impl<S> SharedEffectReport<S> {
    /// True when the restricted verdict was reached in exact arithmetic.
    pub fn exact(&self) -> bool {
        matches!(
            self.restricted,
            RestrictedVerdict::Feasible { .. } | RestrictedVerdict::ExactlyInfeasible(_) | RestrictedVerdict::OutsidePmax
        ) && self.pmax.exact
    }
}

fn pattern_system(a: &ExactHerm, b: &ExactHerm, c: &ExactHerm) -> Result<BlockConstraintSystem, TupleError> {
    let d = a.dim();
    let id = ExactHerm::identity(d);
    let eq = |target: ExactHerm, terms: Vec<usize>| BlockEquation { target, terms };
    BlockConstraintSystem::new(
        d,
        (1..=5).map(|i| format!("Q{i}")).collect(),
        vec![
            eq(a.clone(), vec![0]),
            eq(b.clone(), vec![3, 4]),
            eq(&(&id - a) - b, vec![1, 2]),
            eq(c.clone(), vec![2, 4]),
            eq(&(&id - a) - c, vec![1, 3]),
        ],
    )
}

/// Runs, in order: the pyramid `T` certificate when the tuple scaled by `5/2` stays in
/// `P_max`, exact range pruning (exact backend, `d ≤ 4`), then alternating projections.
pub fn shared_effect_check<S: Scalar>(
    a: &HermMatrix<S>,
    b: &HermMatrix<S>,
    c: &HermMatrix<S>,
    settings: ApSettings,
) -> Result<SharedEffectReport<S>, ModelError> {
    let d = a.dim();
    if b.dim() != d || c.dim() != d {
        return Err(TupleError::DimensionMismatch { expected: d, found: if b.dim() != d { b.dim() } else { c.dim() } }.into());
    }
    let id = HermMatrix::identity(d);
    let ops = vec![a.clone(), b.clone(), &(&id - a) - b, c.clone(), &(&id - a) - c];
    let g_operators = g_operators_check(&pyramid_hypergraph(), &ops)?;
    let p = pyramid()?;
    let third = HermMatrix::scalar(d, &rat(1, 3));
    let shifted = HermTuple::new(vec![a - &third, b - &third, c - &third])?;
    let pmax = pmax_check(&p, &shifted)?;
    if !g_operators {
        return Ok(SharedEffectReport { g_operators, pmax, restricted: RestrictedVerdict::OutsidePmax });
    }
    let cert = pyramid_t()?;
    let stretch = Rational::one() / &cert.s()[0];
    let stretched = shifted.scale(&stretch);
    if pmax_check(&p, &stretched)?.member {
        let povm = certificate_from_scaling(&cert, &p, &stretched)?.povm;
        if verify_certificate(&p, &shifted, &povm)? {
            return Ok(SharedEffectReport {
                g_operators,
                pmax,
                restricted: RestrictedVerdict::Feasible { povm, route: "pyramid-T" },
            });
        }
    }
    if S::is_exact() && d <= MAX_PRUNING_DIM {
        let sys = pattern_system(&a.cast::<Gq>(), &b.cast::<Gq>(), &c.cast::<Gq>())?;
        match range_pruned_feasibility(&sys) {
            PruneOutcome::ExactlyInfeasible(w) => {
                return Ok(SharedEffectReport { g_operators, pmax, restricted: RestrictedVerdict::ExactlyInfeasible(w) })
            }
            PruneOutcome::ReducedFeasible(q) => {
                let povm = Povm::new(q.iter().map(HermMatrix::cast).collect(), PovmMode::Povm)?;
                if verify_certificate(&p, &shifted, &povm)? {
                    return Ok(SharedEffectReport {
                        g_operators,
                        pmax,
                        restricted: RestrictedVerdict::Feasible { povm, route: "exact-pruning" },
                    });
                }
            }
            PruneOutcome::Undecided { .. } => {}
        }
    }
    let restricted = match pmin_search_ap(&p, &shifted, settings)? {
        ApOutcome::Feasible { certificate, .. } => RestrictedVerdict::NumericallyFeasible(certificate.povm),
        ApOutcome::Undecided { residual, .. } => RestrictedVerdict::Undecided { residual: Some(residual) },
    };
    Ok(SharedEffectReport { g_operators, pmax, restricted })
}
