//! Exact infeasibility for systems `target_e = Σ_{q ∈ e} Q_q` with PSD unknowns.
//!
//! Two rules run to a fixpoint. A PSD unknown inside a sum is dominated by the sum, so its
//! range lies in the range of every residual target it appears in. An equation with a
//! single live unknown determines it. Unknowns left with one-dimensional support become
//! `t · u u*` and the remainder is an exact LP in the scalars `t ≥ 0`.

use num_traits::{One, Zero};

use super::{is_psd, TupleError};
use crate::linalg::gqmat::{subspace_intersection, GqMatrix};
use crate::linalg::{lp_solve, ExactHerm, Gq, LpProblem, RMatrix, Rational, VarBound};

pub const MAX_PRUNING_DIM: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct BlockEquation {
    pub target: ExactHerm,
    pub terms: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockConstraintSystem {
    d: usize,
    unknowns: Vec<String>,
    equations: Vec<BlockEquation>,
}

impl BlockConstraintSystem {
    pub fn new(d: usize, unknowns: Vec<String>, equations: Vec<BlockEquation>) -> Result<Self, TupleError> {
        if d > MAX_PRUNING_DIM {
            return Err(TupleError::Invalid(format!("pruning supports d <= {MAX_PRUNING_DIM}, got {d}")));
        }
        let mut used = vec![false; unknowns.len()];
        for eq in &equations {
            if eq.target.dim() != d {
                return Err(TupleError::DimensionMismatch { expected: d, found: eq.target.dim() });
            }
            for &q in &eq.terms {
                *used.get_mut(q).ok_or_else(|| TupleError::Invalid(format!("unknown index {q} out of range")))? = true;
            }
        }
        if let Some(q) = used.iter().position(|u| !u) {
            return Err(TupleError::Invalid(format!("unknown {} appears in no equation", unknowns[q])));
        }
        Ok(BlockConstraintSystem { d, unknowns, equations })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn unknowns(&self) -> &[String] {
        &self.unknowns
    }

    pub fn equations(&self) -> &[BlockEquation] {
        &self.equations
    }

    /// True when `assignment` satisfies every equation exactly and every value is PSD.
    pub fn is_solution(&self, assignment: &[ExactHerm]) -> bool {
        assignment.len() == self.unknowns.len()
            && assignment.iter().all(is_psd)
            && self.equations.iter().all(|eq| {
                ExactHerm::sum(self.d, eq.terms.iter().map(|&q| &assignment[q])) == eq.target
            })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum InfeasibilityWitness {
    /// A single equation cannot hold once the pruned unknowns are substituted.
    Equation { index: usize, reason: String },
    /// The scalar system over rank-one unknowns, spanning these equations, has no solution.
    ReducedSystem { equations: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum PruneOutcome {
    ExactlyInfeasible(InfeasibilityWitness),
    ReducedFeasible(Vec<ExactHerm>),
    /// Unknowns whose pruned support still has dimension at least two.
    Undecided { open: Vec<usize> },
}

fn range_of(h: &ExactHerm) -> Vec<Vec<Gq>> {
    let d = h.dim();
    GqMatrix::from_fn(d, d, |i, j| h.get(i, j)).column_space()
}

fn standard_basis(d: usize) -> Vec<Vec<Gq>> {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { Gq::real(Rational::one()) } else { Gq::default() }).collect())
        .collect()
}

pub fn range_pruned_feasibility(sys: &BlockConstraintSystem) -> PruneOutcome {
    let d = sys.d;
    let n = sys.unknowns.len();
    let mut fixed: Vec<Option<ExactHerm>> = vec![None; n];
    let mut support: Vec<Vec<Vec<Gq>>> = vec![standard_basis(d); n];

    loop {
        let mut changed = false;
        for (index, eq) in sys.equations.iter().enumerate() {
            let mut residual = eq.target.clone();
            let mut live = Vec::new();
            for &q in &eq.terms {
                match &fixed[q] {
                    Some(v) => residual = &residual - v,
                    None => live.push(q),
                }
            }
            if !is_psd(&residual) {
                return PruneOutcome::ExactlyInfeasible(InfeasibilityWitness::Equation {
                    index,
                    reason: "residual target is not positive semidefinite".into(),
                });
            }
            match live.len() {
                0 => {
                    if !residual.is_zero() {
                        return PruneOutcome::ExactlyInfeasible(InfeasibilityWitness::Equation {
                            index,
                            reason: "all unknowns are determined but the residual target is nonzero".into(),
                        });
                    }
                }
                1 => {
                    fixed[live[0]] = Some(residual);
                    changed = true;
                }
                _ => {
                    let range = range_of(&residual);
                    for q in live {
                        let narrowed = subspace_intersection(d, &support[q], &range);
                        if narrowed.len() < support[q].len() {
                            support[q] = narrowed;
                            changed = true;
                        }
                    }
                }
            }
        }
        for q in 0..n {
            if fixed[q].is_none() && support[q].is_empty() {
                fixed[q] = Some(ExactHerm::zeros(d));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let live: Vec<usize> = (0..n).filter(|&q| fixed[q].is_none()).collect();
    let open: Vec<usize> = live.iter().copied().filter(|&q| support[q].len() >= 2).collect();
    if !open.is_empty() {
        return PruneOutcome::Undecided { open };
    }
    solve_rank_one(sys, &fixed, &support, &live)
}

/// Exact LP in `t_q ≥ 0` for the remaining rank-one unknowns `t_q u_q u_q*`.
fn solve_rank_one(
    sys: &BlockConstraintSystem,
    fixed: &[Option<ExactHerm>],
    support: &[Vec<Vec<Gq>>],
    live: &[usize],
) -> PruneOutcome {
    let d = sys.d;
    let rays: Vec<ExactHerm> = live.iter().map(|&q| ExactHerm::outer(&support[q][0])).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let mut involved = Vec::new();
    for (index, eq) in sys.equations.iter().enumerate() {
        let mut residual = eq.target.clone();
        for &q in &eq.terms {
            if let Some(v) = &fixed[q] {
                residual = &residual - v;
            }
        }
        let cols: Vec<usize> = (0..live.len()).filter(|&c| eq.terms.contains(&live[c])).collect();
        if cols.is_empty() {
            continue;
        }
        involved.push(index);
        for (pos, target) in residual.lower().iter().enumerate() {
            let mut re_row = vec![Rational::zero(); live.len()];
            let mut im_row = vec![Rational::zero(); live.len()];
            for &c in &cols {
                let z = &rays[c].lower()[pos];
                re_row[c] = z.re.clone();
                im_row[c] = z.im.clone();
            }
            rows.push(re_row);
            rhs.push(target.re.clone());
            rows.push(im_row);
            rhs.push(target.im.clone());
        }
    }
    let t = if live.is_empty() {
        Vec::new()
    } else {
        let a = RMatrix::from_rows(&rows).expect("uniform rows");
        let lp = LpProblem::feasibility(a, rhs, vec![VarBound::NonNegative; live.len()]).expect("consistent sizes");
        match lp_solve(&lp).point() {
            Some(t) => t.to_vec(),
            None => {
                return PruneOutcome::ExactlyInfeasible(InfeasibilityWitness::ReducedSystem { equations: involved });
            }
        }
    };
    let mut assignment: Vec<ExactHerm> =
        fixed.iter().map(|v| v.clone().unwrap_or_else(|| ExactHerm::zeros(d))).collect();
    for (c, &q) in live.iter().enumerate() {
        assignment[q] = rays[c].scale(&t[c]);
    }
    debug_assert!(sys.is_solution(&assignment));
    if sys.is_solution(&assignment) {
        PruneOutcome::ReducedFeasible(assignment)
    } else {
        PruneOutcome::Undecided { open: Vec::new() }
    }
}
