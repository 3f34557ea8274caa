//! Alternating projections between `{C : V̂ C = Â}` and the product of PSD cones.
//! This can find certificates but never proves that none exists.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::{certificate_defect, CompatCertificate, HermTuple, Povm, PovmMode, TupleError};
use crate::linalg::{psd_project_with_min, FloatHerm, HermMatrix, Rational, Scalar};
use crate::polytope::{barycentric_resolution, Polytope};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApSettings {
    pub max_iters: usize,
    pub tol: f64,
}

impl Default for ApSettings {
    fn default() -> Self {
        ApSettings { max_iters: 5000, tol: 1e-7 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ApOutcome {
    Feasible { certificate: CompatCertificate<Complex64>, iterations: usize, repaired: bool },
    /// `residual` is the Frobenius distance between the last pair of projections.
    Undecided { residual: f64, iterations: usize },
}

impl ApOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ApOutcome::Feasible { .. })
    }
}

fn to_f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Iterates up to `settings.max_iters` times. Whenever the affine iterate has no
/// eigenvalue below `-settings.tol`, grazing eigenvalues are lifted by an identity shift
/// and the candidate is returned if it verifies as a certificate.
pub fn pmin_search_ap<S: Scalar>(
    p: &Polytope,
    a: &HermTuple<S>,
    settings: ApSettings,
) -> Result<ApOutcome, TupleError> {
    if a.g() != p.dim() {
        return Err(TupleError::DimensionMismatch { expected: p.dim(), found: a.g() });
    }
    let a = a.to_float();
    let d = a.d();
    let ext = p.extended()?;
    let vhat = &ext.vhat;
    let (rows, k) = (vhat.rows(), vhat.cols());
    // Least-norm correction V̂⁺ = V̂ᵀ (V̂ V̂ᵀ)⁻¹, computed exactly once.
    let gram = vhat * &vhat.transpose();
    let gram_inv = gram
        .inverse()
        .ok_or_else(|| TupleError::Invalid("extended vertex matrix is rank deficient".into()))?;
    let pinv = &vhat.transpose() * &gram_inv;
    let vf: Vec<Vec<f64>> = (0..rows).map(|x| (0..k).map(|i| to_f(&vhat[(x, i)])).collect()).collect();
    let pf: Vec<Vec<f64>> = (0..k).map(|i| (0..rows).map(|x| to_f(&pinv[(i, x)])).collect()).collect();
    let hat = a.hat();

    let pi = barycentric_resolution(p)?;
    let mut c: Vec<FloatHerm> = pi.iter().map(|w| FloatHerm::scalar(d, w)).collect();
    let mut residual = f64::INFINITY;

    for iteration in 1..=settings.max_iters {
        let defects: Vec<FloatHerm> = (0..rows)
            .map(|x| {
                let mut acc = hat[x].scale_f64(-1.0);
                for (i, ci) in c.iter().enumerate() {
                    if vf[x][i] != 0.0 {
                        acc = &acc + &ci.scale_f64(vf[x][i]);
                    }
                }
                acc
            })
            .collect();
        for (i, ci) in c.iter_mut().enumerate() {
            for (x, r) in defects.iter().enumerate() {
                if pf[i][x] != 0.0 {
                    *ci = &*ci - &r.scale_f64(pf[i][x]);
                }
            }
        }

        let projected: Vec<(FloatHerm, f64)> = c.iter().map(psd_project_with_min).collect();
        let worst = projected.iter().map(|(_, m)| *m).fold(f64::INFINITY, f64::min);
        if worst >= -settings.tol {
            let repaired = worst < 0.0;
            let candidate = if repaired { repair(&c, -worst) } else { c.clone() };
            let povm = Povm::new_unchecked(candidate, PovmMode::Povm);
            if certificate_defect(p, &a, &povm)?.is_none() {
                if repaired {
                    log::info!("repaired boundary eigenvalue {worst:e} by an identity shift");
                }
                return Ok(ApOutcome::Feasible {
                    certificate: CompatCertificate { polytope_hash: p.content_hash(), povm },
                    iterations: iteration,
                    repaired,
                });
            }
        }
        residual = c
            .iter()
            .zip(&projected)
            .map(|(ci, (pr, _))| {
                let diff = ci - pr;
                diff.frobenius_norm().powi(2)
            })
            .sum::<f64>()
            .sqrt();
        c = projected.into_iter().map(|(pr, _)| pr).collect();
    }
    Ok(ApOutcome::Undecided { residual, iterations: settings.max_iters })
}

/// `(C_i + ε I) / (1 + k ε)`: lifts grazing eigenvalues and keeps the sum at `I`.
fn repair(c: &[FloatHerm], eps: f64) -> Vec<FloatHerm> {
    let d = c.first().map_or(0, HermMatrix::dim);
    let shift = FloatHerm::identity(d).scale_f64(eps);
    let norm = 1.0 / (1.0 + c.len() as f64 * eps);
    c.iter().map(|ci| (ci + &shift).scale_f64(norm)).collect()
}
