//! Jacobi eigenvalues of Hermitian matrices through their real symmetric embedding,
//! PSD decisions and projection onto the PSD cone.

use num_complex::Complex64;
use num_traits::Signed;

use super::gauss::Gq;
use super::gqmat::GqMatrix;
use super::herm::{FloatHerm, HermMatrix};
use super::scalar::Scalar;
use super::LinalgError;

pub const DEFAULT_PSD_TOL: f64 = 1e-9;
const EXACT_PSD_MAX_DIM: usize = 8;
const MAX_SWEEPS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PsdMode {
    Exact,
    Float { tol: f64 },
}

impl Default for PsdMode {
    fn default() -> Self {
        PsdMode::Float { tol: DEFAULT_PSD_TOL }
    }
}

/// Cyclic Jacobi on a dense symmetric `n x n` matrix (row-major, overwritten).
/// Returns eigenvalues and eigenvectors stored as columns of a row-major matrix.
pub fn sym_jacobi(n: usize, a: &mut [f64]) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i * n + i]).collect(), v)
}

/// Real embedding `[[Re, -Im], [Im, Re]]` of a Hermitian matrix.
fn real_embedding<S: Scalar>(h: &HermMatrix<S>) -> Vec<f64> {
    let d = h.dim();
    let n = 2 * d;
    let mut m = vec![0.0; n * n];
    for i in 0..d {
        for j in 0..d {
            let z = h.get(i, j).to_c64();
            m[i * n + j] = z.re;
            m[(i + d) * n + (j + d)] = z.re;
            m[(i + d) * n + j] = z.im;
            m[i * n + (j + d)] = -z.im;
        }
    }
    m
}

/// Eigenvalues in ascending order. The embedding doubles every eigenvalue, so
/// every other value of the sorted embedded spectrum is kept.
pub fn herm_eigenvalues<S: Scalar>(h: &HermMatrix<S>) -> Vec<f64> {
    let n = 2 * h.dim();
    let mut m = real_embedding(h);
    let (mut ev, _) = sym_jacobi(n, &mut m);
    ev.sort_by(f64::total_cmp);
    ev.into_iter().step_by(2).collect()
}

pub fn herm_eig_min<S: Scalar>(h: &HermMatrix<S>) -> f64 {
    herm_eigenvalues(h).first().copied().unwrap_or(0.0)
}

pub fn psd_check<S: Scalar>(h: &HermMatrix<S>, mode: PsdMode) -> Result<bool, LinalgError> {
    match mode {
        PsdMode::Float { tol } => Ok(herm_eig_min(h) >= -tol),
        PsdMode::Exact => {
            if !S::is_exact() {
                return Err(LinalgError::ExactPsdNeedsExactBackend);
            }
            if h.dim() > EXACT_PSD_MAX_DIM {
                return Err(LinalgError::ExactPsdTooLarge(h.dim()));
            }
            Ok(exact_psd(&h.to_exact()))
        }
    }
}

/// Exact PSD test: every principal minor is nonnegative.
fn exact_psd(h: &HermMatrix<Gq>) -> bool {
    let d = h.dim();
    for i in 0..d {
        if h.get(i, i).re.is_negative() {
            return false;
        }
    }
    for mask in 1u32..(1u32 << d) {
        if mask.count_ones() < 2 {
            continue;
        }
        let idx: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
        let sub = GqMatrix::from_fn(idx.len(), idx.len(), |r, c| h.get(idx[r], idx[c]));
        if sub.det().re.is_negative() {
            return false;
        }
    }
    true
}

/// Eigendecomposition of the embedding with negative eigenvalues clamped to zero,
/// folded back into a complex Hermitian matrix.
pub fn psd_project(h: &FloatHerm) -> FloatHerm {
    psd_project_with_min(h).0
}

/// Projection onto the PSD cone together with the smallest eigenvalue of the input.
pub fn psd_project_with_min(h: &FloatHerm) -> (FloatHerm, f64) {
    let d = h.dim();
    let n = 2 * d;
    let mut m = real_embedding(h);
    let (ev, v) = sym_jacobi(n, &mut m);
    let min = ev.iter().copied().fold(f64::INFINITY, f64::min);
    let mut out = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            let mut re = 0.0;
            let mut im = 0.0;
            for (k, &lam) in ev.iter().enumerate() {
                if lam <= 0.0 {
                    continue;
                }
                re += lam * v[i * n + k] * v[j * n + k];
                im += lam * v[(i + d) * n + k] * v[j * n + k];
            }
            out[i * d + j] = Complex64::new(re, im);
        }
    }
    (FloatHerm::from_dense_symmetrized(d, &out), if d == 0 { 0.0 } else { min })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::herm::ExactHerm;
    use crate::linalg::rational::{int, rat};

    fn sigma_x() -> ExactHerm {
        ExactHerm::from_real_rows(&[vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap()
    }

    #[test]
    fn smallest_eigenvalues() {
        assert!((herm_eig_min(&ExactHerm::diag(&[int(1), int(-2)])) + 2.0).abs() < 1e-12);
        assert!((herm_eig_min(&sigma_x()) + 1.0).abs() < 1e-12);
        let p = (&ExactHerm::identity(2) + &sigma_x()).scale(&rat(1, 2));
        assert!(herm_eig_min(&p).abs() < 1e-12);
    }

    #[test]
    fn complex_spectrum() {
        let y = ExactHerm::from_rows(&[
            vec![Gq::default(), -Gq::i()],
            vec![Gq::i(), Gq::default()],
        ])
        .unwrap();
        let ev = herm_eigenvalues(&y);
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_psd_examples() {
        let p = ExactHerm::from_real_rows(&[vec![rat(1, 2), rat(1, 2)], vec![rat(1, 2), rat(1, 2)]]).unwrap();
        assert!(psd_check(&p, PsdMode::Exact).unwrap());
        let n = ExactHerm::diag(&[int(0), rat(-1, 10)]);
        assert!(!psd_check(&n, PsdMode::Exact).unwrap());
        let m = &ExactHerm::identity(2) - &sigma_x();
        assert!(psd_check(&m, PsdMode::Exact).unwrap());
        assert!(psd_check(&m.to_float(), PsdMode::Exact).is_err());
        assert!(psd_check(&ExactHerm::identity(9), PsdMode::Exact).is_err());
    }

    #[test]
    fn projection_examples() {
        let p = psd_project(&ExactHerm::diag(&[int(1), int(-1)]).to_float());
        assert!(p.near(&ExactHerm::diag(&[int(1), int(0)]).to_float(), 1e-12));
        let z = psd_project(&ExactHerm::scalar(2, &int(-1)).to_float());
        assert!(z.is_zero() || z.frobenius_norm() < 1e-12);
        let q = (&ExactHerm::identity(2) + &sigma_x()).to_float();
        assert!(psd_project(&q).near(&q, 1e-12));
    }
}
