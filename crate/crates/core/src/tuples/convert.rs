//! Correspondences between effects or POVMs and tuples over cubes and polysimplices.

use super::{HermTuple, Povm, PovmMode, TupleError};
use crate::linalg::{HermMatrix, Rational, Scalar};

/// `A_i = 2 E_i - I`.
pub fn effects_to_tuple<S: Scalar>(effects: &[HermMatrix<S>]) -> Result<HermTuple<S>, TupleError> {
    let two = Rational::from_integer(2.into());
    HermTuple::new(
        effects
            .iter()
            .map(|e| &e.scale(&two) - &HermMatrix::identity(e.dim()))
            .collect(),
    )
}

/// `E_i = (A_i + I) / 2`.
pub fn tuple_to_effects<S: Scalar>(a: &HermTuple<S>) -> Vec<HermMatrix<S>> {
    let half = Rational::new(1.into(), 2.into());
    a.elements()
        .iter()
        .map(|x| (x + &HermMatrix::identity(a.d())).scale(&half))
        .collect()
}

/// Stacks `E^{(j)}_i - I/k_j` for the first `k_j - 1` outcomes of every POVM.
pub fn multioutcome_to_tuple<S: Scalar>(povms: &[Povm<S>]) -> Result<HermTuple<S>, TupleError> {
    let mut elements = Vec::new();
    for povm in povms {
        if povm.mode() != PovmMode::Povm || povm.len() < 2 {
            return Err(TupleError::Invalid("every input must be a POVM with at least 2 outcomes".into()));
        }
        let shift = HermMatrix::scalar(povm.d(), &Rational::new(1.into(), (povm.len() as i64).into()));
        elements.extend(povm.elements()[..povm.len() - 1].iter().map(|e| e - &shift));
    }
    HermTuple::new(elements)
}

/// Inverse of [`multioutcome_to_tuple`] for outcome counts `ks`; fails unless every
/// reconstructed family is a POVM.
pub fn multioutcome_from_tuple<S: Scalar>(a: &HermTuple<S>, ks: &[usize]) -> Result<Vec<Povm<S>>, TupleError> {
    let expected: usize = ks.iter().map(|k| k.saturating_sub(1)).sum();
    if expected != a.g() || ks.iter().any(|&k| k < 2) {
        return Err(TupleError::DimensionMismatch { expected, found: a.g() });
    }
    let d = a.d();
    let mut offset = 0;
    let mut out = Vec::with_capacity(ks.len());
    for &k in ks {
        let shift = HermMatrix::scalar(d, &Rational::new(1.into(), (k as i64).into()));
        let mut elements: Vec<HermMatrix<S>> =
            a.elements()[offset..offset + k - 1].iter().map(|x| x + &shift).collect();
        let last = &HermMatrix::identity(d) - &HermMatrix::sum(d, &elements);
        elements.push(last);
        out.push(Povm::new(elements, PovmMode::Povm)?);
        offset += k - 1;
    }
    Ok(out)
}

/// Deterministic post-processing: outcome `k` collects the joint elements `λ` with
/// `map[λ] = k`.
pub fn coarse_grain<S: Scalar>(joint: &Povm<S>, map: &[usize], outcomes: usize) -> Result<Povm<S>, TupleError> {
    if map.len() != joint.len() || map.iter().any(|&k| k >= outcomes) {
        return Err(TupleError::Invalid("post-processing map does not fit the joint POVM".into()));
    }
    let d = joint.d();
    let elements = (0..outcomes)
        .map(|k| HermMatrix::sum(d, joint.elements().iter().zip(map).filter(|(_, &m)| m == k).map(|(e, _)| e)))
        .collect();
    Ok(Povm::new_unchecked(elements, joint.mode()))
}

/// Searches all deterministic post-processings of `joint` for one reproducing `target`.
/// Gives up (returns `None`) beyond `100_000` candidate maps.
pub fn find_coarse_graining<S: Scalar>(joint: &Povm<S>, target: &Povm<S>) -> Option<Vec<usize>> {
    let (n, k) = (joint.len(), target.len());
    if k == 0 || (k as f64).powi(n as i32) > 1e5 || joint.d() != target.d() {
        return None;
    }
    itertools::Itertools::multi_cartesian_product((0..n).map(|_| 0..k)).find(|map| {
        coarse_grain(joint, map, k)
            .map(|p| p.elements().iter().zip(target.elements()).all(|(a, b)| super::matrices_agree(a, b)))
            .unwrap_or(false)
    })
}
