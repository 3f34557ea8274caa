//! Brute-force vertex enumeration of `{x : ⟨h_j, x⟩ ≤ 1}`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::One;

use super::{dot, PolytopeError};
use crate::linalg::{rat_solve, RMatrix, Rational};

pub const MAX_ENUM_DIM: usize = 8;
pub const MAX_ENUM_HALFSPACES: usize = 40;

pub(super) fn check_limits(g: usize, halfspaces: usize) -> Result<(), PolytopeError> {
    if g > MAX_ENUM_DIM || halfspaces > MAX_ENUM_HALFSPACES {
        return Err(PolytopeError::ScaleLimit { g, halfspaces });
    }
    Ok(())
}

/// Every `g`-subset of normals with an invertible coefficient matrix gives a candidate
/// point; candidates satisfying all constraints are the vertices, returned sorted.
pub(super) fn vertices_of_halfspaces(g: usize, normals: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let ones = vec![Rational::one(); g];
    let mut found = BTreeSet::new();
    for subset in (0..normals.len()).combinations(g) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&j| normals[j].clone()).collect();
        let m = RMatrix::from_rows(&rows).expect("common dimension");
        let Ok(outcome) = rat_solve(&m, &ones) else { continue };
        let Some(x) = outcome.unique() else { continue };
        if found.contains(x) {
            continue;
        }
        if normals.iter().all(|h| dot(h, x) <= Rational::one()) {
            found.insert(x.to_vec());
        }
    }
    found.into_iter().collect()
}
