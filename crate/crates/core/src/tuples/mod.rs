//! Hermitian tuples, POVMs and compatibility certificates over a polytope.

mod certificates;
mod convert;
mod pruning;
mod search;

use serde_json::Value;

use crate::linalg::json::{self, JsonError};
use crate::linalg::{psd_check, ExactHerm, Gq, HermMatrix, LinalgError, PsdMode, Rational, Scalar, DEFAULT_PSD_TOL};
use crate::polytope::PolytopeError;

pub use certificates::{
    certificate_defect, certificate_from_scaling, complete_subpovm, direct_sum_embedding_certificate,
    marginal_certificates, mixing_certificate, pmax_check, simplex_certificate, tensor_embedding_certificate,
    verify_certificate, CertificateDefect, PmaxReport,
};
pub use convert::{coarse_grain, effects_to_tuple, find_coarse_graining, multioutcome_from_tuple, multioutcome_to_tuple, tuple_to_effects};
pub use pruning::{
    range_pruned_feasibility, BlockConstraintSystem, BlockEquation, InfeasibilityWitness, PruneOutcome,
    MAX_PRUNING_DIM,
};
pub use search::{pmin_search_ap, ApOutcome, ApSettings};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TupleError {
    #[error("empty tuple")]
    Empty,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("element {0} is not positive semidefinite")]
    NotPsd(usize),
    #[error("elements do not sum to the identity")]
    NotNormalized,
    #[error("elements sum to more than the identity")]
    ExceedsIdentity,
    #[error("certificate has {found} elements but the polytope has {expected} vertices")]
    IndexMismatch { expected: usize, found: usize },
    #[error("tuple is not in P_max (facet {facet} violated)")]
    NotInPmax { facet: usize },
    #[error("polytope is not a simplex")]
    NotSimplex,
    #[error("certificate belongs to a different polytope")]
    ForeignCertificate,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Json(#[from] JsonError),
}

/// PSD decision used throughout: exact minors for the exact backend up to `d = 8`,
/// otherwise the smallest eigenvalue against `DEFAULT_PSD_TOL`.
pub fn is_psd<S: Scalar>(h: &HermMatrix<S>) -> bool {
    let mode = if S::is_exact() && h.dim() <= 8 {
        PsdMode::Exact
    } else {
        PsdMode::Float { tol: DEFAULT_PSD_TOL }
    };
    psd_check(h, mode).unwrap_or(false)
}

/// Equality used for certificate checks: exact, or entrywise within `DEFAULT_PSD_TOL`.
pub fn matrices_agree<S: Scalar>(a: &HermMatrix<S>, b: &HermMatrix<S>) -> bool {
    a.dim() == b.dim() && a.near(b, DEFAULT_PSD_TOL)
}

fn common_dim<S: Scalar>(elements: &[HermMatrix<S>]) -> Result<usize, TupleError> {
    let d = elements.first().ok_or(TupleError::Empty)?.dim();
    for e in elements {
        if e.dim() != d {
            return Err(TupleError::DimensionMismatch { expected: d, found: e.dim() });
        }
    }
    Ok(d)
}

/// A `g`-tuple of `d x d` Hermitian matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct HermTuple<S> {
    d: usize,
    elements: Vec<HermMatrix<S>>,
}

pub type ExactTuple = HermTuple<Gq>;
pub type FloatTuple = HermTuple<num_complex::Complex64>;

impl<S: Scalar> HermTuple<S> {
    pub fn new(elements: Vec<HermMatrix<S>>) -> Result<Self, TupleError> {
        let d = common_dim(&elements)?;
        Ok(HermTuple { d, elements })
    }

    pub fn zeros(g: usize, d: usize) -> Self {
        HermTuple { d, elements: vec![HermMatrix::zeros(d); g] }
    }

    pub fn g(&self) -> usize {
        self.elements.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn elements(&self) -> &[HermMatrix<S>] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<HermMatrix<S>> {
        self.elements
    }

    pub fn scale(&self, s: &Rational) -> Self {
        HermTuple { d: self.d, elements: self.elements.iter().map(|a| a.scale(s)).collect() }
    }

    /// Coordinatewise scaling `(s_1 A_1, …, s_g A_g)`.
    pub fn scale_each(&self, s: &[Rational]) -> Self {
        HermTuple { d: self.d, elements: self.elements.iter().zip(s).map(|(a, c)| a.scale(c)).collect() }
    }

    /// Concatenation `(A_1, A_2)` of two tuples of equal dimension.
    pub fn concat(&self, other: &Self) -> Result<Self, TupleError> {
        let mut elements = self.elements.clone();
        elements.extend(other.elements.iter().cloned());
        Self::new(elements)
    }

    /// Extended tuple `Â = (A_1, …, A_g, I)`.
    pub fn hat(&self) -> Vec<HermMatrix<S>> {
        let mut out = self.elements.clone();
        out.push(HermMatrix::identity(self.d));
        out
    }

    pub fn to_float(&self) -> FloatTuple {
        HermTuple { d: self.d, elements: self.elements.iter().map(HermMatrix::to_float).collect() }
    }

    pub fn to_exact(&self) -> ExactTuple {
        HermTuple { d: self.d, elements: self.elements.iter().map(HermMatrix::to_exact).collect() }
    }

    pub fn cast<T: Scalar>(&self) -> HermTuple<T> {
        HermTuple { d: self.d, elements: self.elements.iter().map(HermMatrix::cast).collect() }
    }

    pub fn to_json(&self) -> Value {
        elements_json("tuple", &self.elements)
    }
}

impl ExactTuple {
    pub fn from_json(v: &Value) -> Result<Self, TupleError> {
        let (_, elements) = elements_from_json(v)?;
        Self::new(elements)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PovmMode {
    Povm,
    SubPovm,
}

/// PSD elements summing to the identity (or to at most the identity in sub-POVM mode).
#[derive(Clone, Debug, PartialEq)]
pub struct Povm<S> {
    mode: PovmMode,
    d: usize,
    elements: Vec<HermMatrix<S>>,
}

pub type ExactPovm = Povm<Gq>;
pub type FloatPovm = Povm<num_complex::Complex64>;

impl<S: Scalar> Povm<S> {
    pub fn new(elements: Vec<HermMatrix<S>>, mode: PovmMode) -> Result<Self, TupleError> {
        let d = common_dim(&elements)?;
        if let Some(i) = elements.iter().position(|e| !is_psd(e)) {
            return Err(TupleError::NotPsd(i));
        }
        let total = HermMatrix::sum(d, &elements);
        let id = HermMatrix::identity(d);
        match mode {
            PovmMode::Povm if !matrices_agree(&total, &id) => Err(TupleError::NotNormalized),
            PovmMode::SubPovm if !is_psd(&(&id - &total)) => Err(TupleError::ExceedsIdentity),
            _ => Ok(Povm { mode, d, elements }),
        }
    }

    /// Wraps elements without validation; `verify_certificate` re-checks everything.
    pub fn new_unchecked(elements: Vec<HermMatrix<S>>, mode: PovmMode) -> Self {
        let d = elements.first().map_or(0, HermMatrix::dim);
        Povm { mode, d, elements }
    }

    pub fn mode(&self) -> PovmMode {
        self.mode
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermMatrix<S>] {
        &self.elements
    }

    /// `I - Σ C_i`.
    pub fn deficit(&self) -> HermMatrix<S> {
        &HermMatrix::identity(self.d) - &HermMatrix::sum(self.d, &self.elements)
    }

    pub fn to_exact(&self) -> ExactPovm {
        Povm { mode: self.mode, d: self.d, elements: self.elements.iter().map(HermMatrix::to_exact).collect() }
    }

    pub fn to_float(&self) -> FloatPovm {
        Povm { mode: self.mode, d: self.d, elements: self.elements.iter().map(HermMatrix::to_float).collect() }
    }

    pub fn cast<T: Scalar>(&self) -> Povm<T> {
        Povm { mode: self.mode, d: self.d, elements: self.elements.iter().map(HermMatrix::cast).collect() }
    }

    pub fn to_json(&self) -> Value {
        let mode = match self.mode {
            PovmMode::Povm => "povm",
            PovmMode::SubPovm => "sub-povm",
        };
        elements_json(mode, &self.elements)
    }
}

impl ExactPovm {
    pub fn from_json(v: &Value) -> Result<Self, TupleError> {
        let (mode, elements) = elements_from_json(v)?;
        let mode = match mode.as_str() {
            "povm" => PovmMode::Povm,
            "sub-povm" => PovmMode::SubPovm,
            _ => return Err(JsonError::shape("mode povm or sub-povm", "$.mode").into()),
        };
        Self::new(elements, mode)
    }
}

fn elements_json<S: Scalar>(mode: &str, elements: &[HermMatrix<S>]) -> Value {
    serde_json::json!({
        "mode": mode,
        "elements": elements.iter().map(json::herm_to_json).collect::<Vec<_>>(),
    })
}

fn elements_from_json(v: &Value) -> Result<(String, Vec<ExactHerm>), TupleError> {
    let mode = v.get("mode").and_then(Value::as_str).unwrap_or("tuple").to_string();
    let arr = v
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError::shape("elements array", "$.elements"))?;
    let elements = arr
        .iter()
        .enumerate()
        .map(|(i, e)| json::herm_from_json(e, &format!("$.elements[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((mode, elements))
}

/// Certificate `A = Σ_i v_i ⊗ C_i` bound to a polytope by content hash.
#[derive(Clone, Debug, PartialEq)]
pub struct CompatCertificate<S> {
    pub polytope_hash: String,
    pub povm: Povm<S>,
}

impl<S: Scalar> CompatCertificate<S> {
    pub fn to_json(&self) -> Value {
        serde_json::json!({ "polytope_hash": self.polytope_hash, "povm": self.povm.to_json() })
    }
}

impl CompatCertificate<Gq> {
    pub fn from_json(v: &Value) -> Result<Self, TupleError> {
        let polytope_hash = v
            .get("polytope_hash")
            .and_then(Value::as_str)
            .ok_or_else(|| JsonError::shape("hash string", "$.polytope_hash"))?
            .to_string();
        Ok(CompatCertificate { polytope_hash, povm: ExactPovm::from_json(&v["povm"])? })
    }
}


#[cfg(test)]
mod tests;
