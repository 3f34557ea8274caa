//! P_max membership, certificate verification and certificate constructions.

use num_traits::{One, Signed, Zero};

use super::{is_psd, matrices_agree, CompatCertificate, HermTuple, Povm, PovmMode, TupleError};
use crate::inclusion::ScalingCertificate;
use crate::linalg::{herm_eig_min, HermMatrix, Rational, Scalar};
use crate::polytope::{barycentric_resolution, cartesian_product, Polytope};

/// Outcome of the facet test: `margins[j]` is the smallest eigenvalue of `I - Σ_x h_j(x) A_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct PmaxReport {
    pub member: bool,
    pub margins: Vec<f64>,
    pub violated: Option<usize>,
    /// Whether the verdict was decided in exact arithmetic.
    pub exact: bool,
}

fn facet_blocks<S: Scalar>(p: &Polytope, a: &HermTuple<S>) -> Result<Vec<HermMatrix<S>>, TupleError> {
    if a.g() != p.dim() {
        return Err(TupleError::DimensionMismatch { expected: p.dim(), found: a.g() });
    }
    let owned;
    let facets = match p.facets() {
        Ok(f) => f,
        Err(_) => {
            owned = crate::polytope::enumerate_facets(p)?;
            &owned
        }
    };
    let refs: Vec<&HermMatrix<S>> = a.elements().iter().collect();
    let id = HermMatrix::identity(a.d());
    Ok(facets
        .iter()
        .map(|h| &id - &HermMatrix::lin_comb(a.d(), h, &refs))
        .collect())
}

/// `A ∈ P_max` iff every block `I - Σ_x h_j(x) A_x` is PSD.
pub fn pmax_check<S: Scalar>(p: &Polytope, a: &HermTuple<S>) -> Result<PmaxReport, TupleError> {
    let blocks = facet_blocks(p, a)?;
    let margins: Vec<f64> = blocks.iter().map(herm_eig_min).collect();
    let violated = blocks.iter().position(|b| !is_psd(b));
    Ok(PmaxReport {
        member: violated.is_none(),
        margins,
        violated,
        exact: S::is_exact() && a.d() <= 8,
    })
}

/// First reason a candidate certificate fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateDefect {
    WrongLength { expected: usize, found: usize },
    WrongDimension(usize),
    NotPsd(usize),
    NotNormalized,
    Mismatch(usize),
}

pub fn certificate_defect<S: Scalar>(
    p: &Polytope,
    a: &HermTuple<S>,
    c: &Povm<S>,
) -> Result<Option<CertificateDefect>, TupleError> {
    let vertices = p.vertices()?;
    if a.g() != p.dim() {
        return Err(TupleError::DimensionMismatch { expected: p.dim(), found: a.g() });
    }
    if c.len() != vertices.len() {
        return Ok(Some(CertificateDefect::WrongLength { expected: vertices.len(), found: c.len() }));
    }
    if let Some(i) = c.elements().iter().position(|e| e.dim() != a.d()) {
        return Ok(Some(CertificateDefect::WrongDimension(i)));
    }
    if let Some(i) = c.elements().iter().position(|e| !is_psd(e)) {
        return Ok(Some(CertificateDefect::NotPsd(i)));
    }
    if !matrices_agree(&HermMatrix::sum(a.d(), c.elements()), &HermMatrix::identity(a.d())) {
        return Ok(Some(CertificateDefect::NotNormalized));
    }
    let refs: Vec<&HermMatrix<S>> = c.elements().iter().collect();
    for x in 0..p.dim() {
        let coeffs: Vec<Rational> = vertices.iter().map(|v| v[x].clone()).collect();
        let rebuilt = HermMatrix::lin_comb(a.d(), &coeffs, &refs);
        if !matrices_agree(&rebuilt, &a.elements()[x]) {
            return Ok(Some(CertificateDefect::Mismatch(x)));
        }
    }
    Ok(None)
}

/// Checks `A_x = Σ_i v_i(x) C_i`, `Σ C_i = I` and `C_i ⪰ 0`.
pub fn verify_certificate<S: Scalar>(p: &Polytope, a: &HermTuple<S>, c: &Povm<S>) -> Result<bool, TupleError> {
    Ok(certificate_defect(p, a, c)?.is_none())
}

/// `C = T Ĥ Â`, a certificate for `s·A` whenever `A ∈ P_max`.
pub fn certificate_from_scaling<S: Scalar>(
    cert: &ScalingCertificate,
    p: &Polytope,
    a: &HermTuple<S>,
) -> Result<CompatCertificate<S>, TupleError> {
    if !cert.belongs_to(p) {
        return Err(TupleError::ForeignCertificate);
    }
    let blocks = facet_blocks(p, a)?;
    if let Some(facet) = blocks.iter().position(|b| !is_psd(b)) {
        return Err(TupleError::NotInPmax { facet });
    }
    let t = cert.t();
    let refs: Vec<&HermMatrix<S>> = blocks.iter().collect();
    let elements = (0..t.rows())
        .map(|i| HermMatrix::lin_comb(a.d(), t.row(i), &refs))
        .collect();
    Ok(CompatCertificate { polytope_hash: p.content_hash(), povm: Povm::new(elements, PovmMode::Povm)? })
}

/// `C = V̂⁻¹ Â` on a simplex, where every member of P_max is P-compatible.
pub fn simplex_certificate<S: Scalar>(p: &Polytope, a: &HermTuple<S>) -> Result<CompatCertificate<S>, TupleError> {
    if p.num_vertices() != Some(p.dim() + 1) {
        return Err(TupleError::NotSimplex);
    }
    let inverse = p.extended()?.vhat.inverse().ok_or(TupleError::NotSimplex)?;
    let report = pmax_check(p, a)?;
    if let Some(facet) = report.violated {
        return Err(TupleError::NotInPmax { facet });
    }
    let hat = a.hat();
    let refs: Vec<&HermMatrix<S>> = hat.iter().collect();
    let elements = (0..inverse.rows())
        .map(|i| HermMatrix::lin_comb(a.d(), inverse.row(i), &refs))
        .collect();
    Ok(CompatCertificate { polytope_hash: p.content_hash(), povm: Povm::new(elements, PovmMode::Povm)? })
}

/// Distributes `I - Σ C_i` over the vertices by a barycentric resolution of 0, which
/// leaves the represented tuple unchanged.
pub fn complete_subpovm<S: Scalar>(p: &Polytope, c: &Povm<S>) -> Result<Povm<S>, TupleError> {
    let k = p.vertices()?.len();
    if c.len() != k {
        return Err(TupleError::IndexMismatch { expected: k, found: c.len() });
    }
    let deficit = c.deficit();
    if !is_psd(&deficit) {
        return Err(TupleError::ExceedsIdentity);
    }
    let pi = barycentric_resolution(p)?;
    let elements = c
        .elements()
        .iter()
        .zip(&pi)
        .map(|(ci, w)| ci + &deficit.scale(w))
        .collect();
    Povm::new(elements, PovmMode::Povm)
}

/// Marginals `C¹_i = Σ_j C_ij` and `C²_j = Σ_i C_ij` of a certificate on `P1 × P2`.
pub fn marginal_certificates<S: Scalar>(
    p1: &Polytope,
    p2: &Polytope,
    joint: &Povm<S>,
) -> Result<(CompatCertificate<S>, CompatCertificate<S>), TupleError> {
    let (k1, k2) = (p1.vertices()?.len(), p2.vertices()?.len());
    if joint.len() != k1 * k2 {
        return Err(TupleError::IndexMismatch { expected: k1 * k2, found: joint.len() });
    }
    let d = joint.d();
    let e = joint.elements();
    let first = (0..k1).map(|i| HermMatrix::sum(d, &e[i * k2..(i + 1) * k2])).collect();
    let second = (0..k2).map(|j| HermMatrix::sum(d, (0..k1).map(|i| &e[i * k2 + j]))).collect();
    Ok((
        CompatCertificate { polytope_hash: p1.content_hash(), povm: Povm::new(first, PovmMode::Povm)? },
        CompatCertificate { polytope_hash: p2.content_hash(), povm: Povm::new(second, PovmMode::Povm)? },
    ))
}

fn product_certificate<S: Scalar>(
    p1: &Polytope,
    p2: &Polytope,
    build: impl Fn(usize, usize) -> HermMatrix<S>,
) -> Result<CompatCertificate<S>, TupleError> {
    let (k1, k2) = (p1.vertices()?.len(), p2.vertices()?.len());
    let product = cartesian_product(p1, p2)?;
    let mut elements = Vec::with_capacity(k1 * k2);
    for i in 0..k1 {
        for j in 0..k2 {
            elements.push(build(i, j));
        }
    }
    Ok(CompatCertificate { polytope_hash: product.content_hash(), povm: Povm::new(elements, PovmMode::Povm)? })
}

/// Certificate on `P1 × P2` for `(A1 ⊕ 0, 0 ⊕ A2)`:
/// `C_ij = π²_j (C_i ⊕ 0) + π¹_i (0 ⊕ D_j)` with barycentric resolutions `π¹, π²`.
pub fn direct_sum_embedding_certificate<S: Scalar>(
    p1: &Polytope,
    c1: &Povm<S>,
    p2: &Polytope,
    c2: &Povm<S>,
) -> Result<CompatCertificate<S>, TupleError> {
    let (pi1, pi2) = (barycentric_resolution(p1)?, barycentric_resolution(p2)?);
    let (z1, z2) = (HermMatrix::zeros(c1.d()), HermMatrix::zeros(c2.d()));
    product_certificate(p1, p2, |i, j| {
        &c1.elements()[i].direct_sum(&z2).scale(&pi2[j]) + &z1.direct_sum(&c2.elements()[j]).scale(&pi1[i])
    })
}

/// Certificate on `P1 × P2` for `(A1 ⊗ I, I ⊗ A2)`: `C_ij = C_i ⊗ D_j`.
pub fn tensor_embedding_certificate<S: Scalar>(
    p1: &Polytope,
    c1: &Povm<S>,
    p2: &Polytope,
    c2: &Povm<S>,
) -> Result<CompatCertificate<S>, TupleError> {
    product_certificate(p1, p2, |i, j| c1.elements()[i].kron(&c2.elements()[j]))
}

/// Certificate on `P1 × P2` for `(q1 A1, q2 A2)` with `q1, q2 ≥ 0`, `q1 + q2 ≤ 1`:
/// `C_ij = q1 π²_j C_i + q2 π¹_i D_j + (1 - q1 - q2) π¹_i π²_j I`.
pub fn mixing_certificate<S: Scalar>(
    p1: &Polytope,
    c1: &Povm<S>,
    q1: &Rational,
    p2: &Polytope,
    c2: &Povm<S>,
    q2: &Rational,
) -> Result<CompatCertificate<S>, TupleError> {
    if c1.d() != c2.d() {
        return Err(TupleError::DimensionMismatch { expected: c1.d(), found: c2.d() });
    }
    let rest = Rational::one() - q1 - q2;
    if q1.is_negative() || q2.is_negative() || rest.is_negative() {
        return Err(TupleError::Invalid("mixing weights must satisfy q1, q2 >= 0 and q1 + q2 <= 1".into()));
    }
    let (pi1, pi2) = (barycentric_resolution(p1)?, barycentric_resolution(p2)?);
    let id = HermMatrix::<S>::identity(c1.d());
    product_certificate(p1, p2, |i, j| {
        let mut m = &c1.elements()[i].scale(&(q1 * &pi2[j])) + &c2.elements()[j].scale(&(q2 * &pi1[i]));
        let w = &rest * &pi1[i] * &pi2[j];
        if !w.is_zero() {
            m = &m + &id.scale(&w);
        }
        m
    })
}
