//! Elements of the inclusion-constant set: scalings `s` with `s · P_max(d) ⊆ P_min(d)`.
//!
//! Every method here is a sufficient condition. An infeasible LP means "no bound from
//! this route", never that `s` lies outside the set.

use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::linalg::json::{self, JsonError};
use crate::linalg::{lp_solve, LpOutcome, LpProblem, RMatrix, Rational, VarBound};
use crate::polytope::{cartesian_product, scaling_into, symmetrization_constant, Polytope, PolytopeError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InclusionError {
    #[error("dimension must be at least 1")]
    InvalidDimension,
    #[error("length mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("direction must be entrywise positive")]
    NonPositiveDirection,
    #[error("T has a negative entry at ({0}, {1})")]
    NegativeEntry(usize, usize),
    #[error("V̂ T Ĥ differs from diag(s, 1)")]
    IdentityFails,
    #[error("factor {0} is not a simplex")]
    NotSimplex(usize),
    #[error("weights must be a probability vector")]
    NotProbability,
    #[error("bound belongs to a different polytope")]
    ForeignBound,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Json(#[from] JsonError),
}

/// `(s, T)` with `T ≥ 0` and `V̂ T Ĥ = diag(s_1, …, s_g, 1)`, which places
/// `s` in the inclusion-constant set for every dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingCertificate {
    polytope_hash: String,
    s: Vec<Rational>,
    t: RMatrix,
}

impl ScalingCertificate {
    /// Verifies nonnegativity and the identity by exact multiplication.
    pub fn new(p: &Polytope, s: Vec<Rational>, t: RMatrix) -> Result<Self, InclusionError> {
        let ext = p.extended()?;
        let (g, k, r) = (p.dim(), ext.vhat.cols(), ext.hhat.rows());
        if s.len() != g {
            return Err(InclusionError::DimensionMismatch { expected: g, found: s.len() });
        }
        if t.rows() != k || t.cols() != r {
            return Err(InclusionError::DimensionMismatch { expected: k * r, found: t.rows() * t.cols() });
        }
        for i in 0..k {
            for j in 0..r {
                if t[(i, j)].is_negative() {
                    return Err(InclusionError::NegativeEntry(i, j));
                }
            }
        }
        let product = &(&ext.vhat * &t) * &ext.hhat;
        if product != diag_hat(&s) {
            return Err(InclusionError::IdentityFails);
        }
        Ok(ScalingCertificate { polytope_hash: p.content_hash(), s, t })
    }

    pub fn s(&self) -> &[Rational] {
        &self.s
    }

    pub fn t(&self) -> &RMatrix {
        &self.t
    }

    pub fn polytope_hash(&self) -> &str {
        &self.polytope_hash
    }

    pub fn belongs_to(&self, p: &Polytope) -> bool {
        self.polytope_hash == p.content_hash()
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "polytope_hash": self.polytope_hash,
            "s": json::vec_to_json(&self.s),
            "T": json::rmatrix_to_json(&self.t),
        })
    }

    /// Reads and re-verifies a certificate against `p`.
    pub fn from_json(v: &Value, p: &Polytope) -> Result<Self, InclusionError> {
        let hash = v.get("polytope_hash").and_then(Value::as_str).unwrap_or_default();
        if hash != p.content_hash() {
            return Err(InclusionError::ForeignBound);
        }
        let s = json::vec_from_json(&v["s"], "$.s")?;
        let t = json::rmatrix_from_json(&v["T"], "$.T")?;
        Self::new(p, s, t)
    }
}

/// `diag(s_1, …, s_g, 1)`.
pub fn diag_hat(s: &[Rational]) -> RMatrix {
    let mut d: Vec<Rational> = s.to_vec();
    d.push(Rational::one());
    RMatrix::diag(&d)
}

/// `δ(d) = 2d - 1` for even `d` and `2d + 1` for odd `d`.
pub fn delta(d: usize) -> Result<u64, InclusionError> {
    if d < 1 {
        return Err(InclusionError::InvalidDimension);
    }
    let d = d as u64;
    Ok(if d % 2 == 0 { 2 * d - 1 } else { 2 * d + 1 })
}

/// Equality system `V̂ T Ĥ = D` in the variables `T` (row-major `k x r`), plus an
/// optional extra column for a scaled direction on the diagonal.
fn scaling_system(p: &Polytope, direction: Option<&[Rational]>, s: &[Rational]) -> Result<(RMatrix, Vec<Rational>), InclusionError> {
    let ext = p.extended()?;
    let (g, k, r) = (p.dim(), ext.vhat.cols(), ext.hhat.rows());
    let n = k * r + usize::from(direction.is_some());
    let m = (g + 1) * (g + 1);
    let mut a = RMatrix::zeros(m, n);
    let mut b = vec![Rational::zero(); m];
    for row_a in 0..=g {
        for col_b in 0..=g {
            let row = row_a * (g + 1) + col_b;
            for i in 0..k {
                let vi = &ext.vhat[(row_a, i)];
                if vi.is_zero() {
                    continue;
                }
                for j in 0..r {
                    let hj = &ext.hhat[(j, col_b)];
                    if !hj.is_zero() {
                        a[(row, i * r + j)] = vi * hj;
                    }
                }
            }
            if row_a == col_b {
                if row_a == g {
                    b[row] = Rational::one();
                } else if let Some(w) = direction {
                    a[(row, k * r)] = -w[row_a].clone();
                } else {
                    b[row] = s[row_a].clone();
                }
            }
        }
    }
    Ok((a, b))
}

fn t_from_point(point: &[Rational], k: usize, r: usize) -> RMatrix {
    RMatrix::from_vec(k, r, point[..k * r].to_vec()).expect("k*r entries")
}

/// Exact LP feasibility of `T ≥ 0` with `V̂ T Ĥ = diag(s, 1)`. `Ok(None)` means the LP
/// route gives no bound at `s`.
pub fn lp_feasible_scaling(p: &Polytope, s: &[Rational]) -> Result<Option<ScalingCertificate>, InclusionError> {
    if s.len() != p.dim() {
        return Err(InclusionError::DimensionMismatch { expected: p.dim(), found: s.len() });
    }
    let (a, b) = scaling_system(p, None, s)?;
    let n = a.cols();
    let lp = LpProblem::feasibility(a, b, vec![VarBound::NonNegative; n]).expect("consistent sizes");
    match lp_solve(&lp) {
        LpOutcome::Optimal { point, .. } => {
            let ext = p.extended()?;
            let t = t_from_point(&point, ext.vhat.cols(), ext.hhat.rows());
            Ok(Some(ScalingCertificate::new(p, s.to_vec(), t)?))
        }
        _ => Ok(None),
    }
}

/// Maximal `t` with `V̂ T Ĥ = diag(t·w, 1)` for some `T ≥ 0`.
pub fn lp_max_weighted(p: &Polytope, w: &[Rational]) -> Result<(Rational, ScalingCertificate), InclusionError> {
    if w.len() != p.dim() {
        return Err(InclusionError::DimensionMismatch { expected: p.dim(), found: w.len() });
    }
    if w.iter().any(|x| !x.is_positive()) {
        return Err(InclusionError::NonPositiveDirection);
    }
    let (a, b) = scaling_system(p, Some(w), &[])?;
    let n = a.cols();
    let mut c = vec![Rational::zero(); n];
    c[n - 1] = Rational::one();
    let lp = LpProblem::new(c, a, b, vec![VarBound::NonNegative; n]).expect("consistent sizes");
    match lp_solve(&lp) {
        LpOutcome::Optimal { value, point } => {
            let ext = p.extended()?;
            let t = t_from_point(&point, ext.vhat.cols(), ext.hhat.rows());
            let s = w.iter().map(|x| x * &value).collect();
            Ok((value, ScalingCertificate::new(p, s, t)?))
        }
        LpOutcome::Unbounded => Err(InclusionError::Unbounded),
        LpOutcome::Infeasible => unreachable!("t = 0 with a barycentric T is always feasible"),
    }
}

/// Largest flat scaling reachable by the LP route.
pub fn lp_max_uniform_scaling(p: &Polytope) -> Result<(Rational, ScalingCertificate), InclusionError> {
    lp_max_weighted(p, &vec![Rational::one(); p.dim()])
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Validity {
    AllDimensions,
    /// Valid at this matrix dimension and every smaller one.
    UpToDimension { d: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Lp(ScalingCertificate),
    Symmetrization { symmetrization_constant: Rational, delta: u64 },
    Comparison { into_q: Rational, from_q: Rational, known: Box<InclusionBound> },
    Polysimplex { weights: Vec<Rational> },
}

impl Witness {
    pub fn method(&self) -> &'static str {
        match self {
            Witness::Lp(_) => "lp",
            Witness::Symmetrization { .. } => "symmetrization",
            Witness::Comparison { .. } => "comparison",
            Witness::Polysimplex { .. } => "polysimplex",
        }
    }
}

/// An element `s` of the inclusion-constant set with the witness that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct InclusionBound {
    pub polytope_hash: String,
    pub s: Vec<Rational>,
    pub validity: Validity,
    pub witness: Witness,
    pub provenance: Vec<String>,
}

impl InclusionBound {
    pub fn from_lp(p: &Polytope, cert: ScalingCertificate) -> Self {
        InclusionBound {
            polytope_hash: p.content_hash(),
            s: cert.s().to_vec(),
            validity: Validity::AllDimensions,
            provenance: vec![format!("lp on {}", p.label())],
            witness: Witness::Lp(cert),
        }
    }

    /// Entrywise `self.s ≥ other.s`.
    pub fn dominates(&self, other: &InclusionBound) -> bool {
        self.s.len() == other.s.len() && self.s.iter().zip(&other.s).all(|(a, b)| a >= b)
    }

    pub fn to_json(&self) -> Value {
        let witness = match &self.witness {
            Witness::Lp(c) => c.to_json(),
            Witness::Symmetrization { symmetrization_constant, delta } => serde_json::json!({
                "symmetrization_constant": json::rat_to_json(symmetrization_constant),
                "delta": delta,
            }),
            Witness::Comparison { into_q, from_q, known } => serde_json::json!({
                "into_q": json::rat_to_json(into_q),
                "from_q": json::rat_to_json(from_q),
                "known": known.to_json(),
            }),
            Witness::Polysimplex { weights } => serde_json::json!({ "weights": json::vec_to_json(weights) }),
        };
        serde_json::json!({
            "polytope_hash": self.polytope_hash,
            "method": self.witness.method(),
            "s": json::vec_to_json(&self.s),
            "validity": serde_json::to_value(&self.validity).expect("serializable"),
            "witness": witness,
            "provenance": self.provenance,
        })
    }
}

/// `s_sym / δ(d)` flat, valid at dimension `d`.
pub fn symmetrization_bound(p: &Polytope, d: usize) -> Result<InclusionBound, InclusionError> {
    let delta = delta(d)?;
    let s_sym = symmetrization_constant(p)?;
    let value = &s_sym / Rational::from_integer(delta.into());
    Ok(InclusionBound {
        polytope_hash: p.content_hash(),
        s: vec![value; p.dim()],
        validity: Validity::UpToDimension { d },
        witness: Witness::Symmetrization { symmetrization_constant: s_sym, delta },
        provenance: vec![format!("symmetrization of {} at d = {d}", p.label())],
    })
}

/// Transfers a bound on `Q` to `P` through `scaling_into(P,Q) · s_Q · scaling_into(Q,P)`.
pub fn comparison_bound(p: &Polytope, q: &Polytope, known_q: &InclusionBound) -> Result<InclusionBound, InclusionError> {
    if p.dim() != q.dim() {
        return Err(InclusionError::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    if known_q.polytope_hash != q.content_hash() {
        return Err(InclusionError::ForeignBound);
    }
    let into_q = scaling_into(p, q)?;
    let from_q = scaling_into(q, p)?;
    let factor = &into_q * &from_q;
    let mut provenance = known_q.provenance.clone();
    provenance.push(format!("compared {} with {}", p.label(), q.label()));
    Ok(InclusionBound {
        polytope_hash: p.content_hash(),
        s: known_q.s.iter().map(|x| x * &factor).collect(),
        validity: known_q.validity.clone(),
        witness: Witness::Comparison { into_q, from_q, known: Box::new(known_q.clone()) },
        provenance,
    })
}

/// `(λ_1, …, λ_n)`, each repeated over its factor's coordinates, on the product of simplices.
/// Returns the bound together with the product polytope it refers to.
pub fn polysimplex_bound(factors: &[Polytope], weights: &[Rational]) -> Result<(InclusionBound, Polytope), InclusionError> {
    if factors.is_empty() || factors.len() != weights.len() {
        return Err(InclusionError::DimensionMismatch { expected: factors.len(), found: weights.len() });
    }
    if weights.iter().any(Signed::is_negative) || weights.iter().sum::<Rational>() != Rational::one() {
        return Err(InclusionError::NotProbability);
    }
    for (i, f) in factors.iter().enumerate() {
        if f.num_vertices() != Some(f.dim() + 1) {
            return Err(InclusionError::NotSimplex(i));
        }
    }
    let mut product = factors[0].clone();
    for f in &factors[1..] {
        product = cartesian_product(&product, f)?;
    }
    let s = factors
        .iter()
        .zip(weights)
        .flat_map(|(f, w)| std::iter::repeat(w.clone()).take(f.dim()))
        .collect();
    let bound = InclusionBound {
        polytope_hash: product.content_hash(),
        s,
        validity: Validity::AllDimensions,
        witness: Witness::Polysimplex { weights: weights.to_vec() },
        provenance: vec![format!("mixing over {} simplex factors", factors.len())],
    };
    Ok((bound, product))
}

/// Runs the LP route, symmetrization at `d` and every supplied comparison
/// `(Q, bound on Q)`, and keeps the maximal bounds under the entrywise order.
pub fn best_known(
    p: &Polytope,
    d: usize,
    comparisons: &[(Polytope, InclusionBound)],
) -> Result<Vec<InclusionBound>, InclusionError> {
    let mut candidates = Vec::new();
    let (_, cert) = lp_max_uniform_scaling(p)?;
    candidates.push(InclusionBound::from_lp(p, cert));
    candidates.push(symmetrization_bound(p, d)?);
    for (q, known) in comparisons {
        candidates.push(comparison_bound(p, q, known)?);
    }
    Ok(maximal_bounds(candidates))
}

/// Bounds not strictly dominated by another; ties keep the first occurrence.
pub fn maximal_bounds(candidates: Vec<InclusionBound>) -> Vec<InclusionBound> {
    let mut kept: Vec<InclusionBound> = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        let beaten = candidates.iter().enumerate().any(|(j, o)| {
            j != i && o.dominates(c) && (!c.dominates(o) || j < i)
        });
        if !beaten {
            kept.push(c.clone());
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    fn interval() -> Polytope {
        Polytope::from_facets(vec![vec![int(1)], vec![int(-1)]]).unwrap()
    }

    fn square() -> Polytope {
        Polytope::from_vertices(vec![
            vec![int(1), int(1)],
            vec![int(1), int(-1)],
            vec![int(-1), int(1)],
            vec![int(-1), int(-1)],
        ])
        .unwrap()
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(1).unwrap(), 3);
        assert_eq!(delta(2).unwrap(), 3);
        assert_eq!(delta(3).unwrap(), 7);
        assert!(delta(0).is_err());
    }

    #[test]
    fn zero_scaling_is_feasible() {
        let cert = lp_feasible_scaling(&square(), &[int(0), int(0)]).unwrap();
        assert!(cert.is_some());
    }

    #[test]
    fn interval_reaches_one() {
        let (t, cert) = lp_max_uniform_scaling(&interval()).unwrap();
        assert_eq!(t, int(1));
        assert!(cert.t().is_nonneg());
    }

    #[test]
    fn square_bound_respects_necessary_limit() {
        let (t, _) = lp_max_uniform_scaling(&square()).unwrap();
        assert!(t.to_string().len() < 10);
        assert!(crate::linalg::rational::to_f64(&t) <= std::f64::consts::FRAC_1_SQRT_2);
    }

    #[test]
    fn symmetrization_on_square() {
        let b = symmetrization_bound(&square(), 2).unwrap();
        assert_eq!(b.s, vec![rat(1, 3), rat(1, 3)]);
    }

    #[test]
    fn comparison_with_itself_is_identity() {
        let sq = square();
        let known = symmetrization_bound(&sq, 2).unwrap();
        let same = comparison_bound(&sq, &sq, &known).unwrap();
        assert_eq!(same.s, known.s);
        assert_eq!(same.validity, known.validity);
    }

    #[test]
    fn polysimplex_weights() {
        let (b, prod) = polysimplex_bound(&[interval(), interval()], &[rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(b.s, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(prod.dim(), 2);
        assert!(matches!(
            polysimplex_bound(&[square()], &[int(1)]),
            Err(InclusionError::NotSimplex(0))
        ));
        assert!(polysimplex_bound(&[interval()], &[rat(1, 2)]).is_err());
    }

    #[test]
    fn certificate_json_reverifies() {
        let sq = square();
        let (_, cert) = lp_max_uniform_scaling(&sq).unwrap();
        let v = cert.to_json();
        assert_eq!(ScalingCertificate::from_json(&v, &sq).unwrap(), cert);
        let mut tampered = v.clone();
        tampered["s"][0] = serde_json::json!([1, 1]);
        assert!(ScalingCertificate::from_json(&tampered, &sq).is_err());
    }

    #[test]
    fn maximal_bounds_keep_incomparable() {
        let sq = square();
        let mk = |a: i64, b: i64| InclusionBound {
            polytope_hash: sq.content_hash(),
            s: vec![rat(a, 10), rat(b, 10)],
            validity: Validity::AllDimensions,
            witness: Witness::Polysimplex { weights: vec![] },
            provenance: vec![],
        };
        let kept = maximal_bounds(vec![mk(1, 1), mk(3, 1), mk(1, 3), mk(2, 1)]);
        assert_eq!(kept.len(), 2);
    }
}
