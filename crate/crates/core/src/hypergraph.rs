//! Probability hypergraphs, their charts and the associated polytopes.
//!
//! Vertices are `0..n`. A chart `(π_*, π_1, …, π_g)` fixes coordinates on the affine space
//! of normalized assignments; the polytope of a chart is `{a : π_* + Σ a_x π_x ≥ 0}`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::linalg::json::{self as js, JsonError};
use crate::linalg::{lp_solve, rat, HermMatrix, LpOutcome, LpProblem, RMatrix, Rational, Scalar, VarBound};
use crate::polytope::{Polytope, PolytopeError};
use crate::tuples::{is_psd, matrices_agree, CompatCertificate, HermTuple, Povm, TupleError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HypergraphError {
    #[error("hypergraph has no vertices")]
    NoVertices,
    #[error("vertex {0} lies in no hyperedge")]
    IsolatedVertex(usize),
    #[error("hyperedge {0} is empty")]
    EmptyEdge(usize),
    #[error("hyperedge {edge} mentions vertex {vertex}, but there are only {count} vertices")]
    VertexOutOfRange { edge: usize, vertex: usize, count: usize },
    #[error("not a probability hypergraph")]
    NotProbability(RejectionCertificate),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("expected {expected} operators, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("operators do not lie in the affine span of the chart")]
    OutsideSpan,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Tuple(#[from] TupleError),
    #[error(transparent)]
    Json(#[from] JsonError),
}

/// Vertex set `0..vertex_count` with nonempty hyperedges covering every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Edges are stored sorted and deduplicated.
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        if vertex_count == 0 {
            return Err(HypergraphError::NoVertices);
        }
        let mut covered = vec![false; vertex_count];
        let mut clean = Vec::with_capacity(edges.len());
        for (i, e) in edges.into_iter().enumerate() {
            let set: BTreeSet<usize> = e.into_iter().collect();
            if set.is_empty() {
                return Err(HypergraphError::EmptyEdge(i));
            }
            for &v in &set {
                *covered.get_mut(v).ok_or(HypergraphError::VertexOutOfRange { edge: i, vertex: v, count: vertex_count })? =
                    true;
            }
            clean.push(set.into_iter().collect());
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(HypergraphError::IsolatedVertex(v));
        }
        Ok(Hypergraph { vertex_count, edges: clean })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// `|E| × |V|` incidence matrix.
    pub fn incidence(&self) -> RMatrix {
        let mut m = RMatrix::zeros(self.edges.len(), self.vertex_count);
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                m[(i, v)] = Rational::one();
            }
        }
        m
    }

    fn edge_sums(&self, pi: &[Rational]) -> Vec<Rational> {
        self.edges.iter().map(|e| e.iter().map(|&v| pi[v].clone()).sum()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({ "vertices": self.vertex_count, "edges": self.edges })
    }

    pub fn from_json(v: &Value) -> Result<Self, HypergraphError> {
        let n = js::usize_field(v, "vertices", "$")?;
        let edges = v.get("edges").and_then(Value::as_array).ok_or_else(|| JsonError::shape("array", "$.edges"))?;
        let edges = edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                e.as_array()
                    .and_then(|e| e.iter().map(|x| x.as_u64().map(|x| x as usize)).collect::<Option<Vec<_>>>())
                    .ok_or_else(|| JsonError::shape("array of vertex indices", format!("$.edges[{i}]")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Hypergraph::new(n, edges)
    }
}

/// Edge weights `y` with `c = Mᵀy ≥ 0` and `Σ_e y_e ≤ 0`, normalized by
/// `Σ_v c_v - Σ_e y_e = 1`. For normalized `π ≥ 0` this forces `Σ_v c_v π(v) = Σ_e y_e ≤ 0`,
/// so some `π(v)` with `c_v > 0` vanishes, or the system has no solution at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RejectionCertificate {
    pub edge_weights: Vec<Rational>,
    pub vertex_coefficients: Vec<Rational>,
}

impl RejectionCertificate {
    pub fn verifies(&self, g: &Hypergraph) -> bool {
        if self.edge_weights.len() != g.edges.len() || self.vertex_coefficients.len() != g.vertex_count {
            return false;
        }
        let mut c = vec![Rational::zero(); g.vertex_count];
        for (e, y) in g.edges.iter().zip(&self.edge_weights) {
            for &v in e {
                c[v] += y;
            }
        }
        let total: Rational = self.edge_weights.iter().sum();
        c == self.vertex_coefficients
            && c.iter().all(|x| !x.is_negative())
            && !total.is_positive()
            && c.iter().sum::<Rational>() - total == Rational::one()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "edge_weights": js::vec_to_json(&self.edge_weights),
            "vertex_coefficients": js::vec_to_json(&self.vertex_coefficients),
        })
    }
}

/// A hypergraph together with a strictly positive normalized assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbabilityHypergraph {
    graph: Hypergraph,
    witness: Vec<Rational>,
}

impl ProbabilityHypergraph {
    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn witness(&self) -> &[Rational] {
        &self.witness
    }
}

fn rejection_certificate(g: &Hypergraph) -> RejectionCertificate {
    let (ne, nv) = (g.edges.len(), g.vertex_count);
    // Variables: y (free, ne), c (nv), t (1). Rows: c_v - Σ_{e∋v} y_e = 0; Σ y + t = 0; Σ c + t = 1.
    let n = ne + nv + 1;
    let mut a = RMatrix::zeros(nv + 2, n);
    for (i, e) in g.edges.iter().enumerate() {
        for &v in e {
            a[(v, i)] = -Rational::one();
        }
        a[(nv, i)] = Rational::one();
    }
    for v in 0..nv {
        a[(v, ne + v)] = Rational::one();
        a[(nv + 1, ne + v)] = Rational::one();
    }
    a[(nv, n - 1)] = Rational::one();
    a[(nv + 1, n - 1)] = Rational::one();
    let mut b = vec![Rational::zero(); nv + 1];
    b.push(Rational::one());
    let mut bounds = vec![VarBound::Free; ne];
    bounds.extend(vec![VarBound::NonNegative; nv + 1]);
    let lp = LpProblem::feasibility(a, b, bounds).expect("consistent sizes");
    let point = lp_solve(&lp).point().expect("alternative system is feasible when the primal fails").to_vec();
    RejectionCertificate { edge_weights: point[..ne].to_vec(), vertex_coefficients: point[ne..ne + nv].to_vec() }
}

/// Maximizes `ε` subject to `Σ_{v∈e} π(v) = 1` and `π(v) ≥ ε`. Accepts with the optimal `π`
/// when `ε > 0`; otherwise returns a certificate of the alternative system.
pub fn validate(g: &Hypergraph) -> Result<ProbabilityHypergraph, HypergraphError> {
    let (ne, nv) = (g.edges.len(), g.vertex_count);
    // Variables: π (nv), ε (1), s (nv). Rows: π_v - ε - s_v = 0; Σ_{v∈e} π_v = 1.
    let n = 2 * nv + 1;
    let mut a = RMatrix::zeros(nv + ne, n);
    for v in 0..nv {
        a[(v, v)] = Rational::one();
        a[(v, nv)] = -Rational::one();
        a[(v, nv + 1 + v)] = -Rational::one();
    }
    for (i, e) in g.edges.iter().enumerate() {
        for &v in e {
            a[(nv + i, v)] = Rational::one();
        }
    }
    let mut b = vec![Rational::zero(); nv];
    b.extend(vec![Rational::one(); ne]);
    let mut c = vec![Rational::zero(); n];
    c[nv] = Rational::one();
    let lp = LpProblem::new(c, a, b, vec![VarBound::NonNegative; n]).expect("consistent sizes");
    match lp_solve(&lp) {
        LpOutcome::Optimal { value, point } if value.is_positive() => {
            Ok(ProbabilityHypergraph { graph: g.clone(), witness: point[..nv].to_vec() })
        }
        _ => Err(HypergraphError::NotProbability(rejection_certificate(g))),
    }
}

/// Coordinates `(π_*, π_1, …, π_g)` on the normalized assignments of a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphChart {
    base: Vec<Rational>,
    basis: Vec<Vec<Rational>>,
}

impl HypergraphChart {
    /// Checks that the base point is normalized and strictly positive, and that the basis
    /// is a linearly independent spanning set of the zero-sum space.
    pub fn new(g: &Hypergraph, base: Vec<Rational>, basis: Vec<Vec<Rational>>) -> Result<Self, HypergraphError> {
        let bad = |s: &str| Err(HypergraphError::InvalidChart(s.into()));
        let nv = g.vertex_count;
        if base.len() != nv || basis.iter().any(|b| b.len() != nv) {
            return bad("assignment length differs from the vertex count");
        }
        if g.edge_sums(&base).iter().any(|s| !s.is_one()) {
            return bad("base point is not normalized on every edge");
        }
        if base.iter().any(|x| !x.is_positive()) {
            return bad("base point is not strictly positive");
        }
        if basis.iter().any(|b| g.edge_sums(b).iter().any(|s| !s.is_zero())) {
            return bad("a basis element does not sum to zero on every edge");
        }
        let dim = nv - g.incidence().rank();
        if basis.len() != dim || (dim > 0 && RMatrix::from_rows(&basis).expect("rectangular").rank() != dim) {
            return bad("basis does not span the zero-sum space");
        }
        Ok(HypergraphChart { base, basis })
    }

    pub fn base(&self) -> &[Rational] {
        &self.base
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `π_* + Σ a_x π_x`.
    pub fn point(&self, a: &[Rational]) -> Vec<Rational> {
        (0..self.base.len())
            .map(|v| &self.base[v] + self.basis.iter().zip(a).map(|(b, ax)| &b[v] * ax).sum::<Rational>())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({ "base": js::vec_to_json(&self.base), "basis": js::vecs_to_json(&self.basis) })
    }

    pub fn from_json(g: &Hypergraph, v: &Value) -> Result<Self, HypergraphError> {
        let base = js::vec_from_json(&v["base"], "$.base")?;
        let basis = js::vecs_from_json(&v["basis"], "$.basis")?;
        Self::new(g, base, basis)
    }
}

/// Chart with the validation witness as base point and the null space of the incidence
/// matrix in reduced row echelon form (unit pivots) as basis.
pub fn pi0_basis(g: &ProbabilityHypergraph) -> HypergraphChart {
    let null = crate::linalg::rat_nullspace(&g.graph.incidence());
    let basis = if null.is_empty() {
        Vec::new()
    } else {
        let (r, pivots) = RMatrix::from_rows(&null).expect("rectangular").rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    };
    HypergraphChart::new(&g.graph, g.witness.clone(), basis).expect("null space basis is a valid chart")
}

/// Two 3-outcome POVMs sharing their first effect: edges `{0,1,2}` and `{0,3,4}`.
pub fn pyramid_hypergraph() -> Hypergraph {
    Hypergraph::new(5, vec![vec![0, 1, 2], vec![0, 3, 4]]).expect("valid")
}

/// `π_* = 1/3`, `π_1 = (1,0,-1,0,-1)`, `π_2 = (0,1,-1,0,0)`, `π_3 = (0,0,0,1,-1)`.
pub fn pyramid_chart() -> HypergraphChart {
    let r = |xs: [i64; 5]| xs.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>();
    HypergraphChart::new(
        &pyramid_hypergraph(),
        vec![rat(1, 3); 5],
        vec![r([1, 0, -1, 0, -1]), r([0, 1, -1, 0, 0]), r([0, 0, 0, 1, -1])],
    )
    .expect("valid preset")
}

/// Facets `h_v = -π_x(v)/π_*(v)` from `π_*(v) + Σ a_x π_x(v) ≥ 0`; zero rows and repeated
/// normals are dropped, the rest kept in vertex order.
pub fn polytope_of(g: &Hypergraph, chart: &HypergraphChart) -> Result<Polytope, HypergraphError> {
    if chart.base.len() != g.vertex_count {
        return Err(HypergraphError::InvalidChart("chart belongs to a different hypergraph".into()));
    }
    if chart.dim() == 0 {
        return Err(HypergraphError::InvalidChart("zero-dimensional assignment space".into()));
    }
    let mut facets: Vec<Vec<Rational>> = Vec::new();
    for v in 0..g.vertex_count {
        let h: Vec<Rational> = chart.basis.iter().map(|b| -&b[v] / &chart.base[v]).collect();
        if h.iter().any(|x| !x.is_zero()) && !facets.contains(&h) {
            facets.push(h);
        }
    }
    Ok(Polytope::from_facets(facets)?.with_label("hypergraph"))
}

/// Every operator is PSD and every hyperedge sums to the identity.
pub fn g_operators_check<S: Scalar>(g: &Hypergraph, assignment: &[HermMatrix<S>]) -> Result<bool, HypergraphError> {
    if assignment.len() != g.vertex_count {
        return Err(HypergraphError::WrongCount { expected: g.vertex_count, found: assignment.len() });
    }
    let d = assignment[0].dim();
    if let Some(bad) = assignment.iter().find(|a| a.dim() != d) {
        return Err(TupleError::DimensionMismatch { expected: d, found: bad.dim() }.into());
    }
    let id = HermMatrix::identity(d);
    Ok(assignment.iter().all(is_psd)
        && g.edges.iter().all(|e| matrices_agree(&HermMatrix::sum(d, e.iter().map(|&v| &assignment[v])), &id)))
}

/// `A_v = π_*(v) I + Σ_x π_x(v) B_x`.
pub fn g_operators_from_tuple<S: Scalar>(chart: &HypergraphChart, b: &HermTuple<S>) -> Result<Vec<HermMatrix<S>>, HypergraphError> {
    if b.g() != chart.dim() {
        return Err(TupleError::DimensionMismatch { expected: chart.dim(), found: b.g() }.into());
    }
    let d = b.d();
    let refs: Vec<&HermMatrix<S>> = b.elements().iter().collect();
    Ok((0..chart.base.len())
        .map(|v| {
            let coeffs: Vec<Rational> = chart.basis.iter().map(|p| p[v].clone()).collect();
            &HermMatrix::scalar(d, &chart.base[v]) + &HermMatrix::lin_comb(d, &coeffs, &refs)
        })
        .collect())
}

/// Solves `A_v - π_*(v) I = Σ_x π_x(v) B_x` for `B` and checks that the solution
/// reproduces every `A_v`.
pub fn tuple_from_g_operators<S: Scalar>(
    chart: &HypergraphChart,
    assignment: &[HermMatrix<S>],
) -> Result<HermTuple<S>, HypergraphError> {
    let nv = chart.base.len();
    if assignment.len() != nv {
        return Err(HypergraphError::WrongCount { expected: nv, found: assignment.len() });
    }
    let d = assignment[0].dim();
    let centered: Vec<HermMatrix<S>> =
        assignment.iter().zip(&chart.base).map(|(a, p)| a - &HermMatrix::scalar(d, p)).collect();
    let refs: Vec<&HermMatrix<S>> = centered.iter().collect();
    // B = (Πᵀ Π)⁻¹ Πᵀ (A - π_* I) with Π the |V| × g matrix of basis values.
    let pi = RMatrix::from_columns(&chart.basis).expect("rectangular");
    let gram_inv = (&pi.transpose() * &pi).inverse().expect("independent basis");
    let left = &gram_inv * &pi.transpose();
    let b = HermTuple::new((0..chart.dim()).map(|x| HermMatrix::lin_comb(d, left.row(x), &refs)).collect())?;
    let rebuilt = g_operators_from_tuple(chart, &b)?;
    if !rebuilt.iter().zip(assignment).all(|(r, a)| matrices_agree(r, a)) {
        return Err(HypergraphError::OutsideSpan);
    }
    Ok(b)
}

/// `A_v = Σ_σ σ(v) C_σ` over the extreme points `σ` of the normalized assignments.
#[derive(Clone, Debug, PartialEq)]
pub struct GDecomposition<S> {
    pub extreme_points: Vec<Vec<Rational>>,
    pub povm: Povm<S>,
}

impl<S: Scalar> GDecomposition<S> {
    /// Checks the decomposition against `assignment`; the coefficient of `C_σ` in `A_v` is
    /// `σ(v)` whichever hyperedge `v` is read from.
    pub fn verifies(&self, g: &Hypergraph, assignment: &[HermMatrix<S>]) -> bool {
        if self.extreme_points.len() != self.povm.len() || assignment.len() != g.vertex_count {
            return false;
        }
        let normalized = self.extreme_points.iter().all(|s| {
            s.len() == g.vertex_count && s.iter().all(|x| !x.is_negative()) && g.edge_sums(s).iter().all(One::is_one)
        });
        let d = self.povm.d();
        let refs: Vec<&HermMatrix<S>> = self.povm.elements().iter().collect();
        normalized
            && Povm::new(self.povm.elements().to_vec(), self.povm.mode()).is_ok()
            && (0..g.vertex_count).all(|v| {
                let coeffs: Vec<Rational> = self.extreme_points.iter().map(|s| s[v].clone()).collect();
                matrices_agree(&HermMatrix::lin_comb(d, &coeffs, &refs), &assignment[v])
            })
    }
}

/// Maps a certificate on the chart polytope to extreme points `σ_i = π_* + Σ v_i(x) π_x`.
pub fn g_decomposition<S: Scalar>(
    p: &Polytope,
    chart: &HypergraphChart,
    cert: &CompatCertificate<S>,
) -> Result<GDecomposition<S>, HypergraphError> {
    if cert.polytope_hash != p.content_hash() {
        return Err(TupleError::ForeignCertificate.into());
    }
    let extreme_points = p.vertices()?.iter().map(|v| chart.point(v)).collect();
    Ok(GDecomposition { extreme_points, povm: cert.povm.clone() })
}

/// Inverse of [`g_decomposition`]: the certificate on the chart polytope whose vertices are
/// the chart coordinates of the given extreme points, in the polytope's vertex order.
pub fn certificate_from_decomposition<S: Scalar>(
    p: &Polytope,
    chart: &HypergraphChart,
    dec: &GDecomposition<S>,
) -> Result<CompatCertificate<S>, HypergraphError> {
    let vertices = p.vertices()?;
    let mut elements = Vec::with_capacity(vertices.len());
    for v in vertices {
        let sigma = chart.point(v);
        let i = dec.extreme_points.iter().position(|s| *s == sigma).ok_or(HypergraphError::OutsideSpan)?;
        elements.push(dec.povm.elements()[i].clone());
    }
    Ok(CompatCertificate {
        polytope_hash: p.content_hash(),
        povm: Povm::new_unchecked(elements, dec.povm.mode()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ExactHerm};
    use crate::polytope::contains_point;

    fn disjoint_pairs() -> Hypergraph {
        Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap()
    }

    fn third_figure() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0], vec![0, 1], vec![0, 2]]).unwrap()
    }

    #[test]
    fn witnesses_and_rejection() {
        assert_eq!(validate(&disjoint_pairs()).unwrap().witness(), vec![rat(1, 2); 4].as_slice());
        assert_eq!(validate(&pyramid_hypergraph()).unwrap().witness(), vec![rat(1, 3); 5].as_slice());
        match validate(&third_figure()) {
            Err(HypergraphError::NotProbability(cert)) => assert!(cert.verifies(&third_figure())),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn isolated_vertex_rejected() {
        assert_eq!(Hypergraph::new(3, vec![vec![0, 1]]), Err(HypergraphError::IsolatedVertex(2)));
    }

    #[test]
    fn chart_dimensions() {
        let pg = validate(&pyramid_hypergraph()).unwrap();
        assert_eq!(pi0_basis(&pg).dim(), 3);
        assert_eq!(pi0_basis(&validate(&disjoint_pairs()).unwrap()).dim(), 2);
        let edge = Hypergraph::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
        let chart = pi0_basis(&validate(&edge).unwrap());
        assert_eq!(chart.dim(), 3);
        let p = polytope_of(&edge, &chart).unwrap();
        assert_eq!(p.num_vertices(), Some(4));
    }

    #[test]
    fn disjoint_pairs_give_a_square() {
        let g = disjoint_pairs();
        let p = polytope_of(&g, &pi0_basis(&validate(&g).unwrap())).unwrap();
        assert_eq!(p.num_vertices(), Some(4));
        assert_eq!(p.num_facets(), Some(4));
    }

    #[test]
    fn pyramid_preset_polytope() {
        let p = polytope_of(&pyramid_hypergraph(), &pyramid_chart()).unwrap();
        let mut expected: Vec<Vec<Rational>> = vec![
            vec![rat(2, 3), rat(-1, 3), rat(-1, 3)],
            vec![rat(-1, 3), rat(-1, 3), rat(-1, 3)],
            vec![rat(-1, 3), rat(-1, 3), rat(2, 3)],
            vec![rat(-1, 3), rat(2, 3), rat(-1, 3)],
            vec![rat(-1, 3), rat(2, 3), rat(2, 3)],
        ];
        expected.sort();
        assert_eq!(p.vertices().unwrap(), expected.as_slice());
        assert!(contains_point(&p, &[int(0), int(0), int(0)]).unwrap().is_inside());
    }

    #[test]
    fn g_operator_round_trip() {
        let chart = pyramid_chart();
        let d = 2;
        let b = HermTuple::new(vec![
            ExactHerm::scalar(d, &rat(1, 6)),
            ExactHerm::diag(&[rat(-1, 6), rat(1, 6)]),
            ExactHerm::zeros(d),
        ])
        .unwrap();
        let a = g_operators_from_tuple(&chart, &b).unwrap();
        assert!(g_operators_check(&pyramid_hypergraph(), &a).unwrap());
        assert_eq!(tuple_from_g_operators(&chart, &a).unwrap(), b);
        let zero = g_operators_from_tuple(&chart, &HermTuple::zeros(3, d)).unwrap();
        assert!(zero.iter().all(|x| *x == ExactHerm::scalar(d, &rat(1, 3))));
    }

    #[test]
    fn g_operators_reject_negative_block() {
        let mut ops = vec![ExactHerm::scalar(1, &rat(1, 3)); 5];
        ops[1] = ExactHerm::scalar(1, &rat(-1, 3));
        ops[2] = ExactHerm::scalar(1, &rat(1, 1));
        assert!(!g_operators_check(&pyramid_hypergraph(), &ops).unwrap());
    }

    #[test]
    fn outside_span_detected() {
        let g = pyramid_hypergraph();
        let chart = pyramid_chart();
        let ops = vec![ExactHerm::scalar(1, &rat(1, 2)); 5];
        assert!(!g_operators_check(&g, &ops).unwrap());
        assert_eq!(tuple_from_g_operators(&chart, &ops), Err(HypergraphError::OutsideSpan));
    }

    #[test]
    fn json_round_trip() {
        let g = pyramid_hypergraph();
        assert_eq!(Hypergraph::from_json(&g.to_json()).unwrap(), g);
        let c = pyramid_chart();
        assert_eq!(HypergraphChart::from_json(&g, &c.to_json()).unwrap(), c);
    }
}
