//! Rational polytopes containing 0 in their interior, stored by vertices and/or by facet
//! normals `h` describing the half-spaces `⟨h, x⟩ ≤ 1`.

mod enumerate;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::linalg::json::{self, JsonError};
use crate::linalg::{lp_solve, rat_nullspace, LpOutcome, LpProblem, RMatrix, Rational, VarBound};

pub use enumerate::{MAX_ENUM_DIM, MAX_ENUM_HALFSPACES};

/// Number of `g`-subsets above which constructors skip computing the missing representation.
const AUTO_COMPLETE_BUDGET: u64 = 50_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolytopeError {
    #[error("empty input")]
    Empty,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("0 is not in the interior; separating functional {separating:?}")]
    NotInterior { separating: Vec<Rational> },
    #[error("intersection of half-spaces is unbounded along coordinate {coordinate}")]
    Unbounded { coordinate: usize },
    #[error("enumeration limits exceeded: g = {g}, half-spaces = {halfspaces} (limits g <= {MAX_ENUM_DIM}, half-spaces <= {MAX_ENUM_HALFSPACES})")]
    ScaleLimit { g: usize, halfspaces: usize },
    #[error("polytope lacks its {0} representation")]
    MissingRepresentation(&'static str),
    #[error("inconsistent representations: {0}")]
    Inconsistent(String),
    #[error("scaling is unbounded")]
    UnboundedScaling,
    #[error(transparent)]
    Json(#[from] JsonError),
}

/// `vhat = [V; 1ᵀ]` of size `(g+1) x k` and `hhat = [-H 1]` of size `r x (g+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedMatrices {
    pub vhat: RMatrix,
    pub hhat: RMatrix,
}

impl ExtendedMatrices {
    /// Slack matrix `hhat · vhat` with entries `1 - ⟨h_j, v_i⟩`.
    pub fn slack(&self) -> RMatrix {
        &self.hhat * &self.vhat
    }
}

/// Result of a point membership test.
#[derive(Clone, Debug, PartialEq)]
pub enum Containment {
    Inside,
    Outside { facet: usize, value: Rational },
}

impl Containment {
    pub fn is_inside(&self) -> bool {
        matches!(self, Containment::Inside)
    }
}

#[derive(Clone, Debug)]
pub struct Polytope {
    g: usize,
    vertices: Option<Vec<Vec<Rational>>>,
    facets: Option<Vec<Vec<Rational>>>,
    label: String,
    extended: OnceLock<ExtendedMatrices>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g && self.vertices == other.vertices && self.facets == other.facets
    }
}

fn check_dims(points: &[Vec<Rational>]) -> Result<usize, PolytopeError> {
    let g = points.first().ok_or(PolytopeError::Empty)?.len();
    if g == 0 {
        return Err(PolytopeError::Empty);
    }
    for p in points {
        if p.len() != g {
            return Err(PolytopeError::DimensionMismatch { expected: g, found: p.len() });
        }
    }
    Ok(g)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

impl Polytope {
    /// Convex hull of `points`. Redundant points are dropped by exact LP and the
    /// remaining vertices are sorted lexicographically.
    pub fn from_vertices(points: Vec<Vec<Rational>>) -> Result<Self, PolytopeError> {
        let g = check_dims(&points)?;
        let mut uniq: Vec<Vec<Rational>> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut i = 0;
        while i < uniq.len() {
            let others: Vec<&Vec<Rational>> =
                uniq.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p).collect();
            if !others.is_empty() && convex_weights(&others, &uniq[i]).is_some() {
                uniq.remove(i);
            } else {
                i += 1;
            }
        }
        if let Some(h) = separating_functional(g, &uniq) {
            return Err(PolytopeError::NotInterior { separating: h });
        }
        let facets = if binomial(uniq.len(), g) <= AUTO_COMPLETE_BUDGET && g <= MAX_ENUM_DIM {
            Some(enumerate::vertices_of_halfspaces(g, &uniq))
        } else {
            None
        };
        Ok(Polytope { g, vertices: Some(uniq), facets, label: String::new(), extended: OnceLock::new() })
    }

    /// Intersection of the half-spaces `⟨h, x⟩ ≤ 1`, facets kept in the given order.
    pub fn from_facets(normals: Vec<Vec<Rational>>) -> Result<Self, PolytopeError> {
        let g = check_dims(&normals)?;
        check_bounded(g, &normals)?;
        let vertices = if binomial(normals.len(), g) <= AUTO_COMPLETE_BUDGET && g <= MAX_ENUM_DIM {
            Some(enumerate::vertices_of_halfspaces(g, &normals))
        } else {
            None
        };
        Ok(Polytope { g, vertices, facets: Some(normals), label: String::new(), extended: OnceLock::new() })
    }

    /// Both representations in a caller-fixed order. Checks that the slack matrix is
    /// nonnegative, that every listed vertex is a vertex of the facet description, and
    /// that every listed facet is supported by affinely spanning vertices.
    pub fn with_both(
        vertices: Vec<Vec<Rational>>,
        facets: Vec<Vec<Rational>>,
        label: impl Into<String>,
    ) -> Result<Self, PolytopeError> {
        let g = check_dims(&vertices)?;
        let gf = check_dims(&facets)?;
        if gf != g {
            return Err(PolytopeError::DimensionMismatch { expected: g, found: gf });
        }
        for (i, v) in vertices.iter().enumerate() {
            let tight: Vec<Vec<Rational>> = facets
                .iter()
                .filter_map(|h| {
                    let s = dot(h, v);
                    (s == Rational::one()).then(|| h.clone()).or_else(|| (s > Rational::one()).then(Vec::new))
                })
                .collect();
            if tight.iter().any(Vec::is_empty) {
                return Err(PolytopeError::Inconsistent(format!("vertex {i} violates a facet")));
            }
            if tight.len() < g || RMatrix::from_rows(&tight).map(|m| m.rank()).unwrap_or(0) < g {
                return Err(PolytopeError::Inconsistent(format!("vertex {i} saturates fewer than g independent facets")));
            }
        }
        for (j, h) in facets.iter().enumerate() {
            let on: Vec<Vec<Rational>> = vertices
                .iter()
                .filter(|v| dot(h, v) == Rational::one())
                .map(|v| v.iter().cloned().chain(std::iter::once(Rational::one())).collect())
                .collect();
            if on.len() < g || RMatrix::from_rows(&on).map(|m| m.rank()).unwrap_or(0) < g {
                return Err(PolytopeError::Inconsistent(format!("facet {j} is not supported by g affinely independent vertices")));
            }
        }
        Ok(Polytope {
            g,
            vertices: Some(vertices),
            facets: Some(facets),
            label: label.into(),
            extended: OnceLock::new(),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.g
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn vertices(&self) -> Result<&[Vec<Rational>], PolytopeError> {
        self.vertices.as_deref().ok_or(PolytopeError::MissingRepresentation("vertex"))
    }

    pub fn facets(&self) -> Result<&[Vec<Rational>], PolytopeError> {
        self.facets.as_deref().ok_or(PolytopeError::MissingRepresentation("facet"))
    }

    pub fn has_vertices(&self) -> bool {
        self.vertices.is_some()
    }

    pub fn has_facets(&self) -> bool {
        self.facets.is_some()
    }

    pub fn num_vertices(&self) -> Option<usize> {
        self.vertices.as_ref().map(Vec::len)
    }

    pub fn num_facets(&self) -> Option<usize> {
        self.facets.as_ref().map(Vec::len)
    }

    /// Fills in any missing representation by enumeration (subject to the scale limits).
    pub fn complete(&self) -> Result<Polytope, PolytopeError> {
        let vertices = match &self.vertices {
            Some(v) => v.clone(),
            None => enumerate_vertices(self)?,
        };
        let facets = match &self.facets {
            Some(f) => f.clone(),
            None => enumerate_facets(self)?,
        };
        Ok(Polytope {
            g: self.g,
            vertices: Some(vertices),
            facets: Some(facets),
            label: self.label.clone(),
            extended: OnceLock::new(),
        })
    }

    pub fn extended(&self) -> Result<&ExtendedMatrices, PolytopeError> {
        if let Some(e) = self.extended.get() {
            return Ok(e);
        }
        let vertices = self.vertices()?;
        let facets = self.facets()?;
        let (g, k, r) = (self.g, vertices.len(), facets.len());
        let mut vhat = RMatrix::zeros(g + 1, k);
        for (i, v) in vertices.iter().enumerate() {
            for x in 0..g {
                vhat[(x, i)] = v[x].clone();
            }
            vhat[(g, i)] = Rational::one();
        }
        let mut hhat = RMatrix::zeros(r, g + 1);
        for (j, h) in facets.iter().enumerate() {
            for x in 0..g {
                hhat[(j, x)] = -h[x].clone();
            }
            hhat[(j, g)] = Rational::one();
        }
        Ok(self.extended.get_or_init(|| ExtendedMatrices { vhat, hhat }))
    }

    /// Point reflection `-P`.
    pub fn negate(&self) -> Polytope {
        let neg = |vs: &Vec<Vec<Rational>>| vs.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        Polytope {
            g: self.g,
            vertices: self.vertices.as_ref().map(neg),
            facets: self.facets.as_ref().map(neg),
            label: format!("-{}", self.label),
            extended: OnceLock::new(),
        }
    }

    /// Serialization of the representations only, used for content hashing.
    fn canonical_json(&self) -> Value {
        serde_json::json!({
            "g": self.g,
            "vertices": self.vertices.as_deref().map(json::vecs_to_json),
            "facets": self.facets.as_deref().map(json::vecs_to_json),
        })
    }

    /// SHA-256 over the canonical JSON of dimension, vertex list and facet list.
    pub fn content_hash(&self) -> String {
        json::json_digest(&self.canonical_json())
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.canonical_json();
        v["label"] = Value::String(self.label.clone());
        v
    }

    pub fn from_json(v: &Value) -> Result<Self, PolytopeError> {
        let g = json::usize_field(v, "g", "$")?;
        let read = |key: &str| -> Result<Option<Vec<Vec<Rational>>>, JsonError> {
            match v.get(key) {
                None | Some(Value::Null) => Ok(None),
                Some(x) => json::vecs_from_json(x, &format!("$.{key}")).map(Some),
            }
        };
        let label = v.get("label").and_then(Value::as_str).unwrap_or("").to_string();
        let p = match (read("vertices")?, read("facets")?) {
            (Some(vs), Some(fs)) => Polytope::with_both(vs, fs, label)?,
            (Some(vs), None) => Polytope::from_vertices(vs)?.with_label(label),
            (None, Some(fs)) => Polytope::from_facets(fs)?.with_label(label),
            (None, None) => return Err(PolytopeError::Empty),
        };
        if p.g != g {
            return Err(PolytopeError::DimensionMismatch { expected: g, found: p.g });
        }
        Ok(p)
    }
}

/// Convex weights `λ ≥ 0`, `Σ λ = 1`, `Σ λ_i p_i = target`, if they exist.
pub fn convex_weights(points: &[&Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let g = target.len();
    let k = points.len();
    let mut a = RMatrix::zeros(g + 1, k);
    for (i, p) in points.iter().enumerate() {
        for x in 0..g {
            a[(x, i)] = p[x].clone();
        }
        a[(g, i)] = Rational::one();
    }
    let mut b = target.to_vec();
    b.push(Rational::one());
    let lp = LpProblem::feasibility(a, b, vec![VarBound::NonNegative; k]).expect("consistent sizes");
    lp_solve(&lp).point().map(<[Rational]>::to_vec)
}

/// A nonzero `h` with `⟨h, v⟩ ≤ 0` for all points, or `None` when 0 is interior.
fn separating_functional(g: usize, points: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let m = RMatrix::from_rows(points).expect("common dimension");
    if let Some(h) = rat_nullspace(&m).into_iter().next() {
        return Some(h);
    }
    // Variables: h (free, g), slack (k): ⟨h, v_i⟩ + s_i = 0, Σ_i ⟨h, v_i⟩ = -1.
    let k = points.len();
    let mut a = RMatrix::zeros(k + 1, g + k);
    for (i, p) in points.iter().enumerate() {
        for x in 0..g {
            a[(i, x)] = p[x].clone();
            a[(k, x)] = &a[(k, x)] + &p[x];
        }
        a[(i, g + i)] = Rational::one();
    }
    let mut b = vec![Rational::zero(); k];
    b.push(-Rational::one());
    let mut bounds = vec![VarBound::Free; g];
    bounds.extend(vec![VarBound::NonNegative; k]);
    let lp = LpProblem::feasibility(a, b, bounds).expect("consistent sizes");
    lp_solve(&lp).point().map(|x| x[..g].to_vec())
}

fn check_bounded(g: usize, normals: &[Vec<Rational>]) -> Result<(), PolytopeError> {
    // Variables: x (free, g), slack (r): ⟨h_j, x⟩ + s_j = 1.
    let r = normals.len();
    let mut a = RMatrix::zeros(r, g + r);
    for (j, h) in normals.iter().enumerate() {
        for x in 0..g {
            a[(j, x)] = h[x].clone();
        }
        a[(j, g + j)] = Rational::one();
    }
    let mut bounds = vec![VarBound::Free; g];
    bounds.extend(vec![VarBound::NonNegative; r]);
    for coordinate in 0..g {
        for sign in [1, -1] {
            let mut c = vec![Rational::zero(); g + r];
            c[coordinate] = Rational::from_integer(sign.into());
            let lp = LpProblem::new(c, a.clone(), vec![Rational::one(); r], bounds.clone())
                .expect("consistent sizes");
            if lp_solve(&lp) == LpOutcome::Unbounded {
                return Err(PolytopeError::Unbounded { coordinate });
            }
        }
    }
    Ok(())
}

/// Vertices of an H-represented polytope by brute force over `g`-subsets of facets.
pub fn enumerate_vertices(p: &Polytope) -> Result<Vec<Vec<Rational>>, PolytopeError> {
    let facets = p.facets()?;
    enumerate::check_limits(p.g, facets.len())?;
    Ok(enumerate::vertices_of_halfspaces(p.g, facets))
}

/// Facets of a V-represented polytope as the vertices of its polar.
pub fn enumerate_facets(p: &Polytope) -> Result<Vec<Vec<Rational>>, PolytopeError> {
    let vertices = p.vertices()?;
    enumerate::check_limits(p.g, vertices.len())?;
    Ok(enumerate::vertices_of_halfspaces(p.g, vertices))
}

/// Polar dual: vertices and facets swap roles.
pub fn polar(p: &Polytope) -> Polytope {
    Polytope {
        g: p.g,
        vertices: p.facets.clone(),
        facets: p.vertices.clone(),
        label: format!("polar({})", p.label),
        extended: OnceLock::new(),
    }
}

fn pad(v: &[Rational], before: usize, after: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); before];
    out.extend(v.iter().cloned());
    out.extend(vec![Rational::zero(); after]);
    out
}

/// `P1 × P2`: vertex pairs (first factor varying slowest) and padded facet union.
pub fn cartesian_product(p1: &Polytope, p2: &Polytope) -> Result<Polytope, PolytopeError> {
    let (a, b) = (p1.complete()?, p2.complete()?);
    let (g1, g2) = (a.g, b.g);
    let mut vertices = Vec::new();
    for v in a.vertices()? {
        for w in b.vertices()? {
            vertices.push(v.iter().chain(w).cloned().collect());
        }
    }
    let facets = a
        .facets()?
        .iter()
        .map(|h| pad(h, 0, g2))
        .chain(b.facets()?.iter().map(|h| pad(h, g1, 0)))
        .collect();
    Ok(Polytope {
        g: g1 + g2,
        vertices: Some(vertices),
        facets: Some(facets),
        label: format!("{} x {}", a.label, b.label),
        extended: OnceLock::new(),
    })
}

/// `P1 ⊕ P2 = (P1° × P2°)°`: padded vertex union and all facet pairs.
pub fn direct_sum(p1: &Polytope, p2: &Polytope) -> Result<Polytope, PolytopeError> {
    let prod = cartesian_product(&polar(&p1.complete()?), &polar(&p2.complete()?))?;
    Ok(polar(&prod).with_label(format!("{} (+) {}", p1.label, p2.label)))
}

/// Exact facet test `⟨h_j, x⟩ ≤ 1`, reporting the first violated facet.
pub fn contains_point(p: &Polytope, x: &[Rational]) -> Result<Containment, PolytopeError> {
    if x.len() != p.g {
        return Err(PolytopeError::DimensionMismatch { expected: p.g, found: x.len() });
    }
    let owned;
    let facets = match p.facets() {
        Ok(f) => f,
        Err(_) => {
            owned = enumerate_facets(p)?;
            &owned
        }
    };
    for (facet, h) in facets.iter().enumerate() {
        let value = dot(h, x);
        if value > Rational::one() {
            return Ok(Containment::Outside { facet, value });
        }
    }
    Ok(Containment::Inside)
}

/// Largest `s ≥ 0` with `s·P ⊆ Q`.
pub fn scaling_into(p: &Polytope, q: &Polytope) -> Result<Rational, PolytopeError> {
    if p.g != q.g {
        return Err(PolytopeError::DimensionMismatch { expected: p.g, found: q.g });
    }
    let pv = match p.vertices() {
        Ok(v) => v.to_vec(),
        Err(_) => enumerate_vertices(p)?,
    };
    let qf = match q.facets() {
        Ok(f) => f.to_vec(),
        Err(_) => enumerate_facets(q)?,
    };
    let mut worst = Rational::zero();
    for v in &pv {
        for h in &qf {
            let s = dot(h, v);
            if s > worst {
                worst = s;
            }
        }
    }
    if worst.is_zero() {
        return Err(PolytopeError::UnboundedScaling);
    }
    Ok(worst.recip())
}

/// Largest `s` with `s·(-P) ⊆ P`.
pub fn symmetrization_constant(p: &Polytope) -> Result<Rational, PolytopeError> {
    scaling_into(&p.negate(), p)
}

/// Probability vector `π` over the vertices with `Σ π_i v_i = 0`, maximizing `min π_i`.
pub fn barycentric_resolution(p: &Polytope) -> Result<Vec<Rational>, PolytopeError> {
    let vertices = p.vertices()?;
    let (g, k) = (p.g, vertices.len());
    // Variables: π (k), t (free), s (k): π_i - t - s_i = 0; Σ π_i v_i = 0; Σ π_i = 1.
    let n = 2 * k + 1;
    let mut a = RMatrix::zeros(k + g + 1, n);
    for i in 0..k {
        a[(i, i)] = Rational::one();
        a[(i, k)] = -Rational::one();
        a[(i, k + 1 + i)] = -Rational::one();
        for x in 0..g {
            a[(k + x, i)] = vertices[i][x].clone();
        }
        a[(k + g, i)] = Rational::one();
    }
    let mut b = vec![Rational::zero(); k + g];
    b.push(Rational::one());
    let mut bounds = vec![VarBound::NonNegative; k];
    bounds.push(VarBound::Free);
    bounds.extend(vec![VarBound::NonNegative; k]);
    let mut c = vec![Rational::zero(); n];
    c[k] = Rational::one();
    let lp = LpProblem::new(c, a, b, bounds).expect("consistent sizes");
    match lp_solve(&lp) {
        LpOutcome::Optimal { point, .. } => Ok(point[..k].to_vec()),
        _ => Err(PolytopeError::NotInterior { separating: vec![Rational::zero(); g] }),
    }
}

/// True when every slack entry is nonnegative and each vertex saturates at least `g` facets.
pub fn slack_is_consistent(p: &Polytope) -> Result<bool, PolytopeError> {
    let s = p.extended()?.slack();
    let nonneg = s.entries().iter().all(|x| !x.is_negative());
    let saturated = (0..s.cols()).all(|i| (0..s.rows()).filter(|&j| s[(j, i)].is_zero()).count() >= p.g);
    Ok(nonneg && saturated)
}

#[cfg(test)]
mod tests;
