//! Model polytopes with both representations in a fixed, documented order.

use itertools::Itertools;
use num_traits::{One, Zero};

use super::ModelError;
use crate::inclusion::ScalingCertificate;
use crate::linalg::{int, rat, RMatrix, Rational};
use crate::polytope::{cartesian_product, dot, Polytope};

pub const MAX_BIRKHOFF_N: usize = 5;
const MAX_HYPERCUBE_DIM: usize = 12;

/// Permutations of `0..n` as sequences `(π(0), …, π(n-1))` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    perms.sort();
    perms
}

/// `[-1, 1]^g`: vertices in lexicographic order over `{-1, 1}^g`, facets `e_0..e_{g-1}`
/// followed by `-e_0..-e_{g-1}`.
pub fn hypercube(g: usize) -> Result<Polytope, ModelError> {
    if g == 0 || g > MAX_HYPERCUBE_DIM {
        return Err(ModelError::ParameterOutOfRange(format!("hypercube dimension {g} not in 1..={MAX_HYPERCUBE_DIM}")));
    }
    let vertices: Vec<Vec<Rational>> =
        (0..g).map(|_| [int(-1), int(1)]).multi_cartesian_product().collect();
    let unit = |i: usize, sign: i64| (0..g).map(|x| if x == i { int(sign) } else { Rational::zero() }).collect();
    let facets = (0..g).map(|i| unit(i, 1)).chain((0..g).map(|i| unit(i, -1))).collect();
    Ok(Polytope::with_both(vertices, facets, format!("hypercube({g})"))?)
}

/// The simplex `P_k ⊂ R^{k-1}`: vertices `-1/k·1 + e_j` for `j < k-1`, then `-1/k·1`;
/// facets `-k e_j` for `j < k-1`, then `k·1`.
pub fn simplex_pk(k: usize) -> Result<Polytope, ModelError> {
    if k < 2 {
        return Err(ModelError::ParameterOutOfRange(format!("simplex needs k >= 2, got {k}")));
    }
    let g = k - 1;
    let kk = int(k as i64);
    let base = rat(-1, k as i64);
    let mut vertices: Vec<Vec<Rational>> = (0..g)
        .map(|j| (0..g).map(|x| if x == j { &base + Rational::one() } else { base.clone() }).collect())
        .collect();
    vertices.push(vec![base; g]);
    let mut facets: Vec<Vec<Rational>> = (0..g)
        .map(|j| (0..g).map(|x| if x == j { -kk.clone() } else { Rational::zero() }).collect())
        .collect();
    facets.push(vec![kk; g]);
    Ok(Polytope::with_both(vertices, facets, format!("simplex({k})"))?)
}

/// Cartesian product `P_{k_1} × … × P_{k_n}`, first factor varying slowest.
pub fn polysimplex(ks: &[usize]) -> Result<Polytope, ModelError> {
    let (first, rest) = ks
        .split_first()
        .ok_or_else(|| ModelError::ParameterOutOfRange("polysimplex needs at least one factor".into()))?;
    let mut p = simplex_pk(*first)?;
    for &k in rest {
        p = cartesian_product(&p, &simplex_pk(k)?)?;
    }
    let label = format!("polysimplex({})", ks.iter().map(usize::to_string).join(","));
    Ok(p.with_label(label))
}

/// `(-1/3,-1/3,-1/3) + conv{0, e_1, e_2, e_3, e_2+e_3}` with vertices ordered
/// `e_1, 0, e_3, e_2, e_2+e_3` (after the shift) and facets `-3e_1, -3e_2, -3e_3,
/// 3(e_1+e_2), 3(e_1+e_3)`.
pub fn pyramid() -> Result<Polytope, ModelError> {
    let third = |x: i64| rat(x, 3);
    let vertices = vec![
        vec![third(2), third(-1), third(-1)],
        vec![third(-1), third(-1), third(-1)],
        vec![third(-1), third(-1), third(2)],
        vec![third(-1), third(2), third(-1)],
        vec![third(-1), third(2), third(2)],
    ];
    let row = |a: i64, b: i64, c: i64| vec![int(a), int(b), int(c)];
    let facets = vec![row(-3, 0, 0), row(0, -3, 0), row(0, 0, -3), row(3, 3, 0), row(3, 0, 3)];
    Ok(Polytope::with_both(vertices, facets, "pyramid")?)
}

/// Scaling certificate for the pyramid at `s = (2/5, 2/5, 2/5)`.
pub fn pyramid_t() -> Result<ScalingCertificate, ModelError> {
    let p = pyramid()?;
    let rows: [[i64; 5]; 5] =
        [[6, 1, 1, 1, 1], [1, 0, 0, 2, 2], [1, 0, 2, 2, 0], [1, 2, 0, 0, 2], [1, 2, 2, 0, 0]];
    let t = RMatrix::from_rows(&rows.iter().map(|r| r.iter().map(|&x| rat(x, 30)).collect()).collect::<Vec<_>>())
        .expect("rectangular");
    Ok(ScalingCertificate::new(&p, vec![rat(2, 5); 3], t)?)
}

fn check_birkhoff_n(n: usize) -> Result<(), ModelError> {
    if !(2..=MAX_BIRKHOFF_N).contains(&n) {
        return Err(ModelError::ParameterOutOfRange(format!("Birkhoff body needs 2 <= N <= {MAX_BIRKHOFF_N}, got {n}")));
    }
    Ok(())
}

/// The Birkhoff body `B_N ⊂ R^{(N-1)^2}`.
///
/// Vertices are `P_π^{(N-1)} - J/N` flattened row-major, permutations in lexicographic
/// order. Facets are indexed by `(i, j) ∈ [N]^2` row-major: `-N e_{ij}` inside the
/// truncation, `N` on row `i` when `j = N-1`, `N` on column `j` when `i = N-1`, and `-N·1`
/// at the corner. For `N = 2` repeated normals are dropped, leaving two facets.
pub fn birkhoff_body(n: usize) -> Result<Polytope, ModelError> {
    check_birkhoff_n(n)?;
    let m = n - 1;
    let nn = int(n as i64);
    let inv = rat(1, n as i64);
    let vertices: Vec<Vec<Rational>> = permutations(n)
        .iter()
        .map(|pi| {
            (0..m * m)
                .map(|c| {
                    let (x, y) = (c / m, c % m);
                    if pi[x] == y { Rational::one() - &inv } else { -inv.clone() }
                })
                .collect()
        })
        .collect();
    let mut facets: Vec<Vec<Rational>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let h: Vec<Rational> = (0..m * m)
                .map(|c| {
                    let (x, y) = (c / m, c % m);
                    let hit = match (i == m, j == m) {
                        (false, false) => x == i && y == j,
                        (false, true) => x == i,
                        (true, false) => y == j,
                        (true, true) => true,
                    };
                    let sign = if (i == m) == (j == m) { -nn.clone() } else { nn.clone() };
                    if hit { sign } else { Rational::zero() }
                })
                .collect();
            if !facets.contains(&h) {
                facets.push(h);
            }
        }
    }
    Ok(Polytope::with_both(vertices, facets, format!("birkhoff({n})"))?)
}

/// `T_{π,j} ∝ [⟨h_j, v_π⟩ ≠ 1]` with flat `s = 1/(N-1)`, verified exactly.
///
/// Each row has the same number `c` of nonzero entries (`c = N` for `N ≥ 3`, `c = 1` for
/// `N = 2`) and the entries are `1/(N!·c)`.
pub fn birkhoff_t(n: usize) -> Result<ScalingCertificate, ModelError> {
    let p = birkhoff_body(n)?;
    let vertices = p.vertices()?;
    let facets = p.facets()?;
    let support: Vec<Vec<bool>> =
        vertices.iter().map(|v| facets.iter().map(|h| dot(h, v) != Rational::one()).collect()).collect();
    let counts: Vec<usize> = support.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
    let c = counts[0];
    if counts.iter().any(|&x| x != c) {
        return Err(ModelError::ParameterOutOfRange("irregular Birkhoff slack pattern".into()));
    }
    let entry = Rational::one() / Rational::from_integer(((1..=n).product::<usize>() * c).into());
    let mut t = RMatrix::zeros(vertices.len(), facets.len());
    for (i, row) in support.iter().enumerate() {
        for (j, &on) in row.iter().enumerate() {
            if on {
                t[(i, j)] = entry.clone();
            }
        }
    }
    let s = vec![rat(1, n as i64 - 1); p.dim()];
    Ok(ScalingCertificate::new(&p, s, t)?)
}
