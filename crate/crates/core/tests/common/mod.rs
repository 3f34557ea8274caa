//! Seeded exact generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use polycompat::linalg::{int, rat, ExactHerm, Gq, HermMatrix, Rational};
use polycompat::polytope::Polytope;
use polycompat::tuples::{ExactPovm, ExactTuple, HermTuple, Povm, PovmMode};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Plain row-major rational matrix product, independent of the library's `RMatrix`.
pub fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect()
        })
        .collect()
}

/// `[V; 1ᵀ]` from a vertex list.
pub fn vhat(vertices: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let g = vertices[0].len();
    let mut rows: Vec<Vec<Rational>> = (0..g).map(|x| vertices.iter().map(|v| v[x].clone()).collect()).collect();
    rows.push(vec![Rational::one(); vertices.len()]);
    rows
}

/// `[-H | 1]` from a facet list.
pub fn hhat(facets: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    facets
        .iter()
        .map(|h| h.iter().map(|x| -x).chain(std::iter::once(Rational::one())).collect())
        .collect()
}

pub fn diag_hat(s: &[Rational]) -> Vec<Vec<Rational>> {
    let n = s.len() + 1;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i != j { Rational::zero() } else if i < s.len() { s[i].clone() } else { Rational::one() })
                .collect()
        })
        .collect()
}

pub fn rows_of(t: &polycompat::linalg::RMatrix) -> Vec<Vec<Rational>> {
    (0..t.rows()).map(|i| t.row(i).to_vec()).collect()
}

/// Independent check of `V̂ T Ĥ = diag(s, 1)` from the polytope's vertex and facet lists.
pub fn scaling_identity_holds(p: &Polytope, t: &[Vec<Rational>], s: &[Rational]) -> bool {
    let v = vhat(p.vertices().unwrap());
    let h = hhat(p.facets().unwrap());
    t.iter().flatten().all(|x| !x.is_negative()) && matmul(&matmul(&v, t), &h) == diag_hat(s)
}

/// Largest `s` with `s·P ⊆ Q`, computed directly from vertices of `P` and facets of `Q`.
pub fn scaling_oracle(pv: &[Vec<Rational>], qf: &[Vec<Rational>]) -> Rational {
    let worst = pv
        .iter()
        .flat_map(|v| qf.iter().map(move |h| h.iter().zip(v).map(|(a, b)| a * b).sum::<Rational>()))
        .max()
        .unwrap();
    worst.recip()
}

fn small_rational(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(-4..=4), r.gen_range(1..=3))
}

/// Random Gaussian-rational `d × d` matrix `M`, returned as the PSD matrix `M M*`.
pub fn random_psd(r: &mut ChaCha8Rng, d: usize) -> ExactHerm {
    let m: Vec<Vec<Gq>> =
        (0..d).map(|_| (0..d).map(|_| Gq::new(small_rational(r), small_rational(r))).collect()).collect();
    let rows: Vec<Vec<Gq>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    (0..d).fold(Gq::default(), |acc, k| &acc + &(&m[i][k] * &m[j][k].conj()))
                })
                .collect()
        })
        .collect();
    ExactHerm::from_rows(&rows).unwrap()
}

/// Random Hermitian matrix with small Gaussian-rational entries.
pub fn random_herm(r: &mut ChaCha8Rng, d: usize) -> ExactHerm {
    let mut rows = vec![vec![Gq::default(); d]; d];
    for i in 0..d {
        rows[i][i] = Gq::real(small_rational(r));
        for j in 0..i {
            let z = Gq::new(small_rational(r), small_rational(r));
            rows[j][i] = z.conj();
            rows[i][j] = z;
        }
    }
    ExactHerm::from_rows(&rows).unwrap()
}

fn trace_re(h: &ExactHerm) -> Rational {
    h.trace().re
}

/// Random exact POVM with `k` outcomes: PSD draws scaled by `1/(tr Σ + 1)`, the last
/// outcome absorbing the deficit.
pub fn random_povm(r: &mut ChaCha8Rng, d: usize, k: usize) -> ExactPovm {
    let draws: Vec<ExactHerm> = (0..k - 1).map(|_| random_psd(r, d)).collect();
    let total = HermMatrix::sum(d, &draws);
    let c = (trace_re(&total) + Rational::one()).recip();
    let mut elements: Vec<ExactHerm> = draws.iter().map(|e| e.scale(&c)).collect();
    let rest = &ExactHerm::identity(d) - &HermMatrix::sum(d, &elements);
    elements.push(rest);
    Povm::new(elements, PovmMode::Povm).unwrap()
}

/// Upper bound `max_i Σ_j (|re| + |im|)` on the operator norm.
pub fn norm_bound(h: &ExactHerm) -> Rational {
    let d = h.dim();
    (0..d)
        .map(|i| (0..d).map(|j| { let z = h.get(i, j); z.re.abs() + z.im.abs() }).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Random tuple scaled into `P_max` using `Σ_x |h_j(x)| ‖X_x‖ ≤ 1` for every facet.
pub fn random_pmax_member(r: &mut ChaCha8Rng, p: &Polytope, d: usize) -> ExactTuple {
    let x: Vec<ExactHerm> = (0..p.dim()).map(|_| random_herm(r, d)).collect();
    let norms: Vec<Rational> = x.iter().map(norm_bound).collect();
    let worst = p
        .facets()
        .unwrap()
        .iter()
        .map(|h| h.iter().zip(&norms).map(|(a, n)| a.abs() * n).sum::<Rational>())
        .max()
        .unwrap();
    let scale = if worst.is_zero() { Rational::one() } else { worst.recip() };
    HermTuple::new(x.iter().map(|m| m.scale(&scale)).collect()).unwrap()
}

pub fn int_vec(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

/// `A_x = Σ_i v_i(x) C_i`, evaluated directly from the vertex list.
pub fn tuple_of<S: polycompat::linalg::Scalar>(p: &Polytope, c: &Povm<S>) -> HermTuple<S> {
    let vertices = p.vertices().unwrap();
    let d = c.d();
    let refs: Vec<&HermMatrix<S>> = c.elements().iter().collect();
    let elements = (0..p.dim())
        .map(|x| {
            let coeffs: Vec<Rational> = vertices.iter().map(|v| v[x].clone()).collect();
            HermMatrix::lin_comb(d, &coeffs, &refs)
        })
        .collect();
    HermTuple::new(elements).unwrap()
}

/// Random tuple in `P_min` obtained from a random POVM over the vertices.
pub fn random_pmin_member(r: &mut ChaCha8Rng, p: &Polytope, d: usize) -> (ExactTuple, ExactPovm) {
    let c = random_povm(r, d, p.num_vertices().unwrap());
    (tuple_of(p, &c), c)
}

pub fn random_fraction(r: &mut ChaCha8Rng, max_den: i64) -> Rational {
    let den = r.gen_range(1..=max_den);
    rat(r.gen_range(0..=den), den)
}
