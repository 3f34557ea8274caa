//! Hermitian matrices stored as their lower triangle.

use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use super::gauss::Gq;
use super::rational::Rational;
use super::scalar::{Backend, Scalar};
use super::LinalgError;

/// Hermitian `d x d` matrix. Only the lower triangle (row-major, `j <= i`) is stored,
/// and diagonal entries have zero imaginary part, so the value is Hermitian by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct HermMatrix<S> {
    d: usize,
    lower: Vec<S>,
}

pub type ExactHerm = HermMatrix<Gq>;
pub type FloatHerm = HermMatrix<Complex64>;

#[inline]
fn tri(i: usize, j: usize) -> usize {
    i * (i + 1) / 2 + j
}

impl<S: Scalar> HermMatrix<S> {
    pub fn from_lower(d: usize, lower: Vec<S>) -> Result<Self, LinalgError> {
        if lower.len() != d * (d + 1) / 2 {
            return Err(LinalgError::DimensionMismatch {
                expected: d * (d + 1) / 2,
                found: lower.len(),
            });
        }
        for i in 0..d {
            if !lower[tri(i, i)].im_is_zero() {
                return Err(LinalgError::NotHermitian { row: i, col: i });
            }
        }
        Ok(HermMatrix { d, lower })
    }

    /// Builds from a full square grid; fails unless `a[i][j] == conj(a[j][i])` exactly.
    pub fn from_rows(rows: &[Vec<S>]) -> Result<Self, LinalgError> {
        let d = rows.len();
        let mut lower = Vec::with_capacity(d * (d + 1) / 2);
        for i in 0..d {
            if rows[i].len() != d {
                return Err(LinalgError::DimensionMismatch { expected: d, found: rows[i].len() });
            }
            for j in 0..=i {
                if rows[i][j] != rows[j][i].conj() {
                    return Err(LinalgError::NotHermitian { row: i, col: j });
                }
                lower.push(rows[i][j].clone());
            }
        }
        Self::from_lower(d, lower)
    }

    pub fn zeros(d: usize) -> Self {
        HermMatrix { d, lower: vec![S::zero(); d * (d + 1) / 2] }
    }

    pub fn identity(d: usize) -> Self {
        Self::scalar(d, &num_traits::One::one())
    }

    pub fn scalar(d: usize, r: &Rational) -> Self {
        let mut m = Self::zeros(d);
        for i in 0..d {
            m.lower[tri(i, i)] = S::from_rational(r);
        }
        m
    }

    pub fn diag(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.lower[tri(i, i)] = S::from_rational(e);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn backend(&self) -> Backend {
        S::BACKEND
    }

    pub fn lower(&self) -> &[S] {
        &self.lower
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        if j <= i {
            self.lower[tri(i, j)].clone()
        } else {
            self.lower[tri(j, i)].conj()
        }
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<S> {
        let d = self.d;
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                out.push(self.get(i, j));
            }
        }
        out
    }

    pub fn to_dense_c64(&self) -> Vec<Complex64> {
        self.to_dense().iter().map(Scalar::to_c64).collect()
    }

    pub fn to_float(&self) -> FloatHerm {
        HermMatrix { d: self.d, lower: self.lower.iter().map(Scalar::to_c64).collect() }
    }

    pub fn to_exact(&self) -> ExactHerm {
        HermMatrix { d: self.d, lower: self.lower.iter().map(Scalar::to_exact).collect() }
    }

    /// Same matrix in another backend; exact to float rounds, float to exact is bit-exact.
    pub fn cast<T: Scalar>(&self) -> HermMatrix<T> {
        HermMatrix {
            d: self.d,
            lower: self
                .lower
                .iter()
                .map(|x| {
                    let q = x.to_exact();
                    T::from_parts(&q.re, &q.im)
                })
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let c = S::from_rational(r);
        HermMatrix { d: self.d, lower: self.lower.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn trace(&self) -> S {
        (0..self.d).fold(S::zero(), |acc, i| acc + self.lower[tri(i, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.lower.iter().all(Scalar::is_zero)
    }

    /// Entrywise equality, exact for the exact backend and within `tol` for floats.
    pub fn near(&self, other: &Self, tol: f64) -> bool {
        self.d == other.d && self.lower.iter().zip(&other.lower).all(|(a, b)| a.near(b, tol))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.lower
            .iter()
            .zip(&other.lower)
            .map(|(a, b)| (a.to_c64() - b.to_c64()).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.to_dense_c64().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `Σ coeffs[i] · mats[i]`, all of dimension `d`.
    pub fn lin_comb(d: usize, coeffs: &[Rational], mats: &[&HermMatrix<S>]) -> Self {
        let mut acc = Self::zeros(d);
        for (c, m) in coeffs.iter().zip(mats) {
            if c.is_zero() {
                continue;
            }
            let cs = S::from_rational(c);
            for (a, x) in acc.lower.iter_mut().zip(&m.lower) {
                *a = a.clone() + cs.clone() * x.clone();
            }
        }
        acc
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a HermMatrix<S>>>(d: usize, mats: I) -> Self {
        mats.into_iter().fold(Self::zeros(d), |acc, m| &acc + m)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let d = self.d + other.d;
        let mut m = Self::zeros(d);
        for i in 0..self.d {
            for j in 0..=i {
                m.lower[tri(i, j)] = self.lower[tri(i, j)].clone();
            }
        }
        for i in 0..other.d {
            for j in 0..=i {
                m.lower[tri(self.d + i, self.d + j)] = other.lower[tri(i, j)].clone();
            }
        }
        m
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = (self.d, other.d);
        let d = p * q;
        let mut lower = Vec::with_capacity(d * (d + 1) / 2);
        for i in 0..d {
            for j in 0..=i {
                lower.push(self.get(i / q, j / q) * other.get(i % q, j % q));
            }
        }
        HermMatrix { d, lower }
    }

    pub fn map_lower(&self, f: impl Fn(&S) -> S) -> Self {
        HermMatrix { d: self.d, lower: self.lower.iter().map(f).collect() }
    }
}

impl ExactHerm {
    /// Rank-one matrix `u u*`.
    pub fn outer(u: &[Gq]) -> Self {
        let d = u.len();
        let mut lower = Vec::with_capacity(d * (d + 1) / 2);
        for i in 0..d {
            for j in 0..=i {
                lower.push(&u[i] * &u[j].conj());
            }
        }
        HermMatrix { d, lower }
    }

    /// Real symmetric matrix from rational rows.
    pub fn from_real_rows(rows: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        let rows: Vec<Vec<Gq>> =
            rows.iter().map(|r| r.iter().map(|x| Gq::real(x.clone())).collect()).collect();
        Self::from_rows(&rows)
    }
}

impl FloatHerm {
    /// Hermitian part `(M + M*)/2` of a dense row-major matrix.
    pub fn from_dense_symmetrized(d: usize, m: &[Complex64]) -> Self {
        let mut lower = Vec::with_capacity(d * (d + 1) / 2);
        for i in 0..d {
            for j in 0..=i {
                let v = (m[i * d + j] + m[j * d + i].conj()) * 0.5;
                lower.push(if i == j { Complex64::new(v.re, 0.0) } else { v });
            }
        }
        HermMatrix { d, lower }
    }

    pub fn scale_f64(&self, c: f64) -> Self {
        self.map_lower(|x| x * c)
    }
}

impl<S: Scalar> Add for &HermMatrix<S> {
    type Output = HermMatrix<S>;
    /// Panics if the dimensions differ.
    fn add(self, o: &HermMatrix<S>) -> HermMatrix<S> {
        assert_eq!(self.d, o.d, "Hermitian dimension mismatch");
        HermMatrix {
            d: self.d,
            lower: self.lower.iter().zip(&o.lower).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<S: Scalar> Sub for &HermMatrix<S> {
    type Output = HermMatrix<S>;
    /// Panics if the dimensions differ.
    fn sub(self, o: &HermMatrix<S>) -> HermMatrix<S> {
        assert_eq!(self.d, o.d, "Hermitian dimension mismatch");
        HermMatrix {
            d: self.d,
            lower: self.lower.iter().zip(&o.lower).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<S: Scalar> Neg for &HermMatrix<S> {
    type Output = HermMatrix<S>;
    fn neg(self) -> HermMatrix<S> {
        self.map_lower(|x| -x.clone())
    }
}

impl<S: Scalar> Zero for HermMatrix<S> {
    /// Zero of dimension 0; prefer [`HermMatrix::zeros`].
    fn zero() -> Self {
        Self::zeros(0)
    }
    fn is_zero(&self) -> bool {
        HermMatrix::is_zero(self)
    }
}

impl<S: Scalar> Add for HermMatrix<S> {
    type Output = HermMatrix<S>;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}
