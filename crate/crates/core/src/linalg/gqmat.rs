//! Dense matrices over the Gaussian rationals: elimination, ranges and subspace intersections.

use super::gauss::Gq;

#[derive(Clone, Debug, PartialEq)]
pub struct GqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Gq>,
}

impl GqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GqMatrix { rows, cols, data: vec![Gq::default(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Gq) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        GqMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Gq>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Gq {
        &self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Gq> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (GqMatrix, Vec<usize>) {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m.data[i * cols + c].is_zero()) else {
                continue;
            };
            for j in 0..cols {
                m.data.swap(r * cols + j, p * cols + j);
            }
            let inv = m.data[r * cols + c].inv().expect("nonzero pivot");
            for j in c..cols {
                m.data[r * cols + j] = &m.data[r * cols + j] * &inv;
            }
            for i in 0..rows {
                if i == r || m.data[i * cols + c].is_zero() {
                    continue;
                }
                let f = m.data[i * cols + c].clone();
                for j in c..cols {
                    let delta = &f * &m.data[r * cols + j];
                    m.data[i * cols + j] = &m.data[i * cols + j] - &delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant of a square matrix by fraction-exact elimination.
    pub fn det(&self) -> Gq {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = Gq::real(num_traits::One::one());
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i * n + c].is_zero()) else {
                return Gq::default();
            };
            if p != c {
                for j in 0..n {
                    m.swap(c * n + j, p * n + j);
                }
                det = -det;
            }
            let piv = m[c * n + c].clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[i * n + c].is_zero() {
                    continue;
                }
                let f = &m[i * n + c] * &inv;
                for j in c..n {
                    let delta = &f * &m[c * n + j];
                    m[i * n + j] = &m[i * n + j] - &delta;
                }
            }
        }
        det
    }

    /// Basis of the column space: the pivot columns of the original matrix.
    pub fn column_space(&self) -> Vec<Vec<Gq>> {
        let (_, pivots) = self.rref();
        pivots.into_iter().map(|j| self.column(j)).collect()
    }

    /// Basis of the right null space.
    pub fn nullspace(&self) -> Vec<Vec<Gq>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Gq::default(); self.cols];
                v[f] = Gq::real(num_traits::One::one());
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }
}

/// Basis of the intersection of two subspaces of `C^dim`, each given by a spanning list.
pub fn subspace_intersection(dim: usize, a: &[Vec<Gq>], b: &[Vec<Gq>]) -> Vec<Vec<Gq>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut cols: Vec<Vec<Gq>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let stacked = GqMatrix::from_columns(dim, &cols);
    let vectors: Vec<Vec<Gq>> = stacked
        .nullspace()
        .into_iter()
        .map(|coef| {
            (0..dim)
                .map(|i| {
                    a.iter()
                        .zip(&coef)
                        .fold(Gq::default(), |acc, (v, c)| &acc + &(&v[i] * c))
                })
                .collect()
        })
        .collect();
    GqMatrix::from_columns(dim, &vectors).column_space()
}
