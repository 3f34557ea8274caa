//! Exact two-phase simplex with Bland's anti-cycling rule, warm-started from a
//! floating-point pass.
//!
//! Problems are stated as `maximize c·x  s.t.  A x = b`, with every variable
//! either nonnegative or free. Free variables are split into a difference of
//! two nonnegative columns internally.

use num_traits::{Signed, Zero};

use super::rational::Rational;
use super::rmatrix::RMatrix;
use super::LinalgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarBound {
    NonNegative,
    Free,
}

#[derive(Clone, Debug)]
pub struct LpProblem {
    objective: Vec<Rational>,
    constraints: RMatrix,
    rhs: Vec<Rational>,
    bounds: Vec<VarBound>,
}

impl LpProblem {
    pub fn new(
        objective: Vec<Rational>,
        constraints: RMatrix,
        rhs: Vec<Rational>,
        bounds: Vec<VarBound>,
    ) -> Result<Self, LinalgError> {
        if constraints.rows() != rhs.len() {
            return Err(LinalgError::DimensionMismatch {
                expected: constraints.rows(),
                found: rhs.len(),
            });
        }
        if objective.len() != constraints.cols() {
            return Err(LinalgError::DimensionMismatch {
                expected: constraints.cols(),
                found: objective.len(),
            });
        }
        if bounds.len() != constraints.cols() {
            return Err(LinalgError::DimensionMismatch {
                expected: constraints.cols(),
                found: bounds.len(),
            });
        }
        Ok(LpProblem { objective, constraints, rhs, bounds })
    }

    /// Pure feasibility problem with a zero objective.
    pub fn feasibility(
        constraints: RMatrix,
        rhs: Vec<Rational>,
        bounds: Vec<VarBound>,
    ) -> Result<Self, LinalgError> {
        let n = constraints.cols();
        Self::new(vec![Rational::zero(); n], constraints, rhs, bounds)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constraints(&self) -> &RMatrix {
        &self.constraints
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn bounds(&self) -> &[VarBound] {
        &self.bounds
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    /// Checks `A x = b` and the sign constraints exactly.
    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let signs_ok = x
            .iter()
            .zip(&self.bounds)
            .all(|(v, b)| *b == VarBound::Free || !v.is_negative());
        signs_ok && self.constraints.mul_vec(x).map(|ax| ax == self.rhs).unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Entries below this magnitude are treated as zero in the floating-point pass.
const FLOAT_EPS: f64 = 1e-9;
/// Pivot budget for the floating-point pass before it gives up.
const FLOAT_PIVOT_LIMIT: usize = 20_000;
/// Scale of the right-hand-side perturbation in the floating-point pass.
const FLOAT_PERTURBATION: f64 = 1e-6;

/// Arithmetic needed by the tableau. `Rational` is exact; `f64` snaps tiny values to zero.
trait LpNum: Clone + PartialOrd {
    fn nil() -> Self;
    fn unit() -> Self;
    fn vanishes(&self) -> bool;
    fn negative(&self) -> bool;
    fn positive(&self) -> bool;
    fn neg(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
}

impl LpNum for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        num_traits::One::one()
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn negative(&self) -> bool {
        self.is_negative()
    }
    fn positive(&self) -> bool {
        self.is_positive()
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

fn snap(x: f64) -> f64 {
    if x.abs() < FLOAT_EPS {
        0.0
    } else {
        x
    }
}

impl LpNum for f64 {
    fn nil() -> Self {
        0.0
    }
    fn unit() -> Self {
        1.0
    }
    fn vanishes(&self) -> bool {
        self.abs() < FLOAT_EPS
    }
    fn negative(&self) -> bool {
        *self < -FLOAT_EPS
    }
    fn positive(&self) -> bool {
        *self > FLOAT_EPS
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add(&self, o: &Self) -> Self {
        snap(self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        snap(self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

#[derive(Clone)]
struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    obj: Vec<T>,
    obj_val: T,
    pivots: usize,
}

#[derive(Clone, Copy)]
enum Pricing {
    /// Lowest-index improving column; never cycles.
    Bland,
    /// Most negative reduced cost.
    Dantzig,
}

enum Stop {
    Unbounded,
    PivotLimit,
}

impl<T: LpNum> Tableau<T> {
    fn ncols(&self) -> usize {
        self.obj.len()
    }

    fn set_objective(&mut self, cost: &[T]) {
        let n = self.ncols();
        let mut obj: Vec<T> = cost.iter().map(T::neg).collect();
        obj.resize(n, T::nil());
        let mut val = T::nil();
        for (i, &b) in self.basis.iter().enumerate() {
            let Some(cb) = cost.get(b) else { continue };
            if cb.vanishes() {
                continue;
            }
            for (j, a) in self.rows[i].iter().enumerate() {
                if !a.vanishes() {
                    obj[j] = obj[j].add(&cb.mul(a));
                }
            }
            val = val.add(&cb.mul(&self.rhs[i]));
        }
        self.obj = obj;
        self.obj_val = val;
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let pivot_entry = self.rows[r][e].clone();
        let nz: Vec<usize> = (0..self.ncols()).filter(|&j| !self.rows[r][j].vanishes()).collect();
        for &j in &nz {
            self.rows[r][j] = self.rows[r][j].div(&pivot_entry);
        }
        self.rows[r][e] = T::unit();
        self.rhs[r] = self.rhs[r].div(&pivot_entry);
        let (pivot_row, pivot_rhs) = (self.rows[r].clone(), self.rhs[r].clone());
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][e].vanishes() {
                continue;
            }
            let f = self.rows[i][e].clone();
            for &j in &nz {
                self.rows[i][j] = self.rows[i][j].sub(&f.mul(&pivot_row[j]));
            }
            self.rows[i][e] = T::nil();
            self.rhs[i] = self.rhs[i].sub(&f.mul(&pivot_rhs));
        }
        if !self.obj[e].vanishes() {
            let f = self.obj[e].clone();
            for &j in &nz {
                self.obj[j] = self.obj[j].sub(&f.mul(&pivot_row[j]));
            }
            self.obj[e] = T::nil();
            self.obj_val = self.obj_val.sub(&f.mul(&pivot_rhs));
        }
        self.basis[r] = e;
        self.pivots += 1;
    }

    /// Simplex iterations restricted to columns `< allowed`.
    fn optimize(&mut self, allowed: usize, limit: usize, rule: Pricing) -> Result<(), Stop> {
        loop {
            let candidates = (0..allowed).filter(|&j| self.obj[j].negative());
            let entering = match rule {
                Pricing::Bland => candidates.min(),
                Pricing::Dantzig => candidates.min_by(|&a, &b| {
                    self.obj[a].partial_cmp(&self.obj[b]).unwrap_or(std::cmp::Ordering::Equal)
                }),
            };
            let Some(e) = entering else {
                return Ok(());
            };
            if self.pivots >= limit {
                return Err(Stop::PivotLimit);
            }
            let mut best: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][e];
                if !a.positive() {
                    continue;
                }
                let ratio = self.rhs[i].div(a);
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, e),
                None => return Err(Stop::Unbounded),
            }
        }
    }

    /// Phase one over all columns; `false` when the artificial sum stays positive.
    fn phase_one(&mut self, n: usize, limit: usize, rule: Pricing) -> Result<bool, Stop> {
        let total = self.ncols();
        let mut cost = vec![T::nil(); total];
        for c in cost.iter_mut().skip(n) {
            *c = T::unit().neg();
        }
        self.set_objective(&cost);
        self.optimize(total, limit, rule)?;
        Ok(!self.obj_val.negative())
    }

    /// Pivots zero-level artificials out of the basis and drops redundant rows.
    fn drop_artificials(&mut self, n: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= n {
                if let Some(j) = (0..n).find(|&j| !self.rows[i][j].vanishes()) {
                    self.pivot(i, j);
                } else {
                    self.rows.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
    }

    fn to_f64(&self) -> Tableau<f64>
    where
        T: num_traits::ToPrimitive,
    {
        let f = |x: &T| x.to_f64().unwrap_or(f64::NAN);
        Tableau {
            rows: self.rows.iter().map(|r| r.iter().map(f).collect()).collect(),
            rhs: self.rhs.iter().map(f).collect(),
            basis: self.basis.clone(),
            obj: self.obj.iter().map(f).collect(),
            obj_val: f(&self.obj_val),
            pivots: 0,
        }
    }
}

/// Structural basis found by the floating-point pass, or `None` when it did not reach an
/// optimum. The right-hand side is perturbed to break degeneracy.
fn float_basis(start: &Tableau<Rational>, cost: &[Rational], n: usize) -> Option<Vec<usize>> {
    let mut t = start.to_f64();
    for (i, b) in t.rhs.iter_mut().enumerate() {
        *b += FLOAT_PERTURBATION * (1.0 + ((i * 7919) % 997) as f64 / 997.0);
    }
    if !t.phase_one(n, FLOAT_PIVOT_LIMIT, Pricing::Dantzig).ok()? {
        return None;
    }
    t.drop_artificials(n);
    let cost: Vec<f64> = cost.iter().map(|c| num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)).collect();
    t.set_objective(&cost);
    t.optimize(n, FLOAT_PIVOT_LIMIT, Pricing::Dantzig).ok()?;
    Some(t.basis.into_iter().filter(|&b| b < n).collect())
}

/// Pivots the suggested columns into the exact tableau. Returns `None` unless the result
/// is primal feasible with every remaining artificial at level zero.
fn warm_start(start: &Tableau<Rational>, basis: &[usize], n: usize) -> Option<Tableau<Rational>> {
    let mut t = start.clone();
    for &e in basis {
        let r = (0..t.rows.len()).find(|&r| t.basis[r] >= n && !t.rows[r][e].is_zero())?;
        t.pivot(r, e);
    }
    let feasible = t
        .rhs
        .iter()
        .zip(&t.basis)
        .all(|(v, &b)| !v.is_negative() && (b < n || v.is_zero()));
    feasible.then_some(t)
}

/// Solves the problem exactly. A floating-point pass suggests a starting basis; the
/// exact simplex then resumes from it, or starts cold when the suggestion is unusable.
/// The returned point satisfies every constraint with rational equality.
pub fn lp_solve(p: &LpProblem) -> LpOutcome {
    solve(p, true)
}

fn solve(p: &LpProblem, use_float_basis: bool) -> LpOutcome {
    let m = p.constraints.rows();
    // column layout: split variables, then one artificial per row
    let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(p.num_vars());
    let mut n = 0;
    for b in &p.bounds {
        match b {
            VarBound::NonNegative => {
                col_of.push((n, None));
                n += 1;
            }
            VarBound::Free => {
                col_of.push((n, Some(n + 1)));
                n += 2;
            }
        }
    }
    let mut cost = vec![Rational::zero(); n];
    for (v, &(pos, neg)) in col_of.iter().enumerate() {
        cost[pos] = p.objective[v].clone();
        if let Some(neg) = neg {
            cost[neg] = -p.objective[v].clone();
        }
    }

    let total = n + m;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let flip = p.rhs[i].is_negative();
        let mut row = vec![Rational::zero(); total];
        for (v, &(pos, neg)) in col_of.iter().enumerate() {
            let a = &p.constraints[(i, v)];
            if a.is_zero() {
                continue;
            }
            let a = if flip { -a.clone() } else { a.clone() };
            if let Some(neg) = neg {
                row[neg] = -a.clone();
            }
            row[pos] = a;
        }
        row[n + i] = num_traits::One::one();
        rows.push(row);
        rhs.push(if flip { -p.rhs[i].clone() } else { p.rhs[i].clone() });
    }

    let start = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
        obj: vec![Rational::zero(); total],
        obj_val: Rational::zero(),
        pivots: 0,
    };

    let warm = if use_float_basis {
        float_basis(&start, &cost, n).and_then(|b| warm_start(&start, &b, n))
    } else {
        None
    };
    let mut t = match warm {
        Some(t) => t,
        None => {
            let mut t = start;
            match t.phase_one(n, usize::MAX, Pricing::Bland) {
                Ok(true) => {}
                Ok(false) => return LpOutcome::Infeasible,
                Err(_) => unreachable!("phase one is bounded by zero"),
            }
            t
        }
    };
    t.drop_artificials(n);

    t.set_objective(&cost);
    if t.optimize(n, usize::MAX, Pricing::Bland).is_err() {
        return LpOutcome::Unbounded;
    }
    log::trace!("simplex finished after {} pivots", t.pivots);

    let mut x = vec![Rational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs[r].clone();
        }
    }
    let point: Vec<Rational> = col_of
        .iter()
        .map(|&(pos, neg)| match neg {
            Some(neg) => &x[pos] - &x[neg],
            None => x[pos].clone(),
        })
        .collect();
    LpOutcome::Optimal { value: t.obj_val, point }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{int, rat};

    #[test]
    fn bounded_by_slack() {
        // max x  s.t. x + s = 1, x, s >= 0
        let a = RMatrix::from_rows(&[vec![int(1), int(1)]]).unwrap();
        let p = LpProblem::new(vec![int(1), int(0)], a, vec![int(1)], vec![VarBound::NonNegative; 2])
            .unwrap();
        match lp_solve(&p) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, int(1));
                assert_eq!(point[0], int(1));
                assert!(p.is_feasible_point(&point));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unbounded_ray() {
        // max x  s.t. x - s = 0 with no upper limit
        let a = RMatrix::from_rows(&[vec![int(1), int(-1)]]).unwrap();
        let p = LpProblem::new(vec![int(1), int(0)], a, vec![int(0)], vec![VarBound::NonNegative; 2])
            .unwrap();
        assert_eq!(lp_solve(&p), LpOutcome::Unbounded);
    }

    #[test]
    fn infeasible_system() {
        // x = -1 with x >= 0
        let a = RMatrix::from_rows(&[vec![int(1)]]).unwrap();
        let p = LpProblem::feasibility(a, vec![int(-1)], vec![VarBound::NonNegative]).unwrap();
        assert_eq!(lp_solve(&p), LpOutcome::Infeasible);
    }

    #[test]
    fn free_variables_and_redundant_rows() {
        // y free, x >= 0: x + y = 1/2, 2x + 2y = 1, x - y = 3/2; maximize -x
        let a = RMatrix::from_rows(&[
            vec![int(1), int(1)],
            vec![int(2), int(2)],
            vec![int(1), int(-1)],
        ])
        .unwrap();
        let p = LpProblem::new(
            vec![int(-1), int(0)],
            a,
            vec![rat(1, 2), int(1), rat(3, 2)],
            vec![VarBound::NonNegative, VarBound::Free],
        )
        .unwrap();
        let out = lp_solve(&p);
        assert_eq!(out.point().unwrap(), &[int(1), rat(-1, 2)]);
        assert!(p.is_feasible_point(out.point().unwrap()));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's classic cycling instance, written with explicit slacks.
        let rows = vec![
            vec![rat(1, 4), int(-8), int(-1), int(9), int(1), int(0), int(0)],
            vec![rat(1, 2), int(-12), rat(-1, 2), int(3), int(0), int(1), int(0)],
            vec![int(0), int(0), int(1), int(0), int(0), int(0), int(1)],
        ];
        let a = RMatrix::from_rows(&rows).unwrap();
        let c = vec![rat(3, 4), int(-20), rat(1, 2), int(-6), int(0), int(0), int(0)];
        let p = LpProblem::new(c, a, vec![int(0), int(0), int(1)], vec![VarBound::NonNegative; 7])
            .unwrap();
        let out = lp_solve(&p);
        assert_eq!(out.value(), Some(&rat(5, 4)));
    }

    fn small_lp() -> impl proptest::strategy::Strategy<Value = LpProblem> {
        use proptest::prelude::*;
        (1usize..4, 2usize..7).prop_flat_map(|(m, n)| {
            (
                proptest::collection::vec(-3i64..=3, m * n),
                proptest::collection::vec(-3i64..=3, m),
                proptest::collection::vec(-3i64..=3, n),
            )
                .prop_map(move |(a, b, c)| {
                    // a box row keeps most instances bounded
                    let mut rows: Vec<Vec<Rational>> = a.chunks(n).map(|r| r.iter().map(|&x| int(x)).collect()).collect();
                    let mut rhs: Vec<Rational> = b.iter().map(|&x| int(x)).collect();
                    rows.push(vec![int(1); n]);
                    rhs.push(int(4));
                    LpProblem::new(
                        c.iter().map(|&x| int(x)).collect(),
                        RMatrix::from_rows(&rows).unwrap(),
                        rhs,
                        vec![VarBound::NonNegative; n],
                    )
                    .unwrap()
                })
        })
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn warm_start_matches_cold_solve(p in small_lp()) {
            let warm = lp_solve(&p);
            let cold = solve(&p, false);
            proptest::prop_assert_eq!(warm.value(), cold.value());
            proptest::prop_assert_eq!(matches!(warm, LpOutcome::Infeasible), matches!(cold, LpOutcome::Infeasible));
            if let Some(x) = warm.point() {
                proptest::prop_assert!(p.is_feasible_point(x));
            }
        }
    }
}
