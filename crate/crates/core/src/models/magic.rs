//! Quantum magic squares, the tilde correspondence with the Birkhoff body, and
//! semiclassicality tests.

use std::fmt;

use num_complex::Complex64;
use serde_json::{json, Value};

use super::builders::{birkhoff_body, birkhoff_t, permutations, MAX_BIRKHOFF_N};
use super::ModelError;
use crate::linalg::json::{self as js, JsonError};
use crate::linalg::{herm_eig_min, int, rat, ExactHerm, Gq, HermMatrix, Rational, Scalar};
use crate::tuples::{
    certificate_from_scaling, is_psd, matrices_agree, pmin_search_ap, range_pruned_feasibility, ApOutcome,
    ApSettings, BlockConstraintSystem, BlockEquation, HermTuple, InfeasibilityWitness, Povm, PovmMode,
    PruneOutcome, MAX_PRUNING_DIM,
};

/// Largest side accepted by the exact semiclassicality strategies.
pub const MAX_EXACT_STRATEGY_N: usize = 4;

/// First constraint of the magic-square definition that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MagicViolation {
    Shape(String),
    NotPsd { row: usize, col: usize },
    Row(usize),
    Column(usize),
}

impl fmt::Display for MagicViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MagicViolation::Shape(s) => write!(f, "bad shape: {s}"),
            MagicViolation::NotPsd { row, col } => write!(f, "block ({row},{col}) is not PSD"),
            MagicViolation::Row(i) => write!(f, "row {i} does not sum to the identity"),
            MagicViolation::Column(j) => write!(f, "column {j} does not sum to the identity"),
        }
    }
}

/// `N × N` grid of PSD blocks whose rows and columns each sum to `I_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct MagicSquare<S> {
    n: usize,
    d: usize,
    blocks: Vec<HermMatrix<S>>,
}

impl<S: Scalar> MagicSquare<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn block(&self, i: usize, j: usize) -> &HermMatrix<S> {
        &self.blocks[i * self.n + j]
    }

    pub fn grid(&self) -> Vec<Vec<HermMatrix<S>>> {
        self.blocks.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn cast<T: Scalar>(&self) -> MagicSquare<T> {
        MagicSquare { n: self.n, d: self.d, blocks: self.blocks.iter().map(HermMatrix::cast).collect() }
    }

    /// Row `i` as a POVM indexed by columns.
    pub fn row_povm(&self, i: usize) -> Povm<S> {
        Povm::new_unchecked(self.blocks[i * self.n..(i + 1) * self.n].to_vec(), PovmMode::Povm)
    }

    /// Column `j` as a POVM indexed by rows.
    pub fn column_povm(&self, j: usize) -> Povm<S> {
        Povm::new_unchecked((0..self.n).map(|i| self.block(i, j).clone()).collect(), PovmMode::Povm)
    }

    pub fn to_json(&self) -> Value {
        let grid: Vec<Value> =
            self.blocks.chunks(self.n).map(|r| Value::Array(r.iter().map(js::herm_to_json).collect())).collect();
        json!({ "N": self.n, "d": self.d, "blocks": grid })
    }
}

impl MagicSquare<Gq> {
    pub fn from_json(v: &Value) -> Result<Self, ModelError> {
        Ok(magic_check(grid_from_json(v)?)?)
    }
}

fn grid_from_json(v: &Value) -> Result<Vec<Vec<ExactHerm>>, JsonError> {
    let n = js::usize_field(v, "N", "$")?;
    let rows = v.get("blocks").and_then(Value::as_array).ok_or_else(|| JsonError::shape("array", "$.blocks"))?;
    if rows.len() != n {
        return Err(JsonError::shape("N rows", "$.blocks"));
    }
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let r = r.as_array().ok_or_else(|| JsonError::shape("array", format!("$.blocks[{i}]")))?;
            r.iter()
                .enumerate()
                .map(|(j, h)| js::herm_from_json(h, &format!("$.blocks[{i}][{j}]")))
                .collect()
        })
        .collect()
}

/// Validates a block grid: square shape, common `d`, PSD blocks, then row sums, then
/// column sums.
pub fn magic_check<S: Scalar>(grid: Vec<Vec<HermMatrix<S>>>) -> Result<MagicSquare<S>, ModelError> {
    let bad = |v| Err(ModelError::NotMagic(v));
    let n = grid.len();
    if n == 0 {
        return bad(MagicViolation::Shape("empty grid".into()));
    }
    if let Some(i) = grid.iter().position(|r| r.len() != n) {
        return bad(MagicViolation::Shape(format!("row {i} has {} blocks, expected {n}", grid[i].len())));
    }
    let d = grid[0][0].dim();
    let blocks: Vec<HermMatrix<S>> = grid.into_iter().flatten().collect();
    if let Some(k) = blocks.iter().position(|b| b.dim() != d) {
        return bad(MagicViolation::Shape(format!("block ({},{}) has dimension {}", k / n, k % n, blocks[k].dim())));
    }
    if let Some(k) = blocks.iter().position(|b| !is_psd(b)) {
        return bad(MagicViolation::NotPsd { row: k / n, col: k % n });
    }
    let id = HermMatrix::identity(d);
    for i in 0..n {
        if !matrices_agree(&HermMatrix::sum(d, &blocks[i * n..(i + 1) * n]), &id) {
            return bad(MagicViolation::Row(i));
        }
    }
    for j in 0..n {
        if !matrices_agree(&HermMatrix::sum(d, (0..n).map(|i| &blocks[i * n + j])), &id) {
            return bad(MagicViolation::Column(j));
        }
    }
    Ok(MagicSquare { n, d, blocks })
}

/// `A_{xy} = M_{xy} - I/N` for `x, y < N-1`, flattened row-major.
pub fn truncate_shift<S: Scalar>(m: &MagicSquare<S>) -> HermTuple<S> {
    let (n, d) = (m.n, m.d);
    let shift = HermMatrix::scalar(d, &rat(1, n as i64));
    let elements = (0..n - 1)
        .flat_map(|x| (0..n - 1).map(move |y| (x, y)))
        .map(|(x, y)| m.block(x, y) - &shift)
        .collect();
    HermTuple::new(elements).expect("common dimension")
}

/// Inverse of [`truncate_shift`] for any tuple of length `(N-1)^2`: the top-left blocks are
/// `I/N + A_{xy}` and the last row and column complete every line to `I`.
pub fn tilde_map<S: Scalar>(a: &HermTuple<S>, n: usize) -> Result<Vec<Vec<HermMatrix<S>>>, ModelError> {
    if n < 2 || a.g() != (n - 1) * (n - 1) {
        return Err(ModelError::ParameterOutOfRange(format!("tuple of length {} does not fit N = {n}", a.g())));
    }
    let (m, d) = (n - 1, a.d());
    let id = HermMatrix::identity(d);
    let shift = HermMatrix::scalar(d, &rat(1, n as i64));
    let mut grid = vec![vec![HermMatrix::zeros(d); n]; n];
    for x in 0..m {
        for y in 0..m {
            grid[x][y] = &shift + &a.elements()[x * m + y];
        }
    }
    for x in 0..m {
        grid[x][m] = &id - &HermMatrix::sum(d, &grid[x][..m]);
    }
    for y in 0..n {
        grid[m][y] = &id - &HermMatrix::sum(d, (0..m).map(|x| &grid[x][y]));
    }
    Ok(grid)
}

/// POVM `(Q_π)` over permutations of `[N]` in lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiclassicalCertificate<S> {
    n: usize,
    povm: Povm<S>,
}

impl<S: Scalar> SemiclassicalCertificate<S> {
    pub fn new(n: usize, povm: Povm<S>) -> Result<Self, ModelError> {
        let expected: usize = (1..=n).product();
        if povm.len() != expected || povm.mode() != PovmMode::Povm {
            return Err(ModelError::ParameterOutOfRange(format!(
                "need a POVM with {expected} elements, got {}",
                povm.len()
            )));
        }
        Ok(SemiclassicalCertificate { n, povm })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn povm(&self) -> &Povm<S> {
        &self.povm
    }

    /// `Σ_π P_π ⊗ Q_π`: block `(i, j)` collects the `Q_π` with `π(i) = j`.
    pub fn reconstruct(&self) -> Vec<Vec<HermMatrix<S>>> {
        let (n, d) = (self.n, self.povm.d());
        let mut grid = vec![vec![HermMatrix::zeros(d); n]; n];
        for (pi, q) in permutations(n).iter().zip(self.povm.elements()) {
            for (i, &j) in pi.iter().enumerate() {
                grid[i][j] = &grid[i][j] + q;
            }
        }
        grid
    }

    /// The reconstruction reproduces `m` (exactly, or within the float tolerance).
    pub fn verifies(&self, m: &MagicSquare<S>) -> bool {
        self.n == m.n
            && self.povm.d() == m.d
            && self.reconstruct().iter().flatten().zip(&m.blocks).all(|(a, b)| matrices_agree(a, b))
    }

    pub fn to_json(&self) -> Value {
        json!({ "N": self.n, "permutations": permutations(self.n), "povm": self.povm.to_json() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Strategy {
    /// Undo the mixing of the Birkhoff corollary and apply the Birkhoff `T` certificate.
    LpSynthesis,
    /// Alternating projections on `B_N`.
    Numeric(ApSettings),
    /// Range pruning on `M_{ij} = Σ_{π(i)=j} Q_π`.
    ExactPruning,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::LpSynthesis => "lp-synthesis",
            Strategy::Numeric(_) => "numeric",
            Strategy::ExactPruning => "exact-pruning",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SemiclassicalOutcome<S> {
    Certified(SemiclassicalCertificate<S>),
    /// Found by the numeric search; verified at the float tolerance only.
    NumericallyCertified(SemiclassicalCertificate<Complex64>),
    ExactlyInfeasible(InfeasibilityWitness),
    /// `residual` is the strategy's distance to success when it has one.
    Undecided { residual: Option<f64> },
}

impl<S> SemiclassicalOutcome<S> {
    pub fn is_certified(&self) -> bool {
        matches!(self, SemiclassicalOutcome::Certified(_) | SemiclassicalOutcome::NumericallyCertified(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            SemiclassicalOutcome::Certified(_) => "certified",
            SemiclassicalOutcome::NumericallyCertified(_) => "numerically-certified",
            SemiclassicalOutcome::ExactlyInfeasible(_) => "exactly-infeasible",
            SemiclassicalOutcome::Undecided { .. } => "undecided",
        }
    }
}

/// `A` with `M = A/(N-1) + (N-2)/(N-1)·J/N ⊗ I`, when `A` is a magic square.
pub fn mixing_preimage<S: Scalar>(m: &MagicSquare<S>) -> Option<MagicSquare<S>> {
    let n = m.n as i64;
    let shift = HermMatrix::scalar(m.d, &rat(n - 2, n));
    let blocks: Vec<HermMatrix<S>> = m.blocks.iter().map(|b| &b.scale(&int(n - 1)) - &shift).collect();
    blocks.iter().all(is_psd).then(|| MagicSquare { n: m.n, d: m.d, blocks })
}

fn check_side(n: usize, cap: usize, strategy: &'static str) -> Result<(), ModelError> {
    if n < 2 || n > cap {
        return Err(ModelError::StrategyMismatch { strategy, reason: format!("N = {n} outside 2..={cap}") });
    }
    Ok(())
}

/// Certificate for `s·truncate_shift(a)` on `B_N` mapped back to permutations.
fn birkhoff_certificate<S: Scalar>(a: &MagicSquare<S>) -> Result<SemiclassicalCertificate<S>, ModelError> {
    let bn = birkhoff_body(a.n)?;
    let cert = certificate_from_scaling(&birkhoff_t(a.n)?, &bn, &truncate_shift(a))?;
    SemiclassicalCertificate::new(a.n, cert.povm)
}

fn pruning_system(m: &MagicSquare<Gq>) -> Result<BlockConstraintSystem, ModelError> {
    let n = m.n;
    let perms = permutations(n);
    let names = perms
        .iter()
        .map(|p| format!("Q({})", p.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let mut equations: Vec<BlockEquation> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let terms = (0..perms.len()).filter(|&p| perms[p][i] == j).collect();
            BlockEquation { target: m.blocks[k].clone(), terms }
        })
        .collect();
    equations.push(BlockEquation { target: HermMatrix::identity(m.d), terms: (0..perms.len()).collect() });
    Ok(BlockConstraintSystem::new(m.d, names, equations)?)
}

pub fn semiclassical_check<S: Scalar>(
    m: &MagicSquare<S>,
    strategy: Strategy,
) -> Result<SemiclassicalOutcome<S>, ModelError> {
    let name = strategy.name();
    match strategy {
        Strategy::LpSynthesis => {
            check_side(m.n, MAX_EXACT_STRATEGY_N, name)?;
            let Some(a) = mixing_preimage(m) else {
                let worst = m
                    .blocks
                    .iter()
                    .map(|b| -herm_eig_min(&(&b.scale(&int(m.n as i64 - 1)) - &HermMatrix::scalar(m.d, &rat(m.n as i64 - 2, m.n as i64)))))
                    .fold(0.0, f64::max);
                return Ok(SemiclassicalOutcome::Undecided { residual: Some(worst) });
            };
            let cert = birkhoff_certificate(&a)?;
            if !cert.verifies(m) {
                return Err(ModelError::StrategyConflict("Birkhoff certificate does not reproduce the square".into()));
            }
            Ok(SemiclassicalOutcome::Certified(cert))
        }
        Strategy::Numeric(settings) => {
            check_side(m.n, MAX_BIRKHOFF_N, name)?;
            let bn = birkhoff_body(m.n)?;
            match pmin_search_ap(&bn, &truncate_shift(m), settings)? {
                ApOutcome::Feasible { certificate, .. } => Ok(SemiclassicalOutcome::NumericallyCertified(
                    SemiclassicalCertificate::new(m.n, certificate.povm)?,
                )),
                ApOutcome::Undecided { residual, .. } => Ok(SemiclassicalOutcome::Undecided { residual: Some(residual) }),
            }
        }
        Strategy::ExactPruning => {
            check_side(m.n, MAX_EXACT_STRATEGY_N, name)?;
            if !S::is_exact() || m.d > MAX_PRUNING_DIM {
                return Err(ModelError::StrategyMismatch {
                    strategy: name,
                    reason: format!("needs the exact backend and d <= {MAX_PRUNING_DIM}"),
                });
            }
            let exact = m.cast::<Gq>();
            match range_pruned_feasibility(&pruning_system(&exact)?) {
                PruneOutcome::ExactlyInfeasible(w) => Ok(SemiclassicalOutcome::ExactlyInfeasible(w)),
                PruneOutcome::ReducedFeasible(q) => {
                    let povm = Povm::new(q.iter().map(HermMatrix::cast).collect(), PovmMode::Povm)?;
                    let cert = SemiclassicalCertificate::new(m.n, povm)?;
                    if !cert.verifies(m) {
                        return Err(ModelError::StrategyConflict("pruning solution does not reproduce the square".into()));
                    }
                    Ok(SemiclassicalOutcome::Certified(cert))
                }
                PruneOutcome::Undecided { .. } => Ok(SemiclassicalOutcome::Undecided { residual: None }),
            }
        }
    }
}

/// Runs every strategy and fails if one certifies while another proves infeasibility.
pub fn semiclassical_check_all<S: Scalar>(
    m: &MagicSquare<S>,
    strategies: &[Strategy],
) -> Result<Vec<(Strategy, SemiclassicalOutcome<S>)>, ModelError> {
    let results = strategies
        .iter()
        .map(|&s| semiclassical_check(m, s).map(|o| (s, o)))
        .collect::<Result<Vec<_>, _>>()?;
    let certified = results.iter().find(|(_, o)| o.is_certified());
    let refuted = results.iter().find(|(_, o)| matches!(o, SemiclassicalOutcome::ExactlyInfeasible(_)));
    if let (Some((a, _)), Some((b, _))) = (certified, refuted) {
        return Err(ModelError::StrategyConflict(format!("{} certifies but {} refutes", a.name(), b.name())));
    }
    Ok(results)
}

/// `B = A/(N-1) + (N-2)/(N-1)·J/N ⊗ I` together with its Birkhoff certificate.
pub fn semiclassical_mix<S: Scalar>(
    m: &MagicSquare<S>,
) -> Result<(MagicSquare<S>, SemiclassicalCertificate<S>), ModelError> {
    let n = m.n as i64;
    if !(2..=MAX_BIRKHOFF_N).contains(&m.n) {
        return Err(ModelError::ParameterOutOfRange(format!("N = {n} outside 2..={MAX_BIRKHOFF_N}")));
    }
    let shift = HermMatrix::scalar(m.d, &rat(n - 2, n * (n - 1)));
    let weight = rat(1, n - 1);
    let blocks = m.blocks.iter().map(|b| &b.scale(&weight) + &shift).collect();
    let mixed = MagicSquare { n: m.n, d: m.d, blocks };
    let cert = birkhoff_certificate(m)?;
    if !cert.verifies(&mixed) {
        return Err(ModelError::StrategyConflict("Birkhoff certificate does not reproduce the mixed square".into()));
    }
    Ok((mixed, cert))
}

/// When `Σ_k A_{k,π(k)} ⪰ (N-2)/(N-1)·I` for every `π`, returns the POVM
/// `C_π = [Σ_k A_{k,π(k)} - (N-2)/(N-1)·I] / ((N-2)!·N)`; otherwise `None`.
pub fn trace_condition_check<S: Scalar>(m: &MagicSquare<S>) -> Result<Option<SemiclassicalCertificate<S>>, ModelError> {
    let n = m.n;
    if !(2..=MAX_BIRKHOFF_N).contains(&n) {
        return Err(ModelError::ParameterOutOfRange(format!("N = {n} outside 2..={MAX_BIRKHOFF_N}")));
    }
    let floor = HermMatrix::scalar(m.d, &rat(n as i64 - 2, n as i64 - 1));
    let norm = Rational::from_integer(((1..=n.saturating_sub(2)).product::<usize>() * n).into()).recip();
    let mut elements = Vec::new();
    for pi in permutations(n) {
        let diag = HermMatrix::sum(m.d, pi.iter().enumerate().map(|(k, &j)| m.block(k, j)));
        let deficit = &diag - &floor;
        if !is_psd(&deficit) {
            return Ok(None);
        }
        elements.push(deficit.scale(&norm));
    }
    let cert = SemiclassicalCertificate::new(n, Povm::new(elements, PovmMode::Povm)?)?;
    if !cert.verifies(m) {
        return Err(ModelError::StrategyConflict("trace-condition POVM does not reproduce the square".into()));
    }
    Ok(Some(cert))
}
