//! Exact constructions of the reference examples, addressable by name.

use serde_json::{json, Value};

use super::magic::{magic_check, MagicSquare};
use super::ModelError;
use crate::linalg::{int, rat, ExactHerm, FloatHerm, Gq, HermMatrix, Rational};
use crate::tuples::{ExactPovm, ExactTuple, FloatTuple, HermTuple, Povm, PovmMode};

fn real(rows: &[[i64; 2]; 2], den: i64) -> ExactHerm {
    ExactHerm::from_real_rows(&rows.iter().map(|r| r.iter().map(|&x| rat(x, den)).collect()).collect::<Vec<_>>())
        .expect("symmetric")
}

/// `e_1 e_1*`.
pub fn e1() -> ExactHerm {
    real(&[[1, 0], [0, 0]], 1)
}

/// `e_2 e_2*`.
pub fn e2() -> ExactHerm {
    real(&[[0, 0], [0, 1]], 1)
}

/// `f_1 f_1*` with `f_1 = (e_1 + e_2)/√2`.
pub fn f1() -> ExactHerm {
    real(&[[1, 1], [1, 1]], 2)
}

/// `f_2 f_2*` with `f_2 = (e_1 - e_2)/√2`.
pub fn f2() -> ExactHerm {
    real(&[[1, -1], [-1, 1]], 2)
}

fn half(h: &ExactHerm) -> ExactHerm {
    h.scale(&rat(1, 2))
}

pub fn sigma_x() -> ExactHerm {
    real(&[[0, 1], [1, 0]], 1)
}

pub fn sigma_y() -> ExactHerm {
    let i = Gq::i();
    ExactHerm::from_rows(&[vec![Gq::default(), -i.clone()], vec![i, Gq::default()]]).expect("hermitian")
}

pub fn sigma_z() -> ExactHerm {
    real(&[[1, 0], [0, -1]], 1)
}

/// The 4 × 4 qubit magic square whose rows and columns reduce to two compatible POVMs.
pub fn table1() -> MagicSquare<Gq> {
    let z = ExactHerm::zeros(2);
    let h = half(&ExactHerm::identity(2));
    let grid = vec![
        vec![half(&e1()), half(&e2()), z.clone(), h.clone()],
        vec![half(&e2()), half(&e1()), h.clone(), z.clone()],
        vec![z.clone(), h.clone(), half(&f1()), half(&f2())],
        vec![h, z, half(&f2()), half(&f1())],
    ];
    magic_check(grid).expect("valid magic square")
}

/// `(e_1e_1*/2, e_2e_2*/2, f_1f_1*/2, f_2f_2*/2)`.
pub fn table1_joint_povm() -> ExactPovm {
    Povm::new(vec![half(&e1()), half(&e2()), half(&f1()), half(&f2())], PovmMode::Povm).expect("POVM")
}

/// The two POVMs every row and column of the square relabels.
pub fn table1_reduced_povms() -> [ExactPovm; 2] {
    let h = half(&ExactHerm::identity(2));
    let z = ExactHerm::zeros(2);
    [
        Povm::new(vec![half(&e1()), half(&e2()), h.clone(), z.clone()], PovmMode::Povm).expect("POVM"),
        Povm::new(vec![half(&f1()), half(&f2()), h, z], PovmMode::Povm).expect("POVM"),
    ]
}

/// Effects `(A, B, C) = (I/2, e_1e_1*/2, f_1f_1*/2)`.
pub fn shared_effect_effects() -> [ExactHerm; 3] {
    [half(&ExactHerm::identity(2)), half(&e1()), half(&f1())]
}

/// `(A, B, I-A-B)` and `(A, C, I-A-C)`.
pub fn shared_effect_povms() -> [ExactPovm; 2] {
    let [a, b, c] = shared_effect_effects();
    let id = ExactHerm::identity(2);
    [
        Povm::new(vec![a.clone(), b.clone(), &(&id - &a) - &b], PovmMode::Povm).expect("POVM"),
        Povm::new(vec![a.clone(), c.clone(), &(&id - &a) - &c], PovmMode::Povm).expect("POVM"),
    ]
}

/// Joint POVM `J_{ij}` (row `i`: outcome of the first POVM, column `j`: of the second),
/// flattened row-major.
pub fn shared_effect_joint_povm() -> ExactPovm {
    let z = ExactHerm::zeros(2);
    Povm::new(
        vec![
            z.clone(),
            half(&f1()),
            half(&f2()),
            half(&e1()),
            z.clone(),
            z.clone(),
            half(&e2()),
            z.clone(),
            z,
        ],
        PovmMode::Povm,
    )
    .expect("POVM")
}

/// The five matrices obtained from the pyramid `T` certificate at `2/5` on the shared-effect
/// example: `Q_1 = 2/5·I` and `Q_i = (I/2 + u u* + w w*)/10` for the listed pairs.
pub fn pyramid_q_list() -> [ExactHerm; 5] {
    let tenth = |a: &ExactHerm, b: &ExactHerm| (&(&half(&ExactHerm::identity(2)) + a) + b).scale(&rat(1, 10));
    [
        ExactHerm::identity(2).scale(&rat(2, 5)),
        tenth(&f2(), &e2()),
        tenth(&f1(), &e2()),
        tenth(&f2(), &e1()),
        tenth(&f1(), &e1()),
    ]
}

pub fn pauli3() -> ExactTuple {
    HermTuple::new(vec![sigma_x(), sigma_y(), sigma_z()]).expect("common dimension")
}

/// `(c·σ_X, c·σ_Z)`.
pub fn pauli_xz(c: &Rational) -> ExactTuple {
    HermTuple::new(vec![sigma_x().scale(c), sigma_z().scale(c)]).expect("common dimension")
}

/// `diag(1,1,-1,-1) ⊕ σ_Z` and `diag(1,-1,1,-1) ⊕ σ_X`.
pub fn block_pauli_tuple() -> ExactTuple {
    let d1 = HermMatrix::diag(&[int(1), int(1), int(-1), int(-1)]);
    let d2 = HermMatrix::diag(&[int(1), int(-1), int(1), int(-1)]);
    HermTuple::new(vec![d1.direct_sum(&sigma_z()), d2.direct_sum(&sigma_x())]).expect("common dimension")
}

/// The same diagonal parts with the Pauli blocks scaled by `1/√2`; irrational, so float only.
pub fn block_pauli_tuple_scaled() -> FloatTuple {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let d1: FloatHerm = HermMatrix::diag(&[int(1), int(1), int(-1), int(-1)]);
    let d2: FloatHerm = HermMatrix::diag(&[int(1), int(-1), int(1), int(-1)]);
    HermTuple::new(vec![
        d1.direct_sum(&sigma_z().to_float().scale_f64(s)),
        d2.direct_sum(&sigma_x().to_float().scale_f64(s)),
    ])
    .expect("common dimension")
}

/// Named fixture bundles.
#[derive(Clone, Debug, PartialEq)]
pub enum Fixture {
    Table1 { square: MagicSquare<Gq>, joint_povm: ExactPovm, reduced: [ExactPovm; 2] },
    SharedEffectCounterexample { effects: [ExactHerm; 3], povms: [ExactPovm; 2], joint_povm: ExactPovm },
    Pauli3(ExactTuple),
    BlockPauli(ExactTuple),
    PyramidQList([ExactHerm; 5]),
}

const NAMES: [&str; 5] = ["table1", "shared-effect-counterexample", "pauli3", "block-pauli", "pyramid-q-list"];

pub fn fixture_names() -> &'static [&'static str] {
    &NAMES
}

pub fn fixture(name: &str) -> Result<Fixture, ModelError> {
    Ok(match name {
        "table1" => Fixture::Table1 {
            square: table1(),
            joint_povm: table1_joint_povm(),
            reduced: table1_reduced_povms(),
        },
        "shared-effect-counterexample" => Fixture::SharedEffectCounterexample {
            effects: shared_effect_effects(),
            povms: shared_effect_povms(),
            joint_povm: shared_effect_joint_povm(),
        },
        "pauli3" => Fixture::Pauli3(pauli3()),
        "block-pauli" => Fixture::BlockPauli(block_pauli_tuple()),
        "pyramid-q-list" => Fixture::PyramidQList(pyramid_q_list()),
        other => return Err(ModelError::UnknownFixture(other.into())),
    })
}

impl Fixture {
    pub fn to_json(&self) -> Value {
        use crate::linalg::json::herm_to_json;
        match self {
            Fixture::Table1 { square, joint_povm, reduced } => json!({
                "square": square.to_json(),
                "joint_povm": joint_povm.to_json(),
                "reduced": reduced.iter().map(Povm::to_json).collect::<Vec<_>>(),
            }),
            Fixture::SharedEffectCounterexample { effects, povms, joint_povm } => json!({
                "effects": effects.iter().map(herm_to_json).collect::<Vec<_>>(),
                "povms": povms.iter().map(Povm::to_json).collect::<Vec<_>>(),
                "joint_povm": joint_povm.to_json(),
            }),
            Fixture::Pauli3(t) | Fixture::BlockPauli(t) => t.to_json(),
            Fixture::PyramidQList(q) => Value::Array(q.iter().map(herm_to_json).collect()),
        }
    }
}
