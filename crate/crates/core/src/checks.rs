//! Regression cases over the reference examples, each a list of named pass/fail checks.

use num_traits::One;
use serde_json::{json, Value};

use crate::hypergraph::{g_operators_check, pyramid_hypergraph};
use crate::inclusion::{lp_feasible_scaling, lp_max_uniform_scaling};
use crate::linalg::{rat, ExactHerm, HermMatrix, Rational};
use crate::models::fixtures::{
    pauli_xz, pyramid_q_list, shared_effect_effects, shared_effect_joint_povm, shared_effect_povms, table1,
    table1_joint_povm,
};
use crate::models::{
    birkhoff_body, birkhoff_t, hypercube, pyramid, pyramid_t, semiclassical_check, shared_effect_check, simplex_pk,
    truncate_shift, RestrictedVerdict, SemiclassicalOutcome, Strategy,
};
use crate::polytope::{cartesian_product, Polytope};
use crate::tuples::{
    certificate_from_scaling, coarse_grain, direct_sum_embedding_certificate, find_coarse_graining,
    marginal_certificates, mixing_certificate, multioutcome_to_tuple, pmax_check, simplex_certificate,
    tensor_embedding_certificate, verify_certificate, ApSettings, ExactPovm, ExactTuple, HermTuple, Povm, PovmMode,
};

/// Margin tolerance for float facet tests.
pub const MARGIN_TOL: f64 = 1e-9;

pub const CASES: [&str; 6] =
    ["birkhoff-T", "pyramid-T", "table1", "shared-effect", "simplex-equality", "easy-consequences"];

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseReport {
    pub case: String,
    pub checks: Vec<Check>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

struct Recorder(Vec<Check>);

impl Recorder {
    fn check(&mut self, name: impl Into<String>, outcome: Result<bool, String>, detail: impl Into<String>) {
        let (passed, detail) = match outcome {
            Ok(p) => (p, detail.into()),
            Err(e) => (false, format!("error: {e}")),
        };
        self.0.push(Check { name: name.into(), passed, detail });
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Runs the named case; `None` for an unknown name.
pub fn run_case(name: &str) -> Option<CaseReport> {
    let checks = match name {
        "birkhoff-T" => birkhoff_t_case(),
        "pyramid-T" => pyramid_t_case(),
        "table1" => table1_case(),
        "shared-effect" => shared_effect_case(),
        "simplex-equality" => simplex_equality_case(),
        "easy-consequences" => easy_consequences_case(),
        _ => return None,
    };
    Some(CaseReport { case: name.to_string(), checks })
}

fn birkhoff_t_case() -> Vec<Check> {
    let mut r = Recorder(Vec::new());
    for n in 2..=4 {
        r.check(
            format!("N={n}"),
            birkhoff_t(n).map(|c| c.s().iter().all(|s| *s == rat(1, n as i64 - 1))).map_err(err),
            format!("exact identity with s = 1/{}", n - 1),
        );
    }
    r.0
}

fn pyramid_t_case() -> Vec<Check> {
    let mut r = Recorder(Vec::new());
    r.check("explicit T", pyramid_t().map(|_| true).map_err(err), "V̂TĤ = diag(2/5,2/5,2/5,1)");
    let feasible = pyramid()
        .map_err(err)
        .and_then(|p| lp_feasible_scaling(&p, &[rat(2, 5), rat(2, 5), rat(2, 5)]).map_err(err))
        .map(|c| c.is_some());
    r.check("LP feasibility at 2/5", feasible, "exact simplex");
    r.0
}

fn table1_case() -> Vec<Check> {
    let mut r = Recorder(Vec::new());
    let m = table1();
    r.check("magic square", Ok(true), "rows and columns sum to I, blocks PSD");
    let pmax = birkhoff_body(4).map_err(err).and_then(|b| pmax_check(&b, &truncate_shift(&m)).map_err(err));
    let detail = pmax.as_ref().map(|p| format!("min margin {:.12e}", p.margins.iter().cloned().fold(f64::INFINITY, f64::min)));
    r.check(
        "shifted truncation in (B_4)_max",
        pmax.as_ref().map(|p| p.member && p.margins.iter().all(|&x| x >= -MARGIN_TOL)).map_err(Clone::clone),
        detail.unwrap_or_default(),
    );
    let joint = table1_joint_povm();
    let all_lines: Vec<Povm<_>> = (0..4).map(|i| m.row_povm(i)).chain((0..4).map(|j| m.column_povm(j))).collect();
    let compatible = all_lines.iter().all(|p| find_coarse_graining(&joint, p).is_some());
    r.check("rows and columns post-process from the joint POVM", Ok(compatible), "8 deterministic coarse-grainings");
    let verdict = semiclassical_check(&m, Strategy::ExactPruning).map_err(err);
    r.check(
        "not semiclassical",
        verdict.as_ref().map(|o| matches!(o, SemiclassicalOutcome::ExactlyInfeasible(_))).map_err(Clone::clone),
        verdict.map(|o| o.label().to_string()).unwrap_or_default(),
    );
    r.0
}

fn shared_effect_case() -> Vec<Check> {
    let mut r = Recorder(Vec::new());
    let [a, b, c] = shared_effect_effects();
    let id = ExactHerm::identity(2);
    let ops = vec![a.clone(), b.clone(), &(&id - &a) - &b, c.clone(), &(&id - &a) - &c];
    r.check("G-operators", g_operators_check(&pyramid_hypergraph(), &ops).map_err(err), "two 3-outcome POVMs");
    let joint = shared_effect_joint_povm();
    let [p1, p2] = shared_effect_povms();
    let rows = coarse_grain(&joint, &[0, 0, 0, 1, 1, 1, 2, 2, 2], 3).map(|p| p == p1);
    let cols = coarse_grain(&joint, &[0, 1, 2, 0, 1, 2, 0, 1, 2], 3).map(|p| p == p2);
    r.check(
        "unrestricted joint POVM",
        rows.and_then(|x| cols.map(|y| x && y)).map_err(err),
        "row and column marginals",
    );
    let report = shared_effect_check(&a, &b, &c, ApSettings::default()).map_err(err);
    r.check(
        "restricted pattern infeasible",
        report.as_ref().map(|rep| matches!(rep.restricted, RestrictedVerdict::ExactlyInfeasible(_))).map_err(Clone::clone),
        report.map(|rep| rep.restricted.label().to_string()).unwrap_or_default(),
    );
    let third = ExactHerm::scalar(2, &rat(1, 3));
    let q = pyramid().map_err(err).and_then(|p| {
        let x = HermTuple::new(vec![&a - &third, &b - &third, &c - &third]).map_err(err)?;
        let cert = certificate_from_scaling(&pyramid_t().map_err(err)?, &p, &x).map_err(err)?;
        Ok(cert.povm.elements() == pyramid_q_list().as_slice())
    });
    r.check("pyramid certificate at 2/5 gives the Q list", q, "exact equality of all five matrices");
    r.0
}

fn simplex_equality_case() -> Vec<Check> {
    let mut r = Recorder(Vec::new());
    let mut models: Vec<Result<Polytope, String>> = vec![hypercube(1).map_err(err)];
    models.extend((2..=5).map(|k| simplex_pk(k).map_err(err)));
    models.push(birkhoff_body(2).map_err(err));
    for p in models {
        let (name, outcome) = match p {
            Ok(p) => (p.label().to_string(), lp_max_uniform_scaling(&p).map(|(s, _)| s.is_one()).map_err(err)),
            Err(e) => ("model".into(), Err(e)),
        };
        r.check(format!("LP optimum 1 on {name}"), outcome, "exact");
    }
    let member = sample_povm_tuple();
    let cert = simplex_pk(3)
        .map_err(err)
        .and_then(|p| simplex_certificate(&p, &member).and_then(|c| verify_certificate(&p, &member, &c.povm)).map_err(err));
    r.check("simplex certificate for a P_max member", cert, "P_3, qubit");
    r.0
}

/// Three-outcome qubit POVM `(e_1e_1*/2, f_1f_1*/2, rest)` as a `P_3` tuple.
fn sample_povm() -> ExactPovm {
    use crate::models::fixtures::{e1, f1};
    let half = rat(1, 2);
    let (x, y) = (e1().scale(&half), f1().scale(&half));
    let rest = &(&ExactHerm::identity(2) - &x) - &y;
    Povm::new(vec![x, y, rest], PovmMode::Povm).expect("POVM")
}

fn sample_povm_tuple() -> ExactTuple {
    multioutcome_to_tuple(&[sample_povm()]).expect("valid")
}

fn easy_consequences_case() -> Vec<Check> {
    let mut r = Recorder(Vec::new());
    let outcome = (|| -> Result<Vec<(String, bool)>, String> {
        let p1 = simplex_pk(3).map_err(err)?;
        let p2 = hypercube(1).map_err(err)?;
        let product = cartesian_product(&p1, &p2).map_err(err)?;
        let a1 = sample_povm_tuple();
        let a2 = HermTuple::new(vec![pauli_xz(&rat(1, 2)).elements()[0].clone()]).map_err(err)?;
        let c1 = simplex_certificate(&p1, &a1).map_err(err)?.povm;
        let c2 = simplex_certificate(&p2, &a2).map_err(err)?.povm;
        let mut out = Vec::new();

        let joint = a1.concat(&a2).map_err(err)?;
        let both = pmax_check(&p1, &a1).map_err(err)?.member && pmax_check(&p2, &a2).map_err(err)?.member;
        out.push(("product P_max iff factors".into(), pmax_check(&product, &joint).map_err(err)?.member == both));
        let far = a1.concat(&a2.scale(&Rational::from_integer(3.into()))).map_err(err)?;
        out.push(("product P_max fails with a failing factor".into(), !pmax_check(&product, &far).map_err(err)?.member));

        let half = rat(1, 2);
        let mixed = mixing_certificate(&p1, &c1, &half, &p2, &c2, &half).map_err(err)?;
        let mixed_tuple = a1.scale(&half).concat(&a2.scale(&half)).map_err(err)?;
        out.push(("mixing certificate".into(), verify_certificate(&product, &mixed_tuple, &mixed.povm).map_err(err)?));

        let (m1, m2) = marginal_certificates(&p1, &p2, &mixed.povm).map_err(err)?;
        let marg = verify_certificate(&p1, &a1.scale(&half), &m1.povm).map_err(err)?
            && verify_certificate(&p2, &a2.scale(&half), &m2.povm).map_err(err)?;
        out.push(("marginals of a product certificate".into(), marg));

        let ds = direct_sum_embedding_certificate(&p1, &c1, &p2, &c2).map_err(err)?;
        let (z1, z2) = (HermMatrix::zeros(a1.d()), HermMatrix::zeros(a2.d()));
        let ds_tuple = HermTuple::new(
            a1.elements().iter().map(|x| x.direct_sum(&z2)).chain(a2.elements().iter().map(|x| z1.direct_sum(x))).collect(),
        )
        .map_err(err)?;
        out.push(("direct-sum embedding".into(), verify_certificate(&product, &ds_tuple, &ds.povm).map_err(err)?));

        let tp = tensor_embedding_certificate(&p1, &c1, &p2, &c2).map_err(err)?;
        let (i1, i2) = (HermMatrix::identity(a1.d()), HermMatrix::identity(a2.d()));
        let tp_tuple = HermTuple::new(
            a1.elements().iter().map(|x| x.kron(&i2)).chain(a2.elements().iter().map(|x| i1.kron(x))).collect(),
        )
        .map_err(err)?;
        out.push(("tensor embedding".into(), verify_certificate(&product, &tp_tuple, &tp.povm).map_err(err)?));
        Ok(out)
    })();
    match outcome {
        Ok(list) => {
            for (name, ok) in list {
                r.check(name, Ok(ok), "exact");
            }
        }
        Err(e) => r.check("setup", Err(e), ""),
    }
    r.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_case_passes() {
        for case in CASES {
            let report = run_case(case).unwrap();
            assert!(report.passed(), "{}", report.to_json());
        }
        assert!(run_case("nope").is_none());
    }
}
