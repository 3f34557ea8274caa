use super::*;
use crate::linalg::{int, rat, ExactHerm};
use crate::polytope::Polytope;

fn interval() -> Polytope {
    Polytope::from_facets(vec![vec![int(1)], vec![int(-1)]]).unwrap()
}

fn square() -> Polytope {
    Polytope::from_vertices(vec![
        vec![int(1), int(1)],
        vec![int(1), int(-1)],
        vec![int(-1), int(1)],
        vec![int(-1), int(-1)],
    ])
    .unwrap()
}

fn sx() -> ExactHerm {
    ExactHerm::from_real_rows(&[vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap()
}

fn sz() -> ExactHerm {
    ExactHerm::diag(&[int(1), int(-1)])
}

#[test]
fn pmax_margin_for_scaled_pauli() {
    let a = ExactTuple::new(vec![sx().scale(&int(2))]).unwrap();
    let r = pmax_check(&interval(), &a).unwrap();
    assert!(!r.member);
    assert!(r.exact);
    let worst = r.margins.iter().copied().fold(f64::INFINITY, f64::min);
    assert!((worst + 1.0).abs() < 1e-12);
}

#[test]
fn simplex_certificate_on_interval() {
    let p = interval();
    let a = ExactTuple::new(vec![sz()]).unwrap();
    let cert = simplex_certificate(&p, &a).unwrap();
    let half = rat(1, 2);
    let plus = (&ExactHerm::identity(2) + &sz()).scale(&half);
    let minus = (&ExactHerm::identity(2) - &sz()).scale(&half);
    // Vertices are sorted: (-1) then (1).
    assert_eq!(cert.povm.elements(), &[minus, plus]);
    assert!(verify_certificate(&p, &a, &cert.povm).unwrap());
}

#[test]
fn verification_detects_broken_certificates() {
    let p = square();
    let a = ExactTuple::zeros(2, 2);
    let quarter = ExactHerm::scalar(2, &rat(1, 4));
    let good = Povm::new(vec![quarter.clone(); 4], PovmMode::Povm).unwrap();
    assert!(verify_certificate(&p, &a, &good).unwrap());
    let bad = Povm::new_unchecked(vec![ExactHerm::zeros(2), quarter.clone(), quarter.clone(), quarter], PovmMode::Povm);
    assert_eq!(certificate_defect(&p, &a, &bad).unwrap(), Some(CertificateDefect::NotNormalized));
}

#[test]
fn subpovm_completion_on_square() {
    let p = square();
    let q = rat(1, 4);
    let up = (&ExactHerm::identity(2) + &sz()).scale(&q);
    let down = (&ExactHerm::identity(2) - &sz()).scale(&q);
    let z = ExactHerm::zeros(2);
    // Vertices sorted: (-1,-1), (-1,1), (1,-1), (1,1).
    let sub = Povm::new(vec![up, z.clone(), z, down], PovmMode::SubPovm).unwrap();
    let full = complete_subpovm(&p, &sub).unwrap();
    for (c, s) in full.elements().iter().zip(sub.elements()) {
        assert_eq!(c, &(s + &ExactHerm::scalar(2, &rat(1, 8))));
    }
    let complete = Povm::new(full.elements().to_vec(), PovmMode::SubPovm).unwrap();
    assert_eq!(complete_subpovm(&p, &complete).unwrap().elements(), full.elements());
}

#[test]
fn numeric_search_zero_tuple_first_iteration() {
    let out = pmin_search_ap(&square(), &ExactTuple::zeros(2, 2), ApSettings::default()).unwrap();
    match out {
        ApOutcome::Feasible { iterations, .. } => assert_eq!(iterations, 1),
        other => panic!("expected feasible, got {other:?}"),
    }
}

#[test]
fn conversions_round_trip() {
    let e = vec![ExactHerm::scalar(2, &rat(1, 2)), (&ExactHerm::identity(2) + &sz()).scale(&rat(1, 2))];
    let a = effects_to_tuple(&e).unwrap();
    assert!(a.elements()[0].is_zero());
    assert_eq!(a.elements()[1], sz());
    assert_eq!(tuple_to_effects(&a), e);

    let trivial = Povm::new(vec![ExactHerm::scalar(2, &rat(1, 3)); 3], PovmMode::Povm).unwrap();
    let t = multioutcome_to_tuple(&[trivial.clone(), trivial.clone()]).unwrap();
    assert_eq!(t.g(), 4);
    assert!(t.elements().iter().all(|x| x.is_zero()));
    assert_eq!(multioutcome_from_tuple(&t, &[3, 3]).unwrap(), vec![trivial.clone(), trivial]);
}

#[test]
fn pruning_full_rank_targets_undecided() {
    let sys = BlockConstraintSystem::new(
        2,
        vec!["a".into(), "b".into()],
        vec![BlockEquation { target: ExactHerm::identity(2), terms: vec![0, 1] }],
    )
    .unwrap();
    assert!(matches!(range_pruned_feasibility(&sys), PruneOutcome::Undecided { .. }));
}

#[test]
fn pruning_detects_rank_contradiction() {
    let e1 = ExactHerm::diag(&[int(1), int(0)]);
    let f1 = ExactHerm::from_real_rows(&[vec![rat(1, 2), rat(1, 2)], vec![rat(1, 2), rat(1, 2)]]).unwrap();
    // q0 + q1 = e1e1*, q1 = f1f1*: the second forces q1 outside the range of the first.
    let sys = BlockConstraintSystem::new(
        2,
        vec!["q0".into(), "q1".into()],
        vec![
            BlockEquation { target: e1, terms: vec![0, 1] },
            BlockEquation { target: f1, terms: vec![1] },
        ],
    )
    .unwrap();
    assert!(matches!(range_pruned_feasibility(&sys), PruneOutcome::ExactlyInfeasible(_)));
}

#[test]
fn pruning_solves_rank_one_systems() {
    let e1 = ExactHerm::diag(&[int(1), int(0)]);
    let e2 = ExactHerm::diag(&[int(0), int(1)]);
    let sys = BlockConstraintSystem::new(
        2,
        vec!["a".into(), "b".into(), "c".into()],
        vec![
            BlockEquation { target: e1.scale(&rat(1, 2)), terms: vec![0, 1] },
            BlockEquation { target: &e1.scale(&rat(1, 2)) + &e2, terms: vec![1, 2] },
            BlockEquation { target: e1.scale(&rat(1, 3)), terms: vec![0] },
        ],
    )
    .unwrap();
    match range_pruned_feasibility(&sys) {
        PruneOutcome::ReducedFeasible(x) => assert!(sys.is_solution(&x)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn json_round_trips() {
    let a = ExactTuple::new(vec![sx(), sz()]).unwrap();
    assert_eq!(ExactTuple::from_json(&a.to_json()).unwrap(), a);
    let p = Povm::new(vec![ExactHerm::scalar(2, &rat(1, 2)); 2], PovmMode::Povm).unwrap();
    assert_eq!(ExactPovm::from_json(&p.to_json()).unwrap(), p);
    let c = CompatCertificate { polytope_hash: "abc".into(), povm: p };
    assert_eq!(CompatCertificate::from_json(&c.to_json()).unwrap(), c);
}
