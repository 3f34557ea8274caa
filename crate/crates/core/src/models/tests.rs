use super::fixtures::*;
use super::*;
use crate::inclusion::diag_hat;
use crate::linalg::{int, rat, ExactHerm, Gq, HermMatrix};
use crate::polytope::{contains_point, slack_is_consistent};
use crate::tuples::{pmax_check, verify_certificate, ApSettings, HermTuple};

#[test]
fn simplex_p2_is_the_half_interval() {
    let p = simplex_pk(2).unwrap();
    assert_eq!(p.vertices().unwrap(), &[vec![rat(1, 2)], vec![rat(-1, 2)]]);
}

#[test]
fn hypercube_one_is_unit_interval() {
    let p = hypercube(1).unwrap();
    assert_eq!(p.vertices().unwrap(), &[vec![int(-1)], vec![int(1)]]);
    assert_eq!(p.facets().unwrap(), &[vec![int(1)], vec![int(-1)]]);
}

#[test]
fn pyramid_first_extended_column() {
    let p = pyramid().unwrap();
    let ext = p.extended().unwrap();
    assert_eq!(ext.vhat.column(0), vec![rat(2, 3), rat(-1, 3), rat(-1, 3), int(1)]);
    assert_eq!(ext.hhat.row(0), &[int(3), int(0), int(0), int(1)]);
    assert!(slack_is_consistent(&p).unwrap());
}

#[test]
fn birkhoff_two_is_the_half_interval() {
    let p = birkhoff_body(2).unwrap();
    assert_eq!(p.vertices().unwrap(), &[vec![rat(1, 2)], vec![rat(-1, 2)]]);
    assert_eq!(p.num_facets(), Some(2));
}

#[test]
fn birkhoff_counts_and_slack_pattern() {
    for (n, k, r) in [(3usize, 6usize, 9usize), (4, 24, 16)] {
        let p = birkhoff_body(n).unwrap();
        assert_eq!(p.num_vertices(), Some(k));
        assert_eq!(p.num_facets(), Some(r));
        for v in p.vertices().unwrap() {
            for h in p.facets().unwrap() {
                let s = crate::polytope::dot(h, v);
                assert!(s == int(1) || s == int(1 - n as i64));
            }
        }
    }
}

#[test]
fn birkhoff_t_rows_and_entries() {
    let cert = birkhoff_t(3).unwrap();
    let t = cert.t();
    for i in 0..t.rows() {
        let row = t.row(i);
        assert_eq!(row.iter().filter(|x| **x != int(0)).count(), 3);
        assert!(row.iter().all(|x| *x == int(0) || *x == rat(1, 18)));
        assert_eq!(row.iter().sum::<crate::linalg::Rational>(), rat(1, 6));
    }
    assert_eq!(birkhoff_t(2).unwrap().s(), &[int(1)]);
}

#[test]
fn pyramid_t_identity() {
    let cert = pyramid_t().unwrap();
    let p = pyramid().unwrap();
    let ext = p.extended().unwrap();
    let prod = &(&ext.vhat * cert.t()) * &ext.hhat;
    assert_eq!(prod, diag_hat(&[rat(2, 5), rat(2, 5), rat(2, 5)]));
}

#[test]
fn permutations_are_lexicographic() {
    let p = permutations(3);
    assert_eq!(p.len(), 6);
    assert_eq!(p[0], vec![0, 1, 2]);
    assert_eq!(p[5], vec![2, 1, 0]);
}

fn scalar_grid(rows: &[&[i64]], den: i64) -> Vec<Vec<ExactHerm>> {
    rows.iter().map(|r| r.iter().map(|&x| ExactHerm::scalar(1, &rat(x, den))).collect()).collect()
}

#[test]
fn magic_check_flags_bad_row() {
    let mut grid = scalar_grid(&[&[1, 0], &[0, 1]], 1);
    grid[0][0] = ExactHerm::scalar(1, &rat(1, 2));
    match magic_check(grid) {
        Err(ModelError::NotMagic(MagicViolation::Row(0))) => {}
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn table1_is_magic_and_in_pmax() {
    let m = table1();
    let t = truncate_shift(&m);
    let report = pmax_check(&birkhoff_body(4).unwrap(), &t).unwrap();
    assert!(report.member);
    assert_eq!(tilde_map(&t, 4).unwrap(), m.grid());
}

#[test]
fn uniform_square_truncates_to_zero() {
    let grid = scalar_grid(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]], 3);
    let m = magic_check(grid).unwrap();
    assert!(truncate_shift(&m).elements().iter().all(HermMatrix::is_zero));
    let (mixed, cert) = semiclassical_mix(&m).unwrap();
    assert_eq!(mixed, m);
    assert!(cert.verifies(&m));
}

#[test]
fn table1_pruning_is_infeasible() {
    let out = semiclassical_check(&table1(), Strategy::ExactPruning).unwrap();
    assert!(matches!(out, SemiclassicalOutcome::ExactlyInfeasible(_)), "{out:?}");
}

#[test]
fn table1_mix_is_certified() {
    let (mixed, cert) = semiclassical_mix(&table1()).unwrap();
    assert!(cert.verifies(&mixed));
    let out = semiclassical_check(&mixed, Strategy::LpSynthesis).unwrap();
    assert!(matches!(out, SemiclassicalOutcome::Certified(_)));
}

#[test]
fn permutation_square_has_point_mass() {
    let grid = scalar_grid(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]], 1);
    let m = magic_check(grid).unwrap();
    match semiclassical_check(&m, Strategy::ExactPruning).unwrap() {
        SemiclassicalOutcome::Certified(c) => {
            let nonzero: Vec<usize> =
                c.povm().elements().iter().enumerate().filter(|(_, q)| !q.is_zero()).map(|(i, _)| i).collect();
            assert_eq!(nonzero.len(), 1);
            assert_eq!(permutations(3)[nonzero[0]], vec![1, 2, 0]);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn trace_condition_example() {
    let m = magic_check(scalar_grid(&[&[2, 0, 0], &[0, 1, 1], &[0, 1, 1]], 2)).unwrap();
    let cert = trace_condition_check(&m).unwrap().expect("condition holds");
    assert!(cert.verifies(&m));
    assert!(mixing_preimage(&m).is_none());
    assert!(trace_condition_check(&table1()).unwrap().is_none());
}

#[test]
fn shared_effect_counterexample_refuted() {
    let [a, b, c] = shared_effect_effects();
    let report = shared_effect_check(&a, &b, &c, ApSettings::default()).unwrap();
    assert!(report.g_operators);
    assert!(report.pmax.member);
    assert!(matches!(report.restricted, RestrictedVerdict::ExactlyInfeasible(_)));
    assert!(report.exact());
}

#[test]
fn shared_effect_barycenter_feasible() {
    let third = ExactHerm::scalar(2, &rat(1, 3));
    let report = shared_effect_check(&third, &third, &third, ApSettings::default()).unwrap();
    assert!(matches!(report.restricted, RestrictedVerdict::Feasible { .. }));
}

#[test]
fn pyramid_certificate_reproduces_q_list() {
    let p = pyramid().unwrap();
    let [a, b, c] = shared_effect_effects();
    let third = ExactHerm::scalar(2, &rat(1, 3));
    let x = HermTuple::new(vec![&a - &third, &b - &third, &c - &third]).unwrap();
    let cert = crate::tuples::certificate_from_scaling(&pyramid_t().unwrap(), &p, &x).unwrap();
    assert_eq!(cert.povm.elements(), &pyramid_q_list());
    assert!(verify_certificate(&p, &x.scale(&rat(2, 5)), &cert.povm).unwrap());
}

#[test]
fn fixtures_are_consistent() {
    for name in fixture_names() {
        fixture(name).unwrap().to_json();
    }
    assert!(fixture("nope").is_err());
    let joint = table1_joint_povm();
    for r in table1_reduced_povms() {
        assert!(crate::tuples::find_coarse_graining(&joint, &r).is_some());
    }
    assert_eq!(f1(), ExactHerm::from_real_rows(&[vec![rat(1, 2), rat(1, 2)], vec![rat(1, 2), rat(1, 2)]]).unwrap());
    let pm = pmax_check(&hypercube(3).unwrap(), &pauli3()).unwrap();
    assert!(pm.member);
    let rm = pmax_check(&hypercube(2).unwrap(), &block_pauli_tuple()).unwrap();
    assert!(rm.member);
    let _ = Gq::i();
    assert!(contains_point(&pyramid().unwrap(), &[int(0), int(0), int(0)]).unwrap().is_inside());
}

#[test]
fn one_by_one_square_is_rejected_by_mixing() {
    let m = magic_check(vec![vec![ExactHerm::identity(2)]]).unwrap();
    assert!(matches!(semiclassical_mix(&m), Err(ModelError::ParameterOutOfRange(_))));
    assert!(matches!(trace_condition_check(&m), Err(ModelError::ParameterOutOfRange(_))));
}
