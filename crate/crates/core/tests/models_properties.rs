mod common;

use common::*;
use polycompat::linalg::{ExactHerm, HermMatrix};
use polycompat::models::{
    birkhoff_body, magic_check, permutations, semiclassical_check, semiclassical_mix, shared_effect_check,
    trace_condition_check, truncate_shift, MagicSquare, RestrictedVerdict, SemiclassicalCertificate,
    SemiclassicalOutcome, Strategy,
};
use polycompat::tuples::{pmax_check, ApSettings};
use polycompat::Gq;
use proptest::prelude::*;

/// `Σ_π P_π ⊗ Q_π` for a random POVM `Q` over permutations.
fn semiclassical_square(seed: u64, n: usize, d: usize) -> (MagicSquare<Gq>, SemiclassicalCertificate<Gq>) {
    let perms = permutations(n);
    let q = random_povm(&mut rng(seed), d, perms.len());
    let grid: Vec<Vec<ExactHerm>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| HermMatrix::sum(d, perms.iter().zip(q.elements()).filter(|(p, _)| p[x] == y).map(|(_, m)| m)))
                .collect()
        })
        .collect();
    (magic_check(grid).unwrap(), SemiclassicalCertificate::new(n, q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn semiclassical_squares_are_magic_and_in_pmax(seed in any::<u64>(), n in 2usize..=3, d in 1usize..=2) {
        let (m, cert) = semiclassical_square(seed, n, d);
        prop_assert!(cert.verifies(&m));
        prop_assert!(pmax_check(&birkhoff_body(n).unwrap(), &truncate_shift(&m)).unwrap().member);
        for strategy in [Strategy::ExactPruning, Strategy::LpSynthesis] {
            let out = semiclassical_check(&m, strategy).unwrap();
            prop_assert!(!matches!(out, SemiclassicalOutcome::ExactlyInfeasible(_)), "{}", strategy.name());
        }
    }

    #[test]
    fn mixing_always_certifies(seed in any::<u64>(), n in 2usize..=3, d in 1usize..=2) {
        let (m, _) = semiclassical_square(seed, n, d);
        let (mixed, cert) = semiclassical_mix(&m).unwrap();
        prop_assert!(cert.verifies(&mixed));
        if n == 2 {
            prop_assert_eq!(mixed, m);
        }
    }

    #[test]
    fn trace_condition_certificates_reverify(seed in any::<u64>(), d in 1usize..=2) {
        let (m, _) = semiclassical_square(seed, 3, d);
        let (mixed, _) = semiclassical_mix(&m).unwrap();
        for square in [m, mixed] {
            if let Some(cert) = trace_condition_check(&square).unwrap() {
                prop_assert!(cert.verifies(&square));
            }
        }
    }

    #[test]
    fn restricted_pattern_from_a_joint_povm_is_feasible(seed in any::<u64>()) {
        let q = random_povm(&mut rng(seed), 2, 5);
        let e = q.elements();
        let a = e[0].clone();
        let b = &e[3] + &e[4];
        let c = &e[2] + &e[4];
        let report = shared_effect_check(&a, &b, &c, ApSettings::default()).unwrap();
        prop_assert!(report.g_operators);
        prop_assert!(
            matches!(report.restricted, RestrictedVerdict::Feasible { .. } | RestrictedVerdict::NumericallyFeasible(_)),
            "{}", report.restricted.label()
        );
    }
}
