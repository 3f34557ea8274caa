mod common;

use common::*;
use polycompat::inclusion::lp_max_uniform_scaling;
use polycompat::linalg::{ExactHerm, HermMatrix};
use polycompat::models::{birkhoff_body, birkhoff_t, hypercube, pyramid, pyramid_t, simplex_pk};
use polycompat::polytope::{cartesian_product, Polytope};
use polycompat::tuples::{
    certificate_from_scaling, complete_subpovm, pmax_check, range_pruned_feasibility, simplex_certificate,
    verify_certificate, BlockConstraintSystem, BlockEquation, Povm, PovmMode, PruneOutcome,
};
use polycompat::ScalingCertificate;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn certified_models() -> Vec<(Polytope, ScalingCertificate)> {
    let mut out = vec![
        (birkhoff_body(3).unwrap(), birkhoff_t(3).unwrap()),
        (pyramid().unwrap(), pyramid_t().unwrap()),
    ];
    for p in [hypercube(2).unwrap(), simplex_pk(3).unwrap()] {
        let (_, cert) = lp_max_uniform_scaling(&p).unwrap();
        out.push((p, cert));
    }
    out
}

fn simplices() -> Vec<Polytope> {
    vec![hypercube(1).unwrap(), simplex_pk(3).unwrap(), simplex_pk(4).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scaling_certificates_produce_verified_povms(seed in any::<u64>(), model in 0usize..4, d in 2usize..=3) {
        let (p, cert) = &certified_models()[model];
        let a = random_pmax_member(&mut rng(seed), p, d);
        let c = certificate_from_scaling(cert, p, &a).unwrap();
        prop_assert!(verify_certificate(p, &a.scale_each(cert.s()), &c.povm).unwrap());
    }

    #[test]
    fn simplex_members_of_pmax_are_compatible(seed in any::<u64>(), which in 0usize..3, d in 2usize..=3) {
        let p = &simplices()[which];
        let a = random_pmax_member(&mut rng(seed), p, d);
        let c = simplex_certificate(p, &a).unwrap();
        prop_assert!(verify_certificate(p, &a, &c.povm).unwrap());
    }

    #[test]
    fn completion_preserves_the_tuple(seed in any::<u64>(), d in 1usize..=3) {
        let p = hypercube(2).unwrap();
        let mut r = rng(seed);
        let full = random_povm(&mut r, d, 5);
        let sub = Povm::new(full.elements()[..4].to_vec(), PovmMode::SubPovm).unwrap();
        let completed = complete_subpovm(&p, &sub).unwrap();
        prop_assert_eq!(completed.mode(), PovmMode::Povm);
        prop_assert_eq!(tuple_of(&p, &completed), tuple_of(&p, &sub));
    }

    #[test]
    fn product_membership_factorizes(seed in any::<u64>(), d in 2usize..=3, stretch in 1i64..=4) {
        let mut r = rng(seed);
        let (p1, p2) = (simplex_pk(3).unwrap(), hypercube(2).unwrap());
        let a1 = random_pmax_member(&mut r, &p1, d).scale(&polycompat::rat(stretch, 2));
        let a2 = random_pmax_member(&mut r, &p2, d).scale(&polycompat::rat(5 - stretch, 2));
        let product = cartesian_product(&p1, &p2).unwrap();
        let joint = pmax_check(&product, &a1.concat(&a2).unwrap()).unwrap().member;
        let separate = pmax_check(&p1, &a1).unwrap().member && pmax_check(&p2, &a2).unwrap().member;
        prop_assert_eq!(joint, separate);
    }

    #[test]
    fn pruning_never_refutes_a_solvable_system(seed in any::<u64>(), d in 1usize..=3, rank_one in any::<bool>()) {
        let mut r = rng(seed);
        let k = 5;
        let unknowns: Vec<ExactHerm> = if rank_one {
            // rank-one unknowns exercise the reduction to a scalar system
            (0..k).map(|i| {
                let mut u = vec![polycompat::Gq::default(); d];
                u[i % d] = polycompat::Gq::real(polycompat::int(1));
                ExactHerm::outer(&u).scale(&random_fraction(&mut r, 4))
            }).collect()
        } else {
            random_povm(&mut r, d, k).elements().to_vec()
        };
        let mut equations = Vec::new();
        for _ in 0..r.gen_range(1..=4) {
            let mut terms: Vec<usize> = (0..k).collect();
            terms.shuffle(&mut r);
            terms.truncate(r.gen_range(1..=k));
            terms.sort();
            let target = HermMatrix::sum(d, terms.iter().map(|&t| &unknowns[t]));
            equations.push(BlockEquation { target, terms });
        }
        let all: Vec<usize> = (0..k).collect();
        equations.push(BlockEquation { target: HermMatrix::sum(d, &unknowns), terms: all });
        let sys = BlockConstraintSystem::new(d, (0..k).map(|i| format!("Q{i}")).collect(), equations).unwrap();
        prop_assert!(sys.is_solution(&unknowns));
        match range_pruned_feasibility(&sys) {
            PruneOutcome::ExactlyInfeasible(w) => prop_assert!(false, "refuted a solvable system: {w:?}"),
            PruneOutcome::ReducedFeasible(q) => prop_assert!(sys.is_solution(&q)),
            PruneOutcome::Undecided { .. } => {}
        }
    }
}
