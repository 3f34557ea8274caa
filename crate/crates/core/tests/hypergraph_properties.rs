mod common;

use common::*;
use polycompat::hypergraph::{
    certificate_from_decomposition, g_decomposition, g_operators_check, g_operators_from_tuple, pi0_basis,
    polytope_of, pyramid_chart, pyramid_hypergraph, tuple_from_g_operators, validate, Hypergraph,
    HypergraphChart,
};
use polycompat::polytope::{contains_point, Containment};
use polycompat::tuples::{pmax_check, verify_certificate, CompatCertificate};
use proptest::prelude::*;
use rand::Rng;

fn charts() -> Vec<(Hypergraph, HypergraphChart)> {
    let pairs = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
    let triangle = Hypergraph::new(6, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 0]]).unwrap();
    let mut out = vec![(pyramid_hypergraph(), pyramid_chart())];
    for g in [pairs, triangle] {
        let chart = pi0_basis(&validate(&g).unwrap());
        out.push((g, chart));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn pmax_membership_matches_g_operators(seed in any::<u64>(), which in 0usize..3, d in 1usize..=3, stretch in 1i64..=4) {
        let (g, chart) = &charts()[which];
        let p = polytope_of(g, chart).unwrap().complete().unwrap();
        let b = random_pmax_member(&mut rng(seed), &p, d).scale(&polycompat::rat(stretch, 2));
        let ops = g_operators_from_tuple(chart, &b).unwrap();
        prop_assert_eq!(pmax_check(&p, &b).unwrap().member, g_operators_check(g, &ops).unwrap());
        prop_assert_eq!(tuple_from_g_operators(chart, &ops).unwrap(), b);
    }

    #[test]
    fn certificates_map_to_decompositions_and_back(seed in any::<u64>(), which in 0usize..3, d in 1usize..=3) {
        let (g, chart) = &charts()[which];
        let p = polytope_of(g, chart).unwrap().complete().unwrap();
        let (b, povm) = random_pmin_member(&mut rng(seed), &p, d);
        let cert = CompatCertificate { polytope_hash: p.content_hash(), povm };
        prop_assert!(verify_certificate(&p, &b, &cert.povm).unwrap());
        let ops = g_operators_from_tuple(chart, &b).unwrap();
        let dec = g_decomposition(&p, chart, &cert).unwrap();
        prop_assert!(dec.verifies(g, &ops));
        prop_assert_eq!(certificate_from_decomposition(&p, chart, &dec).unwrap(), cert);
    }

    #[test]
    fn chart_polytopes_contain_the_origin(seed in any::<u64>()) {
        let mut r = rng(seed);
        let nv = r.gen_range(2..=6);
        let edges: Vec<Vec<usize>> = (0..r.gen_range(1..=3))
            .map(|_| (0..nv).filter(|_| r.gen_bool(0.5)).collect::<Vec<_>>())
            .filter(|e| !e.is_empty())
            .collect();
        let covered: Vec<usize> = (0..nv).filter(|v| edges.iter().any(|e| e.contains(v))).collect();
        prop_assume!(covered.len() == nv);
        let Ok(g) = Hypergraph::new(nv, edges) else { return Ok(()) };
        let Ok(valid) = validate(&g) else { return Ok(()) };
        let chart = pi0_basis(&valid);
        prop_assume!(chart.dim() > 0);
        let p = polytope_of(&g, &chart).unwrap();
        let zero = vec![polycompat::int(0); p.dim()];
        prop_assert!(matches!(contains_point(&p, &zero).unwrap(), Containment::Inside));
        for h in p.facets().unwrap() {
            prop_assert!(h.iter().any(|x| *x != polycompat::int(0)));
        }
    }
}
