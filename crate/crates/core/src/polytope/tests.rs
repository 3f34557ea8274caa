use super::*;
use crate::linalg::{int, rat};
use proptest::prelude::*;

fn pts(raw: &[&[i64]]) -> Vec<Vec<Rational>> {
    raw.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect()
}

fn square() -> Polytope {
    Polytope::from_vertices(pts(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])).unwrap()
}

#[test]
fn interval_from_vertices() {
    let b2 = Polytope::from_vertices(vec![vec![rat(1, 2)], vec![rat(-1, 2)]]).unwrap();
    assert_eq!(b2.vertices().unwrap(), &[vec![rat(-1, 2)], vec![rat(1, 2)]]);
    assert_eq!(b2.facets().unwrap(), &[vec![int(-2)], vec![int(2)]]);
    assert_eq!(polar(&b2).vertices().unwrap(), &[vec![int(-2)], vec![int(2)]]);
}

#[test]
fn interior_point_is_dropped() {
    let mut v = pts(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1], &[0, 0]]);
    v.push(vec![rat(1, 2), rat(1, 3)]);
    let p = Polytope::from_vertices(v).unwrap();
    assert_eq!(p.num_vertices(), Some(4));
}

#[test]
fn rejects_non_interior_origin() {
    let err = Polytope::from_vertices(pts(&[&[1], &[2]])).unwrap_err();
    match err {
        PolytopeError::NotInterior { separating } => {
            assert!(separating[0] < Rational::zero());
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        Polytope::from_vertices(pts(&[&[1, 0], &[-1, 0]])),
        Err(PolytopeError::NotInterior { .. })
    ));
}

#[test]
fn from_facets_examples() {
    let p = Polytope::from_facets(pts(&[&[1], &[-1]])).unwrap();
    assert_eq!(p.vertices().unwrap(), &[vec![int(-1)], vec![int(1)]]);
    let tri = Polytope::from_facets(pts(&[&[-3, 0], &[0, -3], &[3, 3]])).unwrap();
    assert_eq!(tri.num_vertices(), Some(3));
    assert!(matches!(Polytope::from_facets(pts(&[&[1, 0]])), Err(PolytopeError::Unbounded { .. })));
}

#[test]
fn square_facets_and_polar() {
    let sq = square();
    let f = enumerate_facets(&sq).unwrap();
    assert_eq!(f, pts(&[&[-1, 0], &[0, -1], &[0, 1], &[1, 0]]));
    let diamond = polar(&sq);
    assert_eq!(diamond.vertices().unwrap(), f.as_slice());
    assert_eq!(polar(&diamond), sq);
}

#[test]
fn products_and_sums() {
    let i = Polytope::from_facets(pts(&[&[1], &[-1]])).unwrap();
    let sq = cartesian_product(&i, &i).unwrap();
    assert_eq!(sq.num_vertices(), Some(4));
    assert_eq!(sq.num_facets(), Some(4));
    assert!(slack_is_consistent(&sq).unwrap());
    let diamond = direct_sum(&i, &i).unwrap();
    assert_eq!(diamond.num_vertices(), Some(4));
    let back = polar(&diamond);
    let mut bv = back.vertices().unwrap().to_vec();
    bv.sort();
    assert_eq!(bv, square().vertices().unwrap());
}

#[test]
fn containment_reports_violation() {
    let sq = square();
    assert!(contains_point(&sq, &[int(0), int(0)]).unwrap().is_inside());
    assert!(contains_point(&sq, &[int(1), int(-1)]).unwrap().is_inside());
    match contains_point(&sq, &[int(2), int(0)]).unwrap() {
        Containment::Outside { value, .. } => assert_eq!(value, int(2)),
        Containment::Inside => panic!("outside point accepted"),
    }
    assert!(contains_point(&sq, &[int(0)]).is_err());
}

#[test]
fn scaling_constants() {
    let sq = square();
    assert_eq!(scaling_into(&sq, &sq).unwrap(), int(1));
    assert_eq!(symmetrization_constant(&sq).unwrap(), int(1));
    let tri = Polytope::from_facets(pts(&[&[-3, 0], &[0, -3], &[3, 3]])).unwrap();
    assert_eq!(symmetrization_constant(&tri).unwrap(), rat(1, 2));
}

#[test]
fn barycenter_of_square_is_uniform() {
    let pi = barycentric_resolution(&square()).unwrap();
    assert!(pi.iter().all(|x| *x == rat(1, 4)));
}

#[test]
fn json_round_trip_and_hash() {
    let sq = square().with_label("square");
    let v = sq.to_json();
    let text = serde_json::to_string(&v).unwrap();
    let back = Polytope::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, sq);
    assert_eq!(back.label(), "square");
    assert_eq!(back.content_hash(), sq.content_hash());
    assert_ne!(polar(&sq).content_hash(), sq.content_hash());
}

#[test]
fn with_both_rejects_inconsistent_data() {
    let v = pts(&[&[1], &[-1]]);
    assert!(Polytope::with_both(v.clone(), pts(&[&[1], &[-1]]), "i").is_ok());
    assert!(Polytope::with_both(v, pts(&[&[2], &[-1]]), "bad").is_err());
}

#[test]
fn scale_limits_enforced() {
    let p = Polytope::from_facets((0..9).map(|i| {
        let mut h = vec![int(0); 9];
        h[i] = int(1);
        h
    }).chain(std::iter::once(vec![int(-1); 9])).collect()).unwrap();
    assert!(matches!(enumerate_vertices(&p), Err(PolytopeError::ScaleLimit { .. })));
}

fn small_polytope() -> impl Strategy<Value = Polytope> {
    (1usize..=3)
        .prop_flat_map(|g| prop::collection::vec(prop::collection::vec(-4i64..=4, g), 2 * g + 1..2 * g + 5))
        .prop_filter_map("0 must be interior", |raw| {
            let g = raw[0].len();
            let mut points: Vec<Vec<Rational>> =
                raw.iter().map(|p| p.iter().map(|&x| rat(x, 2)).collect()).collect();
            for i in 0..g {
                let mut e = vec![int(0); g];
                e[i] = int(1);
                points.push(e.clone());
                points.push(e.iter().map(|x| -x).collect());
            }
            Polytope::from_vertices(points).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn slack_nonnegative_with_saturation(p in small_polytope()) {
        prop_assert!(slack_is_consistent(&p).unwrap());
    }

    #[test]
    fn round_trip_through_facets(p in small_polytope()) {
        let facets_only = Polytope::from_facets(p.facets().unwrap().to_vec()).unwrap();
        prop_assert_eq!(facets_only.vertices().unwrap(), p.vertices().unwrap());
        prop_assert_eq!(&polar(&polar(&p)), &p);
    }

    #[test]
    fn vertices_inside_and_scaled_tight_vertices_outside(p in small_polytope()) {
        for v in p.vertices().unwrap() {
            prop_assert!(contains_point(&p, v).unwrap().is_inside());
            let scaled: Vec<Rational> = v.iter().map(|x| x * rat(101, 100)).collect();
            prop_assert!(!contains_point(&p, &scaled).unwrap().is_inside());
        }
    }

    #[test]
    fn scaling_product_at_most_one(p in small_polytope(), q in small_polytope()) {
        prop_assume!(p.dim() == q.dim());
        let s = scaling_into(&p, &q).unwrap() * scaling_into(&q, &p).unwrap();
        prop_assert!(s <= int(1));
    }

    #[test]
    fn direct_sum_inside_product(p in small_polytope(), q in small_polytope()) {
        prop_assume!(p.dim() + q.dim() <= 4);
        let sum = direct_sum(&p, &q).unwrap();
        let prod = cartesian_product(&p, &q).unwrap();
        for v in sum.vertices().unwrap() {
            prop_assert!(contains_point(&prod, v).unwrap().is_inside());
        }
    }
}
