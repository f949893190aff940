use super::*;
use crate::diagram::parse_pd;

fn trefoil() -> PlanarDiagram {
    parse_pd("PD[X[3,1,4,6],X[1,5,2,4],X[5,3,6,2]]").unwrap()
}

fn figure_eight() -> PlanarDiagram {
    parse_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap()
}

fn table(entries: &[((i32, i32), u64)]) -> BigradedDims {
    BigradedDims::from_entries(entries.iter().copied())
}

fn corpus() -> Vec<PlanarDiagram> {
    let t = trefoil();
    vec![
        t.clone(),
        t.mirror(),
        figure_eight(),
        parse_pd("PD[X[1,3,2,4],X[3,1,4,2]]").unwrap(),
        t.add_kink(2, true).unwrap(),
        t.add_kink(5, false).unwrap(),
        figure_eight().add_kink(3, false).unwrap(),
    ]
}

#[test]
fn trefoil_naive() {
    let k = kh_with(&trefoil(), ExactField::Rationals, &KhOptions::naive()).unwrap();
    assert_eq!(k, table(&[((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((3, 9), 1)]));
}

#[test]
fn trefoil_scan() {
    let k = kh(&trefoil(), ExactField::Rationals).unwrap();
    assert_eq!(k, table(&[((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((3, 9), 1)]));
}

#[test]
fn figure_eight_kh() {
    let k = kh(&figure_eight(), ExactField::Rationals).unwrap();
    assert_eq!(k, table(&[((-2, -5), 1), ((-1, -1), 1), ((0, -1), 1), ((0, 1), 1), ((1, 1), 1), ((2, 5), 1)]));
}

#[test]
fn scan_matches_naive() {
    for d in corpus() {
        for ring in [ExactField::Rationals, ExactField::F2] {
            for order in [CrossingOrder::Input, CrossingOrder::Greedy] {
                let opts = KhOptions { order, ..KhOptions::default() };
                assert_eq!(kh_with(&d, ring, &opts).unwrap(), kh_with(&d, ring, &KhOptions::naive()).unwrap(), "{d}");
                let b = d.clone().with_basepoint(d.crossings()[0][0]).unwrap();
                assert_eq!(
                    reduced_kh_with(&b, ring, &opts).unwrap(),
                    reduced_kh_with(&b, ring, &KhOptions::naive()).unwrap(),
                    "{d}"
                );
            }
        }
    }
}

#[test]
fn unknot_and_kinks() {
    let u = table(&[((0, -1), 1), ((0, 1), 1)]);
    assert_eq!(kh(&PlanarDiagram::unknot(), ExactField::Rationals).unwrap(), u);
    for pos in [true, false] {
        let d = PlanarDiagram::unknot().add_kink(0, pos).unwrap();
        assert_eq!(unnormalized_kh(&d, ExactField::Rationals).unwrap().total(), 2);
        assert_eq!(kh(&d, ExactField::Rationals).unwrap(), u);
        assert_eq!(kh_with(&d, ExactField::Rationals, &KhOptions::naive()).unwrap(), u);
    }
    assert_eq!(reduced_kh(&PlanarDiagram::unknot(), ExactField::F2).unwrap(), table(&[((0, 0), 1)]));
}

#[test]
fn unlink_with_free_loop() {
    let d = parse_pd(r#"{"pd":"PD[X[1,3,2,4],X[3,1,4,2]]","free_loops":1}"#).unwrap();
    let k = kh(&d, ExactField::Rationals).unwrap();
    let hopf = kh(&parse_pd("PD[X[1,3,2,4],X[3,1,4,2]]").unwrap(), ExactField::Rationals).unwrap();
    assert_eq!(k.total(), 2 * hopf.total());
    assert_eq!(k, kh_with(&d, ExactField::Rationals, &KhOptions::naive()).unwrap());
}

#[test]
fn reduced_needs_basepoint() {
    assert_eq!(reduced_kh(&trefoil(), ExactField::F2), Err(KhError::MissingBasepoint));
}

#[test]
fn f2_reduced_doubles() {
    for d in corpus() {
        let b = d.clone().with_basepoint(d.crossings()[1][2]).unwrap();
        let r = reduced_kh(&b, ExactField::F2).unwrap();
        let u = kh(&d, ExactField::F2).unwrap();
        assert_eq!(u.total(), 2 * r.total());
        let mut doubled = r.shifted(0, 1);
        for (i, q, n) in r.shifted(0, -1).iter() {
            doubled.add(i, q, n);
        }
        assert_eq!(u, doubled);
    }
}

#[test]
fn mirror_duality() {
    for d in corpus() {
        let a = kh(&d, ExactField::Rationals).unwrap();
        let b = kh(&d.mirror(), ExactField::Rationals).unwrap();
        assert_eq!(a.negated(), b);
    }
}

#[test]
fn lee_survivors() {
    for d in [trefoil(), figure_eight(), trefoil().mirror()] {
        for method in [Method::Scan, Method::Naive] {
            let opts = KhOptions { method, ..KhOptions::default() };
            let n = normalization(&d);
            let cx = complex::<Rational>(&d, Flavor::Lee, &opts).unwrap().shifted(n.homological, n.quantum);
            let (surv, _) = cx.eliminate();
            assert_eq!(surv.len(), 2);
            assert!(surv.iter().all(|g| g.0 == 0));
        }
    }
}

#[test]
fn euler_and_determinant() {
    let k = kh(&trefoil(), ExactField::Rationals).unwrap();
    assert_eq!(graded_euler_characteristic(&k).to_string(), "q + q^3 + q^5 - q^9");
    assert_eq!(determinant(&k).unwrap(), 3);
    assert_eq!(determinant(&kh(&figure_eight(), ExactField::Rationals).unwrap()).unwrap(), 5);
    assert_eq!(determinant(&kh(&PlanarDiagram::unknot(), ExactField::Rationals).unwrap()).unwrap(), 1);
}

#[test]
fn size_guard() {
    let opts = KhOptions { max_crossings: Some(2), ..KhOptions::default() };
    assert!(matches!(kh_with(&trefoil(), ExactField::Rationals, &opts), Err(KhError::TooLarge { crossings: 3, limit: 2 })));
}

#[test]
fn report_json_round_trip() {
    let r = KhReport::compute(&trefoil(), ExactField::Rationals, false, &KhOptions::default()).unwrap();
    let j = r.to_json();
    assert_eq!(j["total"], 4);
    assert_eq!(KhReport::from_json(&j).unwrap(), r);
}

#[test]
fn shifts_compose() {
    let a = ShiftSpec::new(1, 2);
    let b = ShiftSpec::new(-3, 5);
    let t = table(&[((0, 1), 1), ((2, 5), 3)]);
    assert_eq!(b.apply(&a.apply(&t)), a.then(b).apply(&t));
    assert_eq!(a.inverse().apply(&a.apply(&t)), t);
    assert_eq!(normalization(&trefoil()), ShiftSpec::new(0, 3));
}

#[test]
fn cube_complexes_square_to_zero() {
    for d in corpus() {
        let c: SmallComplex<Rational> = complex(&d, Flavor::Unreduced, &KhOptions::naive()).unwrap();
        let g = c.to_graded().unwrap();
        assert!(g.check_d_squared().is_ok(), "{d}");
        assert_eq!(g.homology_dims(), c.homology_dims(), "{d}");
    }
}
