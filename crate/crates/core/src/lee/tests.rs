use super::*;
use crate::algebra::ExactField;
use crate::diagram::parse_pd;
use crate::khovanov::{kh, Method};

fn trefoil() -> PlanarDiagram {
    parse_pd("PD[X[3,1,4,6],X[1,5,2,4],X[5,3,6,2]]").unwrap()
}

fn figure_eight() -> PlanarDiagram {
    parse_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap()
}

#[test]
fn unknot() {
    let u = PlanarDiagram::unknot();
    assert_eq!(s_invariant(&u).unwrap(), 0);
    let e1 = page_dims(&u, 1).unwrap();
    assert_eq!(e1.dims, BigradedDims::from_entries([((0, -1), 1), ((0, 1), 1)]));
    assert_eq!(page_dims(&u, 9).unwrap().dims, e1.dims);
}

#[test]
fn trefoils() {
    assert_eq!(s_invariant(&trefoil()).unwrap(), 2);
    assert_eq!(s_invariant(&trefoil().mirror()).unwrap(), -2);
    assert_eq!(s_invariant(&figure_eight()).unwrap(), 0);
    let naive = KhOptions { method: Method::Naive, ..KhOptions::default() };
    assert_eq!(s_invariant_with(&trefoil(), &naive).unwrap(), 2);
}

#[test]
fn trefoil_pages() {
    let seq = lee_sequence(&trefoil(), &KhOptions::default()).unwrap();
    assert_eq!(seq.page(1).dims, kh(&trefoil(), ExactField::Rationals).unwrap());
    // d_4 kills the pair at (2,5) -> (3,9)
    assert_eq!(seq.page(4).differentials, vec![((2, 5), 1)]);
    assert_eq!(seq.page(5).dims, BigradedDims::from_entries([((0, 1), 1), ((0, 3), 1)]));
    assert_eq!(lee_homology(&trefoil()).unwrap().total(), 2);
}

#[test]
fn pages_shrink() {
    let seq = lee_sequence(&figure_eight(), &KhOptions::default()).unwrap();
    let pages = seq.distinct_pages();
    for w in pages.windows(2) {
        for (i, q, d) in w[1].dims.iter() {
            assert!(d <= w[0].dims.get(i, q));
        }
    }
    assert_eq!(pages.last().unwrap().dims, seq.e_infinity());
}

#[test]
fn links_rejected_for_s() {
    let hopf = parse_pd("PD[X[1,3,2,4],X[3,1,4,2]]").unwrap();
    assert!(matches!(s_invariant(&hopf), Err(KhError::NotAKnot { components: 2 })));
    assert_eq!(lee_homology(&hopf).unwrap().total(), 4);
}

#[test]
fn report_json() {
    let r = LeeReport::compute(&trefoil(), &KhOptions::default()).unwrap();
    let j = r.to_json();
    assert_eq!(j["s"], 2);
    assert_eq!(j["lee_dims"], serde_json::json!([[0, 2]]));
    assert!(j["pages"]["1"].is_array());
}
