use super::*;
use crate::diagram::{generate_family, parse_pd, FamilySpec};
use crate::khovanov::kh;

fn trefoil() -> PlanarDiagram {
    parse_pd("PD[X[3,1,4,6],X[1,5,2,4],X[5,3,6,2]]").unwrap()
}

fn fixture(name: &str) -> PlanarDiagram {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_pd(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn trefoil_triple_passes() {
    for c in 0..3 {
        let inst = LESInstance::compute(&trefoil(), c, ExactField::Rationals, &KhOptions::default()).unwrap();
        assert_eq!(inst.triple.d0.component_count(), 2);
        assert!(inst.triple.d1.is_knot());
        let r = les_consistency(&inst).unwrap();
        assert!(r.pass, "{:?}", r.violations);
    }
}

#[test]
fn corrupted_cell_is_located() {
    let mut inst = LESInstance::compute(&trefoil(), 0, ExactField::Rationals, &KhOptions::default()).unwrap();
    let (i, q, d) = inst.dims[0].iter().next().unwrap();
    inst.dims[0].set(i, q, d + 1);
    let r = les_consistency(&inst).unwrap();
    assert!(!r.pass);
    assert!(r.violations.iter().any(|v| v.q == q));
    assert!(r.violations.iter().all(|v| v.q == q));
    assert_eq!(r.to_json()["pass"], false);
}

#[test]
fn wrong_shift_rejected() {
    let mut inst = LESInstance::compute(&trefoil(), 1, ExactField::Rationals, &KhOptions::default()).unwrap();
    inst.shifts[1] = inst.shifts[1].then(ShiftSpec::new(0, 2));
    assert!(matches!(les_consistency(&inst), Err(SkeinError::ShiftMismatch(_))));
}

#[test]
fn twist_triple_unlink_shift() {
    let base = fixture("k0.json");
    let n = 2;
    let d = generate_family(&FamilySpec { base, twists: n }).unwrap();
    let inst = LESInstance::compute(&d, d.crossing_count() - 1, ExactField::Rationals, &KhOptions::default()).unwrap();
    assert_eq!(inst.triple.crossing_counts(), [(7 + n, 7), (6 + n, 7), (6 + n, 7)]);
    let unlink = BigradedDims::from_entries([((0, -2), 1), ((0, 0), 2), ((0, 2), 1)]);
    assert_eq!(ShiftSpec::new(-7, n as i32 - 8).apply(&inst.dims[1]), unlink);
    assert!(les_consistency(&inst).unwrap().pass);
}

#[test]
fn closed_forms_have_26_generators() {
    for f in [Family::K, Family::Tau] {
        for n in 8..14 {
            let t = closed_form_table(f, n);
            assert_eq!(t.total(), 26);
            assert!(t.iter().all(|(_, q, _)| q.rem_euclid(2) == 1));
        }
    }
}

#[test]
fn induction_reproduces_closed_forms() {
    for f in [Family::K, Family::Tau] {
        for n in 9..16 {
            let r = induction_step(&closed_form_table(f, n - 1), n, f).unwrap();
            assert_eq!(r.parameters.iter().map(|p| (p.name, p.q)).collect::<Vec<_>>(), vec![('a', 1), ('b', 3)]);
            assert_eq!(r.candidates.len(), 4);
            assert_eq!(r.resolved, Some(closed_form_table(f, n)), "{f:?} n={n}");
        }
    }
}

#[test]
fn extra_copy_at_one_one_is_flagged() {
    let n = 10;
    let mut t = closed_form_table(Family::K, n);
    t.add(0, 1, 1);
    t.add(1, 1, 1);
    match lee_feasibility(&t, 0) {
        LeeVerdict::Contradiction { unmatched } => assert!(unmatched.contains(&(1, 1))),
        v => panic!("{v:?}"),
    }
}

#[test]
fn induction_checks_template() {
    assert_eq!(induction_step(&closed_form_table(Family::K, 8), 8, Family::K).unwrap_err(), InductionError::TooSmall(8));
    let mut t = closed_form_table(Family::K, 8);
    t.add(4, 4, 1);
    assert_eq!(induction_step(&t, 9, Family::K).unwrap_err(), InductionError::TemplateMismatch { n: 8 });
}

#[test]
fn lee_feasibility_on_small_knots() {
    assert_eq!(lee_feasibility(&kh(&trefoil(), ExactField::Rationals).unwrap(), 2), LeeVerdict::Feasible);
    assert!(matches!(lee_feasibility(&kh(&trefoil(), ExactField::Rationals).unwrap(), 0), LeeVerdict::MissingSurvivor(_)));
}
