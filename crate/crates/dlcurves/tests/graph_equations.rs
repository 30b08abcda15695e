use dlcurves::curves::{CurveSpec, Family};
use dlcurves::fixtures::FixtureStore;
use dlcurves::graph_equations::*;
use dlcurves::multipoly::MultiPoly;

fn check(curve: &CurveSpec, expected: usize) -> MatchReport {
    let sys = generate_system(curve).unwrap();
    let reference = FixtureStore::default().equations(curve.family).unwrap();
    let rep = verify_against_reference(&sys, &reference, curve.coords(), curve.field()).unwrap();
    assert!(rep.is_bijection(), "{rep:?}");
    assert_eq!(rep.matched, expected);
    rep
}

#[test]
fn ree_system_matches_reference_list() {
    let c = CurveSpec::ree(1).unwrap();
    let rep = check(&c, 105);
    assert_eq!(rep.corrections_applied.len(), 2);
}

#[test]
fn suzuki_and_hermitian_match() {
    check(&CurveSpec::suzuki(1).unwrap(), 5);
    check(&CurveSpec::hermitian(3, 1).unwrap(), 1);
}

#[test]
fn ree_duplicate_quadric() {
    let c = CurveSpec::ree(1).unwrap();
    let sys = generate_system(&c).unwrap();
    assert_eq!(sys.duplicates.len(), 1);
    let (c0, f) = (c.coords(), c.field());
    let v = |n: &str| MultiPoly::var(c0, f, n).unwrap();
    let want = v("y1").mul(&v("w10")).add(&v("y2").mul(&v("w9"))).add(&v("w4").mul(&v("w5")));
    assert_eq!(sys.duplicates[0].2, want.canonical_form().unwrap());
}

#[test]
fn ree_long_diagonal_relation() {
    let c = CurveSpec::ree(1).unwrap();
    let sys = generate_system(&c).unwrap();
    let (c0, f) = (c.coords(), c.field());
    let v = |n: &str| MultiPoly::var(c0, f, n).unwrap();
    let want = v("t").mul(&v("w8")).add(&v("x").mul(&v("w6"))).add(&v("w1").mul(&v("w3"))).sub(&v("w2").pow(2));
    assert_eq!(sys.sets[2].equations[0].poly, want);
}

#[test]
fn ree_label_table_consistency() {
    let c = CurveSpec::ree(1).unwrap();
    let g = build_graph(&c).unwrap();
    assert!(plucker_mismatches(&c, &g).unwrap().is_empty());
    let asym = label_table_asymmetries(&c).unwrap();
    assert_eq!(asym, vec![("1".into(), "-w3".into(), "-y2".into(), "-y2".into())]);
}

#[test]
fn sign_flipped_reference_is_rejected() {
    let c = CurveSpec::ree(1).unwrap();
    let sys = generate_system(&c).unwrap();
    let mut reference = FixtureStore::default().equations(Family::Ree).unwrap();
    let t = &mut reference.equations[40].poly.terms[0];
    t.coef = (3 - t.coef.rem_euclid(3)) % 3;
    let rep = verify_against_reference(&sys, &reference, c.coords(), c.field()).unwrap();
    assert_eq!(rep.matched, 104);
    assert_eq!(rep.unmatched_fixture, vec![reference.equations[40].label.clone()]);
}

#[test]
fn generated_equations_are_homogeneous() {
    for c in [CurveSpec::ree(1).unwrap(), CurveSpec::suzuki(1).unwrap(), CurveSpec::hermitian(3, 1).unwrap()] {
        for e in generate_system(&c).unwrap().all() {
            assert!(e.poly.is_homogeneous(), "{}", e.label);
        }
    }
}
