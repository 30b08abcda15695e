use dlcurves::curves::CurveSpec;
use dlcurves::semigroup::{compute_weierstrass_semigroup, spot_check_witnesses, EngineConfig, NumericSemigroup};

#[test]
fn engine_reproduces_suzuki_and_hermitian() {
    for curve in [CurveSpec::suzuki(1).unwrap(), CurveSpec::hermitian(3, 1).unwrap(), CurveSpec::hermitian(2, 2).unwrap()] {
        let res = compute_weierstrass_semigroup(&curve, EngineConfig::default_for(&curve)).unwrap();
        let gens: Vec<u64> = curve.pole_orders()[1..].to_vec();
        let expected = NumericSemigroup::generate_from(&gens, 2 * curve.genus - 1);
        assert_eq!(res.semigroup, expected, "{curve:?}");
    }
}

#[test]
fn suzuki_witnesses_survive_spot_check() {
    let curve = CurveSpec::suzuki(1).unwrap();
    let cfg = EngineConfig::default_for(&curve);
    let res = compute_weierstrass_semigroup(&curve, cfg).unwrap();
    let chk = spot_check_witnesses(&res, &curve, cfg.precision, 100, 1).unwrap();
    assert!(chk.passed(), "{chk:?}");
    assert_eq!(chk.sampled, res.basis.len().min(100));
}

#[test]
fn numeric_semigroup_queries() {
    let s = NumericSemigroup::generate_from(&[8, 10, 12, 13], 27);
    assert_eq!(s.residue_counts(7, 28).iter().sum::<usize>(), s.count_nongaps_below(28));
    assert!(s.is_closed());
    let h = NumericSemigroup::generate_from(&[3, 4], 5);
    assert_eq!(h.nongaps(), vec![0, 3, 4]);
}
