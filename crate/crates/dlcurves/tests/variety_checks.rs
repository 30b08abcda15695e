use dlcurves::curves::CurveSpec;
use dlcurves::finite_field::{ArtinSchreierSolver, Fe};
use dlcurves::graph_equations::generate_system;
use dlcurves::variety_checks::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn suzuki_counts_match_closed_form() {
    let c = CurveSpec::suzuki(1).unwrap();
    for r in 1..=4 {
        let pts = enumerate_points(&c, r).unwrap();
        assert_eq!(pts.count() as i128, c.rational_point_count_formula(r).unwrap(), "r={r}");
    }
    assert_eq!(enumerate_points(&c, 4).unwrap().count(), 5889);
    assert_eq!(c.hasse_weil_max(4), Some(5889));
}

#[test]
fn hermitian_counts() {
    let c = CurveSpec::hermitian(3, 1).unwrap();
    assert_eq!(enumerate_points(&c, 1).unwrap().count(), 28);
    for r in 1..=3 {
        let pts = enumerate_points(&c, r).unwrap();
        assert_eq!(pts.count() as i128, c.rational_point_count_formula(r).unwrap());
    }
    let c = CurveSpec::hermitian(2, 2).unwrap();
    for r in 1..=2 {
        let pts = enumerate_points(&c, r).unwrap();
        assert_eq!(pts.count() as i128, c.rational_point_count_formula(r).unwrap());
    }
}

#[test]
fn ree_counts_over_small_extensions() {
    let c = CurveSpec::ree(1).unwrap();
    assert_eq!(enumerate_points(&c, 1).unwrap().count(), 19684);
    assert_eq!(enumerate_points(&c, 2).unwrap().count() as i128, c.rational_point_count_formula(2).unwrap());
}

#[test]
fn suzuki_points_lie_on_model_and_are_smooth() {
    let c = CurveSpec::suzuki(1).unwrap();
    let sys = JacobianSystem::new(&generate_system(&c).unwrap().polys(), c.field());
    let pts = enumerate_points(&c, 1).unwrap();
    let proj = pts.projective(&c);
    assert_eq!(proj.len(), 65);
    assert!(proj.iter().all(|p| sys.on_variety(p)));
    let s = smoothness_sweep(&sys, &proj);
    assert!(s.passed(), "{s:?}");
    assert_eq!(s.expected_rank, 3);
}

#[test]
fn ree_special_points() {
    let c = CurveSpec::ree(1).unwrap();
    let sys = JacobianSystem::new(&generate_system(&c).unwrap().polys(), c.field());
    let inf = c.infinity_point();
    assert_eq!(inf[11], Fe::ONE);
    assert_eq!(sys.jacobian_rank(&inf).unwrap(), 12);
    let origin = CurvePoint::Affine(vec![Fe::ZERO; 3]).projective(&c, c.field());
    assert_eq!(sys.jacobian_rank(&origin).unwrap(), 12);
    let ones = vec![Fe::ONE; 14];
    assert!(!sys.on_variety(&ones));
    assert!(matches!(sys.jacobian_rank(&ones), Err(VarietyError::NotOnVariety)));
}

#[test]
fn ree_sampled_extension_points_are_smooth() {
    let c = CurveSpec::ree(1).unwrap();
    let f2 = c.extension_field(2).unwrap();
    let sys = JacobianSystem::new(&generate_system(&c).unwrap().over(&f2), &f2);
    let solver = ArtinSchreierSolver::new(f2.clone(), c.q);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let affine: Vec<Vec<Fe>> = (0..20).map(|_| random_point_over(&c, &f2, &solver, &mut rng).unwrap()).collect();
    // every GF(27^2)-point is already GF(27)-rational
    assert!(affine.iter().all(|a| !outside_base_field(&c, &f2, a)));
    let pts: Vec<Vec<Fe>> = affine.iter().map(|a| c.coordinates(&f2, a)).collect();
    let s = smoothness_sweep(&sys, &pts);
    assert!(s.passed(), "{s:?}");
}

#[test]
fn suzuki_gains_points_over_gf4096() {
    let c = CurveSpec::suzuki(1).unwrap();
    let f4 = c.extension_field(4).unwrap();
    let sys = JacobianSystem::new(&generate_system(&c).unwrap().over(&f4), &f4);
    let solver = ArtinSchreierSolver::new(f4.clone(), c.q);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut fresh = 0;
    let mut pts = Vec::new();
    for _ in 0..40 {
        let a = random_point_over(&c, &f4, &solver, &mut rng).unwrap();
        fresh += outside_base_field(&c, &f4, &a) as usize;
        pts.push(c.coordinates(&f4, &a));
    }
    assert!(fresh > 30);
    assert!(smoothness_sweep(&sys, &pts).passed());
}
