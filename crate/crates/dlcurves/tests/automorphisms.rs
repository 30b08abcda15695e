use std::time::Instant;

use dlcurves::automorphisms::*;
use dlcurves::curves::{CurveSpec, Family};
use dlcurves::finite_field::Fe;
use dlcurves::fixtures::FixtureStore;
use dlcurves::graph_equations::generate_system;
use dlcurves::local_series::random_rational_point;
use dlcurves::variety_checks::JacobianSystem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn system(c: &CurveSpec) -> JacobianSystem {
    JacobianSystem::new(&generate_system(c).unwrap().polys(), c.field())
}

fn ree_table(c: &CurveSpec) -> ActionTable {
    ActionTable::from_fixture(c, &FixtureStore::default().ree_action().unwrap()).unwrap()
}

#[test]
fn identity_and_transitivity() {
    let c = CurveSpec::ree(1).unwrap();
    let f = c.field();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let p = random_rational_point(&c, &mut rng);
        assert_eq!(apply_affine(&c, &AutParams::identity(), &p), p);
        let (b, g, d) = (p[0], p[1], p[2]);
        let psi = AutParams::new(&c, Fe::ONE, b, g, d).unwrap();
        assert_eq!(apply_affine(&c, &psi, &[Fe::ZERO; 3]), p);
    }
    assert!(AutParams::new(&c, Fe::ZERO, Fe::ONE, Fe::ONE, Fe::ONE).is_err());
    assert_eq!(ree_table(&c).matrix(&c, &AutParams::identity()), SeriesMatrix::identity(14));
    let _ = f;
}

#[test]
fn composition_law_on_random_triples() {
    for c in [CurveSpec::ree(1).unwrap(), CurveSpec::suzuki(1).unwrap(), CurveSpec::hermitian(3, 1).unwrap()] {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let a = AutParams::random(&c, &mut rng);
            let b = AutParams::random(&c, &mut rng);
            let p = random_rational_point(&c, &mut rng);
            let lhs = apply_affine(&c, &b, &apply_affine(&c, &a, &p));
            assert_eq!(lhs, apply_affine(&c, &compose(&c, &b, &a), &p));
            assert!(c.affine_residuals(c.field(), &lhs).iter().all(|r| r.is_zero()));
        }
    }
}

#[test]
fn ree_triangular_order_is_ascending_pole_order() {
    let c = CurveSpec::ree(1).unwrap();
    let names: Vec<&str> = triangular_order(&c).iter().map(|&i| c.coords().names[i].as_str()).collect();
    assert_eq!(names, ["t", "x", "y1", "y2", "w4", "w7", "w1", "w2", "w5", "w3", "w9", "w10", "w6", "w8"]);
}

#[test]
fn ree_group_action_default_sample() {
    let c = CurveSpec::ree(1).unwrap();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rep = verify_group_action(&c, &system(&c), Some(&ree_table(&c)), &ActionConfig::default(), &mut rng).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.psi_samples, 1000);
    assert_eq!(rep.row_checks.len(), 14);
    assert_eq!(rep.corrections, 0);
    assert!(rep.row_checks.iter().all(|r| r.failures == 0 && r.checks == 100_000));
    assert_eq!((rep.phi_points, rep.orbit_size), (19684, 19683));
    assert!(start.elapsed().as_secs() < 600);
}

#[test]
fn corrupted_coefficient_is_flagged_and_corrected() {
    let c = CurveSpec::ree(1).unwrap();
    let mut fx = FixtureStore::default().ree_action().unwrap();
    let k = fx.rows.iter().position(|r| r.target == "w6").unwrap();
    fx.rows[k].terms[2].coef += 1;
    let table = ActionTable::from_fixture(&c, &fx).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cfg = ActionConfig { psi_samples: 20, points_per_psi: 20 };
    let rep = verify_group_action(&c, &system(&c), Some(&table), &cfg, &mut rng).unwrap();
    let flagged: Vec<&str> = rep.row_checks.iter().filter(|r| r.failures > 0).map(|r| r.target.as_str()).collect();
    assert_eq!(flagged, ["w6"]);
    assert_eq!(rep.corrections, 1);
    assert!(rep.row_checks[k].corrected && rep.row_checks[k].first_failure.is_some());
    // the corrected matrices still act correctly
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn tabulated_matrices_match_solved_matrices() {
    let c = CurveSpec::ree(1).unwrap();
    let table = ree_table(&c);
    let basis = PointBasis::new(&c).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let psi = AutParams::random(&c, &mut rng);
        assert_eq!(table.matrix(&c, &psi), basis.derived_matrix(&c, &psi));
    }
}

#[test]
fn involution_is_projective_involution() {
    let c = CurveSpec::ree(1).unwrap();
    let f = c.field();
    let phi = involution_matrix(&c);
    assert!(phi.mul(f, &phi).proportional(f, &SeriesMatrix::identity(14)));
    let origin = c.coordinates(f, &[Fe::ZERO; 3]);
    assert_eq!(phi.apply(f, &c.infinity_point()), origin);
}

#[test]
fn suzuki_and_hermitian_analogues() {
    for c in [CurveSpec::suzuki(1).unwrap(), CurveSpec::hermitian(3, 1).unwrap()] {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cfg = ActionConfig { psi_samples: 200, points_per_psi: 30 };
        let rep = verify_group_action(&c, &system(&c), None, &cfg, &mut rng).unwrap();
        assert!(rep.passed(), "{:?} {rep:?}", c.family);
        let expected = if c.family == Family::Suzuki { 64 } else { 27 };
        assert_eq!(rep.orbit_size, expected);
    }
}
