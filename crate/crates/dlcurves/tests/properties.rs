use dlcurves::automorphisms::{apply_affine, compose, AutParams};
use dlcurves::curves::CurveSpec;
use dlcurves::finite_field::{is_irreducible, ArtinSchreierSolver, Fe, Field, GaloisField};
use dlcurves::local_series::{random_rational_point, PrecisionPolicy, SeriesOracle, Valuation};
use dlcurves::multipoly::{CoordinateSystem, Coords, MultiPoly};
use dlcurves::semigroup::NumericSemigroup;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIELDS: [(u32, u32); 8] = [(2, 1), (2, 3), (2, 6), (2, 12), (3, 1), (3, 2), (3, 3), (3, 6)];

fn field(i: usize) -> Field {
    let (p, n) = FIELDS[i % FIELDS.len()];
    GaloisField::with_degree(p, n).unwrap()
}

fn fe(f: &Field, raw: u32) -> Fe {
    Fe(raw % f.size())
}

#[test]
fn every_modulus_is_irreducible() {
    for (p, n) in FIELDS {
        let d = GaloisField::with_degree(p, n).unwrap().descriptor();
        assert!(is_irreducible(p, &d.modulus), "GF({p}^{n})");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(i in 0usize..8, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(i);
        let (a, b, c) = (fe(&f, a), fe(&f, b), fe(&f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
            prop_assert_eq!(f.pow(a, f.size() as u64 - 1), Fe::ONE);
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism(i in 0usize..8, a in any::<u32>(), b in any::<u32>()) {
        let f = field(i);
        let (a, b) = (fe(&f, a), fe(&f, b));
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(a, 1), f.pow(a, f.p() as u64));
        prop_assert_eq!(f.frobenius(a, f.degree()), a);
        prop_assert!(f.in_subfield(f.from_int(i as i64), f.p() as u64));
    }

    #[test]
    fn artin_schreier_solutions(i in 0usize..8, c in any::<u32>()) {
        let f = field(i);
        let (p, n) = (f.p() as u64, f.degree());
        // every proper subfield size q with q^k = |F| for some k
        for d in (1..n).filter(|d| n % d == 0) {
            let q = p.pow(d);
            let c = fe(&f, c);
            let ys = ArtinSchreierSolver::new(f.clone(), q).solve(c);
            prop_assert!(ys.is_empty() || ys.len() as u64 == q);
            for y in ys {
                prop_assert_eq!(f.sub(f.pow(y, q), y), c);
            }
        }
    }
}

fn coords() -> Coords {
    CoordinateSystem::new(&["t", "x", "y"])
}

fn poly(f: &Field, terms: &[(u32, u32, u32, u32)]) -> MultiPoly {
    let c = coords();
    let mut p = MultiPoly::zero(&c, f);
    for &(e0, e1, e2, k) in terms {
        p.add_term(vec![e0 % 3, e1 % 3, e2 % 3], fe(f, k));
    }
    p
}

fn terms() -> impl Strategy<Value = Vec<(u32, u32, u32, u32)>> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..3, any::<u32>()), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn evaluation_is_a_ring_homomorphism(i in 0usize..8, a in terms(), b in terms(), pt in prop::array::uniform3(any::<u32>())) {
        let f = field(i);
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        let pt: Vec<Fe> = pt.iter().map(|&r| fe(&f, r)).collect();
        let (ea, eb) = (a.evaluate(&pt).unwrap(), b.evaluate(&pt).unwrap());
        prop_assert_eq!(a.add(&b).evaluate(&pt).unwrap(), f.add(ea, eb));
        prop_assert_eq!(a.mul(&b).evaluate(&pt).unwrap(), f.mul(ea, eb));
        prop_assert_eq!(a.mul(&b).compile().eval(&f, &pt), f.mul(ea, eb));
    }

    #[test]
    fn leibniz_rule(i in 0usize..8, a in terms(), b in terms(), v in 0usize..3) {
        let f = field(i);
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        let lhs = a.mul(&b).partial_derivative_index(v);
        let rhs = a.partial_derivative_index(v).mul(&b).add(&a.mul(&b.partial_derivative_index(v)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogenize_round_trip(i in 0usize..8, a in terms(), extra in 0u32..3) {
        let f = field(i);
        let a = poly(&f, &a).dehomogenize("t").unwrap();
        let d = a.total_degree().unwrap_or(0) + extra;
        let h = a.homogenize(d, "t").unwrap();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.dehomogenize("t").unwrap(), a);
    }

    #[test]
    fn canonical_form_ignores_scalars(i in 0usize..8, a in terms(), k in any::<u32>()) {
        let f = field(i);
        let a = poly(&f, &a);
        let k = fe(&f, k);
        prop_assume!(!a.is_zero() && !k.is_zero());
        let cf = a.canonical_form().unwrap();
        prop_assert_eq!(a.scale(k).canonical_form().unwrap(), cf.clone());
        prop_assert_eq!(cf.leading().unwrap().1, Fe::ONE);
    }

    #[test]
    fn json_round_trip(i in 0usize..8, a in terms()) {
        let f = field(i);
        prop_assume!(f.degree() == 1);
        let a = poly(&f, &a);
        prop_assert_eq!(MultiPoly::from_json(&a.to_json(), &coords(), &f).unwrap(), a);
    }
}

fn suzuki_monomial(c: &CurveSpec, e: &[u32; 5]) -> MultiPoly {
    MultiPoly::monomial(c.coords(), c.field(), e.to_vec(), Fe::ONE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn valuations_are_additive(a in prop::array::uniform5(0u32..3), b in prop::array::uniform5(0u32..3)) {
        let c = CurveSpec::suzuki(1).unwrap();
        let mut o = SeriesOracle::new(&c, PrecisionPolicy::default_for(&c)).unwrap();
        let (fa, fb) = (suzuki_monomial(&c, &a), suzuki_monomial(&c, &b));
        let v = |o: &mut SeriesOracle, f: &MultiPoly| match o.valuation_at_origin(f).unwrap() {
            Valuation::Finite(v) => v,
            Valuation::Zero => panic!("monomials are nonzero"),
        };
        let (va, vb, vab) = (v(&mut o, &fa), v(&mut o, &fb), v(&mut o, &fa.mul(&fb)));
        prop_assert_eq!(vab, va + vb);
        let (pa, pb) = (o.pole_order(&fa).unwrap().unwrap(), o.pole_order(&fb).unwrap().unwrap());
        prop_assert_eq!(o.pole_order(&fa.mul(&fb)).unwrap().unwrap(), pa + pb);
    }

    #[test]
    fn automorphism_composition(seed in any::<u64>(), family in 0usize..3) {
        let c = [CurveSpec::suzuki(1), CurveSpec::hermitian(3, 1), CurveSpec::ree(1)][family].clone().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p1, p2) = (AutParams::random(&c, &mut rng), AutParams::random(&c, &mut rng));
        let pt = random_rational_point(&c, &mut rng);
        let direct = apply_affine(&c, &p2, &apply_affine(&c, &p1, &pt));
        prop_assert_eq!(apply_affine(&c, &compose(&c, &p2, &p1), &pt), direct.clone());
        prop_assert!(c.affine_residuals(c.field(), &direct).iter().all(|r| r.is_zero()));
    }

    #[test]
    fn generated_semigroups_are_closed(gens in prop::collection::vec(2u64..40, 1..5), bound in 50u64..400) {
        let s = NumericSemigroup::generate_from(&gens, bound);
        prop_assert!(s.is_closed());
        for &g in &gens {
            prop_assert!(g > bound || s.contains(g));
        }
    }
}
