mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_regular, random_signs, rotate_lift, rotate_signs};
use tcurve_core::analysis::{analyze, scheme_and_type};
use tcurve_core::formulas::{critical_counts, harnack_bound};
use tcurve_core::orientation::CurveType;
use tcurve_core::regularity::{find_convexifier, is_convexifying, lower_hull_triangulation};
use tcurve_core::scheme::{Nest, RealScheme};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nest_strategy() -> impl Strategy<Value = Nest> {
    let leaf = Just(Nest::leaf());
    leaf.prop_recursive(4, 24, 4, |inner| prop::collection::vec(inner, 0..4).prop_map(Nest::new))
}

fn scheme_strategy() -> impl Strategy<Value = RealScheme> {
    (any::<bool>(), prop::collection::vec(nest_strategy(), 0..5)).prop_map(|(j, ovals)| RealScheme::new(j, ovals))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn projective_curve_is_a_closed_manifold(m in 1u32..=6, seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_regular(m, &mut r);
        let d = random_signs(m, &mut r);
        let a = analyze(&t, &d).unwrap();
        prop_assert!(a.projective.vertex_degrees().iter().all(|&k| k == 2));
        prop_assert!(a.projective.components().iter().all(|c| c.closed));
        prop_assert!(a.projective.components().len() as u64 <= harnack_bound(m));
        prop_assert_eq!(a.scheme.component_count(), a.projective.components().len());
        prop_assert_eq!(a.scheme.one_sided(), m % 2 == 1);
    }

    #[test]
    fn line_at_infinity_meets_curve_in_m_points(m in 1u32..=6, seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = analyze(&random_regular(m, &mut r), &random_signs(m, &mut r)).unwrap();
        prop_assert!(a.boundary_points <= m as usize);
        prop_assert_eq!(a.boundary_points % 2, m as usize % 2);
    }

    #[test]
    fn regions_form_a_tree_with_consistent_euler_data(m in 1u32..=6, seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = analyze(&random_regular(m, &mut r), &random_signs(m, &mut r)).unwrap();
        prop_assert_eq!(a.regions.regions().len(), a.regions.ovals().len() + 1);
        prop_assert_eq!(a.regions.ovals().len(), a.scheme.oval_count());
        if let Some(e) = a.euler {
            prop_assert_eq!(e.chi_plus + e.chi_minus, 1);
            prop_assert_eq!(e.chi_plus, a.scheme.even_ovals() as i64 - a.scheme.odd_ovals() as i64);
        }
    }

    #[test]
    fn negating_all_signs_keeps_the_curve(m in 1u32..=6, seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_regular(m, &mut r);
        let d = random_signs(m, &mut r);
        prop_assert_eq!(scheme_and_type(&t, &d).unwrap(), scheme_and_type(&t, &d.negated()).unwrap());
    }

    #[test]
    fn projective_coordinate_change_keeps_scheme_and_type(m in 1u32..=6, seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_regular(m, &mut r);
        let d = random_signs(m, &mut r);
        let rotated = lower_hull_triangulation(m, &rotate_lift(m, t.lift())).unwrap();
        let (s1, v1) = scheme_and_type(&t, &d).unwrap();
        let (s2, v2) = scheme_and_type(&rotated, &rotate_signs(&d)).unwrap();
        prop_assert_eq!(s1, s2);
        prop_assert_eq!(v1.map(|v| v.value), v2.map(|v| v.value));
    }

    #[test]
    fn dividing_curves_obey_klein_and_rokhlin(m in 1u32..=5, seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_regular(m, &mut r);
        let d = random_signs(m, &mut r);
        let (s, v) = scheme_and_type(&t, &d).unwrap();
        let v = v.unwrap();
        if s.component_count() as u64 == harnack_bound(m) {
            prop_assert_eq!(v.value, CurveType::TypeI);
        }
        if v.value == CurveType::TypeI {
            // Klein's congruence and Rokhlin's lower bound for dividing curves.
            prop_assert_eq!((harnack_bound(m) - s.component_count() as u64) % 2, 0);
            prop_assert!(s.component_count() as u32 >= m.div_ceil(2));
        }
    }

    #[test]
    fn convexifier_round_trip(m in 1u32..=5, seed in any::<u64>()) {
        let t = random_regular(m, &mut rng(seed));
        let lift = find_convexifier(t.triangulation()).unwrap();
        prop_assert!(is_convexifying(t.triangulation(), &lift));
        prop_assert!(lift.is_nonnegative());
    }

    #[test]
    fn viro_code_round_trips(s in scheme_strategy()) {
        prop_assert_eq!(RealScheme::parse(&s.code()).unwrap(), s.clone());
        prop_assert_eq!(RealScheme::parse(&s.ascii()).unwrap(), s.clone());
    }

    #[test]
    fn viro_code_ignores_order(s in scheme_strategy(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        fn shuffled(n: &Nest, r: &mut ChaCha8Rng) -> Nest {
            let mut c: Vec<Nest> = n.children.iter().map(|k| shuffled(k, r)).collect();
            c.shuffle(r);
            Nest::new(c)
        }
        let mut r = rng(seed);
        let mut ovals: Vec<Nest> = s.ovals().iter().map(|n| shuffled(n, &mut r)).collect();
        ovals.shuffle(&mut r);
        prop_assert_eq!(RealScheme::new(s.one_sided(), ovals).code(), s.code());
    }

    #[test]
    fn critical_point_identities(m in 2u32..=200) {
        let c = critical_counts(m).unwrap();
        for (name, ok) in c.identities(m) {
            prop_assert!(ok, "{} fails for m={}", name, m);
        }
    }
}
