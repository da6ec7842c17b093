use mvlift::algebra::{divide_linear, normalize_to_direction, GaussianRational};
use mvlift::analysis::{analyze_direction, bkk_bound, strict_decrease, Solvability};
use mvlift::gen::{self, Profile};
use mvlift::lifting::{lift_division, lift_linear_dependent, lift_monomial, roundtrip_holds};
use mvlift::oracle::{count_torus_solutions_2d, mv_cross_check, DEFAULT_TOL};
use mvlift::polytope::{enumerate_fan_directions, mixed_volume, Direction};
use mvlift::saturation::{quotient_polytope, remainder_polytope};
use mvlift::sysio::{parse_system, serialize_system};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn touching_criterion_matches_mixed_volumes(seed in any::<u64>(), dim in 2usize..=3) {
        let (p, q) = gen::random_contained_tuples(&mut gen::rng(seed), dim, 3);
        let before = mixed_volume(&p).unwrap();
        let after = mixed_volume(&q).unwrap();
        prop_assert!(after <= before);
        let (dec, witness) = strict_decrease(&p, &q).unwrap();
        prop_assert_eq!(dec, after < before);
        if let Some(u) = witness {
            prop_assert!(u.as_slice().iter().any(|&c| c != 0));
        }
    }

    #[test]
    fn mixed_volume_formulas_agree(seed in any::<u64>(), dim in 2usize..=3) {
        let mut rng = gen::rng(seed);
        let tuple: Vec<_> = (0..dim)
            .map(|_| {
                let count = rng.gen_range(1..=dim + 3);
                gen::random_polytope(&mut rng, dim, count, 4)
            })
            .collect();
        let c = mv_cross_check(&tuple).unwrap();
        prop_assert!(c.agree, "{:?}", c);
    }

    #[test]
    fn normalization_preserves_mixed_volume(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let profile = Profile::ALL[rng.gen_range(0..Profile::ALL.len())];
        let sys = gen::random_bivariate_system(&mut rng, profile, 20);
        let before = bkk_bound(&sys).unwrap();
        for u in enumerate_fan_directions(&sys.newton_polytopes()).unwrap() {
            let (normalized, t) = normalize_to_direction(&sys, u.as_slice()).unwrap();
            prop_assert_eq!(bkk_bound(&normalized).unwrap(), before);
            prop_assert_eq!(t.transform_direction(u.as_slice()), vec![0, -1]);
        }
    }

    #[test]
    fn division_respects_polytope_calculus(seed in any::<u64>(), i in 0usize..2) {
        let mut rng = gen::rng(seed);
        let support = gen::random_points(&mut rng, 2, 5, 3);
        let f = gen::random_polynomial(&mut rng, &support, 9);
        let alpha = gen::small_gaussian(&mut rng);
        let (q, r) = divide_linear(&f, i, &alpha).unwrap();
        let np = f.newton_polytope().unwrap();
        prop_assert!(!r.occurs(i));
        if !q.is_zero() {
            prop_assert!(quotient_polytope(&np, i).unwrap().contains(&q.newton_polytope().unwrap()));
        }
        if !r.is_zero() {
            prop_assert!(remainder_polytope(&np, i).unwrap().contains(&r.newton_polytope().unwrap()));
        }
    }

    #[test]
    fn solution_counts_respect_the_bound(seed in any::<u64>(), range in 1i64..=30) {
        let mut rng = gen::rng(seed);
        let profile = Profile::ALL[rng.gen_range(0..Profile::ALL.len())];
        let sys = gen::random_bivariate_system(&mut rng, profile, range);
        let bound = bkk_bound(&sys).unwrap();
        if let Ok(c) = count_torus_solutions_2d(&sys, DEFAULT_TOL) {
            prop_assert!(c.count as u128 <= bound);
            prop_assert!(c.solutions.iter().all(|s| s.residual < DEFAULT_TOL));
        }
    }

    #[test]
    fn facial_witnesses_are_exact(seed in any::<u64>(), n in 2usize..=3) {
        let (sys, alpha) = gen::planted_division(&mut gen::rng(seed), n);
        let u = Direction::neg_unit(n, n - 1);
        let report = analyze_direction(&sys, &u);
        prop_assert_ne!(report.status, Solvability::NoSolution);
        if let Some(w) = &report.witness {
            let facial = sys.facial_system(u.as_slice());
            prop_assert!(facial.polys().iter().all(|f| f.eval(w).is_zero()));
            prop_assert!(w.iter().all(|c| !c.is_zero()));
        }
        prop_assert!(!alpha.is_zero());
    }

    #[test]
    fn division_lifts_decrease_and_round_trip(seed in any::<u64>(), n in 2usize..=3) {
        let (sys, alpha) = gen::planted_division(&mut gen::rng(seed), n);
        if let Ok(lift) = lift_division(&sys, &Direction::neg_unit(n, n - 1), &[alpha], 1) {
            prop_assert!(lift.mv_after < lift.mv_before);
            prop_assert!(roundtrip_holds(&lift));
        }
    }

    #[test]
    fn dependency_lifts_decrease_and_round_trip(seed in any::<u64>(), n in 2usize..=3) {
        let (sys, _) = gen::planted_dependency(&mut gen::rng(seed), n);
        if let Ok(lift) = lift_linear_dependent(&sys, &Direction::neg_unit(n, n - 1), 0, 1) {
            prop_assert!(lift.mv_after < lift.mv_before);
            prop_assert!(roundtrip_holds(&lift));
        }
    }

    #[test]
    fn monomial_lifts_keep_mixed_volume(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = gen::rng(seed);
        let sys = gen::random_dense_system(&mut rng, n, 2, 0.6);
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        if let Ok(lift) = lift_monomial(&sys, &a) {
            prop_assert_eq!(lift.mv_after, lift.mv_before);
            prop_assert!(roundtrip_holds(&lift));
        }
    }

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let profile = Profile::ALL[rng.gen_range(0..Profile::ALL.len())];
        let mut sys = gen::random_bivariate_system(&mut rng, profile, 50);
        let c = GaussianRational::from_ratio(rng.gen_range(-7..=7), rng.gen_range(1..=6));
        let polys = sys.polys().iter().map(|f| f.scale(&(&c + &GaussianRational::i()))).collect();
        sys = sys.with_polys(polys).unwrap();
        let text = serialize_system(&sys);
        prop_assert_eq!(parse_system(&text).unwrap(), sys);
    }
}
