use proptest::prelude::*;

use popmatch::census::{count_g1prime, CPolicy};
use popmatch::experiment::{fmt_g, wilson};
use popmatch::fsgraph::build;
use popmatch::instance::{gen_full, gen_reduced, reduce, validate, Instance};
use popmatch::popularity::{enumerate_matchings, margin, DEFAULT_CAP};
use popmatch::wellformed::{
    check_orientation, find_witness, solve_orientation, to_matching, validate_witness,
    verify_well_formed, Matching,
};

fn sizes() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..12, 1usize..12, 1usize..40).prop_map(|(n1, n2, extra)| (n1, n2, n1 + n2 + extra))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn generated_instances_are_valid((n1, n2, m) in sizes(), seed in any::<u64>()) {
        let r = gen_reduced(n1, n2, m, seed).unwrap();
        prop_assert!(validate(&r).is_empty());
        let full = gen_full(n1, n2, m, seed).unwrap();
        prop_assert!(validate(&reduce(&full)).is_empty());
    }

    #[test]
    fn instance_files_round_trip((n1, n2, m) in sizes(), seed in any::<u64>()) {
        for inst in [
            Instance::Full(gen_full(n1, n2, m, seed).unwrap()),
            Instance::Reduced(gen_reduced(n1, n2, m, seed).unwrap()),
        ] {
            prop_assert_eq!(Instance::from_json(&inst.to_json()).unwrap(), inst);
        }
    }

    #[test]
    fn orientation_xor_witness((n1, n2, m) in sizes(), seed in any::<u64>()) {
        let r = gen_reduced(n1, n2, m, seed).unwrap();
        let g = build(&r).unwrap();
        match (solve_orientation(&g), find_witness(&g)) {
            (Some(o), None) => {
                prop_assert!(check_orientation(&g, &o).is_empty());
                let matching = to_matching(&o, &r).unwrap();
                prop_assert!(verify_well_formed(&matching, &r).is_empty());
            }
            (None, Some(w)) => prop_assert!(validate_witness(&w, &g), "{:?}", w),
            (o, w) => prop_assert!(false, "orientation {:?} with witness {:?}", o, w),
        }
    }

    #[test]
    fn g1_prime_count_implies_infeasible((n1, n2, m) in sizes(), seed in any::<u64>()) {
        let r = gen_reduced(n1, n2, m, seed).unwrap();
        if count_g1prime(&r) > 0 {
            prop_assert!(solve_orientation(&build(&r).unwrap()).is_none());
        }
    }

    #[test]
    fn margin_is_antisymmetric(seed in any::<u64>(), i in 0usize..360, j in 0usize..360) {
        let full = gen_full(2, 2, 6, seed).unwrap();
        let all: Vec<Vec<usize>> = enumerate_matchings(4, 6, DEFAULT_CAP).unwrap().collect();
        let split = |v: &Vec<usize>| Matching { a1: v[..2].to_vec(), a2: v[2..].to_vec() };
        let (a, b) = (split(&all[i]), split(&all[j]));
        let ab = margin(&a, &b, &full).unwrap().value;
        let ba = margin(&b, &a, &full).unwrap().value;
        prop_assert_eq!(ab, -ba);
        prop_assert_eq!(margin(&a, &a, &full).unwrap().value, 0);
    }

    #[test]
    fn wilson_interval_brackets_estimate(trials in 1usize..100_000, frac in 0.0f64..=1.0) {
        let successes = (frac * trials as f64) as usize;
        let (lo, hi) = wilson(successes, trials);
        let p = successes as f64 / trials as f64;
        prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
    }

    #[test]
    fn fmt_g_keeps_six_digits(x in -1e12f64..1e12) {
        let back: f64 = fmt_g(x).parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-6 * x.abs());
    }

    #[test]
    fn fractions_parse_exactly(a in 1u64..10_000, b in 1u64..10_000) {
        let CPolicy::Explicit(c) = format!("{a}/{b}").parse::<CPolicy>().unwrap() else {
            unreachable!()
        };
        prop_assert_eq!(c, num::BigRational::new(a.into(), b.into()));
    }
}
