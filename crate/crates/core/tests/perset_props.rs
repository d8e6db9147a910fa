//! Set algebra and sums checked pointwise against membership.

use addbasis::perset::literal::parse_in;
use addbasis::verify::{brute, gen};
use addbasis::{AmbientGroup, PeriodicSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pair(seed: u64) -> (AmbientGroup, PeriodicSet, PeriodicSet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = gen::random_ambient(&mut rng);
    let a = gen::random_set(&mut rng, &g, Default::default());
    let b = gen::random_set(&mut rng, &g, Default::default());
    (g, a, b)
}

fn points(g: &AmbientGroup) -> impl Iterator<Item = (usize, i64)> {
    let ord = g.order();
    (-80..80).flat_map(move |n| (0..ord).map(move |c| (c, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn boolean_operations_are_pointwise(seed in any::<u64>()) {
        let (g, a, b) = pair(seed);
        let u = a.union(&b).unwrap();
        let i = a.intersection(&b).unwrap();
        let d = a.difference(&b).unwrap();
        let x = a.symmetric_difference(&b).unwrap();
        for (c, n) in points(&g) {
            let (p, q) = (a.contains(c, n), b.contains(c, n));
            prop_assert_eq!(u.contains(c, n), p || q);
            prop_assert_eq!(i.contains(c, n), p && q);
            prop_assert_eq!(d.contains(c, n), p && !q);
            prop_assert_eq!(x.contains(c, n), p != q);
        }
        prop_assert_eq!(i.is_subset(&a).unwrap(), true);
        prop_assert_eq!(a.is_subset(&u).unwrap(), true);
    }

    #[test]
    fn literal_round_trip(seed in any::<u64>()) {
        let (g, a, _) = pair(seed);
        let text = a.to_string();
        prop_assert_eq!(parse_in(&text, Some(&g)).unwrap(), a);
    }

    #[test]
    fn translation_and_negation(seed in any::<u64>(), shift in -20i64..20) {
        let (g, a, _) = pair(seed);
        let c0 = (seed as usize) % g.order();
        let t = a.translate_by(c0, shift);
        let m = a.negate();
        for (c, n) in points(&g) {
            prop_assert_eq!(t.contains(g.add(c, c0), n + shift), a.contains(c, n));
            prop_assert_eq!(m.contains(g.neg(c), -n), a.contains(c, n));
        }
    }

    #[test]
    fn sums_match_the_windowed_oracle(seed in any::<u64>(), h in 1u32..4) {
        let (_, a, b) = pair(seed);
        let s = a.minkowski_sum(&b).unwrap();
        let w = brute::check_radius(&s, 60);
        prop_assert_eq!(brute::mismatch(&s, &brute::sum_on(&a, &b, w)), None);
        let f = a.h_fold(h).unwrap();
        let w = brute::check_radius(&f, 60);
        prop_assert_eq!(brute::mismatch(&f, &brute::fold_on(&a, h, w)), None);
    }

    #[test]
    fn sums_commute_and_fold_is_iterated_sum(seed in any::<u64>()) {
        let (_, a, b) = pair(seed);
        prop_assert_eq!(a.minkowski_sum(&b).unwrap(), b.minkowski_sum(&a).unwrap());
        prop_assert_eq!(a.h_fold(2).unwrap(), a.minkowski_sum(&a).unwrap());
    }

    #[test]
    fn almost_inclusion_reports_the_exceptions(seed in any::<u64>()) {
        let (_, a, b) = pair(seed);
        if let Some(extra) = a.subeq(&b).unwrap() {
            for &(c, n) in &extra {
                prop_assert!(a.contains(c, n) && !b.contains(c, n));
            }
            let rest = a.difference(&b).unwrap();
            prop_assert!(rest.is_finite());
            prop_assert_eq!(rest.window_elements().len(), extra.len());
        } else {
            prop_assert!(!a.difference(&b).unwrap().is_finite());
        }
    }
}
