//! Subgroup normal forms against direct arithmetic.

use addbasis::abgroup::Subgroup;
use addbasis::verify::gen;
use addbasis::AmbientGroup;
use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn integer_subgroups_are_gcd_lattices(gens in prop::collection::vec(-40i64..40, 1..5)) {
        let z = AmbientGroup::integers();
        let h = Subgroup::generated_by(&z, gens.iter().map(|&n| (0, n))).unwrap();
        let d = gens.iter().fold(0i64, |acc, &n| acc.gcd(&n));
        prop_assert_eq!(h.index(), if d == 0 { None } else { Some(d as u128) });
        for n in -50..50 {
            prop_assert_eq!(h.contains(0, n), if d == 0 { n == 0 } else { n % d == 0 });
        }
    }

    #[test]
    fn index_counts_cosets(seed in any::<u64>(), k in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gen::random_ambient(&mut rng);
        let mut gens: Vec<(usize, i64)> = (0..k)
            .map(|_| (rng.gen_range(0..g.order()), rng.gen_range(-12i64..12)))
            .collect();
        gens.push((0, rng.gen_range(1..8i64)));
        let h = Subgroup::generated_by(&g, gens.iter().copied()).unwrap();
        for &(c, n) in &gens {
            prop_assert!(h.contains(c, n));
        }
        let idx = h.index().unwrap();
        // Every coset meets C × [0, 8·|C|·idx), so counting keys there is exact.
        let span = 8 * g.order() as i64 * idx as i64;
        let mut keys = std::collections::HashSet::new();
        for n in 0..span {
            for c in 0..g.order() {
                keys.insert(h.coset_key(c, n));
            }
        }
        prop_assert_eq!(keys.len() as u128, idx);
        let q = h.quotient();
        prop_assert_eq!(q.invariant_factors.iter().map(|&d| d as u128).product::<u128>(), idx);
    }

    #[test]
    fn differences_lie_in_the_difference_group(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gen::random_ambient(&mut rng);
        let a = gen::random_set(&mut rng, &g, Default::default());
        let h = Subgroup::differences_of(&a).unwrap();
        let elems = a.elements_in(-20, 20);
        for &(c, n) in elems.iter().take(12) {
            for &(d, m) in elems.iter().take(12) {
                prop_assert!(h.contains(g.sub(c, d), n - m));
            }
        }
    }
}
