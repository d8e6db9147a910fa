//! Decomposition of random numerical semigroups against brute-force gaps.

use addbasis::perset::Tail;
use addbasis::structure::{
    audit_translation_properties, structure_decompose, validate_semigroup, SemigroupKind,
};
use addbasis::{AmbientGroup, PeriodicSet};
use num_integer::Integer;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn numerical_semigroups_decompose(gens in prop::collection::vec(2i64..10, 2..4)) {
        prop_assume!(gens.iter().fold(0, |g, &x| x.gcd(&g)) == 1);
        // Every Frobenius number here is below 100, so adding 100 + ℕ and
        // folding enough times yields exactly the generated semigroup.
        let z = AmbientGroup::integers();
        let seed = PeriodicSet::from_integers(std::iter::once(0).chain(gens.iter().copied()))
            .union(&PeriodicSet::progression(&z, 0, 100, 1, Tail::Right))
            .unwrap();
        let t_set = seed.h_fold(60).unwrap();
        let t = validate_semigroup(&t_set).unwrap();
        prop_assert_eq!(t.kind(), SemigroupKind::Positive);
        let r = structure_decompose(&t).unwrap();
        let x = r.x.as_ref().unwrap().n;
        prop_assert_eq!(x, *gens.iter().min().unwrap());
        let gaps: Vec<i64> = (0..100).filter(|&n| !t_set.contains(0, n)).collect();
        let reported: Vec<i64> = r.sym_diff.iter().map(|e| e.n).collect();
        prop_assert_eq!(reported, gaps);
        prop_assert_eq!(r.r.len() as i64, x);
        let audit = audit_translation_properties(&t, &[(0, x)], &[], &[]).unwrap();
        prop_assert!(audit.failures.is_empty());
    }
}
