//! Density axioms on eventually periodic subsets of the audit carriers.

use addbasis::density::{audit_semigroups, natural_density};
use addbasis::verify::gen::{random_set, Shape};
use addbasis::PeriodicSet;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(
    seed: u64,
) -> (
    addbasis::structure::SemigroupT,
    PeriodicSet,
    PeriodicSet,
    ChaCha8Rng,
) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts = audit_semigroups();
    let t = ts[rng.gen_range(0..ts.len())].clone();
    let shape = Shape {
        one_sided: if t.is_group() { 0.0 } else { 1.0 },
        ..Shape::default()
    };
    let a = random_set(&mut rng, t.ambient(), shape)
        .intersection(t.carrier())
        .unwrap();
    let b = random_set(&mut rng, t.ambient(), shape)
        .intersection(t.carrier())
        .unwrap();
    (t, a, b, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn finitely_additive_and_bounded(seed in any::<u64>()) {
        let (t, a, b, _) = setup(seed);
        let d = |s: &PeriodicSet| natural_density(s, &t).unwrap().0;
        let (da, db) = (d(&a), d(&b));
        prop_assert!(da >= BigRational::zero() && da <= BigRational::one());
        prop_assert_eq!(d(&a.union(&b).unwrap()) + d(&a.intersection(&b).unwrap()), da.clone() + db);
        prop_assert_eq!(d(t.carrier()), BigRational::one());
        prop_assert!(d(&a.intersection(&b).unwrap()) <= da);
    }

    #[test]
    fn translation_invariant(seed in any::<u64>()) {
        let (t, a, _, mut rng) = setup(seed);
        let xs = t.carrier().elements_in(0, 10);
        let (c, n) = xs[rng.gen_range(0..xs.len())];
        let moved = a.translate_by(c, n);
        prop_assert_eq!(natural_density(&moved, &t).unwrap(), natural_density(&a, &t).unwrap());
    }

    #[test]
    fn inversion_invariant_on_groups(seed in any::<u64>()) {
        let (t, a, _, _) = setup(seed);
        if t.is_group() {
            prop_assert_eq!(natural_density(&a.negate(), &t).unwrap(), natural_density(&a, &t).unwrap());
        }
    }

    #[test]
    fn finite_sets_are_null(seed in any::<u64>()) {
        let (t, a, _, _) = setup(seed);
        let finite = PeriodicSet::from_elements(t.ambient(), a.window_elements());
        prop_assert!(natural_density(&finite, &t).unwrap().is_zero());
    }
}

#[test]
fn counting_density_of_naturals() {
    let t = &audit_semigroups()[0];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 100_000i64;
    for _ in 0..20 {
        let s = random_set(
            &mut rng,
            t.ambient(),
            Shape {
                one_sided: 1.0,
                ..Shape::default()
            },
        )
        .intersection(t.carrier())
        .unwrap();
        let exact = natural_density(&s, t).unwrap().0;
        let count = s.elements_in(0, n).len() as i64;
        let (lo, hi) = s.window();
        let slack = BigRational::new((s.period() as i64 + hi - lo).into(), n.into());
        let err = BigRational::new(count.into(), n.into()) - exact;
        assert!(err.clone() <= slack && -err <= slack, "{s}");
    }
}
