//! Removal, essentiality and order invariants on random bases.

use addbasis::abgroup::Subgroup;
use addbasis::basis::{
    erdos_graham, essential_subsets, index_bound, ord_star, order_by_folding, order_cap,
};
use addbasis::structure::SemigroupT;
use addbasis::verify::corpus::{carriers, random_basis, reservoir_basis_of_naturals};
use addbasis::{GroupElement, PeriodicSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> (SemigroupT, PeriodicSet, u32, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cs = carriers();
    let t = cs[rng.gen_range(0..cs.len())].t.clone();
    let (a, h) = random_basis(&mut rng, &t, 6).unwrap();
    (t, a, h, rng)
}

fn as_set(a: &PeriodicSet, es: &[GroupElement]) -> PeriodicSet {
    let g = a.ambient();
    PeriodicSet::from_elements(g, es.iter().map(|e| (g.index(&e.torsion).unwrap(), e.n)))
}

fn pick(rng: &mut ChaCha8Rng, a: &PeriodicSet) -> (usize, i64) {
    let (lo, hi) = a.window();
    let pool = a.elements_in(lo - 2 * a.period() as i64, hi + a.period() as i64);
    pool[rng.gen_range(0..pool.len())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_matches_folding(seed in any::<u64>()) {
        let (t, a, h, _) = instance(seed);
        prop_assert_eq!(order_by_folding(&a, &t, 2 * order_cap(&a) + 2).unwrap(), Some(h));
        prop_assert!(h <= order_cap(&a));
    }

    #[test]
    fn exceptional_sets_form_an_upset(seed in any::<u64>()) {
        let (t, a, _, mut rng) = instance(seed);
        let x = pick(&mut rng, &a);
        let y = pick(&mut rng, &a);
        let g = a.ambient();
        let small = PeriodicSet::from_elements(g, [x]);
        let big = PeriodicSet::from_elements(g, [x, y]);
        if !erdos_graham(&a, &small, &t).unwrap() {
            prop_assert!(!erdos_graham(&a, &big, &t).unwrap());
        }
        if erdos_graham(&a, &big, &t).unwrap() {
            prop_assert!(erdos_graham(&a, &small, &t).unwrap());
        }
    }

    #[test]
    fn essentials_are_minimal_exceptional_sets(seed in any::<u64>(), reservoir in any::<bool>()) {
        let (mut t, mut a, mut h, mut rng) = instance(seed);
        if reservoir {
            t = carriers()[0].t.clone();
            a = reservoir_basis_of_naturals(&mut rng).unwrap();
            h = ord_star(&a, &t).unwrap().order().unwrap();
        }
        let fam = essential_subsets(&a, &t, 2).unwrap();
        prop_assert!(fam.cyclic_cross_check);
        for e in &fam.essentials {
            let es = as_set(&a, e);
            prop_assert!(!erdos_graham(&a, &es, &t).unwrap());
            let rest = a.difference(&es).unwrap();
            let sub = Subgroup::differences_of(&rest).unwrap();
            let idx = sub.index();
            prop_assert!(idx.is_some_and(|i| i > 1 && i <= index_bound(h, e.len())));
            for i in 0..e.len() {
                let mut smaller = e.clone();
                smaller.remove(i);
                prop_assert!(erdos_graham(&a, &as_set(&a, &smaller), &t).unwrap());
            }
        }
        // At most h − 1 essential singletons.
        prop_assert!((fam.counts[0] as u32) < h);
        let all: Vec<GroupElement> = fam.union();
        prop_assert!(all.iter().all(|x| fam.reservoir.contains(x)));
    }

    #[test]
    fn regular_removals_stay_bases(seed in any::<u64>()) {
        let (t, a, h, mut rng) = instance(seed);
        let x = pick(&mut rng, &a);
        let f = PeriodicSet::from_elements(a.ambient(), [x]);
        let rest = a.difference(&f).unwrap();
        let regular = erdos_graham(&a, &f, &t).unwrap();
        let order = if rest.is_empty() { None } else { ord_star(&rest, &t).unwrap().order() };
        prop_assert_eq!(regular, order.is_some());
        if let Some(o) = order {
            prop_assert!(o >= h || a.contains(x.0, x.1));
        }
    }
}

#[test]
fn reservoir_bases_have_essentials() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let t = &carriers()[0].t;
    let with = (0..40)
        .filter(|_| {
            let a = reservoir_basis_of_naturals(&mut rng).unwrap();
            !essential_subsets(&a, t, 2).unwrap().essentials.is_empty()
        })
        .count();
    assert!(with > 0);
}
