//! Seeded random bases over the standard carriers.

use rand::Rng;

use crate::abgroup::Subgroup;
use crate::basis::{ord_star, reservoir};
use crate::error::Result;
use crate::perset::literal::parse;
use crate::perset::{AmbientGroup, PeriodicSet, Tail};
use crate::structure::{subgroup_set, validate_semigroup, SemigroupT};
use crate::verify::gen::{random_set, Shape};

#[derive(Clone, Debug)]
pub struct Carrier {
    pub name: &'static str,
    pub t: SemigroupT,
}

/// ℕ, ℤ, C2 ⊕ ℕ and the numerical semigroup ⟨3, 5⟩.
pub fn carriers() -> Vec<Carrier> {
    let z = AmbientGroup::integers();
    let c2 = AmbientGroup::new(vec![2]).expect("valid");
    let ns = validate_semigroup(&parse("{0, 3, 5, 6}, 8+1N").expect("literal")).expect("semigroup");
    vec![
        Carrier {
            name: "N",
            t: SemigroupT::nonnegative(&z),
        },
        Carrier {
            name: "Z",
            t: SemigroupT::whole_group(&z),
        },
        Carrier {
            name: "C2+N",
            t: SemigroupT::nonnegative(&c2),
        },
        Carrier {
            name: "<3,5>",
            t: ns,
        },
    ]
}

#[derive(Clone, Debug)]
pub struct CorpusBasis {
    pub carrier: &'static str,
    pub t: SemigroupT,
    pub a: PeriodicSet,
    pub order: u32,
}

/// A random subset of T that is a basis of order at most `max_order`.
pub fn random_basis(
    rng: &mut impl Rng,
    t: &SemigroupT,
    max_order: u32,
) -> Result<(PeriodicSet, u32)> {
    loop {
        let shape = Shape {
            max_period: 6,
            max_width: 10,
            one_sided: if t.is_group() { 0.0 } else { 1.0 },
            density: rng.gen_range(0.25..0.8),
        };
        let a = random_set(rng, t.ambient(), shape).intersection(t.carrier())?;
        if a.is_empty() {
            continue;
        }
        if let Some(h) = ord_star(&a, t)?.order() {
            if h <= max_order {
                return Ok((a, h));
            }
        }
    }
}

/// `per_carrier` bases of each carrier.
pub fn corpus(rng: &mut impl Rng, per_carrier: usize, max_order: u32) -> Result<Vec<CorpusBasis>> {
    let mut out = Vec::new();
    for c in carriers() {
        for _ in 0..per_carrier {
            let (a, order) = random_basis(rng, &c.t, max_order)?;
            out.push(CorpusBasis {
                carrier: c.name,
                t: c.t.clone(),
                a,
                order,
            });
        }
    }
    Ok(out)
}

/// A basis of ℕ whose reservoir is nonempty: the tail sits in a proper
/// coset mod p and window elements outside it restore the full group.
pub fn reservoir_basis_of_naturals(rng: &mut impl Rng) -> Result<PeriodicSet> {
    let z = AmbientGroup::integers();
    let t = SemigroupT::nonnegative(&z);
    loop {
        let p = rng.gen_range(2..=6usize);
        let d = [2, 3]
            .into_iter().find(|d| p % d == 0)
            .unwrap_or(p);
        let base = rng.gen_range(0..d as i64);
        let mut a = PeriodicSet::empty(&z);
        for r in (base..p as i64).step_by(d) {
            if r == base || rng.gen_bool(0.5) {
                a = a.union(&PeriodicSet::progression(&z, 0, r, p, Tail::Right))?;
            }
        }
        let extra: Vec<(usize, i64)> = (0..rng.gen_range(1..=3))
            .map(|_| (0, rng.gen_range(0..12)))
            .collect();
        a = a.union(&PeriodicSet::from_elements(&z, extra))?;
        if ord_star(&a, &t)?.order().is_some_and(|h| h <= 8) && !reservoir(&a, &t)?.1.is_empty() {
            return Ok(a);
        }
    }
}

/// A basis `F ∪ B` of T with B infinite inside a proper coset `b0 + H` and F
/// a few elements of T outside B, so the reservoir is nonempty.
pub fn reservoir_basis(
    rng: &mut impl Rng,
    t: &SemigroupT,
    max_order: u32,
) -> Result<(PeriodicSet, u32)> {
    let g = t.ambient();
    loop {
        let m = rng.gen_range(2..=4i64);
        let h = Subgroup::generated_by(
            g,
            [(0, m), (rng.gen_range(0..g.order()), rng.gen_range(0..m))],
        )?;
        if h.is_full() {
            continue;
        }
        let coset =
            subgroup_set(&h)?.translate_by(rng.gen_range(0..g.order()), rng.gen_range(0..m));
        let shape = Shape {
            max_period: 6,
            max_width: 8,
            one_sided: if t.is_group() { 0.0 } else { 1.0 },
            density: rng.gen_range(0.4..0.9),
        };
        let b = random_set(rng, g, shape)
            .intersection(&coset)?
            .intersection(t.carrier())?;
        let pool = t.carrier().elements_in(-6, 12);
        let f = PeriodicSet::from_elements(
            g,
            (0..rng.gen_range(1..=3)).map(|_| pool[rng.gen_range(0..pool.len())]),
        );
        let a = b.union(&f)?;
        if b.is_finite() {
            continue;
        }
        if let Some(order) = ord_star(&a, t)?.order().filter(|&o| o <= max_order) {
            if !reservoir(&a, t)?.1.is_empty() {
                return Ok((a, order));
            }
        }
    }
}
