//! Bases of prescribed order, built and then certified.
//!
//! Candidates are tried in turn and the first whose certified order is
//! exactly h wins:
//!
//! 1. `R ∪ {x} ∪ (h·x)ℕ` from the decomposition `T = R + xℕ`;
//! 2. the product form `(C × {0}) ∪ {(0,1)} ∪ (C × hℕ)`, moved by the
//!    conductor s of T so that it lies inside T. Each `(c, qh + r)` with
//!    `0 ⩽ r < h` is `(c, qh)` plus r copies of `(0,1)`, while `(0, qh + h − 1)`
//!    needs all h summands, so the order is exactly h; translation changes
//!    neither fact because `T ∼ C × ℕ`;
//! 3. a bounded enumeration of small periodic sets inside T.

use serde::Serialize;

use super::ord_star;
use super::search::{candidate_set, Layout};
use crate::error::{Error, Result};
use crate::perset::{PeriodicSet, Tail};
use crate::structure::{structure_decompose, SemigroupKind, SemigroupT};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub basis: String,
    pub order: u32,
    /// Which candidate family certified: `decomposition`, `product` or
    /// `enumeration`.
    pub candidate: &'static str,
    /// Candidates tried before success, with their certified orders.
    pub rejected: Vec<(String, Option<u32>)>,
}

fn decomposition_candidate(t: &SemigroupT, h: u32) -> Result<PeriodicSet> {
    let g = t.ambient();
    let rep = structure_decompose(t)?;
    let (xn, tail) = match rep.x {
        Some(x) => (x.n, if x.n > 0 { Tail::Right } else { Tail::Left }),
        None => (1, Tail::Both),
    };
    let r_set = if t.is_group() {
        PeriodicSet::from_elements(g, [(0, 0)])
    } else {
        PeriodicSet::from_elements(
            g,
            rep.r
                .iter()
                .map(|e| (g.index(&e.torsion).expect("own ambient"), e.n)),
        )
    };
    let step = (h as i64 * xn).unsigned_abs() as usize;
    let multiples = PeriodicSet::progression(g, 0, 0, step, tail);
    r_set
        .union(&PeriodicSet::from_elements(g, [(0, xn)]))?
        .union(&multiples)
}

fn product_candidate(t: &SemigroupT, h: u32) -> Result<PeriodicSet> {
    let g = t.ambient();
    let tail = if t.is_group() {
        Tail::Both
    } else {
        Tail::Right
    };
    let mut p = PeriodicSet::from_elements(g, (0..g.order()).map(|c| (c, 0)).chain([(0, 1)]));
    for c in 0..g.order() {
        p = p.union(&PeriodicSet::progression(g, c, 0, h as usize, tail))?;
    }
    let (lo, hi) = t.carrier().window();
    Ok(match t.kind() {
        SemigroupKind::Group => p,
        SemigroupKind::Positive => p.translate_by(0, hi),
        SemigroupKind::Negative => p.negate().translate_by(0, lo - 1),
    })
}

pub fn construct_exact_order_basis(t: &SemigroupT, h: u32) -> Result<ConstructionReport> {
    if h < 2 {
        return Err(Error::precondition("h ⩾ 2", format!("h = {h}")));
    }
    let mut rejected = Vec::new();
    let mut attempt = |a: PeriodicSet, label: &'static str| -> Result<Option<ConstructionReport>> {
        if !a.is_subset(t.carrier())? {
            rejected.push((a.to_string(), None));
            return Ok(None);
        }
        let order = ord_star(&a, t)?.order();
        if order == Some(h) {
            return Ok(Some(ConstructionReport {
                basis: a.to_string(),
                order: h,
                candidate: label,
                rejected: std::mem::take(&mut rejected),
            }));
        }
        rejected.push((a.to_string(), order));
        Ok(None)
    };
    if let Some(r) = attempt(decomposition_candidate(t, h)?, "decomposition")? {
        return Ok(r);
    }
    if let Some(r) = attempt(product_candidate(t, h)?, "product")? {
        return Ok(r);
    }
    let layout = Layout::for_semigroup(t);
    let xn = structure_decompose(t)?
        .x
        .map_or(1, |x| x.n.unsigned_abs() as usize);
    for p in 1..=h as usize * xn {
        for w in 0..=4 {
            let bits = layout.bits(p, w);
            if bits > 16 {
                continue;
            }
            for mask in 0..1u64 << bits {
                if let Some(a) = candidate_set(&layout, p, w, mask) {
                    if let Some(r) = attempt(a, "enumeration")? {
                        return Ok(r);
                    }
                }
            }
        }
    }
    Err(Error::Certification(format!(
        "no candidate of order exactly {h} over {}",
        t.carrier()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perset::literal::{parse, parse_in};
    use crate::perset::AmbientGroup;
    use crate::structure::validate_semigroup;

    #[test]
    fn naturals() {
        let t = SemigroupT::nonnegative(&AmbientGroup::integers());
        let r = construct_exact_order_basis(&t, 3).unwrap();
        assert_eq!(parse(&r.basis).unwrap(), parse("{0, 1}, 0+3N").unwrap());
        let r = construct_exact_order_basis(&t, 2).unwrap();
        assert_eq!(parse(&r.basis).unwrap(), parse("{0, 1}, 0+2N").unwrap());
    }

    #[test]
    fn product_with_torsion() {
        let g = AmbientGroup::new(vec![2]).unwrap();
        let t = SemigroupT::nonnegative(&g);
        // The decomposition candidate misses (1, odd) in 2A.
        let naive = parse_in("(0){0, 1}, (1){0}, (0)0+2N", Some(&g)).unwrap();
        assert_eq!(ord_star(&naive, &t).unwrap().order(), Some(3));
        let r = construct_exact_order_basis(&t, 2).unwrap();
        assert_eq!(r.order, 2);
        assert_eq!(r.candidate, "product");
    }

    #[test]
    fn numerical_semigroup_and_group() {
        let t = validate_semigroup(&parse("{0, 3, 5, 6}, 8+1N").unwrap()).unwrap();
        for h in 2..=5 {
            let r = construct_exact_order_basis(&t, h).unwrap();
            let a = parse(&r.basis).unwrap();
            assert!(a.is_subset(t.carrier()).unwrap());
            assert_eq!(ord_star(&a, &t).unwrap().order(), Some(h));
        }
        let z = SemigroupT::whole_group(&AmbientGroup::integers());
        assert_eq!(construct_exact_order_basis(&z, 4).unwrap().order, 4);
    }
}
