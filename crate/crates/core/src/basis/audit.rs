//! Per-instance audits: removal bounds, the two-bases sandwich, restriction
//! to `⟨B − B⟩`, and the passage from T to its Grothendieck group.

use std::collections::HashMap;

use num_integer::binomial;
use serde::Serialize;

use super::{
    essential_subsets, ord_star, require_basis, require_finite_subset, tail_element, to_groups,
    Elem,
};
use crate::abgroup::Subgroup;
use crate::error::{Error, Result};
use crate::perset::{GroupElement, PeriodicSet};
use crate::structure::{subgroup_set, t_cap_h, SemigroupT};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalEntry {
    pub f: Vec<GroupElement>,
    pub regular: bool,
    pub order: Option<u32>,
    /// `[G : ⟨(A∖F) − (A∖F)⟩]`.
    pub index: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairAudit {
    /// Largest regular singleton removal order seen on the instance.
    pub x_observed: u32,
    pub threshold: u32,
    /// Regular pairs whose removal order exceeds the threshold.
    pub count: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalStudy {
    pub h: u32,
    pub k: usize,
    pub is_group: bool,
    pub entries: Vec<RemovalEntry>,
    /// `⌊(2h³ + 8h² − 2h − 5)/3⌋`.
    pub x1_cap: u128,
    /// Indexed by `|F| − 1`.
    pub x2_caps: Vec<u128>,
    /// Tested elements a with `ord*(A ∖ {a}) > 2h`, non-regular ones included.
    pub s1_count: usize,
    pub s1_bound: usize,
    pub max_singleton_order: Option<u32>,
    pub s2: Option<PairAudit>,
    pub violations: Vec<String>,
}

pub fn x1_cap(h: u32) -> u128 {
    let h = h as i128;
    ((2 * h * h * h + 8 * h * h - 2 * h - 5).max(0) / 3) as u128
}

pub fn x2_cap(h: u32, k: u32) -> u128 {
    let b: u128 = binomial((h + k - 1) as u128, k as u128);
    (h as u128 + 1) * b * b - b + h as u128
}

pub fn index_bound(h: u32, f: usize) -> u128 {
    binomial(h as u128 + f as u128 - 1, h.saturating_sub(1) as u128)
}

/// The window of A plus `tail_samples` elements beyond it on each tail side.
fn audit_elements(a: &PeriodicSet, tail_samples: usize) -> Vec<Elem> {
    let mut v = a.window_elements();
    let (lo, hi) = a.window();
    let span = ((tail_samples + 1) * a.period()) as i64;
    if a.has_right_tail() {
        v.extend(a.elements_in(hi, hi + span).into_iter().take(tail_samples));
    }
    if a.has_left_tail() {
        let mut left = a.elements_in(lo - span, lo);
        left.reverse();
        v.extend(left.into_iter().take(tail_samples));
    }
    v
}

fn subsets_upto(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for s in &level {
            let start = s.last().map_or(0, |&x| x + 1);
            for i in start..n {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Removes every subset of size ⩽ k of the window plus sampled tail
/// elements and checks the explicit removal, index and bad-element bounds.
pub fn bound_audit(
    a: &PeriodicSet,
    t: &SemigroupT,
    k: usize,
    tail_samples: usize,
) -> Result<RemovalStudy> {
    let g = a.ambient();
    let h = ord_star(a, t)?
        .order()
        .ok_or_else(|| Error::precondition("A is a basis", a.to_string()))?;
    let elems = audit_elements(a, tail_samples);
    let is_group = t.is_group();
    let mut entries = Vec::new();
    let mut violations = Vec::new();
    let x1 = x1_cap(h);
    let x2_caps: Vec<u128> = (1..=k as u32).map(|j| x2_cap(h, j)).collect();
    for f in subsets_upto(elems.len(), k) {
        let fe: Vec<Elem> = f.iter().map(|&i| elems[i]).collect();
        let b = a.difference(&PeriodicSet::from_elements(g, fe.iter().copied()))?;
        let hb = if b.is_empty() {
            Subgroup::trivial(g)
        } else {
            Subgroup::differences_of(&b)?
        };
        let regular = hb.is_full();
        let order = if regular {
            ord_star(&b, t)?.order()
        } else {
            None
        };
        if regular && order.is_none() {
            violations.push(format!("criterion holds for {fe:?} but no finite order"));
        }
        let index = hb.index();
        let ib = index_bound(h, fe.len());
        if index.is_none_or(|i| i > ib) {
            violations.push(format!("index {index:?} > {ib} for F = {fe:?}"));
        }
        if let Some(o) = order {
            if o as u128 > x2_caps[fe.len() - 1] {
                violations.push(format!("x2 cap exceeded: {o} for F = {fe:?}"));
            }
            if fe.len() == 1 && o as u128 > x1 {
                violations.push(format!("x1 cap exceeded: {o} for F = {fe:?}"));
            }
        }
        entries.push(RemovalEntry {
            f: to_groups(g, &fe),
            regular,
            order,
            index,
        });
    }
    let singles = entries.iter().filter(|e| e.f.len() == 1);
    let s1_count = singles
        .clone()
        .filter(|e| e.order.is_none_or(|o| o > 2 * h))
        .count();
    let s1_bound = if is_group {
        2 * (h as usize).saturating_sub(1)
    } else {
        (h as usize) * (h as usize).saturating_sub(1)
    };
    if s1_count > s1_bound {
        violations.push(format!(
            "{s1_count} elements with removal order > 2h, bound {s1_bound}"
        ));
    }
    let max_singleton_order = singles.filter_map(|e| e.order).max();
    let s2 = match (is_group && k >= 2, max_singleton_order) {
        (true, Some(x)) => {
            let threshold = 2 * x;
            let count = entries
                .iter()
                .filter(|e| e.f.len() == 2 && e.order.is_some_and(|o| o > threshold))
                .count();
            let bound = 4 * h as usize * (x as usize - 1);
            if count > bound {
                violations.push(format!(
                    "{count} pairs above 2X = {threshold}, bound {bound}"
                ));
            }
            Some(PairAudit {
                x_observed: x,
                threshold,
                count,
                bound,
            })
        }
        _ => None,
    };
    Ok(RemovalStudy {
        h,
        k,
        is_group,
        entries,
        x1_cap: x1,
        x2_caps,
        s1_count,
        s1_bound,
        max_singleton_order,
        s2,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoBasesReport {
    pub h1: u32,
    pub h2: u32,
    pub h: u32,
    pub ok: bool,
}

/// Least `h1` with `h1·((F − b) ∪ {0}) + H = G`.
fn covering_steps(h: &Subgroup, steps: &[Elem]) -> Result<u32> {
    let g = h.ambient();
    let index = h.index().ok_or(Error::InfiniteIndex)? as usize;
    let mut reached: HashMap<Vec<i128>, Elem> =
        steps.iter().map(|&e| (h.coset_key(e.0, e.1), e)).collect();
    let mut n = 1;
    while reached.len() < index {
        let mut next = reached.clone();
        for &(c, m) in reached.values() {
            for &(d, k) in steps {
                let s = (g.add(c, d), m + k);
                next.entry(h.coset_key(s.0, s.1)).or_insert(s);
            }
        }
        if next.len() == reached.len() {
            return Err(Error::precondition(
                "⟨F − b + H⟩ = G",
                "the cosets reached by F − b stop short of G/H",
            ));
        }
        reached = next;
        n += 1;
    }
    Ok(n)
}

fn element_of(s: &PeriodicSet, b: &GroupElement) -> Result<Elem> {
    let c = s.ambient().index(&b.torsion)?;
    if !s.contains(c, b.n) {
        return Err(Error::precondition("b ∈ B", format!("{b} ∉ {s}")));
    }
    Ok((c, b.n))
}

pub fn twobases_audit(
    f: &PeriodicSet,
    b_set: &PeriodicSet,
    b: &GroupElement,
    t: &SemigroupT,
) -> Result<TwoBasesReport> {
    let g = t.ambient();
    g.check_same(f.ambient())?;
    g.check_same(b_set.ambient())?;
    if !f.is_finite() {
        return Err(Error::precondition("F finite", f.to_string()));
    }
    if !f.intersection(b_set)?.is_empty() {
        return Err(Error::precondition(
            "F ∩ B = ∅",
            format!("{f} meets {b_set}"),
        ));
    }
    let be = element_of(b_set, b)?;
    let h = Subgroup::differences_of(b_set)?;
    if h.index().is_none() {
        return Err(Error::precondition("[G : ⟨B − B⟩] finite", h.to_string()));
    }
    let mut steps: Vec<Elem> = vec![(0, 0)];
    let fe = f.window_elements();
    steps.extend(fe.iter().map(|&(c, n)| (g.sub(c, be.0), n - be.1)));
    let spanned = Subgroup::generated_by(
        g,
        h.generators()
            .iter()
            .map(|x| (g.index(&x.torsion).expect("own ambient"), x.n))
            .chain(steps.iter().copied()),
    )?;
    if !spanned.is_full() {
        return Err(Error::precondition("⟨F − b + H⟩ = G", spanned.to_string()));
    }
    let h1 = covering_steps(&h, &steps)?;
    let (t_h, re) = t_cap_h(t, &h)?;
    let shifted = re.transport(&b_set.translate_by(g.neg(be.0), -be.1))?;
    let h2 = ord_star(&shifted, &t_h)?
        .order()
        .ok_or_else(|| Error::precondition("B − b is an H-basis of T ∩ H", shifted.to_string()))?;
    let whole = f.union(b_set)?;
    let order = ord_star(&whole, t)?
        .order()
        .ok_or_else(|| Error::Certification(format!("F ∪ B = {whole} is not a basis")))?;
    Ok(TwoBasesReport {
        h1,
        h2,
        h: order,
        ok: h1 < order && order <= h1 + h2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NnReport {
    pub subgroup: Subgroup,
    pub index: Option<u128>,
    /// `ord*_{T∩H}(B − b)` in coordinates on H.
    pub order_in_h: Option<u32>,
    pub holds: bool,
}

/// With `B = A ∖ F` and `H = ⟨B − B⟩`, checks that `B − b` is a basis of
/// `T ∩ H`.
pub fn lemma_nn_audit(a: &PeriodicSet, f: &PeriodicSet, t: &SemigroupT) -> Result<NnReport> {
    require_finite_subset(f, a)?;
    require_basis(a, t)?;
    let g = a.ambient();
    let b_set = a.difference(f)?;
    let h = Subgroup::differences_of(&b_set)?;
    let index = h.index();
    if index.is_none() {
        return Ok(NnReport {
            subgroup: h,
            index,
            order_in_h: None,
            holds: false,
        });
    }
    let (c, n) = tail_element(&b_set)
        .ok_or_else(|| Error::precondition("A ∖ F infinite", b_set.to_string()))?;
    let (t_h, re) = t_cap_h(t, &h)?;
    let moved = re.transport(&b_set.translate_by(g.neg(c), -n))?;
    let order_in_h = ord_star(&moved, &t_h)?.order();
    Ok(NnReport {
        subgroup: h,
        index,
        order_in_h,
        holds: order_in_h.is_some(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupBasisReport {
    /// Union of the essential subsets of A.
    pub f: Vec<GroupElement>,
    /// `F ∪ (H + b)`, absent when F is empty.
    pub a_prime: Option<String>,
    pub order_t: u32,
    pub order_g: Option<u32>,
    pub essentials_t: Vec<Vec<GroupElement>>,
    pub essentials_g: Vec<Vec<GroupElement>>,
    pub order_ok: bool,
    pub equal: bool,
}

/// Builds `A' = F ∪ (H + b)` over the whole group and compares its
/// essential subsets with those of A.
pub fn derive_group_basis(
    a: &PeriodicSet,
    t: &SemigroupT,
) -> Result<(Option<PeriodicSet>, GroupBasisReport)> {
    let g = a.ambient();
    let order_t = ord_star(a, t)?
        .order()
        .ok_or_else(|| Error::precondition("A is a basis", a.to_string()))?;
    let res_len = super::reservoir_raw(a, t)?.elements.len().max(1);
    let fam = essential_subsets(a, t, res_len)?;
    let union = fam.union();
    let mut ess_t = fam.essentials.clone();
    ess_t.iter_mut().for_each(|e| e.sort());
    ess_t.sort();
    if union.is_empty() {
        return Ok((
            None,
            GroupBasisReport {
                f: union,
                a_prime: None,
                order_t,
                order_g: None,
                essentials_t: ess_t,
                essentials_g: Vec::new(),
                order_ok: true,
                equal: true,
            },
        ));
    }
    let f_set = PeriodicSet::from_elements(
        g,
        union
            .iter()
            .map(|x| (g.index(&x.torsion).expect("own ambient"), x.n)),
    );
    let b_set = a.difference(&f_set)?;
    let h = Subgroup::differences_of(&b_set)?;
    let base = tail_element(&b_set).expect("A ∖ F keeps the tails of A");
    let a_prime = subgroup_set(&h)?
        .translate_by(base.0, base.1)
        .union(&f_set)?;
    let gt = SemigroupT::whole_group(g);
    let order_g = ord_star(&a_prime, &gt)?.order();
    let fam_g = essential_subsets(&a_prime, &gt, union.len())?;
    let mut ess_g = fam_g.essentials.clone();
    ess_g.iter_mut().for_each(|e| e.sort());
    ess_g.sort();
    Ok((
        Some(a_prime.clone()),
        GroupBasisReport {
            f: union,
            a_prime: Some(a_prime.to_string()),
            order_t,
            order_g,
            order_ok: order_g.is_some_and(|o| o <= order_t),
            equal: ess_t == ess_g,
            essentials_t: ess_t,
            essentials_g: ess_g,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perset::literal::{parse, parse_in};
    use crate::perset::AmbientGroup;

    fn nat() -> SemigroupT {
        SemigroupT::nonnegative(&AmbientGroup::integers())
    }

    #[test]
    fn explicit_caps() {
        assert_eq!(x1_cap(2), 13);
        assert_eq!(x1_cap(1), 1);
        assert_eq!(x2_cap(2, 1), 3 * 4 - 2 + 2);
        assert_eq!(index_bound(2, 1), 2);
        assert_eq!(index_bound(3, 2), 6);
    }

    #[test]
    fn audits_of_small_bases() {
        let s = bound_audit(&parse("{1}, 0+2N").unwrap(), &nat(), 1, 5).unwrap();
        assert_eq!(s.h, 2);
        assert!(s.violations.is_empty(), "{:?}", s.violations);
        assert!(s.max_singleton_order.unwrap() <= 4);
        let s = bound_audit(&parse("0+1N").unwrap(), &nat(), 1, 4).unwrap();
        assert_eq!(s.s1_count, 0);
        let z = SemigroupT::whole_group(&AmbientGroup::integers());
        let s = bound_audit(&parse("{0, 1}, 0+2Z").unwrap(), &z, 2, 10).unwrap();
        assert!(s.s1_count <= 2);
        assert!(s.s2.is_some());
        assert!(s.violations.is_empty(), "{:?}", s.violations);
    }

    #[test]
    fn two_bases_examples() {
        let t = nat();
        let r = twobases_audit(
            &parse("{1}").unwrap(),
            &parse("0+2N").unwrap(),
            &GroupElement::integer(0),
            &t,
        )
        .unwrap();
        assert_eq!((r.h1, r.h2, r.h, r.ok), (1, 1, 2, true));
        let r = twobases_audit(
            &parse("{1}").unwrap(),
            &parse("0+3N").unwrap(),
            &GroupElement::integer(0),
            &t,
        )
        .unwrap();
        assert_eq!((r.h1, r.h2, r.h, r.ok), (2, 1, 3, true));
        let r = twobases_audit(
            &parse("{3}").unwrap(),
            &parse("0+2N").unwrap(),
            &GroupElement::integer(0),
            &t,
        )
        .unwrap();
        assert_eq!((r.h1, r.h2, r.h, r.ok), (1, 1, 2, true));
        assert!(twobases_audit(
            &parse("{2}").unwrap(),
            &parse("0+2N").unwrap(),
            &GroupElement::integer(0),
            &t
        )
        .is_err());
    }

    #[test]
    fn nn_examples() {
        let t = nat();
        let r =
            lemma_nn_audit(&parse("{0, 1}, 0+2N").unwrap(), &parse("{1}").unwrap(), &t).unwrap();
        assert_eq!(r.index, Some(2));
        assert_eq!(r.order_in_h, Some(1));
        let r = lemma_nn_audit(&parse("0+1N").unwrap(), &parse("{0}").unwrap(), &t).unwrap();
        assert!(r.holds && r.index == Some(1));
        let r =
            lemma_nn_audit(&parse("{0, 1}, 0+3N").unwrap(), &parse("{1}").unwrap(), &t).unwrap();
        assert_eq!((r.index, r.order_in_h), (Some(3), Some(1)));
    }

    #[test]
    fn group_basis_correspondence() {
        let t = nat();
        let (ap, r) = derive_group_basis(&parse("{1}, 0+2N").unwrap(), &t).unwrap();
        assert_eq!(ap.unwrap(), parse("{1}, 0+2Z").unwrap());
        assert!(r.equal && r.order_ok);
        assert_eq!(r.essentials_t, vec![vec![GroupElement::integer(1)]]);
        let (ap, r) = derive_group_basis(&parse("0+1N").unwrap(), &t).unwrap();
        assert!(ap.is_none() && r.equal);
        let (ap, r) = derive_group_basis(&parse("{0, 1}, 0+4N, 2+4N").unwrap(), &t).unwrap();
        assert_eq!(ap.unwrap(), parse("{1}, 0+2Z").unwrap());
        assert!(r.equal);
        let g = AmbientGroup::new(vec![2]).unwrap();
        let a = parse_in("(1){0}, (0){1}, (0)0+2N", Some(&g)).unwrap();
        let (_, r) = derive_group_basis(&a, &SemigroupT::nonnegative(&g)).unwrap();
        assert!(r.equal && r.order_ok);
        assert_eq!(r.essentials_t.len(), 2);
    }
}
