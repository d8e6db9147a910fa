//! Searching small periodic bases for extreme essential counts and removal
//! orders.
//!
//! A candidate is a window of width w starting at the least height of T plus
//! a tail pattern of period p (two patterns when T is a group). Candidates
//! come in increasing `(p, w, popcount)` order. When a `(p, w)` layer has more
//! than `exhaustive_cutoff` masks, a fixed number of masks is drawn from a
//! ChaCha stream seeded by `(seed, p, w)` instead, so every run with the same
//! budget sees the same candidates. Over `C × ℕ` itself the search only keeps
//! sets containing `(0, 0)`: translating a basis by minus its least element
//! keeps it inside `C × ℕ` and changes neither its order nor any removal
//! order.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{essential_subsets, ord_star, to_group, Elem};
use crate::error::Result;
use crate::perset::{AmbientGroup, BitRow, GroupElement, PeriodicSet};
use crate::structure::{SemigroupKind, SemigroupT};

#[derive(Clone, Debug)]
pub(crate) struct Layout {
    g: AmbientGroup,
    base: i64,
    normalize: bool,
    two_sided: bool,
    mirror: bool,
}

impl Layout {
    pub(crate) fn for_semigroup(t: &SemigroupT) -> Self {
        let g = t.ambient().clone();
        let c = t.carrier();
        match t.kind() {
            SemigroupKind::Group => Layout {
                g,
                base: 0,
                normalize: false,
                two_sided: true,
                mirror: false,
            },
            SemigroupKind::Positive => Layout {
                normalize: *c == PeriodicSet::nonnegative(&g),
                base: c.window().0,
                g,
                two_sided: false,
                mirror: false,
            },
            SemigroupKind::Negative => {
                let flipped = c.negate();
                Layout {
                    normalize: flipped == PeriodicSet::nonnegative(&g),
                    base: flipped.window().0,
                    g,
                    two_sided: false,
                    mirror: true,
                }
            }
        }
    }

    pub(crate) fn bits(&self, p: usize, w: usize) -> usize {
        let ord = self.g.order();
        ord * w + ord * p * if self.two_sided { 2 } else { 1 }
    }
}

/// Decodes a mask: window bits row by row, then the right pattern, then the
/// left pattern. `None` for masks that cannot give a basis or break the
/// normalization.
pub(crate) fn candidate_set(l: &Layout, p: usize, w: usize, mask: u64) -> Option<PeriodicSet> {
    let ord = l.g.order();
    let bit = |i: usize| mask >> i & 1 == 1;
    let win = ord * w;
    let mut right = BitRow::new(ord * p);
    let mut left = BitRow::new(ord * p);
    for i in 0..ord * p {
        if bit(win + i) {
            right.set(i);
        }
        if l.two_sided && bit(win + ord * p + i) {
            left.set(i);
        }
    }
    if right.is_empty() || (l.two_sided && left.is_empty()) {
        return None;
    }
    let base = l.base;
    let s = PeriodicSet::build(&l.g, p, base, base + w as i64, right, left, |c, n| {
        bit((n - base) as usize * ord + c)
    });
    if l.normalize && !s.contains(0, base) {
        return None;
    }
    Some(if l.mirror { s.negate() } else { s })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// Many essential subsets.
    E,
    /// Large removal orders.
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub p_max: usize,
    pub w_max: usize,
    /// Largest `(p, w)` layer enumerated in full.
    pub exhaustive_cutoff: u64,
    /// Masks drawn from a layer above the cutoff.
    pub random_samples: usize,
    pub seed: u64,
    /// Tail elements removed in addition to the window.
    pub tail_samples: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            p_max: 6,
            w_max: 12,
            exhaustive_cutoff: 1 << 12,
            random_samples: 512,
            seed: 0,
            tail_samples: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalWitness {
    pub element: GroupElement,
    pub order: u32,
    pub remainder: String,
    pub remainder_exceptional_set: Vec<GroupElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateRecord {
    pub basis: String,
    pub period: usize,
    pub width: usize,
    pub order: u32,
    /// `T ∖ hA` at the certified order.
    pub exceptional_set: Vec<GroupElement>,
    /// `essential_counts[k − 1]`.
    pub essential_counts: Vec<usize>,
    pub essential_singletons: Vec<GroupElement>,
    /// Every regular removal tried, as `(element, order)`.
    pub removals: Vec<(GroupElement, u32)>,
    pub max_removal: Option<RemovalWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub target: Target,
    pub h: u32,
    pub k: usize,
    pub budget: Budget,
    pub candidates_examined: usize,
    pub bases_certified: usize,
    /// Per size k, a basis with the most essential subsets of that size.
    pub best_e: Vec<Option<CandidateRecord>>,
    pub best_x: Option<CandidateRecord>,
    /// Bases whose essential singletons exceed `order − 1`.
    pub grekos_violations: Vec<String>,
    /// Over ℕ only: removal orders above `h(h+1)/2 + ⌈(h−1)/3⌉` for the
    /// basis's own order h.
    pub x_bound_violations: Vec<String>,
    /// `(order, largest removal order seen)` for each order reached.
    pub max_removal_by_order: Vec<(u32, u32)>,
    #[serde(skip)]
    pub records: Vec<CandidateRecord>,
}

/// Upper bound on `X_ℕ(h)`.
pub fn plagne_bound(h: u32) -> u32 {
    h * (h + 1) / 2 + (h - 1).div_ceil(3)
}

fn tail_samples(a: &PeriodicSet, n: usize) -> Vec<Elem> {
    let (lo, hi) = a.window();
    let span = ((n + 1) * a.period()) as i64;
    let mut v = Vec::new();
    if a.has_right_tail() {
        v.extend(a.elements_in(hi, hi + span).into_iter().take(n));
    }
    if a.has_left_tail() {
        let mut l = a.elements_in(lo - span, lo);
        l.reverse();
        v.extend(l.into_iter().take(n));
    }
    v
}

fn evaluate(
    a: &PeriodicSet,
    t: &SemigroupT,
    h: u32,
    k: usize,
    target: Target,
    budget: &Budget,
    (p, w): (usize, usize),
) -> Result<Option<CandidateRecord>> {
    if !a.is_subset(t.carrier())? {
        return Ok(None);
    }
    let rep = ord_star(a, t)?;
    let Some(order) = rep.order() else {
        return Ok(None);
    };
    if order > h {
        return Ok(None);
    }
    let g = a.ambient();
    let fam = essential_subsets(a, t, k.max(1))?;
    let singles: Vec<GroupElement> = fam
        .essentials
        .iter()
        .filter(|e| e.len() == 1)
        .map(|e| e[0].clone())
        .collect();
    let mut removals = Vec::new();
    let mut best: Option<RemovalWitness> = None;
    if target == Target::X {
        let mut elems = a.window_elements();
        elems.extend(tail_samples(a, budget.tail_samples));
        for e in elems {
            let ge = to_group(g, e);
            if singles.contains(&ge) {
                continue;
            }
            let rest = a.difference(&PeriodicSet::from_elements(g, [e]))?;
            let r = ord_star(&rest, t)?;
            let Some(o) = r.order() else { continue };
            removals.push((ge.clone(), o));
            if best.as_ref().is_none_or(|b| o > b.order) {
                best = Some(RemovalWitness {
                    element: ge,
                    order: o,
                    remainder: rest.to_string(),
                    remainder_exceptional_set: r.exceptional_set,
                });
            }
        }
    }
    Ok(Some(CandidateRecord {
        basis: a.to_string(),
        period: p,
        width: w,
        order,
        exceptional_set: rep.exceptional_set,
        essential_counts: fam.counts,
        essential_singletons: singles,
        removals,
        max_removal: best,
    }))
}

fn layer_masks(bits: usize, budget: &Budget, p: usize, w: usize) -> Vec<u64> {
    if bits < 64 && 1u64 << bits <= budget.exhaustive_cutoff {
        let mut m: Vec<u64> = (0..1u64 << bits).collect();
        m.sort_by_key(|&x| (x.count_ones(), x));
        m
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ ((p as u64) << 32 | w as u64));
        let top = if bits >= 64 {
            u64::MAX
        } else {
            (1u64 << bits) - 1
        };
        let mut m: Vec<u64> = (0..budget.random_samples)
            .map(|_| rng.gen_range(0..=top))
            .collect();
        m.sort_by_key(|&x| (x.count_ones(), x));
        m.dedup();
        m
    }
}

/// Certified bases of order ⩽ h within the budget, with the best witnesses
/// for the chosen target.
pub fn witness_search(
    t: &SemigroupT,
    h: u32,
    k: usize,
    budget: Budget,
    target: Target,
) -> Result<SearchReport> {
    let layout = Layout::for_semigroup(t);
    let is_naturals =
        t.ambient().order() == 1 && *t.carrier() == PeriodicSet::nonnegative(t.ambient());
    let mut seen: HashSet<PeriodicSet> = HashSet::new();
    let mut records = Vec::new();
    let mut examined = 0;
    for p in 1..=budget.p_max {
        for w in 0..=budget.w_max {
            let bits = layout.bits(p, w);
            let batch: Vec<PeriodicSet> = layer_masks(bits, &budget, p, w)
                .into_iter()
                .filter_map(|m| candidate_set(&layout, p, w, m))
                .filter(|s| seen.insert(s.clone()))
                .collect();
            examined += batch.len();
            let results: Vec<Result<Option<CandidateRecord>>> = batch
                .par_iter()
                .map(|a| evaluate(a, t, h, k, target, &budget, (p, w)))
                .collect();
            for r in results {
                if let Some(rec) = r? {
                    records.push(rec);
                }
            }
        }
    }
    let mut best_e: Vec<Option<CandidateRecord>> = vec![None; k.max(1)];
    let mut best_x: Option<CandidateRecord> = None;
    let mut grekos_violations = Vec::new();
    let mut x_bound_violations = Vec::new();
    let mut by_order: Vec<(u32, u32)> = Vec::new();
    for rec in &records {
        for (i, slot) in best_e.iter_mut().enumerate() {
            if slot.as_ref().map_or(rec.essential_counts[i] > 0, |b| {
                rec.essential_counts[i] > b.essential_counts[i]
            }) {
                *slot = Some(rec.clone());
            }
        }
        if rec.essential_singletons.len() as u32 > rec.order.saturating_sub(1) {
            grekos_violations.push(format!(
                "{} of order {} has {} essential singletons",
                rec.basis,
                rec.order,
                rec.essential_singletons.len()
            ));
        }
        if let Some(m) = &rec.max_removal {
            if best_x.as_ref().is_none_or(|b| {
                m.order > b.max_removal.as_ref().map_or(0, |x| x.order)
            }) {
                best_x = Some(rec.clone());
            }
            if is_naturals && m.order > plagne_bound(rec.order) {
                x_bound_violations.push(format!(
                    "{} minus {} has order {} > {}",
                    rec.basis,
                    m.element,
                    m.order,
                    plagne_bound(rec.order)
                ));
            }
            match by_order.iter_mut().find(|(o, _)| *o == rec.order) {
                Some(entry) => entry.1 = entry.1.max(m.order),
                None => by_order.push((rec.order, m.order)),
            }
        }
    }
    by_order.sort();
    Ok(SearchReport {
        target,
        h,
        k,
        budget,
        candidates_examined: examined,
        bases_certified: records.len(),
        best_e,
        best_x,
        grekos_violations,
        x_bound_violations,
        max_removal_by_order: by_order,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perset::literal::parse;

    #[test]
    fn decoding() {
        let t = SemigroupT::nonnegative(&AmbientGroup::integers());
        let l = Layout::for_semigroup(&t);
        // Window {0}, right pattern residue 0 mod 2 from 1 on.
        let s = candidate_set(&l, 2, 1, 0b011).unwrap();
        assert_eq!(s, parse("{0}, 2+2N").unwrap());
        assert!(candidate_set(&l, 2, 1, 0b001).is_none());
        assert!(candidate_set(&l, 2, 1, 0b010).is_none());
    }

    #[test]
    fn small_searches() {
        let t = SemigroupT::nonnegative(&AmbientGroup::integers());
        let b = Budget {
            p_max: 2,
            w_max: 2,
            ..Budget::default()
        };
        let r = witness_search(&t, 2, 1, b, Target::E).unwrap();
        let best = r.best_e[0].clone().unwrap();
        assert_eq!(best.essential_counts[0], 1);
        assert!(r.grekos_violations.is_empty());
        let b = Budget {
            p_max: 5,
            w_max: 1,
            ..Budget::default()
        };
        let r = witness_search(&t, 2, 1, b, Target::X).unwrap();
        assert_eq!(r.best_x.unwrap().max_removal.unwrap().order, 4);
        assert!(r.x_bound_violations.is_empty());
        assert_eq!(plagne_bound(2), 4);
        assert_eq!(plagne_bound(3), 7);
    }
}
