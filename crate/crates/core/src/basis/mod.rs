//! Basis verdicts, the Erdős–Graham criterion, reservoirs and essential
//! subsets.
//!
//! # Order cap
//!
//! Let `N = |C|·p` where `p` is the period of A, and suppose `⟨A − A⟩ = G`
//! and A has a tail in every direction in which T has one. In the finite
//! group `Ḡ = C × ℤ/p` the translates `h·π(A) − h·a0` form an increasing
//! chain of subsets that generates Ḡ, so it reaches Ḡ by `h = N − 1`. For
//! `h ⩾ N`, any element far out in a tail direction is then a sum of `h − 1`
//! elements from a fixed finite part of A plus one element of a tail class of
//! A, so `hA` contains everything beyond a bounded region. T lies inside that
//! region up to finitely many elements, hence `ord*_T(A) ⩽ N`. The same
//! argument shows the tail condition is the only obstruction besides the
//! subgroup one, so the verdict never depends on a search limit.

mod audit;
mod construct;
mod search;

pub use audit::{
    bound_audit, derive_group_basis, index_bound, lemma_nn_audit, twobases_audit, x1_cap, x2_cap,
    GroupBasisReport, NnReport, PairAudit, RemovalEntry, RemovalStudy, TwoBasesReport,
};
pub use construct::{construct_exact_order_basis, ConstructionReport};
pub use search::{
    plagne_bound, witness_search, Budget, CandidateRecord, RemovalWitness, SearchReport, Target,
};

use std::collections::HashSet;

use serde::Serialize;

use crate::abgroup::Subgroup;
use crate::error::{Error, Result};
use crate::perset::{AmbientGroup, GroupElement, PeriodicSet};
use crate::structure::SemigroupT;

/// An element as `(torsion index, n)`.
pub type Elem = (usize, i64);

pub(crate) fn to_group(g: &AmbientGroup, (c, n): Elem) -> GroupElement {
    GroupElement {
        torsion: g.coords(c),
        n,
    }
}

pub(crate) fn to_groups(g: &AmbientGroup, v: &[Elem]) -> Vec<GroupElement> {
    v.iter().map(|&e| to_group(g, e)).collect()
}

/// First element of the first right tail class, else last of the first left
/// one.
pub(crate) fn tail_element(s: &PeriodicSet) -> Option<Elem> {
    if let Some(&(c, r)) = s.right_classes().first() {
        return Some((c, s.right_class_start(r)));
    }
    s.left_classes()
        .first()
        .map(|&(c, r)| (c, s.left_class_end(r)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotBasisReason {
    /// `⟨A − A⟩` is the given proper subgroup.
    ProperSubgroup {
        subgroup: Subgroup,
    },
    NoPositiveTail,
    NoNegativeTail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Basis { order: u32 },
    NotBasis(NotBasisReason),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    #[serde(flatten)]
    pub verdict: Verdict,
    /// `T ∖ hA` at the certified order.
    pub exceptional_set: Vec<GroupElement>,
    pub cap: Option<u32>,
}

impl BasisReport {
    pub fn order(&self) -> Option<u32> {
        match self.verdict {
            Verdict::Basis { order } => Some(order),
            Verdict::NotBasis(_) => None,
        }
    }
}

/// `|C|·p`, the certified bound on the order when A is a basis.
pub fn order_cap(a: &PeriodicSet) -> u32 {
    u32::try_from(a.ambient().order() * a.period()).unwrap_or(u32::MAX)
}

/// Why A cannot be a G_T-basis, or `None` when it is one.
pub fn basis_obstruction(a: &PeriodicSet, t: &SemigroupT) -> Result<Option<NotBasisReason>> {
    let g = t.ambient();
    g.check_same(a.ambient())?;
    if a.is_empty() {
        return Ok(Some(NotBasisReason::ProperSubgroup {
            subgroup: Subgroup::trivial(g),
        }));
    }
    let h = Subgroup::differences_of(a)?;
    if !h.is_full() {
        return Ok(Some(NotBasisReason::ProperSubgroup { subgroup: h }));
    }
    let tc = t.carrier();
    if tc.has_right_tail() && !a.has_right_tail() {
        return Ok(Some(NotBasisReason::NoPositiveTail));
    }
    if tc.has_left_tail() && !a.has_left_tail() {
        return Ok(Some(NotBasisReason::NoNegativeTail));
    }
    Ok(None)
}

pub fn is_basis(a: &PeriodicSet, t: &SemigroupT) -> Result<bool> {
    Ok(basis_obstruction(a, t)?.is_none())
}

pub fn ord_star(a: &PeriodicSet, t: &SemigroupT) -> Result<BasisReport> {
    if let Some(reason) = basis_obstruction(a, t)? {
        return Ok(BasisReport {
            verdict: Verdict::NotBasis(reason),
            exceptional_set: Vec::new(),
            cap: None,
        });
    }
    let cap = order_cap(a);
    let tc = t.carrier();
    let mut sum = a.clone();
    for h in 1..=cap {
        if let Some(missing) = tc.subeq(&sum)? {
            return Ok(BasisReport {
                verdict: Verdict::Basis { order: h },
                exceptional_set: to_groups(a.ambient(), &missing),
                cap: Some(cap),
            });
        }
        if h < cap {
            sum = sum.minkowski_sum(a)?;
        }
    }
    Err(Error::CapExceeded { cap })
}

/// Least `h ⩽ hmax` with `T ⊆~ hA`, using nothing but folds and `⊆~`.
pub fn order_by_folding(a: &PeriodicSet, t: &SemigroupT, hmax: u32) -> Result<Option<u32>> {
    if a.is_empty() {
        return Ok(None);
    }
    for h in 1..=hmax {
        if t.carrier().subeq(&a.h_fold(h)?)?.is_some() {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

fn require_finite_subset(f: &PeriodicSet, a: &PeriodicSet) -> Result<()> {
    if !f.is_finite() {
        return Err(Error::precondition("F finite", format!("{f} is infinite")));
    }
    if !f.is_subset(a)? {
        return Err(Error::precondition("F ⊆ A", format!("{f} ⊄ {a}")));
    }
    Ok(())
}

fn require_basis(a: &PeriodicSet, t: &SemigroupT) -> Result<()> {
    match basis_obstruction(a, t)? {
        None => Ok(()),
        Some(r) => Err(Error::precondition("A is a basis", format!("{a}: {r:?}"))),
    }
}

/// `⟨(A∖F) − (A∖F)⟩ = G`, which decides whether `A ∖ F` is still a basis.
pub fn erdos_graham(a: &PeriodicSet, f: &PeriodicSet, t: &SemigroupT) -> Result<bool> {
    require_finite_subset(f, a)?;
    require_basis(a, t)?;
    let b = a.difference(f)?;
    if b.is_empty() {
        return Ok(false);
    }
    Ok(Subgroup::differences_of(&b)?.is_full())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalOutcome {
    pub regular: bool,
    /// `None` stands for ∞.
    pub order: Option<u32>,
}

pub fn removal_order(a: &PeriodicSet, f: &PeriodicSet, t: &SemigroupT) -> Result<RemovalOutcome> {
    let regular = erdos_graham(a, f, t)?;
    let order = if regular {
        let rest = ord_star(&a.difference(f)?, t)?;
        Some(rest.order().ok_or_else(|| {
            Error::Certification("criterion holds but the remainder is not a basis".into())
        })?)
    } else {
        None
    };
    Ok(RemovalOutcome { regular, order })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KStar {
    pub subgroup: Subgroup,
    pub representative: GroupElement,
}

/// Reservoir data in raw form, shared by the essential search.
pub(crate) struct RawReservoir {
    pub k_star: KStar,
    /// Generators of `K* − K*`.
    pub gens: Vec<Elem>,
    /// A tail element of A.
    pub base: Elem,
    pub elements: Vec<Elem>,
}

/// A coset `x + H` keeps all but finitely much of A exactly when it contains
/// every tail class of A. Each tail class is an infinite progression of step
/// `(0, p)`, so H must hold `(0, p)` and all differences between tail
/// elements. The coset through a tail element spanned by those differences
/// is therefore contained in every such coset, which makes it the minimum of
/// the family and not merely a minimal member.
pub(crate) fn reservoir_raw(a: &PeriodicSet, t: &SemigroupT) -> Result<RawReservoir> {
    require_basis(a, t)?;
    let g = a.ambient();
    let mut tails: Vec<Elem> = a
        .right_classes()
        .into_iter()
        .map(|(c, r)| (c, a.right_class_start(r)))
        .collect();
    tails.extend(
        a.left_classes()
            .into_iter()
            .map(|(c, r)| (c, a.left_class_end(r))),
    );
    let base = tails[0];
    let mut gens = vec![(0, a.period() as i64)];
    gens.extend(
        tails
            .iter()
            .skip(1)
            .map(|&(c, n)| (g.sub(c, base.0), n - base.1)),
    );
    let h0 = Subgroup::generated_by(g, gens.iter().copied())?;
    let elements = a
        .window_elements()
        .into_iter()
        .filter(|&(c, n)| !h0.contains(g.sub(c, base.0), n - base.1))
        .collect();
    Ok(RawReservoir {
        k_star: KStar {
            subgroup: h0,
            representative: to_group(g, base),
        },
        gens,
        base,
        elements,
    })
}

pub fn reservoir(a: &PeriodicSet, t: &SemigroupT) -> Result<(KStar, Vec<GroupElement>)> {
    let raw = reservoir_raw(a, t)?;
    let elems = to_groups(a.ambient(), &raw.elements);
    Ok((raw.k_star, elems))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialFamily {
    pub k_star: KStar,
    pub reservoir: Vec<GroupElement>,
    /// Sorted by size, then lexicographically by reservoir position.
    pub essentials: Vec<Vec<GroupElement>>,
    /// `counts[k − 1]` essential subsets of size k, for `k ⩽ k_max`.
    pub counts: Vec<usize>,
    /// Every essential E has `G / H_E` finite cyclic.
    pub cyclic_cross_check: bool,
}

impl EssentialFamily {
    /// Union of all listed essential subsets.
    pub fn union(&self) -> Vec<GroupElement> {
        let mut u: Vec<GroupElement> = self.essentials.iter().flatten().cloned().collect();
        u.sort();
        u.dedup();
        u
    }
}

const ESSENTIAL_BUDGET: usize = 1 << 20;

/// All essential subsets of size at most `k_max`.
///
/// Only reservoir subsets can be essential. With `K* = a + H0`,
/// `⟨(A∖E) − (A∖E)⟩ = H0 + ⟨r − a : r ∈ R ∖ E⟩`, because the part of A inside
/// K* already spans H0. Regular subsets form a downset, so a set is essential
/// iff it is exceptional and each of its maximal proper subsets is regular;
/// candidates of size k are built only from regular sets of size `k − 1`.
pub fn essential_subsets(a: &PeriodicSet, t: &SemigroupT, k_max: usize) -> Result<EssentialFamily> {
    if k_max < 1 {
        return Err(Error::precondition("k_max ⩾ 1", "k_max = 0"));
    }
    let raw = reservoir_raw(a, t)?;
    let g = a.ambient();
    let res = &raw.elements;
    let diffs: Vec<Elem> = res
        .iter()
        .map(|&(c, n)| (g.sub(c, raw.base.0), n - raw.base.1))
        .collect();
    let h_without = |removed: &[usize]| -> Result<Subgroup> {
        let kept = (0..res.len())
            .filter(|i| !removed.contains(i))
            .map(|i| diffs[i]);
        Subgroup::generated_by(g, raw.gens.iter().copied().chain(kept))
    };
    let mut essentials: Vec<Vec<usize>> = Vec::new();
    let mut counts = Vec::with_capacity(k_max);
    let mut cyclic = true;
    let mut regular: Vec<Vec<usize>> = vec![Vec::new()];
    let mut examined = 0usize;
    for _ in 1..=k_max.min(res.len()) {
        let prev: HashSet<&[usize]> = regular.iter().map(Vec::as_slice).collect();
        let mut next_regular = Vec::new();
        let mut found = 0;
        for cand in join_level(&regular, res.len()) {
            let all_sub_regular = (0..cand.len()).all(|i| {
                let mut sub = cand.clone();
                sub.remove(i);
                prev.contains(sub.as_slice())
            });
            if !all_sub_regular {
                continue;
            }
            examined += 1;
            if examined > ESSENTIAL_BUDGET {
                return Err(Error::Budget(format!(
                    "essential search over a reservoir of {} elements",
                    res.len()
                )));
            }
            let h = h_without(&cand)?;
            if h.is_full() {
                next_regular.push(cand);
            } else {
                let q = h.quotient();
                cyclic &= q.is_finite && q.is_cyclic;
                essentials.push(cand);
                found += 1;
            }
        }
        counts.push(found);
        regular = next_regular;
        if regular.is_empty() {
            break;
        }
    }
    counts.resize(k_max, 0);
    Ok(EssentialFamily {
        k_star: raw.k_star,
        reservoir: to_groups(g, res),
        essentials: essentials
            .iter()
            .map(|e| e.iter().map(|&i| to_group(g, res[i])).collect())
            .collect(),
        counts,
        cyclic_cross_check: cyclic,
    })
}

/// Size-k candidates from sorted size-(k−1) sets sharing their first k−2
/// entries; for k = 1 every singleton.
fn join_level(prev: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    if prev.len() == 1 && prev[0].is_empty() {
        return (0..n).map(|i| vec![i]).collect();
    }
    let mut out = Vec::new();
    for (i, x) in prev.iter().enumerate() {
        for y in &prev[i + 1..] {
            let k = x.len();
            if x[..k - 1] != y[..k - 1] {
                break;
            }
            let mut c = x.clone();
            c.push(y[k - 1]);
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perset::literal::{parse, parse_in};

    fn nat() -> SemigroupT {
        SemigroupT::nonnegative(&AmbientGroup::integers())
    }

    fn order(a: &str) -> Option<u32> {
        ord_star(&parse(a).unwrap(), &nat()).unwrap().order()
    }

    #[test]
    fn orders_over_naturals() {
        assert_eq!(order("0+1N"), Some(1));
        assert_eq!(order("{1}, 0+2N"), Some(2));
        assert_eq!(order("{0, 1}, 0+3N"), Some(3));
        assert_eq!(order("0+2N"), None);
        assert_eq!(order("{0, 1}"), None);
        let r = ord_star(&parse("-5-1N").unwrap(), &nat()).unwrap();
        assert_eq!(r.verdict, Verdict::NotBasis(NotBasisReason::NoPositiveTail));
        let z = SemigroupT::whole_group(&AmbientGroup::integers());
        let r = ord_star(&parse("0+1N").unwrap(), &z).unwrap();
        assert_eq!(r.verdict, Verdict::NotBasis(NotBasisReason::NoNegativeTail));
        assert_eq!(
            ord_star(&parse("{0, 1}, 0+2Z").unwrap(), &z)
                .unwrap()
                .order(),
            Some(2)
        );
    }

    #[test]
    fn report_json_shape() {
        let r = ord_star(&parse("{1}, 0+2N").unwrap(), &nat()).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["verdict"], "basis");
        assert_eq!(j["order"], 2);
    }

    #[test]
    fn criterion_examples() {
        let t = nat();
        let a = parse("{0, 1}, 0+2N").unwrap();
        assert!(!erdos_graham(&a, &parse("{1}").unwrap(), &t).unwrap());
        assert!(erdos_graham(&a, &parse("{0}").unwrap(), &t).unwrap());
        assert!(erdos_graham(&parse("0+1N").unwrap(), &parse("{5}").unwrap(), &t).unwrap());
        assert!(erdos_graham(&a, &parse("{3}").unwrap(), &t).is_err());
    }

    #[test]
    fn reservoirs() {
        let t = nat();
        let (k, r) = reservoir(&parse("{1}, 0+2N").unwrap(), &t).unwrap();
        assert_eq!(
            k.subgroup,
            Subgroup::multiples(&AmbientGroup::integers(), 2)
        );
        assert_eq!(r, vec![GroupElement::integer(1)]);
        let (k, r) = reservoir(&parse("0+1N").unwrap(), &t).unwrap();
        assert!(k.subgroup.is_full() && r.is_empty());
        let (k, r) = reservoir(&parse("{0, 1}, 0+4N, 2+4N").unwrap(), &t).unwrap();
        assert_eq!(k.subgroup.index(), Some(2));
        assert_eq!(r, vec![GroupElement::integer(1)]);
    }

    #[test]
    fn essentials() {
        let t = nat();
        let fam = essential_subsets(&parse("{1}, 0+2N").unwrap(), &t, 2).unwrap();
        assert_eq!(fam.essentials, vec![vec![GroupElement::integer(1)]]);
        assert_eq!(fam.counts, vec![1, 0]);
        assert!(fam.cyclic_cross_check);
        let fam = essential_subsets(&parse("0+1N").unwrap(), &t, 3).unwrap();
        assert_eq!(fam.counts, vec![0, 0, 0]);
        // Order 1 with a nonempty window.
        let fam = essential_subsets(&parse("{-3, 0}, 2+1N").unwrap(), &t, 2).unwrap();
        assert_eq!(fam.counts, vec![0, 0]);
        // {2, 4} with everything else ≡ 0 mod 6 and ≡ 1, 3, 5 mod 6 classes absent:
        // dropping both evens leaves 3ℤ-only differences.
        let a = parse("{2, 3, 4}, 0+6N").unwrap();
        let fam = essential_subsets(&a, &t, 3).unwrap();
        assert!(fam.cyclic_cross_check);
        for e in &fam.essentials {
            let f = PeriodicSet::from_integers(e.iter().map(|x| x.n));
            assert!(!erdos_graham(&a, &f, &t).unwrap());
        }
        assert_eq!(
            fam.essentials,
            vec![
                vec![GroupElement::integer(3)],
                vec![GroupElement::integer(2), GroupElement::integer(4)]
            ]
        );
    }

    #[test]
    fn product_semigroup_essentials() {
        let g = AmbientGroup::new(vec![2]).unwrap();
        let t = SemigroupT::nonnegative(&g);
        let a = parse_in("(1){0}, (0){1}, (0)0+2N", Some(&g)).unwrap();
        assert_eq!(ord_star(&a, &t).unwrap().order(), Some(3));
        let fam = essential_subsets(&a, &t, 2).unwrap();
        assert_eq!(fam.counts, vec![2, 0]);
    }

    #[test]
    fn removal_examples() {
        let t = nat();
        let r = removal_order(&parse("0+1N").unwrap(), &parse("{0}").unwrap(), &t).unwrap();
        assert_eq!(
            r,
            RemovalOutcome {
                regular: true,
                order: Some(1)
            }
        );
        let r = removal_order(&parse("{1}, 0+2N").unwrap(), &parse("{1}").unwrap(), &t).unwrap();
        assert_eq!(
            r,
            RemovalOutcome {
                regular: false,
                order: None
            }
        );
        let r = removal_order(&parse("{0, 1}, 0+3N").unwrap(), &parse("{1}").unwrap(), &t).unwrap();
        assert!(!r.regular);
        let a = parse("{0}, 2+5N, 3+5N").unwrap();
        assert_eq!(ord_star(&a, &t).unwrap().order(), Some(2));
        let r = removal_order(&a, &parse("{0}").unwrap(), &t).unwrap();
        assert_eq!(r.order, Some(4));
        // Removing a tail element.
        let r = removal_order(&a, &parse("{12}").unwrap(), &t).unwrap();
        assert!(r.regular);
    }
}
