//! The graded basis `A = G_r ∪ t^r G_r ∪ ⋯ ∪ t^{r(h−2)} G_r ∪ t^{r(h−1)} G`
//! of `G = 𝔽_p[t]`, where `G_r` is the polynomials of degree below r.
//!
//! Polynomials are truncated at degree D and handled as vectors of `𝔽_p^D`.
//! Since A contains every polynomial divisible by `t^{r(h−1)}`, all span
//! questions about differences of subsets of A are settled below degree
//! `rh`, which makes the truncation faithful once `D ⩾ rh + 2`.
//!
//! Essentiality uses the group form of the removal criterion: `A ∖ E` is a
//! basis iff the differences of `A ∖ E` span G, so a finite E is essential
//! iff that span is proper and adding back any single `e ∈ E` fills it.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Poly = Vec<u8>;

const ELEMENT_BUDGET: usize = 1 << 20;

/// Support window `[shift, shift + width)` holding all polynomials with
/// coefficients there; `width = None` runs up to the truncation degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub shift: usize,
    pub width: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedSet {
    pub p: u8,
    pub degree: usize,
    pub blocks: Vec<Block>,
    /// Vectors removed from the union of blocks.
    pub excluded: BTreeSet<Poly>,
    /// Vectors added outside the blocks.
    pub extra: BTreeSet<Poly>,
}

fn is_prime(p: u8) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl GradedSet {
    fn block_contains(&self, b: &Block, v: &[u8]) -> bool {
        let end = b
            .width
            .map_or(self.degree, |w| (b.shift + w).min(self.degree));
        v.iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || (b.shift..end).contains(&i))
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        if v.len() != self.degree {
            return false;
        }
        self.extra.contains(v)
            || (!self.excluded.contains(v) && self.blocks.iter().any(|b| self.block_contains(b, v)))
    }

    /// All members, deduplicated.
    pub fn elements(&self) -> Result<Vec<Poly>> {
        let mut out = BTreeSet::new();
        for b in &self.blocks {
            let end = b
                .width
                .map_or(self.degree, |w| (b.shift + w).min(self.degree));
            let dim = end.saturating_sub(b.shift);
            let size = (self.p as usize)
                .checked_pow(dim as u32)
                .filter(|&s| s <= ELEMENT_BUDGET);
            let size = size.ok_or_else(|| {
                Error::Budget(format!("block of dimension {dim} over 𝔽_{}", self.p))
            })?;
            for idx in 0..size {
                let mut v = vec![0u8; self.degree];
                let mut x = idx;
                for slot in &mut v[b.shift..end] {
                    *slot = (x % self.p as usize) as u8;
                    x /= self.p as usize;
                }
                if !self.excluded.contains(&v) {
                    out.insert(v);
                }
            }
        }
        out.extend(self.extra.iter().cloned());
        Ok(out.into_iter().collect())
    }

    fn without(&self, e: &[Poly]) -> GradedSet {
        let mut s = self.clone();
        for v in e {
            s.extra.remove(v);
            s.excluded.insert(v.clone());
        }
        s
    }

    fn add(&self, v: &Poly) -> GradedSet {
        let mut s = self.clone();
        s.excluded.remove(v);
        if !s.contains(v) {
            s.extra.insert(v.clone());
        }
        s
    }
}

/// Row-echelon basis of a subspace of `𝔽_p^D`.
#[derive(Clone, Debug)]
struct Echelon {
    p: u8,
    rows: Vec<(usize, Poly)>,
}

fn inv(a: u8, p: u8) -> u8 {
    (1..p)
        .find(|&b| (a as u32 * b as u32) % p as u32 == 1)
        .expect("prime modulus")
}

impl Echelon {
    fn new(p: u8) -> Self {
        Echelon {
            p,
            rows: Vec::new(),
        }
    }

    fn insert(&mut self, mut v: Poly) -> bool {
        let p = self.p as u32;
        for (pivot, row) in &self.rows {
            let c = v[*pivot] as u32;
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = ((*x as u32 + p * p - c * y as u32) % p) as u8;
                }
            }
        }
        match v.iter().position(|&c| c != 0) {
            None => false,
            Some(pivot) => {
                let s = inv(v[pivot], self.p) as u32;
                v.iter_mut().for_each(|x| *x = ((*x as u32 * s) % p) as u8);
                self.rows.push((pivot, v));
                true
            }
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn sub(a: &[u8], b: &[u8], p: u8) -> Poly {
    a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect()
}

/// Span of `S − S` for a set given by its elements.
fn difference_span(elems: &[Poly], p: u8, degree: usize) -> Echelon {
    let mut e = Echelon::new(p);
    if let Some(first) = elems.first() {
        for v in &elems[1..] {
            if e.rank() == degree {
                break;
            }
            e.insert(sub(v, first, p));
        }
    }
    e
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCheck {
    pub checked: usize,
    pub exhaustive: bool,
    pub failures: usize,
    /// `1 + t^r + ⋯ + t^{r(h−1)}` meets all h degree ranges, and each member
    /// of A meets at most one, so it needs all h summands.
    pub needs_h: bool,
}

fn check_params(p: u8, r: usize, h: usize, degree: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::precondition("p prime", format!("p = {p}")));
    }
    if r == 0 || h < 2 {
        return Err(Error::precondition(
            "r ⩾ 1 and h ⩾ 2",
            format!("r = {r}, h = {h}"),
        ));
    }
    if degree < r * h + 2 {
        return Err(Error::precondition(
            "D ⩾ rh + 2",
            format!("D = {degree}, rh + 2 = {}", r * h + 2),
        ));
    }
    Ok(())
}

pub fn build_remark_basis(p: u8, r: usize, h: usize, degree: usize) -> Result<GradedSet> {
    check_params(p, r, h, degree)?;
    let mut blocks: Vec<Block> = (0..h - 1)
        .map(|j| Block {
            shift: j * r,
            width: Some(r),
        })
        .collect();
    blocks.push(Block {
        shift: r * (h - 1),
        width: None,
    });
    Ok(GradedSet {
        p,
        degree,
        blocks,
        excluded: BTreeSet::new(),
        extra: BTreeSet::new(),
    })
}

/// Splits f into its h degree ranges and checks each piece lies in A.
fn decomposes(a: &GradedSet, r: usize, h: usize, f: &[u8]) -> bool {
    let pieces = (0..h).map(|j| {
        let end = if j + 1 == h { a.degree } else { (j + 1) * r };
        let mut v = vec![0u8; a.degree];
        v[j * r..end].copy_from_slice(&f[j * r..end]);
        v
    });
    let mut total = vec![0u8; a.degree];
    for piece in pieces {
        if !a.contains(&piece) {
            return false;
        }
        total
            .iter_mut()
            .zip(&piece)
            .for_each(|(x, &y)| *x = (*x + y) % a.p);
    }
    total == f
}

/// Confirms `hA` covers `𝔽_p^D`: every vector when `p^D ⩽ 2^20`, otherwise
/// `samples` random vectors.
pub fn check_remark_order(
    a: &GradedSet,
    r: usize,
    h: usize,
    samples: usize,
    seed: u64,
) -> OrderCheck {
    let d = a.degree;
    let total = (a.p as usize)
        .checked_pow(d as u32)
        .filter(|&n| n <= 1 << 20);
    let vectors: Box<dyn Iterator<Item = Poly>> = match total {
        Some(n) => Box::new((0..n).map(move |mut x| {
            (0..d)
                .map(|_| {
                    let c = (x % a.p as usize) as u8;
                    x /= a.p as usize;
                    c
                })
                .collect()
        })),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Box::new((0..samples).map(move |_| (0..d).map(|_| rng.gen_range(0..a.p)).collect()))
        }
    };
    let (mut checked, mut failures) = (0, 0);
    for f in vectors {
        checked += 1;
        failures += !decomposes(a, r, h, &f) as usize;
    }
    let mut w = vec![0u8; d];
    (0..h).for_each(|j| w[j * r] = 1);
    let ranges = |v: &[u8]| {
        (0..h)
            .filter(|&j| {
                let end = if j + 1 == h { d } else { (j + 1) * r };
                v[j * r..end].iter().any(|&c| c != 0)
            })
            .count()
    };
    let needs_h = ranges(&w) == h
        && a.elements()
            .is_ok_and(|es| es.iter().all(|v| ranges(v) <= 1));
    OrderCheck {
        checked,
        exhaustive: total.is_some(),
        failures,
        needs_h,
    }
}

/// Whether removing `e` from `a` leaves a set whose difference span is
/// proper while each single `x ∈ e` restores it. Errors when the deficit
/// reaches degree `rh`, which would mean the truncation is too short.
pub fn is_essential(a: &GradedSet, e: &[Poly], r: usize, h: usize) -> Result<bool> {
    let d = a.degree;
    let rest = a.without(e);
    let span = difference_span(&rest.elements()?, a.p, d);
    if span.rank() == d {
        return Ok(false);
    }
    let mut probe = span.clone();
    for i in 0..r * h {
        let mut v = vec![0u8; d];
        v[i] = 1;
        probe.insert(v);
    }
    if probe.rank() != d {
        return Err(Error::Truncation(format!(
            "span deficit reaches degree {} at D = {d}",
            r * h
        )));
    }
    for x in e {
        let back = difference_span(&rest.add(x).elements()?, a.p, d);
        if back.rank() != d {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Affine hyperplanes `{v : φ(v) = c}` of `𝔽_p^r`, with φ normalized so its
/// first nonzero coefficient is 1.
fn affine_hyperplanes(p: u8, r: usize) -> Vec<(Poly, u8)> {
    let mut out = Vec::new();
    for idx in 1..(p as usize).pow(r as u32) {
        let phi: Poly = (0..r)
            .map(|i| ((idx / (p as usize).pow(i as u32)) % p as usize) as u8)
            .collect();
        if phi.iter().find(|&&c| c != 0) == Some(&1) {
            out.extend((0..p).map(|c| (phi.clone(), c)));
        }
    }
    out
}

fn block_vectors(p: u8, r: usize, shift: usize, degree: usize) -> Vec<(Poly, Poly)> {
    (0..(p as usize).pow(r as u32))
        .map(|mut x| {
            let local: Poly = (0..r)
                .map(|_| {
                    let c = (x % p as usize) as u8;
                    x /= p as usize;
                    c
                })
                .collect();
            let mut v = vec![0u8; degree];
            v[shift..shift + r].copy_from_slice(&local);
            (local, v)
        })
        .collect()
}

/// Per-block counts of hyperplane complements in `t^{jr} G_r` (for
/// `j ⩽ h − 2`) that are essential.
pub fn essential_hyperplane_counts(p: u8, r: usize, h: usize, degree: usize) -> Result<Vec<usize>> {
    let a = build_remark_basis(p, r, h, degree)?;
    let planes = affine_hyperplanes(p, r);
    (0..h - 1)
        .map(|j| {
            let vecs = block_vectors(p, r, j * r, degree);
            let verdicts: Result<Vec<bool>> = planes
                .par_iter()
                .map(|(phi, c)| {
                    let e: Vec<Poly> = vecs
                        .iter()
                        .filter(|(local, _)| {
                            let val: u32 = local
                                .iter()
                                .zip(phi)
                                .map(|(&x, &y)| x as u32 * y as u32)
                                .sum();
                            (val % p as u32) as u8 != *c
                        })
                        .map(|(_, v)| v.clone())
                        .collect();
                    is_essential(&a, &e, r, h)
                })
                .collect();
            Ok(verdicts?.into_iter().filter(|&b| b).count())
        })
        .collect()
}

pub fn essential_hyperplane_count(p: u8, r: usize, h: usize, degree: usize) -> Result<usize> {
    Ok(essential_hyperplane_counts(p, r, h, degree)?.iter().sum())
}

/// Every k-subset of each block `t^{jr} G_r`, tested directly.
pub fn brute_force_block_counts(p: u8, r: usize, h: usize, degree: usize) -> Result<Vec<usize>> {
    let a = build_remark_basis(p, r, h, degree)?;
    let n = (p as usize).pow(r as u32);
    let k = n - n / p as usize;
    if n > 16 {
        return Err(Error::Budget(format!(
            "brute force over blocks of size {n}"
        )));
    }
    (0..h - 1)
        .map(|j| {
            let vecs: Vec<Poly> = block_vectors(p, r, j * r, degree)
                .into_iter()
                .map(|(_, v)| v)
                .collect();
            let masks: Vec<u32> = (0u32..1 << n)
                .filter(|m| m.count_ones() as usize == k)
                .collect();
            let verdicts: Result<Vec<bool>> = masks
                .par_iter()
                .map(|&m| {
                    let e: Vec<Poly> = (0..n)
                        .filter(|i| m >> i & 1 == 1)
                        .map(|i| vecs[i].clone())
                        .collect();
                    is_essential(&a, &e, r, h)
                })
                .collect();
            Ok(verdicts?.into_iter().filter(|&b| b).count())
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FptReport {
    pub p: u8,
    pub r: usize,
    pub h: usize,
    pub degree: usize,
    pub k: usize,
    pub hyperplanes_per_block: usize,
    pub per_block: Vec<usize>,
    pub count: usize,
    pub count_at_degree_plus_2: usize,
    pub stable: bool,
    pub brute_force: Option<Vec<usize>>,
    pub brute_force_agrees: Option<bool>,
    pub lower_bound: usize,
    pub meets_lower_bound: bool,
    pub order: OrderCheck,
}

pub fn fpt_verify(p: u8, r: usize, h: usize, degree: usize) -> Result<FptReport> {
    let a = build_remark_basis(p, r, h, degree)?;
    let n = (p as usize).pow(r as u32);
    let k = n - n / p as usize;
    let per_block = essential_hyperplane_counts(p, r, h, degree)?;
    let count = per_block.iter().sum();
    let count_at_degree_plus_2 = essential_hyperplane_count(p, r, h, degree + 2)?;
    let brute_force = if n <= 16 {
        Some(brute_force_block_counts(p, r, h, degree)?)
    } else {
        None
    };
    let lower_bound = (h - 1) * k;
    Ok(FptReport {
        p,
        r,
        h,
        degree,
        k,
        hyperplanes_per_block: affine_hyperplanes(p, r).len(),
        brute_force_agrees: brute_force.as_ref().map(|b| *b == per_block),
        brute_force,
        stable: count == count_at_degree_plus_2,
        count_at_degree_plus_2,
        meets_lower_bound: count >= lower_bound,
        lower_bound,
        order: check_remark_order(&a, r, h, 500, 0),
        per_block,
        count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_shape() {
        let a = build_remark_basis(2, 2, 2, 8).unwrap();
        assert_eq!(
            a.blocks,
            vec![
                Block {
                    shift: 0,
                    width: Some(2)
                },
                Block {
                    shift: 2,
                    width: None
                }
            ]
        );
        let a = build_remark_basis(2, 2, 3, 10).unwrap();
        assert_eq!(
            a.blocks.iter().map(|b| b.shift).collect::<Vec<_>>(),
            vec![0, 2, 4]
        );
        assert!(matches!(
            build_remark_basis(2, 2, 3, 7),
            Err(Error::Precondition { .. })
        ));
        assert!(matches!(
            build_remark_basis(4, 2, 3, 10),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn order_is_h() {
        let a = build_remark_basis(2, 2, 2, 8).unwrap();
        let c = check_remark_order(&a, 2, 2, 500, 1);
        assert!(c.exhaustive && c.failures == 0 && c.needs_h && c.checked == 256);
        let a = build_remark_basis(3, 3, 3, 22).unwrap();
        let c = check_remark_order(&a, 3, 3, 500, 1);
        assert!(!c.exhaustive && c.checked == 500 && c.failures == 0);
    }

    #[test]
    fn hyperplane_enumeration() {
        assert_eq!(affine_hyperplanes(2, 2).len(), 6);
        assert_eq!(affine_hyperplanes(3, 1).len(), 3);
        assert_eq!(affine_hyperplanes(3, 2).len(), 12);
    }

    #[test]
    fn only_linear_hyperplanes_are_essential() {
        // A complement that contains 0 removes 0 from A outright, and the
        // remaining blocks then span everything.
        assert_eq!(essential_hyperplane_counts(2, 2, 2, 6).unwrap(), vec![3]);
        assert_eq!(essential_hyperplane_counts(2, 2, 3, 8).unwrap(), vec![3, 3]);
        assert_eq!(essential_hyperplane_counts(3, 1, 2, 6).unwrap(), vec![1]);
        assert_eq!(brute_force_block_counts(3, 1, 2, 6).unwrap(), vec![1]);
        assert_eq!(brute_force_block_counts(2, 2, 3, 8).unwrap(), vec![3, 3]);
    }

    #[test]
    fn report_is_stable() {
        let rep = fpt_verify(2, 2, 3, 10).unwrap();
        assert!(rep.stable && rep.brute_force_agrees == Some(true));
        assert_eq!(rep.k, 2);
        assert_eq!(rep.lower_bound, 4);
        assert!(rep.meets_lower_bound);
    }
}
