//! Subgroups of C ⊕ ℤ as integer lattices.
//!
//! A subgroup H is stored as the lattice L ⊆ ℤ^{r+1} of all integer lifts of
//! its elements, so L always contains d1ℤ × … × drℤ × {0}. The lattice is kept
//! in row Hermite form with the ℤ coordinate first, which makes the first row
//! `(m, v0)` describe the projection of H onto ℤ (`m = 0` when H is finite)
//! and the remaining rows span H ∩ C. Hermite form is canonical, so subgroup
//! equality is equality of bases. The index [G : H] is the product of the
//! pivots when L has full rank and infinite otherwise.

pub mod intmat;
mod reembed;

pub use reembed::Reembedding;

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perset::{AmbientGroup, GroupElement, PeriodicSet};
use intmat::Row;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ambient: AmbientGroup,
    /// Hermite rows in internal column order `(n, c1, …, cr)`.
    basis: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientInfo {
    /// Invariant factors > 1 of the torsion part of G/H.
    pub invariant_factors: Vec<u64>,
    /// Number of ℤ summands in G/H (0 or 1 here).
    pub free_rank: usize,
    pub is_finite: bool,
    pub is_cyclic: bool,
    /// Lexicographically least nonnegative representative of every coset,
    /// present when G/H is finite.
    #[serde(skip)]
    pub coset_reps: Option<Vec<GroupElement>>,
}

fn lift(g: &AmbientGroup, c: usize, n: i64) -> Row {
    let mut v = vec![n as i128];
    v.extend(g.coords(c).into_iter().map(i128::from));
    v
}

fn relation_rows(g: &AmbientGroup) -> Vec<Row> {
    let r = g.rank();
    (0..r)
        .map(|i| {
            let mut v = vec![0i128; r + 1];
            v[i + 1] = g.factors()[i] as i128;
            v
        })
        .collect()
}

impl Subgroup {
    fn from_rows(ambient: &AmbientGroup, rows: Vec<Row>) -> Result<Self> {
        let basis = intmat::hnf(rows)
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| i64::try_from(x).map_err(|_| Error::Overflow("lattice entry")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup {
            ambient: ambient.clone(),
            basis,
        })
    }

    /// The trivial subgroup.
    pub fn trivial(ambient: &AmbientGroup) -> Self {
        Self::from_rows(ambient, relation_rows(ambient)).expect("small entries")
    }

    pub fn full(ambient: &AmbientGroup) -> Self {
        let r = ambient.rank();
        Self::from_rows(ambient, intmat::identity(r + 1)).expect("small entries")
    }

    /// ⟨gens⟩ for generators given as (torsion index, n).
    pub fn generated_by(
        ambient: &AmbientGroup,
        gens: impl IntoIterator<Item = (usize, i64)>,
    ) -> Result<Self> {
        let mut h = Self::trivial(ambient);
        // One generator at a time keeps the entries reduced.
        for (c, n) in gens {
            if h.contains(c, n) {
                continue;
            }
            let mut rows: Vec<Row> = h.rows_i128();
            rows.push(lift(ambient, c, n));
            h = Self::from_rows(ambient, rows)?;
        }
        Ok(h)
    }

    pub fn generated(ambient: &AmbientGroup, gens: &[GroupElement]) -> Result<Self> {
        let idx = gens
            .iter()
            .map(|g| Ok((ambient.index(&g.torsion)?, g.n)))
            .collect::<Result<Vec<_>>>()?;
        Self::generated_by(ambient, idx)
    }

    /// mℤ inside plain ℤ (or {0} ⊕ mℤ in general).
    pub fn multiples(ambient: &AmbientGroup, m: i64) -> Self {
        Self::generated_by(ambient, [(0, m)]).expect("small entries")
    }

    /// ⟨D⟩ for an eventually periodic D.
    ///
    /// Generators: every window element, one element of each occupied tail
    /// class, and `(0, p)` when some tail is nonempty. These lie in ⟨D⟩
    /// because `(0, p)` is the difference of two consecutive members of any
    /// tail class. Conversely every element of D is either a window element
    /// or a class representative plus a multiple of `(0, p)`.
    pub fn from_periodic(d: &PeriodicSet) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::precondition(
                "nonempty set",
                "subgroup generated by ∅",
            ));
        }
        Self::generated_by(d.ambient(), periodic_generators(d))
    }

    /// ⟨A − A⟩ without forming A − A: the differences `g − a0` over the
    /// generators of [`Subgroup::from_periodic`], plus `(0, p)` when A has a
    /// tail. Any `a − b` equals `(a − a0) − (b − a0)`.
    pub fn differences_of(a: &PeriodicSet) -> Result<Self> {
        let gens = periodic_generators(a);
        let Some(&(c0, n0)) = gens.first() else {
            return Err(Error::precondition("nonempty set", "differences of ∅"));
        };
        let g = a.ambient();
        let mut diffs: Vec<(usize, i64)> =
            gens.iter().map(|&(c, n)| (g.sub(c, c0), n - n0)).collect();
        if a.has_right_tail() || a.has_left_tail() {
            diffs.push((0, a.period() as i64));
        }
        Self::generated_by(g, diffs)
    }

    fn rows_i128(&self) -> Vec<Row> {
        self.basis
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect()
    }

    pub fn ambient(&self) -> &AmbientGroup {
        &self.ambient
    }

    /// Hermite rows in column order `(n, c1, …, cr)`.
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Positive generator of the projection of H onto ℤ, 0 if H is finite.
    pub fn projection(&self) -> i64 {
        self.basis.first().map_or(0, |r| r[0])
    }

    /// `[G : H]`, `None` for infinite index.
    pub fn index(&self) -> Option<u128> {
        if self.projection() == 0 {
            return None;
        }
        let mut prod: u128 = 1;
        for (i, row) in self.basis.iter().enumerate() {
            prod = prod.saturating_mul(row[i] as u128);
        }
        Some(prod)
    }

    pub fn is_full(&self) -> bool {
        self.index() == Some(1)
    }

    /// Reduce a lift modulo the lattice. Returns the canonical remainder and
    /// whether it is zero.
    fn reduce(&self, mut v: Row) -> Row {
        for row in &self.basis {
            let piv = row.iter().position(|&x| x != 0).expect("nonzero row");
            let p = row[piv] as i128;
            let q = v[piv].div_euclid(p);
            if q != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x -= q * y as i128;
                }
            }
        }
        v
    }

    pub fn contains(&self, c: usize, n: i64) -> bool {
        self.reduce(lift(&self.ambient, c, n))
            .iter()
            .all(|&x| x == 0)
    }

    pub fn member(&self, g: &GroupElement) -> Result<bool> {
        let c = self.ambient.index(&g.torsion)?;
        Ok(self.contains(c, g.n))
    }

    /// Canonical label of the coset `g + H`.
    pub fn coset_key(&self, c: usize, n: i64) -> Vec<i128> {
        self.reduce(lift(&self.ambient, c, n))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.ambient.check_same(&other.ambient)?;
        let mut rows = self.rows_i128();
        rows.extend(other.rows_i128());
        Self::from_rows(&self.ambient, rows)
    }

    /// `H1 ∩ H2` via the left kernel of the stacked bases.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.ambient.check_same(&other.ambient)?;
        let b1 = self.rows_i128();
        let b2 = other.rows_i128();
        let mut m: Vec<Row> = b1.iter().chain(b2.iter()).cloned().collect();
        let mut u = intmat::identity(m.len());
        intmat::echelon(&mut m, Some(&mut u));
        let mut gens = relation_rows(&self.ambient);
        for (hrow, urow) in m.iter().zip(&u) {
            if hrow.iter().all(|&x| x == 0) {
                gens.push(intmat::vec_mat(&urow[..b1.len()], &b1));
            }
        }
        Self::from_rows(&self.ambient, gens)
    }

    pub fn is_subgroup_of(&self, other: &Self) -> Result<bool> {
        self.ambient.check_same(&other.ambient)?;
        Ok(self.basis.iter().all(|row| {
            other
                .reduce(row.iter().map(|&x| x as i128).collect())
                .iter()
                .all(|&x| x == 0)
        }))
    }

    /// `self ⊊ other`.
    pub fn is_strict_subgroup_of(&self, other: &Self) -> Result<bool> {
        Ok(self.is_subgroup_of(other)? && self != other)
    }

    /// Generators as group elements (rows mapped back to C ⊕ ℤ, zero rows
    /// from the torsion relations dropped).
    pub fn generators(&self) -> Vec<GroupElement> {
        let g = &self.ambient;
        self.basis
            .iter()
            .filter_map(|row| {
                let t: Vec<i64> = row[1..]
                    .iter()
                    .zip(g.factors())
                    .map(|(&x, &d)| x.rem_euclid(d))
                    .collect();
                (row[0] != 0 || t.iter().any(|&x| x != 0)).then(|| GroupElement {
                    torsion: t,
                    n: row[0],
                })
            })
            .collect()
    }

    /// Smallest `m' > 0` with `(0, m') ∈ H`, or 0 if none.
    pub fn pure_projection(&self) -> i64 {
        let m = self.projection();
        if m == 0 {
            return 0;
        }
        (1..=self.ambient.order() as i64)
            .map(|k| k * m)
            .find(|&n| self.contains(0, n))
            .expect("order of the torsion part bounds the search")
    }

    pub fn quotient(&self) -> QuotientInfo {
        let r = self.ambient.rank();
        let s = intmat::smith(&self.rows_i128());
        let free_rank = r + 1 - s.diag.iter().filter(|&&d| d != 0).count();
        let invariant_factors: Vec<u64> = s
            .diag
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| d as u64)
            .collect();
        let is_finite = free_rank == 0;
        let is_cyclic = invariant_factors.len() + free_rank <= 1;
        QuotientInfo {
            is_finite,
            is_cyclic,
            coset_reps: is_finite.then(|| self.coset_representatives()),
            invariant_factors,
            free_rank,
        }
    }

    fn coset_representatives(&self) -> Vec<GroupElement> {
        let index = self.index().expect("finite index") as usize;
        let span = self.pure_projection();
        let mut seen = HashSet::new();
        let mut reps = Vec::with_capacity(index);
        'outer: for c in 0..self.ambient.order() {
            for n in 0..span {
                if seen.insert(self.coset_key(c, n)) {
                    reps.push(GroupElement {
                        torsion: self.ambient.coords(c),
                        n,
                    });
                    if reps.len() == index {
                        break 'outer;
                    }
                }
            }
        }
        reps
    }

    pub fn reembed(&self) -> Result<Reembedding> {
        Reembedding::new(self)
    }
}

/// Window elements, one element per occupied tail class.
pub(crate) fn periodic_generators(d: &PeriodicSet) -> Vec<(usize, i64)> {
    let mut gens = d.window_elements();
    for (c, r) in d.right_classes() {
        gens.push((c, d.right_class_start(r)));
    }
    for (c, r) in d.left_classes() {
        gens.push((c, d.left_class_end(r)));
    }
    gens
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({self})")
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
        write!(f, "⟨{}⟩", gens.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupJson {
    pub torsion_factors: Vec<String>,
    /// Row-major Hermite basis, columns `(n, c1, …, cr)`.
    pub matrix: Vec<Vec<String>>,
    pub index: String,
}

impl Serialize for Subgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl Subgroup {
    pub fn to_json(&self) -> SubgroupJson {
        SubgroupJson {
            torsion_factors: self
                .ambient
                .factors()
                .iter()
                .map(|d| d.to_string())
                .collect(),
            matrix: self
                .basis
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
            index: self.index().map_or("inf".to_string(), |i| i.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perset::literal::parse;

    fn z() -> AmbientGroup {
        AmbientGroup::integers()
    }

    #[test]
    fn subgroup_of_periodic_sets() {
        let two_z = parse("0+2Z").unwrap();
        let h = Subgroup::from_periodic(&two_z).unwrap();
        assert_eq!(h.index(), Some(2));
        let d = parse("{1}, 0+2N").unwrap().difference_set().unwrap();
        assert!(Subgroup::from_periodic(&d).unwrap().is_full());
        let c2 = AmbientGroup::new(vec![2]).unwrap();
        let d = crate::perset::literal::parse_in("(0)0+2Z, (1)1+2Z", Some(&c2)).unwrap();
        let h = Subgroup::from_periodic(&d).unwrap();
        assert_eq!(h.index(), Some(2));
        assert!(h.contains(1, 1) && h.contains(0, 2) && !h.contains(1, 0) && !h.contains(0, 1));
    }

    #[test]
    fn quotients_sums_intersections() {
        let h2 = Subgroup::multiples(&z(), 2);
        let h3 = Subgroup::multiples(&z(), 3);
        let q = h2.quotient();
        assert_eq!(q.invariant_factors, vec![2]);
        assert!(q.is_cyclic && q.is_finite);
        assert_eq!(
            q.coset_reps.unwrap(),
            vec![GroupElement::integer(0), GroupElement::integer(1)]
        );
        assert!(h2.sum(&h3).unwrap().is_full());
        assert_eq!(h2.intersect(&h3).unwrap(), Subgroup::multiples(&z(), 6));
        assert!(h3
            .intersect(&h2)
            .unwrap()
            .is_strict_subgroup_of(&h2)
            .unwrap());
    }

    #[test]
    fn torsion_quotients() {
        let g = AmbientGroup::new(vec![2, 4]).unwrap();
        let t = Subgroup::trivial(&g);
        let q = t.quotient();
        assert_eq!(q.free_rank, 1);
        assert_eq!(q.invariant_factors, vec![2, 4]);
        assert!(!q.is_cyclic && !q.is_finite);
        let h = Subgroup::multiples(&g, 3);
        let q = h.quotient();
        assert_eq!(h.index(), Some(24));
        assert_eq!(q.invariant_factors, vec![2, 12]);
        assert_eq!(q.coset_reps.as_ref().unwrap().len(), 24);
    }

    #[test]
    fn differences_shortcut_matches_difference_set() {
        for lit in ["{1}, 0+2N", "{0, 1}, 0+3N", "{-2, 7}, 4+6N, 1-4N"] {
            let a = parse(lit).unwrap();
            let slow = Subgroup::from_periodic(&a.difference_set().unwrap()).unwrap();
            assert_eq!(Subgroup::differences_of(&a).unwrap(), slow, "{lit}");
        }
    }
}
