//! Translatable semigroups: validation, the decomposition `T = R + xℕ`, the
//! Grothendieck group, and restriction to finite-index subgroups.
//!
//! Translatability only needs one check per residue class. For x in class
//! `(c, n mod p)`, the tails of `x + T` are the tails of T shifted by that
//! class, so whether `T ∖ (x + T)` is finite depends on the class alone. The
//! check therefore runs on every window element and on one element of each
//! occupied tail class, which between them meet every class T meets.
//!
//! Inside C ⊕ ℤ with Grothendieck group the whole ambient, a translatable
//! semigroup is either the whole group or cofinite in C × ℕ (or its mirror
//! image). The decomposition picks `x` as the torsion-free element of least
//! positive height, so `R = T ∖ (x + T)` is finite and every element of T is
//! uniquely `r + kx`.

use serde::Serialize;

use crate::abgroup::{Reembedding, Subgroup};
use crate::error::{Error, Result};
use crate::perset::{GroupElement, PeriodicSet, Tail};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SemigroupKind {
    /// T is the whole ambient group.
    Group,
    /// T ∼ C × ℕ.
    Positive,
    /// T ∼ C × (−ℕ).
    Negative,
}

/// Evidence collected while validating: each tested `x` with its finite
/// `T ∖ (x + T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatabilityCertificate {
    pub checked: Vec<(GroupElement, Vec<GroupElement>)>,
}

/// A validated translatable semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupT {
    carrier: PeriodicSet,
    kind: SemigroupKind,
    certificate: TranslatabilityCertificate,
}

impl SemigroupT {
    pub fn carrier(&self) -> &PeriodicSet {
        &self.carrier
    }

    pub fn kind(&self) -> SemigroupKind {
        self.kind
    }

    pub fn is_group(&self) -> bool {
        self.kind == SemigroupKind::Group
    }

    pub fn certificate(&self) -> &TranslatabilityCertificate {
        &self.certificate
    }

    pub fn ambient(&self) -> &crate::perset::AmbientGroup {
        self.carrier.ambient()
    }

    /// Shorthand for C × ℕ.
    pub fn nonnegative(g: &crate::perset::AmbientGroup) -> Self {
        validate_semigroup(&PeriodicSet::nonnegative(g)).expect("C × ℕ is translatable")
    }

    pub fn whole_group(g: &crate::perset::AmbientGroup) -> Self {
        validate_semigroup(&PeriodicSet::full(g)).expect("G is translatable")
    }
}

pub fn validate_semigroup(s: &PeriodicSet) -> Result<SemigroupT> {
    if s.is_finite() {
        return Err(Error::precondition(
            "infinite carrier",
            format!("{s} is finite"),
        ));
    }
    let ss = s.minkowski_sum(s)?;
    let escaped = ss.difference(s)?;
    if !escaped.is_empty() {
        let (c, n) = escaped
            .elements_in(-(1 << 20), 1 << 20)
            .first()
            .copied()
            .unwrap_or((0, 0));
        return Err(Error::NotClosed(format!(
            "{s} (witness {})",
            s.element(c, n)
        )));
    }
    let mut tests = s.window_elements();
    for (c, r) in s.right_classes() {
        tests.push((c, s.right_class_start(r)));
    }
    for (c, r) in s.left_classes() {
        tests.push((c, s.left_class_end(r)));
    }
    let mut checked = Vec::with_capacity(tests.len());
    for (c, n) in tests {
        let shifted = s.translate_by(c, n);
        match s.subeq(&shifted)? {
            Some(rest) => checked.push((
                s.element(c, n),
                rest.into_iter().map(|(c, n)| s.element(c, n)).collect(),
            )),
            None => return Err(Error::NotTranslatable(s.element(c, n).to_string())),
        }
    }
    let gt = Subgroup::differences_of(s)?;
    if !gt.is_full() {
        return Err(Error::GrothendieckMismatch {
            found: gt.to_string(),
        });
    }
    let kind = if s.is_full() {
        SemigroupKind::Group
    } else if s.has_right_tail() && !s.has_left_tail() {
        SemigroupKind::Positive
    } else if s.has_left_tail() && !s.has_right_tail() {
        SemigroupKind::Negative
    } else {
        return Err(Error::precondition(
            "one-sided or the whole group",
            format!("{s} has both tails but is not G"),
        ));
    };
    Ok(SemigroupT {
        carrier: s.clone(),
        kind,
        certificate: TranslatabilityCertificate { checked },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub kind: SemigroupKind,
    /// Invariant factors of the finite subgroup C.
    pub c_factors: Vec<i64>,
    /// Element with `T = R + xℕ`, absent for groups.
    pub x: Option<GroupElement>,
    pub r: Vec<GroupElement>,
    /// Unit ray `(0, ±1)` with `G = C ⊕ ray·ℤ`.
    pub ray: Option<GroupElement>,
    /// `T △ (C ⊕ ray·ℕ)`.
    pub sym_diff: Vec<GroupElement>,
}

pub fn structure_decompose(t: &SemigroupT) -> Result<StructureReport> {
    let s = &t.carrier;
    let g = s.ambient();
    let c_factors = g.factors().to_vec();
    let sign: i64 = match t.kind {
        SemigroupKind::Group => {
            if !s.difference_set()?.sim(s)?.is_some_and(|v| v.is_empty()) {
                return Err(Error::Certification("group carrier is not T − T".into()));
            }
            return Ok(StructureReport {
                kind: SemigroupKind::Group,
                c_factors,
                x: None,
                r: Vec::new(),
                ray: None,
                sym_diff: Vec::new(),
            });
        }
        SemigroupKind::Positive => 1,
        SemigroupKind::Negative => -1,
    };
    // Least positive height with torsion 0; T ∼ C × ℕ guarantees one within
    // the window plus a period.
    let (lo, hi) = s.window();
    let reach = lo.abs().max(hi.abs()) + s.period() as i64 + 1;
    let xn = (1..=reach)
        .map(|k| sign * k)
        .find(|&n| s.contains(0, n))
        .ok_or_else(|| Error::Certification("no torsion-free element of T".into()))?;
    let shifted = s.translate_by(0, xn);
    let r_set = s.difference(&shifted)?;
    let r_elems = r_set
        .finite_elements()
        .ok_or_else(|| Error::Certification("T ∖ (x + T) is infinite".into()))?;
    let ray_set = PeriodicSet::progression(
        g,
        0,
        0,
        xn.unsigned_abs() as usize,
        if sign > 0 { Tail::Right } else { Tail::Left },
    );
    if r_set.minkowski_sum(&ray_set)? != *s {
        return Err(Error::Certification("R + xℕ does not rebuild T".into()));
    }
    let half = if sign > 0 {
        PeriodicSet::nonnegative(g)
    } else {
        PeriodicSet::nonnegative(g).negate()
    };
    let sym = s
        .sim(&half)?
        .ok_or_else(|| Error::Certification("T is not commensurable with C ⊕ ℕ".into()))?;
    Ok(StructureReport {
        kind: t.kind,
        c_factors,
        x: Some(s.element(0, xn)),
        r: r_elems.into_iter().map(|(c, n)| s.element(c, n)).collect(),
        ray: Some(s.element(0, sign)),
        sym_diff: sym.into_iter().map(|(c, n)| s.element(c, n)).collect(),
    })
}

/// `⟨T − T⟩`, checked against the ambient.
pub fn grothendieck(t: &SemigroupT) -> Result<Subgroup> {
    let h = Subgroup::from_periodic(&t.carrier.difference_set()?)?;
    if !h.is_full() {
        return Err(Error::GrothendieckMismatch {
            found: h.to_string(),
        });
    }
    Ok(h)
}

/// `T ∩ H` in coordinates on H, revalidated.
pub fn t_cap_h(t: &SemigroupT, h: &Subgroup) -> Result<(SemigroupT, Reembedding)> {
    let re = h.reembed()?;
    let moved = re.transport(&t.carrier)?;
    let sub = validate_semigroup(&moved)?;
    Ok((sub, re))
}

/// Outcome of checking the translation properties on samples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TranslationAudit {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl TranslationAudit {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Checks, on the given samples: `T ∼ x + T`; some `t` with `t + F ⊆ T`;
/// `(x + H) ∩ T` infinite; and `T ⊆~ R + S` when R meets every coset of H
/// and `T ∩ H ⊆~ S`.
pub fn audit_translation_properties(
    t: &SemigroupT,
    xs: &[(usize, i64)],
    finite_sets: &[Vec<(usize, i64)>],
    subgroups: &[Subgroup],
) -> Result<TranslationAudit> {
    let s = &t.carrier;
    let g = s.ambient();
    let mut audit = TranslationAudit::default();
    for &(c, n) in xs {
        let ok = s.sim(&s.translate_by(c, n))?.is_some();
        audit.record(ok, || format!("T ≁ {} + T", s.element(c, n)));
    }
    for f in finite_sets {
        let fs = PeriodicSet::from_elements(g, f.iter().copied());
        let (lo, hi) = s.window();
        let span = lo.abs().max(hi.abs()) + s.period() as i64;
        let (flo, fhi) = fs.window();
        let shift = match t.kind {
            SemigroupKind::Group | SemigroupKind::Positive => span - flo.min(0) + 1,
            SemigroupKind::Negative => -span - fhi.max(0) - 1,
        };
        let ok = fs.translate_by(0, shift).is_subset(s)?;
        audit.record(ok, || format!("(0,{shift}) + F ⊄ T"));
    }
    for h in subgroups {
        let Some(_) = h.index() else { continue };
        let hs = subgroup_set(h)?;
        for &(c, n) in xs {
            let coset = hs.translate_by(c, n);
            let ok = !coset.intersection(s)?.is_finite();
            audit.record(ok, || format!("({} + H) ∩ T finite", s.element(c, n)));
        }
        let reps = h.quotient().coset_reps.unwrap_or_default();
        let r = PeriodicSet::from_elements(
            g,
            reps.iter()
                .map(|e| (g.index(&e.torsion).expect("rep"), e.n)),
        );
        // S = (T ∩ H) minus a few elements is still ⊇~ T ∩ H.
        let tih = s.intersection(&hs)?;
        let trimmed: Vec<(usize, i64)> = tih.elements_in(-4, 4);
        let s_set = tih.difference(&PeriodicSet::from_elements(g, trimmed))?;
        let ok = s.subeq(&r.minkowski_sum(&s_set)?)?.is_some();
        audit.record(ok, || format!("T ⊄~ R + S for H = {h}"));
    }
    Ok(audit)
}

/// H as a periodic set. Infinite index means H lies inside C, so it is
/// finite.
pub fn subgroup_set(h: &Subgroup) -> Result<PeriodicSet> {
    let g = h.ambient();
    if h.index().is_none() {
        return Ok(PeriodicSet::from_elements(
            g,
            (0..g.order()).filter(|&c| h.contains(c, 0)).map(|c| (c, 0)),
        ));
    }
    let per = h.pure_projection() as usize;
    let classes: Vec<(usize, usize)> = (0..g.order())
        .flat_map(|c| (0..per).map(move |r| (c, r)))
        .filter(|&(c, r)| h.contains(c, r as i64))
        .collect();
    Ok(PeriodicSet::from_patterns(g, per, classes.clone(), classes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perset::literal::{parse, parse_in};
    use crate::perset::AmbientGroup;

    #[test]
    fn validates_examples() {
        assert_eq!(
            validate_semigroup(&parse("0+1N").unwrap()).unwrap().kind(),
            SemigroupKind::Positive
        );
        assert!(validate_semigroup(&parse("{0, 3}, 5+1N").unwrap()).is_ok());
        assert!(validate_semigroup(&parse("{0}, 2+1N").unwrap()).is_ok());
        assert!(matches!(
            validate_semigroup(&parse("{3}, 0+2N").unwrap()),
            Err(Error::NotClosed(_))
        ));
        assert!(matches!(
            validate_semigroup(&parse("0+2N").unwrap()),
            Err(Error::GrothendieckMismatch { .. })
        ));
        assert_eq!(
            validate_semigroup(&parse("0+1Z").unwrap()).unwrap().kind(),
            SemigroupKind::Group
        );
    }

    #[test]
    fn numerical_semigroup_structure() {
        let t = validate_semigroup(&parse("{0, 3, 5, 6}, 8+1N").unwrap()).unwrap();
        let rep = structure_decompose(&t).unwrap();
        assert_eq!(rep.x, Some(GroupElement::integer(3)));
        assert_eq!(rep.r, [0, 5, 10].map(GroupElement::integer).to_vec());
        assert_eq!(
            rep.sym_diff,
            [1, 2, 4, 7].map(GroupElement::integer).to_vec()
        );
    }

    #[test]
    fn product_and_group_structure() {
        let g = AmbientGroup::new(vec![2]).unwrap();
        let t = validate_semigroup(&parse_in("(*)0+1N", Some(&g)).unwrap()).unwrap();
        let rep = structure_decompose(&t).unwrap();
        assert_eq!(rep.c_factors, vec![2]);
        assert_eq!(rep.x, Some(g.element(&[0], 1).unwrap()));
        assert_eq!(rep.r.len(), 2);
        assert!(rep.sym_diff.is_empty());
        let z = SemigroupT::whole_group(&AmbientGroup::integers());
        assert_eq!(structure_decompose(&z).unwrap().kind, SemigroupKind::Group);
        assert!(grothendieck(&t).unwrap().is_full());
    }

    #[test]
    fn restriction_to_subgroups() {
        let t = validate_semigroup(&parse("{0, 3, 5, 6}, 8+1N").unwrap()).unwrap();
        let (sub, _) = t_cap_h(&t, &Subgroup::multiples(&AmbientGroup::integers(), 2)).unwrap();
        assert_eq!(sub.carrier(), &parse("{0}, 3+1N").unwrap());
        let g = AmbientGroup::new(vec![2]).unwrap();
        let t2 = validate_semigroup(&parse_in("(*)0+1N", Some(&g)).unwrap()).unwrap();
        let diag = Subgroup::generated_by(&g, [(1, 1)]).unwrap();
        let (sub, _) = t_cap_h(&t2, &diag).unwrap();
        assert_eq!(sub.carrier(), &parse("0+1N").unwrap());
    }

    #[test]
    fn translation_properties_hold() {
        let t = validate_semigroup(&parse("{0, 3, 5, 6}, 8+1N").unwrap()).unwrap();
        let z = AmbientGroup::integers();
        let audit = audit_translation_properties(
            &t,
            &[(0, -7), (0, 4), (0, 11)],
            &[vec![(0, -5), (0, 9)], vec![(0, 0)]],
            &[Subgroup::multiples(&z, 2), Subgroup::multiples(&z, 5)],
        )
        .unwrap();
        assert!(audit.failures.is_empty(), "{:?}", audit.failures);
        assert!(audit.checks > 5);
    }
}
