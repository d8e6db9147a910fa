//! Natural density of eventually periodic sets, and exact audits of the
//! density lemmas used for removal bounds.
//!
//! The density of S relative to T is the share of tail classes of `S ∩ T`
//! among those of T, counted per unit of period:
//! `d(S) = (r(S∩T) + l(S∩T)) / (r(T) + l(T))` where `r(X)` and `l(X)` are the
//! sizes of the right and left patterns of X divided by its period. This is
//! finitely additive, translation invariant and `d(T) = 1`; it is inversion
//! invariant when T is a group. Finite sets have density 0.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::abgroup::Subgroup;
use crate::basis::ord_star;
use crate::error::{Error, Result};
use crate::perset::{AmbientGroup, PeriodicSet};
use crate::structure::{subgroup_set, SemigroupT};
use crate::verify::gen::{random_set, Shape};

/// An exact density in `[0, 1]`, serialized as `"num/den"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DensityValue(pub BigRational);

impl DensityValue {
    pub fn ratio(num: i64, den: i64) -> Self {
        DensityValue(BigRational::new(num.into(), den.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for DensityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for DensityValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn tail_mass(s: &PeriodicSet) -> BigRational {
    let count = s.right_classes().len() + s.left_classes().len();
    BigRational::new(BigInt::from(count), BigInt::from(s.period()))
}

pub fn natural_density(s: &PeriodicSet, t: &SemigroupT) -> Result<DensityValue> {
    t.ambient().check_same(s.ambient())?;
    let inside = s.intersection(t.carrier())?;
    Ok(DensityValue(tail_mass(&inside) / tail_mass(t.carrier())))
}

fn d(s: &PeriodicSet, t: &SemigroupT) -> Result<BigRational> {
    Ok(natural_density(s, t)?.0)
}

/// Verdict of one lemma instance: whether the hypothesis applied and whether
/// the conclusion held (always true when the hypothesis did not apply).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub lemma: &'static str,
    pub fired: bool,
    pub held: bool,
    pub detail: String,
}

impl LemmaCheck {
    fn new(lemma: &'static str, fired: bool, held: bool, detail: String) -> Self {
        LemmaCheck {
            lemma,
            fired,
            held: !fired || held,
            detail,
        }
    }
}

/// `d(A) + d(B) > 1` forces `T ⊆ A − B`.
pub fn prehistoric_audit(a: &PeriodicSet, b: &PeriodicSet, t: &SemigroupT) -> Result<LemmaCheck> {
    let total = d(a, t)? + d(b, t)?;
    let fired = total > BigRational::one();
    let held = fired
        && !a.is_empty()
        && !b.is_empty()
        && t.carrier().is_subset(&a.minkowski_sum(&b.negate())?)?;
    Ok(LemmaCheck::new(
        "prehistoric",
        fired,
        held,
        format!("d(A) + d(B) = {}", DensityValue(total)),
    ))
}

/// Either `d(B + C) ⩾ 2d(C)` or `B − B ⊆ C − C`; both branches are
/// evaluated.
pub fn density_increment_audit(
    b: &PeriodicSet,
    c: &PeriodicSet,
    t: &SemigroupT,
) -> Result<LemmaCheck> {
    if b.is_empty() || c.is_empty() {
        return Ok(LemmaCheck::new(
            "densityIncrement",
            true,
            true,
            "empty operand".into(),
        ));
    }
    let two = BigRational::from_integer(2.into());
    let grows = d(&b.minkowski_sum(c)?, t)? >= two * d(c, t)?;
    let nested = b.difference_set()?.is_subset(&c.difference_set()?)?;
    Ok(LemmaCheck::new(
        "densityIncrement",
        true,
        grows || nested,
        format!("doubling {grows}, B−B ⊆ C−C {nested}"),
    ))
}

fn iter_s(r: u32, i: u32) -> u32 {
    (1 << i) * r + (1 << i) - 1
}

/// With `s_i = 2^i r + 2^i − 1`: either `d(s_i A) ⩾ 2^i d(rA)` or `i ⩾ 1`
/// and `s_{i−1}(A − A) = ⟨A − A⟩`.
pub fn iter_audit(a: &PeriodicSet, r: u32, i: u32, t: &SemigroupT) -> Result<LemmaCheck> {
    if r < 1 || i > 4 || r > 8 {
        return Err(Error::Budget(format!(
            "iter audit needs 1 ⩽ r ⩽ 8, i ⩽ 4 (r = {r}, i = {i})"
        )));
    }
    let si = iter_s(r, i);
    let lhs = d(&a.h_fold(si)?, t)?;
    let rhs = BigRational::from_integer((1i64 << i).into()) * d(&a.h_fold(r)?, t)?;
    let grows = lhs >= rhs;
    let saturated = i >= 1 && {
        let diffs = a.difference_set()?;
        diffs.h_fold(iter_s(r, i - 1))? == subgroup_set(&Subgroup::differences_of(a)?)?
    };
    Ok(LemmaCheck::new(
        "iter",
        true,
        grows || saturated,
        format!("s_i = {si}, doubling {grows}, saturated {saturated}"),
    ))
}

/// With `α = d(hA) > 0`, some `s ⩽ (h+1)/α − 1` has `sA − sA = ⟨A − A⟩`.
pub fn density_increment2_audit(a: &PeriodicSet, h: u32, t: &SemigroupT) -> Result<LemmaCheck> {
    let alpha = d(&a.h_fold(h)?, t)?;
    if alpha.is_zero() {
        return Ok(LemmaCheck::new(
            "densityIncrement2",
            false,
            true,
            "α = 0".into(),
        ));
    }
    let bound = (BigRational::from_integer((h + 1).into()) / &alpha - BigRational::one()).floor();
    let bound: u32 = bound.to_integer().try_into().unwrap_or(u32::MAX);
    if bound > 512 {
        return Err(Error::Budget(format!("s bound {bound}")));
    }
    let target = subgroup_set(&Subgroup::differences_of(a)?)?;
    let mut sum = a.clone();
    let mut found = None;
    for s in 1..=bound {
        if sum.difference_set()? == target {
            found = Some(s);
            break;
        }
        sum = sum.minkowski_sum(a)?;
    }
    Ok(LemmaCheck::new(
        "densityIncrement2",
        true,
        found.is_some(),
        format!(
            "α = {}, bound {bound}, least s {found:?}",
            DensityValue(alpha)
        ),
    ))
}

/// If `⟨B − B⟩ = G` and `T ⊆~ ⋃ (x_i + hB)` over m points then
/// `ord*(B) ⩽ h + m²(h+1) − m`.
pub fn nath_nash_audit(
    b: &PeriodicSet,
    h: u32,
    xs: &[(usize, i64)],
    t: &SemigroupT,
) -> Result<LemmaCheck> {
    let g = t.ambient();
    let full = !b.is_empty() && Subgroup::differences_of(b)?.is_full();
    let hb = b.h_fold(h)?;
    let mut cover = PeriodicSet::empty(g);
    for &(c, n) in xs {
        cover = cover.union(&hb.translate_by(c, n))?;
    }
    let fired = full && t.carrier().subeq(&cover)?.is_some();
    let m = xs.len() as u64;
    let bound = h as u64 + m * m * (h as u64 + 1) - m;
    let order = if fired { ord_star(b, t)?.order() } else { None };
    Ok(LemmaCheck::new(
        "NathNashLike",
        fired,
        order.is_some_and(|o| o as u64 <= bound),
        format!("order {order:?}, bound {bound}"),
    ))
}

/// If `T ⊆~ hA` and `d(T ∖ h(A∖{a})) < 1/h` then `T ⊆~ 2h(A∖{a})`.
pub fn lowdensity_audit(
    a: &PeriodicSet,
    elem: (usize, i64),
    h: u32,
    t: &SemigroupT,
) -> Result<LemmaCheck> {
    let g = t.ambient();
    let tc = t.carrier();
    let rest = a.difference(&PeriodicSet::from_elements(g, [elem]))?;
    if !a.contains(elem.0, elem.1) || rest.is_empty() {
        return Ok(LemmaCheck::new(
            "lowdensity",
            false,
            true,
            "a ∉ A or A = {a}".into(),
        ));
    }
    let covered = tc.subeq(&a.h_fold(h)?)?.is_some();
    let hr = rest.h_fold(h)?;
    let gap = d(&tc.difference(&hr)?, t)?;
    let fired = covered && gap < BigRational::new(1.into(), h.into());
    let held = fired && tc.subeq(&hr.minkowski_sum(&hr)?)?.is_some();
    Ok(LemmaCheck::new(
        "lowdensity",
        fired,
        held,
        format!("d(T ∖ h(A∖a)) = {}", DensityValue(gap)),
    ))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaSummary {
    pub lemma: &'static str,
    pub instances: usize,
    pub fired: usize,
    pub failures: Vec<String>,
}

fn shape(rng: &mut impl Rng, one_sided: bool) -> Shape {
    Shape {
        max_period: 12,
        max_width: 12,
        one_sided: if one_sided { 1.0 } else { 0.0 },
        density: rng.gen_range(0.2..0.9),
    }
}

/// Carriers used by the random audits: ℕ, C2 ⊕ ℕ, ⟨3, 5⟩ and ℤ.
pub fn audit_semigroups() -> Vec<SemigroupT> {
    let z = AmbientGroup::integers();
    let c2 = AmbientGroup::new(vec![2]).expect("valid");
    let ns = crate::structure::validate_semigroup(
        &crate::perset::literal::parse("{0, 3, 5, 6}, 8+1N").expect("literal"),
    )
    .expect("numerical semigroup");
    vec![
        SemigroupT::nonnegative(&z),
        SemigroupT::nonnegative(&c2),
        ns,
        SemigroupT::whole_group(&z),
    ]
}

fn subset_of(rng: &mut impl Rng, t: &SemigroupT) -> Result<PeriodicSet> {
    loop {
        let sh = shape(rng, !t.is_group());
        let s = random_set(rng, t.ambient(), sh);
        let inside = s.intersection(t.carrier())?;
        if !inside.is_empty() {
            return Ok(inside);
        }
    }
}

/// Runs `count` random instances of each density lemma.
pub fn density_lemma_audit(rng: &mut impl Rng, count: usize) -> Result<Vec<LemmaSummary>> {
    let ts = audit_semigroups();
    let names = [
        "prehistoric",
        "densityIncrement",
        "iter",
        "densityIncrement2",
        "NathNashLike",
        "lowdensity",
    ];
    let mut out: Vec<LemmaSummary> = names
        .iter()
        .map(|&lemma| LemmaSummary {
            lemma,
            ..Default::default()
        })
        .collect();
    for n in 0..count {
        let t = &ts[n % ts.len()];
        let checks = [
            prehistoric_audit(&subset_of(rng, t)?, &subset_of(rng, t)?, t)?,
            density_increment_audit(&subset_of(rng, t)?, &subset_of(rng, t)?, t)?,
            iter_audit(
                &subset_of(rng, t)?,
                rng.gen_range(1..=3),
                rng.gen_range(0..=4),
                t,
            )?,
            density_increment2_audit(&subset_of(rng, t)?, rng.gen_range(1..=5), t)?,
            {
                let b = subset_of(rng, t)?;
                let m = rng.gen_range(1..=3);
                let xs: Vec<(usize, i64)> = (0..m)
                    .map(|_| (rng.gen_range(0..t.ambient().order()), rng.gen_range(0..12)))
                    .filter(|&(c, n)| t.carrier().contains(c, n))
                    .collect();
                nath_nash_audit(&b, rng.gen_range(1..=3), &xs, t)?
            },
            {
                let a = subset_of(rng, t)?;
                let (lo, hi) = a.window();
                let p = a.period() as i64;
                let elems = a.elements_in(lo - p, hi + p);
                let e = elems[rng.gen_range(0..elems.len())];
                lowdensity_audit(&a, e, rng.gen_range(1..=3), t)?
            },
        ];
        for (slot, c) in out.iter_mut().zip(checks) {
            slot.instances += 1;
            slot.fired += c.fired as usize;
            if !c.held {
                slot.failures.push(c.detail);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perset::literal::{parse, parse_in};

    fn nat() -> SemigroupT {
        SemigroupT::nonnegative(&AmbientGroup::integers())
    }

    #[test]
    fn densities() {
        let t = nat();
        assert_eq!(
            natural_density(&parse("0+3N").unwrap(), &t).unwrap(),
            DensityValue::ratio(1, 3)
        );
        assert_eq!(
            natural_density(t.carrier(), &t).unwrap(),
            DensityValue::ratio(1, 1)
        );
        assert!(natural_density(&parse("{1, 5, 9}").unwrap(), &t)
            .unwrap()
            .is_zero());
        assert_eq!(
            natural_density(&parse("0+2Z").unwrap(), &t).unwrap(),
            DensityValue::ratio(1, 2)
        );
        let g = AmbientGroup::new(vec![2]).unwrap();
        let tc = SemigroupT::nonnegative(&g);
        let s = parse_in("(0)0+1N", Some(&g)).unwrap();
        assert_eq!(natural_density(&s, &tc).unwrap().to_string(), "1/2");
        let z = SemigroupT::whole_group(&AmbientGroup::integers());
        assert_eq!(
            natural_density(&parse("0+1N").unwrap(), &z).unwrap(),
            DensityValue::ratio(1, 2)
        );
    }

    #[test]
    fn lemma_examples() {
        let t = nat();
        let n = parse("0+1N").unwrap();
        let c = prehistoric_audit(&n, &n, &t).unwrap();
        assert!(c.fired && c.held);
        let c = prehistoric_audit(
            &parse("0+2N, 1+4N").unwrap(),
            &parse("0+2N, 3+4N").unwrap(),
            &t,
        )
        .unwrap();
        assert!(c.fired && c.held);
        let c = prehistoric_audit(&parse("0+2N").unwrap(), &parse("1+2N").unwrap(), &t).unwrap();
        assert!(!c.fired);
        let c = density_increment_audit(&parse("{0, 1}").unwrap(), &parse("0+2N").unwrap(), &t)
            .unwrap();
        assert!(c.held && c.detail.starts_with("doubling true"));
        let c = density_increment2_audit(&parse("{0, 1}, 0+5N").unwrap(), 2, &t).unwrap();
        assert!(c.fired && c.held, "{}", c.detail);
        let a = parse("{0, 1}, 0+2N").unwrap();
        let c = lowdensity_audit(&a, (0, 1), 2, &t).unwrap();
        assert!(!c.fired);
        let a = parse("{0, 1}, 0+2N, 1+8N").unwrap();
        let fired: Vec<LemmaCheck> = a
            .elements_in(0, 20)
            .into_iter()
            .map(|e| lowdensity_audit(&a, e, 2, &t).unwrap())
            .filter(|c| c.fired)
            .collect();
        assert!(!fired.is_empty());
        assert!(fired.iter().all(|c| c.held));
    }

    #[test]
    fn counting_agrees() {
        let t = nat();
        let s = parse("{1, 2, 7}, 3+12N, 4+12N, 10+12N").unwrap();
        let dv = natural_density(&s, &t).unwrap();
        let n = 100_000i64;
        let count = s.elements_in(0, n).len() as i64;
        let err = BigRational::new(count.into(), n.into()) - dv.0;
        let slack = BigRational::new((12 + 11).into(), n.into());
        assert!(err.clone() <= slack.clone() && -err <= slack);
    }

    #[test]
    fn random_driver() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let out = density_lemma_audit(&mut rng, 200).unwrap();
        for s in &out {
            assert_eq!(s.instances, 200);
            assert!(s.failures.is_empty(), "{}: {:?}", s.lemma, s.failures);
        }
        eprintln!(
            "{:?}",
            out.iter().map(|s| (s.lemma, s.fired)).collect::<Vec<_>>()
        );
    }
}
