//! Lech-type inequalities for monomial ideals, checked exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{input, LechError, Result};
use crate::monomial::MonomialIdeal;
use crate::multiplicity::{hs_multiplicity, mixed_multiplicity_2d};
use crate::rings::{ring_colength, ring_multiplicity, RingBase, RingSpec};
use crate::rng::XorShift;
use crate::search::{enumerate_ideals, factorial, EnumerateOptions, DEFAULT_VISIT_CAP};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Unsigned Stirling numbers of the first (`kind = 1`) or second kind.
pub fn stirling(kind: u8, n: u32, k: u32) -> Result<u128> {
    if k > n {
        return input(format!("stirling({}, {}, {}) needs k <= n", kind, n, k));
    }
    if kind != 1 && kind != 2 {
        return input("stirling kind must be 1 or 2");
    }
    let overflow = || LechError::Resource(format!("stirling({}, {}, {}) overflows", kind, n, k));
    let mut row = vec![1u128];
    for m in 1..=n as u128 {
        let mut next = vec![0u128; row.len() + 1];
        for j in 1..next.len() {
            let carry = if j < row.len() {
                let f = if kind == 1 { m - 1 } else { j as u128 };
                f.checked_mul(row[j]).ok_or_else(overflow)?
            } else {
                0
            };
            next[j] = row[j - 1].checked_add(carry).ok_or_else(overflow)?;
        }
        row = next;
    }
    Ok(row[k as usize])
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InequalityId {
    Lech,
    Mumford2d,
    Optimal3d,
    Skew3d,
    Mixed2dA,
    Mixed2dB,
    InclExclDiluted,
    WeakInclExcl,
    BestLechConj,
    HsvCoord,
    SncSemistable,
    ConeSemistable,
    DilutedIeSets,
}

impl InequalityId {
    pub const ALL: [InequalityId; 13] = [
        InequalityId::Lech,
        InequalityId::Mumford2d,
        InequalityId::Optimal3d,
        InequalityId::Skew3d,
        InequalityId::Mixed2dA,
        InequalityId::Mixed2dB,
        InequalityId::InclExclDiluted,
        InequalityId::WeakInclExcl,
        InequalityId::BestLechConj,
        InequalityId::HsvCoord,
        InequalityId::SncSemistable,
        InequalityId::ConeSemistable,
        InequalityId::DilutedIeSets,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InequalityId::Lech => "LECH",
            InequalityId::Mumford2d => "MUMFORD_2D",
            InequalityId::Optimal3d => "OPTIMAL_3D",
            InequalityId::Skew3d => "SKEW_3D",
            InequalityId::Mixed2dA => "MIXED_2D_A",
            InequalityId::Mixed2dB => "MIXED_2D_B",
            InequalityId::InclExclDiluted => "INCL_EXCL_DILUTED",
            InequalityId::WeakInclExcl => "WEAK_INCL_EXCL",
            InequalityId::BestLechConj => "BEST_LECH_CONJ",
            InequalityId::HsvCoord => "HSV_COORD",
            InequalityId::SncSemistable => "SNC_SEMISTABLE",
            InequalityId::ConeSemistable => "CONE_SEMISTABLE",
            InequalityId::DilutedIeSets => "DILUTED_IE_SETS",
        }
    }

    /// Entries whose statement is open rather than proved.
    pub fn is_conjecture(self) -> bool {
        self == InequalityId::BestLechConj
    }

    /// Entries taking a pair `I ⊆ J`.
    pub fn takes_pair(self) -> bool {
        matches!(self, InequalityId::Mixed2dA | InequalityId::Mixed2dB)
    }
}

impl Serialize for InequalityId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InequalityId {
    type Err = LechError;

    fn from_str(s: &str) -> Result<Self> {
        let squash = |t: &str| t.to_ascii_uppercase().replace(['-', '_'], "");
        let norm = squash(s.trim());
        InequalityId::ALL
            .into_iter()
            .find(|id| squash(id.name()) == norm)
            .ok_or_else(|| LechError::Input(format!("unknown inequality `{}`", s)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub id: InequalityId,
    pub ring: String,
    pub inputs: Vec<String>,
    #[serde(serialize_with = "crate::qser::q")]
    pub lhs: Q,
    #[serde(serialize_with = "crate::qser::q")]
    pub rhs: Q,
    pub holds: bool,
    pub equality: bool,
    #[serde(serialize_with = "crate::qser::q")]
    pub slack: Q,
    /// The entry asserts strict inequality for these inputs.
    pub expect_strict: bool,
    /// Intermediate terms of a chain, where the entry has one.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "crate::qser::opt_vec")]
    pub chain: Option<Vec<Q>>,
}

impl VerificationReport {
    fn new(id: InequalityId, spec: &RingSpec, inputs: Vec<String>, lhs: Q, rhs: Q, expect_strict: bool) -> Self {
        VerificationReport {
            id,
            ring: spec.to_string(),
            inputs,
            holds: lhs <= rhs,
            equality: lhs == rhs,
            slack: &rhs - &lhs,
            lhs,
            rhs,
            expect_strict,
            chain: None,
        }
    }

    /// The entry's full claim (including strictness) is satisfied.
    pub fn ok(&self) -> bool {
        self.holds && !(self.expect_strict && self.equality)
    }
}

fn cut_colength(ideal: &MonomialIdeal, vars: &[usize]) -> Result<i64> {
    Ok(ideal.restrict_modulo_vars(vars)?.colength()? as i64)
}

fn poly_multiplicity(ideal: &MonomialIdeal) -> Result<u64> {
    Ok(hs_multiplicity(ideal, &RingSpec::poly(ideal.dim()))?.multiplicity)
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// `sum_k coeff(k) * sum_{|A| = k, A ⊆ cut} l(R/(I + x_A))`.
fn cut_sum(ideal: &MonomialIdeal, cut: &[usize], coeff: impl Fn(usize) -> Q) -> Result<Q> {
    let mut total = Q::zero();
    for k in 0..=cut.len() {
        let c = coeff(k);
        if c.is_zero() {
            continue;
        }
        let mut s = 0i64;
        for a in subsets(cut, k) {
            s += cut_colength(ideal, &a)?;
        }
        total += c * q(s);
    }
    Ok(total)
}

fn need_poly(id: InequalityId, spec: &RingSpec, coords: Option<usize>) -> Result<usize> {
    let RingBase::Poly { d } = spec.base() else {
        return input(format!("{} needs a power series ring", id));
    };
    let n = d + spec.adjoined();
    if let Some(c) = coords {
        if n != c {
            return input(format!("{} needs {} variables, got {}", id, c, n));
        }
    }
    Ok(n)
}

fn need_var(id: InequalityId, var: Option<usize>, n: usize) -> Result<usize> {
    let v = var.unwrap_or(n - 1);
    if v >= n {
        return input(format!("{}: variable index {} out of range", id, v));
    }
    Ok(v)
}

/// Coefficient of the `k`-subset sums in the Stirling-coefficient bound
/// for `d + 1` variables.
pub fn best_lech_coefficient(d: usize, k: usize) -> Result<Q> {
    let s2 = stirling(2, (d + 1) as u32, (d + 1 - k) as u32)?;
    let c = Q::new(
        BigInt::from(factorial(d + 1 - k)) * BigInt::from(s2),
        BigInt::from(binom(d as u64, k as u64)),
    );
    Ok(if k % 2 == 1 { -c } else { c })
}

/// Terms `S1(d+1, d+1-i) * min_{|A| = i} e(I mod x_A)` for `i = 0..=d`,
/// with `A` ranging over subsets of coordinates `1..=d`.
pub fn hsv_terms(ideal: &MonomialIdeal) -> Result<Vec<Q>> {
    let n = ideal.dim();
    if n == 0 {
        return input("HSV_COORD needs at least one variable");
    }
    let d = n - 1;
    let cut: Vec<usize> = (1..n).collect();
    let mut out = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut best: Option<u64> = None;
        for a in subsets(&cut, i) {
            let e = poly_multiplicity(&ideal.restrict_modulo_vars(&a)?)?;
            best = Some(best.map_or(e, |b| b.min(e)));
        }
        let s1 = stirling(1, (d + 1) as u32, (d + 1 - i) as u32)?;
        out.push(Q::from_integer(BigInt::from(s1) * BigInt::from(best.unwrap_or(0))));
    }
    Ok(out)
}

/// Identify the cone index of a polygonal-cone arrangement.
fn cone_index(spec: &RingSpec) -> Option<(bool, usize)> {
    let RingBase::Arrangement { d, .. } = spec.base() else {
        return None;
    };
    let plain = spec.with_adjoined(0);
    if *d >= 3 && RingSpec::elliptic_cone(*d).ok()? == plain {
        return Some((true, *d));
    }
    if *d >= 3 && RingSpec::rational_cone(d - 1).ok()? == plain {
        return Some((false, d - 1));
    }
    None
}

/// Check one inequality on one ideal, or on `ideals = [I, J]` for the
/// mixed entries. `var` selects the distinguished variable where the
/// entry has one (default: last coordinate; `OPTIMAL_3D` uses it as the
/// uncut base variable and defaults to the first).
pub fn verify(id: InequalityId, spec: &RingSpec, ideals: &[MonomialIdeal], var: Option<usize>) -> Result<VerificationReport> {
    let names = spec.names();
    let want = if id.takes_pair() { 2 } else { 1 };
    if id == InequalityId::DilutedIeSets {
        return input("DILUTED_IE_SETS takes a set system, not ideals");
    }
    if ideals.len() != want {
        return input(format!("{} takes {} ideal(s), got {}", id, want, ideals.len()));
    }
    for i in ideals {
        spec.check_ideal(i)?;
    }
    let inputs: Vec<String> = ideals.iter().map(|i| i.format_with(&names)).collect();
    let ideal = &ideals[0];
    if spec.is_poly() && (!ideal.is_finite_colength() || ideal.is_unit()) {
        return input(format!("{} needs a proper ideal of finite colength", id));
    }
    let report = |lhs: Q, rhs: Q, strict: bool| Ok(VerificationReport::new(id, spec, inputs.clone(), lhs, rhs, strict));
    match id {
        InequalityId::Lech => {
            let l = ring_colength(ideal, spec)?;
            if l == 0 {
                return input("LECH needs a proper ideal");
            }
            let e = ring_multiplicity(ideal, spec)?;
            let er = ring_multiplicity(&spec.maximal_ideal(), spec)?;
            report(q(e as i64), q((factorial(spec.dim()) * er * l) as i64), false)
        }
        InequalityId::Mumford2d => {
            need_poly(id, spec, Some(2))?;
            let v = need_var(id, var, 2)?;
            let e = poly_multiplicity(ideal)?;
            let rhs = 2 * ideal.colength()? as i64 - cut_colength(ideal, &[v])?;
            report(q(e as i64), q(rhs), false)
        }
        InequalityId::Optimal3d => {
            need_poly(id, spec, Some(3))?;
            let base = var.unwrap_or(0);
            if base >= 3 {
                return input("OPTIMAL_3D: variable index out of range");
            }
            let cut: Vec<usize> = (0..3).filter(|&i| i != base).collect();
            let e = poly_multiplicity(ideal)?;
            let rhs = cut_sum(ideal, &cut, |k| [q(6), q(-3), q(1)][k].clone())?;
            report(q(e as i64), rhs, false)
        }
        InequalityId::Skew3d => {
            need_poly(id, spec, Some(3))?;
            let v = need_var(id, var, 3)?;
            let e = poly_multiplicity(ideal)?;
            let rhs = frac(15, 2) * q(ideal.colength()? as i64) - q(5 * cut_colength(ideal, &[v])?);
            report(q(e as i64), rhs, false)
        }
        InequalityId::Mixed2dA | InequalityId::Mixed2dB => {
            need_poly(id, spec, Some(2))?;
            let (i, j) = (&ideals[0], &ideals[1]);
            if !j.is_finite_colength() || j.is_unit() {
                return input(format!("{} needs proper ideals of finite colength", id));
            }
            if !i.gens().iter().all(|g| j.contains(g)) {
                return input(format!("{} needs I ⊆ J", id));
            }
            let mixed = mixed_multiplicity_2d(i, j)?.value;
            let (li, lj) = (i.colength()? as i64, j.colength()? as i64);
            let rhs = if id == InequalityId::Mixed2dA {
                let v = need_var(id, var, 2)?;
                q(li + lj - cut_colength(i, &[v])?)
            } else {
                frac(li, 2) + q(3 * lj)
            };
            report(q(mixed as i64), rhs, false)
        }
        InequalityId::InclExclDiluted | InequalityId::WeakInclExcl => {
            let n = need_poly(id, spec, None)?;
            let cut: Vec<usize> = (1..n).collect();
            let e = poly_multiplicity(ideal)?;
            let inner = if id == InequalityId::InclExclDiluted {
                cut_sum(ideal, &cut, |k| {
                    let c = frac(1, 1 << k);
                    if k % 2 == 1 { -c } else { c }
                })?
            } else {
                cut_sum(ideal, &cut, |k| {
                    let c = frac(1, k as i64 + 1);
                    if k % 2 == 1 { -c } else { c }
                })?
            };
            report(q(e as i64), q(factorial(n) as i64) * inner, n >= 3)
        }
        InequalityId::BestLechConj => {
            let n = need_poly(id, spec, None)?;
            let d = n - 1;
            let cut: Vec<usize> = (1..n).collect();
            let coeffs: Vec<Q> = (0..=d).map(|k| best_lech_coefficient(d, k)).collect::<Result<_>>()?;
            let e = poly_multiplicity(ideal)?;
            let rhs = cut_sum(ideal, &cut, |k| coeffs[k].clone())?;
            report(q(e as i64), rhs, false)
        }
        InequalityId::HsvCoord => {
            let n = need_poly(id, spec, None)?;
            let terms = hsv_terms(ideal)?;
            let lhs = terms.iter().fold(Q::zero(), |a, t| a + t);
            let mut r = VerificationReport::new(
                id,
                spec,
                inputs.clone(),
                lhs,
                q((factorial(n) * ideal.colength()?) as i64),
                false,
            );
            r.chain = Some(terms);
            Ok(r)
        }
        InequalityId::SncSemistable | InequalityId::ConeSemistable => {
            let RingBase::Arrangement { d, primes } = spec.base() else {
                return input(format!("{} needs an arrangement ring", id));
            };
            let strict = if id == InequalityId::SncSemistable {
                if !primes.iter().all(|p| p.len() == 1) || primes.len() != *d {
                    return input("SNC_SEMISTABLE needs a simple normal crossing arrangement");
                }
                *d >= 3
            } else {
                match cone_index(spec) {
                    Some((_, n)) => (3..=5).contains(&n),
                    None => return input("CONE_SEMISTABLE needs an elliptic or rational polygonal cone"),
                }
            };
            if spec.adjoined() == 0 {
                return input(format!("{} needs at least one adjoined variable", id));
            }
            let l = ring_colength(ideal, spec)?;
            if l == 0 {
                return input(format!("{} needs a proper ideal", id));
            }
            let e = ring_multiplicity(ideal, spec)?;
            report(q(e as i64), q((factorial(spec.dim()) * l) as i64), strict)
        }
        InequalityId::DilutedIeSets => unreachable!(),
    }
}

/// The diluted inclusion-exclusion chain for subsets of a finite set
/// whose union is the whole set. `chain = [|S|, A, B, |S|/2]`.
pub fn verify_sets(sets: &[Vec<u32>]) -> Result<VerificationReport> {
    if sets.is_empty() || sets.len() > 20 {
        return input("DILUTED_IE_SETS needs between 1 and 20 subsets");
    }
    let mut universe: Vec<u32> = sets.iter().flatten().copied().collect();
    universe.sort_unstable();
    universe.dedup();
    if universe.is_empty() {
        return input("DILUTED_IE_SETS needs a nonempty union");
    }
    let masks: Vec<Vec<bool>> = sets.iter().map(|s| universe.iter().map(|u| s.contains(u)).collect()).collect();
    let mut a = Q::zero();
    let mut b = Q::zero();
    for sub in 1u32..(1 << sets.len()) {
        let k = sub.count_ones() as i64;
        let size = (0..universe.len())
            .filter(|&u| (0..sets.len()).all(|j| sub >> j & 1 == 0 || masks[j][u]))
            .count() as i64;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        a += frac(sign * size, 1 << k);
        b += frac(sign * size, k + 1);
    }
    let s = q(universe.len() as i64);
    let half = &s / q(2);
    let holds = s > a && a >= b && b >= half;
    let text: Vec<String> = sets
        .iter()
        .map(|x| format!("{{{}}}", x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    Ok(VerificationReport {
        id: InequalityId::DilutedIeSets,
        ring: String::new(),
        inputs: text,
        slack: &s - &a,
        equality: a == s,
        holds,
        lhs: a.clone(),
        rhs: s.clone(),
        expect_strict: true,
        chain: Some(vec![s, a, b, half]),
    })
}

/// Random covering set systems: `|S| <= max_size`, at most `max_sets`
/// subsets.
pub fn random_set_system(rng: &mut XorShift, max_size: u32, max_sets: usize) -> Vec<Vec<u32>> {
    let n = rng.range(1, max_size as u64) as u32;
    let k = rng.range(1, max_sets as u64) as usize;
    let mut sets = vec![Vec::new(); k];
    for x in 0..n {
        // Every element lands in at least one set.
        let home = rng.range(0, k as u64 - 1) as usize;
        for (j, s) in sets.iter_mut().enumerate() {
            if j == home || rng.chance(1, 2) {
                s.push(x);
            }
        }
    }
    sets
}

#[derive(Clone, Debug, Serialize)]
pub struct HuntReport {
    pub id: InequalityId,
    pub ring: String,
    pub budget: u64,
    pub checked: u64,
    pub exhaustive: bool,
    /// First input (in enumeration order) violating the entry's claim.
    pub failure: Option<VerificationReport>,
    pub equality_cases: Vec<Vec<String>>,
}

const MAX_EQUALITY_CASES: usize = 64;

/// Check an entry over every ideal up to the colength budget (all
/// monomial ideals; closed ones for the mixed entries, as pairs `I ⊆ J`).
pub fn search_counterexample(id: InequalityId, spec: &RingSpec, budget: u64) -> Result<HuntReport> {
    if id == InequalityId::DilutedIeSets {
        return input("DILUTED_IE_SETS is checked on random set systems, not by colength");
    }
    let opts = EnumerateOptions { max_colength: budget, all_ideals: !id.takes_pair(), visit_cap: DEFAULT_VISIT_CAP };
    let en = enumerate_ideals(spec, &opts)?;
    let cases: Vec<Vec<MonomialIdeal>> = if id.takes_pair() {
        let ideals: Vec<&MonomialIdeal> = en.ideals.iter().map(|(i, _)| i).collect();
        let mut out = Vec::new();
        for i in &ideals {
            for j in &ideals {
                if i.gens().iter().all(|g| j.contains(g)) {
                    out.push(vec![(*i).clone(), (*j).clone()]);
                }
            }
        }
        out
    } else {
        en.ideals.into_iter().map(|(i, _)| vec![i]).collect()
    };
    let reports: Vec<VerificationReport> =
        cases.par_iter().map(|c| verify(id, spec, c, None)).collect::<Result<_>>()?;
    let failure = reports.iter().find(|r| !r.ok()).cloned();
    let equality_cases = reports
        .iter()
        .filter(|r| r.equality)
        .take(MAX_EQUALITY_CASES)
        .map(|r| r.inputs.clone())
        .collect();
    Ok(HuntReport {
        id,
        ring: spec.to_string(),
        budget,
        checked: reports.len() as u64,
        exhaustive: en.exhaustive,
        failure,
        equality_cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_values() {
        assert_eq!(stirling(2, 4, 2).unwrap(), 7);
        assert_eq!(stirling(2, 3, 2).unwrap(), 3);
        assert_eq!(stirling(1, 4, 2).unwrap(), 11);
        assert_eq!(stirling(1, 4, 3).unwrap(), 6);
        for n in 0..10 {
            assert_eq!(stirling(1, n, n).unwrap(), 1);
            assert_eq!(stirling(2, n, n).unwrap(), 1);
        }
        let s2: Vec<u128> = (1..=4).map(|k| stirling(2, 4, k).unwrap()).collect();
        assert_eq!(s2, vec![1, 7, 6, 1]);
        assert!(stirling(1, 2, 3).is_err());
    }

    #[test]
    fn best_lech_coefficients_in_four_variables() {
        let c: Vec<Q> = (0..=3).map(|k| best_lech_coefficient(3, k).unwrap()).collect();
        assert_eq!(c, vec![q(24), q(-12), frac(14, 3), q(-1)]);
        let c2: Vec<Q> = (0..=2).map(|k| best_lech_coefficient(2, k).unwrap()).collect();
        assert_eq!(c2, vec![q(6), q(-3), q(1)]);
    }

    #[test]
    fn registry_examples() {
        let p3 = RingSpec::poly(3);
        let m3 = MonomialIdeal::maximal(3).power(3);
        let r = verify(InequalityId::Optimal3d, &p3, &[m3], None).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (q(27), q(27)));
        assert!(r.equality);
        let p2 = RingSpec::poly(2);
        let r = verify(InequalityId::Mumford2d, &p2, &[MonomialIdeal::maximal(2).power(2)], None).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (q(4), q(4)));
        let p4 = RingSpec::poly(4);
        let r = verify(InequalityId::BestLechConj, &p4, &[MonomialIdeal::maximal(4)], None).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (q(1), q(1)));
        assert!(verify(InequalityId::Mumford2d, &p3, &[MonomialIdeal::maximal(3)], None).is_err());
    }

    #[test]
    fn names_round_trip() {
        for id in InequalityId::ALL {
            assert_eq!(id.name().parse::<InequalityId>().unwrap(), id);
        }
        assert_eq!("mixed-2d-a".parse::<InequalityId>().unwrap(), InequalityId::Mixed2dA);
        assert_eq!("optimal3d".parse::<InequalityId>().unwrap(), InequalityId::Optimal3d);
    }

    #[test]
    fn set_chain_on_a_small_system() {
        let r = verify_sets(&[vec![1, 2], vec![2, 3]]).unwrap();
        let chain = r.chain.unwrap();
        // Two elements lie in one set and one in both.
        assert_eq!(chain, vec![q(3), frac(7, 4), frac(5, 3), frac(3, 2)]);
        assert!(r.holds);
    }
}
