//! Hilbert-Samuel and mixed multiplicities from power colengths.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{input, LechError, Result};
use crate::monomial::{Exponent, MonomialIdeal};
use crate::rings::{PowerRep, RingBase, RingSpec};

/// Lengths of `R/I^n` for `n = 1..N` and what they determine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSamuelProfile {
    pub lengths: Vec<u64>,
    pub stabilized: bool,
    pub multiplicity: u64,
    pub e1: i64,
}

/// Stabilization window and power limit for finite-difference fits.
#[derive(Clone, Copy, Debug)]
pub struct FitConfig {
    pub window: usize,
    pub max_power: u32,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig { window: 3, max_power: 40 }
    }
}

fn binom(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// `k`-th forward difference of `seq` at index `at`.
fn forward_difference(seq: &[u64], at: usize, k: usize) -> i128 {
    (0..=k)
        .map(|j| {
            let sign = if (k - j).is_multiple_of(2) { 1 } else { -1 };
            sign * binom(k as u64, j as u64) * seq[at + j] as i128
        })
        .sum()
}

/// Drive `length(n)` for `n = 1, 2, ...` until the `d`-th difference is
/// constant over the window.
pub fn fit_profile<F>(d: usize, cfg: FitConfig, length: F) -> Result<HilbertSamuelProfile>
where
    F: FnMut(u32) -> Result<u64>,
{
    fit_profile_towards(d, cfg, None, length)
}

/// As [`fit_profile`], but a constant window only counts once its value is
/// `target`. Non-normal ideals can hold a wrong constant for several steps.
pub fn fit_profile_towards<F>(d: usize, cfg: FitConfig, target: Option<u64>, mut length: F) -> Result<HilbertSamuelProfile>
where
    F: FnMut(u32) -> Result<u64>,
{
    if d == 0 {
        return input("multiplicity needs a ring of positive dimension");
    }
    let mut lengths: Vec<u64> = Vec::new();
    for n in 1..=cfg.max_power {
        lengths.push(length(n)?);
        if lengths.len() < d + cfg.window {
            continue;
        }
        let first = lengths.len() - d - cfg.window;
        let diffs: Vec<i128> = (first..first + cfg.window).map(|s| forward_difference(&lengths, s, d)).collect();
        let on_target = target.is_none_or(|t| diffs[0] == t as i128);
        if diffs.iter().all(|&x| x == diffs[0]) && diffs[0] >= 0 && on_target {
            let e = diffs[0];
            // Delta^{d-1} p(n) = e (n + d - 1) - e_1 at n = first + 1.
            let n = (first + 1) as i128;
            let e1 = e * (n + d as i128 - 1) - forward_difference(&lengths, first, d - 1);
            return Ok(HilbertSamuelProfile {
                lengths,
                stabilized: true,
                multiplicity: e as u64,
                e1: e1 as i64,
            });
        }
    }
    Err(LechError::Unstable { lengths })
}

/// Twice the area under the Newton boundary of a two-variable ideal.
pub fn covolume_2d_doubled(ideal: &MonomialIdeal) -> Result<u64> {
    if ideal.dim() != 2 || !ideal.is_finite_colength() {
        return input("covolume needs a two-variable m-primary ideal");
    }
    if ideal.is_unit() {
        return Ok(0);
    }
    let mut pts: Vec<(i64, i64)> = ideal.gens().iter().map(|g| (g[0] as i64, g[1] as i64)).collect();
    pts.sort();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            if (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0) <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    Ok(hull.windows(2).map(|w| ((w[1].0 - w[0].0) * (w[0].1 + w[1].1)) as u64).sum())
}

/// `e(I)` in the power series ring. The colength of `closure(I^n)` counts
/// the lattice points of `n` times a union of half-open lattice pyramids over
/// the compact facets, so it is a polynomial of degree `d` from `n = 1` on and
/// `d + 1` values fix it.
pub fn newton_multiplicity(ideal: &MonomialIdeal) -> Result<u64> {
    if !ideal.is_finite_colength() {
        return Err(LechError::InfiniteColength(format!("{} is not primary to the maximal ideal", ideal)));
    }
    let d = ideal.dim();
    if d == 0 || ideal.is_unit() {
        return Ok(0);
    }
    let lengths = (1..=d as u64 + 1)
        .map(|n| ideal.rational_power(n, 1)?.colength())
        .collect::<Result<Vec<u64>>>()?;
    Ok(forward_difference(&lengths, 0, d) as u64)
}

/// Exact `e(I)` through Newton polyhedra: directly in power series rings,
/// through the normalization for the cusp, and over the top components of an
/// arrangement.
pub fn exact_multiplicity(ideal: &MonomialIdeal, spec: &RingSpec) -> Result<u64> {
    spec.check_ideal(ideal)?;
    match spec.base() {
        RingBase::Poly { .. } | RingBase::Cusp { .. } => newton_multiplicity(ideal),
        RingBase::Arrangement { .. } => {
            let mut total = 0;
            for p in spec.top_primes() {
                let restricted = ideal.restrict_modulo_vars(&p)?;
                if restricted.dim() == 0 {
                    total += u64::from(!restricted.is_unit());
                } else {
                    total += newton_multiplicity(&restricted)?;
                }
            }
            Ok(total)
        }
    }
}

/// Hilbert-Samuel profile of `I` in the ring `spec`.
pub fn hs_multiplicity(ideal: &MonomialIdeal, spec: &RingSpec) -> Result<HilbertSamuelProfile> {
    hs_multiplicity_with(ideal, spec, FitConfig::default())
}

pub fn hs_multiplicity_with(ideal: &MonomialIdeal, spec: &RingSpec, cfg: FitConfig) -> Result<HilbertSamuelProfile> {
    spec.check_ideal(ideal)?;
    let d = spec.dim();
    let base = spec.rep(ideal);
    if spec.rep_colength(&base)? == 0 {
        return Ok(HilbertSamuelProfile {
            lengths: vec![0; d + cfg.window],
            stabilized: true,
            multiplicity: 0,
            e1: 0,
        });
    }
    // Falls back to the bare window when the Newton data exceeds its budget.
    let target = exact_multiplicity(ideal, spec).ok();
    let mut power = spec.rep_unit();
    let profile = fit_profile_towards(d, cfg, target, |_| {
        power = spec.rep_mul(&power, &base);
        spec.rep_colength(&power)
    })?;
    if spec.is_poly() && spec.coords() == 2 {
        let twice = covolume_2d_doubled(ideal)?;
        assert_eq!(
            profile.multiplicity, twice,
            "finite-difference multiplicity disagrees with the Newton covolume for {}",
            ideal
        );
    }
    Ok(profile)
}

/// Result of the two-variable length formula for `e(I|J)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mixed2d {
    pub value: u64,
    /// Set when an input was replaced by its integral closure first.
    pub closed_inputs: bool,
}

/// `e(I|J) = l(R/IJ) - l(R/I) - l(R/J)` for integrally closed ideals in two
/// variables; other inputs are closed first.
pub fn mixed_multiplicity_2d(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Mixed2d> {
    if i.dim() != 2 || j.dim() != 2 {
        return input("the two-variable mixed multiplicity formula needs ideals in two variables");
    }
    let ic = i.integral_closure()?;
    let jc = j.integral_closure()?;
    let closed_inputs = ic != *i || jc != *j;
    let prod = ic.product(&jc)?.colength()? as i64;
    let value = prod - ic.colength()? as i64 - jc.colength()? as i64;
    Ok(Mixed2d { value: value as u64, closed_inputs })
}

/// Normalized mixed multiplicities `[e(I^[d]|J^[0]), ..., e(I^[0]|J^[d])]`.
pub fn mixed_multiplicities_general(i: &MonomialIdeal, j: &MonomialIdeal, spec: &RingSpec) -> Result<Vec<u64>> {
    mixed_multiplicities_with(i, j, spec, FitConfig::default())
}

pub fn mixed_multiplicities_with(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    spec: &RingSpec,
    cfg: FitConfig,
) -> Result<Vec<u64>> {
    spec.check_ideal(i)?;
    spec.check_ideal(j)?;
    let d = spec.dim();
    if d == 0 {
        return input("mixed multiplicities need a ring of positive dimension");
    }
    let ends = (exact_multiplicity(i, spec).ok(), exact_multiplicity(j, spec).ok());
    let bi = spec.rep(i);
    let bj = spec.rep(j);
    let mut pow_i: Vec<PowerRep> = vec![spec.rep_unit()];
    let mut pow_j: Vec<PowerRep> = vec![spec.rep_unit()];
    let mut table: HashMap<(u32, u32), u64> = HashMap::new();
    let mut history: Vec<Vec<i128>> = Vec::new();
    for b in 1..=cfg.max_power {
        let top = b + d as u32;
        while pow_i.len() as u32 <= top {
            let next = spec.rep_mul(pow_i.last().unwrap(), &bi);
            pow_i.push(next);
        }
        while pow_j.len() as u32 <= top {
            let next = spec.rep_mul(pow_j.last().unwrap(), &bj);
            pow_j.push(next);
        }
        for n in b..=top {
            for m in b..=top {
                if let std::collections::hash_map::Entry::Vacant(slot) = table.entry((n, m)) {
                    let prod = spec.rep_mul(&pow_i[n as usize], &pow_j[m as usize]);
                    slot.insert(spec.rep_colength(&prod)?);
                }
            }
        }
        let coeffs: Vec<i128> = (0..=d)
            .map(|k| {
                let (di, dj) = (d - k, k);
                let mut s: i128 = 0;
                for p in 0..=di {
                    for q in 0..=dj {
                        let sign = if (di - p + dj - q) % 2 == 0 { 1 } else { -1 };
                        let l = table[&(b + p as u32, b + q as u32)] as i128;
                        s += sign * binom(di as u64, p as u64) * binom(dj as u64, q as u64) * l;
                    }
                }
                s
            })
            .collect();
        history.push(coeffs);
        if history.len() >= cfg.window {
            let tail = &history[history.len() - cfg.window..];
            let on_target = ends.0.is_none_or(|e| tail[0][0] == e as i128) && ends.1.is_none_or(|e| tail[0][d] == e as i128);
            if tail.iter().all(|c| *c == tail[0]) && tail[0].iter().all(|&x| x >= 0) && on_target {
                return Ok(tail[0].iter().map(|&x| x as u64).collect());
            }
        }
    }
    Err(LechError::Resource(format!(
        "bivariate length table did not stabilize within base {}",
        cfg.max_power
    )))
}

/// Outcome of the homogeneous-component multiplicity bound for a chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MumfordReport {
    #[serde(serialize_with = "crate::qser::q")]
    pub bound: BigRational,
    pub exact: u64,
    pub assembled: MonomialIdeal,
    pub holds: bool,
}

/// Bound `sum_k (r_{k+1} - r_k) sum_i e(I_k^[i] | I_{k+1}^[d-i])` for the
/// chain, together with the exact multiplicity of
/// `sum_k I_k T^{r_k} + T^N` in one more variable.
pub fn mumford_43_bound(components: &[MonomialIdeal], breakpoints: &[u32], spec: &RingSpec) -> Result<MumfordReport> {
    if components.len() != breakpoints.len() || components.len() < 2 {
        return input("chain needs matching components and breakpoints, at least two of each");
    }
    if breakpoints[0] != 0 || breakpoints.windows(2).any(|w| w[0] >= w[1]) {
        return input("breakpoints must start at 0 and increase strictly");
    }
    for c in components {
        spec.check_ideal(c)?;
    }
    if !components.last().unwrap().is_unit() {
        return input("the last component of the chain must be the unit ideal");
    }
    for w in components.windows(2) {
        if !w[0].gens().iter().all(|g| w[1].contains(g)) {
            return input(format!("chain is not nested: {} is not contained in {}", w[0], w[1]));
        }
    }
    let mut bound = BigInt::from(0);
    for k in 0..components.len() - 1 {
        let mixed = mixed_multiplicities_general(&components[k], &components[k + 1], spec)?;
        let step = (breakpoints[k + 1] - breakpoints[k]) as u64;
        bound += BigInt::from(step * mixed.iter().sum::<u64>());
    }
    let n = *breakpoints.last().unwrap();
    let coords = spec.coords();
    let mut gens: Vec<Exponent> = Vec::new();
    for (c, &r) in components.iter().zip(breakpoints).take(components.len() - 1) {
        for g in c.gens() {
            let mut h = g.clone();
            h.push(r);
            gens.push(h);
        }
    }
    let mut top = vec![0; coords + 1];
    top[coords] = n;
    gens.push(top);
    let assembled = MonomialIdeal::new(gens, coords + 1)?;
    let exact = crate::rings::ring_multiplicity(&assembled, &spec.with_adjoined(spec.adjoined() + 1))?;
    let bound = BigRational::from_integer(bound);
    let holds = bound >= BigRational::from_integer(BigInt::from(exact));
    Ok(MumfordReport { bound, exact, assembled, holds })
}
