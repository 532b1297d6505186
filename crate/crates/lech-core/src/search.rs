//! Breadth-first enumeration of finite-colength monomial ideals of a ring
//! model by their staircases, and the Lech–Mumford ratio search built on it.

use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{input, LechError, Result};
use crate::monomial::{Exponent, MonomialIdeal};
use crate::multiplicity::hs_multiplicity;
use crate::rings::{ring_colength, ring_multiplicity, RingBase, RingSpec};

/// Default cap on the number of staircases visited.
pub const DEFAULT_VISIT_CAP: u64 = 5_000_000;

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub max_colength: u64,
    /// Keep every ideal, not only the integrally closed ones. In the cusp
    /// ring this means every contracted ideal.
    pub all_ideals: bool,
    pub visit_cap: u64,
}

impl EnumerateOptions {
    pub fn closed(max_colength: u64) -> Self {
        EnumerateOptions { max_colength, all_ideals: false, visit_cap: DEFAULT_VISIT_CAP }
    }

    pub fn all(max_colength: u64) -> Self {
        EnumerateOptions { max_colength, all_ideals: true, visit_cap: DEFAULT_VISIT_CAP }
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Ideals with their ring colength, by colength and then staircase.
    pub ideals: Vec<(MonomialIdeal, u64)>,
    pub visited: u64,
    pub exhaustive: bool,
}

/// Staircases are sorted lists of the ring monomials outside the ideal.
type Staircase = Vec<Exponent>;

fn below(spec: &RingSpec, c: &[u32], i: usize) -> Exponent {
    let mut w = c.to_vec();
    w[i] -= 1;
    if !spec.is_standard(&w) {
        // Only the cusp coordinate can land on a non-ring exponent.
        w[i] -= 1;
    }
    w
}

/// Minimal ring monomials outside the staircase.
fn corners(spec: &RingSpec, stair: &Staircase) -> Vec<Exponent> {
    let n = spec.coords();
    let member = |v: &[u32]| stair.binary_search_by(|s| s.as_slice().cmp(v)).is_ok();
    let mut cands = BTreeSet::new();
    for q in stair {
        for i in 0..n {
            let mut c = q.clone();
            c[i] += 1;
            if !spec.is_standard(&c) {
                c[i] += 1;
            }
            if spec.is_standard(&c) && !member(&c) {
                cands.insert(c);
            }
        }
    }
    cands
        .into_iter()
        .filter(|c| (0..n).filter(|&i| c[i] > 0).all(|i| member(&below(spec, c, i))))
        .collect()
}

fn ideal_of(spec: &RingSpec, stair: &Staircase) -> MonomialIdeal {
    MonomialIdeal::new(corners(spec, stair), spec.coords()).expect("corners have ring dimension")
}

fn closed(spec: &RingSpec, ideal: &MonomialIdeal, stair: &Staircase) -> Result<bool> {
    let test = spec.closure_test(ideal)?;
    Ok(stair.iter().all(|v| !test.contains(v)))
}

/// Walk staircases level by level, handing each level's ideals to `visit`
/// in deterministic order. Returns the visit count and exhaustiveness.
fn walk<F>(spec: &RingSpec, opts: &EnumerateOptions, mut visit: F) -> Result<(u64, bool)>
where
    F: FnMut(Vec<(MonomialIdeal, u64)>) -> Result<bool>,
{
    if opts.max_colength == 0 {
        return input("colength budget must be at least 1");
    }
    if spec.coords() == 0 {
        return input("ring has no coordinates");
    }
    let mut level: Vec<Staircase> = vec![vec![vec![0; spec.coords()]]];
    let mut visited = 0u64;
    for size in 1..=opts.max_colength {
        if visited + level.len() as u64 > opts.visit_cap {
            return Ok((visited, false));
        }
        visited += level.len() as u64;
        let found: Vec<Option<(MonomialIdeal, u64)>> = level
            .par_iter()
            .map(|stair| {
                let ideal = ideal_of(spec, stair);
                if opts.all_ideals || closed(spec, &ideal, stair)? {
                    Ok(Some((ideal, size)))
                } else {
                    Ok(None)
                }
            })
            .collect::<Result<_>>()?;
        if !visit(found.into_iter().flatten().collect())? {
            return Ok((visited, false));
        }
        if size == opts.max_colength {
            break;
        }
        let children: Vec<Vec<Staircase>> = level
            .par_iter()
            .map(|stair| {
                corners(spec, stair)
                    .into_iter()
                    .map(|c| {
                        let mut s = stair.clone();
                        let pos = s.binary_search(&c).unwrap_err();
                        s.insert(pos, c);
                        s
                    })
                    .collect()
            })
            .collect();
        let next: BTreeSet<Staircase> = children.into_iter().flatten().collect();
        level = next.into_iter().collect();
    }
    Ok((visited, true))
}

/// Integrally closed (or, with `all_ideals`, all) monomial ideals of the
/// ring with colength at most the budget.
pub fn enumerate_ideals(spec: &RingSpec, opts: &EnumerateOptions) -> Result<Enumeration> {
    let mut ideals = Vec::new();
    let (visited, exhaustive) = walk(spec, opts, |batch| {
        ideals.extend(batch);
        Ok(true)
    })?;
    Ok(Enumeration { ideals, visited, exhaustive })
}

pub fn enumerate_closed_ideals(spec: &RingSpec, max_colength: u64) -> Result<Enumeration> {
    enumerate_ideals(spec, &EnumerateOptions::closed(max_colength))
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `e(I) / (dim! l(R/I))`.
pub fn lm_ratio(ideal: &MonomialIdeal, spec: &RingSpec) -> Result<BigRational> {
    let l = ring_colength(ideal, spec)?;
    if l == 0 {
        return input("the unit ideal has no Lech–Mumford ratio");
    }
    let e = ring_multiplicity(ideal, spec)?;
    Ok(ratio(e, l, spec.dim()))
}

fn ratio(e: u64, l: u64, dim: usize) -> BigRational {
    BigRational::new(BigInt::from(e), BigInt::from(l) * BigInt::from(factorial(dim)))
}

/// Multiplicities with memoized component restrictions; arrangement
/// searches see the same restricted ideals over and over.
struct MultCache {
    memo: Mutex<HashMap<MonomialIdeal, u64>>,
}

impl MultCache {
    fn new() -> Self {
        MultCache { memo: Mutex::new(HashMap::new()) }
    }

    fn poly(&self, ideal: MonomialIdeal) -> Result<u64> {
        if let Some(&e) = self.memo.lock().unwrap().get(&ideal) {
            return Ok(e);
        }
        let e = if ideal.dim() == 0 {
            u64::from(!ideal.is_unit())
        } else {
            hs_multiplicity(&ideal, &RingSpec::poly(ideal.dim()))?.multiplicity
        };
        self.memo.lock().unwrap().insert(ideal, e);
        Ok(e)
    }

    fn multiplicity(&self, ideal: &MonomialIdeal, spec: &RingSpec) -> Result<u64> {
        match spec.base() {
            RingBase::Poly { .. } => self.poly(ideal.clone()),
            RingBase::Arrangement { .. } => {
                let mut e = 0;
                for p in spec.top_primes() {
                    e += self.poly(ideal.restrict_modulo_vars(&p)?)?;
                }
                Ok(e)
            }
            RingBase::Cusp { .. } => ring_multiplicity(ideal, spec),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub ideal: MonomialIdeal,
    pub text: String,
    pub colength: u64,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub ring: String,
    #[serde(serialize_with = "crate::qser::q")]
    pub best_ratio: BigRational,
    pub witness: Witness,
    /// Every visited ideal attaining the best ratio, by colength.
    pub attaining: Vec<Witness>,
    pub budget: u64,
    pub ideals_visited: u64,
    pub ideals_scored: u64,
    pub exhaustive: bool,
    #[serde(serialize_with = "crate::qser::opt")]
    pub ceiling: Option<BigRational>,
    pub ceiling_violated: Option<Witness>,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    pub ceiling: Option<BigRational>,
    pub all_ideals: bool,
    pub visit_cap: u64,
}

impl SearchOptions {
    pub fn new(budget: u64) -> Self {
        SearchOptions { budget, ceiling: None, all_ideals: false, visit_cap: DEFAULT_VISIT_CAP }
    }

    pub fn ceiling(mut self, c: BigRational) -> Self {
        self.ceiling = Some(c);
        self
    }
}

const MAX_ATTAINING: usize = 256;

/// Maximize the Lech–Mumford ratio over the enumerated ideals.
pub fn lm_search(spec: &RingSpec, opts: &SearchOptions) -> Result<SearchReport> {
    if spec.dim() == 0 {
        return input("the ring has dimension zero");
    }
    let eopts = EnumerateOptions { max_colength: opts.budget, all_ideals: opts.all_ideals, visit_cap: opts.visit_cap };
    let cache = MultCache::new();
    let names = spec.names();
    let dim = spec.dim();
    let mut best: Option<(BigRational, Witness)> = None;
    let mut attaining: Vec<Witness> = Vec::new();
    let mut violated: Option<Witness> = None;
    let mut scored = 0u64;
    let mut resource_hit = false;
    let (visited, exhaustive) = walk(spec, &eopts, |batch| {
        let scores: Vec<Result<u64>> = batch.par_iter().map(|(i, _)| cache.multiplicity(i, spec)).collect();
        for ((ideal, l), e) in batch.into_iter().zip(scores) {
            let e = match e {
                Ok(e) => e,
                Err(LechError::Resource(_)) | Err(LechError::Unstable { .. }) => {
                    resource_hit = true;
                    continue;
                }
                Err(err) => return Err(err),
            };
            scored += 1;
            let r = ratio(e, l, dim);
            let w = Witness { text: spec.canonical(&ideal)?.format_with(&names), ideal, colength: l, multiplicity: e };
            if violated.is_none() && opts.ceiling.as_ref().is_some_and(|c| r > *c) {
                violated = Some(w.clone());
            }
            match &best {
                Some((b, bw)) if r < *b || (r == *b && w.ideal >= bw.ideal) => {
                    if r == *b && attaining.len() < MAX_ATTAINING {
                        attaining.push(w);
                    }
                }
                Some((b, _)) if r == *b => {
                    if attaining.len() < MAX_ATTAINING {
                        attaining.push(w.clone());
                    }
                    best = Some((r, w));
                }
                _ => {
                    attaining = vec![w.clone()];
                    best = Some((r, w));
                }
            }
        }
        Ok(true)
    })?;
    let Some((best_ratio, witness)) = best else {
        return Err(LechError::Resource("no ideal could be scored within the budget".into()));
    };
    attaining.sort_by(|a, b| (a.colength, &a.ideal).cmp(&(b.colength, &b.ideal)));
    Ok(SearchReport {
        ring: spec.to_string(),
        best_ratio,
        witness,
        attaining,
        budget: opts.budget,
        ideals_visited: visited,
        ideals_scored: scored,
        exhaustive: exhaustive && !resource_hit,
        ceiling: opts.ceiling.clone(),
        ceiling_violated: violated,
    })
}
