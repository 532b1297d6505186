//! Monomial ideals stored as canonical antichains of exponent vectors.
//!
//! Generators are kept minimal under componentwise order and sorted in
//! descending lexicographic order, so `x^2, x*y, y^3` is the canonical
//! listing of that ideal and two ideals are equal iff their listings are.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{input, LechError, Result};
use crate::parse;

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

/// Largest staircase row box the colength routines will allocate.
pub const MAX_BOX: u64 = 50_000_000;

/// `a` divides `b` as monomials.
#[inline]
pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// A monomial ideal in `dim` variables, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<Exponent>,
}

/// Keep the minimal elements of `gens` and sort them canonically.
pub fn minimalize(mut gens: Vec<Exponent>) -> Vec<Exponent> {
    gens.sort_unstable();
    gens.dedup();
    gens.sort_by_cached_key(|g| (g.iter().map(|&e| e as u64).sum::<u64>(), g.clone()));
    let mut kept: Vec<Exponent> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| divides(k, &g)) {
            kept.push(g);
        }
    }
    kept.sort_unstable_by(|a, b| b.cmp(a));
    kept
}

/// Build the canonical ideal generated by `gens` in `dim` variables.
pub fn canonicalize(gens: Vec<Exponent>, dim: usize) -> Result<MonomialIdeal> {
    if let Some(bad) = gens.iter().find(|g| g.len() != dim) {
        return input(format!(
            "generator {:?} has length {} but the ambient dimension is {}",
            bad,
            bad.len(),
            dim
        ));
    }
    Ok(MonomialIdeal { dim, gens: minimalize(gens) })
}

impl MonomialIdeal {
    /// Wrap generators already known to be a canonical antichain.
    pub(crate) fn from_canonical(dim: usize, gens: Vec<Exponent>) -> Self {
        debug_assert!(gens.iter().all(|g| g.len() == dim));
        MonomialIdeal { dim, gens }
    }

    pub fn new(gens: Vec<Exponent>, dim: usize) -> Result<Self> {
        canonicalize(gens, dim)
    }

    pub fn unit(dim: usize) -> Self {
        MonomialIdeal { dim, gens: vec![vec![0; dim]] }
    }

    pub fn zero(dim: usize) -> Self {
        MonomialIdeal { dim, gens: Vec::new() }
    }

    /// The maximal ideal `(x_1, ..., x_d)`.
    pub fn maximal(dim: usize) -> Self {
        let gens = (0..dim)
            .map(|i| {
                let mut g = vec![0; dim];
                g[i] = 1;
                g
            })
            .collect();
        MonomialIdeal { dim, gens: minimalize(gens) }
    }

    /// The ideal generated by pure powers `x_i^{a_i}`.
    pub fn parameter(exps: &[u32]) -> Self {
        let dim = exps.len();
        let gens = exps
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut g = vec![0; dim];
                g[i] = a;
                g
            })
            .collect();
        MonomialIdeal { dim, gens: minimalize(gens) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Exponent] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].iter().all(|&e| e == 0)
    }

    /// Monomial membership.
    pub fn contains(&self, v: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, v))
    }

    /// Smallest `a` with `x_i^a` in the ideal, if any.
    pub fn pure_power(&self, i: usize) -> Option<u32> {
        self.gens
            .iter()
            .filter(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
            .map(|g| g[i])
            .min()
    }

    pub fn is_finite_colength(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        (0..self.dim).all(|i| self.pure_power(i).is_some())
    }

    /// Per-coordinate maxima of the generators.
    pub fn maxima(&self) -> Vec<u32> {
        let mut m = vec![0; self.dim];
        for g in &self.gens {
            for (a, &e) in m.iter_mut().zip(g) {
                *a = (*a).max(e);
            }
        }
        m
    }

    /// Number of monomials outside the ideal.
    pub fn colength(&self) -> Result<u64> {
        if !self.is_finite_colength() {
            return Err(LechError::InfiniteColength(self.to_string()));
        }
        if self.dim == 0 {
            return Ok(if self.is_unit() { 0 } else { 1 });
        }
        if self.is_unit() {
            return Ok(0);
        }
        let bounds: Vec<u32> = (0..self.dim).map(|i| self.pure_power(i).unwrap()).collect();
        if self.dim == 1 {
            return Ok(bounds[0] as u64);
        }
        count_rows(&self.gens, &bounds)
    }

    fn check_dim(&self, other: &MonomialIdeal) -> Result<()> {
        if self.dim != other.dim {
            return input(format!("dimension mismatch: {} vs {}", self.dim, other.dim));
        }
        Ok(())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(MonomialIdeal { dim: self.dim, gens: minimalize(gens) })
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other)?;
        let mut set: HashSet<Exponent> = HashSet::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                set.insert(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Ok(MonomialIdeal { dim: self.dim, gens: minimalize(set.into_iter().collect()) })
    }

    /// `I^n`; `I^0` is the unit ideal.
    pub fn power(&self, n: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.dim);
        for _ in 0..n {
            acc = acc.product(self).expect("same dimension");
        }
        acc
    }

    /// Image of the ideal modulo the coordinate variables in `vars`,
    /// as an ideal in the remaining coordinates.
    pub fn restrict_modulo_vars(&self, vars: &[usize]) -> Result<MonomialIdeal> {
        if let Some(&bad) = vars.iter().find(|&&i| i >= self.dim) {
            return input(format!("coordinate {} out of range for dimension {}", bad, self.dim));
        }
        let mut killed = vec![false; self.dim];
        for &i in vars {
            killed[i] = true;
        }
        let keep: Vec<usize> = (0..self.dim).filter(|&i| !killed[i]).collect();
        let gens = self
            .gens
            .iter()
            .filter(|g| vars.iter().all(|&i| g[i] == 0))
            .map(|g| keep.iter().map(|&i| g[i]).collect())
            .collect();
        Ok(MonomialIdeal { dim: keep.len(), gens: minimalize(gens) })
    }

    /// The ideal `I + (x_i : i in vars)` in the same coordinates.
    pub fn add_vars(&self, vars: &[usize]) -> Result<MonomialIdeal> {
        let mut gens = self.gens.clone();
        for &i in vars {
            if i >= self.dim {
                return input(format!("coordinate {} out of range for dimension {}", i, self.dim));
            }
            let mut g = vec![0; self.dim];
            g[i] = 1;
            gens.push(g);
        }
        Ok(MonomialIdeal { dim: self.dim, gens: minimalize(gens) })
    }

    /// Colon ideal `(I : x_i^k)`.
    pub fn colon_var(&self, i: usize, k: u32) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut h = g.clone();
                h[i] = h[i].saturating_sub(k);
                h
            })
            .collect();
        MonomialIdeal { dim: self.dim, gens: minimalize(gens) }
    }

    /// Append `extra` coordinates on which every generator has exponent zero.
    pub fn extend(&self, extra: usize) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut h = g.clone();
                h.resize(self.dim + extra, 0);
                h
            })
            .collect();
        MonomialIdeal { dim: self.dim + extra, gens }
    }

    /// Multiply every generator by the monomial `shift`.
    pub fn shifted(&self, shift: &[u32]) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| g.iter().zip(shift).map(|(a, b)| a + b).collect())
            .collect();
        MonomialIdeal { dim: self.dim, gens }
    }

    /// Slice at `x_i = k`: monomials `u` in the other coordinates with
    /// `u * x_i^k` in the ideal.
    pub fn slice(&self, i: usize, k: u32) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .filter(|g| g[i] <= k)
            .map(|g| g.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect())
            .collect();
        MonomialIdeal { dim: self.dim - 1, gens: minimalize(gens) }
    }

    pub fn format_with(&self, names: &[String]) -> String {
        parse::format_ideal(self, names)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::format_ideal(self, &parse::default_names(self.dim)))
    }
}

/// Colength by staircase rows: for each point of the box over all
/// coordinates but the longest, the number of monomials outside the ideal
/// in that row is the least last-coordinate exponent among generators
/// dividing the row; that minimum propagates along the box by a prefix-min
/// sweep. `bounds[i]` is the pure-power exponent of coordinate `i`.
pub(crate) fn count_rows(gens: &[Exponent], bounds: &[u32]) -> Result<u64> {
    let d = bounds.len();
    let long = (0..d).max_by_key(|&i| (bounds[i], i)).unwrap();
    let others: Vec<usize> = (0..d).filter(|&i| i != long).collect();
    let mut size: u64 = 1;
    for &i in &others {
        size = size.saturating_mul(bounds[i] as u64);
    }
    if size > MAX_BOX {
        return Err(LechError::Resource(format!("staircase box of {} rows", size)));
    }
    let size = size as usize;
    let mut strides = vec![0usize; others.len()];
    let mut s = 1usize;
    for k in (0..others.len()).rev() {
        strides[k] = s;
        s *= bounds[others[k]] as usize;
    }
    let mut f = vec![u32::MAX; size];
    for g in gens {
        if others.iter().all(|&i| g[i] < bounds[i]) {
            let idx: usize = others.iter().zip(&strides).map(|(&i, &st)| g[i] as usize * st).sum();
            f[idx] = f[idx].min(g[long]);
        }
    }
    let mut coord = vec![0u32; others.len()];
    let mut total: u64 = 0;
    for idx in 0..size {
        let mut best = f[idx];
        for k in 0..others.len() {
            if coord[k] > 0 {
                best = best.min(f[idx - strides[k]]);
            }
        }
        f[idx] = best;
        total += best as u64;
        for k in (0..others.len()).rev() {
            coord[k] += 1;
            if coord[k] < bounds[others[k]] {
                break;
            }
            coord[k] = 0;
        }
    }
    Ok(total)
}
