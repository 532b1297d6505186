//! Ambient rings: power series rings, quotients by coordinate-subspace
//! arrangements, and the cusp ring `K[[t^2, t^3, x, ...]]`, each with
//! optional adjoined series variables.
//!
//! Ideals of an arrangement quotient are given by monomial ideals of the
//! ambient ring (the defining ideal is added implicitly). Ideals of the
//! cusp ring are given by monomial ideals `J` of the normalization
//! `K[[t, x, ...]]` and stand for the contraction `J ∩ R`; coordinate 0 is
//! `t` and the monomials of `R` are those whose `t`-exponent is not 1.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{input, LechError, Result};
use crate::monomial::{divides, minimalize, Exponent, MonomialIdeal, MAX_BOX};
use crate::multiplicity::hs_multiplicity;
use crate::newton::ReesData;
use crate::parse::default_names;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RingBase {
    Poly { d: usize },
    Arrangement { d: usize, primes: Vec<Vec<usize>> },
    Cusp { free: usize },
}

/// A ring model together with `adjoined` extra series variables, which
/// are appended as the last coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RingSpec {
    base: RingBase,
    adjoined: usize,
}

fn adjoined_names(r: usize) -> Vec<String> {
    if r <= 3 {
        ["T", "U", "V"][..r].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=r).map(|i| format!("T{}", i)).collect()
    }
}

impl RingSpec {
    pub fn poly(d: usize) -> Self {
        RingSpec { base: RingBase::Poly { d }, adjoined: 0 }
    }

    pub fn cusp(free: usize) -> Self {
        RingSpec { base: RingBase::Cusp { free }, adjoined: 0 }
    }

    /// Quotient of `K[[x_0..x_{d-1}]]` by the intersection of the
    /// coordinate primes generated by each subset in `primes`.
    pub fn arrangement(d: usize, primes: Vec<Vec<usize>>) -> Result<Self> {
        if primes.is_empty() {
            return input("an arrangement needs at least one prime");
        }
        let mut ps: Vec<Vec<usize>> = Vec::new();
        for p in primes {
            let mut p = p;
            p.sort_unstable();
            p.dedup();
            if p.is_empty() || p.iter().any(|&i| i >= d) {
                return input(format!("prime {:?} is not a nonempty subset of the {} coordinates", p, d));
            }
            ps.push(p);
        }
        for (a, p) in ps.iter().enumerate() {
            for q in &ps[a + 1..] {
                if p.iter().all(|i| q.contains(i)) || q.iter().all(|i| p.contains(i)) {
                    return input(format!("primes {:?} and {:?} are comparable", p, q));
                }
            }
        }
        Ok(RingSpec { base: RingBase::Arrangement { d, primes: ps }, adjoined: 0 })
    }

    /// Simple normal crossings `x_1 ... x_d = 0`.
    pub fn snc(d: usize) -> Self {
        Self::arrangement(d, (0..d).map(|i| vec![i]).collect()).expect("valid")
    }

    /// Three coordinate lines in 3-space.
    pub fn three_points() -> Self {
        Self::arrangement(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).expect("valid")
    }

    /// Elliptic polygonal `n`-cone, `n >= 3`: `n` variables and the primes
    /// of `n - 2` cyclically consecutive coordinates.
    pub fn elliptic_cone(n: usize) -> Result<Self> {
        if n < 3 {
            return input("elliptic cones need n >= 3");
        }
        Self::arrangement(n, (0..n).map(|i| (0..n - 2).map(|j| (i + j) % n).collect()).collect())
    }

    /// Rational polygonal `n`-cone, `n >= 2`: `n + 1` variables and `n`
    /// primes of `n - 1` cyclically consecutive coordinates.
    pub fn rational_cone(n: usize) -> Result<Self> {
        if n < 2 {
            return input("rational cones need n >= 2");
        }
        Self::arrangement(n + 1, (0..n).map(|i| (0..n - 1).map(|j| (i + j) % (n + 1)).collect()).collect())
    }

    pub fn with_adjoined(&self, r: usize) -> Self {
        RingSpec { base: self.base.clone(), adjoined: r }
    }

    pub fn base(&self) -> &RingBase {
        &self.base
    }

    pub fn adjoined(&self) -> usize {
        self.adjoined
    }

    pub fn is_poly(&self) -> bool {
        matches!(self.base, RingBase::Poly { .. })
    }

    fn base_coords(&self) -> usize {
        match &self.base {
            RingBase::Poly { d } | RingBase::Arrangement { d, .. } => *d,
            RingBase::Cusp { free } => 1 + free,
        }
    }

    /// Number of ambient coordinates.
    pub fn coords(&self) -> usize {
        self.base_coords() + self.adjoined
    }

    /// Krull dimension.
    pub fn dim(&self) -> usize {
        let base = match &self.base {
            RingBase::Poly { d } => *d,
            RingBase::Arrangement { d, primes } => d - primes.iter().map(|p| p.len()).min().unwrap_or(0),
            RingBase::Cusp { free } => 1 + free,
        };
        base + self.adjoined
    }

    pub fn names(&self) -> Vec<String> {
        let mut names = match &self.base {
            RingBase::Poly { d } | RingBase::Arrangement { d, .. } => default_names(*d),
            RingBase::Cusp { free } => {
                let mut v = vec!["t".to_string()];
                if *free <= 3 {
                    v.extend(default_names(*free));
                } else {
                    v.extend((1..=*free).map(|i| format!("x{}", i)));
                }
                v
            }
        };
        names.extend(adjoined_names(self.adjoined));
        names
    }

    pub fn primes(&self) -> &[Vec<usize>] {
        match &self.base {
            RingBase::Arrangement { primes, .. } => primes,
            _ => &[],
        }
    }

    /// Primes of minimal cardinality (the components of top dimension).
    pub fn top_primes(&self) -> Vec<Vec<usize>> {
        let ps = self.primes();
        let min = ps.iter().map(|p| p.len()).min().unwrap_or(0);
        ps.iter().filter(|p| p.len() == min).cloned().collect()
    }

    pub fn is_equidimensional(&self) -> bool {
        self.top_primes().len() == self.primes().len()
    }

    pub fn check_ideal(&self, ideal: &MonomialIdeal) -> Result<()> {
        if ideal.dim() != self.coords() {
            return input(format!(
                "ideal lives in {} variables but the ring {} has {} coordinates",
                ideal.dim(),
                self,
                self.coords()
            ));
        }
        Ok(())
    }

    /// Whether the monomial `v` is nonzero in the ring (arrangements) or
    /// belongs to the ring at all (cusp).
    pub fn is_standard(&self, v: &[u32]) -> bool {
        match &self.base {
            RingBase::Poly { .. } => true,
            RingBase::Arrangement { primes, .. } => primes.iter().any(|p| p.iter().all(|&i| v[i] == 0)),
            RingBase::Cusp { .. } => v[0] != 1,
        }
    }

    /// Generators of the defining ideal of an arrangement: squarefree
    /// monomials meeting every prime minimally.
    pub fn defining_gens(&self) -> Vec<Exponent> {
        let RingBase::Arrangement { d, primes } = &self.base else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << d) {
            if primes.iter().all(|p| p.iter().any(|&i| mask >> i & 1 == 1)) {
                let mut g = vec![0; self.coords()];
                for (i, e) in g.iter_mut().enumerate().take(*d) {
                    *e = (mask >> i & 1) as u32;
                }
                out.push(g);
            }
        }
        minimalize(out)
    }

    /// Canonical representative of the ring ideal: drops generators that
    /// vanish in an arrangement quotient, and lists the minimal ring
    /// monomials of a cusp ideal.
    pub fn canonical(&self, ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ideal(ideal)?;
        Ok(match &self.base {
            RingBase::Poly { .. } => ideal.clone(),
            RingBase::Arrangement { .. } => {
                let mut gens = ideal.gens().to_vec();
                gens.extend(self.defining_gens());
                let gens = minimalize(gens).into_iter().filter(|g| self.is_standard(g)).collect();
                MonomialIdeal::from_canonical(ideal.dim(), gens)
            }
            RingBase::Cusp { .. } => MonomialIdeal::from_canonical(ideal.dim(), cusp_ring_monomials(ideal)),
        })
    }

    /// The maximal ideal of the ring in canonical form.
    pub fn maximal_ideal(&self) -> MonomialIdeal {
        self.canonical(&MonomialIdeal::maximal(self.coords())).expect("dimensions agree")
    }

    pub(crate) fn rep(&self, ideal: &MonomialIdeal) -> PowerRep {
        match &self.base {
            RingBase::Cusp { .. } => {
                let g = cusp_ring_monomials(ideal);
                let mut gens = g.clone();
                gens.extend(g.iter().filter(|h| h[0] >= 2).map(|h| {
                    let mut k = h.clone();
                    k[0] += 1;
                    k
                }));
                PowerRep::Cusp(cusp_minimalize(gens))
            }
            _ => PowerRep::Ambient(ideal.clone()),
        }
    }

    pub(crate) fn rep_unit(&self) -> PowerRep {
        match &self.base {
            RingBase::Cusp { .. } => PowerRep::Cusp(vec![vec![0; self.coords()]]),
            _ => PowerRep::Ambient(MonomialIdeal::unit(self.coords())),
        }
    }

    pub(crate) fn rep_mul(&self, a: &PowerRep, b: &PowerRep) -> PowerRep {
        match (a, b) {
            (PowerRep::Ambient(x), PowerRep::Ambient(y)) => PowerRep::Ambient(x.product(y).expect("same ring")),
            (PowerRep::Cusp(x), PowerRep::Cusp(y)) => {
                let mut sums = Vec::with_capacity(x.len() * y.len());
                for p in x {
                    for q in y {
                        sums.push(p.iter().zip(q).map(|(u, v)| u + v).collect());
                    }
                }
                PowerRep::Cusp(cusp_minimalize(sums))
            }
            _ => unreachable!("representations come from one ring"),
        }
    }

    pub(crate) fn rep_colength(&self, a: &PowerRep) -> Result<u64> {
        match a {
            PowerRep::Ambient(i) => match &self.base {
                RingBase::Arrangement { .. } => {
                    let mut gens = i.gens().to_vec();
                    gens.extend(self.defining_gens());
                    MonomialIdeal::new(gens, i.dim())?.colength()
                }
                _ => i.colength(),
            },
            PowerRep::Cusp(gens) => cusp_generated_colength(gens, self.coords()),
        }
    }

    /// Membership test for the integral closure of `ideal` in the ring.
    pub fn closure_test(&self, ideal: &MonomialIdeal) -> Result<ClosureTest> {
        self.check_ideal(ideal)?;
        match &self.base {
            RingBase::Poly { .. } => Ok(ClosureTest::Single(ideal.rees_data()?)),
            RingBase::Cusp { .. } => {
                let s = MonomialIdeal::from_canonical(ideal.dim(), cusp_ring_monomials(ideal));
                Ok(ClosureTest::Single(s.rees_data()?))
            }
            RingBase::Arrangement { primes, .. } => {
                let mut comps = Vec::new();
                for p in primes {
                    let keep: Vec<usize> = (0..self.coords()).filter(|i| !p.contains(i)).collect();
                    let restricted = ideal.restrict_modulo_vars(p)?;
                    let part = if restricted.is_unit() {
                        Component::Everything
                    } else if restricted.dim() == 0 {
                        Component::Nothing
                    } else {
                        Component::Polyhedron(restricted.rees_data()?)
                    };
                    comps.push((p.clone(), keep, part));
                }
                Ok(ClosureTest::Components(comps))
            }
        }
    }

    /// Whether the ring ideal is integrally closed in the ring.
    pub fn is_integrally_closed(&self, ideal: &MonomialIdeal) -> Result<bool> {
        let test = self.closure_test(ideal)?;
        Ok(self.outside_points(ideal)?.iter().all(|v| !test.contains(v)))
    }

    /// Ring monomials outside the ring ideal.
    pub fn outside_points(&self, ideal: &MonomialIdeal) -> Result<Vec<Exponent>> {
        self.check_ideal(ideal)?;
        let ambient = match &self.base {
            RingBase::Arrangement { .. } => {
                let mut gens = ideal.gens().to_vec();
                gens.extend(self.defining_gens());
                MonomialIdeal::new(gens, ideal.dim())?
            }
            RingBase::Cusp { .. } => MonomialIdeal::from_canonical(ideal.dim(), cusp_ring_monomials(ideal)),
            RingBase::Poly { .. } => ideal.clone(),
        };
        Ok(complement_points(&ambient)?.into_iter().filter(|v| self.is_standard(v)).collect())
    }
}

/// Powers and products of ring ideals in a form suited to each ring.
#[derive(Clone, Debug)]
pub(crate) enum PowerRep {
    Ambient(MonomialIdeal),
    /// Generators of a cusp-ring ideal as a module over the ring.
    Cusp(Vec<Exponent>),
}

/// One minimal prime's view of a closure test.
#[derive(Clone, Debug)]
pub enum Component {
    Everything,
    Nothing,
    Polyhedron(ReesData),
}

/// Integral-closure membership for monomials of a ring.
#[derive(Clone, Debug)]
pub enum ClosureTest {
    Single(ReesData),
    Components(Vec<(Vec<usize>, Vec<usize>, Component)>),
}

impl ClosureTest {
    /// Whether the monomial `v` lies in the integral closure. Integral
    /// closure in a reduced ring is detected modulo each minimal prime.
    pub fn contains(&self, v: &[u32]) -> bool {
        match self {
            ClosureTest::Single(r) => r.admits(v, 1, 1),
            ClosureTest::Components(comps) => comps.iter().all(|(p, keep, part)| {
                if p.iter().any(|&i| v[i] > 0) {
                    return true;
                }
                match part {
                    Component::Everything => true,
                    Component::Nothing => false,
                    Component::Polyhedron(r) => {
                        let w: Vec<u32> = keep.iter().map(|&i| v[i]).collect();
                        r.admits(&w, 1, 1)
                    }
                }
            }),
        }
    }
}

/// Lattice points outside a finite-colength ideal.
pub fn complement_points(ideal: &MonomialIdeal) -> Result<Vec<Exponent>> {
    if !ideal.is_finite_colength() {
        return Err(LechError::InfiniteColength(ideal.to_string()));
    }
    let d = ideal.dim();
    if ideal.is_unit() {
        return Ok(Vec::new());
    }
    if d == 0 {
        return Ok(vec![Vec::new()]);
    }
    let bounds: Vec<u32> = (0..d).map(|i| ideal.pure_power(i).unwrap()).collect();
    let size: u64 = bounds.iter().map(|&b| b as u64).product();
    if size > MAX_BOX {
        return Err(LechError::Resource(format!("complement box of {} points", size)));
    }
    let mut out = Vec::new();
    let mut v = vec![0u32; d];
    'outer: loop {
        if !ideal.contains(&v) {
            out.push(v.clone());
        }
        for k in (0..d).rev() {
            v[k] += 1;
            if v[k] < bounds[k] {
                continue 'outer;
            }
            v[k] = 0;
        }
        return Ok(out);
    }
}

/// Minimal ring monomials (t-exponent not 1) among the multiples of the
/// generators, under the ambient divisibility order.
fn cusp_ring_monomials(ideal: &MonomialIdeal) -> Vec<Exponent> {
    minimalize(
        ideal
            .gens()
            .iter()
            .map(|g| {
                let mut h = g.clone();
                if h[0] == 1 {
                    h[0] = 2;
                }
                h
            })
            .collect(),
    )
}

/// `a` divides `b` inside the cusp ring: the quotient is a ring monomial.
fn cusp_divides(a: &[u32], b: &[u32]) -> bool {
    divides(a, b) && b[0] - a[0] != 1
}

fn cusp_minimalize(mut gens: Vec<Exponent>) -> Vec<Exponent> {
    gens.sort_unstable();
    gens.dedup();
    gens.sort_by_cached_key(|g| (g.iter().map(|&e| e as u64).sum::<u64>(), g.clone()));
    let mut kept: Vec<Exponent> = Vec::new();
    for g in gens {
        if !kept.iter().any(|k| cusp_divides(k, &g)) {
            kept.push(g);
        }
    }
    kept.sort_unstable_by(|a, b| b.cmp(a));
    kept
}

/// Ring monomials not divisible (inside the cusp ring) by any of `gens`.
fn cusp_generated_colength(gens: &[Exponent], coords: usize) -> Result<u64> {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Ok(0);
    }
    let pure = |i: usize| {
        gens.iter()
            .filter(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
            .map(|g| g[i])
            .min()
    };
    let mut bounds = Vec::with_capacity(coords);
    for i in 0..coords {
        match pure(i) {
            Some(a) => bounds.push(if i == 0 { a + 2 } else { a }),
            None => return Err(LechError::InfiniteColength(format!("cusp ideal missing a power of coordinate {}", i))),
        }
    }
    let size: u64 = bounds.iter().map(|&b| b as u64).product();
    if size > MAX_BOX {
        return Err(LechError::Resource(format!("cusp box of {} points", size)));
    }
    let mut count = 0u64;
    let mut v = vec![0u32; coords];
    'outer: loop {
        if v[0] != 1 && !gens.iter().any(|g| cusp_divides(g, &v)) {
            count += 1;
        }
        for k in (0..coords).rev() {
            v[k] += 1;
            if v[k] < bounds[k] {
                continue 'outer;
            }
            v[k] = 0;
        }
        return Ok(count);
    }
}

/// `l(R/I)` in the ring model.
pub fn ring_colength(ideal: &MonomialIdeal, spec: &RingSpec) -> Result<u64> {
    spec.check_ideal(ideal)?;
    match spec.base() {
        RingBase::Poly { .. } => ideal.colength(),
        RingBase::Arrangement { .. } => spec.rep_colength(&PowerRep::Ambient(ideal.clone())),
        RingBase::Cusp { .. } => {
            let full = ideal.colength()?;
            let slice = ideal.slice(0, 1).colength()?;
            Ok(full - slice)
        }
    }
}

/// Integral closure of a ring ideal, in canonical form.
pub fn ring_integral_closure(ideal: &MonomialIdeal, spec: &RingSpec) -> Result<MonomialIdeal> {
    spec.check_ideal(ideal)?;
    match spec.base() {
        RingBase::Poly { .. } => ideal.integral_closure(),
        RingBase::Cusp { .. } => {
            let s = MonomialIdeal::from_canonical(ideal.dim(), cusp_ring_monomials(ideal));
            spec.canonical(&s.integral_closure()?)
        }
        RingBase::Arrangement { .. } => {
            let test = spec.closure_test(ideal)?;
            let mut gens = spec.canonical(ideal)?.gens().to_vec();
            gens.extend(spec.outside_points(ideal)?.into_iter().filter(|v| test.contains(v)));
            spec.canonical(&MonomialIdeal::new(gens, ideal.dim())?)
        }
    }
}

/// `e(I)` in the ring model; arrangements use the associativity formula
/// over the components of top dimension.
pub fn ring_multiplicity(ideal: &MonomialIdeal, spec: &RingSpec) -> Result<u64> {
    spec.check_ideal(ideal)?;
    match spec.base() {
        RingBase::Arrangement { .. } => {
            ring_colength(ideal, spec)?;
            let mut total = 0;
            for p in spec.top_primes() {
                let restricted = ideal.restrict_modulo_vars(&p)?;
                if restricted.dim() == 0 {
                    // Artinian component: the multiplicity is its length.
                    total += u64::from(!restricted.is_unit());
                    continue;
                }
                total += hs_multiplicity(&restricted, &RingSpec::poly(restricted.dim()))?.multiplicity;
            }
            Ok(total)
        }
        _ => Ok(hs_multiplicity(ideal, spec)?.multiplicity),
    }
}

/// Both sides of the inclusion-exclusion identity for
/// `l(S/(I + P_1 ∩ ... ∩ P_s))` over coordinate primes.
pub fn inclusion_exclusion_sides(ideal: &MonomialIdeal, primes: &[Vec<usize>]) -> Result<(i64, i64)> {
    let d = ideal.dim();
    if primes.is_empty() || primes.len() > 20 {
        return input("inclusion-exclusion needs between 1 and 20 primes");
    }
    if primes.iter().flatten().any(|&i| i >= d) {
        return input("prime coordinate out of range");
    }
    // Direct side: monomials outside I that avoid some prime entirely.
    let mut gens = ideal.gens().to_vec();
    for mask in 1u64..(1u64 << d) {
        if primes.iter().all(|p| p.iter().any(|&i| mask >> i & 1 == 1)) {
            gens.push((0..d).map(|i| (mask >> i & 1) as u32).collect());
        }
    }
    let direct = MonomialIdeal::new(gens, d)?.colength()? as i64;
    let mut alternating = 0i64;
    for sub in 1u64..(1u64 << primes.len()) {
        let mut vars: Vec<usize> = Vec::new();
        for (k, p) in primes.iter().enumerate() {
            if sub >> k & 1 == 1 {
                vars.extend(p);
            }
        }
        vars.sort_unstable();
        vars.dedup();
        let l = ideal.restrict_modulo_vars(&vars)?.colength()? as i64;
        alternating += if sub.count_ones() % 2 == 1 { l } else { -l };
    }
    Ok((direct, alternating))
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            RingBase::Poly { d } => write!(f, "poly:{}", d)?,
            RingBase::Arrangement { d, primes } => {
                let names = default_names(*d);
                let ps: Vec<String> = primes
                    .iter()
                    .map(|p| p.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "arr:{}:[{}]", d, ps.join("|"))?
            }
            RingBase::Cusp { free } => {
                if *free == 0 {
                    write!(f, "cusp")?
                } else {
                    write!(f, "cusp+{}", free)?
                }
            }
        }
        if self.adjoined > 0 {
            write!(f, "+T:{}", self.adjoined)?;
        }
        Ok(())
    }
}

impl FromStr for RingSpec {
    type Err = LechError;

    /// `poly:3`, `arr:3:[x|y|z]`, `arr:3:[x,y|y,z|x,z]`, `cusp+1`, the
    /// shorthands `snc:d`, `xyz`, `three-points`, `elliptic:n`,
    /// `rational:n`, each optionally followed by `+T:r`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (body, adjoined) = match s.rfind("+T:") {
            Some(pos) => {
                let r: usize = s[pos + 3..]
                    .parse()
                    .map_err(|_| LechError::Input(format!("bad adjoined-variable count in `{}`", s)))?;
                (&s[..pos], r)
            }
            None => (s.as_str(), 0),
        };
        let num = |t: &str| -> Result<usize> {
            t.parse().map_err(|_| LechError::Input(format!("expected a number, found `{}` in `{}`", t, s)))
        };
        let base = if let Some(rest) = body.strip_prefix("poly:") {
            RingSpec::poly(num(rest)?)
        } else if body == "cusp" {
            RingSpec::cusp(0)
        } else if let Some(rest) = body.strip_prefix("cusp+") {
            RingSpec::cusp(num(rest)?)
        } else if let Some(rest) = body.strip_prefix("snc:") {
            let d = num(rest)?;
            if d == 0 {
                return input("snc needs at least one variable");
            }
            RingSpec::snc(d)
        } else if body == "xyz" {
            RingSpec::snc(3)
        } else if body == "three-points" {
            RingSpec::three_points()
        } else if let Some(rest) = body.strip_prefix("elliptic:") {
            RingSpec::elliptic_cone(num(rest)?)?
        } else if let Some(rest) = body.strip_prefix("rational:") {
            RingSpec::rational_cone(num(rest)?)?
        } else if let Some(rest) = body.strip_prefix("arr:") {
            let (d, list) = rest
                .split_once(':')
                .ok_or_else(|| LechError::Input(format!("expected arr:d:[...] in `{}`", s)))?;
            let d = num(d)?;
            let list = list
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(|| LechError::Input(format!("prime list must be bracketed in `{}`", s)))?;
            let names = default_names(d);
            let mut primes = Vec::new();
            for p in list.split('|') {
                let mut coords = Vec::new();
                for v in p.split(',') {
                    let idx = names
                        .iter()
                        .position(|n| n == v)
                        .or_else(|| v.strip_prefix('x').and_then(|k| k.parse().ok()).filter(|&k: &usize| k < d));
                    match idx {
                        Some(i) => coords.push(i),
                        None => return input(format!("unknown variable `{}` in prime list", v)),
                    }
                }
                primes.push(coords);
            }
            RingSpec::arrangement(d, primes)?
        } else {
            return input(format!("unrecognized ring `{}`", s));
        };
        if base.base_coords() == 0 {
            return input("ring needs at least one variable");
        }
        Ok(base.with_adjoined(adjoined))
    }
}
