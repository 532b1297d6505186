//! Newton polyhedra of monomial ideals: membership, facets (Rees data),
//! integral closures and rational powers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{input, LechError, Result};
use crate::lp;
use crate::monomial::{minimalize, Exponent, MonomialIdeal, MAX_BOX};

/// Default cap on the number of generator subsets examined when
/// extracting facets in three or more variables.
pub const FACET_BUDGET: u64 = 100_000;

/// A compact facet `<normal, v> >= value` of the Newton polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Facet {
    pub normal: Vec<u64>,
    pub value: u64,
}

impl Facet {
    pub fn eval(&self, v: &[u32]) -> u64 {
        self.normal.iter().zip(v).map(|(&w, &x)| w * x as u64).sum()
    }
}

/// Rees valuations of an m-primary monomial ideal and their common period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReesData {
    pub facets: Vec<Facet>,
    pub period: u64,
}

impl ReesData {
    /// Whether `v` satisfies `a * <w, v> >= b * value` on every facet.
    pub fn admits(&self, v: &[u32], b: u64, a: u64) -> bool {
        self.facets.iter().all(|f| a * f.eval(v) >= b * f.value)
    }
}

fn gcd_all(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Fraction-free determinant of a small square integer matrix.
fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Normal vector orthogonal to the `d - 1` rows of `rows` (a d-column
/// matrix), via signed maximal minors.
fn cofactor_normal(rows: &[Vec<i128>], d: usize) -> Vec<i128> {
    (0..d)
        .map(|c| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
                .collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * det(minor)
        })
        .collect()
}

fn primitive_facet(w: Vec<i128>, anchor: &[u32], gens: &[Exponent]) -> Option<Facet> {
    if w.iter().all(|&x| x == 0) {
        return None;
    }
    let w: Vec<i128> = if w.iter().all(|&x| x <= 0) { w.iter().map(|x| -x).collect() } else { w };
    if w.iter().any(|&x| x <= 0) {
        return None;
    }
    let g = gcd_all(&w);
    let w: Vec<u64> = w.iter().map(|&x| (x / g) as u64).collect();
    let value: u64 = w.iter().zip(anchor).map(|(&a, &b)| a * b as u64).sum();
    if value == 0 {
        return None;
    }
    let f = Facet { normal: w, value };
    gens.iter().all(|p| f.eval(p) >= f.value).then_some(f)
}

/// Edges of the lower convex hull of a two-variable staircase.
fn facets_2d(gens: &[Exponent]) -> Vec<Facet> {
    let mut pts: Vec<(i64, i64)> = gens.iter().map(|g| (g[0] as i64, g[1] as i64)).collect();
    pts.sort();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::new();
    for e in hull.windows(2) {
        let (p, q) = (e[0], e[1]);
        let w = [(p.1 - q.1) as i128, (q.0 - p.0) as i128];
        let g = gcd_all(&w);
        let normal = vec![(w[0] / g) as u64, (w[1] / g) as u64];
        let value = normal[0] * p.0 as u64 + normal[1] * p.1 as u64;
        out.push(Facet { normal, value });
    }
    out.sort();
    out
}

/// Facets in any dimension by enumerating affinely independent
/// `d`-subsets of generators and keeping supporting hyperplanes with
/// positive normals.
pub fn facets_by_subsets(gens: &[Exponent], d: usize, budget: u64) -> Result<Vec<Facet>> {
    let k = gens.len();
    let mut combos: u64 = 1;
    for i in 0..d as u64 {
        combos = combos.saturating_mul(k as u64 - i.min(k as u64)) / (i + 1);
    }
    if k >= d && combos > budget {
        return Err(LechError::Resource(format!(
            "facet extraction needs {} generator subsets (budget {})",
            combos, budget
        )));
    }
    let mut found: BTreeSet<Facet> = BTreeSet::new();
    if k < d {
        return Ok(Vec::new());
    }
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let base = &gens[idx[0]];
        let rows: Vec<Vec<i128>> = idx[1..]
            .iter()
            .map(|&i| gens[i].iter().zip(base).map(|(&a, &b)| a as i128 - b as i128).collect())
            .collect();
        let w = cofactor_normal(&rows, d);
        if let Some(f) = primitive_facet(w, base, gens) {
            found.insert(f);
        }
        // Next combination in lexicographic order.
        let mut pos = d;
        loop {
            if pos == 0 {
                return Ok(found.into_iter().collect());
            }
            pos -= 1;
            if idx[pos] < k - d + pos {
                idx[pos] += 1;
                for j in pos + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn lcm_all(values: impl Iterator<Item = u64>) -> u64 {
    values.fold(1u64, |l, v| l.lcm(&v))
}

impl MonomialIdeal {
    /// Membership of a rational point in `conv(gens) + R_{>=0}^d`.
    pub fn newton_contains(&self, v: &[BigRational]) -> bool {
        let pts: Vec<Vec<BigRational>> = self
            .gens()
            .iter()
            .map(|g| g.iter().map(|&e| BigRational::from_integer(BigInt::from(e))).collect())
            .collect();
        lp::dominates_hull_point(&pts, v)
    }

    fn newton_contains_lattice(&self, v: &[u32]) -> bool {
        let q: Vec<BigRational> = v.iter().map(|&e| BigRational::from_integer(BigInt::from(e))).collect();
        self.newton_contains(&q)
    }

    /// Rees data with the default facet budget.
    pub fn rees_data(&self) -> Result<ReesData> {
        self.rees_data_with_budget(FACET_BUDGET)
    }

    pub fn rees_data_with_budget(&self, budget: u64) -> Result<ReesData> {
        if !self.is_finite_colength() {
            return Err(LechError::InfiniteColength(self.to_string()));
        }
        let facets = if self.is_unit() || self.dim() == 0 {
            Vec::new()
        } else {
            match self.dim() {
                1 => vec![Facet { normal: vec![1], value: self.gens()[0][0] as u64 }],
                2 => facets_2d(self.gens()),
                d => facets_by_subsets(self.gens(), d, budget)?,
            }
        };
        let period = lcm_all(facets.iter().map(|f| f.value));
        Ok(ReesData { facets, period })
    }

    /// Integral closure: lattice points of the Newton polyhedron.
    pub fn integral_closure(&self) -> Result<MonomialIdeal> {
        if self.is_zero() {
            return input("integral closure of the zero ideal");
        }
        if self.is_unit() {
            return Ok(self.clone());
        }
        if self.is_finite_colength() {
            return self.rational_power(1, 1);
        }
        self.closure_by_lp()
    }

    /// Closure by testing every point of the generator-maxima box with the
    /// exact LP; used for ideals that are not m-primary.
    pub fn closure_by_lp(&self) -> Result<MonomialIdeal> {
        if self.is_zero() {
            return input("integral closure of the zero ideal");
        }
        let max = self.maxima();
        let size: u64 = max.iter().map(|&m| m as u64 + 1).product();
        if size > MAX_BOX {
            return Err(LechError::Resource(format!("closure box of {} points", size)));
        }
        let mut out = Vec::new();
        let mut v = vec![0u32; self.dim()];
        loop {
            if self.contains(&v) || self.newton_contains_lattice(&v) {
                out.push(v.clone());
            }
            let mut k = 0;
            loop {
                if k == v.len() {
                    return Ok(MonomialIdeal::from_canonical(self.dim(), minimalize(out)));
                }
                v[k] += 1;
                if v[k] <= max[k] {
                    break;
                }
                v[k] = 0;
                k += 1;
            }
        }
    }

    /// The rational power `I^{b/a}`; `I^0` is the unit ideal.
    pub fn rational_power(&self, b: u64, a: u64) -> Result<MonomialIdeal> {
        if a == 0 {
            return input("rational power with zero denominator");
        }
        if !self.is_finite_colength() {
            return Err(LechError::InfiniteColength(self.to_string()));
        }
        if b == 0 || self.is_unit() {
            return Ok(MonomialIdeal::unit(self.dim()));
        }
        let g = b.gcd(&a);
        let rees = self.rees_data()?;
        scaled_polyhedron_ideal(&rees, self.dim(), b / g, a / g)
    }
}

/// Minimal lattice points of `{v >= 0 : a <w, v> >= b c for every facet}`.
///
/// Each row (all coordinates except the last) has a least admissible last
/// coordinate; a row's point is a generator iff that value beats the
/// prefix minimum over strictly smaller rows.
pub(crate) fn scaled_polyhedron_ideal(rees: &ReesData, d: usize, b: u64, a: u64) -> Result<MonomialIdeal> {
    if d == 1 {
        let need = rees
            .facets
            .iter()
            .map(|f| (b * f.value).div_ceil(a * f.normal[0]))
            .max()
            .unwrap_or(0);
        return Ok(MonomialIdeal::from_canonical(1, vec![vec![need as u32]]));
    }
    let last = d - 1;
    // Axis intercepts bound every minimal point.
    let bounds: Vec<u64> = (0..last)
        .map(|i| {
            rees.facets
                .iter()
                .map(|f| (b * f.value).div_ceil(a * f.normal[i]))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut size: u64 = 1;
    for &x in &bounds {
        size = size.saturating_mul(x + 1);
    }
    if size > MAX_BOX {
        return Err(LechError::Resource(format!("rational-power box of {} rows", size)));
    }
    let size = size as usize;
    let mut strides = vec![0usize; last];
    let mut s = 1usize;
    for k in (0..last).rev() {
        strides[k] = s;
        s *= (bounds[k] + 1) as usize;
    }
    let mut prefix = vec![u64::MAX; size];
    let mut coord = vec![0u64; last];
    let mut gens: Vec<Exponent> = Vec::new();
    for idx in 0..size {
        let mut need = 0u64;
        for f in &rees.facets {
            let partial: u64 = (0..last).map(|i| f.normal[i] * coord[i]).sum();
            let target = b * f.value;
            if a * partial < target {
                need = need.max((target - a * partial).div_ceil(a * f.normal[last]));
            }
        }
        let mut below = u64::MAX;
        for k in 0..last {
            if coord[k] > 0 {
                below = below.min(prefix[idx - strides[k]]);
            }
        }
        if need < below {
            let mut g: Exponent = coord.iter().map(|&c| c as u32).collect();
            g.push(need as u32);
            gens.push(g);
        }
        prefix[idx] = need.min(below);
        for k in (0..last).rev() {
            coord[k] += 1;
            if coord[k] <= bounds[k] {
                break;
            }
            coord[k] = 0;
        }
    }
    gens.sort_unstable_by(|x, y| y.cmp(x));
    Ok(MonomialIdeal::from_canonical(d, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::canonicalize;

    fn ideal(gens: &[&[u32]]) -> MonomialIdeal {
        let d = gens[0].len();
        canonicalize(gens.iter().map(|g| g.to_vec()).collect(), d).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn newton_examples() {
        let i = ideal(&[&[2, 0], &[0, 2]]);
        assert!(i.newton_contains(&[q(1, 1), q(1, 1)]));
        assert!(!i.newton_contains(&[q(1, 2), q(1, 2)]));
        assert!(i.newton_contains(&[q(3, 1), q(0, 1)]));
    }

    #[test]
    fn closure_examples() {
        let m = MonomialIdeal::maximal(2);
        assert_eq!(m.integral_closure().unwrap(), m);
        assert_eq!(
            ideal(&[&[4, 0], &[0, 2]]).integral_closure().unwrap(),
            ideal(&[&[4, 0], &[2, 1], &[0, 2]])
        );
        assert_eq!(
            ideal(&[&[3, 0], &[0, 3]]).integral_closure().unwrap(),
            ideal(&[&[3, 0], &[2, 1], &[1, 2], &[0, 3]])
        );
        assert!(MonomialIdeal::zero(2).integral_closure().is_err());
        let x = ideal(&[&[2, 0], &[1, 1]]);
        assert_eq!(x.integral_closure().unwrap(), x);
    }

    #[test]
    fn rees_examples() {
        let r = MonomialIdeal::maximal(2).rees_data().unwrap();
        assert_eq!(r.facets, vec![Facet { normal: vec![1, 1], value: 1 }]);
        assert_eq!(r.period, 1);
        let r = ideal(&[&[2, 0], &[0, 1]]).rees_data().unwrap();
        assert_eq!(r.facets, vec![Facet { normal: vec![1, 2], value: 2 }]);
        assert_eq!(r.period, 2);
        let r = ideal(&[&[3, 0], &[0, 2]]).rees_data().unwrap();
        assert_eq!(r.facets, vec![Facet { normal: vec![2, 3], value: 6 }]);
        assert_eq!(r.period, 6);
        let r = ideal(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]).rees_data().unwrap();
        assert_eq!(r.facets, vec![Facet { normal: vec![2, 2, 1], value: 2 }]);
    }

    #[test]
    fn rational_power_examples() {
        let i = ideal(&[&[2, 0], &[0, 1]]);
        assert_eq!(i.rational_power(1, 2).unwrap(), MonomialIdeal::maximal(2));
        let m = MonomialIdeal::maximal(2);
        assert_eq!(m.rational_power(3, 2).unwrap(), m.power(2));
        assert!(m.rational_power(0, 5).unwrap().is_unit());
        assert!(m.rational_power(1, 0).is_err());
    }

    #[test]
    fn facet_budget_is_enforced() {
        let m = MonomialIdeal::maximal(3).power(6);
        assert!(matches!(m.rees_data_with_budget(10), Err(LechError::Resource(_))));
        assert_eq!(m.rees_data().unwrap().facets.len(), 1);
    }
}
