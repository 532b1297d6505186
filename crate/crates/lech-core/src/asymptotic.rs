//! Exponential lower bounds `A / (x^d h(e^{-x}))` from length series of
//! graded families, the derivative criterion at `t = 1`, and the exact
//! identities behind the power-family construction.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{input, LechError, Result};
use crate::monomial::{Exponent, MonomialIdeal};
use crate::search::factorial;

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Tail {
    Zero,
    /// `l_j = c` beyond the listed increments.
    Constant(u64),
    /// `l_j = a j + b` beyond the listed increments.
    Linear(i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesKind {
    Explicit { increments: Vec<u64>, tail: Tail },
    /// `prod (1 - t^{D_i}) / (1 - t)^n`.
    CompleteIntersection { n: usize, degrees: Vec<u32> },
    /// Integer coefficient lists, lowest degree first.
    RationalFn { num: Vec<i64>, den: Vec<i64> },
}

/// A length series `h(t) = sum_j l(I_j/I_{j+1}) t^j` with its dimension
/// `d` and normalization `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesSpec {
    pub kind: SeriesKind,
    pub d: usize,
    #[serde(serialize_with = "crate::qser::q")]
    pub a: Q,
}

/// Polynomials over the rationals, lowest degree first.
type Poly = Vec<Q>;

fn poly_from(c: &[i64]) -> Poly {
    c.iter().map(|&v| q(v)).collect()
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

fn one_minus_t_pow(k: usize) -> Poly {
    (0..k).fold(vec![q(1)], |p, _| poly_mul(&p, &poly_from(&[1, -1])))
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_at_one(p: &Poly) -> Q {
    p.iter().fold(Q::zero(), |a, c| a + c)
}

fn deriv_at_one(p: &Poly) -> Q {
    p.iter().enumerate().fold(Q::zero(), |a, (i, c)| a + c * q(i as i64))
}

/// Divide out `(1 - t)` as often as it divides; returns the multiplicity.
fn strip_one_minus_t(p: &Poly) -> (Poly, usize) {
    let mut p = trim(p.clone());
    let mut k = 0;
    while !p.is_empty() && poly_at_one(&p).is_zero() {
        // p(t) = (t - 1) s(t), so p / (1 - t) = -s.
        let n = p.len() - 1;
        let mut s = vec![Q::zero(); n];
        let mut acc = Q::zero();
        for i in (1..=n).rev() {
            acc += &p[i];
            s[i - 1] = acc.clone();
        }
        p = s.into_iter().map(|c| -c).collect();
        k += 1;
    }
    (p, k)
}

fn eval_f64(p: &[f64], t: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

fn to_f64(p: &Poly) -> Vec<f64> {
    p.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
}

/// `h = num / den` with all `(1 - t)` factors pulled out:
/// `h = num' / den' * (1 - t)^{-order}`.
#[derive(Clone, Debug)]
struct Reduced {
    num: Poly,
    den: Poly,
    order: i64,
}

impl SeriesKind {
    /// Exact numerator and denominator of `h(t)`.
    fn rational_form(&self) -> Result<(Poly, Poly)> {
        match self {
            SeriesKind::RationalFn { num, den } => {
                if trim(poly_from(den)).is_empty() {
                    return input("rational series has zero denominator");
                }
                Ok((poly_from(num), poly_from(den)))
            }
            SeriesKind::CompleteIntersection { n, degrees } => {
                if degrees.contains(&0) {
                    return input("complete-intersection degrees must be positive");
                }
                if degrees.len() > *n {
                    return input("more equations than variables");
                }
                let mut num = vec![q(1)];
                for &d in degrees {
                    let mut f = vec![Q::zero(); d as usize + 1];
                    f[0] = q(1);
                    f[d as usize] = q(-1);
                    num = poly_mul(&num, &f);
                }
                Ok((num, one_minus_t_pow(*n)))
            }
            SeriesKind::Explicit { increments, tail } => {
                if increments.first().is_none_or(|&l| l < 1) {
                    return input("explicit series needs l_0 >= 1");
                }
                let p: Poly = increments.iter().map(|&l| q(l as i64)).collect();
                let m = increments.len();
                let mut shift = vec![Q::zero(); m];
                shift.push(q(1));
                match tail {
                    Tail::Zero => Ok((p, vec![q(1)])),
                    Tail::Constant(c) => {
                        let num = poly_add(&poly_mul(&p, &one_minus_t_pow(1)), &poly_mul(&shift, &vec![q(*c as i64)]));
                        Ok((num, one_minus_t_pow(1)))
                    }
                    Tail::Linear(a, b) => {
                        if (*a) < 0 || (*a == 0 && *b < 0) || *a * m as i64 + *b < 0 {
                            return input("linear tail must stay non-negative");
                        }
                        let mm = m as i64;
                        // sum_{j >= M} (a j + b) t^j
                        //   = t^M (a (M - (M-1) t) + b (1 - t)) / (1 - t)^2
                        let inner = poly_from(&[a * mm + b, -(a * (mm - 1)) - b]);
                        let num = poly_add(&poly_mul(&p, &one_minus_t_pow(2)), &poly_mul(&shift, &inner));
                        Ok((num, one_minus_t_pow(2)))
                    }
                }
            }
        }
    }

    fn reduced(&self) -> Result<Reduced> {
        let (num, den) = self.rational_form()?;
        let (num, m) = strip_one_minus_t(&num);
        let (den, k) = strip_one_minus_t(&den);
        if num.is_empty() {
            return input("series is identically zero");
        }
        Ok(Reduced { num, den, order: k as i64 - m as i64 })
    }
}

impl SeriesSpec {
    /// Series with `d` and `A` read off the pole at `t = 1`.
    pub fn new(kind: SeriesKind) -> Result<Self> {
        let r = kind.reduced()?;
        if r.order < 0 {
            return input("series vanishes at t = 1");
        }
        let a = poly_at_one(&r.num) / poly_at_one(&r.den);
        Ok(SeriesSpec { kind, d: r.order as usize, a })
    }

    pub fn with_d(mut self, d: usize) -> Self {
        self.d = d;
        self
    }

    pub fn with_a(mut self, a: Q) -> Self {
        self.a = a;
        self
    }

    pub fn complete_intersection(n: usize, degrees: &[u32]) -> Result<Self> {
        Self::new(SeriesKind::CompleteIntersection { n, degrees: degrees.to_vec() })
    }

    pub fn explicit(increments: &[u64], tail: Tail) -> Result<Self> {
        Self::new(SeriesKind::Explicit { increments: increments.to_vec(), tail })
    }

    pub fn rational(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::new(SeriesKind::RationalFn { num: num.to_vec(), den: den.to_vec() })
    }

    /// Compiled floating-point evaluator of the bound.
    pub fn bound_fn(&self) -> Result<BoundFn> {
        let r = self.kind.reduced()?;
        Ok(BoundFn {
            num: to_f64(&r.num),
            den: to_f64(&r.den),
            order: r.order,
            d: self.d as i64,
            a: self.a.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// `x -> A / (x^d h(e^{-x}))`.
#[derive(Clone, Debug)]
pub struct BoundFn {
    num: Vec<f64>,
    den: Vec<f64>,
    order: i64,
    d: i64,
    a: f64,
}

impl BoundFn {
    pub fn eval(&self, x: f64) -> f64 {
        let t = (-x).exp();
        let s = -(-x).exp_m1();
        // x^d h = x^d num'/den' s^{-order}
        let ratio = eval_f64(&self.den, t) / eval_f64(&self.num, t);
        let scale = if self.order == self.d {
            (s / x).powi(self.d as i32)
        } else {
            s.powi(self.order as i32) / x.powi(self.d as i32)
        };
        self.a * ratio * scale
    }
}

pub fn eval_bound(series: &SeriesSpec, x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 || x.is_infinite() {
        return input("the bound is evaluated at x > 0");
    }
    Ok(series.bound_fn()?.eval(x))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
}

const GRID: usize = 400;
const X_MIN: f64 = 1e-4;
const X_MAX: f64 = 50.0;
const X_TOL: f64 = 1e-8;

fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Maximum {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - g * (hi - lo);
    let mut b = lo + g * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > X_TOL {
        if fa >= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = f(b);
        }
    }
    let x = (lo + hi) / 2.0;
    Maximum { x, value: f(x) }
}

/// Grid search on `[1e-4, 50]` refined by golden sections around every
/// local maximum of the grid.
pub fn maximize(f: impl Fn(f64) -> f64) -> Maximum {
    let ratio = (X_MAX / X_MIN).ln() / (GRID - 1) as f64;
    let xs: Vec<f64> = (0..GRID).map(|i| X_MIN * (ratio * i as f64).exp()).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut best = Maximum { x: xs[0], value: ys[0] };
    for i in 0..GRID {
        let left = if i == 0 { f64::NEG_INFINITY } else { ys[i - 1] };
        let right = if i + 1 == GRID { f64::NEG_INFINITY } else { ys[i + 1] };
        if !(ys[i] >= left && ys[i] >= right) {
            continue;
        }
        let lo = xs[i.saturating_sub(1)];
        let hi = xs[(i + 1).min(GRID - 1)];
        let mut m = golden_max(&f, lo, hi);
        if m.value.is_nan() || m.value < ys[i] {
            m = Maximum { x: xs[i], value: ys[i] };
        }
        if m.value > best.value {
            best = m;
        }
    }
    best
}

pub fn maximize_bound(series: &SeriesSpec) -> Result<Maximum> {
    let f = series.bound_fn()?;
    Ok(maximize(|x| f.eval(x)))
}

fn large_mult_sup(d: i32, b: f64) -> f64 {
    maximize(|x| {
        let s = -(-x).exp_m1();
        (s / x).powi(d) / (s / b + (-x).exp())
    })
    .value
}

/// Smallest `B / d!` for which `sup_x (1-e^{-x})^d / (x^d ((1-e^{-x})/B + e^{-x}))`
/// exceeds one.
pub fn large_mult_threshold(d: usize) -> Result<f64> {
    if d < 2 {
        return input("large_mult_threshold needs d >= 2");
    }
    let di = d as i32;
    let fact = factorial(d) as f64;
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    while large_mult_sup(di, hi) <= 1.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return Err(LechError::Resource("threshold search diverged".into()));
        }
    }
    while (hi - lo) / fact > 1e-5 {
        let mid = (lo + hi) / 2.0;
        if large_mult_sup(di, mid) > 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi / fact)
}

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    #[serde(serialize_with = "crate::qser::q")]
    pub f1: Q,
    #[serde(serialize_with = "crate::qser::q")]
    pub fp1: Q,
    pub lim_unstable: bool,
}

/// Exact `f(1)` and `f'(1)` for `f = h (1 - t)^d`, and whether
/// `f'(1) > (d/2) f(1)`.
pub fn derivative_criterion(series: &SeriesSpec) -> Result<Criterion> {
    let r = series.kind.reduced()?;
    if r.order != series.d as i64 {
        return input(format!(
            "series has a pole of order {} at t = 1 but d = {}; f(1) would vanish or blow up",
            r.order, series.d
        ));
    }
    let (n1, d1) = (poly_at_one(&r.num), poly_at_one(&r.den));
    if n1.is_zero() || d1.is_zero() {
        return input("malformed series: f(1) = 0 after cancellation");
    }
    let f1 = &n1 / &d1;
    let fp1 = (deriv_at_one(&r.num) * &d1 - &n1 * deriv_at_one(&r.den)) / (&d1 * &d1);
    let half_d = Q::new(BigInt::from(series.d), BigInt::from(2));
    let lim_unstable = fp1 > half_d * &f1;
    Ok(Criterion { f1, fp1, lim_unstable })
}

/// `-rho^{-(d-1)} ((d/2) A + (1/rho) sum B)`.
pub fn quasi_second_coeff(a: &Q, b: &[Q], rho: usize, d: usize) -> Result<Q> {
    if rho == 0 {
        return input("rho must be positive");
    }
    if b.len() != rho {
        return input("B needs one value per residue class");
    }
    let r = q(rho as i64);
    let sum_b = b.iter().fold(Q::zero(), |s, x| s + x);
    let inner = Q::new(BigInt::from(d), BigInt::from(2)) * a + sum_b / &r;
    if d == 0 {
        return Ok(-inner * r);
    }
    let scale = (1..d).fold(Q::one(), |s, _| s * &r);
    Ok(-inner / scale)
}

/// `f'(1) - (d/2) f(1)` for `f = (A + (1 - T) sum_h B_h T^h) / (1 + ... + T^{rho-1})^d`.
pub fn quasi_second_coeff_symbolic(a: &Q, b: &[Q], rho: usize, d: usize) -> Result<Q> {
    if rho == 0 || b.len() != rho {
        return input("B needs rho >= 1 values");
    }
    let bpoly: Poly = b.to_vec();
    let num = poly_add(&vec![a.clone()], &poly_mul(&one_minus_t_pow(1), &bpoly));
    let block: Poly = vec![q(1); rho];
    let den = (0..d).fold(vec![q(1)], |p, _| poly_mul(&p, &block));
    let (n1, d1) = (poly_at_one(&num), poly_at_one(&den));
    let f1 = &n1 / &d1;
    let fp1 = (deriv_at_one(&num) * &d1 - &n1 * deriv_at_one(&den)) / (&d1 * &d1);
    Ok(fp1 - Q::new(BigInt::from(d), BigInt::from(2)) * f1)
}

fn binom_big(n: i64, r: u32) -> BigInt {
    if n < r as i64 || n < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..r as i64 {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Both closed forms of `l(R[[t_1..t_r]] / J_{N,k})` from the increments
/// `l(I_j / I_{j+1})`, `j = 0..N-1`.
pub fn family_colength_identity(increments: &[u64], k: u32, r: u32) -> (BigInt, BigInt) {
    let n = increments.len() as i64;
    let k = k as i64;
    let c = |m: i64| if m == 0 { BigInt::zero() } else { binom_big(k * m + r as i64 - 1, r) };
    let side_a = increments
        .iter()
        .enumerate()
        .fold(BigInt::zero(), |s, (j, &l)| s + BigInt::from(l) * c(n - j as i64));
    let mut partial = vec![0u64; increments.len() + 1];
    for (j, &l) in increments.iter().enumerate() {
        partial[j + 1] = partial[j] + l;
    }
    let side_b = (0..n).fold(BigInt::zero(), |s, m| {
        s + BigInt::from(partial[(n - m) as usize]) * (c(m + 1) - c(m))
    });
    (side_a, side_b)
}

/// `I_j = I^j` (or its integral closure), `j = 0..=n`.
pub fn power_family(ideal: &MonomialIdeal, n: u32, closed: bool) -> Result<Vec<MonomialIdeal>> {
    (0..=n)
        .map(|j| {
            let p = ideal.power(j);
            if closed { p.integral_closure() } else { Ok(p) }
        })
        .collect()
}

/// `l(I_j / I_{j+1})` for consecutive members of a family.
pub fn family_increments(family: &[MonomialIdeal]) -> Result<Vec<u64>> {
    let lengths: Vec<u64> = family.iter().map(|i| i.colength()).collect::<Result<_>>()?;
    Ok(lengths.windows(2).map(|w| w[1] - w[0]).collect())
}

/// `J_{N,k} = sum_n I_{N-n} (t_1..t_r)^{kn}` in `dim + r` coordinates, the
/// new coordinates last. `family` lists `I_0, ..., I_N`.
pub fn assemble_power_family(family: &[MonomialIdeal], k: u32, r: usize) -> Result<MonomialIdeal> {
    let Some(first) = family.first() else {
        return input("family needs I_0");
    };
    let d = first.dim();
    let big_n = family.len() - 1;
    let mut gens: Vec<Exponent> = Vec::new();
    for n in 0..=big_n {
        let t_gens = MonomialIdeal::maximal(r).power(k * n as u32);
        for g in family[big_n - n].gens() {
            for t in t_gens.gens() {
                let mut v = g.clone();
                v.extend_from_slice(t);
                gens.push(v);
            }
        }
    }
    MonomialIdeal::new(gens, d + r)
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(",");
        match &self.kind {
            SeriesKind::CompleteIntersection { n, degrees } => {
                write!(f, "ci:{}:{}", n, list(&mut degrees.iter().map(|d| d.to_string())))?
            }
            SeriesKind::Explicit { increments, tail } => {
                write!(f, "explicit:{}", list(&mut increments.iter().map(|d| d.to_string())))?;
                match tail {
                    Tail::Zero => write!(f, ";tail=zero")?,
                    Tail::Constant(c) => write!(f, ";tail=const:{}", c)?,
                    Tail::Linear(a, b) => write!(f, ";tail=linear:{},{}", a, b)?,
                }
            }
            SeriesKind::RationalFn { num, den } => write!(
                f,
                "ratfn:{}/{}",
                list(&mut num.iter().map(|d| d.to_string())),
                list(&mut den.iter().map(|d| d.to_string()))
            )?,
        }
        write!(f, ";d={};A={}", self.d, self.a)
    }
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| LechError::Input(format!("bad {} `{}`", what, p))))
        .collect()
}

fn parse_rational(s: &str) -> Result<Q> {
    let bad = || LechError::Input(format!("bad rational `{}`", s));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl FromStr for SeriesSpec {
    type Err = LechError;

    /// `ci:n:D1,D2,...`, `explicit:l0,l1,...;tail=const:c` (also
    /// `tail=linear:a,b`, `tail=zero`) or `ratfn:n0,n1,.../d0,d1,...`,
    /// each optionally followed by `;d=...` and `;A=p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parts = s.split(';');
        let head = parts.next().unwrap_or("");
        let mut tail = Tail::Zero;
        let mut d = None;
        let mut a = None;
        for opt in parts {
            if let Some(t) = opt.strip_prefix("tail=") {
                tail = if t == "zero" {
                    Tail::Zero
                } else if let Some(c) = t.strip_prefix("const:") {
                    Tail::Constant(c.parse().map_err(|_| LechError::Input(format!("bad tail `{}`", t)))?)
                } else if let Some(ab) = t.strip_prefix("linear:") {
                    let v: Vec<i64> = parse_list(ab, "tail coefficient")?;
                    if v.len() != 2 {
                        return input("linear tail takes a,b");
                    }
                    Tail::Linear(v[0], v[1])
                } else {
                    return input(format!("unknown tail `{}`", t));
                };
            } else if let Some(v) = opt.strip_prefix("d=") {
                d = Some(v.parse().map_err(|_| LechError::Input(format!("bad d `{}`", v)))?);
            } else if let Some(v) = opt.strip_prefix("A=") {
                a = Some(parse_rational(v)?);
            } else {
                return input(format!("unknown series option `{}`", opt));
            }
        }
        let kind = if let Some(rest) = head.strip_prefix("ci:") {
            let (n, degs) = rest.split_once(':').ok_or_else(|| LechError::Input("expected ci:n:D1,...".into()))?;
            let n = n.parse().map_err(|_| LechError::Input(format!("bad n `{}`", n)))?;
            let degrees = if degs.is_empty() { Vec::new() } else { parse_list(degs, "degree")? };
            SeriesKind::CompleteIntersection { n, degrees }
        } else if let Some(rest) = head.strip_prefix("explicit:") {
            SeriesKind::Explicit { increments: parse_list(rest, "increment")?, tail: tail.clone() }
        } else if let Some(rest) = head.strip_prefix("ratfn:") {
            let (n, dd) = rest.split_once('/').ok_or_else(|| LechError::Input("expected ratfn:num/den".into()))?;
            SeriesKind::RationalFn { num: parse_list(n, "coefficient")?, den: parse_list(dd, "coefficient")? }
        } else {
            return input(format!("unrecognized series `{}`", s));
        };
        let mut spec = SeriesSpec::new(kind)?;
        if let Some(d) = d {
            spec = spec.with_d(d);
        }
        if let Some(a) = a {
            if !a.is_positive() {
                return input("A must be positive");
            }
            spec = spec.with_a(a);
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_of_the_dimension_one_bounds() {
        let node = SeriesSpec::explicit(&[1, 1], Tail::Constant(2)).unwrap();
        assert_eq!((node.d, node.a.clone()), (1, q(2)));
        let ram = SeriesSpec::explicit(&[1, 0], Tail::Constant(1)).unwrap();
        for x in [0.01f64, 0.3, 1.0, 2.5, 7.0] {
            let e = (-x).exp();
            let want = 2.0 * (1.0 - e) / (x + x * e * e);
            assert!((eval_bound(&node, x).unwrap() - want).abs() < 1e-12 * want);
            let want = (1.0 - e) / (x - x * e + x * e * e);
            assert!((eval_bound(&ram, x).unwrap() - want).abs() < 1e-12 * want);
        }
        assert!(eval_bound(&node, 0.0).is_err());
    }

    #[test]
    fn complete_intersection_criterion() {
        let s = SeriesSpec::complete_intersection(2, &[3]).unwrap();
        assert_eq!((s.d, s.a.clone()), (1, q(3)));
        let c = derivative_criterion(&s).unwrap();
        assert_eq!((c.f1, c.fp1, c.lim_unstable), (q(3), q(3), true));
        let regular = SeriesSpec::complete_intersection(3, &[]).unwrap();
        let c = derivative_criterion(&regular).unwrap();
        assert_eq!((c.f1, c.fp1, c.lim_unstable), (q(1), q(0), false));
    }

    #[test]
    fn minimal_multiplicity_surface_is_on_the_boundary() {
        for e in 2..20 {
            let s = SeriesSpec::rational(&[1, e - 1], &[1, -2, 1]).unwrap();
            let c = derivative_criterion(&s).unwrap();
            assert_eq!(c.fp1, &c.f1 - q(1));
            assert!(!c.lim_unstable);
        }
    }

    #[test]
    fn quasi_coefficients() {
        assert_eq!(quasi_second_coeff(&q(1), &[q(0)], 1, 2).unwrap(), q(-1));
        assert_eq!(quasi_second_coeff(&q(2), &[q(1), q(1)], 2, 1).unwrap(), q(-2));
        assert_eq!(quasi_second_coeff(&q(4), &[q(-4)], 1, 2).unwrap(), q(0));
        for (a, b, rho, d) in [(q(2), vec![q(1), q(1)], 2, 1), (q(3), vec![q(1), q(-2), q(5)], 3, 2)] {
            assert_eq!(
                quasi_second_coeff(&a, &b, rho, d).unwrap(),
                quasi_second_coeff_symbolic(&a, &b, rho, d).unwrap()
            );
        }
    }

    #[test]
    fn family_identity_examples() {
        assert_eq!(family_colength_identity(&[1], 1, 1), (1.into(), 1.into()));
        assert_eq!(family_colength_identity(&[1, 2], 2, 2), (16.into(), 16.into()));
    }

    #[test]
    fn assembled_family_colength() {
        let fam = power_family(&MonomialIdeal::maximal(2), 2, false).unwrap();
        let inc = family_increments(&fam).unwrap();
        assert_eq!(inc, vec![1, 2]);
        let j = assemble_power_family(&fam, 2, 2).unwrap();
        assert_eq!(j.colength().unwrap(), 16);
    }

    #[test]
    fn grammar() {
        let s: SeriesSpec = "explicit:1,1;tail=const:2".parse().unwrap();
        assert_eq!(s, SeriesSpec::explicit(&[1, 1], Tail::Constant(2)).unwrap());
        let s: SeriesSpec = "ci:2:3".parse().unwrap();
        assert_eq!(s.to_string(), "ci:2:3;d=1;A=3");
        let s: SeriesSpec = "ratfn:1,5/1,-2,1".parse().unwrap();
        assert_eq!((s.d, s.a.clone()), (2, q(6)));
        let s: SeriesSpec = "explicit:1,2,3;tail=linear:1,0;A=1/2".parse().unwrap();
        assert_eq!((s.d, s.a.clone()), (2, Q::new(1.into(), 2.into())));
        assert!("ci:x:3".parse::<SeriesSpec>().is_err());
        assert!("explicit:0,1".parse::<SeriesSpec>().is_err());
    }
}
