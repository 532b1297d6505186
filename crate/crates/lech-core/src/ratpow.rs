//! Colengths of rational powers and integral closures of powers of
//! `(I, T^m)` in `R[[T]]`, computed from rational powers of `I` alone.

use serde::Serialize;

use crate::error::{input, LechError, Result};
use crate::monomial::{Exponent, MonomialIdeal};

/// `(I, T^a)` with `T` appended as the last coordinate.
pub fn adjoin_power(ideal: &MonomialIdeal, a: u32) -> MonomialIdeal {
    let d = ideal.dim();
    let mut gens: Vec<Exponent> = ideal.extend(1).gens().to_vec();
    let mut t = vec![0; d + 1];
    t[d] = a;
    gens.push(t);
    MonomialIdeal::new(gens, d + 1).expect("dimensions agree")
}

/// `sum_{k=0}^{n} I^{k/a} T^{n-k}` in `d + 1` variables.
pub fn expand_adjoint_power(ideal: &MonomialIdeal, a: u32, n: u32) -> Result<MonomialIdeal> {
    if a == 0 || n == 0 {
        return input("expand_adjoint_power needs positive a and n");
    }
    let d = ideal.dim();
    let mut gens = Vec::new();
    for k in 0..=n {
        let p = ideal.rational_power(k as u64, a as u64)?;
        for g in p.gens() {
            let mut v = g.clone();
            v.push(n - k);
            gens.push(v);
        }
    }
    MonomialIdeal::new(gens, d + 1)
}

fn period_dividing(ideal: &MonomialIdeal, m: u32) -> Result<u64> {
    if m == 0 {
        return input("m must be positive");
    }
    if ideal.is_unit() || !ideal.is_finite_colength() {
        return input("the formulas need a proper ideal of finite colength");
    }
    let rho = ideal.rees_data()?.period;
    if !(m as u64).is_multiple_of(rho) {
        return Err(LechError::Input(format!("Rees period {} does not divide m = {}", rho, m)));
    }
    Ok(rho)
}

fn frac_colength(ideal: &MonomialIdeal, j: u64, rho: u64) -> Result<u64> {
    ideal.rational_power(j, rho)?.colength()
}

/// `l(R[[T]] / (I, T^m)^{(nm + r)/m})` by the three-sum formula.
pub fn colength_it_rational(ideal: &MonomialIdeal, m: u32, n: u32, r: u32) -> Result<u64> {
    let rho = period_dividing(ideal, m)?;
    if r >= m {
        return input("r must satisfy 0 <= r < m");
    }
    let (m, n, r) = (m as u64, n as u64, r as u64);
    let q = m / rho;
    let s = (r * rho).div_ceil(m);
    let t = s * q - r;
    let mut total = 0u64;
    for h in 0..s {
        for k in 0..=n {
            total += q * frac_colength(ideal, k * rho + h, rho)?;
        }
    }
    for h in s..rho {
        for k in 0..n {
            total += q * frac_colength(ideal, k * rho + h, rho)?;
        }
    }
    total += (q - t) * frac_colength(ideal, n * rho + s, rho)?;
    Ok(total)
}

/// `l(R[[T]] / closure((I, T^m)^n)) = (m/rho) sum_{j=0}^{rho n} l(R/I^{j/rho})`.
pub fn colength_it_closure(ideal: &MonomialIdeal, m: u32, n: u32) -> Result<u64> {
    let rho = period_dividing(ideal, m)?;
    let q = m as u64 / rho;
    let mut total = 0;
    for j in 0..=rho * n as u64 {
        total += q * frac_colength(ideal, j, rho)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaCheck {
    pub formula: u64,
    pub direct: u64,
    pub matches: bool,
}

/// The rational-power formula against the rational power of `(I, T^m)`
/// computed directly in `d + 1` variables.
pub fn check_it_rational(ideal: &MonomialIdeal, m: u32, n: u32, r: u32) -> Result<FormulaCheck> {
    let formula = colength_it_rational(ideal, m, n, r)?;
    let direct = adjoin_power(ideal, m).rational_power((n * m + r) as u64, m as u64)?.colength()?;
    Ok(FormulaCheck { formula, direct, matches: formula == direct })
}

/// The closure formula against the closure of `(I, T^m)^n`.
pub fn check_it_closure(ideal: &MonomialIdeal, m: u32, n: u32) -> Result<FormulaCheck> {
    let formula = colength_it_closure(ideal, m, n)?;
    let direct = adjoin_power(ideal, m).power(n).integral_closure()?.colength()?;
    Ok(FormulaCheck { formula, direct, matches: formula == direct })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{default_names, parse_ideal};

    fn id(s: &str) -> MonomialIdeal {
        parse_ideal(s, &default_names(2)).unwrap()
    }

    #[test]
    fn expansion_examples() {
        let names = vec!["x".to_string(), "y".to_string(), "T".to_string()];
        assert_eq!(expand_adjoint_power(&id("x, y"), 2, 1).unwrap().format_with(&names), "x, y, T");
        assert_eq!(expand_adjoint_power(&id("x^2, y"), 2, 2).unwrap().format_with(&names), "x^2, x*T, y, T^2");
        let i = id("x^3, x*y, y^2");
        for n in 1..4 {
            let want = adjoin_power(&i, 1).power(n).integral_closure().unwrap();
            assert_eq!(expand_adjoint_power(&i, 1, n).unwrap(), want);
        }
    }

    #[test]
    fn formula_examples() {
        assert_eq!(colength_it_rational(&id("x, y"), 1, 2, 0).unwrap(), 4);
        assert_eq!(colength_it_rational(&id("x^2, y"), 2, 1, 0).unwrap(), 3);
        assert_eq!(colength_it_closure(&id("x, y"), 1, 2).unwrap(), 4);
        assert_eq!(colength_it_closure(&id("x^2, y"), 2, 1).unwrap(), 3);
        assert_eq!(colength_it_closure(&id("x, y"), 3, 1).unwrap(), 3);
        assert!(check_it_closure(&id("x, y"), 3, 1).unwrap().matches);
        assert!(check_it_rational(&id("x^2, y"), 4, 2, 3).unwrap().matches);
        assert!(colength_it_closure(&id("x^2, y"), 3, 1).is_err());
    }
}
