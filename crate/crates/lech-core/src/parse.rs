//! Text form of monomial ideals: `x^2, x*y, y^3`.
//!
//! Variables are named by the ring; the indexed aliases `x0`, `x1`, ...
//! always refer to coordinates by position.

use crate::error::{input, Result};
use crate::monomial::{canonicalize, MonomialIdeal};

/// Names used for a free polynomial ring in `n` variables.
pub fn default_names(n: usize) -> Vec<String> {
    match n {
        0..=3 => ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect(),
        4 => ["x", "y", "z", "t"].iter().map(|s| s.to_string()).collect(),
        _ => indexed_names(n),
    }
}

pub fn indexed_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{}", i)).collect()
}

fn lookup(name: &str, names: &[String]) -> Option<usize> {
    if let Some(i) = names.iter().position(|n| n == name) {
        return Some(i);
    }
    let idx: usize = name.strip_prefix('x')?.parse().ok()?;
    (idx < names.len()).then_some(idx)
}

/// Parse a single monomial into an exponent vector.
pub fn parse_monomial(text: &str, names: &[String]) -> Result<Vec<u32>> {
    let mut exps = vec![0u32; names.len()];
    let text = text.trim();
    if text == "1" {
        return Ok(exps);
    }
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let e: u32 = e
                    .trim()
                    .parse()
                    .map_err(|_| crate::LechError::Input(format!("bad exponent in `{}`", factor)))?;
                (n.trim(), e)
            }
            None => (factor, 1),
        };
        if name.is_empty() {
            return input(format!("empty factor in monomial `{}`", text));
        }
        let Some(i) = lookup(name, names) else {
            return input(format!("unknown variable `{}` (ring variables: {})", name, names.join(", ")));
        };
        exps[i] += exp;
    }
    Ok(exps)
}

/// Parse a comma-separated generator list. `0` (or an empty list) is the
/// zero ideal and `1` the unit ideal.
pub fn parse_ideal(text: &str, names: &[String]) -> Result<MonomialIdeal> {
    let mut body = text.trim();
    if body.starts_with('(') && body.ends_with(')') {
        body = body[1..body.len() - 1].trim();
    }
    if body.is_empty() || body == "0" {
        return Ok(MonomialIdeal::zero(names.len()));
    }
    let gens = body
        .split(',')
        .map(|g| parse_monomial(g, names))
        .collect::<Result<Vec<_>>>()?;
    canonicalize(gens, names.len())
}

pub fn format_monomial(exps: &[u32], names: &[String]) -> String {
    let factors: Vec<String> = exps
        .iter()
        .zip(names)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{}^{}", n, e) })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

pub fn format_ideal(ideal: &MonomialIdeal, names: &[String]) -> String {
    if ideal.is_zero() {
        return "0".to_string();
    }
    ideal
        .gens()
        .iter()
        .map(|g| format_monomial(g, names))
        .collect::<Vec<_>>()
        .join(", ")
}
