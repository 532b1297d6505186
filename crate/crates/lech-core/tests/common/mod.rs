#![allow(dead_code)]

use lech_core::MonomialIdeal;
use proptest::prelude::*;

/// m-primary monomial ideals in `d` variables with pure powers at most
/// `top` and a few mixed generators below them.
pub fn primary_ideal(d: usize, top: u32) -> impl Strategy<Value = MonomialIdeal> {
    let powers = proptest::collection::vec(1..=top, d);
    let extras = proptest::collection::vec(proptest::collection::vec(0..top, d), 0..4);
    (powers, extras).prop_map(move |(p, extra)| {
        let mut gens: Vec<Vec<u32>> = (0..d)
            .map(|i| {
                let mut v = vec![0; d];
                v[i] = p[i];
                v
            })
            .collect();
        gens.extend(extra.into_iter().filter(|g| g.iter().any(|&e| e > 0)));
        MonomialIdeal::new(gens, d).unwrap()
    })
}

/// Points of the bounding box of `ideal` that lie outside it.
pub fn brute_outside(ideal: &MonomialIdeal) -> Vec<Vec<u32>> {
    let bounds = ideal.maxima();
    let d = ideal.dim();
    let mut out = Vec::new();
    let mut v = vec![0u32; d];
    loop {
        if !ideal.gens().iter().any(|g| g.iter().zip(&v).all(|(a, b)| a <= b)) {
            out.push(v.clone());
        }
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            v[i] += 1;
            if v[i] < bounds[i] {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

/// Twice the area under the lower convex hull of the generators of a
/// two-variable m-primary ideal.
pub fn hull_multiplicity_2d(ideal: &MonomialIdeal) -> u64 {
    let mut pts: Vec<(i64, i64)> = ideal.gens().iter().map(|g| (g[0] as i64, g[1] as i64)).collect();
    pts.sort();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    // The chain runs from (0, b) down to (a, 0); twice the trapezoid area.
    hull.windows(2).map(|w| ((w[1].0 - w[0].0) * (w[0].1 + w[1].1)) as u64).sum()
}
