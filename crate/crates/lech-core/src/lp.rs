//! Exact phase-one simplex for Newton-polyhedron membership.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

/// Decide whether some convex combination of `points` is componentwise
/// `<= v`, i.e. whether `v` lies in `conv(points) + R_{>=0}^d`.
///
/// Rows `sum_i lambda_i p_ij + s_j = v_j` and `sum_i lambda_i + a = 1`;
/// phase one minimizes the artificial `a` with Bland's rule.
pub fn dominates_hull_point(points: &[Vec<Q>], v: &[Q]) -> bool {
    if points.is_empty() || v.iter().any(|x| x.is_negative()) {
        return false;
    }
    if points.iter().any(|p| p.iter().zip(v).all(|(a, b)| a <= b)) {
        return true;
    }
    let d = v.len();
    let k = points.len();
    let rows = d + 1;
    let cols = k + d + 1;
    let art = k + d;
    let mut t: Vec<Vec<Q>> = vec![vec![Q::zero(); cols + 1]; rows];
    for j in 0..d {
        for (i, p) in points.iter().enumerate() {
            t[j][i] = p[j].clone();
        }
        t[j][k + j] = Q::one();
        t[j][cols] = v[j].clone();
    }
    for cell in t[d].iter_mut().take(k) {
        *cell = Q::one();
    }
    t[d][art] = Q::one();
    t[d][cols] = Q::one();
    let mut basis: Vec<usize> = (0..d).map(|j| k + j).chain(std::iter::once(art)).collect();
    // Reduced costs for minimizing `a`: c_j - c_B B^{-1} A_j.
    let mut cost: Vec<Q> = (0..=cols).map(|c| -t[d][c].clone()).collect();
    cost[art] = Q::zero();
    while let Some(enter) = (0..cols).find(|&c| cost[c].is_negative()) {
        let mut pivot: Option<(usize, Q)> = None;
        for r in 0..rows {
            if t[r][enter].is_positive() {
                let ratio = &t[r][cols] / &t[r][enter];
                let better = match &pivot {
                    None => true,
                    Some((pr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*pr]),
                };
                if better {
                    pivot = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = pivot else {
            break;
        };
        let pv = t[pr][enter].clone();
        let prow: Vec<Q> = t[pr].iter().map(|x| x / &pv).collect();
        for (r, row) in t.iter_mut().enumerate().take(rows) {
            if r != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (cell, p) in row.iter_mut().zip(&prow) {
                    *cell -= &f * p;
                }
            }
        }
        t[pr] = prow;
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for c in 0..=cols {
                let delta = &f * &t[pr][c];
                cost[c] -= delta;
            }
        }
        basis[pr] = enter;
    }
    // The objective value is -cost[rhs].
    cost[cols].is_zero()
}
