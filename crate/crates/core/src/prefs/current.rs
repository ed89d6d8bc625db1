use serde::{Deserialize, Serialize};

use super::closure::transitive_closure;
use super::matrix::{sign_band, IndicatorMatrix, Relation, Tolerances};
use crate::error::{Error, Result};

/// Primary and secondary current rankings of every element against the whole
/// system, plus the range sets (closure classes, top first).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurrentRankingMap {
    pub r_star: Vec<f64>,
    pub r_star_star: Vec<f64>,
    pub range_sets: Vec<Vec<usize>>,
    /// Mean `R*` of each range set, in range-set order.
    pub range_means: Vec<f64>,
    /// True when some lower range set reaches the `R*` of a higher one.
    pub interleaved: bool,
    /// `sqrt(Σ fᵢ (R* − R**)²)` with normalised weights.
    pub omega: f64,
}

fn check_weights(weights: &[f64], n: usize) -> Result<f64> {
    if weights.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: weights.len(),
        });
    }
    for (i, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            return Err(Error::DisconnectedSystem(i));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::InvalidWeight {
                member: i,
                weight: w,
            });
        }
    }
    Ok(weights.iter().sum())
}

/// Weighted indicator ranking `(1/G) Σ gᵢ sign(m(a, Cᵢ))` of every element.
fn indicator_rankings(sign: impl Fn(usize, usize) -> i8, weights: &[f64], total: f64) -> Vec<f64> {
    let n = weights.len();
    (0..n)
        .map(|a| {
            let s: f64 = (0..n).map(|c| weights[c] * f64::from(sign(a, c))).sum();
            s / total
        })
        .collect()
}

/// `R*` only; cheaper than the full map when range sets are not needed.
pub fn primary_rankings<M: Relation + ?Sized>(
    m: &M,
    weights: &[f64],
    zero: f64,
) -> Result<Vec<f64>> {
    let total = check_weights(weights, m.len())?;
    Ok(indicator_rankings(
        |a, c| sign_band(m.value(a, c), zero),
        weights,
        total,
    ))
}

/// `R*` and `R**` with the secondary relation `R″ = sign(R*(a) − R*(b))`.
pub fn primary_secondary<M: Relation + ?Sized>(
    m: &M,
    weights: &[f64],
    zero: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let total = check_weights(weights, m.len())?;
    let r1 = indicator_rankings(|a, c| sign_band(m.value(a, c), zero), weights, total);
    let r2 = indicator_rankings(|a, c| sign_band(r1[a] - r1[c], zero), weights, total);
    Ok((r1, r2))
}

/// `Ω = sqrt(Σ fᵢ (R*ᵢ − R**ᵢ)²)`, `f` = weights normalised to one.
pub fn omega_from(r1: &[f64], r2: &[f64], weights: &[f64]) -> f64 {
    let total: f64 = weights.iter().sum();
    let s: f64 = r1
        .iter()
        .zip(r2)
        .zip(weights)
        .map(|((a, b), w)| w / total * (a - b).powi(2))
        .sum();
    s.sqrt()
}

pub fn omega<M: Relation + ?Sized>(m: &M, weights: &[f64], zero: f64) -> Result<f64> {
    let (r1, r2) = primary_secondary(m, weights, zero)?;
    Ok(omega_from(&r1, &r2, weights))
}

/// Full current-ranking map. Weights must be positive for every element.
pub fn current_rankings<M: Relation + ?Sized>(
    m: &M,
    weights: &[f64],
    tol: &Tolerances,
) -> Result<CurrentRankingMap> {
    let (r_star, r_star_star) = primary_secondary(m, weights, tol.zero)?;
    let ind = IndicatorMatrix::from_fn(m.elements().clone(), |i, j| {
        sign_band(m.value(i, j), tol.zero)
    });
    let range_sets = transitive_closure(&ind).classes;
    let range_means = range_sets
        .iter()
        .map(|s| s.iter().map(|&i| r_star[i]).sum::<f64>() / s.len() as f64)
        .collect();
    let mut interleaved = false;
    let mut floor = f64::INFINITY;
    for s in &range_sets {
        let hi = s
            .iter()
            .map(|&i| r_star[i])
            .fold(f64::NEG_INFINITY, f64::max);
        let lo = s.iter().map(|&i| r_star[i]).fold(f64::INFINITY, f64::min);
        if hi >= floor - tol.zero {
            interleaved = true;
        }
        floor = floor.min(lo);
    }
    let omega = omega_from(&r_star, &r_star_star, weights);
    Ok(CurrentRankingMap {
        r_star,
        r_star_star,
        range_sets,
        range_means,
        interleaved,
        omega,
    })
}
