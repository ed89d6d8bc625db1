use super::{Criterion, FractionalCriteria};
use crate::prefs::CoRankingMatrix;
use crate::special::erf;

/// Hard threshold: differences within `eps` are not perceived.
fn threshold(d: f64, eps: f64) -> f64 {
    if d.abs() > eps {
        d
    } else {
        0.0
    }
}

fn criterion_value(c: &Criterion, i: usize, j: usize) -> f64 {
    match c {
        Criterion::Utilities(r) => r[i] - r[j],
        Criterion::CoRanking(m) => m.get(i, j),
    }
}

/// Coarsens every criterion with its own threshold, then combines.
///
/// Utility criteria are coarsened on their differences, co-ranking criteria
/// on their values.
pub fn threshold_coarsen(c: &FractionalCriteria) -> CoRankingMatrix {
    c.combine_with(|a, crit, i, j| threshold(criterion_value(crit, i, j), c.epsilons[a]))
}

/// Smooth coarsening `ρ₀ · erf(|ρ₀|/ε)^k`.
///
/// Odd in `ρ₀`, never larger in magnitude, and the identity for `k = 0`.
/// A non-positive `ε` is the perfect-discrimination limit and also returns
/// `ρ₀`.
pub fn gauss_coarsen(rho0: f64, epsilon: f64, k: f64) -> f64 {
    if k == 0.0 || epsilon <= 0.0 {
        return rho0;
    }
    rho0 * erf(rho0.abs() / epsilon).powf(k)
}

/// Per-criterion Gaussian coarsening with the criterion thresholds as `ε`.
pub fn gauss_coarsen_criteria(c: &FractionalCriteria, k: f64) -> CoRankingMatrix {
    c.combine_with(|a, crit, i, j| gauss_coarsen(criterion_value(crit, i, j), c.epsilons[a], k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefs::{find_intransitive_triplets, ElementSet, TripletClass};

    #[test]
    fn threshold_passes_large_differences() {
        assert_eq!(threshold(2.0, 1.5), 2.0);
        assert_eq!(threshold(-1.5, 1.5), 0.0);
    }

    #[test]
    fn gauss_limits() {
        assert_eq!(gauss_coarsen(0.0, 1.0, 1.0), 0.0);
        assert_eq!(gauss_coarsen(0.37, 1.0, 0.0), 0.37);
        assert_eq!(gauss_coarsen(-2.0, 0.5, 3.0), -gauss_coarsen(2.0, 0.5, 3.0));
    }

    #[test]
    fn two_thresholds_make_a_strict_cycle() {
        let els = ElementSet::new(["A", "B", "C"]).unwrap();
        let c = FractionalCriteria::utilities(
            els,
            vec![1.0, 1.0],
            vec![vec![0.0, -0.9, -1.8], vec![0.0, 0.2, 0.4]],
        )
        .unwrap()
        .with_epsilons(vec![1.0, 0.1])
        .unwrap();
        let m = threshold_coarsen(&c);
        // A ≺ B ≺ C ≺ A
        assert!(m.get(0, 1) < 0.0 && m.get(1, 2) < 0.0 && m.get(2, 0) < 0.0);
        assert_eq!(
            find_intransitive_triplets(&m.indicator(1e-12)).overall,
            TripletClass::Strict
        );
    }
}
