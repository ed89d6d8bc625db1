use std::fmt;

use serde::{Deserialize, Serialize};

use super::closure::strongly_connected;
use super::matrix::{AbsoluteRanking, CoRankingMatrix, IndicatorMatrix, Relation};
use crate::error::{Error, Result};

/// Cyclic sum `δ(c, b, a) = m(c, b) + m(b, a) + m(a, c)`.
///
/// Zero for every triplet exactly when the relation derives from an
/// absolute ranking.
pub fn triplet_delta<M: Relation + ?Sized>(m: &M, a: usize, b: usize, c: usize) -> f64 {
    m.value(c, b) + m.value(b, a) + m.value(a, c)
}

/// Triplet with the largest `|δ|` over `i < j < k`, or `None` for n < 3.
pub fn worst_triplet<M: Relation + ?Sized>(m: &M) -> Option<((usize, usize, usize), f64)> {
    let n = m.len();
    let mut best: Option<((usize, usize, usize), f64)> = None;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let d = triplet_delta(m, i, j, k);
                if best.is_none_or(|(_, b)| d.abs() > b.abs()) {
                    best = Some(((i, j, k), d));
                }
            }
        }
    }
    best
}

/// Recovers `r` with `r(first) = 0` and `r(b) = ρ(b, first)`, provided every
/// triplet cycle sum is within `tol`.
pub fn absolute_ranking_from(m: &CoRankingMatrix, tol: f64) -> Result<AbsoluteRanking> {
    if let Some((triplet, delta)) = worst_triplet(m) {
        if delta.abs() > tol {
            return Err(Error::NotAbsolutelyTransitive { triplet, delta });
        }
    }
    let values = (0..m.len()).map(|b| m.get(b, 0)).collect();
    AbsoluteRanking::new(m.elements().clone(), values)
}

/// Intransitivity classes, weakest first so that `Ord` gives precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TripletClass {
    None,
    Weak,
    SemiWeak,
    SemiStrict,
    Strict,
}

impl TripletClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TripletClass::None => "none",
            TripletClass::Weak => "weak",
            TripletClass::SemiWeak => "semi-weak",
            TripletClass::SemiStrict => "semi-strict",
            TripletClass::Strict => "strict",
        }
    }
}

impl fmt::Display for TripletClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripletRecord {
    pub indices: (usize, usize, usize),
    pub delta: f64,
    pub class: TripletClass,
}

/// Classifies one triplet of sharp preferences.
///
/// Walking the cycle `i → j → k → i`, the strict edges that agree in
/// direction decide the class: three form a strict cycle, two form a chain
/// closed by an indifference (semi-weak), and a lone strict edge between
/// two indifferences is weak. Any disagreement in direction is transitive.
pub fn classify_triplet(ind: &IndicatorMatrix, i: usize, j: usize, k: usize) -> TripletClass {
    let edges = [ind.get(i, j), ind.get(j, k), ind.get(k, i)];
    let pos = edges.iter().filter(|&&e| e > 0).count();
    let neg = edges.iter().filter(|&&e| e < 0).count();
    if pos > 0 && neg > 0 {
        return TripletClass::None;
    }
    match pos + neg {
        3 => TripletClass::Strict,
        2 => TripletClass::SemiWeak,
        1 => TripletClass::Weak,
        _ => TripletClass::None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitivityReport {
    /// One record per unordered triplet `i < j < k`.
    pub triplets: Vec<TripletRecord>,
    /// Groups of elements joined by strict cycles that contain no strict
    /// triplet (only populated when the overall class is semi-strict).
    pub semi_strict_components: Vec<Vec<usize>>,
    pub overall: TripletClass,
}

impl TransitivityReport {
    pub fn count(&self, class: TripletClass) -> usize {
        self.triplets.iter().filter(|t| t.class == class).count()
    }

    pub fn intransitive(&self) -> impl Iterator<Item = &TripletRecord> {
        self.triplets
            .iter()
            .filter(|t| t.class != TripletClass::None)
    }
}

/// Scans all triplets and longer strict cycles.
///
/// A strict cycle longer than three with no strict triplet shows up as a
/// strongly connected component of the strict-preference graph; if any
/// triplet is strict, that component is already accounted for.
pub fn find_intransitive_triplets(ind: &IndicatorMatrix) -> TransitivityReport {
    let n = ind.len();
    let mut triplets = Vec::with_capacity(n * n.saturating_sub(1) * n.saturating_sub(2) / 6);
    let mut overall = TripletClass::None;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let class = classify_triplet(ind, i, j, k);
                overall = overall.max(class);
                triplets.push(TripletRecord {
                    indices: (i, j, k),
                    delta: triplet_delta(ind, i, j, k),
                    class,
                });
            }
        }
    }
    let mut semi_strict_components = Vec::new();
    if overall < TripletClass::Strict {
        semi_strict_components = strongly_connected(n, |a, b| ind.get(a, b) > 0)
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect();
        if !semi_strict_components.is_empty() {
            overall = TripletClass::SemiStrict;
        }
    }
    TransitivityReport {
        triplets,
        semi_strict_components,
        overall,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefs::elements::ElementSet;

    fn cycle(n: usize) -> IndicatorMatrix {
        IndicatorMatrix::from_fn(ElementSet::indexed(n).unwrap(), |i, j| {
            if j == i + 1 {
                -1
            } else if i == 0 && j == n - 1 {
                1
            } else {
                0
            }
        })
    }

    #[test]
    fn rock_paper_scissors_is_strict() {
        let r = find_intransitive_triplets(&cycle(3));
        assert_eq!(r.overall, TripletClass::Strict);
        assert_eq!(r.triplets[0].delta.abs(), 3.0);
    }

    #[test]
    fn four_cycle_with_indifferent_chords_is_semi_strict() {
        let r = find_intransitive_triplets(&cycle(4));
        assert_eq!(r.overall, TripletClass::SemiStrict);
        assert_eq!(r.semi_strict_components, vec![vec![0, 1, 2, 3]]);
        assert_eq!(r.count(TripletClass::SemiWeak), 4);
    }

    #[test]
    fn chain_is_transitive() {
        let ind = IndicatorMatrix::from_fn(ElementSet::indexed(5).unwrap(), |_, _| -1);
        let r = find_intransitive_triplets(&ind);
        assert_eq!(r.overall, TripletClass::None);
        assert_eq!(r.triplets.len(), 10);
    }

    #[test]
    fn absolute_ranking_round_trip() {
        let r = AbsoluteRanking::new(ElementSet::indexed(3).unwrap(), vec![0.0, 1.0, 3.0]).unwrap();
        let back = absolute_ranking_from(&r.coranking(), 1e-9).unwrap();
        assert_eq!(back.values, vec![0.0, 1.0, 3.0]);
        assert!(matches!(
            absolute_ranking_from(&cycle(3).as_coranking(), 1e-9),
            Err(Error::NotAbsolutelyTransitive { .. })
        ));
    }
}
