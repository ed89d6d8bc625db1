//! Multi-criteria aggregation: weighted combination of utilities and
//! co-rankings, Arrow-consistent aggregation of sharp orderings, and
//! imperfect-discrimination coarsening.

mod coarsen;
mod ng;

pub use coarsen::{gauss_coarsen, gauss_coarsen_criteria, threshold_coarsen};
pub use ng::{ng_witness, predicted_class, NgSearch, NgWitness};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::prefs::{AbsoluteRanking, CoRankingMatrix, ElementSet, IndicatorMatrix};

/// Tie-break noise amplitude for [`arrow_aggregate`].
pub const ARROW_NOISE: f64 = 1e-6;

/// Data carried by one criterion.
#[derive(Debug, Clone, PartialEq)]
pub enum Criterion {
    Utilities(Vec<f64>),
    CoRanking(CoRankingMatrix),
}

impl Criterion {
    fn coranking(&self, elements: &ElementSet) -> CoRankingMatrix {
        match self {
            Criterion::CoRanking(m) => m.clone(),
            Criterion::Utilities(r) => {
                CoRankingMatrix::from_fn(elements.clone(), |i, j| r[i] - r[j])
            }
        }
    }
}

/// `K` weighted criteria over a common element set, each with a
/// discrimination threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalCriteria {
    elements: ElementSet,
    weights: Vec<f64>,
    epsilons: Vec<f64>,
    criteria: Vec<Criterion>,
}

impl FractionalCriteria {
    pub fn new(
        elements: ElementSet,
        weights: Vec<f64>,
        epsilons: Vec<f64>,
        criteria: Vec<Criterion>,
    ) -> Result<Self> {
        let k = criteria.len();
        if k == 0 {
            return Err(Error::InvalidCriteria(
                "at least one criterion is required".into(),
            ));
        }
        if weights.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: weights.len(),
            });
        }
        if epsilons.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: epsilons.len(),
            });
        }
        for (member, &weight) in weights.iter().enumerate() {
            if !(weight.is_finite() && weight > 0.0) {
                return Err(Error::InvalidWeight { member, weight });
            }
        }
        if let Some(e) = epsilons.iter().find(|e| !(e.is_finite() && **e >= 0.0)) {
            return Err(Error::InvalidCriteria(format!(
                "threshold {e} must be a non-negative finite number"
            )));
        }
        let n = elements.len();
        for c in &criteria {
            match c {
                Criterion::Utilities(r) if r.len() != n => {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: r.len(),
                    })
                }
                Criterion::Utilities(r) if r.iter().any(|v| !v.is_finite()) => {
                    return Err(Error::InvalidCriteria("utilities must be finite".into()))
                }
                Criterion::CoRanking(m) if m.elements() != &elements => {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: m.len(),
                    })
                }
                _ => {}
            }
        }
        Ok(FractionalCriteria {
            elements,
            weights,
            epsilons,
            criteria,
        })
    }

    /// Utility criteria with zero thresholds.
    pub fn utilities(elements: ElementSet, weights: Vec<f64>, data: Vec<Vec<f64>>) -> Result<Self> {
        let eps = vec![0.0; data.len()];
        Self::new(
            elements,
            weights,
            eps,
            data.into_iter().map(Criterion::Utilities).collect(),
        )
    }

    /// Co-ranking criteria with zero thresholds.
    pub fn corankings(
        elements: ElementSet,
        weights: Vec<f64>,
        data: Vec<CoRankingMatrix>,
    ) -> Result<Self> {
        let eps = vec![0.0; data.len()];
        Self::new(
            elements,
            weights,
            eps,
            data.into_iter().map(Criterion::CoRanking).collect(),
        )
    }

    pub fn with_epsilons(mut self, epsilons: Vec<f64>) -> Result<Self> {
        self.epsilons = epsilons;
        Self::new(self.elements, self.weights, self.epsilons, self.criteria)
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn epsilons(&self) -> &[f64] {
        &self.epsilons
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn k(&self) -> usize {
        self.criteria.len()
    }

    fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Replaces utility criteria by their difference co-rankings.
    pub fn to_corankings(&self) -> Self {
        FractionalCriteria {
            elements: self.elements.clone(),
            weights: self.weights.clone(),
            epsilons: self.epsilons.clone(),
            criteria: self
                .criteria
                .iter()
                .map(|c| Criterion::CoRanking(c.coranking(&self.elements)))
                .collect(),
        }
    }

    /// Weighted combination of per-criterion co-rankings produced by `f`.
    fn combine_with(
        &self,
        mut f: impl FnMut(usize, &Criterion, usize, usize) -> f64,
    ) -> CoRankingMatrix {
        let w_total = self.total_weight();
        CoRankingMatrix::from_fn(self.elements.clone(), |i, j| {
            let s: f64 = self
                .criteria
                .iter()
                .enumerate()
                .map(|(a, c)| self.weights[a] * f(a, c, i, j))
                .sum();
            s / w_total
        })
    }
}

/// `r(A) = (1/W) Σ w^(α) r^(α)(A)`.
pub fn combine_utilities(c: &FractionalCriteria) -> Result<AbsoluteRanking> {
    let n = c.elements.len();
    let mut r = vec![0.0; n];
    for (w, crit) in c.weights.iter().zip(&c.criteria) {
        let Criterion::Utilities(u) = crit else {
            return Err(Error::MixedCriterionKinds);
        };
        for (acc, v) in r.iter_mut().zip(u) {
            *acc += w * v;
        }
    }
    let w_total = c.total_weight();
    r.iter_mut().for_each(|v| *v /= w_total);
    AbsoluteRanking::new(c.elements.clone(), r)
}

/// `ρ(A,B) = (1/W) Σ w^(α) ρ^(α)(A,B)`.
pub fn combine_corankings(c: &FractionalCriteria) -> Result<CoRankingMatrix> {
    if c.criteria
        .iter()
        .any(|x| !matches!(x, Criterion::CoRanking(_)))
    {
        return Err(Error::MixedCriterionKinds);
    }
    Ok(c.combine_with(|_, crit, i, j| match crit {
        Criterion::CoRanking(m) => m.get(i, j),
        Criterion::Utilities(_) => unreachable!(),
    }))
}

/// Weighted vote over sharp orderings with seeded tie-breaking.
///
/// Each weight is perturbed to `w(1 + ε)` with `ε` uniform in
/// `[−ARROW_NOISE, ARROW_NOISE]`, so exact ties between opposing blocs are
/// broken deterministically for a given seed. The output depends on each pair
/// only through that pair's votes, and unanimous strict votes stay strict.
pub fn arrow_aggregate(
    orderings: &[IndicatorMatrix],
    weights: &[f64],
    seed: u64,
) -> Result<CoRankingMatrix> {
    let Some(first) = orderings.first() else {
        return Err(Error::InvalidCriteria(
            "at least one ordering is required".into(),
        ));
    };
    if weights.len() != orderings.len() {
        return Err(Error::DimensionMismatch {
            expected: orderings.len(),
            found: weights.len(),
        });
    }
    for (member, &weight) in weights.iter().enumerate() {
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::InvalidWeight { member, weight });
        }
    }
    if let Some(bad) = orderings.iter().find(|o| o.elements() != first.elements()) {
        return Err(Error::DimensionMismatch {
            expected: first.len(),
            found: bad.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perturbed: Vec<f64> = weights
        .iter()
        .map(|w| w * (1.0 + rng.random_range(-ARROW_NOISE..=ARROW_NOISE)))
        .collect();
    let w_total: f64 = weights.iter().sum();
    Ok(CoRankingMatrix::from_fn(
        first.elements().clone(),
        |i, j| {
            let s: f64 = orderings
                .iter()
                .zip(&perturbed)
                .map(|(o, w)| w * f64::from(o.get(i, j)))
                .sum();
            s / w_total
        },
    ))
}
