use serde::{Deserialize, Serialize};

use super::elements::ElementSet;
use super::matrix::Relation;
use crate::error::{Error, Result};

/// Weighted reference group: a non-empty subset of element indices with
/// strictly positive weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedGroup {
    members: Vec<usize>,
    weights: Vec<f64>,
    total: f64,
}

impl WeightedGroup {
    pub fn new(members: Vec<usize>, weights: Vec<f64>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyGroup);
        }
        if members.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: members.len(),
                found: weights.len(),
            });
        }
        for (&member, &weight) in members.iter().zip(&weights) {
            if !(weight.is_finite() && weight > 0.0) {
                return Err(Error::InvalidWeight { member, weight });
            }
        }
        let total = weights.iter().sum();
        Ok(WeightedGroup {
            members,
            weights,
            total,
        })
    }

    pub fn uniform(members: Vec<usize>) -> Result<Self> {
        let w = vec![1.0; members.len()];
        Self::new(members, w)
    }

    /// Every element of a set of size `n`, unit weights.
    pub fn full(n: usize) -> Result<Self> {
        Self::uniform((0..n).collect())
    }

    /// Looks labels up in `elements`; `weights = None` means unit weights.
    pub fn from_labels<S: AsRef<str>>(
        elements: &ElementSet,
        labels: &[S],
        weights: Option<Vec<f64>>,
    ) -> Result<Self> {
        let members = labels
            .iter()
            .map(|l| elements.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        match weights {
            Some(w) => Self::new(members, w),
            None => Self::uniform(members),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.members
            .iter()
            .copied()
            .zip(self.weights.iter().copied())
    }

    /// Weights divided by the total.
    pub fn normalized(&self) -> Vec<f64> {
        self.weights.iter().map(|w| w / self.total).collect()
    }

    pub(crate) fn check_within(&self, n: usize) -> Result<()> {
        match self.members.iter().find(|&&m| m >= n) {
            Some(&index) => Err(Error::IndexOutOfRange { index, len: n }),
            None => Ok(()),
        }
    }
}

/// `ρ̄(a, G) = (1/G) Σ gᵢ m(a, Cᵢ)`. The group may contain `a` itself.
pub fn conditional_ranking<M: Relation + ?Sized>(
    m: &M,
    a: usize,
    g: &WeightedGroup,
) -> Result<f64> {
    m.elements().check_index(a)?;
    g.check_within(m.len())?;
    let s: f64 = g.iter().map(|(c, w)| w * m.value(a, c)).sum();
    Ok(s / g.total())
}

/// Conditional ranking of every element against `g`.
pub fn conditional_rankings<M: Relation + ?Sized>(m: &M, g: &WeightedGroup) -> Result<Vec<f64>> {
    (0..m.len()).map(|a| conditional_ranking(m, a, g)).collect()
}

/// `ρ̄(G₁, G₂)`: double weighted average of `m` over `G₁ × G₂`.
pub fn group_coranking<M: Relation + ?Sized>(
    m: &M,
    g1: &WeightedGroup,
    g2: &WeightedGroup,
) -> Result<f64> {
    g1.check_within(m.len())?;
    g2.check_within(m.len())?;
    let mut s = 0.0;
    for (a, wa) in g1.iter() {
        let row: f64 = g2.iter().map(|(b, wb)| wb * m.value(a, b)).sum();
        s += wa * row;
    }
    Ok(s / (g1.total() * g2.total()))
}
