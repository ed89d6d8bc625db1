//! Two-player zero-sum games whose payoffs are co-rankings.
//!
//! Player 1 receives `ρ(i, j)` when it plays `i` against `j`; player 2
//! receives `ρ(j, i)`. A mixed strategy is a weighted reference group with
//! total weight one, so the Nash condition reads: every pure strategy in the
//! support attains the maximal conditional ranking against the opponent's
//! mixture.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prefs::CoRankingMatrix;

/// Tolerance on `Σ p = 1` for mixed strategies.
pub const PROBABILITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Game {
    coranking: CoRankingMatrix,
    s1: Vec<usize>,
    s2: Vec<usize>,
}

impl Game {
    /// Strategy sets may overlap; the matrix must be complete over every
    /// element that appears in either set. Pairs the game rules leave
    /// undefined (two strategies of the same player) are entered as `0`;
    /// with disjoint sets they are never read.
    pub fn new(coranking: CoRankingMatrix, s1: Vec<usize>, s2: Vec<usize>) -> Result<Self> {
        for set in [&s1, &s2] {
            if set.is_empty() {
                return Err(Error::EmptyGroup);
            }
            for &i in set {
                coranking.elements().check_index(i)?;
            }
            let mut sorted = set.clone();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateLabel(
                    coranking.elements().label(w[0]).to_string(),
                ));
            }
        }
        Ok(Game { coranking, s1, s2 })
    }

    /// Both players choose from every element.
    pub fn symmetric(coranking: CoRankingMatrix) -> Self {
        let all: Vec<usize> = (0..coranking.len()).collect();
        Game {
            coranking,
            s1: all.clone(),
            s2: all,
        }
    }

    pub fn from_labels<S: AsRef<str>>(
        coranking: CoRankingMatrix,
        s1: &[S],
        s2: &[S],
    ) -> Result<Self> {
        let els = coranking.elements();
        let look = |s: &[S]| {
            s.iter()
                .map(|l| els.index_of(l.as_ref()))
                .collect::<Result<Vec<_>>>()
        };
        let (a, b) = (look(s1)?, look(s2)?);
        Self::new(coranking, a, b)
    }

    pub fn coranking(&self) -> &CoRankingMatrix {
        &self.coranking
    }

    pub fn s1(&self) -> &[usize] {
        &self.s1
    }

    pub fn s2(&self) -> &[usize] {
        &self.s2
    }

    /// The same game seen from player 2.
    pub fn swapped(&self) -> Game {
        Game {
            coranking: self.coranking.clone(),
            s1: self.s2.clone(),
            s2: self.s1.clone(),
        }
    }

    fn check(&self, p: &MixedStrategy, set: &[usize]) -> Result<()> {
        match p.support.iter().find(|i| !set.contains(i)) {
            Some(&i) => Err(Error::StrategyOutsideAvailableSet(
                self.coranking.elements().label(i).to_string(),
            )),
            None => Ok(()),
        }
    }

    /// Conditional ranking of pure strategy `i` against mixture `q`.
    fn value_against(&self, i: usize, q: &MixedStrategy) -> f64 {
        q.iter().map(|(j, pj)| pj * self.coranking.get(i, j)).sum()
    }
}

/// Probability weights over a support of element indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedStrategy {
    support: Vec<usize>,
    probabilities: Vec<f64>,
}

impl MixedStrategy {
    pub fn new(support: Vec<usize>, probabilities: Vec<f64>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::EmptyGroup);
        }
        if support.len() != probabilities.len() {
            return Err(Error::DimensionMismatch {
                expected: support.len(),
                found: probabilities.len(),
            });
        }
        if let Some(p) = probabilities.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
            return Err(Error::InvalidProbabilities(format!(
                "support probability {p} must be positive"
            )));
        }
        let sum: f64 = probabilities.iter().sum();
        if (sum - 1.0).abs() > PROBABILITY_TOL {
            return Err(Error::InvalidProbabilities(format!(
                "probabilities sum to {sum}"
            )));
        }
        Ok(MixedStrategy {
            support,
            probabilities,
        })
    }

    pub fn pure(i: usize) -> Self {
        MixedStrategy {
            support: vec![i],
            probabilities: vec![1.0],
        }
    }

    pub fn uniform(support: Vec<usize>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::EmptyGroup);
        }
        let p = 1.0 / support.len() as f64;
        let probabilities = vec![p; support.len()];
        Ok(MixedStrategy {
            support,
            probabilities,
        })
    }

    /// From non-negative weights over `set`; zero entries leave the support
    /// and the rest are normalised.
    pub fn from_weights(set: &[usize], weights: &[f64]) -> Result<Self> {
        if set.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: set.len(),
                found: weights.len(),
            });
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidProbabilities(
                "weights must be non-negative".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::EmptyGroup);
        }
        let (support, probabilities) = set
            .iter()
            .zip(weights)
            .filter(|(_, &w)| w > 0.0)
            .map(|(&i, &w)| (i, w / total))
            .unzip();
        Ok(MixedStrategy {
            support,
            probabilities,
        })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.support
            .iter()
            .copied()
            .zip(self.probabilities.iter().copied())
    }

    /// Probability of element `i` (zero off the support).
    pub fn probability(&self, i: usize) -> f64 {
        self.iter().find(|&(j, _)| j == i).map_or(0.0, |(_, p)| p)
    }
}

/// `Σᵢ Σⱼ p1ᵢ p2ⱼ ρ(Cᵢ, Cⱼ)`, the expected payoff to player 1.
pub fn payoff(g: &Game, p1: &MixedStrategy, p2: &MixedStrategy) -> Result<f64> {
    g.check(p1, &g.s1)?;
    g.check(p2, &g.s2)?;
    Ok(p1.iter().map(|(i, pi)| pi * g.value_against(i, p2)).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NashCheck {
    pub equilibrium: bool,
    /// Largest shortfall of a support strategy below the best available one.
    pub max_violation: f64,
    /// Best conditional ranking available to each player.
    pub best_value_1: f64,
    pub best_value_2: f64,
}

fn shortfall(g: &Game, set: &[usize], p: &MixedStrategy, q: &MixedStrategy) -> (f64, f64) {
    let best = set
        .iter()
        .map(|&i| g.value_against(i, q))
        .fold(f64::NEG_INFINITY, f64::max);
    let worst_support = p
        .support
        .iter()
        .map(|&i| g.value_against(i, q))
        .fold(f64::INFINITY, f64::min);
    (best, (best - worst_support).max(0.0))
}

/// Checks the Nash condition for both players within `tol`.
pub fn verify_nash(
    g: &Game,
    p1: &MixedStrategy,
    p2: &MixedStrategy,
    tol: f64,
) -> Result<NashCheck> {
    g.check(p1, &g.s1)?;
    g.check(p2, &g.s2)?;
    let (best_value_1, v1) = shortfall(g, &g.s1, p1, p2);
    let (best_value_2, v2) = shortfall(g, &g.s2, p2, p1);
    let max_violation = v1.max(v2);
    Ok(NashCheck {
        equilibrium: max_violation <= tol,
        max_violation,
        best_value_1,
        best_value_2,
    })
}

/// Sum of both players' best-response gains against the opponent's mixture.
pub fn exploitability(g: &Game, p1: &MixedStrategy, p2: &MixedStrategy) -> Result<f64> {
    let v = payoff(g, p1, p2)?;
    let (b1, _) = shortfall(g, &g.s1, p1, p2);
    let (b2, _) = shortfall(g, &g.s2, p2, p1);
    Ok((b1 - v) + (b2 + v))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NashSolution {
    pub p1: MixedStrategy,
    pub p2: MixedStrategy,
    pub value: f64,
    pub iterations: u64,
    pub exploitability: f64,
    pub check: NashCheck,
}

pub const DEFAULT_TOLERANCE: f64 = 1e-3;
pub const DEFAULT_MAX_ITERATIONS: u64 = 1_000_000;

const CHECK_EVERY: u64 = 100;

fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate().skip(1) {
        if x > v[best] {
            best = i;
        }
    }
    best
}

/// Fictitious play with alternating best responses.
///
/// Player 1 best-responds to player 2's empirical mixture, then player 2 to
/// player 1's updated mixture; ties go to the lowest index. Every 100 rounds
/// the empirical mixtures are tested: once the duality gap is below `tol`,
/// strategies whose conditional ranking falls more than `tol` short of the
/// best are dropped (they were played only early on), and the result is
/// returned if it passes [`verify_nash`].
pub fn solve_nash(g: &Game, tol: f64, max_iterations: u64) -> Result<NashSolution> {
    let (n1, n2) = (g.s1.len(), g.s2.len());
    let rho = |i: usize, j: usize| g.coranking.get(i, j);
    let mut c1 = vec![0u64; n1];
    let mut c2 = vec![0u64; n2];
    // u1[i]: cumulative payoff of s1[i] against player 2's plays; u2 likewise.
    let mut u1 = vec![0.0; n1];
    let mut u2 = vec![0.0; n2];
    let mut gap = f64::INFINITY;
    let mut t = 0u64;
    while t < max_iterations {
        t += 1;
        let i = argmax(&u1);
        c1[i] += 1;
        for (j, u) in u2.iter_mut().enumerate() {
            *u += rho(g.s2[j], g.s1[i]);
        }
        let j = argmax(&u2);
        c2[j] += 1;
        for (k, u) in u1.iter_mut().enumerate() {
            *u += rho(g.s1[k], g.s2[j]);
        }
        if !t.is_multiple_of(CHECK_EVERY) && t != max_iterations {
            continue;
        }
        let x =
            MixedStrategy::from_weights(&g.s1, &c1.iter().map(|&c| c as f64).collect::<Vec<_>>())?;
        let y =
            MixedStrategy::from_weights(&g.s2, &c2.iter().map(|&c| c as f64).collect::<Vec<_>>())?;
        gap = exploitability(g, &x, &y)?;
        if gap >= tol {
            continue;
        }
        let p1 = prune(g, &g.s1, &x, &y, tol)?;
        let p2 = prune(g, &g.s2, &y, &x, tol)?;
        let check = verify_nash(g, &p1, &p2, tol)?;
        if check.equilibrium {
            let value = payoff(g, &p1, &p2)?;
            let exploitability = exploitability(g, &p1, &p2)?;
            return Ok(NashSolution {
                p1,
                p2,
                value,
                iterations: t,
                exploitability,
                check,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: t,
        exploitability: gap,
    })
}

fn prune(
    g: &Game,
    set: &[usize],
    p: &MixedStrategy,
    q: &MixedStrategy,
    tol: f64,
) -> Result<MixedStrategy> {
    let (best, _) = shortfall(g, set, p, q);
    let weights: Vec<f64> = p
        .iter()
        .map(|(i, pi)| {
            if g.value_against(i, q) >= best - tol {
                pi
            } else {
                0.0
            }
        })
        .collect();
    MixedStrategy::from_weights(&p.support, &weights)
}
