//! Elements with uncertain rank: probability distributions over rank levels,
//! quantum preference states and the diagonal preference operator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prefs::{ElementSet, IndicatorMatrix, WeightedGroup};

/// Normalisation tolerance for probabilities and amplitudes.
pub const NORM_TOL: f64 = 1e-12;

/// Probabilities `Pᵢ` over rank levels `1..=k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankDistribution {
    p: Vec<f64>,
}

impl RankDistribution {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidProbabilities(
                "at least one level is required".into(),
            ));
        }
        if let Some(x) = p.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::InvalidProbabilities(format!(
                "probability {x} is negative or not finite"
            )));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidProbabilities(format!(
                "probabilities sum to {sum}"
            )));
        }
        Ok(RankDistribution { p })
    }

    /// Uniform over the given 1-based levels of a `k`-level scale.
    pub fn uniform_over(k: usize, levels: &[usize]) -> Result<Self> {
        let mut p = vec![0.0; k];
        for &l in levels {
            if l == 0 || l > k {
                return Err(Error::IndexOutOfRange { index: l, len: k });
            }
            p[l - 1] += 1.0 / levels.len() as f64;
        }
        Self::new(p)
    }

    /// Certain rank `level` (1-based) on a `k`-level scale.
    pub fn point(k: usize, level: usize) -> Result<Self> {
        Self::uniform_over(k, &[level])
    }

    pub fn k(&self) -> usize {
        self.p.len()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }
}

/// `R(A, B) = Σ_{i>j} Pᵢ(A)Pⱼ(B) − Σ_{i<j} Pᵢ(A)Pⱼ(B)`.
pub fn rank_dist_coranking(a: &RankDistribution, b: &RankDistribution) -> Result<f64> {
    if a.k() != b.k() {
        return Err(Error::DimensionMismatch {
            expected: a.k(),
            found: b.k(),
        });
    }
    // Running mass of B strictly below / above level i.
    let mut below = 0.0;
    let total_b: f64 = b.p.iter().sum();
    let mut s = 0.0;
    for i in 0..a.k() {
        let above = total_b - below - b.p[i];
        s += a.p[i] * (below - above);
        below += b.p[i];
    }
    Ok(s)
}

/// Rank levels as pseudo-elements `"1"..="k"` with their sharp order.
pub fn level_indicator(k: usize) -> IndicatorMatrix {
    let els = ElementSet::new((1..=k).map(|i| i.to_string())).expect("levels are distinct");
    IndicatorMatrix::from_fn(els, |i, j| (i as i64 - j as i64).signum() as i8)
}

/// Group over the levels with weights `Pᵢ`; zero-probability levels are left
/// out.
pub fn to_weighted_group(d: &RankDistribution) -> WeightedGroup {
    let (members, weights): (Vec<usize>, Vec<f64>) =
        d.p.iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(i, &p)| (i, p))
            .unzip();
    WeightedGroup::new(members, weights).expect("a valid distribution has positive mass")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Superposition,
    /// Randomised phases; only the moduli are meaningful.
    Mixed,
}

/// Amplitudes over preference basis states (`A≻B, A≺B` or `A≻B, A∼B, A≺B`).
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumPreferenceState {
    amplitudes: Vec<Complex64>,
    kind: StateKind,
}

impl QuantumPreferenceState {
    pub fn new(amplitudes: Vec<Complex64>, kind: StateKind) -> Result<Self> {
        if !(2..=3).contains(&amplitudes.len()) {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: amplitudes.len(),
            });
        }
        let norm: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidProbabilities(format!(
                "squared amplitudes sum to {norm}"
            )));
        }
        Ok(QuantumPreferenceState { amplitudes, kind })
    }

    /// Mixed state from basis probabilities.
    pub fn mixed(probabilities: &[f64]) -> Result<Self> {
        if probabilities.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::InvalidProbabilities(
                "probabilities must be non-negative".into(),
            ));
        }
        let amps = probabilities
            .iter()
            .map(|p| Complex64::new(p.sqrt(), 0.0))
            .collect();
        Self::new(amps, StateKind::Mixed)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }
}

/// Diagonal preference operator in the preference basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceOperator {
    diagonal: Vec<f64>,
}

impl PreferenceOperator {
    /// `diag(+1, −1)`.
    pub fn strict() -> Self {
        PreferenceOperator {
            diagonal: vec![1.0, -1.0],
        }
    }

    /// `diag(+1, 0, −1)`.
    pub fn weak() -> Self {
        PreferenceOperator {
            diagonal: vec![1.0, 0.0, -1.0],
        }
    }

    pub fn for_dim(dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(Self::strict()),
            3 => Ok(Self::weak()),
            _ => Err(Error::DimensionMismatch {
                expected: 2,
                found: dim,
            }),
        }
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }
}

/// `⟨Ψ|R̂|Ψ⟩ = Σ Rᵢ |cᵢ|²`; identical for superposed and mixed states.
pub fn expectation(state: &QuantumPreferenceState, op: &PreferenceOperator) -> Result<f64> {
    if state.dim() != op.diagonal.len() {
        return Err(Error::DimensionMismatch {
            expected: op.diagonal.len(),
            found: state.dim(),
        });
    }
    Ok(state
        .amplitudes
        .iter()
        .zip(&op.diagonal)
        .map(|(c, r)| r * c.norm_sqr())
        .sum())
}

/// Amplitudes `c_{i₁…iₙ}` of `n ≤ 3` elements over `k` rank levels each,
/// stored with the first element's level varying slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct JointRankState {
    k: usize,
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl JointRankState {
    pub fn new(k: usize, n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: n,
            });
        }
        let expected = k.pow(n as u32);
        if k == 0 || amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: amplitudes.len(),
            });
        }
        let norm: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidProbabilities(format!(
                "squared amplitudes sum to {norm}"
            )));
        }
        Ok(JointRankState { k, n, amplitudes })
    }

    /// Product state of independent distributions (real amplitudes).
    pub fn separable(dists: &[RankDistribution]) -> Result<Self> {
        let Some(first) = dists.first() else {
            return Err(Error::EmptyGroup);
        };
        let k = first.k();
        if let Some(d) = dists.iter().find(|d| d.k() != k) {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: d.k(),
            });
        }
        let n = dists.len();
        let amps = (0..k.pow(n as u32))
            .map(|flat| {
                let p: f64 = levels(flat, k, n)
                    .iter()
                    .zip(dists)
                    .map(|(&l, d)| d.p[l])
                    .product();
                Complex64::new(p.sqrt(), 0.0)
            })
            .collect();
        Self::new(k, n, amps)
    }

    /// Joint probabilities `P_{ij}` of elements `a` and `b`, marginalising
    /// over the rest.
    pub fn pair_marginal(&self, a: usize, b: usize) -> Result<Vec<Vec<f64>>> {
        for x in [a, b] {
            if x >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    len: self.n,
                });
            }
        }
        let mut p = vec![vec![0.0; self.k]; self.k];
        for (flat, c) in self.amplitudes.iter().enumerate() {
            let l = levels(flat, self.k, self.n);
            p[l[a]][l[b]] += c.norm_sqr();
        }
        Ok(p)
    }

    /// `R(a, b) = Σ_{i>j} P_{ij} − Σ_{i<j} P_{ij}` from the joint state.
    pub fn coranking(&self, a: usize, b: usize) -> Result<f64> {
        let p = self.pair_marginal(a, b)?;
        let mut s = 0.0;
        for (i, row) in p.iter().enumerate() {
            for (j, &pij) in row.iter().enumerate() {
                s += pij * f64::from((i as i64 - j as i64).signum() as i8);
            }
        }
        Ok(s)
    }
}

fn levels(mut flat: usize, k: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = flat % k;
        flat /= k;
    }
    out
}
