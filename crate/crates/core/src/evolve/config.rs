use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `ρ = Δy₂ − Δy₁`, derived from the utility `r₀ = y₂ − y₁`.
    Transitive,
    /// `ρ = Δy₂ − Δy₁·erf(|Δy₁|/ε)^k`: small risk increments go unnoticed.
    Intransitive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MutationConfig {
    /// Chance that a particle mutates in a step.
    pub probability: f64,
    /// Standard deviation of the Gaussian kick on each coordinate.
    pub sigma: f64,
    /// Fraction of the state removed per mutation (pull towards the origin).
    pub drift: f64,
    /// Chance that a mutation is instead a jump `y ← u·y`, `u ~ U(0, 1)`.
    pub jump_probability: f64,
}

impl Default for MutationConfig {
    fn default() -> Self {
        MutationConfig {
            probability: 0.05,
            sigma: 0.05,
            drift: 0.02,
            jump_probability: 0.1,
        }
    }
}

/// Feasible region `y₁ ≥ 0, 0 ≤ y₂ ≤ C(1 − e^{−y₁})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Frontier {
    pub c: f64,
    /// Initial particles are drawn with risk in `[0, init_risk_max]`.
    pub init_risk_max: f64,
}

impl Default for Frontier {
    fn default() -> Self {
        Frontier {
            c: 2.0,
            init_risk_max: 3.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub n: usize,
    /// Competition rate; each disjoint pair competes with probability
    /// `min(1, λ·dt)` per step.
    pub lambda: f64,
    pub dt: f64,
    pub steps: u64,
    pub epsilon: f64,
    pub k: f64,
    pub mutation: MutationConfig,
    pub frontier: Frontier,
    pub seed: u64,
    pub mode: Mode,
    /// Snapshot interval in steps; 0 writes only the initial and final
    /// populations.
    pub snapshot_every: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n: 400,
            lambda: 1.0,
            dt: 1.0,
            steps: 2000,
            epsilon: 1.0,
            k: 1.0,
            mutation: MutationConfig::default(),
            frontier: Frontier::default(),
            seed: 0,
            mode: Mode::Transitive,
            snapshot_every: 0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        let finite_pos = |x: f64| x.is_finite() && x > 0.0;
        let prob = |x: f64| (0.0..=1.0).contains(&x);
        if self.n < 2 {
            return bad("n must be at least 2");
        }
        if !finite_pos(self.lambda) || !finite_pos(self.dt) {
            return bad("lambda and dt must be positive");
        }
        if !finite_pos(self.epsilon) {
            return bad("epsilon must be positive");
        }
        if !(self.k.is_finite() && self.k >= 0.0) {
            return bad("k must be non-negative");
        }
        let m = &self.mutation;
        if !prob(m.probability) || !prob(m.jump_probability) {
            return bad("mutation probabilities must lie in [0, 1]");
        }
        if !finite_pos(m.sigma) {
            return bad("mutation sigma must be positive");
        }
        if !(0.0..1.0).contains(&m.drift) {
            return bad("mutation drift must lie in [0, 1)");
        }
        if !finite_pos(self.frontier.c) || !finite_pos(self.frontier.init_risk_max) {
            return bad("frontier parameters must be positive");
        }
        Ok(())
    }

    /// Reads TOML or JSON, chosen by file extension (JSON unless `.toml`).
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: SimConfig = if path.extension().is_some_and(|e| e == "toml") {
            toml::from_str(&text).map_err(|e| Error::Parse {
                line: e
                    .span()
                    .map_or(0, |s| text[..s.start].lines().count().max(1) as u64),
                message: e.message().to_string(),
            })?
        } else {
            serde_json::from_str(&text)?
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
