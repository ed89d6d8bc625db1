use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::config::{Frontier, Mode, SimConfig};
use crate::aggregation::gauss_coarsen;
use crate::prefs::{omega_from, sign_band};

const ZERO: f64 = 1e-12;

/// A competitor with risk `y1` and benefit `y2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParticleState {
    pub y1: f64,
    pub y2: f64,
}

impl ParticleState {
    pub fn new(y1: f64, y2: f64) -> Self {
        ParticleState { y1, y2 }
    }

    fn key(self) -> (u64, u64) {
        // +0.0 and -0.0 are the same state
        ((self.y1 + 0.0).to_bits(), (self.y2 + 0.0).to_bits())
    }
}

impl Frontier {
    /// Largest feasible benefit at risk `y1`.
    pub fn benefit_cap(&self, y1: f64) -> f64 {
        -self.c * (-y1).exp_m1()
    }

    pub fn is_feasible(&self, p: ParticleState) -> bool {
        p.y1 >= 0.0 && p.y2 >= 0.0 && p.y2 <= self.benefit_cap(p.y1)
    }

    /// Euclidean projection onto the (convex) feasible region.
    ///
    /// Points below the risk axis drop straight onto it. Points above the
    /// frontier land on the frontier: for `x` below the crossing point
    /// `f(x) = y2`, the squared distance to `(x, f(x))` is convex because the
    /// frontier is concave and lies below the point there, so bisection on
    /// the sign of its derivative finds the minimiser.
    pub fn project(&self, p: ParticleState) -> ParticleState {
        if self.is_feasible(p) {
            return p;
        }
        if p.y2 <= 0.0 {
            return ParticleState::new(p.y1.max(0.0), 0.0);
        }
        let hi = if p.y2 < self.c {
            -(-p.y2 / self.c).ln_1p()
        } else {
            p.y1.max(0.0) + p.y2 + 1.0
        };
        // half the derivative of the squared distance
        let slope = |x: f64| (x - p.y1) + (self.benefit_cap(x) - p.y2) * self.c * (-x).exp();
        let (mut lo, mut hi) = (0.0f64, hi.max(0.0));
        if slope(lo) >= 0.0 {
            return ParticleState::new(0.0, 0.0);
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if slope(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let x = 0.5 * (lo + hi);
        ParticleState::new(x, self.benefit_cap(x))
    }
}

/// Co-ranking of particle `a` over particle `b`.
pub fn risk_benefit_coranking(a: ParticleState, b: ParticleState, cfg: &SimConfig) -> f64 {
    match cfg.mode {
        // Differences of the utility keep signs exactly transitive.
        Mode::Transitive => (a.y2 - a.y1) - (b.y2 - b.y1),
        Mode::Intransitive => (a.y2 - b.y2) - gauss_coarsen(a.y1 - b.y1, cfg.epsilon, cfg.k),
    }
}

/// Particles with uniform weights `1/n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Population {
    pub particles: Vec<ParticleState>,
    pub step: u64,
}

impl Population {
    /// Uniform over the feasible region with risk up to `init_risk_max`.
    pub fn random<R: Rng>(cfg: &SimConfig, rng: &mut R) -> Self {
        let f = &cfg.frontier;
        let mut particles = Vec::with_capacity(cfg.n);
        while particles.len() < cfg.n {
            let p = ParticleState::new(
                rng.random_range(0.0..=f.init_risk_max),
                rng.random_range(0.0..=f.c),
            );
            if f.is_feasible(p) {
                particles.push(p);
            }
        }
        Population { particles, step: 0 }
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }

    pub fn mean_benefit(&self) -> f64 {
        self.particles.iter().map(|p| p.y2).sum::<f64>() / self.len() as f64
    }

    pub fn mean_risk(&self) -> f64 {
        self.particles.iter().map(|p| p.y1).sum::<f64>() / self.len() as f64
    }

    /// Distinct states with their multiplicities, and each particle's slot.
    pub fn merged(&self) -> (Vec<ParticleState>, Vec<f64>, Vec<usize>) {
        let mut slots: BTreeMap<(u64, u64), usize> = BTreeMap::new();
        for p in &self.particles {
            let next = slots.len();
            slots.entry(p.key()).or_insert(next);
        }
        let mut states = vec![ParticleState::new(0.0, 0.0); slots.len()];
        let mut counts = vec![0.0; slots.len()];
        let mut slot_of = Vec::with_capacity(self.len());
        for p in &self.particles {
            let s = slots[&p.key()];
            states[s] = *p;
            counts[s] += 1.0;
            slot_of.push(s);
        }
        (states, counts, slot_of)
    }
}

/// Disjoint random pairs compete; each loser takes the winner's state.
///
/// The population is shuffled and split into `⌊n/2⌋` pairs, each of which
/// competes with probability `min(1, λ·dt)`. Ties leave both unchanged.
pub fn competition_round<R: Rng>(pop: &mut Population, cfg: &SimConfig, rng: &mut R) {
    let mut order: Vec<usize> = (0..pop.len()).collect();
    order.shuffle(rng);
    let p = (cfg.lambda * cfg.dt).min(1.0);
    for pair in order.chunks_exact(2) {
        if p < 1.0 && !rng.random_bool(p) {
            continue;
        }
        let (a, b) = (pair[0], pair[1]);
        let r = risk_benefit_coranking(pop.particles[a], pop.particles[b], cfg);
        match sign_band(r, ZERO) {
            1 => pop.particles[b] = pop.particles[a],
            -1 => pop.particles[a] = pop.particles[b],
            _ => {}
        }
    }
}

/// Random mutations biased towards the origin, projected back into the
/// feasible region.
pub fn mutation_round<R: Rng>(pop: &mut Population, cfg: &SimConfig, rng: &mut R) {
    let m = &cfg.mutation;
    if m.probability == 0.0 {
        return;
    }
    for p in pop.particles.iter_mut() {
        if !rng.random_bool(m.probability) {
            continue;
        }
        let proposal = if m.jump_probability > 0.0 && rng.random_bool(m.jump_probability) {
            let u: f64 = rng.random();
            ParticleState::new(u * p.y1, u * p.y2)
        } else {
            let n1: f64 = rng.sample(StandardNormal);
            let n2: f64 = rng.sample(StandardNormal);
            ParticleState::new(
                p.y1 + m.sigma * n1 - m.drift * p.y1,
                p.y2 + m.sigma * n2 - m.drift * p.y2,
            )
        };
        *p = cfg.frontier.project(proposal);
    }
}

/// Primary and secondary current rankings of each distinct state.
pub(crate) fn state_rankings(
    states: &[ParticleState],
    weights: &[f64],
    cfg: &SimConfig,
) -> (Vec<f64>, Vec<f64>) {
    let m = states.len();
    let total: f64 = weights.iter().sum();
    let mut r1 = vec![0.0; m];
    for a in 0..m {
        for b in (a + 1)..m {
            let s = f64::from(sign_band(
                risk_benefit_coranking(states[a], states[b], cfg),
                ZERO,
            ));
            r1[a] += weights[b] * s;
            r1[b] -= weights[a] * s;
        }
    }
    r1.iter_mut().for_each(|x| *x /= total);
    let mut r2 = vec![0.0; m];
    for a in 0..m {
        for b in (a + 1)..m {
            let s = f64::from(sign_band(r1[a] - r1[b], ZERO));
            r2[a] += weights[b] * s;
            r2[b] -= weights[a] * s;
        }
    }
    r2.iter_mut().for_each(|x| *x /= total);
    (r1, r2)
}

/// Per-particle `R*`, `R**` and the population's `Ω`, with duplicate
/// states merged.
pub fn particle_rankings(pop: &Population, cfg: &SimConfig) -> (Vec<f64>, Vec<f64>, f64) {
    let (states, counts, slot_of) = pop.merged();
    let (r1, r2) = state_rankings(&states, &counts, cfg);
    let omega = omega_from(&r1, &r2, &counts);
    let per = |r: &[f64]| slot_of.iter().map(|&s| r[s]).collect();
    (per(&r1), per(&r2), omega)
}

pub fn particle_omega(pop: &Population, cfg: &SimConfig) -> f64 {
    particle_rankings(pop, cfg).2
}

/// Indicator group co-ranking `R̄(after, before)` with weights `1/n`.
pub fn inter_step_coranking(after: &Population, before: &Population, cfg: &SimConfig) -> f64 {
    let (sa, ca, _) = after.merged();
    let (sb, cb, _) = before.merged();
    let mut s = 0.0;
    for (a, wa) in sa.iter().zip(&ca) {
        let mut row = 0.0;
        for (b, wb) in sb.iter().zip(&cb) {
            row += wb * f64::from(sign_band(risk_benefit_coranking(*a, *b, cfg), ZERO));
        }
        s += wa * row;
    }
    s / (after.len() as f64 * before.len() as f64)
}
