use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::SimConfig;
use super::particles::{
    competition_round, inter_step_coranking, mutation_round, particle_rankings, Population,
};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub step: u64,
    pub mean_benefit: f64,
    pub mean_risk: f64,
    pub omega: f64,
    pub inter_step_coranking: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotRow {
    pub id: usize,
    pub y1: f64,
    pub y2: f64,
    pub r_star: f64,
    pub r_star_star: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub step: u64,
    pub rows: Vec<SnapshotRow>,
}

/// A particle simulation advanced one step at a time.
///
/// Each step runs a competition round, records the group co-ranking of the
/// post-competition population against the pre-step one, then mutates.
#[derive(Debug, Clone)]
pub struct Simulation {
    config: SimConfig,
    population: Population,
    rng: ChaCha8Rng,
}

impl Simulation {
    pub fn new(config: SimConfig) -> Result<Self> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let population = Population::random(&config, &mut rng);
        Ok(Simulation {
            config,
            population,
            rng,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    pub fn population(&self) -> &Population {
        &self.population
    }

    pub fn step(&mut self) -> SeriesRow {
        let before = self.population.clone();
        competition_round(&mut self.population, &self.config, &mut self.rng);
        let inter = inter_step_coranking(&self.population, &before, &self.config);
        mutation_round(&mut self.population, &self.config, &mut self.rng);
        self.population.step += 1;
        let (_, _, omega) = particle_rankings(&self.population, &self.config);
        SeriesRow {
            step: self.population.step,
            mean_benefit: self.population.mean_benefit(),
            mean_risk: self.population.mean_risk(),
            omega,
            inter_step_coranking: inter,
        }
    }

    pub fn snapshot(&self) -> Snapshot {
        let (r1, r2, _) = particle_rankings(&self.population, &self.config);
        let rows = self
            .population
            .particles
            .iter()
            .enumerate()
            .map(|(id, p)| SnapshotRow {
                id,
                y1: p.y1,
                y2: p.y2,
                r_star: r1[id],
                r_star_star: r2[id],
            })
            .collect();
        Snapshot {
            step: self.population.step,
            rows,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub series: Vec<SeriesRow>,
    pub snapshots: Vec<Snapshot>,
}

/// Runs `config.steps` steps; the series has one row per step and snapshots
/// are taken initially, every `snapshot_every` steps and at the end.
pub fn run(config: &SimConfig) -> Result<RunOutput> {
    let mut sim = Simulation::new(config.clone())?;
    let mut snapshots = vec![sim.snapshot()];
    let mut series = Vec::with_capacity(config.steps as usize);
    for t in 1..=config.steps {
        series.push(sim.step());
        let periodic = config.snapshot_every > 0 && t % config.snapshot_every == 0;
        if periodic || t == config.steps {
            snapshots.push(sim.snapshot());
        }
    }
    Ok(RunOutput { series, snapshots })
}

/// Default collapse criterion: a fall of half the running maximum within
/// 50 steps.
pub const COLLAPSE_FRACTION: f64 = 0.5;
pub const COLLAPSE_WINDOW: usize = 50;

/// Steps at which mean benefit collapses: it has fallen by at least
/// `fraction` of its running maximum relative to some value within the
/// preceding `window` steps. Only the first step of each consecutive run of
/// such steps is reported, as an index into `benefit`.
pub fn collapse_events(benefit: &[f64], fraction: f64, window: usize) -> Vec<usize> {
    let mut events = Vec::new();
    let mut running_max = f64::NEG_INFINITY;
    let mut inside = false;
    for t in 0..benefit.len() {
        running_max = running_max.max(benefit[t]);
        let lo = t.saturating_sub(window);
        let hit = (lo..t).any(|s| benefit[s] - benefit[t] >= fraction * running_max);
        if hit && !inside {
            events.push(t);
        }
        inside = hit;
    }
    events
}

/// Index of the first maximum of `values`, if any.
pub fn argmax(values: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}

fn num(x: f64) -> String {
    crate::report::format_sig(x)
}

impl RunOutput {
    pub fn series_csv(&self) -> String {
        let mut s = String::from("step,mean_benefit,mean_risk,omega,inter_step_coranking\n");
        for r in &self.series {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                r.step,
                num(r.mean_benefit),
                num(r.mean_risk),
                num(r.omega),
                num(r.inter_step_coranking)
            );
        }
        s
    }

    pub fn snapshot_csv(snap: &Snapshot) -> String {
        let mut s = String::from("id,y1,y2,r_star,r_star_star\n");
        for r in &snap.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                r.id,
                num(r.y1),
                num(r.y2),
                num(r.r_star),
                num(r.r_star_star)
            );
        }
        s
    }

    /// Writes `series.csv` and `snapshot_<step>.csv` files into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("series.csv"), self.series_csv())?;
        for snap in &self.snapshots {
            fs::write(
                dir.join(format!("snapshot_{}.csv", snap.step)),
                Self::snapshot_csv(snap),
            )?;
        }
        Ok(())
    }
}
