//! Full-scale particle runs shared by the evolution tests and the
//! acceptance runner.

use intranskit::evolve::{
    argmax, collapse_events, run, Mode, SimConfig, COLLAPSE_FRACTION, COLLAPSE_WINDOW,
};

/// Steps at the end of a transitive run over which stationarity is judged.
pub const TAIL: usize = 500;
/// How far before a collapse the Ω maximum may fall.
pub const LEAD: usize = 100;

pub fn config(mode: Mode, seed: u64) -> SimConfig {
    SimConfig {
        n: 400,
        steps: 2000,
        seed,
        mode,
        epsilon: 1.0,
        k: 1.0,
        ..SimConfig::default()
    }
}

#[derive(Debug)]
pub struct TransitiveOutcome {
    pub tail_mean: f64,
    pub tail_sd: f64,
    pub max_omega: f64,
}

impl TransitiveOutcome {
    pub fn relative_sd(&self) -> f64 {
        self.tail_sd / self.tail_mean
    }
}

pub fn transitive(seed: u64) -> TransitiveOutcome {
    let out = run(&config(Mode::Transitive, seed)).expect("valid configuration");
    let tail: Vec<f64> = out.series[out.series.len() - TAIL..]
        .iter()
        .map(|r| r.mean_benefit)
        .collect();
    let mean = tail.iter().sum::<f64>() / tail.len() as f64;
    let var = tail.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / tail.len() as f64;
    TransitiveOutcome {
        tail_mean: mean,
        tail_sd: var.sqrt(),
        max_omega: out.series.iter().map(|r| r.omega).fold(0.0, f64::max),
    }
}

#[derive(Debug)]
pub struct IntransitiveOutcome {
    /// Series indices at which collapses start.
    pub collapses: Vec<usize>,
    /// Series index of the run maximum of Ω.
    pub omega_peak: usize,
    pub max_omega: f64,
}

impl IntransitiveOutcome {
    /// Some collapse follows the Ω maximum within [`LEAD`] steps.
    pub fn peak_precedes_collapse(&self) -> bool {
        self.collapses
            .iter()
            .any(|&c| c >= self.omega_peak && c - self.omega_peak <= LEAD)
    }
}

pub fn intransitive(seed: u64) -> IntransitiveOutcome {
    let out = run(&config(Mode::Intransitive, seed)).expect("valid configuration");
    let benefit: Vec<f64> = out.series.iter().map(|r| r.mean_benefit).collect();
    let omega: Vec<f64> = out.series.iter().map(|r| r.omega).collect();
    let omega_peak = argmax(&omega).expect("non-empty run");
    IntransitiveOutcome {
        collapses: collapse_events(&benefit, COLLAPSE_FRACTION, COLLAPSE_WINDOW),
        omega_peak,
        max_omega: omega[omega_peak],
    }
}
