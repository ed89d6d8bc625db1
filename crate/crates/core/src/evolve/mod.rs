//! Competitive evolution: the density equation `df/dt = λ R* f`, a
//! particle simulation of the risk/benefit dilemma, and the evolutionary
//! intransitivity parameter `Ω`.

mod config;
mod density;
mod particles;
mod sim;

pub use config::{Frontier, Mode, MutationConfig, SimConfig};
pub use density::{density_inter_step, density_rankings, density_step, MAX_EULER_FACTOR};
pub use particles::{
    competition_round, inter_step_coranking, mutation_round, particle_omega, particle_rankings,
    risk_benefit_coranking, ParticleState, Population,
};
pub use sim::{
    argmax, collapse_events, run, RunOutput, SeriesRow, Simulation, Snapshot, SnapshotRow,
    COLLAPSE_FRACTION, COLLAPSE_WINDOW,
};
