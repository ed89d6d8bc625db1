//! Co-rankings and the analyses built on them: conditional and group
//! rankings, triplet census, transitive closure, decomposition and current
//! rankings.

mod closure;
mod current;
mod decompose;
mod elements;
mod group;
mod matrix;
mod transitivity;

pub use closure::{classify_pair, transitive_closure, Closure, PairClass};
pub use current::{
    current_rankings, omega, omega_from, primary_rankings, primary_secondary, CurrentRankingMap,
};
pub use decompose::{decompose, Decomposition, Pivot};
pub use elements::ElementSet;
pub use group::{conditional_ranking, conditional_rankings, group_coranking, WeightedGroup};
pub use matrix::{
    sign_band, AbsoluteRanking, CoRankingMatrix, IndicatorMatrix, Relation, Tolerances,
};
pub use transitivity::{
    absolute_ranking_from, classify_triplet, find_intransitive_triplets, triplet_delta,
    worst_triplet, TransitivityReport, TripletClass, TripletRecord,
};
