use std::path::Path;

use serde_json::{json, Map, Value};

use super::{Command, GlobalArgs, Method};
use crate::aggregation::{
    combine_corankings, gauss_coarsen_criteria, ng_witness, threshold_coarsen, NgSearch,
};
use crate::error::{Error, Result};
use crate::evolve::{self, SimConfig};
use crate::games::{solve_nash, MixedStrategy};
use crate::io;
use crate::prefs::{
    absolute_ranking_from, conditional_rankings, current_rankings, decompose,
    find_intransitive_triplets, group_coranking, transitive_closure, triplet_delta, worst_triplet,
    CoRankingMatrix, ElementSet, IndicatorMatrix, Tolerances, TransitivityReport, TripletClass,
    WeightedGroup,
};
use crate::stochastic::{level_indicator, rank_dist_coranking, to_weighted_group};

pub(super) fn dispatch(cmd: &Command, g: &GlobalArgs) -> Result<Value> {
    let tol = g.tolerances();
    match cmd {
        Command::Analyze {
            matrix,
            reference_group,
        } => analyze(matrix, reference_group.as_deref(), &tol),
        Command::Closure { matrix } => closure(matrix, &tol),
        Command::Decompose { matrix, csv_dir } => decomposition(matrix, csv_dir.as_deref(), &tol),
        Command::Nash {
            game,
            tolerance,
            max_iterations,
        } => nash(game, *tolerance, *max_iterations, &tol),
        Command::Coarsen {
            criteria,
            method,
            k,
            witness,
        } => coarsen(criteria, *method, *k, *witness, g.seed.unwrap_or(0), &tol),
        Command::Quantum { distributions } => quantum(distributions, &tol),
        Command::Simulate {
            config,
            out_dir,
            sweep,
        } => simulate(config, out_dir, *sweep, g.seed),
    }
}

/// `{label: value}` in element order.
fn by_label(els: &ElementSet, values: &[f64]) -> Value {
    let mut m = Map::new();
    for (i, v) in values.iter().enumerate() {
        m.insert(els.label(i).to_string(), json!(v));
    }
    Value::Object(m)
}

fn labels_of(els: &ElementSet, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| els.label(i).to_string()).collect()
}

fn matrix_value(m: &CoRankingMatrix) -> Value {
    json!({
        "elements": m.elements().labels(),
        "values": m.rows(),
    })
}

fn triplet_census(m: &CoRankingMatrix, report: &TransitivityReport) -> Value {
    let els = m.elements();
    let mut counts = Map::new();
    for class in [
        TripletClass::Strict,
        TripletClass::SemiWeak,
        TripletClass::Weak,
        TripletClass::None,
    ] {
        counts.insert(class.to_string(), json!(report.count(class)));
    }
    let intransitive: Vec<Value> = report
        .intransitive()
        .map(|t| {
            let (i, j, k) = t.indices;
            json!({
                "elements": labels_of(els, &[i, j, k]),
                "class": t.class,
                "delta": triplet_delta(m, i, j, k),
            })
        })
        .collect();
    let components: Vec<Vec<String>> = report
        .semi_strict_components
        .iter()
        .map(|c| labels_of(els, c))
        .collect();
    json!({
        "overall": report.overall,
        "counts": counts,
        "intransitive_triplets": intransitive,
        "semi_strict_components": components,
    })
}

fn load_matrix(path: &Path, tol: &Tolerances) -> Result<(CoRankingMatrix, IndicatorMatrix, bool)> {
    let m = io::read_matrix_csv(path, tol.anti)?;
    match io::exact_indicator(&m) {
        Some(ind) => Ok((m, ind, true)),
        None => {
            let ind = m.indicator(tol.zero);
            Ok((m, ind, false))
        }
    }
}

fn analyze(path: &Path, group: Option<&Path>, tol: &Tolerances) -> Result<Value> {
    let (m, ind, sharp) = load_matrix(path, tol)?;
    let els = m.elements().clone();
    let g = match group {
        Some(p) => io::read_group(p, &els)?,
        None => WeightedGroup::full(els.len())?,
    };
    let conditional = conditional_rankings(&m, &g)?;
    let census = find_intransitive_triplets(&ind);
    let absolute = match absolute_ranking_from(&m, tol.delta) {
        Ok(r) => json!({
            "absolutely_transitive": true,
            "ranking": by_label(&els, &r.values),
        }),
        Err(Error::NotAbsolutelyTransitive { .. }) => {
            let ((i, j, k), delta) = worst_triplet(&m).expect("a failing check implies a triplet");
            json!({
                "absolutely_transitive": false,
                "worst_triplet": { "elements": labels_of(&els, &[i, j, k]), "delta": delta },
            })
        }
        Err(e) => return Err(e),
    };
    let current = current_rankings(&m, &vec![1.0; els.len()], tol)?;
    let range_sets: Vec<Vec<String>> = current
        .range_sets
        .iter()
        .map(|s| labels_of(&els, s))
        .collect();
    Ok(json!({
        "elements": els.labels(),
        "kind": if sharp { "indicator" } else { "graded" },
        "reference_group": {
            "members": labels_of(&els, g.members()),
            "weights": g.weights(),
        },
        "conditional_rankings": by_label(&els, &conditional),
        "transitivity": triplet_census(&m, &census),
        "absolute": absolute,
        "current_rankings": {
            "r_star": by_label(&els, &current.r_star),
            "r_star_star": by_label(&els, &current.r_star_star),
            "range_sets": range_sets,
            "range_means": current.range_means,
            "interleaved": current.interleaved,
            "omega": current.omega,
        },
    }))
}

fn closure(path: &Path, tol: &Tolerances) -> Result<Value> {
    let (m, ind, _) = load_matrix(path, tol)?;
    let els = m.elements();
    let c = transitive_closure(&ind);
    let classes: Vec<Vec<String>> = c.classes.iter().map(|s| labels_of(els, s)).collect();
    let mut pairs = Vec::new();
    for a in 0..els.len() {
        for b in (a + 1)..els.len() {
            pairs.push(json!({
                "pair": [els.label(a), els.label(b)],
                "relation": c.classify_pair(&ind, a, b).symbol(),
            }));
        }
    }
    Ok(json!({
        "elements": els.labels(),
        "classes": classes,
        "pairs": pairs,
        "closure": c.as_indicator(&ind).rows(),
    }))
}

fn decomposition(path: &Path, csv_dir: Option<&Path>, tol: &Tolerances) -> Result<Value> {
    let m = io::read_matrix_csv(path, tol.anti)?;
    let els = m.elements();
    let d = decompose(&m, tol.delta);
    if let Some(dir) = csv_dir {
        std::fs::create_dir_all(dir)?;
        io::write_matrix_csv(&dir.join("transitive.csv"), &d.transitive)?;
        io::write_matrix_csv(&dir.join("intransitive.csv"), &d.intransitive)?;
    }
    let pivot = d.pivot.map(|p| {
        let (a, b, c) = p.triplet;
        json!({
            "elements": labels_of(els, &[a, b, c]),
            "delta": p.delta,
            "epsilon": p.epsilon,
        })
    });
    let remainder = find_intransitive_triplets(&d.intransitive.indicator(tol.zero));
    Ok(json!({
        "elements": els.labels(),
        "pivot": pivot,
        "transitive": matrix_value(&d.transitive),
        "intransitive": matrix_value(&d.intransitive),
        "intransitive_class": remainder.overall,
    }))
}

fn strategy_value(els: &ElementSet, set: &[usize], p: &MixedStrategy) -> Value {
    let mut m = Map::new();
    for &i in set {
        m.insert(els.label(i).to_string(), json!(p.probability(i)));
    }
    Value::Object(m)
}

fn nash(path: &Path, tolerance: f64, max_iterations: u64, tol: &Tolerances) -> Result<Value> {
    let game = io::read_game(path, tol.anti)?;
    let els = game.coranking().elements();
    let s = solve_nash(&game, tolerance, max_iterations)?;
    Ok(json!({
        "s1": labels_of(els, game.s1()),
        "s2": labels_of(els, game.s2()),
        "p1": strategy_value(els, game.s1(), &s.p1),
        "p2": strategy_value(els, game.s2(), &s.p2),
        "value": s.value,
        "iterations": s.iterations,
        "exploitability": s.exploitability,
        "verification": s.check,
    }))
}

fn coarsen(
    path: &Path,
    method: Method,
    k: f64,
    witness: bool,
    seed: u64,
    tol: &Tolerances,
) -> Result<Value> {
    let criteria = io::read_criteria(path, tol.anti)?;
    let raw = combine_corankings(&criteria.to_corankings())?;
    let coarse = match method {
        Method::Threshold => threshold_coarsen(&criteria),
        Method::Gauss => gauss_coarsen_criteria(&criteria, k),
    };
    let raw_census = find_intransitive_triplets(&raw.indicator(tol.zero));
    let census = find_intransitive_triplets(&coarse.indicator(tol.zero));
    let mut out = json!({
        "elements": criteria.elements().labels(),
        "method": method,
        "k": if method == Method::Gauss { json!(k) } else { Value::Null },
        "weights": criteria.weights(),
        "epsilons": criteria.epsilons(),
        "combined": matrix_value(&raw),
        "combined_class": raw_census.overall,
        "coarse": matrix_value(&coarse),
        "transitivity": triplet_census(&coarse, &census),
    });
    if witness {
        let w = ng_witness(
            criteria.weights(),
            criteria.epsilons(),
            &NgSearch::default(),
            seed,
        )?;
        out["witness"] = json!({
            "predicted": w.predicted,
            "class": w.record.class,
            "points": w.points,
            "coranking": matrix_value(&w.coranking),
        });
    }
    Ok(out)
}

fn quantum(paths: &[std::path::PathBuf], tol: &Tolerances) -> Result<Value> {
    let labels: Vec<String> = paths
        .iter()
        .map(|p| {
            p.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string())
        })
        .collect();
    let els = ElementSet::new(labels)?;
    let dists = paths
        .iter()
        .map(|p| io::read_distribution(p))
        .collect::<Result<Vec<_>>>()?;
    let k = dists[0].k();
    let n = dists.len();
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[i][j] = rank_dist_coranking(&dists[i], &dists[j])?;
        }
    }
    let m = CoRankingMatrix::new(els.clone(), rows, tol.anti)?;
    // The same values through the deterministic-group picture.
    let levels = level_indicator(k);
    let groups: Vec<WeightedGroup> = dists.iter().map(to_weighted_group).collect();
    let mut gap: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let v = group_coranking(&levels, &groups[i], &groups[j])?;
            gap = gap.max((v - m.get(i, j)).abs());
        }
    }
    let census = find_intransitive_triplets(&m.indicator(tol.zero));
    Ok(json!({
        "k": k,
        "coranking": matrix_value(&m),
        "group_equivalence_gap": gap,
        "transitivity": triplet_census(&m, &census),
    }))
}

fn run_summary(cfg: &SimConfig, dir: &Path) -> Result<Value> {
    let out = evolve::run(cfg)?;
    out.write(dir)?;
    let benefit: Vec<f64> = out.series.iter().map(|r| r.mean_benefit).collect();
    let omega: Vec<f64> = out.series.iter().map(|r| r.omega).collect();
    let step_of = |i: usize| out.series[i].step;
    let collapses: Vec<u64> =
        evolve::collapse_events(&benefit, evolve::COLLAPSE_FRACTION, evolve::COLLAPSE_WINDOW)
            .into_iter()
            .map(step_of)
            .collect();
    let peak = evolve::argmax(&omega);
    let last = out.series.last();
    Ok(json!({
        "seed": cfg.seed,
        "directory": dir.display().to_string(),
        "steps": out.series.len(),
        "final_mean_benefit": last.map(|r| r.mean_benefit),
        "final_mean_risk": last.map(|r| r.mean_risk),
        "max_omega": peak.map(|i| omega[i]),
        "max_omega_step": peak.map(step_of),
        "collapse_steps": collapses,
        "snapshots": out.snapshots.iter().map(|s| s.step).collect::<Vec<_>>(),
    }))
}

fn simulate(path: &Path, out_dir: &Path, sweep: Option<u64>, seed: Option<u64>) -> Result<Value> {
    let mut cfg = SimConfig::from_path(path)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let runs = match sweep {
        None => vec![run_summary(&cfg, out_dir)?],
        Some(0) => return Err(Error::InvalidConfig("sweep needs at least one run".into())),
        Some(count) => {
            let configs: Vec<SimConfig> = (0..count)
                .map(|i| SimConfig {
                    seed: cfg.seed.wrapping_add(i),
                    ..cfg.clone()
                })
                .collect();
            // Runs are independent; batches keep at most one per core busy.
            let width = std::thread::available_parallelism().map_or(1, |n| n.get());
            let mut results: Vec<Result<Value>> = Vec::with_capacity(configs.len());
            for batch in configs.chunks(width) {
                std::thread::scope(|scope| {
                    let handles: Vec<_> = batch
                        .iter()
                        .map(|c| {
                            let dir = out_dir.join(format!("seed_{}", c.seed));
                            scope.spawn(move || run_summary(c, &dir))
                        })
                        .collect();
                    results.extend(
                        handles
                            .into_iter()
                            .map(|h| h.join().expect("simulation thread panicked")),
                    );
                });
            }
            results.into_iter().collect::<Result<Vec<_>>>()?
        }
    };
    Ok(json!({
        "config": cfg,
        "runs": runs,
    }))
}
