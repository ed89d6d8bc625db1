//! Randomised property suites. Each returns `Err` with the shrunk failing
//! case, so they can back both `#[test]` functions and the acceptance
//! runner. The generator is deterministic.

use std::sync::atomic::{AtomicUsize, Ordering};

use intranskit::evolve::{density_inter_step, density_rankings, density_step};
use intranskit::prefs::{
    absolute_ranking_from, conditional_ranking, current_rankings, decompose,
    find_intransitive_triplets, transitive_closure, triplet_delta, worst_triplet, AbsoluteRanking,
    CoRankingMatrix, ElementSet, IndicatorMatrix, Tolerances, TripletClass, WeightedGroup,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const MAX_N: usize = 12;

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn els(n: usize) -> ElementSet {
    ElementSet::indexed(n).unwrap()
}

/// Upper triangle, row by row, for an `n`-element relation.
fn upper_len(n: usize) -> usize {
    n * (n - 1) / 2
}

fn from_upper(n: usize, upper: &[f64]) -> CoRankingMatrix {
    let mut values = upper.iter();
    // visited in row order, matching the layout of `upper`
    CoRankingMatrix::from_fn(els(n), |_, _| *values.next().unwrap())
}

fn graded_value() -> impl Strategy<Value = f64> {
    prop_oneof![(-2i32..=2).prop_map(f64::from), -2.0f64..2.0]
}

/// Arbitrary co-ranking with 3 to 12 elements; integer entries make exact
/// ties and vanishing triplet sums common.
pub fn any_matrix() -> impl Strategy<Value = CoRankingMatrix> {
    (3..=MAX_N).prop_flat_map(|n| {
        prop::collection::vec(graded_value(), upper_len(n)).prop_map(move |u| from_upper(n, &u))
    })
}

pub fn any_ranking() -> impl Strategy<Value = AbsoluteRanking> {
    (3..=MAX_N).prop_flat_map(|n| {
        prop::collection::vec(
            prop_oneof![(-3i32..=3).prop_map(f64::from), -5.0f64..5.0],
            n,
        )
        .prop_map(move |v| AbsoluteRanking::new(els(n), v).unwrap())
    })
}

/// Mixture of arbitrary and absolutely transitive co-rankings.
pub fn mixed_matrix() -> impl Strategy<Value = CoRankingMatrix> {
    prop_oneof![
        any_matrix(),
        any_ranking().prop_map(|r| CoRankingMatrix::from_absolute(&r)),
    ]
}

pub fn any_indicator() -> impl Strategy<Value = IndicatorMatrix> {
    (3..=MAX_N).prop_flat_map(|n| {
        prop::collection::vec(-1i8..=1, upper_len(n)).prop_map(move |u| {
            let m = from_upper(n, &u.iter().map(|&x| f64::from(x)).collect::<Vec<_>>());
            m.indicator(0.5)
        })
    })
}

/// Sharp weak order from integer levels (ties allowed).
pub fn weak_order() -> impl Strategy<Value = IndicatorMatrix> {
    (3..=MAX_N).prop_flat_map(|n| {
        prop::collection::vec(0i32..5, n).prop_map(move |levels| {
            IndicatorMatrix::from_fn(els(n), |i, j| (levels[i] - levels[j]).signum() as i8)
        })
    })
}

/// Sharp total order.
pub fn strict_order() -> impl Strategy<Value = IndicatorMatrix> {
    (3..=MAX_N).prop_flat_map(|n| {
        Just((0..n as i32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |levels| {
                IndicatorMatrix::from_fn(els(n), |i, j| (levels[i] - levels[j]).signum() as i8)
            })
    })
}

pub fn mixed_indicator() -> impl Strategy<Value = IndicatorMatrix> {
    prop_oneof![any_indicator(), weak_order(), strict_order()]
}

/// A non-empty weighted subset of `0..n`.
pub fn group(n: usize) -> impl Strategy<Value = WeightedGroup> {
    prop::collection::vec((any::<bool>(), 0.1f64..5.0), n)
        .prop_filter("non-empty", |v| v.iter().any(|(keep, _)| *keep))
        .prop_map(|v| {
            let (members, weights): (Vec<usize>, Vec<f64>) = v
                .iter()
                .enumerate()
                .filter(|(_, (keep, _))| *keep)
                .map(|(i, (_, w))| (i, *w))
                .unzip();
            WeightedGroup::new(members, weights).unwrap()
        })
}

/// Positive weights for all `n` elements with the multiplicative
/// `1 + U[−10⁻⁶, 10⁻⁶]` perturbation that makes rankings strict.
pub fn perturbed_weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((0.5f64..2.0, -1e-6f64..1e-6), n)
        .prop_map(|v| v.into_iter().map(|(w, e)| w * (1.0 + e)).collect())
}

fn rho_bar<M: intranskit::prefs::Relation>(m: &M, g: &WeightedGroup) -> Vec<f64> {
    (0..m.len())
        .map(|a| conditional_ranking(m, a, g).unwrap())
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn exercised(name: &str, hits: &AtomicUsize, min: usize) -> Result<(), String> {
    let h = hits.load(Ordering::Relaxed);
    if h < min {
        Err(format!("{name}: premise held in only {h} cases"))
    } else {
        Ok(())
    }
}

/// Construction repairs small asymmetries exactly and rejects large ones.
pub fn antisymmetry(cases: u32) -> Result<(), String> {
    let strat = (3..=MAX_N).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec((-2.0f64..2.0, -1e-10f64..1e-10), n * n),
        )
    });
    run(cases, strat, |(n, cells)| {
        // cell (i, j) carries the base value of its upper-triangle twin and
        // its own noise
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let noise = cells[i * n + j].1;
                        match i.cmp(&j) {
                            std::cmp::Ordering::Less => cells[i * n + j].0 + noise,
                            std::cmp::Ordering::Greater => -cells[j * n + i].0 + noise,
                            std::cmp::Ordering::Equal => noise,
                        }
                    })
                    .collect()
            })
            .collect();
        let m = CoRankingMatrix::new(els(n), rows.clone(), 1e-9).unwrap();
        for i in 0..n {
            for j in 0..n {
                ensure(m.get(i, j) == -m.get(j, i), || {
                    format!("({i},{j}) not antisymmetric")
                })?;
            }
        }
        let mut bad = rows;
        bad[0][1] += 1.0;
        ensure(CoRankingMatrix::new(els(n), bad, 1e-9).is_err(), || {
            "large asymmetry accepted".into()
        })?;
        // the sign map is idempotent on sign matrices
        let ind = m.indicator(1e-12);
        ensure(ind.as_coranking().indicator(1e-12) == ind, || {
            "indicator not idempotent".into()
        })
    })
}

/// Triplet sums are invariant under rotation and odd under transposition.
pub fn delta_symmetry(cases: u32) -> Result<(), String> {
    run(cases, any_matrix(), |m| {
        let n = m.len();
        for (a, b, c) in [(0, 1, 2), (n - 1, 0, n / 2)] {
            if a == b || b == c || a == c {
                continue;
            }
            let d = triplet_delta(&m, a, b, c);
            ensure((d - triplet_delta(&m, b, c, a)).abs() < 1e-12, || {
                "not cyclic".into()
            })?;
            ensure((d + triplet_delta(&m, b, a, c)).abs() < 1e-12, || {
                "not odd".into()
            })?;
        }
        Ok(())
    })
}

/// Conditional-ranking differences of an absolutely transitive co-ranking
/// equal the utility differences for any reference group.
pub fn utility_differences(cases: u32) -> Result<(), String> {
    let strat = any_ranking().prop_flat_map(|r| {
        let n = r.values.len();
        (Just(r), group(n))
    });
    run(cases, strat, |(r, g)| {
        let m = CoRankingMatrix::from_absolute(&r);
        let bar = rho_bar(&m, &g);
        for a in 0..bar.len() {
            for b in 0..bar.len() {
                let lhs = bar[a] - bar[b];
                let rhs = r.values[a] - r.values[b];
                ensure((lhs - rhs).abs() <= 1e-9, || {
                    format!("{a},{b}: {lhs} vs {rhs}")
                })?;
            }
        }
        Ok(())
    })
}

/// Singleton-group agreement of conditional differences holds exactly when
/// an absolute ranking exists, and that ranking reproduces the co-ranking.
pub fn singleton_agreement(cases: u32) -> Result<(), String> {
    let agree_hits = AtomicUsize::new(0);
    let disagree_hits = AtomicUsize::new(0);
    run(cases, mixed_matrix(), |m| {
        let n = m.len();
        let mut spread: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let diffs = (0..n).map(|c| m.get(a, c) - m.get(b, c));
                let (lo, hi) = diffs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| {
                    (lo.min(d), hi.max(d))
                });
                spread = spread.max(hi - lo);
            }
        }
        let r = absolute_ranking_from(&m, 1e-9);
        if spread <= 1e-9 {
            agree_hits.fetch_add(1, Ordering::Relaxed);
            let r = r.map_err(|e| TestCaseError::fail(format!("agreement but {e}")))?;
            for a in 0..n {
                for b in 0..n {
                    let d = r.values[a] - r.values[b] - m.get(a, b);
                    ensure(d.abs() <= 1e-9, || {
                        format!("ranking misses ({a},{b}) by {d}")
                    })?;
                }
            }
        } else {
            disagree_hits.fetch_add(1, Ordering::Relaxed);
            ensure(r.is_err() || spread <= 2e-9, || {
                format!("spread {spread} but ranking found")
            })?;
        }
        Ok(())
    })?;
    exercised("agreement", &agree_hits, cases as usize / 10)?;
    exercised("disagreement", &disagree_hits, cases as usize / 10)
}

/// Two reference groups that order some pair in opposite strict ways imply
/// current intransitivity.
pub fn opposite_preferences(cases: u32) -> Result<(), String> {
    let hits = AtomicUsize::new(0);
    let strat = mixed_indicator().prop_flat_map(|ind| {
        let n = ind.len();
        (Just(ind), group(n), group(n))
    });
    run(cases, strat, |(ind, g1, g2)| {
        let (b1, b2) = (rho_bar(&ind, &g1), rho_bar(&ind, &g2));
        let n = ind.len();
        let opposite =
            (0..n).any(|a| (0..n).any(|b| b1[a] > b1[b] + 1e-12 && b2[a] < b2[b] - 1e-12));
        if opposite {
            hits.fetch_add(1, Ordering::Relaxed);
            let overall = find_intransitive_triplets(&ind).overall;
            ensure(overall != TripletClass::None, || {
                "opposite preferences but transitive".into()
            })?;
        }
        Ok(())
    })?;
    exercised("opposite preferences", &hits, cases as usize / 10)
}

/// Conditional indicator rankings of a transitive relation never reverse a
/// strict preference.
pub fn indicator_order_kept(cases: u32) -> Result<(), String> {
    let strat = prop_oneof![weak_order(), strict_order()].prop_flat_map(|ind| {
        let n = ind.len();
        (Just(ind), group(n))
    });
    run(cases, strat, |(ind, g)| {
        let bar = rho_bar(&ind, &g);
        for a in 0..ind.len() {
            for b in 0..ind.len() {
                if ind.get(a, b) < 0 {
                    ensure(bar[a] <= bar[b] + 1e-12, || format!("{a} < {b} reversed"))?;
                }
            }
        }
        Ok(())
    })
}

/// With strict (perturbed) weights: transitive ⇒ `R* = R**`; and
/// `R* = R**` with distinct values ⇒ no intransitive triplet.
pub fn current_rankings_coincide(cases: u32) -> Result<(), String> {
    let transitive_hits = AtomicUsize::new(0);
    let coincide_hits = AtomicUsize::new(0);
    let intransitive_hits = AtomicUsize::new(0);
    let strat = mixed_indicator().prop_flat_map(|ind| {
        let n = ind.len();
        (Just(ind), perturbed_weights(n))
    });
    run(cases, strat, |(ind, w)| {
        let map = current_rankings(&ind, &w, &Tolerances::default()).unwrap();
        let overall = find_intransitive_triplets(&ind).overall;
        let n = ind.len();
        let coincide = map
            .r_star
            .iter()
            .zip(&map.r_star_star)
            .all(|(a, b)| (a - b).abs() <= 1e-12);
        let distinct =
            (0..n).all(|i| ((i + 1)..n).all(|j| (map.r_star[i] - map.r_star[j]).abs() > 1e-12));
        if overall == TripletClass::None {
            transitive_hits.fetch_add(1, Ordering::Relaxed);
            ensure(coincide, || "transitive system with R* ≠ R**".into())?;
            ensure(map.omega == 0.0, || {
                format!("transitive system with Ω = {}", map.omega)
            })?;
        } else {
            intransitive_hits.fetch_add(1, Ordering::Relaxed);
        }
        if coincide && distinct {
            coincide_hits.fetch_add(1, Ordering::Relaxed);
            ensure(overall == TripletClass::None, || {
                format!("R* = R** distinct but {overall}")
            })?;
        }
        Ok(())
    })?;
    exercised("transitive", &transitive_hits, cases as usize / 10)?;
    exercised("coinciding distinct", &coincide_hits, cases as usize / 10)?;
    exercised("intransitive", &intransitive_hits, cases as usize / 10)
}

/// The δ scan and the absolute-ranking reconstruction agree.
pub fn delta_scan(cases: u32) -> Result<(), String> {
    run(cases, mixed_matrix(), |m| {
        let tol = 1e-9;
        let scan_ok = worst_triplet(&m).is_none_or(|(_, d)| d.abs() <= tol);
        let r = absolute_ranking_from(&m, tol);
        ensure(scan_ok == r.is_ok(), || format!("scan {scan_ok} vs {r:?}"))?;
        if let Ok(r) = r {
            ensure(r.values[0] == 0.0, || {
                "not anchored at the first element".into()
            })?;
        }
        Ok(())
    })
}

/// Parts re-sum to the input; the transitive part is absolutely
/// transitive and the remainder strictly intransitive when non-zero.
pub fn decompose_resum(cases: u32) -> Result<(), String> {
    run(cases, mixed_matrix(), |m| {
        let d = decompose(&m, 1e-9);
        let n = m.len();
        for i in 0..n {
            for j in 0..n {
                let s = d.transitive.get(i, j) + d.intransitive.get(i, j);
                ensure((s - m.get(i, j)).abs() <= 1e-12, || {
                    format!("({i},{j}) re-sums to {s}")
                })?;
            }
        }
        ensure(absolute_ranking_from(&d.transitive, 1e-9).is_ok(), || {
            "transitive part fails".into()
        })?;
        match d.pivot {
            Some(_) => {
                let c = find_intransitive_triplets(&d.intransitive.indicator(1e-12)).overall;
                ensure(c == TripletClass::Strict, || format!("remainder is {c}"))
            }
            None => ensure(d.intransitive.max_abs() == 0.0, || {
                "non-zero remainder".into()
            }),
        }
    })
}

/// The closure is transitive, idempotent and coarsens the relation.
pub fn closure_idempotence(cases: u32) -> Result<(), String> {
    run(cases, mixed_indicator(), |ind| {
        let c = transitive_closure(&ind);
        let once = c.as_indicator(&ind);
        let again = transitive_closure(&once);
        ensure(again.classes == c.classes, || {
            "classes change on re-closure".into()
        })?;
        ensure(again.as_indicator(&once) == once, || {
            "relation changes on re-closure".into()
        })?;
        ensure(
            find_intransitive_triplets(&once).overall == TripletClass::None,
            || "closure is intransitive".into(),
        )?;
        for a in 0..ind.len() {
            for b in 0..ind.len() {
                if ind.get(a, b) > 0 {
                    ensure(once.get(a, b) >= 0, || format!("{a} ≻ {b} reversed"))?;
                }
            }
        }
        Ok(())
    })
}

/// An Euler step of the density equation never loses ground against the
/// previous distribution and stays normalised.
pub fn density_monotone(cases: u32) -> Result<(), String> {
    let strat = any_matrix().prop_flat_map(|m| {
        let n = m.len();
        (
            Just(m),
            prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..1.0], n)
                .prop_filter("some mass", |f| f.iter().sum::<f64>() > 1e-3),
            0.01f64..=1.0,
        )
    });
    run(cases, strat, |(m, raw, u)| {
        let total: f64 = raw.iter().sum();
        let f: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let max_r = density_rankings(&f, &m, 1e-12)
            .iter()
            .fold(0.0f64, |a, x| a.max(x.abs()));
        let h = if max_r > 0.0 { u * 0.5 / max_r } else { u };
        let next = density_step(&f, &m, h, 1.0).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let sum: f64 = next.iter().sum();
        ensure((sum - 1.0).abs() <= 1e-12, || format!("sum {sum}"))?;
        ensure(next.iter().all(|&x| x >= 0.0), || "negative weight".into())?;
        let gain = density_inter_step(&next, &f, &m);
        ensure(gain >= -1e-9, || format!("inter-step co-ranking {gain}"))
    })
}
