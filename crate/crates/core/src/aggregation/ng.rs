use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{threshold_coarsen, Criterion, FractionalCriteria};
use crate::error::{Error, Result};
use crate::prefs::{
    find_intransitive_triplets, CoRankingMatrix, ElementSet, TripletClass, TripletRecord,
};

/// Search budget for [`ng_witness`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NgSearch {
    /// Half-width of the search box; defaults to `3·max ε`.
    pub half_width: Option<f64>,
    /// Grid step; defaults to `min ε / 4` (ignoring zero thresholds).
    pub step: Option<f64>,
    /// Maximum number of grid pairs examined before falling back to sampling.
    pub max_pairs: u64,
    /// Random `(B, C)` samples tried after the grid.
    pub random_samples: u64,
}

impl Default for NgSearch {
    fn default() -> Self {
        NgSearch {
            half_width: None,
            step: None,
            max_pairs: 10_000_000,
            random_samples: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NgWitness {
    pub predicted: TripletClass,
    /// Utility vectors of A, B and C, one coordinate per criterion.
    pub points: [Vec<f64>; 3],
    /// Coarsened overall co-ranking on {A, B, C}.
    pub coranking: CoRankingMatrix,
    pub record: TripletRecord,
}

/// Class of the strongest intransitivity that threshold coarsening of `K`
/// independent utilities can produce.
pub fn predicted_class(weights: &[f64], epsilons: &[f64]) -> TripletClass {
    match weights.len() {
        0 => TripletClass::None,
        1 => TripletClass::Weak,
        2 => {
            let (a, b) = (weights[0] * epsilons[0], weights[1] * epsilons[1]);
            if (a - b).abs() <= 1e-12 * a.abs().max(b.abs()) {
                TripletClass::SemiWeak
            } else {
                TripletClass::Strict
            }
        }
        _ => TripletClass::Strict,
    }
}

struct Probe {
    elements: ElementSet,
    weights: Vec<f64>,
    epsilons: Vec<f64>,
}

impl Probe {
    fn criteria(&self, a: &[f64], b: &[f64], c: &[f64]) -> FractionalCriteria {
        let data = (0..self.weights.len())
            .map(|k| Criterion::Utilities(vec![a[k], b[k], c[k]]))
            .collect();
        FractionalCriteria {
            elements: self.elements.clone(),
            weights: self.weights.clone(),
            epsilons: self.epsilons.clone(),
            criteria: data,
        }
    }

    /// Coarsened overall co-ranking between two utility points.
    fn rho(&self, x: &[f64], y: &[f64]) -> f64 {
        let mut s = 0.0;
        let mut w_total = 0.0;
        for k in 0..self.weights.len() {
            let d = x[k] - y[k];
            if d.abs() > self.epsilons[k] {
                s += self.weights[k] * d;
            }
            w_total += self.weights[k];
        }
        s / w_total
    }

    /// Cheap pre-screen on the cycle A → B → C → A, confirmed by the full
    /// classifier before a witness is returned.
    fn test(&self, a: &[f64], b: &[f64], c: &[f64], want: TripletClass) -> Option<NgWitness> {
        let edges = [self.rho(a, b), self.rho(b, c), self.rho(c, a)];
        let pos = edges.iter().filter(|&&e| e > 1e-12).count();
        let neg = edges.iter().filter(|&&e| e < -1e-12).count();
        let quick = match (pos.min(neg), pos + neg) {
            (0, 3) => TripletClass::Strict,
            (0, 2) => TripletClass::SemiWeak,
            (0, 1) => TripletClass::Weak,
            _ => TripletClass::None,
        };
        if quick != want {
            return None;
        }
        let m = threshold_coarsen(&self.criteria(a, b, c));
        let report = find_intransitive_triplets(&m.indicator(1e-12));
        (report.overall == want).then(|| NgWitness {
            predicted: want,
            points: [a.to_vec(), b.to_vec(), c.to_vec()],
            coranking: m,
            record: report.triplets[0].clone(),
        })
    }
}

/// Searches for three utility points whose threshold-coarsened overall
/// preference realises the predicted class.
///
/// A is fixed at the origin. B and C range over a regular grid, visited in
/// order of increasing distance from A so that small witnesses are found
/// first; once the pair budget is spent, seeded uniform samples over the
/// same box are tried. Every candidate is classified with the triplet
/// classifier, so the returned class is verified, not assumed.
pub fn ng_witness(
    weights: &[f64],
    epsilons: &[f64],
    search: &NgSearch,
    seed: u64,
) -> Result<NgWitness> {
    let k = weights.len();
    if k == 0 {
        return Err(Error::InvalidCriteria(
            "at least one criterion is required".into(),
        ));
    }
    if epsilons.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: epsilons.len(),
        });
    }
    for (member, &weight) in weights.iter().enumerate() {
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::InvalidWeight { member, weight });
        }
    }
    let eps_max = epsilons.iter().copied().fold(0.0, f64::max);
    if eps_max.is_nan() || eps_max <= 0.0 || epsilons.iter().any(|e| !(e.is_finite() && *e >= 0.0))
    {
        return Err(Error::InvalidCriteria(
            "thresholds must be non-negative and not all zero".into(),
        ));
    }
    let eps_min = epsilons
        .iter()
        .copied()
        .filter(|&e| e > 0.0)
        .fold(f64::INFINITY, f64::min);
    let half = search.half_width.unwrap_or(3.0 * eps_max);
    let step = search.step.unwrap_or(eps_min / 4.0);
    let want = predicted_class(weights, epsilons);
    let probe = Probe {
        elements: ElementSet::new(["A", "B", "C"]).expect("distinct labels"),
        weights: weights.to_vec(),
        epsilons: epsilons.to_vec(),
    };
    let origin = vec![0.0; k];

    let points = grid(k, half, step);
    let mut checked = 0u64;
    // Pairs (s, t) with t ≤ s, so everything within the s-th nearest point
    // has been tried before moving further out.
    'outer: for s in 0..points.len() {
        for t in 0..=s {
            for (b, c) in [(&points[s], &points[t]), (&points[t], &points[s])] {
                if checked >= search.max_pairs {
                    break 'outer;
                }
                checked += 1;
                if let Some(w) = probe.test(&origin, b, c, want) {
                    return Ok(w);
                }
                if s == t {
                    break;
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        (0..k).map(|_| rng.random_range(-half..=half)).collect()
    };
    for _ in 0..search.random_samples {
        let b = sample(&mut rng);
        let c = sample(&mut rng);
        if let Some(w) = probe.test(&origin, &b, &c, want) {
            return Ok(w);
        }
    }
    Err(Error::WitnessNotFound(want.to_string()))
}

/// Non-origin grid points of the box `[−half, half]^k`, nearest first.
fn grid(k: usize, half: f64, step: f64) -> Vec<Vec<f64>> {
    // Far points are never reached within a sensible pair budget, so the
    // enumeration is clipped to a few million points in high dimension.
    let cap = (4_000_000f64.powf(1.0 / k as f64) - 1.0) / 2.0;
    let m = (half / step).floor().min(cap.floor()).max(1.0) as i64;
    let total = ((2 * m + 1) as usize).pow(k as u32);
    let mut pts: Vec<Vec<i64>> = Vec::with_capacity(total);
    let mut idx = vec![-m; k];
    'enumerate: loop {
        if idx.iter().any(|&x| x != 0) {
            pts.push(idx.clone());
        }
        for x in idx.iter_mut() {
            if *x < m {
                *x += 1;
                continue 'enumerate;
            }
            *x = -m;
        }
        break;
    }
    pts.sort_by_key(|p| (p.iter().map(|x| x * x).sum::<i64>(), p.clone()));
    pts.into_iter()
        .map(|p| p.into_iter().map(|x| x as f64 * step).collect())
        .collect()
}
