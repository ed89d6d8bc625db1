use serde::{Deserialize, Serialize};

use super::matrix::{AbsoluteRanking, CoRankingMatrix};
use super::transitivity::worst_triplet;

/// Result of splitting a co-ranking into an absolutely transitive part and a
/// remainder.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub transitive: CoRankingMatrix,
    pub intransitive: CoRankingMatrix,
    pub pivot: Option<Pivot>,
}

/// The triplet used to build the intransitive remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pivot {
    pub triplet: (usize, usize, usize),
    pub delta: f64,
    pub epsilon: f64,
}

/// Splits `m` into `T + I` where `T` derives from an absolute ranking and,
/// whenever some triplet has `|δ| > tol`, `I` is strictly intransitive on
/// the triplet with the largest `|δ|`.
///
/// With the triplet `(a, b, c)` and `δ₁ = ρ(c,b) + ρ(b,a) + ρ(a,c)`, the
/// remainder takes `ε = δ₁/4` on the edges `(b,a)` and `(c,b)` and
/// `δ₁ − 2ε` on `(a,c)`, all of the sign of `δ₁`. The ranking anchors at
/// `a` and reads every other element directly off `ρ(·, a)`.
pub fn decompose(m: &CoRankingMatrix, tol: f64) -> Decomposition {
    let zero = || CoRankingMatrix::zeros(m.elements().clone());
    let Some(((a, b, c), delta)) = worst_triplet(m).filter(|(_, d)| d.abs() > tol) else {
        return Decomposition {
            transitive: m.clone(),
            intransitive: zero(),
            pivot: None,
        };
    };
    let eps = delta / 4.0;
    let mut r: Vec<f64> = (0..m.len()).map(|d| m.get(d, a)).collect();
    r[a] = 0.0;
    r[b] = m.get(b, a) - eps;
    r[c] = m.get(c, a) + delta - 2.0 * eps;
    let ranking = AbsoluteRanking {
        elements: m.elements().clone(),
        values: r,
    };
    let transitive = ranking.coranking();
    let intransitive = CoRankingMatrix::from_fn(m.elements().clone(), |i, j| {
        m.get(i, j) - transitive.get(i, j)
    });
    Decomposition {
        transitive,
        intransitive,
        pivot: Some(Pivot {
            triplet: (a, b, c),
            delta,
            epsilon: eps,
        }),
    }
}
