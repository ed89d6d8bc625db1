use serde::{Deserialize, Serialize};

use super::elements::ElementSet;
use crate::error::{Error, Result};

/// Numerical bands used where exact equality is required.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Largest `|m[i][j] + m[j][i]|` repaired by symmetrisation.
    pub anti: f64,
    /// Values with `|x| <= zero` are treated as indifference.
    pub zero: f64,
    /// Largest triplet cycle sum still considered transitive.
    pub delta: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            anti: 1e-9,
            zero: 1e-12,
            delta: 1e-9,
        }
    }
}

/// Sign with a symmetric zero band.
pub fn sign_band(x: f64, zero: f64) -> i8 {
    if x > zero {
        1
    } else if x < -zero {
        -1
    } else {
        0
    }
}

/// Read access shared by graded and indicator co-rankings.
pub trait Relation {
    fn elements(&self) -> &ElementSet;
    fn value(&self, i: usize, j: usize) -> f64;

    fn len(&self) -> usize {
        self.elements().len()
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Antisymmetric matrix of preference magnitudes; `get(i, j) > 0` means
/// element `i` is preferred to element `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoRankingMatrix {
    elements: ElementSet,
    values: Vec<f64>,
}

impl CoRankingMatrix {
    /// Validates a square row-major matrix, repairing asymmetries up to `tol`
    /// by replacing `M` with `(M - Mᵀ)/2`.
    pub fn new(elements: ElementSet, rows: Vec<Vec<f64>>, tol: f64) -> Result<Self> {
        let n = elements.len();
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            flat.extend(row);
        }
        Self::from_flat(elements, flat, tol)
    }

    pub fn from_flat(elements: ElementSet, values: Vec<f64>, tol: f64) -> Result<Self> {
        let n = elements.len();
        if values.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: values.len(),
            });
        }
        let mut worst: Option<(usize, usize, f64)> = None;
        for i in 0..n {
            for j in i..n {
                let (a, b) = (values[i * n + j], values[j * n + i]);
                if !a.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                if !b.is_finite() {
                    return Err(Error::NonFinite { row: j, col: i });
                }
                let asym = (a + b).abs();
                if asym > tol && worst.is_none_or(|w| asym > w.2) {
                    worst = Some((i, j, asym));
                }
            }
        }
        if let Some((row, col, asymmetry)) = worst {
            return Err(Error::AntisymmetryViolation {
                row,
                col,
                asymmetry,
            });
        }
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (values[i * n + j] - values[j * n + i]);
                out[i * n + j] = v;
                out[j * n + i] = -v;
            }
        }
        Ok(CoRankingMatrix {
            elements,
            values: out,
        })
    }

    /// Builds the matrix from its upper triangle: `f(i, j)` for `i < j`.
    pub fn from_fn(elements: ElementSet, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let n = elements.len();
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = f(i, j);
                values[i * n + j] = v;
                values[j * n + i] = -v;
            }
        }
        CoRankingMatrix { elements, values }
    }

    pub fn zeros(elements: ElementSet) -> Self {
        let n = elements.len();
        CoRankingMatrix {
            elements,
            values: vec![0.0; n * n],
        }
    }

    /// `ρ(i, j) = r(i) − r(j)`.
    pub fn from_absolute(ranking: &AbsoluteRanking) -> Self {
        let r = &ranking.values;
        Self::from_fn(ranking.elements.clone(), |i, j| r[i] - r[j])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.elements.len() + j]
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.values
            .chunks(self.len())
            .map(<[f64]>::to_vec)
            .collect()
    }

    pub fn indicator(&self, zero: f64) -> IndicatorMatrix {
        let values = self.values.iter().map(|&v| sign_band(v, zero)).collect();
        IndicatorMatrix {
            elements: self.elements.clone(),
            values,
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        CoRankingMatrix {
            elements: self.elements.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if self.elements != other.elements {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(CoRankingMatrix {
            elements: self.elements.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl Relation for CoRankingMatrix {
    fn elements(&self) -> &ElementSet {
        &self.elements
    }

    fn value(&self, i: usize, j: usize) -> f64 {
        self.get(i, j)
    }
}

/// Sharp preferences: entries in {−1, 0, +1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicatorMatrix {
    elements: ElementSet,
    values: Vec<i8>,
}

impl IndicatorMatrix {
    /// Accepts only exact {−1, 0, +1} antisymmetric input.
    pub fn new(elements: ElementSet, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = elements.len();
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        let mut values = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                let s = match v {
                    1.0 => 1,
                    -1.0 => -1,
                    0.0 => 0,
                    _ => {
                        return Err(Error::NotIndicator {
                            row: i,
                            col: j,
                            value: v,
                        })
                    }
                };
                values.push(s);
            }
        }
        for i in 0..n {
            for j in i..n {
                if values[i * n + j] != -values[j * n + i] {
                    return Err(Error::AntisymmetryViolation {
                        row: i,
                        col: j,
                        asymmetry: f64::from(values[i * n + j] + values[j * n + i]).abs(),
                    });
                }
            }
        }
        Ok(IndicatorMatrix { elements, values })
    }

    /// Builds the matrix from its upper triangle; values are clamped to signs.
    pub fn from_fn(elements: ElementSet, mut f: impl FnMut(usize, usize) -> i8) -> Self {
        let n = elements.len();
        let mut values = vec![0i8; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = f(i, j).signum();
                values[i * n + j] = v;
                values[j * n + i] = -v;
            }
        }
        IndicatorMatrix { elements, values }
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.values[i * self.elements.len() + j]
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn as_coranking(&self) -> CoRankingMatrix {
        CoRankingMatrix {
            elements: self.elements.clone(),
            values: self.values.iter().map(|&v| f64::from(v)).collect(),
        }
    }

    /// The sign of a sign matrix is itself.
    pub fn indicator(&self) -> IndicatorMatrix {
        self.clone()
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.values.chunks(self.len()).map(<[i8]>::to_vec).collect()
    }
}

impl Relation for IndicatorMatrix {
    fn elements(&self) -> &ElementSet {
        &self.elements
    }

    fn value(&self, i: usize, j: usize) -> f64 {
        f64::from(self.get(i, j))
    }
}

/// Per-element utility; induces `ρ(B, A) = r(B) − r(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsoluteRanking {
    pub elements: ElementSet,
    pub values: Vec<f64>,
}

impl AbsoluteRanking {
    pub fn new(elements: ElementSet, values: Vec<f64>) -> Result<Self> {
        if values.len() != elements.len() {
            return Err(Error::DimensionMismatch {
                expected: elements.len(),
                found: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: i, col: 0 });
        }
        Ok(AbsoluteRanking { elements, values })
    }

    pub fn coranking(&self) -> CoRankingMatrix {
        CoRankingMatrix::from_absolute(self)
    }
}
