use crate::error::{Error, Result};
use crate::prefs::{sign_band, Relation};

/// Largest allowed `λ·dt·max|R*|` for one Euler step.
pub const MAX_EULER_FACTOR: f64 = 0.5;

fn check_distribution(f: &[f64], n: usize) -> Result<()> {
    if f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.len(),
        });
    }
    if let Some(x) = f.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
        return Err(Error::InvalidProbabilities(format!(
            "weight {x} is negative or not finite"
        )));
    }
    let sum: f64 = f.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidProbabilities(format!("weights sum to {sum}")));
    }
    Ok(())
}

/// `R*(A) = Σ_C f(C) sign ρ(A, C)`; unoccupied support points get a ranking
/// too but contribute nothing.
pub fn density_rankings<M: Relation + ?Sized>(f: &[f64], m: &M, zero: f64) -> Vec<f64> {
    let n = f.len();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|c| f[c] * f64::from(sign_band(m.value(a, c), zero)))
                .sum()
        })
        .collect()
}

/// One explicit Euler step of `df/dt = λ R* f`, clamped at zero and
/// renormalised.
pub fn density_step<M: Relation + ?Sized>(
    f: &[f64],
    m: &M,
    lambda: f64,
    dt: f64,
) -> Result<Vec<f64>> {
    check_distribution(f, m.len())?;
    let r = density_rankings(f, m, 1e-12);
    let h = lambda * dt;
    let factor = h * r.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if factor.is_nan() || factor > MAX_EULER_FACTOR {
        return Err(Error::StepTooLarge { factor });
    }
    let mut next: Vec<f64> = f
        .iter()
        .zip(&r)
        .map(|(fi, ri)| (fi * (1.0 + h * ri)).max(0.0))
        .collect();
    let total: f64 = next.iter().sum();
    next.iter_mut().for_each(|x| *x /= total);
    Ok(next)
}

/// `R̄(G_after, G_before) = Σ f_after(C) R*_before(C)`.
pub fn density_inter_step<M: Relation + ?Sized>(after: &[f64], before: &[f64], m: &M) -> f64 {
    let r = density_rankings(before, m, 1e-12);
    after.iter().zip(&r).map(|(a, r)| a * r).sum()
}
