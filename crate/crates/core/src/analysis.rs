//! Closed-form population model for the alternating pulses and power-law fits.
//!
//! With `g = 1` and a code ket hit by one σσ pulse of length `t`, the
//! population outside the code is exactly `sin²(t)`. One xx/yy period of
//! length `2t` therefore accumulates `∫ = t − ½ sin(2t)`, and `n` periods of a
//! total XY time `T` accumulate `T − (n/2) sin(2T/n)`. Expanding the sine,
//! that total behaves as `2T³/(3n²) + O(n⁻⁴)` for large `n`.

use serde::Serialize;

use crate::error::{Error, Result};

/// `sin²(t)`: population outside the code after a single σσ pulse of length `t`.
pub fn analytic_leakage(t: f64) -> f64 {
    t.sin().powi(2)
}

/// `P(t) = t − ½ sin(2t)`, the leakage accumulated over one xx/yy period.
pub fn analytic_integrated_population(t: f64) -> f64 {
    t - 0.5 * (2.0 * t).sin()
}

/// `n P(T/n) = T − (n/2) sin(2T/n)`.
pub fn analytic_total_population(total_time: f64, n: usize) -> f64 {
    n as f64 * analytic_integrated_population(total_time / n as f64)
}

/// Leading large-`n` term of [`analytic_total_population`]: `2T³/(3n²)`.
pub fn asymptotic_total_population(total_time: f64, n: usize) -> f64 {
    2.0 * total_time.powi(3) / (3.0 * (n as f64).powi(2))
}

/// Trapezoid rule on a (possibly non-uniform) grid.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len(), "trapezoid: grid and values differ in length");
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

/// Least-squares line through `(ln n, ln value)`: `value ≈ e^{log_prefactor} n^{exponent}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub log_prefactor: f64,
    /// RMS of the log-space residuals.
    pub residual: f64,
    pub n_min: u32,
    pub n_max: u32,
    pub n_points: usize,
}

impl PowerLawFit {
    pub fn prefactor(&self) -> f64 {
        self.log_prefactor.exp()
    }

    pub fn predict(&self, n: f64) -> f64 {
        (self.log_prefactor + self.exponent * n.ln()).exp()
    }
}

/// Fits a power law to the points with `n >= n_min`.
pub fn fit_power_law(points: &[(u32, f64)], n_min: u32) -> Result<PowerLawFit> {
    let used: Vec<(u32, f64)> = points.iter().copied().filter(|&(n, _)| n >= n_min).collect();
    if used.len() < 4 {
        return Err(Error::InsufficientPoints(used.len()));
    }
    if let Some(&(n, value)) = used.iter().find(|&&(n, v)| n == 0 || !v.is_finite() || v <= 0.0) {
        return Err(Error::NonPositiveValue { n, value });
    }

    let xs: Vec<f64> = used.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = used.iter().map(|&(_, v)| v.ln()).collect();
    let count = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / count;
    let mean_y = ys.iter().sum::<f64>() / count;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientPoints(1));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let exponent = sxy / sxx;
    let log_prefactor = mean_y - exponent * mean_x;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - log_prefactor - exponent * x).powi(2))
        .sum::<f64>()
        / count)
        .sqrt();

    Ok(PowerLawFit {
        exponent,
        log_prefactor,
        residual,
        n_min: used.iter().map(|p| p.0).min().unwrap_or(n_min),
        n_max: used.iter().map(|p| p.0).max().unwrap_or(n_min),
        n_points: used.len(),
    })
}
