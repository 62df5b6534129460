//! Hurst exponent by the growth-of-range method, with the fractal metrics
//! derived from it and a Pareto tail-index MLE.
//!
//! The estimator slides a window of `Δt` points one step at a time, records
//! `max − min` per position, averages to `⟨R(Δt)⟩`, and regresses
//! `log⟨R⟩` on `log Δt`: the slope is `H`, the intercept the scaling
//! prefactor, and the 95% confidence interval comes from the t-distribution
//! on the regression slope. Ranges are taken on raw values, with no
//! per-window rescaling — this is growth-of-range, not R/S analysis.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};
use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A Hurst-exponent fit with its regression diagnostics. `window_sizes`
/// and `mean_ranges` retain the (Δt, ⟨R⟩) pairs that entered the fit, for
/// external log-log plotting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HurstEstimate {
    pub h: f64,
    /// Scaling prefactor: `⟨R(Δt)⟩ ≈ c·Δt^H`.
    pub c: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub r_squared: f64,
    pub window_sizes: Vec<usize>,
    pub mean_ranges: Vec<f64>,
}

/// Fractal metrics implied by a Hurst exponent.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FractalMetrics {
    /// Stable-index analogue, `1/H`.
    pub alpha: f64,
    /// Correlation measure, `2H + 1`.
    pub beta: f64,
    /// Box-counting dimension of the trace, `2 − H`.
    pub d_trace: f64,
    /// Box-counting dimension of the path, `min(1/H, D_E)`.
    pub d_path: f64,
    pub euclidean_dim: u32,
}

/// Mean of the sliding-window range: windows of `dt` points advance one
/// point at a time and each contributes `max − min`.
pub fn mean_range(y: &[f64], dt: usize) -> Result<f64> {
    if dt < 2 {
        return Err(Error::InvalidInput(format!("window {dt} must be >= 2")));
    }
    if dt > y.len() {
        return Err(Error::InsufficientData(format!(
            "window {dt} exceeds series length {}",
            y.len()
        )));
    }
    // Monotonic deques give O(N) sliding max and min.
    let mut maxq: VecDeque<usize> = VecDeque::new();
    let mut minq: VecDeque<usize> = VecDeque::new();
    let mut sum = 0.0;
    let mut count = 0usize;
    for i in 0..y.len() {
        while maxq.back().is_some_and(|&b| y[b] <= y[i]) {
            maxq.pop_back();
        }
        maxq.push_back(i);
        while minq.back().is_some_and(|&b| y[b] >= y[i]) {
            minq.pop_back();
        }
        minq.push_back(i);
        if i + 1 >= dt {
            let lo = i + 1 - dt;
            while *maxq.front().unwrap() < lo {
                maxq.pop_front();
            }
            while *minq.front().unwrap() < lo {
                minq.pop_front();
            }
            sum += y[*maxq.front().unwrap()] - y[*minq.front().unwrap()];
            count += 1;
        }
    }
    Ok(sum / count as f64)
}

/// Log-spaced window schedule: 10 sizes spanning roughly `[32, len/4]`,
/// shrinking the lower end for short series. Small windows are excluded
/// because the discrete-sampling bias of the range there inflates the
/// fitted slope.
pub fn default_window_sizes(len: usize) -> Result<Vec<usize>> {
    let hi = len / 4;
    let lo = (hi / 8).clamp(4, 32);
    if hi <= lo {
        return Err(Error::InsufficientData(format!(
            "series of length {len} is too short for the default window schedule"
        )));
    }
    let (llo, lhi) = ((lo as f64).ln(), (hi as f64).ln());
    let mut sizes: Vec<usize> = (0..10)
        .map(|i| (llo + (lhi - llo) * i as f64 / 9.0).exp().round() as usize)
        .collect();
    sizes.dedup();
    if sizes.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "only {} distinct window sizes available for length {len}",
            sizes.len()
        )));
    }
    Ok(sizes)
}

/// Fits `⟨R(Δt)⟩ = c·Δt^H` by OLS in log-log space and reports the slope
/// with its 95% confidence interval.
///
/// Window sizes are sorted and deduplicated; windows whose mean range is
/// zero are dropped (and absent from the reported pairs). At least four
/// usable sizes must remain.
pub fn hurst_estimate(y: &[f64], window_sizes: &[usize]) -> Result<HurstEstimate> {
    let mut sizes: Vec<usize> = window_sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "need at least 4 distinct window sizes, got {}",
            sizes.len()
        )));
    }
    for &dt in &sizes {
        if dt < 2 || dt > y.len() / 2 {
            return Err(Error::InvalidInput(format!(
                "window size {dt} outside [2, len/2 = {}]",
                y.len() / 2
            )));
        }
    }
    let (min, max) = y
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if min == max {
        return Err(Error::DegenerateSignal("constant series".into()));
    }

    let mut used_sizes = Vec::with_capacity(sizes.len());
    let mut ranges = Vec::with_capacity(sizes.len());
    for &dt in &sizes {
        let r = mean_range(y, dt)?;
        if r > 0.0 {
            used_sizes.push(dt);
            ranges.push(r);
        }
    }
    if used_sizes.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "only {} windows with non-zero range",
            used_sizes.len()
        )));
    }

    let xs: Vec<f64> = used_sizes.iter().map(|&dt| (dt as f64).ln()).collect();
    let ys: Vec<f64> = ranges.iter().map(|r| r.ln()).collect();
    let k = xs.len() as f64;
    let xm = xs.iter().sum::<f64>() / k;
    let ym = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;

    let ss_tot: f64 = ys.iter().map(|y| (y - ym) * (y - ym)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    let df = k - 2.0;
    let se_slope = (ss_res / df / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, df)
        .map_err(|e| Error::NumericalFailure(format!("t-distribution: {e}")))?
        .inverse_cdf(0.975);
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else {
        1.0
    };

    Ok(HurstEstimate {
        h: slope,
        c: intercept.exp(),
        ci_low: slope - t * se_slope,
        ci_high: slope + t * se_slope,
        r_squared,
        window_sizes: used_sizes,
        mean_ranges: ranges,
    })
}

/// Derives the fractal metrics from a Hurst exponent in (0, 1].
pub fn fractal_metrics(h: f64, euclidean_dim: u32) -> Result<FractalMetrics> {
    if !(h > 0.0 && h <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "hurst exponent {h} outside (0, 1]"
        )));
    }
    if euclidean_dim < 1 {
        return Err(Error::InvalidInput("euclidean dimension must be >= 1".into()));
    }
    Ok(FractalMetrics {
        alpha: 1.0 / h,
        beta: 2.0 * h + 1.0,
        d_trace: 2.0 - h,
        d_path: (1.0 / h).min(euclidean_dim as f64),
        euclidean_dim,
    })
}

/// Maximum-likelihood Pareto shape estimate `n / Σ ln(x_i / x_min)` over
/// samples bounded below by `x_min`.
pub fn pareto_shape_mle(samples: &[f64], x_min: f64) -> Result<f64> {
    if !(x_min > 0.0) {
        return Err(Error::InvalidInput(format!("x_min {x_min} must be > 0")));
    }
    if let Some(i) = samples.iter().position(|v| !(*v >= x_min)) {
        return Err(Error::InvalidInput(format!(
            "sample at index {i} is {} (below x_min {x_min})",
            samples[i]
        )));
    }
    let above = samples.iter().filter(|v| **v > x_min).count();
    if above < 2 {
        return Err(Error::DegenerateSignal(format!(
            "need at least 2 samples strictly above x_min, got {above}"
        )));
    }
    let log_sum: f64 = samples.iter().map(|v| (v / x_min).ln()).sum();
    Ok(samples.len() as f64 / log_sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_range_constant_is_zero() {
        assert_eq!(mean_range(&[4.0; 10], 3).unwrap(), 0.0);
    }

    #[test]
    fn mean_range_hand_evaluations() {
        assert_eq!(mean_range(&[0.0, 1.0, 0.0, 1.0], 2).unwrap(), 1.0);
        assert_eq!(mean_range(&[0.0, 1.0, 2.0, 3.0], 3).unwrap(), 2.0);
    }

    #[test]
    fn mean_range_errors() {
        assert!(matches!(
            mean_range(&[1.0, 2.0], 3),
            Err(Error::InsufficientData(_))
        ));
        assert!(matches!(
            mean_range(&[1.0, 2.0], 1),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn mean_range_matches_naive_scan() {
        let y: Vec<f64> = (0..200)
            .map(|t| ((t * 37 % 101) as f64).sin() * 3.0 + (t as f64 * 0.01))
            .collect();
        for dt in [2, 5, 17, 50] {
            let fast = mean_range(&y, dt).unwrap();
            let naive: f64 = y
                .windows(dt)
                .map(|w| {
                    let mx = w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    let mn = w.iter().cloned().fold(f64::INFINITY, f64::min);
                    mx - mn
                })
                .sum::<f64>()
                / (y.len() - dt + 1) as f64;
            assert!((fast - naive).abs() < 1e-12);
        }
    }

    #[test]
    fn hurst_rejects_degenerate_inputs() {
        assert!(matches!(
            hurst_estimate(&[1.0; 256], &[8, 16, 32, 64]),
            Err(Error::DegenerateSignal(_))
        ));
        let ramp: Vec<f64> = (0..256).map(|t| t as f64).collect();
        assert!(matches!(
            hurst_estimate(&ramp, &[8, 16, 32]),
            Err(Error::InsufficientData(_))
        ));
        assert!(matches!(
            hurst_estimate(&ramp, &[8, 16, 32, 200]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn hurst_ci_brackets_estimate() {
        let y: Vec<f64> = (0..512)
            .map(|t| (t as f64).sqrt() * (1.0 + 0.1 * ((t * 7 % 13) as f64)))
            .collect();
        let est = hurst_estimate(&y, &default_window_sizes(y.len()).unwrap()).unwrap();
        assert!(est.ci_low <= est.h && est.h <= est.ci_high);
        assert_eq!(est.window_sizes.len(), est.mean_ranges.len());
        assert!(est.window_sizes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn hurst_invariant_under_affine_transforms() {
        let y: Vec<f64> = (0..1024)
            .map(|t| (t as f64 * 0.11).sin() * 2.0 + (t as f64 * 0.013).cos())
            .collect();
        let sizes = default_window_sizes(y.len()).unwrap();
        let base = hurst_estimate(&y, &sizes).unwrap();
        let transformed: Vec<f64> = y.iter().map(|v| 2.5 * v - 7.0).collect();
        let moved = hurst_estimate(&transformed, &sizes).unwrap();
        assert!((base.h - moved.h).abs() < 1e-12);
        assert!((moved.c / base.c - 2.5).abs() < 1e-9);
    }

    #[test]
    fn white_noise_has_low_hurst() {
        let noise = crate::synth::gen_ar(&[0.0], 1.0, 4096, 19).unwrap();
        let est = hurst_estimate(&noise, &default_window_sizes(noise.len()).unwrap()).unwrap();
        assert!(est.h < 0.35, "white noise H {}", est.h);
    }

    #[test]
    fn metrics_brownian_case() {
        let m = fractal_metrics(0.5, 2).unwrap();
        assert_eq!(m.alpha, 2.0);
        assert_eq!(m.beta, 2.0);
        assert_eq!(m.d_trace, 1.5);
        assert_eq!(m.d_path, 2.0);
    }

    #[test]
    fn metrics_table_rows() {
        let m = fractal_metrics(0.596789, 2).unwrap();
        assert!((m.alpha - 1.67563).abs() < 5e-5);
        assert!((m.beta - 2.19358).abs() < 5e-6);
        let m = fractal_metrics(0.441001, 2).unwrap();
        assert!((m.beta - 1.88200).abs() < 5e-6);
    }

    #[test]
    fn metrics_domain() {
        assert!(fractal_metrics(0.0, 2).is_err());
        assert!(fractal_metrics(1.5, 2).is_err());
        assert!(fractal_metrics(f64::NAN, 2).is_err());
        assert!(fractal_metrics(0.5, 0).is_err());
    }

    #[test]
    fn pareto_closed_form() {
        let x_min = 0.5;
        let samples = vec![x_min * std::f64::consts::E; 8];
        let shape = pareto_shape_mle(&samples, x_min).unwrap();
        assert!((shape - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pareto_errors() {
        assert!(matches!(
            pareto_shape_mle(&[0.4, 1.0], 0.5),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            pareto_shape_mle(&[0.5, 0.5], 0.5),
            Err(Error::DegenerateSignal(_))
        ));
        assert!(matches!(
            pareto_shape_mle(&[1.0, 2.0], 0.0),
            Err(Error::InvalidInput(_))
        ));
    }
}
