//! Maximum-entropy (all-pole) power spectrum of a fitted AR model, dominant
//! cycle extraction, and the cycle-length/Hurst pole-order rule.

use serde::{Deserialize, Serialize};

use crate::burg::ArModel;
use crate::error::{Error, Result};

/// Default frequency-grid resolution.
pub const DEFAULT_SPECTRUM_BINS: usize = 4096;

/// Default shortest admissible cycle, in samples.
pub const DEFAULT_MIN_PERIOD: f64 = 4.0;

/// An all-pole power spectrum sampled on a uniform grid over [0, 0.5]
/// cycles/sample.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Spectrum {
    pub freqs: Vec<f64>,
    pub power: Vec<f64>,
    pub order_p: usize,
    pub n_bins: usize,
}

/// The dominant spectral peak.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CyclePeak {
    /// Cycles per sample, in (0, 0.5].
    pub frequency: f64,
    /// Samples per cycle, `1/frequency`.
    pub period: f64,
    pub power: f64,
    pub bin_index: usize,
}

/// Evaluates the MEM power spectrum
/// `P(f) = residual_power / |1 − Σ_j coeffs[j]·e^{−2πi·f·(j+1)}|²`
/// on `n_bins` uniformly spaced frequencies spanning [0, 0.5].
pub fn mem_spectrum(model: &ArModel, n_bins: usize) -> Result<Spectrum> {
    if n_bins < 16 {
        return Err(Error::InvalidInput(format!(
            "n_bins {n_bins} must be >= 16"
        )));
    }
    let mut freqs = Vec::with_capacity(n_bins);
    let mut power = Vec::with_capacity(n_bins);
    for i in 0..n_bins {
        let f = 0.5 * i as f64 / (n_bins - 1) as f64;
        let omega = 2.0 * std::f64::consts::PI * f;
        let mut re = 1.0;
        let mut im = 0.0;
        for (j, c) in model.coeffs.iter().enumerate() {
            let phase = omega * (j + 1) as f64;
            re -= c * phase.cos();
            im += c * phase.sin();
        }
        freqs.push(f);
        power.push(model.residual_power / (re * re + im * im));
    }
    Ok(Spectrum {
        freqs,
        power,
        order_p: model.order_p,
        n_bins,
    })
}

/// Returns the highest-power interior local maximum with period at least
/// `min_period`, excluding the f = 0 bin. Ties break toward lower frequency
/// (the longer cycle).
pub fn dominant_cycle(s: &Spectrum, min_period: f64) -> Result<CyclePeak> {
    if !(min_period >= 2.0) {
        return Err(Error::InvalidInput(format!(
            "min_period {min_period} must be >= 2"
        )));
    }
    let f_max = 1.0 / min_period;
    let mut best: Option<usize> = None;
    for i in 1..s.n_bins.saturating_sub(1) {
        if s.freqs[i] <= 0.0 || s.freqs[i] > f_max {
            continue;
        }
        if s.power[i] > s.power[i - 1] && s.power[i] >= s.power[i + 1] {
            // Ascending scan keeps the lowest-frequency peak on ties.
            if best.is_none_or(|b| s.power[i] > s.power[b]) {
                best = Some(i);
            }
        }
    }
    let i = best.ok_or_else(|| {
        Error::NoPeak("no interior local maximum in the admissible band".into())
    })?;
    Ok(CyclePeak {
        frequency: s.freqs[i],
        period: 1.0 / s.freqs[i],
        power: s.power[i],
        bin_index: i,
    })
}

/// Pole-order rule `m = round(cycle_length / h)`, half-cases rounded up,
/// never below 1.
pub fn pole_order(cycle_length: f64, h: f64) -> Result<usize> {
    if !(cycle_length >= 2.0) {
        return Err(Error::InvalidInput(format!(
            "cycle length {cycle_length} must be >= 2"
        )));
    }
    if !(h > 0.0 && h <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "hurst divisor {h} must lie in (0, 1]"
        )));
    }
    // The 1e-9 nudge snaps quotients that are half-integers in exact
    // arithmetic but land just below the half in binary (e.g. 13/0.4).
    let m = (cycle_length / h + 0.5 + 1e-9).floor() as i64;
    Ok(m.max(1) as usize)
}
