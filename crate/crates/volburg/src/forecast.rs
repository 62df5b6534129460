//! Applying a fitted `ArModel`: in-sample residuals, multi-step
//! extrapolation with the mean-square-discrepancy offset, and the
//! forward/backward agreement diagnostic.

use serde::{Deserialize, Serialize};

use crate::burg::{burg_fit, ArModel};
use crate::error::{Error, Result};
use crate::stats;

/// Extrapolation direction. `Backward` runs the identical recursion on the
/// reversed series, leaning on the Burg model's forward/backward coefficient
/// symmetry; its values step into the past.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

/// A multi-step forecast of signal levels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Forecast {
    pub values: Vec<f64>,
    pub horizon: usize,
    pub direction: Direction,
    /// Root-mean-square in-sample discrepancy, added to every emitted level
    /// when `offset_applied` is set.
    pub rms_offset: f64,
    pub offset_applied: bool,
}

/// In-sample one-step prediction discrepancies.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualReport {
    pub residuals: Vec<f64>,
    pub mean_square: f64,
    pub rms: f64,
}

/// One-step-ahead residuals of `model` over `x`:
/// `r[t] = (x[t] − μ) − Σ_j coeffs[j]·(x[t−j−1] − μ)` for `t = P..N-1`.
pub fn residuals(model: &ArModel, x: &[f64]) -> Result<ResidualReport> {
    let p = model.order_p;
    if x.len() <= p {
        return Err(Error::InsufficientData(format!(
            "need more than {} samples to evaluate residuals, got {}",
            p,
            x.len()
        )));
    }
    let xd: Vec<f64> = x.iter().map(|v| v - model.signal_mean).collect();
    let mut res = Vec::with_capacity(xd.len() - p);
    for t in p..xd.len() {
        let mut pred = 0.0;
        for (j, c) in model.coeffs.iter().enumerate() {
            pred += c * xd[t - 1 - j];
        }
        res.push(xd[t] - pred);
    }
    let mean_square = res.iter().map(|v| v * v).sum::<f64>() / res.len() as f64;
    Ok(ResidualReport {
        residuals: res,
        mean_square,
        rms: mean_square.sqrt(),
    })
}

/// Extrapolates `horizon` steps beyond `x`, feeding point predictions back
/// into the recursion.
///
/// The recursion runs on demeaned values seeded with the last `P`
/// observations (of the reversed series for `Backward`); the signal mean is
/// restored on output. When `apply_offset` is set, the rms of the in-sample
/// residuals is added to every emitted level as a constant uplift.
pub fn extrapolate(
    model: &ArModel,
    x: &[f64],
    horizon: usize,
    direction: Direction,
    apply_offset: bool,
) -> Result<Forecast> {
    if horizon < 1 {
        return Err(Error::InvalidInput("horizon must be >= 1".into()));
    }
    let p = model.order_p;
    if x.len() < p {
        return Err(Error::InsufficientData(format!(
            "need at least {} samples to seed an order-{} forecast, got {}",
            p,
            p,
            x.len()
        )));
    }

    let work: Vec<f64> = match direction {
        Direction::Forward => x.to_vec(),
        Direction::Backward => x.iter().rev().copied().collect(),
    };

    let rms_offset = if work.len() > p {
        residuals(model, &work)?.rms
    } else {
        0.0
    };
    let offset = if apply_offset { rms_offset } else { 0.0 };

    // State buffer: seed values then predictions, newest last.
    let mut state: Vec<f64> = work[work.len() - p..]
        .iter()
        .map(|v| v - model.signal_mean)
        .collect();
    let mut values = Vec::with_capacity(horizon);
    for _ in 0..horizon {
        let mut y = 0.0;
        let len = state.len();
        for (j, c) in model.coeffs.iter().enumerate() {
            y += c * state[len - 1 - j];
        }
        state.push(y);
        values.push(y + model.signal_mean + offset);
    }

    Ok(Forecast {
        values,
        horizon,
        direction,
        rms_offset,
        offset_applied: apply_offset,
    })
}

/// Forward/backward agreement score: fits on the head, forecasts the held-out
/// tail; fits on the reversed tail, forecasts back into the held-out head;
/// returns the pooled rms forecast error over both directions normalized by
/// the sample standard deviation of `x`. Smaller is better.
pub fn fb_agreement(x: &[f64], order_p: usize, horizon: usize) -> Result<f64> {
    if horizon < 1 {
        return Err(Error::InvalidInput("horizon must be >= 1".into()));
    }
    if x.len() < 2 * order_p + horizon {
        return Err(Error::InsufficientData(format!(
            "need at least {} samples for order {} and horizon {}, got {}",
            2 * order_p + horizon,
            order_p,
            horizon,
            x.len()
        )));
    }
    let n = x.len();

    let head = &x[..n - horizon];
    let fwd_model = burg_fit(head, order_p)?;
    let fwd = extrapolate(&fwd_model, head, horizon, Direction::Forward, false)?;

    let rev_tail: Vec<f64> = x[horizon..].iter().rev().copied().collect();
    let bwd_model = burg_fit(&rev_tail, order_p)?;
    let bwd = extrapolate(&bwd_model, &rev_tail, horizon, Direction::Forward, false)?;

    let mut se = 0.0;
    for i in 0..horizon {
        let ef = fwd.values[i] - x[n - horizon + i];
        let eb = bwd.values[i] - x[horizon - 1 - i];
        se += ef * ef + eb * eb;
    }
    let rmse = (se / (2 * horizon) as f64).sqrt();
    let sd = stats::sample_stdev(x);
    if sd == 0.0 {
        return Err(Error::DegenerateSignal("constant signal".into()));
    }
    Ok(rmse / sd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::gen_ar;

    fn model(coeffs: &[f64], mean: f64) -> ArModel {
        ArModel {
            order_p: coeffs.len(),
            coeffs: coeffs.to_vec(),
            reflection: vec![0.0; coeffs.len()],
            residual_power: 0.0,
            signal_mean: mean,
            n_samples: 0,
            truncated: false,
        }
    }

    #[test]
    fn perfect_ar1_has_zero_residuals() {
        let mut x = vec![8.0];
        for _ in 0..63 {
            x.push(0.5 * x.last().unwrap());
        }
        let m = model(&[0.5], 0.0);
        let rep = residuals(&m, &x).unwrap();
        assert!(rep.residuals.iter().all(|r| r.abs() < 1e-12));
        assert!(rep.mean_square < 1e-24);
    }

    #[test]
    fn zero_model_residuals_equal_signal() {
        let x = vec![1.0, -2.0, 3.0, -4.0];
        let m = model(&[0.0], 0.0);
        let rep = residuals(&m, &x).unwrap();
        assert_eq!(rep.residuals, vec![-2.0, 3.0, -4.0]);
        assert!((rep.rms - rep.mean_square.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn in_sample_mean_square_tracks_residual_power() {
        let x = gen_ar(&[0.8], 0.2, 2048, 21).unwrap();
        let m = burg_fit(&x, 1).unwrap();
        let rep = residuals(&m, &x).unwrap();
        let rel = (rep.mean_square - m.residual_power).abs() / m.residual_power;
        assert!(rel < 0.2, "relative gap {rel}");
    }

    #[test]
    fn unit_root_carries_last_value_forward() {
        let m = model(&[1.0], 0.0);
        let x = vec![3.0, 1.0, 4.0, 1.5];
        let fc = extrapolate(&m, &x, 5, Direction::Forward, false).unwrap();
        assert!(fc.values.iter().all(|v| (v - 1.5).abs() < 1e-12));
    }

    #[test]
    fn ar_half_hand_iteration() {
        let m = model(&[0.5], 0.0);
        let x = vec![2.0, 4.0, 8.0];
        let fc = extrapolate(&m, &x, 3, Direction::Forward, false).unwrap();
        assert_eq!(fc.values, vec![4.0, 2.0, 1.0]);
        assert_eq!(fc.horizon, 3);
    }

    #[test]
    fn offset_raises_every_value_by_rms() {
        let x = gen_ar(&[0.7], 0.5, 256, 4).unwrap();
        let m = burg_fit(&x, 2).unwrap();
        let off = extrapolate(&m, &x, 10, Direction::Forward, true).unwrap();
        let raw = extrapolate(&m, &x, 10, Direction::Forward, false).unwrap();
        assert!(off.offset_applied && !raw.offset_applied);
        assert!(off.rms_offset > 0.0);
        assert_eq!(off.rms_offset, raw.rms_offset);
        for (a, b) in off.values.iter().zip(&raw.values) {
            assert!((a - b - off.rms_offset).abs() < 1e-12);
        }
    }

    #[test]
    fn continuation_matches_longer_horizon() {
        let x = gen_ar(&[0.6, -0.2], 0.5, 256, 8).unwrap();
        let m = burg_fit(&x, 2).unwrap();
        let long = extrapolate(&m, &x, 12, Direction::Forward, false).unwrap();
        let short = extrapolate(&m, &x, 5, Direction::Forward, false).unwrap();
        let mut extended = x.clone();
        extended.extend_from_slice(&short.values);
        let cont = extrapolate(&m, &extended, 7, Direction::Forward, false).unwrap();
        for i in 0..5 {
            assert_eq!(long.values[i], short.values[i]);
        }
        for i in 0..7 {
            assert!((long.values[5 + i] - cont.values[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn backward_on_palindrome_mirrors_forward() {
        // A symmetric series forecasts identically in both directions.
        let x: Vec<f64> = (0..32)
            .map(|t| (std::f64::consts::PI * t as f64 / 8.0).sin())
            .collect();
        let sym: Vec<f64> = x.iter().chain(x.iter().rev()).copied().collect();
        let m = burg_fit(&sym, 3).unwrap();
        let f = extrapolate(&m, &sym, 4, Direction::Forward, false).unwrap();
        let rev: Vec<f64> = sym.iter().rev().copied().collect();
        let b = extrapolate(&m, &rev, 4, Direction::Backward, false).unwrap();
        for (a, b) in f.values.iter().zip(&b.values) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn stable_forecast_converges_to_signal_mean() {
        // Mean 10, small fluctuations; by horizon 10·P the recursion has
        // decayed to within 1% of the mean.
        let x: Vec<f64> = gen_ar(&[0.5, -0.3], 0.5, 512, 14)
            .unwrap()
            .into_iter()
            .map(|v| v + 10.0)
            .collect();
        let m = burg_fit(&x, 2).unwrap();
        assert!(m.reflection.iter().all(|k| k.abs() < 1.0));
        let fc = extrapolate(&m, &x, 20, Direction::Forward, false).unwrap();
        let last = *fc.values.last().unwrap();
        assert!(
            (last - m.signal_mean).abs() < 0.01 * m.signal_mean.abs(),
            "terminal forecast {last} vs mean {}",
            m.signal_mean
        );
    }

    #[test]
    fn horizon_zero_rejected() {
        let m = model(&[0.5], 0.0);
        assert!(matches!(
            extrapolate(&m, &[1.0, 2.0], 0, Direction::Forward, false),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            fb_agreement(&[1.0; 32], 2, 0),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn fb_agreement_recovers_deterministic_ar2() {
        // Noise-free AR(2) oscillation (x_t = 2cosθ·x_{t-1} − x_{t-2}), an
        // integer number of periods so the held-out splits stay balanced.
        let theta = 2.0 * std::f64::consts::PI / 20.0;
        let (c1, c2) = (2.0 * theta.cos(), -1.0);
        let mut x = vec![0.0, theta.sin()];
        for t in 2..420 {
            x.push(c1 * x[t - 1] + c2 * x[t - 2]);
        }
        let score = fb_agreement(&x, 2, 20).unwrap();
        assert!(score < 0.01, "score {score}");
    }

    #[test]
    fn fb_agreement_white_noise_near_one() {
        let x = gen_ar(&[0.0], 1.0, 1024, 17).unwrap();
        let score = fb_agreement(&x, 8, 16).unwrap();
        assert!((score - 1.0).abs() < 0.3, "score {score}");
    }
}
