//! Burg (maximum-entropy) estimation of autoregressive prediction
//! coefficients.
//!
//! The recursion jointly minimizes forward and backward prediction error
//! without ever materializing the Toeplitz normal equations. At stage `m`
//! the reflection coefficient is
//!
//! ```text
//! k_m = -2 · Σ ef_{m-1}(t) · eb_{m-1}(t-1)
//!       ─────────────────────────────────────────
//!       Σ ef_{m-1}(t)² + Σ eb_{m-1}(t-1)²
//! ```
//!
//! with the sums running over the overlap `t = m..N-1`, and the errors are
//! updated as `ef_m(t) = ef_{m-1}(t) + k_m·eb_{m-1}(t-1)`,
//! `eb_m(t) = eb_{m-1}(t-1) + k_m·ef_{m-1}(t)`. The sign of `k_m` is chosen
//! so each stage reduces the combined error; with that convention the stage
//! residual power satisfies `P_m = P_{m-1}·(1 − k_m²)` and is non-increasing
//! by construction. Prediction coefficients follow the Levinson update
//! `a_m(i) = a_{m-1}(i) + k_m·a_{m-1}(m-i)`.
//!
//! Runtime is O(N·P).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats;

/// Denominator guard below which a stage is treated as exactly predictable.
const DEN_GUARD: f64 = 1e-30;

/// A fitted autoregressive model.
///
/// `coeffs` follow the prediction convention `x̂_t = Σ_j coeffs[j]·x_{t-j-1}`
/// on the demeaned signal; `signal_mean` is removed before fitting and must
/// be restored by consumers that forecast signal levels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArModel {
    pub order_p: usize,
    pub coeffs: Vec<f64>,
    pub reflection: Vec<f64>,
    pub residual_power: f64,
    pub signal_mean: f64,
    pub n_samples: usize,
    /// True when the recursion stopped early on an exactly predictable
    /// signal; `order_p` is then the last completed stage.
    #[serde(default)]
    pub truncated: bool,
}

impl ArModel {
    /// Structural consistency check, used when models are loaded from disk.
    pub fn validate(&self) -> Result<()> {
        if self.order_p == 0 {
            return Err(Error::InvalidInput("model order must be positive".into()));
        }
        if self.coeffs.len() != self.order_p || self.reflection.len() != self.order_p {
            return Err(Error::InvalidInput(format!(
                "coefficient lengths {}/{} do not match order {}",
                self.coeffs.len(),
                self.reflection.len(),
                self.order_p
            )));
        }
        if !(self.residual_power >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "residual power {} must be >= 0",
                self.residual_power
            )));
        }
        Ok(())
    }
}

/// Forward and backward prediction errors of a model applied to a signal.
#[derive(Debug, Clone)]
pub struct PredictionErrors {
    pub forward: Vec<f64>,
    pub backward: Vec<f64>,
}

fn check_fit_args(x: &[f64], order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidInput("order must be >= 1".into()));
    }
    if x.len() < 2 * order + 1 {
        return Err(Error::InsufficientData(format!(
            "need at least {} samples for order {}, got {}",
            2 * order + 1,
            order,
            x.len()
        )));
    }
    Ok(())
}

fn demean(x: &[f64]) -> (Vec<f64>, f64) {
    let mean = stats::mean(x);
    (x.iter().map(|v| v - mean).collect(), mean)
}

/// Runs the Burg stages on a demeaned signal, invoking `on_stage` after each
/// completed stage with `(order, polynomial, reflection, residual_power)`.
///
/// The polynomial is in the `A(z) = 1 + Σ a_i z^{-i}` convention; prediction
/// coefficients are its negation. Returns `true` when the recursion stopped
/// early on a vanishing denominator.
fn run_stages<F>(xd: &[f64], max_order: usize, mut on_stage: F) -> Result<bool>
where
    F: FnMut(usize, &[f64], &[f64], f64),
{
    let n = xd.len();
    let mut ef = xd.to_vec();
    let mut eb = xd.to_vec();
    let mut a = vec![0.0; max_order];
    let mut k = vec![0.0; max_order];
    let mut err = xd.iter().map(|v| v * v).sum::<f64>() / n as f64;

    for m in 1..=max_order {
        let mut num = 0.0;
        let mut den = 0.0;
        for t in m..n {
            num += ef[t] * eb[t - 1];
            den += ef[t] * ef[t] + eb[t - 1] * eb[t - 1];
        }
        if den < DEN_GUARD {
            if m == 1 {
                return Err(Error::DegenerateSignal(
                    "constant signal: zero error energy at stage 1".into(),
                ));
            }
            return Ok(true);
        }
        let km = -2.0 * num / den;

        // Levinson update, in place over symmetric pairs.
        let prev = m - 1;
        for j in 0..prev / 2 {
            let hi = prev - 1 - j;
            let lo_v = a[j];
            let hi_v = a[hi];
            a[j] = lo_v + km * hi_v;
            a[hi] = hi_v + km * lo_v;
        }
        if prev % 2 == 1 {
            let mid = prev / 2;
            a[mid] += km * a[mid];
        }
        a[prev] = km;

        // Error update; descending keeps the lag-1 backward terms intact.
        for t in (m..n).rev() {
            let f = ef[t];
            let b = eb[t - 1];
            ef[t] = f + km * b;
            eb[t] = b + km * f;
        }

        err *= 1.0 - km * km;
        k[prev] = km;
        on_stage(m, &a[..m], &k[..m], err);
    }
    Ok(false)
}

fn model_from_stage(
    order: usize,
    a: &[f64],
    k: &[f64],
    err: f64,
    mean: f64,
    n: usize,
    truncated: bool,
) -> ArModel {
    ArModel {
        order_p: order,
        coeffs: a.iter().map(|v| -v).collect(),
        reflection: k.to_vec(),
        residual_power: err,
        signal_mean: mean,
        n_samples: n,
        truncated,
    }
}

/// Fits an AR model of order `order_p` with the Burg recursion.
///
/// The signal mean is removed before fitting and stored on the model. If a
/// stage denominator vanishes the model is truncated to the last completed
/// order and flagged.
pub fn burg_fit(x: &[f64], order_p: usize) -> Result<ArModel> {
    check_fit_args(x, order_p)?;
    let (xd, mean) = demean(x);
    let mut last: Option<(usize, Vec<f64>, Vec<f64>, f64)> = None;
    let truncated = run_stages(&xd, order_p, |m, a, k, err| {
        last = Some((m, a.to_vec(), k.to_vec(), err));
    })?;
    let (order, a, k, err) = last.expect("at least one stage completes");
    Ok(model_from_stage(order, &a, &k, err, mean, x.len(), truncated))
}

/// Emits the fitted model at every order `1..=max_order` from a single
/// recursion pass. Element `p` is bit-for-bit identical to
/// `burg_fit(x, p + 1)`.
pub fn fit_sequence(x: &[f64], max_order: usize) -> Result<Vec<ArModel>> {
    check_fit_args(x, max_order)?;
    let (xd, mean) = demean(x);
    let mut models = Vec::with_capacity(max_order);
    let truncated = run_stages(&xd, max_order, |m, a, k, err| {
        models.push(model_from_stage(m, a, k, err, mean, x.len(), false));
    })?;
    if truncated {
        if let Some(m) = models.last_mut() {
            m.truncated = true;
        }
    }
    Ok(models)
}

/// Direct, allocation-per-stage transcription of the Burg recursion, kept as
/// an independent testing oracle for `burg_fit`.
pub fn burg_fit_naive(x: &[f64], order_p: usize) -> Result<ArModel> {
    check_fit_args(x, order_p)?;
    let (xd, mean) = demean(x);
    let n = xd.len();

    let mut ef = xd.clone();
    let mut eb = xd.clone();
    let mut a_prev: Vec<f64> = Vec::new();
    let mut ks: Vec<f64> = Vec::new();
    let mut err = xd.iter().map(|v| v * v).sum::<f64>() / n as f64;
    let mut completed = 0;
    let mut truncated = false;

    for m in 1..=order_p {
        let mut num = 0.0;
        let mut den = 0.0;
        for t in m..n {
            num += ef[t] * eb[t - 1];
            den += ef[t] * ef[t] + eb[t - 1] * eb[t - 1];
        }
        if den < DEN_GUARD {
            if m == 1 {
                return Err(Error::DegenerateSignal(
                    "constant signal: zero error energy at stage 1".into(),
                ));
            }
            truncated = true;
            break;
        }
        let km = -2.0 * num / den;

        let mut a = vec![0.0; m];
        for j in 0..m - 1 {
            a[j] = a_prev[j] + km * a_prev[m - 2 - j];
        }
        a[m - 1] = km;

        let mut ef_next = ef.clone();
        let mut eb_next = eb.clone();
        for t in m..n {
            ef_next[t] = ef[t] + km * eb[t - 1];
            eb_next[t] = eb[t - 1] + km * ef[t];
        }
        ef = ef_next;
        eb = eb_next;

        err *= 1.0 - km * km;
        a_prev = a;
        ks.push(km);
        completed = m;
    }

    Ok(model_from_stage(
        completed, &a_prev, &ks, err, mean, n, truncated,
    ))
}

/// Forward/backward residuals of a fitted model over its own valid range
/// `t = P..N-1` (demeaned signal).
pub fn prediction_errors(model: &ArModel, x: &[f64]) -> Result<PredictionErrors> {
    if x.len() <= model.order_p {
        return Err(Error::InsufficientData(format!(
            "need more than {} samples, got {}",
            model.order_p,
            x.len()
        )));
    }
    let p = model.order_p;
    let xd: Vec<f64> = x.iter().map(|v| v - model.signal_mean).collect();
    let n = xd.len();
    let mut forward = Vec::with_capacity(n - p);
    let mut backward = Vec::with_capacity(n - p);
    for t in p..n {
        let mut f = xd[t];
        let mut b = xd[t - p];
        for (j, c) in model.coeffs.iter().enumerate() {
            f -= c * xd[t - 1 - j];
            b -= c * xd[t - p + 1 + j];
        }
        forward.push(f);
        backward.push(b);
    }
    Ok(PredictionErrors { forward, backward })
}
