//! End-to-end protocol: prices → returns → volatility signal →
//! spectrum-driven order selection → Burg fit → multi-step LPC forecast,
//! benchmarked against the GARCH(1,1) one-step forecast, plus the
//! fractal/Pareto diagnostics row.
//!
//! Note the deliberate asymmetry of the comparison: GARCH is fit on the raw
//! log returns while the LPC model is fit on the sliding-window volatility
//! signal — the two forecasts target the same quantity through different
//! signals.

use serde::{Deserialize, Serialize};

use crate::burg::burg_fit;
use crate::error::{Error, Result};
use crate::forecast::{extrapolate, fb_agreement, Direction};
use crate::fractal::{default_window_sizes, fractal_metrics, hurst_estimate, pareto_shape_mle};
use crate::garch::{garch_fit, garch_forecast};
use crate::memspec::{dominant_cycle, mem_spectrum, pole_order, CyclePeak};
use crate::memspec::{DEFAULT_MIN_PERIOD, DEFAULT_SPECTRUM_BINS};
use crate::series::{historical_vol, log_returns, PriceSeries, VolMode};
use crate::stats;

/// Protocol parameters. The defaults encode the reference configuration:
/// window 13, EWMA λ = 0.928571429, 64-step forecast under an order-128
/// override, exploratory order 32 for cycle extraction, and h = 0.5 in the
/// pole rule.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineConfig {
    /// Sliding window of the historical-volatility signal.
    pub vol_window: usize,
    /// Forecast length. `None` resolves to 64 when `pole_order_override`
    /// is set, otherwise to the extracted cycle length.
    pub forecast_len: Option<usize>,
    /// Fixed pole order; `None` selects `m = cycle_length / h`.
    pub pole_order_override: Option<usize>,
    /// Hurst exponent used by the pole rule.
    pub hurst_h_for_rule: f64,
    /// AR order of the cycle-extraction spectrum.
    pub exploratory_order: usize,
    /// EWMA decay associated with the window choice; available to smoothing
    /// consumers, not used by the comparison itself.
    pub ewma_lambda: f64,
    pub vol_mode: VolMode,
    /// Add the in-sample rms discrepancy to the LPC forecast levels.
    pub apply_offset: bool,
    /// When set, both volatility forecasts are scaled by its square root.
    pub annualize_factor: Option<f64>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            vol_window: 13,
            forecast_len: None,
            pole_order_override: None,
            hurst_h_for_rule: 0.5,
            exploratory_order: 32,
            ewma_lambda: 0.928571429,
            vol_mode: VolMode::PaperLiteral,
            apply_offset: true,
            annualize_factor: None,
        }
    }
}

impl PipelineConfig {
    /// The reference reproduction mode: order pinned to 128 and a 64-step
    /// forecast vector.
    pub fn reference() -> Self {
        Self {
            pole_order_override: Some(128),
            forecast_len: Some(64),
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.vol_window < 2 {
            return Err(Error::InvalidInput(format!(
                "vol_window {} must be >= 2",
                self.vol_window
            )));
        }
        if !(self.hurst_h_for_rule > 0.0 && self.hurst_h_for_rule <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "hurst_h_for_rule {} outside (0, 1]",
                self.hurst_h_for_rule
            )));
        }
        if self.exploratory_order == 0 {
            return Err(Error::InvalidInput("exploratory_order must be >= 1".into()));
        }
        if !(self.ewma_lambda > 0.0 && self.ewma_lambda < 1.0) {
            return Err(Error::InvalidInput(format!(
                "ewma_lambda {} outside (0, 1)",
                self.ewma_lambda
            )));
        }
        if self.forecast_len == Some(0) {
            return Err(Error::InvalidInput("forecast_len must be >= 1".into()));
        }
        if self.pole_order_override == Some(0) {
            return Err(Error::InvalidInput("pole order override must be >= 1".into()));
        }
        if let Some(f) = self.annualize_factor {
            if !(f > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "annualize_factor {f} must be > 0"
                )));
            }
        }
        Ok(())
    }
}

/// One comparison line: the t+1 LPC and GARCH volatility forecasts plus the
/// order-selection context (`hurst` is the exponent used in the pole rule).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub asset: String,
    pub lpc_vol: f64,
    pub garch_vol: f64,
    pub pole_order_used: usize,
    pub cycle_length: f64,
    pub hurst: f64,
}

/// One diagnostics line in the cross-asset table layout: Pareto shape `P`,
/// Hurst `H`, `α = 1/H`, `β = 2H + 1`, and the forward/backward agreement
/// score of the volatility model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagnosticsRow {
    pub asset: String,
    pub pareto_shape: f64,
    pub hurst: f64,
    pub alpha: f64,
    pub beta: f64,
    pub fb_score: f64,
}

/// Extracts the dominant cycle of the squared log returns and resolves the
/// pole order and forecast length for this configuration.
fn select_order(returns: &[f64], cfg: &PipelineConfig) -> Result<(usize, usize, CyclePeak)> {
    let squared: Vec<f64> = returns.iter().map(|v| v * v).collect();
    let exploratory = burg_fit(&squared, cfg.exploratory_order)
        .map_err(|e| e.in_stage("cycle extraction burg fit"))?;
    let spectrum = mem_spectrum(&exploratory, DEFAULT_SPECTRUM_BINS)
        .map_err(|e| e.in_stage("cycle extraction spectrum"))?;
    let cycle = dominant_cycle(&spectrum, DEFAULT_MIN_PERIOD)
        .map_err(|e| e.in_stage("dominant cycle"))?;

    let (order, horizon) = match cfg.pole_order_override {
        Some(m) => (m, cfg.forecast_len.unwrap_or(64)),
        None => {
            let m = pole_order(cycle.period, cfg.hurst_h_for_rule)
                .map_err(|e| e.in_stage("pole order rule"))?;
            let horizon = cfg
                .forecast_len
                .unwrap_or_else(|| (cycle.period.round() as usize).max(1));
            (m, horizon)
        }
    };
    Ok((order, horizon, cycle))
}

/// Runs the full comparison for one asset.
pub fn run_compare(p: &PriceSeries, cfg: &PipelineConfig) -> Result<ComparisonRow> {
    cfg.validate()?;
    let returns = log_returns(p);
    let rv = returns.values();

    let (order, horizon, cycle) = select_order(rv, cfg)?;

    let vol = historical_vol(rv, cfg.vol_window, cfg.vol_mode)
        .map_err(|e| e.in_stage("historical volatility"))?;
    let model =
        burg_fit(vol.values(), order).map_err(|e| e.in_stage("volatility burg fit"))?;
    let fc = extrapolate(&model, vol.values(), horizon, Direction::Forward, cfg.apply_offset)
        .map_err(|e| e.in_stage("volatility forecast"))?;
    let mut lpc_vol = fc.values[0];

    let gm = garch_fit(rv).map_err(|e| e.in_stage("garch fit"))?;
    let mut garch_vol = garch_forecast(&gm, rv).map_err(|e| e.in_stage("garch forecast"))?;

    if let Some(factor) = cfg.annualize_factor {
        let s = factor.sqrt();
        lpc_vol *= s;
        garch_vol *= s;
    }

    Ok(ComparisonRow {
        asset: p.asset_name().to_string(),
        lpc_vol,
        garch_vol,
        pole_order_used: order,
        cycle_length: cycle.period,
        hurst: cfg.hurst_h_for_rule,
    })
}

/// Runs the diagnostics row for one asset: Hurst on the cumulated returns,
/// the derived fractal metrics (Euclidean dimension 2), the Pareto shape of
/// absolute returns above their median, and the forward/backward agreement
/// of the volatility model.
pub fn run_diagnostics(p: &PriceSeries, cfg: &PipelineConfig) -> Result<DiagnosticsRow> {
    cfg.validate()?;
    let returns = log_returns(p);
    let rv = returns.values();

    let cumulated = stats::cumsum(rv);
    let sizes =
        default_window_sizes(cumulated.len()).map_err(|e| e.in_stage("hurst windows"))?;
    let hurst = hurst_estimate(&cumulated, &sizes).map_err(|e| e.in_stage("hurst estimate"))?;
    let metrics = fractal_metrics(hurst.h, 2).map_err(|e| e.in_stage("fractal metrics"))?;

    let abs_returns: Vec<f64> = rv.iter().map(|v| v.abs()).collect();
    let x_min = stats::median(&abs_returns);
    let tail: Vec<f64> = abs_returns.iter().copied().filter(|v| *v >= x_min).collect();
    let pareto = pareto_shape_mle(&tail, x_min).map_err(|e| e.in_stage("pareto shape"))?;

    let (order, horizon, _) = select_order(rv, cfg)?;
    let vol = historical_vol(rv, cfg.vol_window, cfg.vol_mode)
        .map_err(|e| e.in_stage("historical volatility"))?;
    let fb = fb_agreement(vol.values(), order, horizon)
        .map_err(|e| e.in_stage("forward/backward agreement"))?;

    Ok(DiagnosticsRow {
        asset: p.asset_name().to_string(),
        pareto_shape: pareto,
        hurst: hurst.h,
        alpha: metrics.alpha,
        beta: metrics.beta,
        fb_score: fb,
    })
}
