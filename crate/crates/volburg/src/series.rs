//! Price ingestion and the derived signals every estimator consumes:
//! log returns, sliding-window historical volatility, and EWMA smoothing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats;

/// How the sliding-window volatility is computed.
///
/// `PaperLiteral` is the mean absolute deviation about the window mean,
/// `v_i = (1/n) Σ |x̄_i − x_j|`; `Stdev` is the sample standard deviation
/// (n−1 divisor) of the same window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VolMode {
    PaperLiteral,
    Stdev,
}

impl std::str::FromStr for VolMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper_literal" | "paper" | "mad" => Ok(VolMode::PaperLiteral),
            "stdev" | "std" => Ok(VolMode::Stdev),
            other => Err(Error::InvalidInput(format!(
                "unknown volatility mode '{other}' (expected paper_literal or stdev)"
            ))),
        }
    }
}

/// An ordered price history for one asset. Construction enforces the
/// invariants every downstream transform relies on: at least two strictly
/// positive prices, one label per observation.
#[derive(Debug, Clone)]
pub struct PriceSeries {
    labels: Vec<String>,
    prices: Vec<f64>,
    asset_name: String,
}

impl PriceSeries {
    pub fn new(labels: Vec<String>, prices: Vec<f64>, asset_name: impl Into<String>) -> Result<Self> {
        if prices.len() < 2 {
            return Err(Error::InsufficientData(format!(
                "need at least 2 prices, got {}",
                prices.len()
            )));
        }
        if labels.len() != prices.len() {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} prices",
                labels.len(),
                prices.len()
            )));
        }
        if let Some(i) = prices.iter().position(|p| !(*p > 0.0)) {
            return Err(Error::InvalidInput(format!(
                "price at index {i} is {} (must be > 0)",
                prices[i]
            )));
        }
        Ok(Self {
            labels,
            prices,
            asset_name: asset_name.into(),
        })
    }

    /// Builds a series with synthetic index labels `0..n`.
    pub fn from_prices(prices: Vec<f64>, asset_name: impl Into<String>) -> Result<Self> {
        let labels = (0..prices.len()).map(|i| i.to_string()).collect();
        Self::new(labels, prices, asset_name)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    pub fn asset_name(&self) -> &str {
        &self.asset_name
    }

    pub fn len(&self) -> usize {
        self.prices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prices.is_empty()
    }
}

/// Per-period log returns derived from a `PriceSeries`.
#[derive(Debug, Clone)]
pub struct ReturnSeries {
    values: Vec<f64>,
    source_asset: String,
}

impl ReturnSeries {
    /// Wraps an existing return vector (e.g. simulated returns) without a
    /// price-series parent.
    pub fn from_values(values: Vec<f64>, source_asset: impl Into<String>) -> Self {
        Self {
            values,
            source_asset: source_asset.into(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn source_asset(&self) -> &str {
        &self.source_asset
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Sliding-window volatility signal.
#[derive(Debug, Clone)]
pub struct VolSeries {
    values: Vec<f64>,
    window_n: usize,
    mode: VolMode,
}

impl VolSeries {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn window_n(&self) -> usize {
        self.window_n
    }

    pub fn mode(&self) -> VolMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Natural-log returns: `out[t] = ln(p[t+1] / p[t])`.
///
/// The error cases (fewer than two prices, non-positive prices) are ruled
/// out by `PriceSeries` construction, so this transform is total.
pub fn log_returns(p: &PriceSeries) -> ReturnSeries {
    let prices = p.prices();
    let values = prices.windows(2).map(|w| (w[1] / w[0]).ln()).collect();
    ReturnSeries {
        values,
        source_asset: p.asset_name().to_string(),
    }
}

/// Sliding-window historical volatility of a return signal.
///
/// The window slides one point at a time and only complete windows are
/// emitted, so the output has `x.len() − n + 1` values.
pub fn historical_vol(x: &[f64], n: usize, mode: VolMode) -> Result<VolSeries> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("window {n} must be >= 2")));
    }
    if n > x.len() {
        return Err(Error::InsufficientData(format!(
            "window {n} exceeds series length {}",
            x.len()
        )));
    }
    let values = x
        .windows(n)
        .map(|w| {
            let m = stats::mean(w);
            match mode {
                VolMode::PaperLiteral => w.iter().map(|v| (m - v).abs()).sum::<f64>() / n as f64,
                VolMode::Stdev => {
                    (w.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1) as f64).sqrt()
                }
            }
        })
        .collect();
    Ok(VolSeries {
        values,
        window_n: n,
        mode,
    })
}

/// Exponentially weighted moving average with decay `lambda`:
/// `s[0] = x[0]`, `s[t] = λ·s[t−1] + (1−λ)·x[t]`.
pub fn ewma(x: &[f64], lambda: f64) -> Result<Vec<f64>> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidInput(format!(
            "lambda {lambda} must lie in (0, 1)"
        )));
    }
    if x.is_empty() {
        return Err(Error::InsufficientData("empty series".into()));
    }
    let mut out = Vec::with_capacity(x.len());
    let mut s = x[0];
    out.push(s);
    for &v in &x[1..] {
        s = lambda * s + (1.0 - lambda) * v;
        out.push(s);
    }
    Ok(out)
}
