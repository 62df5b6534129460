// Validation sites use negated comparisons (`!(x > 0.0)`) so NaN fails the
// domain check instead of slipping through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Volatility forecasting with Burg maximum-entropy linear prediction.
//!
//! The toolkit ingests price series, derives rolling-volatility signals,
//! fits autoregressive models with the Burg forward-backward recursion,
//! extrapolates multi-step volatility forecasts, selects model order from
//! the maximum-entropy spectrum, and benchmarks against a GARCH(1,1)
//! baseline. Hurst-exponent and fractal-dimension estimators cover the
//! long-memory diagnostics, and seeded synthetic generators supply ground
//! truth for testing all of it.

pub mod burg;
pub mod error;
pub mod forecast;
pub mod fractal;
pub mod garch;
pub mod memspec;
pub mod pipeline;
pub mod series;
pub mod synth;

pub(crate) mod stats;

pub use burg::{burg_fit, burg_fit_naive, fit_sequence, ArModel};
pub use error::{Error, Result};
pub use forecast::{extrapolate, fb_agreement, residuals, Direction, Forecast};
pub use fractal::{fractal_metrics, hurst_estimate, mean_range, pareto_shape_mle, HurstEstimate};
pub use garch::{garch_fit, garch_forecast, garch_loglik, GarchModel};
pub use memspec::{dominant_cycle, mem_spectrum, pole_order, CyclePeak, Spectrum};
pub use pipeline::{run_compare, run_diagnostics, ComparisonRow, DiagnosticsRow, PipelineConfig};
pub use series::{ewma, historical_vol, log_returns, PriceSeries, ReturnSeries, VolMode, VolSeries};
