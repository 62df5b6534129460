//! Command-line front end: CSV ingestion, one subcommand per pipeline
//! stage, and table/CSV/JSON rendering of every report.

pub mod error;
pub mod io;
pub mod output;

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use volburg::burg::{burg_fit, ArModel};
use volburg::forecast::{extrapolate, Direction};
use volburg::fractal::{default_window_sizes, fractal_metrics, hurst_estimate};
use volburg::garch::{garch_fit, garch_forecast};
use volburg::memspec::{dominant_cycle, mem_spectrum};
use volburg::pipeline::{run_compare, run_diagnostics, PipelineConfig};
use volburg::series::{ewma, historical_vol, log_returns, VolMode};
use volburg::synth::{SynthKind, SynthSpec};

use crate::error::{CliError, Result};
use crate::io::{asset_name, load_csv, load_series, ColumnSelector};
use crate::output::{full, sig6, table, Format};

/// Environment variable that overrides `--seed` on the synth command.
pub const SEED_ENV_VAR: &str = "VOLBURG_SEED";

/// What a dispatched invocation produced.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "volburg",
    version,
    about = "Volatility forecasting with Burg maximum-entropy linear prediction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sliding-window volatility of a price file
    Vol(VolArgs),
    /// Multi-step LPC forecast of the volatility signal
    Forecast(ForecastArgs),
    /// Maximum-entropy spectrum of the squared log returns
    Spectrum(SpectrumArgs),
    /// Hurst exponent and fractal metrics of a value series
    Hurst(HurstArgs),
    /// GARCH(1,1) fit and one-step volatility forecast
    Garch(GarchArgs),
    /// LPC vs GARCH t+1 volatility comparison across assets
    Compare(CompareArgs),
    /// Cross-asset diagnostics row: Pareto P, H, alpha, beta, fb score
    Diagnostics(DiagnosticsArgs),
    /// Write a synthetic series as CSV
    Synth(SynthArgs),
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Value column, by header name or 0-based index
    #[arg(long, default_value = "1")]
    column: ColumnSelector,
    /// Field delimiter
    #[arg(long, default_value_t = ',')]
    delim: char,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

impl CommonOpts {
    fn delim_byte(&self) -> Result<u8> {
        if self.delim.is_ascii() {
            Ok(self.delim as u8)
        } else {
            Err(CliError::Core(volburg::Error::InvalidInput(format!(
                "delimiter '{}' must be a single ASCII character",
                self.delim
            ))))
        }
    }
}

/// The protocol parameters, with the reference values as defaults.
#[derive(Args, Clone)]
struct PipelineOpts {
    /// Pole order (number of AR coefficients)
    #[arg(long, default_value_t = 128)]
    order: usize,
    /// Derive the pole order from the spectrum cycle rule m = cycle/h
    #[arg(long, conflicts_with = "order")]
    auto_order: bool,
    /// Forecast vector length [default: 64, or the cycle length with --auto-order]
    #[arg(long)]
    horizon: Option<usize>,
    /// Sliding window of the volatility signal
    #[arg(long, default_value_t = 13)]
    window: usize,
    /// Volatility mode: paper_literal or stdev
    #[arg(long, default_value = "paper_literal")]
    mode: String,
    /// Skip the rms-discrepancy offset on LPC forecast levels
    #[arg(long)]
    no_offset: bool,
    /// Hurst exponent used by the pole rule
    #[arg(long, default_value_t = 0.5)]
    hurst_h: f64,
    /// AR order of the cycle-extraction spectrum
    #[arg(long, default_value_t = 32)]
    expl_order: usize,
    /// EWMA decay associated with the window choice
    #[arg(long, default_value_t = 0.928571429)]
    ewma_lambda: f64,
    /// Annualization factor (periods per year); scales vols by its sqrt
    #[arg(long)]
    annualize: Option<f64>,
}

impl PipelineOpts {
    fn to_config(&self) -> Result<PipelineConfig> {
        Ok(PipelineConfig {
            vol_window: self.window,
            forecast_len: self.horizon,
            pole_order_override: if self.auto_order { None } else { Some(self.order) },
            hurst_h_for_rule: self.hurst_h,
            exploratory_order: self.expl_order,
            ewma_lambda: self.ewma_lambda,
            vol_mode: VolMode::from_str(&self.mode)?,
            apply_offset: !self.no_offset,
            annualize_factor: self.annualize,
        })
    }
}

#[derive(Args)]
struct VolArgs {
    /// Price CSV file
    input: PathBuf,
    #[arg(long, default_value_t = 13)]
    window: usize,
    /// Volatility mode: paper_literal or stdev
    #[arg(long, default_value = "paper_literal")]
    mode: String,
    /// Smooth the output with an EWMA of this decay
    #[arg(long)]
    ewma: Option<f64>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct ForecastArgs {
    /// Price CSV file
    input: PathBuf,
    #[arg(long, default_value_t = 128)]
    order: usize,
    #[arg(long, default_value_t = 64)]
    horizon: usize,
    #[arg(long, default_value_t = 13)]
    window: usize,
    /// Volatility mode: paper_literal or stdev
    #[arg(long, default_value = "paper_literal")]
    mode: String,
    /// Extrapolation direction: forward or backward
    #[arg(long, default_value = "forward")]
    direction: String,
    /// Skip the rms-discrepancy offset on forecast levels
    #[arg(long)]
    no_offset: bool,
    /// Write the fitted model as JSON
    #[arg(long)]
    save_model: Option<PathBuf>,
    /// Load a fitted model instead of fitting
    #[arg(long, conflicts_with = "save_model")]
    load_model: Option<PathBuf>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Price CSV file
    input: PathBuf,
    /// AR order of the fitted spectrum
    #[arg(long, default_value_t = 32)]
    order: usize,
    #[arg(long, default_value_t = 4096)]
    bins: usize,
    /// Shortest admissible cycle, in samples
    #[arg(long, default_value_t = 4.0)]
    min_period: f64,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct HurstArgs {
    /// Value CSV file (any real-valued column)
    input: PathBuf,
    /// Cumulate the series first (turn increments into a level path)
    #[arg(long)]
    cumulate: bool,
    /// Euclidean dimension for the path metrics
    #[arg(long, default_value_t = 2)]
    dim: u32,
    /// Comma-separated window sizes (default: log-spaced schedule)
    #[arg(long)]
    windows: Option<String>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct GarchArgs {
    /// Price CSV file
    input: PathBuf,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct CompareArgs {
    /// Price CSV files, one per asset
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    pipeline: PipelineOpts,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct DiagnosticsArgs {
    /// Price CSV files, one per asset
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    pipeline: PipelineOpts,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct SynthArgs {
    #[command(subcommand)]
    kind: SynthCommand,
}

#[derive(Args, Clone)]
struct SynthCommonOpts {
    /// Number of samples
    #[arg(long, default_value_t = 1024)]
    n: usize,
    /// PRNG seed (overridden by VOLBURG_SEED)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit a price path 100·exp(cumsum) instead of the raw values
    #[arg(long)]
    as_prices: bool,
    /// Output file (stdout when omitted)
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Clone)]
enum SynthCommand {
    /// Autoregressive process with Gaussian innovations
    Ar {
        /// Comma-separated prediction coefficients, e.g. "0.9,-0.2"
        #[arg(long, default_value = "0.9")]
        coeffs: String,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[command(flatten)]
        common: SynthCommonOpts,
    },
    /// Sum of sinusoids plus Gaussian noise
    Harmonic {
        /// Comma-separated frequencies in cycles/sample
        #[arg(long, default_value = "0.05")]
        freqs: String,
        /// Comma-separated amplitudes
        #[arg(long, default_value = "1.0")]
        amps: String,
        #[arg(long, default_value_t = 0.0)]
        sigma: f64,
        #[command(flatten)]
        common: SynthCommonOpts,
    },
    /// GARCH(1,1) returns with the true variance path
    Garch {
        #[arg(long, default_value_t = 1e-4)]
        omega: f64,
        #[arg(long, default_value_t = 0.1)]
        alpha: f64,
        #[arg(long, default_value_t = 0.85)]
        beta: f64,
        #[command(flatten)]
        common: SynthCommonOpts,
    },
    /// Fractional Gaussian noise with exact covariance
    Fgn {
        /// Hurst exponent in (0, 1)
        #[arg(long = "h")]
        h: f64,
        #[command(flatten)]
        common: SynthCommonOpts,
    },
}

/// Parses argv and runs the selected subcommand, capturing output and the
/// process exit code.
pub fn dispatch<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match run(cli.command) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Vol(args) => cmd_vol(args),
        Command::Forecast(args) => cmd_forecast(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Hurst(args) => cmd_hurst(args),
        Command::Garch(args) => cmd_garch(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Diagnostics(args) => cmd_diagnostics(args),
        Command::Synth(args) => cmd_synth(args),
    }
}

fn parse_f64_list(text: &str, what: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>().map_err(|_| {
                CliError::Core(volburg::Error::InvalidInput(format!(
                    "unparseable {what} entry '{s}'"
                )))
            })
        })
        .collect()
}

fn in_file(path: &Path, e: CliError) -> CliError {
    e.in_file(path)
}

fn cmd_vol(args: VolArgs) -> Result<String> {
    let delim = args.common.delim_byte()?;
    let prices = load_csv(&args.input, &args.common.column, delim)?;
    let returns = log_returns(&prices);
    let mode = VolMode::from_str(&args.mode)?;
    let vol = historical_vol(returns.values(), args.window, mode)?;
    let values = match args.ewma {
        Some(lambda) => ewma(vol.values(), lambda)?,
        None => vol.values().to_vec(),
    };

    Ok(match args.common.format {
        Format::Table => {
            let mut out = format!(
                "asset: {}  window: {}  mode: {}  points: {}\n",
                prices.asset_name(),
                args.window,
                args.mode,
                values.len()
            );
            if let Some(lambda) = args.ewma {
                out.push_str(&format!("ewma lambda: {}\n", sig6(lambda)));
            }
            let rows: Vec<Vec<String>> = values
                .iter()
                .enumerate()
                .map(|(i, v)| vec![i.to_string(), sig6(*v)])
                .collect();
            out.push_str(&table(&["index", "vol"], &rows));
            out
        }
        Format::Csv => {
            let mut out = String::from("index,vol\n");
            for (i, v) in values.iter().enumerate() {
                out.push_str(&format!("{i},{}\n", full(*v)));
            }
            out
        }
        Format::Json => {
            let payload = json!({
                "asset": prices.asset_name(),
                "window_n": args.window,
                "mode": serde_json::to_value(mode).unwrap(),
                "ewma_lambda": args.ewma,
                "values": values,
            });
            format!("{payload}\n")
        }
    })
}

fn cmd_forecast(args: ForecastArgs) -> Result<String> {
    let delim = args.common.delim_byte()?;
    let prices = load_csv(&args.input, &args.common.column, delim)?;
    let returns = log_returns(&prices);
    let mode = VolMode::from_str(&args.mode)?;
    let vol = historical_vol(returns.values(), args.window, mode)?;
    let direction = match args.direction.as_str() {
        "forward" => Direction::Forward,
        "backward" => Direction::Backward,
        other => {
            return Err(CliError::Core(volburg::Error::InvalidInput(format!(
                "unknown direction '{other}' (expected forward or backward)"
            ))))
        }
    };

    let model: ArModel = match &args.load_model {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let model: ArModel = serde_json::from_str(&text)
                .map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
            model.validate()?;
            model
        }
        None => burg_fit(vol.values(), args.order)?,
    };
    if let Some(path) = &args.save_model {
        let text = serde_json::to_string_pretty(&model).expect("model serializes");
        std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }

    let fc = extrapolate(&model, vol.values(), args.horizon, direction, !args.no_offset)?;

    Ok(match args.common.format {
        Format::Table => {
            let mut out = format!(
                "asset: {}  order: {}  horizon: {}  direction: {}  rms_offset: {}  offset_applied: {}\n",
                prices.asset_name(),
                model.order_p,
                fc.horizon,
                args.direction,
                sig6(fc.rms_offset),
                fc.offset_applied
            );
            let rows: Vec<Vec<String>> = fc
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| vec![(i + 1).to_string(), sig6(*v)])
                .collect();
            out.push_str(&table(&["step", "value"], &rows));
            out
        }
        Format::Csv => {
            let mut out = String::from("step,value\n");
            for (i, v) in fc.values.iter().enumerate() {
                out.push_str(&format!("{},{}\n", i + 1, full(*v)));
            }
            out
        }
        Format::Json => {
            let payload = json!({
                "asset": prices.asset_name(),
                "order_p": model.order_p,
                "forecast": serde_json::to_value(&fc).unwrap(),
            });
            format!("{payload}\n")
        }
    })
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<String> {
    let delim = args.common.delim_byte()?;
    let prices = load_csv(&args.input, &args.common.column, delim)?;
    let returns = log_returns(&prices);
    let squared: Vec<f64> = returns.values().iter().map(|v| v * v).collect();
    let model = burg_fit(&squared, args.order)?;
    let spectrum = mem_spectrum(&model, args.bins)?;
    // A flat or monotone spectrum is a legitimate finding for this command.
    let cycle = dominant_cycle(&spectrum, args.min_period).ok();

    Ok(match args.common.format {
        Format::Table => {
            let mut out = format!(
                "asset: {}  order: {}  bins: {}\n",
                prices.asset_name(),
                args.order,
                args.bins
            );
            match &cycle {
                Some(c) => out.push_str(&format!(
                    "dominant cycle: period {} samples (frequency {}, power {}, bin {})\n",
                    sig6(c.period),
                    sig6(c.frequency),
                    sig6(c.power),
                    c.bin_index
                )),
                None => out.push_str("dominant cycle: none (no interior maximum)\n"),
            }
            let rows: Vec<Vec<String>> = spectrum
                .freqs
                .iter()
                .zip(&spectrum.power)
                .map(|(f, p)| vec![sig6(*f), sig6(*p)])
                .collect();
            out.push_str(&table(&["frequency", "power"], &rows));
            out
        }
        Format::Csv => {
            let mut out = match &cycle {
                Some(c) => format!(
                    "# dominant_cycle period={} frequency={} power={} bin={}\n",
                    full(c.period),
                    full(c.frequency),
                    full(c.power),
                    c.bin_index
                ),
                None => String::from("# dominant_cycle none\n"),
            };
            out.push_str("frequency,power\n");
            for (f, p) in spectrum.freqs.iter().zip(&spectrum.power) {
                out.push_str(&format!("{},{}\n", full(*f), full(*p)));
            }
            out
        }
        Format::Json => {
            let payload = json!({
                "asset": prices.asset_name(),
                "order_p": spectrum.order_p,
                "n_bins": spectrum.n_bins,
                "dominant_cycle": cycle.map(|c| serde_json::to_value(c).unwrap()),
                "freqs": spectrum.freqs,
                "power": spectrum.power,
            });
            format!("{payload}\n")
        }
    })
}

fn cmd_hurst(args: HurstArgs) -> Result<String> {
    let delim = args.common.delim_byte()?;
    let mut series = load_series(&args.input, &args.common.column, delim)?;
    if args.cumulate {
        let mut acc = 0.0;
        for v in series.iter_mut() {
            acc += *v;
            *v = acc;
        }
    }
    let sizes = match &args.windows {
        Some(text) => parse_f64_list(text, "window size")?
            .into_iter()
            .map(|v| v as usize)
            .collect(),
        None => default_window_sizes(series.len())?,
    };
    let estimate = hurst_estimate(&series, &sizes)?;
    // H outside (0, 1] (steep trends, inverted series) has no fractal
    // interpretation; the estimate is still reported.
    let metrics = fractal_metrics(estimate.h, args.dim).ok();

    Ok(match args.common.format {
        Format::Table => {
            let mut out = format!(
                "source: {}  points: {}  cumulated: {}\n",
                asset_name(&args.input),
                series.len(),
                args.cumulate
            );
            out.push_str(&format!(
                "H: {}  95% CI: [{}, {}]  c: {}  r^2: {}\n",
                sig6(estimate.h),
                sig6(estimate.ci_low),
                sig6(estimate.ci_high),
                sig6(estimate.c),
                sig6(estimate.r_squared)
            ));
            match &metrics {
                Some(m) => out.push_str(&format!(
                    "alpha: {}  beta: {}  d_trace: {}  d_path: {}  (dim {})\n",
                    sig6(m.alpha),
                    sig6(m.beta),
                    sig6(m.d_trace),
                    sig6(m.d_path),
                    m.euclidean_dim
                )),
                None => out.push_str("fractal metrics: unavailable (H outside (0, 1])\n"),
            }
            let rows: Vec<Vec<String>> = estimate
                .window_sizes
                .iter()
                .zip(&estimate.mean_ranges)
                .map(|(dt, r)| vec![dt.to_string(), sig6(*r)])
                .collect();
            out.push_str(&table(&["dt", "mean_range"], &rows));
            out
        }
        Format::Csv => {
            let mut out = format!(
                "# h={} ci_low={} ci_high={} c={} r_squared={}\n",
                full(estimate.h),
                full(estimate.ci_low),
                full(estimate.ci_high),
                full(estimate.c),
                full(estimate.r_squared)
            );
            if let Some(m) = &metrics {
                out.push_str(&format!(
                    "# alpha={} beta={} d_trace={} d_path={}\n",
                    full(m.alpha),
                    full(m.beta),
                    full(m.d_trace),
                    full(m.d_path)
                ));
            }
            out.push_str("dt,mean_range\n");
            for (dt, r) in estimate.window_sizes.iter().zip(&estimate.mean_ranges) {
                out.push_str(&format!("{dt},{}\n", full(*r)));
            }
            out
        }
        Format::Json => {
            let payload = json!({
                "source": asset_name(&args.input),
                "cumulated": args.cumulate,
                "estimate": serde_json::to_value(&estimate).unwrap(),
                "metrics": metrics.map(|m| serde_json::to_value(m).unwrap()),
            });
            format!("{payload}\n")
        }
    })
}

fn cmd_garch(args: GarchArgs) -> Result<String> {
    let delim = args.common.delim_byte()?;
    let prices = load_csv(&args.input, &args.common.column, delim)?;
    let returns = log_returns(&prices);
    let model = garch_fit(returns.values())?;
    let forecast = garch_forecast(&model, returns.values())?;

    Ok(match args.common.format {
        Format::Table => {
            let rows = vec![vec![
                prices.asset_name().to_string(),
                sig6(model.omega),
                sig6(model.alpha),
                sig6(model.beta),
                sig6(model.log_lik),
                model.n_obs.to_string(),
                sig6(forecast),
            ]];
            table(
                &["asset", "omega", "alpha", "beta", "log_lik", "n_obs", "t+1_vol"],
                &rows,
            )
        }
        Format::Csv => {
            let mut out = String::from("asset,omega,alpha,beta,log_lik,sigma2_0,n_obs,forecast\n");
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                prices.asset_name(),
                full(model.omega),
                full(model.alpha),
                full(model.beta),
                full(model.log_lik),
                full(model.sigma2_0),
                model.n_obs,
                full(forecast)
            ));
            out
        }
        Format::Json => {
            let payload = json!({
                "asset": prices.asset_name(),
                "model": serde_json::to_value(&model).unwrap(),
                "forecast": forecast,
            });
            format!("{payload}\n")
        }
    })
}

fn cmd_compare(args: CompareArgs) -> Result<String> {
    let delim = args.common.delim_byte()?;
    let cfg = args.pipeline.to_config()?;
    // Fan out per asset; rows come back in input order.
    let rows = args
        .inputs
        .par_iter()
        .map(|path| {
            let prices =
                load_csv(path, &args.common.column, delim).map_err(|e| in_file(path, e))?;
            run_compare(&prices, &cfg).map_err(|e| in_file(path, CliError::Core(e)))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(match args.common.format {
        Format::Table => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.asset.clone(),
                        sig6(r.lpc_vol),
                        sig6(r.garch_vol),
                        r.pole_order_used.to_string(),
                        sig6(r.cycle_length),
                        sig6(r.hurst),
                    ]
                })
                .collect();
            table(&["asset", "lpc", "garch", "order", "cycle", "hurst"], &body)
        }
        Format::Csv => {
            let mut out = String::from("asset,lpc,garch,order,cycle,hurst\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.asset,
                    full(r.lpc_vol),
                    full(r.garch_vol),
                    r.pole_order_used,
                    full(r.cycle_length),
                    full(r.hurst)
                ));
            }
            out
        }
        Format::Json => {
            let payload = serde_json::to_value(&rows).unwrap();
            format!("{payload}\n")
        }
    })
}

fn cmd_diagnostics(args: DiagnosticsArgs) -> Result<String> {
    let delim = args.common.delim_byte()?;
    let cfg = args.pipeline.to_config()?;
    let rows = args
        .inputs
        .par_iter()
        .map(|path| {
            let prices =
                load_csv(path, &args.common.column, delim).map_err(|e| in_file(path, e))?;
            run_diagnostics(&prices, &cfg).map_err(|e| in_file(path, CliError::Core(e)))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(match args.common.format {
        Format::Table => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.asset.clone(),
                        sig6(r.pareto_shape),
                        sig6(r.hurst),
                        sig6(r.alpha),
                        sig6(r.beta),
                        sig6(r.fb_score),
                    ]
                })
                .collect();
            table(
                &["asset", "pareto_p", "hurst", "alpha", "beta", "fb_score"],
                &body,
            )
        }
        Format::Csv => {
            let mut out = String::from("asset,pareto_p,hurst,alpha,beta,fb_score\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.asset,
                    full(r.pareto_shape),
                    full(r.hurst),
                    full(r.alpha),
                    full(r.beta),
                    full(r.fb_score)
                ));
            }
            out
        }
        Format::Json => {
            let payload = serde_json::to_value(&rows).unwrap();
            format!("{payload}\n")
        }
    })
}

fn resolve_seed(flag_seed: u64) -> Result<u64> {
    match std::env::var(SEED_ENV_VAR) {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| {
            CliError::Core(volburg::Error::InvalidInput(format!(
                "{SEED_ENV_VAR}='{text}' is not an unsigned integer"
            )))
        }),
        Err(_) => Ok(flag_seed),
    }
}

fn cmd_synth(args: SynthArgs) -> Result<String> {
    let (kind, common) = match args.kind {
        SynthCommand::Ar { coeffs, sigma, common } => (
            SynthKind::Ar {
                coeffs: parse_f64_list(&coeffs, "coefficient")?,
                noise_sigma: sigma,
            },
            common,
        ),
        SynthCommand::Harmonic {
            freqs,
            amps,
            sigma,
            common,
        } => (
            SynthKind::Harmonic {
                freqs: parse_f64_list(&freqs, "frequency")?,
                amps: parse_f64_list(&amps, "amplitude")?,
                noise_sigma: sigma,
            },
            common,
        ),
        SynthCommand::Garch {
            omega,
            alpha,
            beta,
            common,
        } => (SynthKind::Garch { omega, alpha, beta }, common),
        SynthCommand::Fgn { h, common } => (SynthKind::Fgn { h }, common),
    };

    let spec = SynthSpec {
        kind,
        n: common.n,
        seed: resolve_seed(common.seed)?,
    };
    let generated = spec.generate()?;

    let mut text = String::new();
    if common.as_prices {
        text.push_str("index,value\n");
        let mut level = 0.0;
        for (i, v) in generated.values.iter().enumerate() {
            level += v;
            text.push_str(&format!("{i},{}\n", full(100.0 * level.exp())));
        }
    } else if let Some(sigma2) = &generated.sigma2_path {
        text.push_str("index,value,sigma2\n");
        for (i, (v, s2)) in generated.values.iter().zip(sigma2).enumerate() {
            text.push_str(&format!("{i},{},{}\n", full(*v), full(*s2)));
        }
    } else {
        text.push_str("index,value\n");
        for (i, v) in generated.values.iter().enumerate() {
            text.push_str(&format!("{i},{}\n", full(*v)));
        }
    }

    match common.out {
        Some(path) => {
            std::fs::write(&path, text)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
