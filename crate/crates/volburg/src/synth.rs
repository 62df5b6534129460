//! Deterministic synthetic-data generators: AR, harmonic, GARCH, and
//! fractional Gaussian noise. These provide the ground truth behind every
//! estimator's property tests.
//!
//! Determinism contract: all draws come from a ChaCha8 stream seeded with a
//! `u64`, turned into Gaussians by the Marsaglia polar transform in a fixed
//! consumption order, so a given `(params, n, seed)` always produces the
//! same sequence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::{num_complex::Complex, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Seeded Gaussian stream: ChaCha8 uniforms through the polar method, with
/// the paired variate cached.
pub struct GaussianSource {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussianSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(v) = self.spare.take() {
            return v;
        }
        loop {
            let u = 2.0 * self.rng.gen::<f64>() - 1.0;
            let v = 2.0 * self.rng.gen::<f64>() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let factor = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * factor);
                return u * factor;
            }
        }
    }
}

/// A generator request: which process, its parameters, the sample count,
/// and the seed. Identical specs produce identical output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SynthSpec {
    pub kind: SynthKind,
    pub n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SynthKind {
    Ar { coeffs: Vec<f64>, noise_sigma: f64 },
    Harmonic { freqs: Vec<f64>, amps: Vec<f64>, noise_sigma: f64 },
    Garch { omega: f64, alpha: f64, beta: f64 },
    Fgn { h: f64 },
}

/// Generator output; `sigma2_path` is populated only for the GARCH kind.
#[derive(Debug, Clone)]
pub struct SynthOutput {
    pub values: Vec<f64>,
    pub sigma2_path: Option<Vec<f64>>,
}

impl SynthSpec {
    pub fn generate(&self) -> Result<SynthOutput> {
        match &self.kind {
            SynthKind::Ar { coeffs, noise_sigma } => Ok(SynthOutput {
                values: gen_ar(coeffs, *noise_sigma, self.n, self.seed)?,
                sigma2_path: None,
            }),
            SynthKind::Harmonic {
                freqs,
                amps,
                noise_sigma,
            } => Ok(SynthOutput {
                values: gen_harmonic(freqs, amps, *noise_sigma, self.n, self.seed)?,
                sigma2_path: None,
            }),
            SynthKind::Garch { omega, alpha, beta } => {
                let (values, sigma2) = gen_garch(*omega, *alpha, *beta, self.n, self.seed)?;
                Ok(SynthOutput {
                    values,
                    sigma2_path: Some(sigma2),
                })
            }
            SynthKind::Fgn { h } => Ok(SynthOutput {
                values: gen_fgn(*h, self.n, self.seed)?,
                sigma2_path: None,
            }),
        }
    }
}

/// Stationarity test for prediction coefficients via the step-down
/// (inverse Levinson) recursion: stable iff every implied reflection
/// coefficient has magnitude below one.
fn is_stationary(coeffs: &[f64]) -> bool {
    // Polynomial convention a_i = -c_i.
    let mut a: Vec<f64> = coeffs.iter().map(|c| -c).collect();
    for m in (1..=a.len()).rev() {
        let k = a[m - 1];
        if k.abs() >= 1.0 || !k.is_finite() {
            return false;
        }
        let denom = 1.0 - k * k;
        let prev: Vec<f64> = (0..m - 1)
            .map(|j| (a[j] - k * a[m - 2 - j]) / denom)
            .collect();
        a = prev;
    }
    true
}

/// Simulates `x_t = Σ_j coeffs[j]·x_{t−j−1} + σ·ε_t` with Gaussian
/// innovations from the seeded stream; a burn-in of `10·P` samples is
/// generated and discarded.
pub fn gen_ar(coeffs: &[f64], noise_sigma: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::InvalidInput("n must be >= 1".into()));
    }
    if !(noise_sigma >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "noise sigma {noise_sigma} must be >= 0"
        )));
    }
    if !is_stationary(coeffs) {
        return Err(Error::InvalidInput(
            "AR coefficients are not stationary (a reflection coefficient reaches 1)".into(),
        ));
    }
    let burn = 10 * coeffs.len();
    let total = n + burn;
    let mut g = GaussianSource::new(seed);
    let mut x = vec![0.0; total];
    for t in 0..total {
        let mut v = 0.0;
        for (j, c) in coeffs.iter().enumerate() {
            if t > j {
                v += c * x[t - 1 - j];
            }
        }
        x[t] = v + noise_sigma * g.next_gaussian();
    }
    Ok(x.split_off(burn))
}

/// Sum of sinusoids `Σ_k amps[k]·sin(2π·freqs[k]·t)` plus Gaussian noise.
/// Frequencies are in cycles/sample and must lie strictly inside (0, 0.5).
pub fn gen_harmonic(
    freqs: &[f64],
    amps: &[f64],
    noise_sigma: f64,
    n: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::InvalidInput("n must be >= 1".into()));
    }
    if freqs.len() != amps.len() {
        return Err(Error::InvalidInput(format!(
            "{} frequencies for {} amplitudes",
            freqs.len(),
            amps.len()
        )));
    }
    if !(noise_sigma >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "noise sigma {noise_sigma} must be >= 0"
        )));
    }
    if let Some(f) = freqs.iter().find(|f| !(**f > 0.0 && **f < 0.5)) {
        return Err(Error::InvalidInput(format!(
            "frequency {f} outside (0, 0.5) cycles/sample"
        )));
    }
    let mut g = GaussianSource::new(seed);
    let two_pi = 2.0 * std::f64::consts::PI;
    Ok((0..n)
        .map(|t| {
            let det: f64 = freqs
                .iter()
                .zip(amps)
                .map(|(f, a)| a * (two_pi * f * t as f64).sin())
                .sum();
            det + noise_sigma * g.next_gaussian()
        })
        .collect())
}

/// Simulates the GARCH(1,1) recursion, discarding a 500-sample burn-in and
/// returning both the returns and the true conditional-variance path that
/// generated them (`sigma2[t]` produced `returns[t]`).
pub fn gen_garch(
    omega: f64,
    alpha: f64,
    beta: f64,
    n: usize,
    seed: u64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if n < 1 {
        return Err(Error::InvalidInput("n must be >= 1".into()));
    }
    if !(omega > 0.0) || !(alpha >= 0.0) || !(beta >= 0.0) || !(alpha + beta < 1.0) {
        return Err(Error::InvalidInput(format!(
            "parameters (omega={omega}, alpha={alpha}, beta={beta}) violate the \
             GARCH constraints"
        )));
    }
    const BURN: usize = 500;
    let mut g = GaussianSource::new(seed);
    let mut returns = Vec::with_capacity(n);
    let mut sigma2 = Vec::with_capacity(n);
    let mut s2 = omega / (1.0 - alpha - beta);
    let mut eps = s2.sqrt() * g.next_gaussian();
    for t in 1..n + BURN {
        s2 = omega + alpha * eps * eps + beta * s2;
        eps = s2.sqrt() * g.next_gaussian();
        if t >= BURN {
            returns.push(eps);
            sigma2.push(s2);
        }
    }
    Ok((returns, sigma2))
}

/// Exact-covariance fractional Gaussian noise by circulant embedding of the
/// fGn autocovariance `γ(k) = ½(|k+1|^{2H} − 2|k|^{2H} + |k−1|^{2H})`.
/// The cumulative sum of the output is an fBm trace. If the base embedding
/// produces negative eigenvalues the size is doubled once, then the call
/// fails.
pub fn gen_fgn(h: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::InvalidInput(format!(
            "hurst exponent {h} outside (0, 1)"
        )));
    }
    if n < 16 {
        return Err(Error::InvalidInput(format!("n {n} must be >= 16")));
    }
    match fgn_embedded(h, n, n, seed) {
        Ok(v) => Ok(v),
        Err(Error::NumericalFailure(_)) => fgn_embedded(h, n, 2 * n, seed),
        Err(e) => Err(e),
    }
}

/// Davies-Harte sampling with embedding half-size `l >= n`.
fn fgn_embedded(h: f64, n: usize, l: usize, seed: u64) -> Result<Vec<f64>> {
    let m = 2 * l;
    let two_h = 2.0 * h;
    let gamma = |k: f64| 0.5 * ((k + 1.0).powf(two_h) - 2.0 * k.powf(two_h) + (k - 1.0).abs().powf(two_h));

    // First row of the circulant matrix: gamma(0..=l) mirrored.
    let mut row: Vec<Complex<f64>> = Vec::with_capacity(m);
    for k in 0..=l {
        row.push(Complex::new(gamma(k as f64), 0.0));
    }
    for k in (1..l).rev() {
        row.push(Complex::new(gamma(k as f64), 0.0));
    }

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(m);
    fft.process(&mut row);
    let lambda: Vec<f64> = row.iter().map(|c| c.re).collect();
    let max_l = lambda.iter().cloned().fold(0.0, f64::max);
    if lambda.iter().any(|&v| v < -1e-10 * max_l.max(1.0)) {
        return Err(Error::NumericalFailure(
            "circulant embedding produced negative eigenvalues".into(),
        ));
    }

    // Fixed draw order: l primary Gaussians, then l auxiliaries.
    let mut g = GaussianSource::new(seed);
    let g1: Vec<f64> = (0..l).map(|_| g.next_gaussian()).collect();
    let g2: Vec<f64> = (0..l).map(|_| g.next_gaussian()).collect();

    let mf = m as f64;
    let mut w = vec![Complex::new(0.0, 0.0); m];
    w[0] = Complex::new((lambda[0].max(0.0) / mf).sqrt() * g1[0], 0.0);
    w[l] = Complex::new((lambda[l].max(0.0) / mf).sqrt() * g2[0], 0.0);
    for j in 1..l {
        let scale = (lambda[j].max(0.0) / (2.0 * mf)).sqrt();
        w[j] = Complex::new(scale * g1[j], scale * g2[j]);
        w[m - j] = w[j].conj();
    }
    fft.process(&mut w);
    Ok(w[..n].iter().map(|c| c.re).collect())
}
