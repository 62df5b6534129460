//! GARCH(1,1) baseline: Gaussian quasi-maximum-likelihood fit and the
//! one-step volatility forecast used for comparison against the LPC route.
//!
//! The conditional-variance recursion is
//! `σ²_t = ω + α·ε²_{t−1} + β·σ²_{t−1}` with `ε_t = r_t` (zero conditional
//! mean) and `σ²_1` initialized to the sample variance of the returns.
//! Fitting maximizes the Gaussian quasi-likelihood with a deterministic
//! multi-start Nelder-Mead search in an unconstrained reparameterization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats;

/// Floor applied to the initial conditional variance.
const SIGMA2_FLOOR: f64 = 1e-12;

/// Stationarity cap on the persistence α + β inside the optimizer.
const PERSISTENCE_CAP: f64 = 0.9999;

const SIMPLEX_TOL: f64 = 1e-8;
const MAX_ITER: usize = 2000;

/// A fitted GARCH(1,1) model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GarchModel {
    pub omega: f64,
    pub alpha: f64,
    pub beta: f64,
    pub log_lik: f64,
    pub sigma2_0: f64,
    pub n_obs: usize,
}

impl GarchModel {
    pub fn persistence(&self) -> f64 {
        self.alpha + self.beta
    }
}

fn check_params(omega: f64, alpha: f64, beta: f64) -> Result<()> {
    if !(omega > 0.0) || !(alpha >= 0.0) || !(beta >= 0.0) || !(alpha + beta < 1.0) {
        return Err(Error::InvalidInput(format!(
            "parameters (omega={omega}, alpha={alpha}, beta={beta}) violate \
             omega > 0, alpha >= 0, beta >= 0, alpha + beta < 1"
        )));
    }
    Ok(())
}

/// Gaussian quasi-log-likelihood
/// `−½ Σ_t (ln 2π + ln σ²_t + r_t²/σ²_t)` under the variance recursion.
pub fn garch_loglik(omega: f64, alpha: f64, beta: f64, r: &[f64]) -> Result<f64> {
    check_params(omega, alpha, beta)?;
    if r.len() < 10 {
        return Err(Error::InsufficientData(format!(
            "need at least 10 returns, got {}",
            r.len()
        )));
    }
    let ln_2pi = (2.0 * std::f64::consts::PI).ln();
    let mut s2 = stats::sample_variance(r).max(SIGMA2_FLOOR);
    let mut ll = 0.0;
    for t in 0..r.len() {
        if t > 0 {
            s2 = omega + alpha * r[t - 1] * r[t - 1] + beta * s2;
        }
        if !(s2 > 0.0) || !s2.is_finite() {
            return Err(Error::NumericalFailure(format!(
                "conditional variance {s2} at t={t}"
            )));
        }
        ll += -0.5 * (ln_2pi + s2.ln() + r[t] * r[t] / s2);
    }
    Ok(ll)
}

/// Maps unconstrained optimizer coordinates to (ω, α, β):
/// `ω = exp(θ0)`, persistence `p = cap·sigmoid(θ1)`, split `w = sigmoid(θ2)`,
/// `α = p·w`, `β = p·(1−w)`.
fn unpack(theta: &[f64]) -> (f64, f64, f64) {
    let sigmoid = |z: f64| 1.0 / (1.0 + (-z).exp());
    let p = PERSISTENCE_CAP * sigmoid(theta[1]);
    let w = sigmoid(theta[2]);
    (theta[0].exp(), p * w, p * (1.0 - w))
}

fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

/// Deterministic Nelder-Mead minimization with standard coefficients.
/// Converges on simplex diameter below `tol` or after `max_iter` sweeps.
fn nelder_mead<F>(f: F, x0: &[f64], step: f64, tol: f64, max_iter: usize) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n + 1);
    simplex.push((f(x0), x0.to_vec()));
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push((f(&v), v));
    }

    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
        let diameter = simplex[1..]
            .iter()
            .flat_map(|(_, v)| v.iter().zip(&simplex[0].1).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if diameter < tol {
            break;
        }

        let mut centroid = vec![0.0; n];
        for (_, v) in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let point = |coef: f64, towards: &[f64]| -> Vec<f64> {
            centroid
                .iter()
                .zip(towards)
                .map(|(c, x)| c + coef * (x - c))
                .collect()
        };

        let reflected = point(-1.0, &worst.1);
        let fr = f(&reflected);
        if fr < simplex[0].0 {
            let expanded = point(-2.0, &worst.1);
            let fe = f(&expanded);
            simplex[n] = if fe < fr {
                (fe, expanded)
            } else {
                (fr, reflected)
            };
        } else if fr < simplex[n - 1].0 {
            simplex[n] = (fr, reflected);
        } else {
            let contracted = if fr < worst.0 {
                point(-0.5, &worst.1)
            } else {
                point(0.5, &worst.1)
            };
            let fc = f(&contracted);
            if fc < worst.0.min(fr) {
                simplex[n] = (fc, contracted);
            } else {
                // Shrink toward the best vertex.
                let best = simplex[0].1.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let v: Vec<f64> = best
                        .iter()
                        .zip(&entry.1)
                        .map(|(b, x)| b + 0.5 * (x - b))
                        .collect();
                    *entry = (f(&v), v);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
    let best = simplex.into_iter().next().unwrap();
    (best.1, best.0)
}

/// Fits GARCH(1,1) by quasi-maximum likelihood. Deterministic: five fixed
/// starting points, best final log-likelihood wins, earlier start wins ties.
pub fn garch_fit(r: &[f64]) -> Result<GarchModel> {
    if r.len() < 100 {
        return Err(Error::InsufficientData(format!(
            "need at least 100 returns to fit, got {}",
            r.len()
        )));
    }
    let var = stats::sample_variance(r);
    if var <= SIGMA2_FLOOR {
        return Err(Error::DegenerateSignal(
            "returns have (near-)zero variance".into(),
        ));
    }

    let objective = |theta: &[f64]| -> f64 {
        let (omega, alpha, beta) = unpack(theta);
        match garch_loglik(omega, alpha, beta, r) {
            Ok(ll) if ll.is_finite() => -ll,
            _ => f64::INFINITY,
        }
    };

    // (persistence, alpha share) pairs spanning low to near-unit persistence,
    // each with omega matched to the sample variance.
    let starts = [(0.3, 0.2), (0.7, 0.15), (0.9, 0.12), (0.95, 0.1), (0.98, 0.05)];
    let mut best: Option<(Vec<f64>, f64)> = None;
    for (p, w) in starts {
        let x0 = [
            (var * (1.0 - p)).ln(),
            logit(p / PERSISTENCE_CAP),
            logit(w),
        ];
        let (x, fv) = nelder_mead(objective, &x0, 0.25, SIMPLEX_TOL, MAX_ITER);
        if fv.is_finite() && best.as_ref().is_none_or(|(_, b)| fv < *b) {
            best = Some((x, fv));
        }
    }
    let (theta, neg_ll) = best.ok_or_else(|| {
        Error::NumericalFailure("all optimizer starts failed to produce a finite likelihood".into())
    })?;
    let (omega, alpha, beta) = unpack(&theta);
    Ok(GarchModel {
        omega,
        alpha,
        beta,
        log_lik: -neg_ll,
        sigma2_0: var.max(SIGMA2_FLOOR),
        n_obs: r.len(),
    })
}

/// One-step-ahead volatility forecast: runs the variance recursion through
/// the sample and returns `√(ω + α·ε²_T + β·σ²_T)` in per-period units.
pub fn garch_forecast(m: &GarchModel, r: &[f64]) -> Result<f64> {
    if r.is_empty() {
        return Err(Error::InsufficientData("empty return series".into()));
    }
    let mut s2 = m.sigma2_0;
    for t in 1..r.len() {
        s2 = m.omega + m.alpha * r[t - 1] * r[t - 1] + m.beta * s2;
    }
    let last = r[r.len() - 1];
    Ok((m.omega + m.alpha * last * last + m.beta * s2).sqrt())
}
