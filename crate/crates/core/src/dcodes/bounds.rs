//! The `q`-ary entropy function and the closed-form bounds on the ensemble.

use crate::error::{Error, Result};
use crate::polyring::Factorization;

use super::params::EnsembleShape;

const EPS: f64 = 1e-12;

fn log_q(x: f64, q: u32) -> f64 {
    x.ln() / (q as f64).ln()
}

/// `h_q(δ) = δ log_q(q-1) - δ log_q δ - (1-δ) log_q(1-δ)` on `[0, 1 - 1/q]`.
pub fn entropy(delta: f64, q: u32) -> Result<f64> {
    if q < 2 {
        return Err(Error::InvalidParams(format!("alphabet size {q} < 2")));
    }
    let top = 1.0 - 1.0 / q as f64;
    if !(delta >= 0.0 && delta <= top + EPS) {
        return Err(Error::OutOfRange(format!("entropy argument {delta} outside [0, {top}]")));
    }
    let d = delta.min(top);
    let xlogx = |x: f64| if x <= 0.0 { 0.0 } else { x * log_q(x, q) };
    Ok(d * log_q(q as f64 - 1.0, q) - xlogx(d) - xlogx(1.0 - d))
}

/// `(α' + α) δ / (2 α'')`, the argument of `h_q` in both expectation bounds.
pub fn scaled_delta(shape: &EnsembleShape, delta: f64) -> f64 {
    shape.alpha_sum() as f64 * delta / (2.0 * shape.alpha_min() as f64)
}

fn check_delta(shape: &EnsembleShape, delta: f64) -> Result<()> {
    let top = 1.0 - 1.0 / shape.q as f64;
    if !(delta > 0.0 && delta < top) {
        return Err(Error::OutOfRange(format!("δ = {delta} outside (0, {top})")));
    }
    Ok(())
}

/// Upper bound on `E(Y_f)` for an `f` with `dim I f = d_f`:
/// `q^{-2 d_f + 2 d_f h_q((α'+α)δ/(2α'')) + log_q((α'+α) n)}`.
pub fn expectation_bound(shape: &EnsembleShape, d_f: usize, delta: f64) -> Result<f64> {
    check_delta(shape, delta)?;
    let h = entropy(scaled_delta(shape, delta), shape.q)?;
    let d = d_f as f64;
    let exponent = -2.0 * d + 2.0 * d * h + log_q(shape.length() as f64, shape.q);
    Ok((shape.q as f64).powf(exponent))
}

/// Outcome of the bound on `E(Y)`, which only applies under its hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TotalBound {
    Holds {
        value: f64,
        exponent: f64,
        /// `1/2 - h_q(...) - log_q(n) / (2μ)`, positive here.
        margin: f64,
    },
    HypothesisNotMet {
        margin: f64,
    },
}

impl TotalBound {
    pub fn value(&self) -> Option<f64> {
        match self {
            TotalBound::Holds { value, .. } => Some(*value),
            TotalBound::HypothesisNotMet { .. } => None,
        }
    }
}

/// `E(Y) ≤ q^{-2μ(1/2 - h_q((α'+α)δ/(2α'')) - 3 log_q n / (2μ)) + log_q(α'+α)}`
/// whenever `1/2 - h_q(...) - log_q n / (2μ) > 0`. By Markov's inequality the
/// value also bounds `Pr(Δ ≤ δ)`.
pub fn total_expectation_bound(shape: &EnsembleShape, delta: f64) -> Result<TotalBound> {
    check_delta(shape, delta)?;
    let h = entropy(scaled_delta(shape, delta), shape.q)?;
    let mu = shape.mu as f64;
    let ln = log_q(shape.n as f64, shape.q);
    let margin = 0.5 - h - ln / (2.0 * mu);
    if margin <= 0.0 {
        return Ok(TotalBound::HypothesisNotMet { margin });
    }
    let exponent = -2.0 * mu * (0.5 - h - 3.0 * ln / (2.0 * mu)) + log_q(shape.alpha_sum() as f64, shape.q);
    Ok(TotalBound::Holds { value: (shape.q as f64).powf(exponent), exponent, margin })
}

/// `(1/4)^{1/μ}`, the lower bound on `Pr(dim = n - 1)`, valid when `μ > log_q n`.
pub fn full_dim_prob_lower_bound(shape: &EnsembleShape) -> Result<f64> {
    let ln = log_q(shape.n as f64, shape.q);
    if (shape.mu as f64) <= ln {
        return Err(Error::InvalidParams(format!("μ = {} does not exceed log_q n = {ln:.4}", shape.mu)));
    }
    Ok(0.25f64.powf(1.0 / shape.mu as f64))
}

/// `|I*| / |I| = Π_{i ≥ 1} (1 - q^{-d_i})`: the probability that `a` alone
/// generates `I_{λ,α}`.
pub fn generator_ratio(fac: &Factorization) -> f64 {
    let q = fac.field.q() as f64;
    fac.degrees[1..].iter().map(|&d| 1.0 - q.powi(-(d as i32))).product()
}

/// `Π_{i ≥ 1} (1 - q^{-2 d_i})`: the exact probability that `C_{a',a}` has
/// dimension `n - 1` (it fails exactly when both `a'` and `a` vanish on some
/// simple component).
pub fn full_dim_probability(fac: &Factorization) -> f64 {
    let q = fac.field.q() as f64;
    fac.degrees[1..].iter().map(|&d| 1.0 - q.powi(-2 * d as i32)).product()
}
