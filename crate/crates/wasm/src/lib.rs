//! Browser bindings for the demo page in `www/`. Each export takes plain
//! numbers and returns a JSON string, or throws a string on bad input.

use dcc_core::dcodes::{
    entropy, expectation_bound, full_dim_prob_lower_bound, sample_code, scaled_delta, total_expectation_bound,
    TwistParams,
};
use dcc_core::experiment::search_n;
use dcc_core::FieldCtx;
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn params(q: u32, lambda_exp: u32, alpha: usize, alpha_prime: usize, n: usize) -> Result<TwistParams, JsValue> {
    let f = FieldCtx::from_order(q as u64).map_err(err)?;
    TwistParams::new(&f, f.gen_power(lambda_exp as u64), alpha, alpha_prime, n).map_err(err)
}

/// Lengths `n ≤ n_max` with `gcd(n, qt) = 1` and `μ(n) > log_q n`.
#[wasm_bindgen]
pub fn search_lengths(q: u32, t: u32, n_max: usize) -> Result<String, JsValue> {
    FieldCtx::from_order(q as u64).map_err(err)?;
    if t == 0 || !(q - 1).is_multiple_of(t) {
        return Err(err(format!("t = {t} does not divide q - 1 = {}", q - 1)));
    }
    let n_max = n_max.min(5000);
    serde_json::to_string(&search_n(q as u64, t as u64, n_max)).map_err(err)
}

/// `h_q` at the scaled argument, the per-`f` bound at full dimension and the
/// total bound, sampled on `steps` points of `(0, 1 - 1/q)`.
#[wasm_bindgen]
pub fn bound_curves(q: u32, alpha: usize, alpha_prime: usize, n: usize, steps: usize) -> Result<String, JsValue> {
    let p = params(q, 0, alpha, alpha_prime, n)?;
    let shape = p.shape();
    let top = 1.0 - 1.0 / q as f64;
    let steps = steps.clamp(2, 2000);
    let points: Vec<serde_json::Value> = (1..steps)
        .map(|i| {
            let delta = top * i as f64 / steps as f64;
            let arg = scaled_delta(&shape, delta);
            serde_json::json!({
                "delta": delta,
                "entropy": entropy(arg, q).ok(),
                "bound_f": expectation_bound(&shape, n - 1, delta).ok(),
                "bound_total": total_expectation_bound(&shape, delta).ok().and_then(|b| b.value()),
            })
        })
        .collect();
    Ok(serde_json::json!({
        "mu": shape.mu,
        "full_dim_lower_bound": full_dim_prob_lower_bound(&shape).ok(),
        "points": points,
    })
    .to_string())
}

/// Samples one code from `seed` and reports its dimension and minimum weight.
#[wasm_bindgen]
pub fn sample_min_weight(
    q: u32,
    lambda_exp: u32,
    alpha: usize,
    alpha_prime: usize,
    n: usize,
    seed: u32,
    budget: u32,
) -> Result<String, JsValue> {
    let p = params(q, lambda_exp, alpha, alpha_prime, n)?;
    let code = sample_code(&p, seed as u64);
    let report = code.min_weight(budget as u64);
    let mut j = report.to_json();
    j["seed"] = seed.into();
    j["t"] = p.order().into();
    j["mu"] = p.mu().into();
    j["full_dim"] = code.is_full_dim().into();
    j["a_prime"] = code.a_prime().to_json();
    j["a"] = code.a().to_json();
    Ok(j.to_string())
}
