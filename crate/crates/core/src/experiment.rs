//! Experiment drivers: searching for good lengths, Monte Carlo sampling of the
//! ensemble, and the lift demonstration.
//!
//! Trial `i` of a run with base seed `s` samples its generator pair from
//! `ChaCha8Rng::seed_from_u64(s + i)`, so any single CSV row can be rebuilt on
//! its own from the `seed` column.

use num_rational::Ratio;
use serde::Serialize;

use crate::chain_ring::ChainRingCtx;
use crate::dcodes::{
    full_dim_prob_lower_bound, sample_code, total_expectation_bound, weight_at_most, EnsembleShape, TwistParams,
};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::lift::{lift_code, lifted_report, verify_rr_closure, LiftedReport, RingPairConfig};
use crate::numtheory::{coset_mu, gcd};

/// Reads `λ` from JSON: an integer `k` means `g^k` for the field's fixed
/// generator, an array is a coefficient vector.
pub fn parse_lambda(field: &FieldCtx, v: &serde_json::Value) -> Result<FieldElement> {
    match v {
        serde_json::Value::Number(k) => {
            let k = k.as_u64().ok_or_else(|| Error::Malformed(format!("generator exponent {k}")))?;
            Ok(field.gen_power(k))
        }
        serde_json::Value::Array(_) => {
            let x = field.element_from_json(v)?;
            if x.is_zero() {
                return Err(Error::InvalidParams("λ must be nonzero".into()));
            }
            Ok(x)
        }
        other => Err(Error::Malformed(format!("λ must be an integer or an array, got {other}"))),
    }
}

/// [`parse_lambda`] on a JSON string such as `"3"` or `"[1,1]"`.
pub fn parse_lambda_str(field: &FieldCtx, s: &str) -> Result<FieldElement> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Malformed(format!("λ = {s:?}: {e}")))?;
    parse_lambda(field, &v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchRow {
    pub n: usize,
    pub mu: usize,
    pub log_q_n: f64,
    /// `μ(n) / log_q n`.
    pub ratio: f64,
}

/// All `n ≤ n_max` with `gcd(n, qt) = 1` and `μ(n) > log_q n`.
pub fn search_n(q: u64, t: u64, n_max: usize) -> Vec<SearchRow> {
    (2..=n_max)
        .filter(|&n| gcd(n as u64, q * t) == 1)
        .filter_map(|n| {
            let mu = coset_mu(q, n as u64)?;
            let log_q_n = (n as f64).ln() / (q as f64).ln();
            (mu as f64 > log_q_n).then(|| SearchRow { n, mu, log_q_n, ratio: mu as f64 / log_q_n })
        })
        .collect()
}

/// `0.01, 0.02, ...` while below `1 - 1/q` and inside the hypothesis of the
/// total expectation bound.
pub fn default_delta_grid(shape: &EnsembleShape) -> Vec<f64> {
    let top = 1.0 - 1.0 / shape.q as f64;
    (1..100)
        .map(|i| i as f64 / 100.0)
        .take_while(|&d| d < top)
        .take_while(|&d| matches!(total_expectation_bound(shape, d), Ok(b) if b.value().is_some()))
        .collect()
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub field: FieldCtx,
    pub lambda: FieldElement,
    pub alpha: usize,
    pub alpha_prime: usize,
    pub ns: Vec<usize>,
    /// `None` selects [`default_delta_grid`] for each `n`.
    pub deltas: Option<Vec<f64>>,
    pub trials: u64,
    pub seed: u64,
    pub budget: u64,
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRow {
    pub seed: u64,
    pub n: usize,
    pub alpha: usize,
    pub alpha_prime: usize,
    /// `λ = g^lambda` for the field's fixed generator.
    pub lambda: u64,
    pub dim: usize,
    pub min_wt: Option<usize>,
    pub exact: bool,
    /// The code's relative distance `Δ`, compared against each `δ`.
    pub delta_threshold: Option<f64>,
    pub is_full_dim: bool,
}

pub fn run_trials(params: &TwistParams, trials: u64, seed: u64, budget: u64) -> Vec<TrialRow> {
    let lambda = params.field().discrete_log(params.lambda()).expect("λ is nonzero");
    let one = |i: u64| {
        let trial_seed = seed.wrapping_add(i);
        let code = sample_code(params, trial_seed);
        let report = code.min_weight(budget);
        TrialRow {
            seed: trial_seed,
            n: params.n(),
            alpha: params.alpha(),
            alpha_prime: params.alpha_prime(),
            lambda,
            dim: report.dim,
            min_wt: report.min_wt,
            exact: report.exact,
            delta_threshold: report.delta,
            is_full_dim: code.is_full_dim(),
        }
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..trials).map(one).collect()
    }
}

/// Summary for one `(n, δ)`. The zero code has no nonzero word, so it counts
/// towards `Δ > δ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub n: usize,
    pub delta: f64,
    pub trials: u64,
    pub pr_delta_gt: Option<f64>,
    pub pr_full_dim: Option<f64>,
    #[serde(rename = "bound_EY")]
    pub bound_ey: Option<f64>,
    pub bound_fulldim: Option<f64>,
    /// Three binomial standard deviations at the larger of the empirical
    /// `Pr(Δ ≤ δ)` and its bound (capped at 1).
    pub radius_delta: Option<f64>,
    /// Three binomial standard deviations at the full-dimension bound.
    pub radius_full_dim: Option<f64>,
    pub inexact_rows: u64,
    /// `Pr(Δ ≤ δ) ≤ bound_EY + radius_delta`, when the bound applies.
    pub markov_check: Option<bool>,
    /// `Pr(dim = n - 1) ≥ bound_fulldim - radius_full_dim`, when the bound applies.
    pub full_dim_check: Option<bool>,
}

fn three_sigma(p: f64, trials: u64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    3.0 * (p * (1.0 - p) / trials as f64).sqrt()
}

/// Summarises the rows for `n` at one `δ`. Uses nothing but the rows and the shape.
pub fn summarize(rows: &[TrialRow], shape: &EnsembleShape, delta: f64) -> Result<Summary> {
    let rows: Vec<&TrialRow> = rows.iter().filter(|r| r.n == shape.n).collect();
    let trials = rows.len() as u64;
    let length = shape.length();
    let low = rows
        .iter()
        .filter(|r| r.min_wt.is_some_and(|w| weight_at_most(w, delta, length)))
        .count() as u64;
    let full = rows.iter().filter(|r| r.is_full_dim).count() as u64;
    let bound_ey = total_expectation_bound(shape, delta)?.value();
    let bound_fulldim = full_dim_prob_lower_bound(shape).ok();
    let frac = |k: u64| (trials > 0).then(|| k as f64 / trials as f64);
    let pr_le = frac(low);
    let pr_full_dim = frac(full);
    let radius_delta = match (pr_le, bound_ey) {
        (Some(p), Some(b)) => Some(three_sigma(p.max(b.min(1.0)), trials)),
        _ => None,
    };
    let radius_full_dim = match (trials > 0, bound_fulldim) {
        (true, Some(b)) => Some(three_sigma(b, trials)),
        _ => None,
    };
    let markov_check = match (pr_le, bound_ey, radius_delta) {
        (Some(p), Some(b), Some(r)) => Some(p <= b + r),
        _ => None,
    };
    let full_dim_check = match (pr_full_dim, bound_fulldim, radius_full_dim) {
        (Some(p), Some(b), Some(r)) => Some(p >= b - r),
        _ => None,
    };
    Ok(Summary {
        n: shape.n,
        delta,
        trials,
        pr_delta_gt: pr_le.map(|p| 1.0 - p),
        pr_full_dim,
        bound_ey,
        bound_fulldim,
        radius_delta,
        radius_full_dim,
        inexact_rows: rows.iter().filter(|r| !r.exact).count() as u64,
        markov_check,
        full_dim_check,
    })
}

#[derive(Clone, Debug)]
pub struct McOutput {
    pub rows: Vec<TrialRow>,
    pub summaries: Vec<Summary>,
}

impl McOutput {
    pub fn csv(&self) -> String {
        rows_to_csv(&self.rows)
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.summaries).expect("summaries serialize")
    }
}

/// CSV with a header line; no rows gives an empty string.
pub fn rows_to_csv(rows: &[TrialRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("CSV is UTF-8")
}

pub fn mc_experiment(cfg: &ExperimentConfig) -> Result<McOutput> {
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for &n in &cfg.ns {
        let params = TwistParams::new(&cfg.field, cfg.lambda, cfg.alpha, cfg.alpha_prime, n)?;
        let shape = params.shape();
        let deltas = cfg.deltas.clone().unwrap_or_else(|| default_delta_grid(&shape));
        let batch = run_trials(&params, cfg.trials, cfg.seed, cfg.budget);
        for &d in &deltas {
            summaries.push(summarize(&batch, &shape, d)?);
        }
        rows.extend(batch);
    }
    Ok(McOutput { rows, summaries })
}

/// A lifted full-dimension code together with its report.
#[derive(Clone, Debug)]
pub struct LiftDemo {
    pub cfg: RingPairConfig,
    pub seed: u64,
    /// Samples drawn until a full-dimension source code appeared.
    pub tries: u32,
    pub report: LiftedReport,
    pub closed: bool,
    /// `(n - 1) / (α' n ℓ' + α n ℓ)`.
    pub expected_rate: Ratio<u64>,
}

impl LiftDemo {
    pub fn to_json(&self) -> serde_json::Value {
        let mut j = self.report.to_json();
        let obj = j.as_object_mut().expect("report is an object");
        obj.insert("ring_pair".into(), self.cfg.to_json());
        obj.insert("seed".into(), self.seed.into());
        obj.insert("tries".into(), self.tries.into());
        obj.insert("rr_closed".into(), self.closed.into());
        obj.insert("expected_rate".into(), self.expected_rate.to_string().into());
        obj.insert("rate_check".into(), (self.report.rate == self.expected_rate).into());
        j
    }
}

/// Samples source codes from seeds `seed, seed + 1, ...` until one has
/// dimension `n - 1`, then lifts it.
pub fn lift_demo(
    cfg: &RingPairConfig,
    alpha: usize,
    alpha_prime: usize,
    n: usize,
    seed: u64,
    budget: u64,
    max_tries: u32,
) -> Result<LiftDemo> {
    let field = cfg.ring().residue_field();
    let params = TwistParams::new(field, cfg.lambda_residue(), alpha, alpha_prime, n)?;
    for k in 0..max_tries {
        let code = sample_code(&params, seed.wrapping_add(k as u64));
        if !code.is_full_dim() {
            continue;
        }
        let lifted = lift_code(&code, cfg)?;
        let report = lifted_report(&lifted, budget);
        let len = lifted.length() as u64;
        return Ok(LiftDemo {
            cfg: cfg.clone(),
            seed: seed.wrapping_add(k as u64),
            tries: k + 1,
            closed: verify_rr_closure(&lifted),
            expected_rate: Ratio::new(n as u64 - 1, len),
            report,
        });
    }
    Err(Error::ResampleCapExceeded { tries: max_tries })
}

/// Parses a ring description: `Z<p>^<s>` such as `Z8`/`Z2^3`, `F<q>[u]/u^<ell>`
/// such as `F2[u]/u^2`, or `F<q>` for the residue field itself.
pub fn parse_ring(s: &str) -> Result<ChainRingCtx> {
    let bad = || Error::Malformed(format!("ring {s:?}; expected Z<m>, Z<p>^<s>, F<q> or F<q>[u]/u^<l>"));
    let s = s.trim();
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    if let Some(rest) = s.strip_prefix('Z') {
        let (p, e) = match rest.split_once('^') {
            Some((p, e)) => (num(p)?, num(e)? as u32),
            None => {
                let m = num(rest)?;
                let (p, e) = crate::gf::prime_power(m).ok_or_else(bad)?;
                (p, e)
            }
        };
        return ChainRingCtx::zp_pow(p, e);
    }
    if let Some(rest) = s.strip_prefix('F') {
        let (q, ell) = match rest.split_once("[u]/u^") {
            Some((q, l)) => (num(q)?, num(l)? as u32),
            None => (num(rest)?, 1),
        };
        let field = FieldCtx::from_order(q)?;
        return if ell == 1 { Ok(ChainRingCtx::field(&field)) } else { ChainRingCtx::fq_u(&field, ell) };
    }
    Err(bad())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_ring::ChainRingElement;

    #[test]
    fn lambda_forms() {
        let f4 = FieldCtx::new(2, 2).unwrap();
        assert_eq!(parse_lambda_str(&f4, "1").unwrap(), f4.generator());
        assert_eq!(parse_lambda_str(&f4, "[0,1]").unwrap(), f4.from_coeffs(&[0, 1]).unwrap());
        assert!(parse_lambda_str(&f4, "[0,0]").is_err());
        assert!(parse_lambda_str(&f4, "[0,2]").is_err());
        assert!(parse_lambda_str(&f4, "\"x\"").is_err());
        assert!(parse_lambda_str(&f4, "-1").is_err());
    }

    #[test]
    fn search_examples() {
        let rows = search_n(2, 1, 10);
        let ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![3, 5, 7]);
        assert_eq!(rows[0].mu, 2);
        assert_eq!(rows[1].mu, 4);
        assert_eq!(rows[2].mu, 3);
        assert!(search_n(2, 1, 200).iter().all(|r| r.n % 2 == 1));
        let r3 = search_n(3, 1, 2);
        assert_eq!(r3.len(), 1);
        assert_eq!((r3[0].n, r3[0].mu), (2, 1));
        assert!((r3[0].log_q_n - 0.6309).abs() < 1e-4);
        assert!(search_n(2, 1, 1).is_empty());
        // 17 has μ = 8 > log_2 17
        assert!(search_n(2, 1, 20).iter().any(|r| r.n == 17 && r.mu == 8));
        // t = 3 excludes multiples of 3
        assert!(search_n(4, 3, 50).iter().all(|r| r.n % 3 != 0));
    }

    #[test]
    fn delta_grid_respects_hypothesis() {
        let shape = EnsembleShape { q: 2, n: 17, alpha: 1, alpha_prime: 2, mu: 8 };
        let grid = default_delta_grid(&shape);
        assert!(!grid.is_empty());
        assert!((grid[0] - 0.01).abs() < 1e-15);
        for &d in &grid {
            assert!(total_expectation_bound(&shape, d).unwrap().value().is_some());
        }
        let next = grid.last().unwrap() + 0.01;
        assert!(total_expectation_bound(&shape, next).unwrap().value().is_none());
    }

    fn small_cfg(trials: u64) -> ExperimentConfig {
        let f2 = FieldCtx::new(2, 1).unwrap();
        ExperimentConfig {
            field: f2.clone(),
            lambda: f2.one(),
            alpha: 1,
            alpha_prime: 2,
            ns: vec![7],
            deltas: Some(vec![0.05, 0.1]),
            trials,
            seed: 9,
            budget: 1 << 16,
        }
    }

    #[test]
    fn mc_is_reproducible_and_summaries_recompute() {
        let cfg = small_cfg(200);
        let a = mc_experiment(&cfg).unwrap();
        let b = mc_experiment(&cfg).unwrap();
        assert_eq!(a.csv(), b.csv());
        assert_eq!(a.summary_json(), b.summary_json());
        assert_eq!(a.rows.len(), 200);
        assert!(a.csv().starts_with("seed,n,alpha,alpha_prime,lambda,dim,min_wt,exact,delta_threshold,is_full_dim\n"));
        let shape = TwistParams::new(&cfg.field, cfg.lambda, 1, 2, 7).unwrap().shape();
        for s in &a.summaries {
            assert_eq!(s, &summarize(&a.rows, &shape, s.delta).unwrap());
            // direct recount
            let gt = a.rows.iter().filter(|r| r.delta_threshold.is_none_or(|d| d > s.delta + 1e-12)).count();
            assert_eq!(s.pr_delta_gt.unwrap(), gt as f64 / 200.0);
        }
        // each row is reproducible from its own seed
        let params = TwistParams::new(&cfg.field, cfg.lambda, 1, 2, 7).unwrap();
        for r in a.rows.iter().take(5) {
            assert_eq!(sample_code(&params, r.seed).dim(), r.dim);
        }
    }

    #[test]
    fn zero_trials_give_empty_csv() {
        let out = mc_experiment(&small_cfg(0)).unwrap();
        assert_eq!(out.csv(), "");
        assert!(out.summaries.iter().all(|s| s.pr_delta_gt.is_none() && s.markov_check.is_none()));
    }

    #[test]
    fn inexact_rows_are_flagged() {
        let mut cfg = small_cfg(5);
        cfg.budget = 8;
        let out = mc_experiment(&cfg).unwrap();
        assert!(out.rows.iter().all(|r| !r.exact || r.dim <= 3));
        assert!(out.summaries[0].inexact_rows > 0);
    }

    #[test]
    fn ring_parsing() {
        assert_eq!(parse_ring("Z8").unwrap(), ChainRingCtx::zp_pow(2, 3).unwrap());
        assert_eq!(parse_ring("Z2^3").unwrap(), ChainRingCtx::zp_pow(2, 3).unwrap());
        let f2 = FieldCtx::new(2, 1).unwrap();
        assert_eq!(parse_ring("F2[u]/u^2").unwrap(), ChainRingCtx::fq_u(&f2, 2).unwrap());
        assert_eq!(parse_ring("F2").unwrap(), ChainRingCtx::field(&f2));
        assert!(parse_ring("Z6").is_err());
        assert!(parse_ring("Q").is_err());
        assert!(parse_ring("F6").is_err());
    }

    #[test]
    fn lift_demo_rate() {
        let cfg = RingPairConfig::new(&parse_ring("Z8").unwrap(), &parse_ring("Z4").unwrap(), &ChainRingElement::Int(3))
            .unwrap();
        let demo = lift_demo(&cfg, 1, 1, 7, 0, 1 << 16, 50).unwrap();
        assert_eq!(demo.expected_rate, Ratio::new(6, 35));
        assert_eq!(demo.report.rate, Ratio::new(6, 35));
        assert!(demo.closed);
        assert!(demo.report.delta_rescale_check);
        assert_eq!(demo.report.rescale_factor, Ratio::new(2, 5));
        let j = demo.to_json();
        assert_eq!(j["rate_check"], true);
        assert!(matches!(lift_demo(&cfg, 1, 1, 7, 0, 1 << 16, 0), Err(Error::ResampleCapExceeded { tries: 0 })));
    }
}
