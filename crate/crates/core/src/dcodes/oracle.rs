//! Exact enumeration of the whole probability space `I_{λ,α'} × I_{λ,α}` for
//! tiny parameters.
//!
//! `E(Y)` is computed along two routes that share no code beyond field
//! arithmetic: per generator pair (low-weight codewords times the kernel size
//! of `f ↦ c_f`) and per `f ∈ I` (weights of `σ(f) a'` and `σ(f) a` over all
//! `a'`, `a`).

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::linalg::rank;
use crate::polyring::{Poly, QuotientElement};

use super::bounds::{expectation_bound, full_dim_probability, scaled_delta, total_expectation_bound, TotalBound};
use super::code::build_unchecked;
use super::params::TwistParams;
use super::weight::{max_weight, weight_histogram};

#[derive(Clone, Debug, serde::Serialize)]
pub struct OracleReport {
    pub delta: f64,
    pub pairs: u64,
    /// Largest weight counted as `≤ δ (α'+α) n`.
    pub max_weight: usize,
    /// `E(Y)` as `numerator / pairs`.
    pub e_y_numerator: u64,
    pub e_y: f64,
    pub pr_delta_le_numerator: u64,
    pub pr_delta_le: f64,
    pub pr_full_dim_numerator: u64,
    pub pr_full_dim: f64,
    pub pr_full_dim_formula: f64,
    /// `|Ω_d|` for every `d` that occurs.
    pub omega_sizes: BTreeMap<usize, usize>,
    pub checks: OracleChecks,
    pub bound: TotalBound,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct OracleChecks {
    /// Both routes to `E(Y)` give the same rational.
    pub e_y_routes_agree: bool,
    /// `Pr(Δ ≤ δ) ≤ E(Y)`, compared as rationals.
    pub markov: bool,
    /// `E(Y_f)` is below its closed-form bound for every `f ≠ 0`; `None`
    /// when the bound's entropy argument leaves its domain.
    pub per_f_bound: Option<bool>,
    /// `E(Y)` is below the total bound; `None` when its hypothesis fails.
    pub total_bound: Option<bool>,
    /// Every nonzero `f ∈ I` lies in `C*` for exactly one submodule `C`,
    /// `|C*| = Π (q^{d_i} - 1)` and `Σ |C*| = |I| - 1`.
    pub partition: bool,
    /// `|Ω_d| ≤ n^{d/μ}`.
    pub omega_bound: bool,
    /// The enumerated `Pr(dim = n - 1)` equals `Π (1 - q^{-2 d_i})` exactly.
    pub full_dim_formula: bool,
}

impl OracleChecks {
    pub fn all_pass(&self) -> bool {
        self.e_y_routes_agree
            && self.markov
            && self.per_f_bound != Some(false)
            && self.total_bound != Some(false)
            && self.partition
            && self.omega_bound
            && self.full_dim_formula
    }
}

/// All `q^{n-1}` elements of `I`, in base-`q` order of their basis coordinates.
fn ideal_elements(params: &TwistParams) -> Vec<QuotientElement> {
    let f = params.field();
    let q = f.q() as u64;
    let src = params.twist().source();
    let basis: Vec<QuotientElement> = params.ideal_basis().iter().map(|b| src.from_poly(b)).collect();
    let total = q.pow(basis.len() as u32);
    (0..total)
        .map(|idx| {
            let mut acc = src.zero();
            let mut rest = idx;
            for b in &basis {
                let c = f.element((rest % q) as u32).expect("digit below q");
                rest /= q;
                if !c.is_zero() {
                    acc = acc.add(&b.scale(c)).expect("same ring");
                }
            }
            acc
        })
        .collect()
}

fn weight(v: &[FieldElement]) -> usize {
    v.iter().filter(|c| !c.is_zero()).count()
}

pub fn exact_tiny_oracle(params: &TwistParams, delta: f64, budget: u64) -> Result<OracleReport> {
    let f = params.field();
    let q = f.q() as u64;
    let n = params.n();
    let shape = params.shape();
    let len = params.length();
    let pairs_f = (q as f64).powi(2 * (n as i32 - 1));
    if pairs_f > budget as f64 {
        return Err(Error::BudgetExceeded { needed: pairs_f, budget });
    }
    let bound = total_expectation_bound(&shape, delta)?;
    let pairs = q.pow(2 * (n as u32 - 1));
    let w_max = max_weight(delta, len);

    let ideal = ideal_elements(params);
    let a_primes: Vec<QuotientElement> = ideal.iter().map(|b| params.twist_prime().tau_unchecked(&b.to_poly())).collect();
    let a_s: Vec<QuotientElement> = ideal.iter().map(|b| params.twist().tau_unchecked(&b.to_poly())).collect();

    // route 1: per pair
    let ideal_size = ideal.len() as u64;
    let mut ey_pairs = 0u64;
    let mut pr_le = 0u64;
    let mut full_dim = 0u64;
    for ap in &a_primes {
        for a in &a_s {
            let code = build_unchecked(params, ap, a);
            let hist = weight_histogram(code.basis(), f, len, u64::MAX)?;
            let low: u64 = hist[1..=w_max].iter().sum();
            let kernel = ideal_size / q.pow(code.dim() as u32);
            ey_pairs += low * kernel;
            pr_le += u64::from(low > 0);
            full_dim += u64::from(code.is_full_dim());
        }
    }

    // route 2: per f, with d_f = dim I f
    let src = params.twist().source();
    let basis_q: Vec<QuotientElement> = params.ideal_basis().iter().map(|b| src.from_poly(b)).collect();
    let per_f_domain_ok = scaled_delta(&shape, delta) <= 1.0 - 1.0 / q as f64;
    let mut ey_f = 0u64;
    let mut per_f_ok = true;
    for g in &ideal {
        if g.is_zero() {
            continue;
        }
        let s: Poly = params.twist().sigma(&g.to_poly());
        let mut hp = vec![0u64; len + 1];
        let mut ha = vec![0u64; len + 1];
        for ap in a_primes.iter() {
            hp[weight(ap.mul_poly(&s).coeffs())] += 1;
        }
        for a in a_s.iter() {
            ha[weight(a.mul_poly(&s).coeffs())] += 1;
        }
        let mut count = 0u64;
        for (wp, &cp) in hp.iter().enumerate() {
            for (wa, &ca) in ha.iter().enumerate() {
                if wp + wa >= 1 && wp + wa <= w_max {
                    count += cp * ca;
                }
            }
        }
        ey_f += count;
        if per_f_domain_ok {
            let rows: Vec<Vec<FieldElement>> =
                basis_q.iter().map(|b| b.mul(g).expect("same ring").into_coeffs()).collect();
            let d_f = rank(&rows, f);
            let b = expectation_bound(&shape, d_f, delta)?;
            if count as f64 / pairs as f64 > b {
                per_f_ok = false;
            }
        }
    }

    // Ω_d and C*: submodules of I are sums of simple components F_i, i ≥ 1
    let fac = params.factorization();
    let comps: Vec<QuotientElement> = fac.idempotents[1..].iter().map(|e| src.from_poly(e)).collect();
    let m = comps.len();
    let mut star_counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut partition = true;
    for g in ideal.iter().filter(|g| !g.is_zero()) {
        let mut mask = 0u64;
        let mut dim = 0usize;
        for (i, e) in comps.iter().enumerate() {
            if !e.mul(g).expect("same ring").is_zero() {
                mask |= 1 << i;
                dim += fac.degrees[i + 1];
            }
        }
        let rows: Vec<Vec<FieldElement>> = basis_q.iter().map(|b| b.mul(g).expect("same ring").into_coeffs()).collect();
        partition &= rank(&rows, f) == dim;
        *star_counts.entry(mask).or_insert(0) += 1;
    }
    let mut omega_sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for mask in 1u64..(1 << m) {
        let members: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let d: usize = members.iter().map(|&i| fac.degrees[i + 1]).sum();
        *omega_sizes.entry(d).or_insert(0) += 1;
        let expect: u64 = members.iter().map(|&i| q.pow(fac.degrees[i + 1] as u32) - 1).product();
        partition &= star_counts.get(&mask).copied().unwrap_or(0) == expect;
    }
    partition &= star_counts.values().sum::<u64>() == ideal_size - 1;
    let omega_bound = omega_sizes
        .iter()
        .all(|(&d, &c)| c as f64 <= (n as f64).powf(d as f64 / fac.mu as f64) * (1.0 + 1e-12));

    let expect_full: u128 = fac.degrees[1..].iter().map(|&d| (q as u128).pow(2 * d as u32) - 1).product();
    let e_y = Ratio::new(ey_pairs, pairs);
    let pr = Ratio::new(pr_le, pairs);
    let checks = OracleChecks {
        e_y_routes_agree: ey_pairs == ey_f,
        markov: pr <= e_y,
        per_f_bound: per_f_domain_ok.then_some(per_f_ok),
        total_bound: bound.value().map(|b| ey_pairs as f64 / pairs as f64 <= b),
        partition,
        omega_bound,
        full_dim_formula: expect_full == full_dim as u128,
    };
    Ok(OracleReport {
        delta,
        pairs,
        max_weight: w_max,
        e_y_numerator: ey_pairs,
        e_y: ey_pairs as f64 / pairs as f64,
        pr_delta_le_numerator: pr_le,
        pr_delta_le: pr_le as f64 / pairs as f64,
        pr_full_dim_numerator: full_dim,
        pr_full_dim: full_dim as f64 / pairs as f64,
        pr_full_dim_formula: full_dim_probability(fac),
        omega_sizes,
        checks,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;

    #[test]
    fn binary_length_three() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        for alpha in [1, 2] {
            let p = TwistParams::new(&f2, f2.one(), alpha, alpha, 3).unwrap();
            for i in 1..50 {
                let delta = i as f64 * 0.01;
                let r = exact_tiny_oracle(&p, delta, 1 << 16).unwrap();
                assert_eq!(r.pairs, 16);
                assert!(r.checks.all_pass(), "α={alpha} δ={delta}: {:?}", r.checks);
                if delta * ((2 * alpha * 3) as f64) < 1.0 {
                    assert_eq!(r.pr_delta_le_numerator, 0);
                }
            }
        }
        // a single component of degree 2: only (0, 0) falls short of full dimension
        let p = TwistParams::new(&f2, f2.one(), 1, 1, 3).unwrap();
        let r = exact_tiny_oracle(&p, 0.01, 1 << 16).unwrap();
        assert_eq!(r.pr_full_dim_numerator, 15);
        assert_eq!(r.omega_sizes, BTreeMap::from([(2, 1)]));
    }

    #[test]
    fn other_small_cases() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let p = TwistParams::new(&f3, f3.from_int(2), 1, 3, 4).unwrap_err();
        assert!(matches!(p, Error::InvalidParams(_)));
        let p = TwistParams::new(&f3, f3.from_int(2), 1, 3, 5).unwrap();
        assert!(matches!(exact_tiny_oracle(&p, 0.1, 1000), Err(Error::BudgetExceeded { .. })));
        let r = exact_tiny_oracle(&p, 0.1, 1 << 16).unwrap();
        assert!(r.checks.all_pass(), "{:?}", r.checks);
        let f2 = FieldCtx::new(2, 1).unwrap();
        let p = TwistParams::new(&f2, f2.one(), 1, 2, 5).unwrap();
        for delta in [0.05, 0.1, 0.2, 0.3] {
            let r = exact_tiny_oracle(&p, delta, 1 << 16).unwrap();
            assert!(r.checks.all_pass(), "δ={delta}: {:?}", r.checks);
        }
        let p = TwistParams::new(&f2, f2.one(), 1, 1, 11).unwrap();
        let r = exact_tiny_oracle(&p, 0.1, 1 << 16).unwrap_err();
        assert!(matches!(r, Error::BudgetExceeded { .. }));
    }
}
