//! Lifting double twisted codes over `F` to `(R', R)`-linear
//! `(λ', λ)`-constacyclic codes through the socle embeddings
//! `F → R'π'^{ℓ'-1}` and `F → Rπ^{ℓ-1}`.

mod membership;

use num_rational::Ratio;

use crate::chain_ring::{ChainRingCtx, ChainRingElement};
use crate::dcodes::{CodeReport, DoubleTwistedCode};
use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::polyring::{Poly, QuotientElement};

pub use membership::RowModule;

/// The ring pair `(R', R)` with `ρ: R → R'`, a unit `λ ∈ R` and `λ' = ρ(λ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RingPairConfig {
    ring: ChainRingCtx,
    ring_prime: ChainRingCtx,
    lambda: ChainRingElement,
    lambda_prime: ChainRingElement,
    order: u64,
}

impl RingPairConfig {
    pub fn new(ring: &ChainRingCtx, ring_prime: &ChainRingCtx, lambda: &ChainRingElement) -> Result<Self> {
        if !ring.surjects_onto(ring_prime) {
            return Err(Error::IncompatibleRings("R' must be a canonical quotient of R".into()));
        }
        if !ring.contains(lambda) {
            return Err(Error::ContextMismatch("λ is not an element of R".into()));
        }
        if !ring.is_unit(lambda) {
            return Err(Error::NotAUnit);
        }
        let lambda_prime = ring.epimorphism(lambda, ring_prime)?;
        let order = ring.residue_field().mult_order(ring.residue(lambda))?;
        Ok(RingPairConfig {
            ring: ring.clone(),
            ring_prime: ring_prime.clone(),
            lambda: lambda.clone(),
            lambda_prime,
            order,
        })
    }

    /// `R`.
    pub fn ring(&self) -> &ChainRingCtx {
        &self.ring
    }

    /// `R'`.
    pub fn ring_prime(&self) -> &ChainRingCtx {
        &self.ring_prime
    }

    pub fn lambda(&self) -> &ChainRingElement {
        &self.lambda
    }

    pub fn lambda_prime(&self) -> &ChainRingElement {
        &self.lambda_prime
    }

    /// The residue `λ̄ ∈ F`.
    pub fn lambda_residue(&self) -> FieldElement {
        self.ring.residue(&self.lambda)
    }

    /// Order `t` of `λ̄`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ring": self.ring.to_json(),
            "ring_prime": self.ring_prime.to_json(),
            "lambda": self.ring.element_to_json(&self.lambda),
            "lambda_prime": self.ring_prime.element_to_json(&self.lambda_prime),
            "t": self.order,
        })
    }
}

/// Coefficientwise `η`: `Σ ā_j X^j ↦ Σ a_j π^{ℓ-1} X^j` from
/// `F[X]/(X^{αn} - λ̄)` into `R[X]/(X^{αn} - λ)`.
pub fn eta_alpha(f: &QuotientElement, ring: &ChainRingCtx, lambda: &ChainRingElement) -> Result<Vec<ChainRingElement>> {
    if ring.residue_field() != f.ctx().field() {
        return Err(Error::ContextMismatch("residue field of R differs from the code's field".into()));
    }
    if ring.residue(lambda) != f.ctx().constant() {
        return Err(Error::ResidueMismatch);
    }
    f.coeffs().iter().map(|&c| ring.eta_embed(c)).collect()
}

/// `η̃(f)`: lifts the coefficients of an arbitrary polynomial and reduces
/// the result in `R[X]/(X^N - λ)`.
pub fn eta_poly(f: &Poly, ring: &ChainRingCtx, lambda: &ChainRingElement, n_total: usize) -> Result<Vec<ChainRingElement>> {
    let lifted: Vec<ChainRingElement> = f.coeffs().iter().map(|&c| ring.eta_embed(c)).collect::<Result<_>>()?;
    Ok(ring_reduce(&lifted, ring, lambda, n_total))
}

/// Reduces a coefficient vector over `R` modulo `X^N - λ`.
pub fn ring_reduce(a: &[ChainRingElement], ring: &ChainRingCtx, lambda: &ChainRingElement, n_total: usize) -> Vec<ChainRingElement> {
    let mut out = vec![ring.zero(); n_total];
    let mut factor = ring.one();
    for (block, chunk) in a.chunks(n_total).enumerate() {
        if block > 0 {
            factor = ring.mul(&factor, lambda);
        }
        for (o, x) in out.iter_mut().zip(chunk) {
            *o = ring.add(o, &ring.mul(&factor, x));
        }
    }
    out
}

/// Product in `R[X]/(X^N - λ)`.
pub fn ring_mul_mod(
    a: &[ChainRingElement],
    b: &[ChainRingElement],
    ring: &ChainRingCtx,
    lambda: &ChainRingElement,
    n_total: usize,
) -> Vec<ChainRingElement> {
    if a.is_empty() || b.is_empty() {
        return vec![ring.zero(); n_total];
    }
    let mut prod = vec![ring.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = ring.add(&prod[i + j], &ring.mul(x, y));
        }
    }
    ring_reduce(&prod, ring, lambda, n_total)
}

/// `(λ c_{N-1}, c_0, ..., c_{N-2})` over a chain ring.
pub fn ring_consta_shift(c: &[ChainRingElement], ring: &ChainRingCtx, lambda: &ChainRingElement) -> Vec<ChainRingElement> {
    let mut y = c.to_vec();
    y.rotate_right(1);
    if let Some(first) = y.first_mut() {
        *first = ring.mul(first, lambda);
    }
    y
}

fn hamming(v: &[ChainRingElement], ring: &ChainRingCtx) -> usize {
    v.iter().filter(|x| !ring.is_zero(x)).count()
}

/// A codeword of `R'^{α'n} × R^{αn}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiftedWord {
    pub prime: Vec<ChainRingElement>,
    pub main: Vec<ChainRingElement>,
}

/// The image `C̃` of a double twisted code under `(η', η)`.
#[derive(Clone, Debug)]
pub struct LiftedCode {
    source: DoubleTwistedCode,
    cfg: RingPairConfig,
    rows: Vec<LiftedWord>,
}

impl LiftedCode {
    pub fn source(&self) -> &DoubleTwistedCode {
        &self.source
    }

    pub fn cfg(&self) -> &RingPairConfig {
        &self.cfg
    }

    pub fn rows(&self) -> &[LiftedWord] {
        &self.rows
    }

    /// `α' n ℓ' + α n ℓ`.
    pub fn length(&self) -> usize {
        let p = self.source.params();
        p.alpha_prime() * p.n() * self.cfg.ring_prime.ell() as usize + p.alpha() * p.n() * self.cfg.ring.ell() as usize
    }

    /// `(α' + α) / (α' ℓ' + α ℓ)`.
    pub fn rescale_factor(&self) -> Ratio<u64> {
        let p = self.source.params();
        let (a, ap) = (p.alpha() as u64, p.alpha_prime() as u64);
        Ratio::new(a + ap, ap * self.cfg.ring_prime.ell() as u64 + a * self.cfg.ring.ell() as u64)
    }

    pub fn weight(&self, w: &LiftedWord) -> usize {
        hamming(&w.prime, &self.cfg.ring_prime) + hamming(&w.main, &self.cfg.ring)
    }

    /// Lifts an arbitrary codeword `(u, v)` of the source code.
    pub fn lift_word(&self, c: &[FieldElement]) -> LiftedWord {
        lift_word(c, self.source.split(), &self.cfg)
    }

    /// `(λ' rot(u'), λ rot(u))`.
    pub fn double_shift(&self, w: &LiftedWord) -> LiftedWord {
        LiftedWord {
            prime: ring_consta_shift(&w.prime, &self.cfg.ring_prime, &self.cfg.lambda_prime),
            main: ring_consta_shift(&w.main, &self.cfg.ring, &self.cfg.lambda),
        }
    }

    /// Every codeword of `C̃`, found by `F_p`-combinations of lifted rows.
    /// Only for codes with at most `budget` words.
    pub fn enumerate(&self, budget: u64) -> Result<Vec<LiftedWord>> {
        let f = self.source.params().field();
        let needed = (f.q() as f64).powi(self.rows.len() as i32);
        if needed > budget as f64 {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let p = f.p() as u64;
        let split = self.source.split();
        let omegas: Vec<FieldElement> = (0..f.r() as usize)
            .map(|i| {
                let mut c = vec![0u32; f.r() as usize];
                c[i] = 1;
                f.from_coeffs(&c).expect("unit coefficient vector")
            })
            .collect();
        let gens: Vec<LiftedWord> = self
            .source
            .basis()
            .iter()
            .flat_map(|row| {
                omegas.iter().map(move |&w| {
                    let scaled: Vec<FieldElement> = row.iter().map(|&x| f.mul(w, x)).collect();
                    lift_word(&scaled, split, &self.cfg)
                })
            })
            .collect();
        let (rp, r) = (&self.cfg.ring_prime, &self.cfg.ring);
        let mut cw = LiftedWord {
            prime: vec![rp.zero(); split],
            main: vec![r.zero(); self.source.length() - split],
        };
        let steps = p.pow(gens.len() as u32);
        let mut out = Vec::with_capacity(steps as usize);
        for s in 0..steps {
            out.push(cw.clone());
            if s + 1 < steps {
                let mut t = s + 1;
                let mut c = 0;
                while t % p == 0 {
                    t /= p;
                    c += 1;
                }
                for (x, y) in cw.prime.iter_mut().zip(&gens[c].prime) {
                    *x = rp.add(x, y);
                }
                for (x, y) in cw.main.iter_mut().zip(&gens[c].main) {
                    *x = r.add(x, y);
                }
            }
        }
        Ok(out)
    }
}

fn lift_word(c: &[FieldElement], split: usize, cfg: &RingPairConfig) -> LiftedWord {
    let (u, v) = c.split_at(split);
    LiftedWord {
        prime: u.iter().map(|&x| cfg.ring_prime.eta_embed(x).expect("residue field matches")).collect(),
        main: v.iter().map(|&x| cfg.ring.eta_embed(x).expect("residue field matches")).collect(),
    }
}

pub fn lift_code(code: &DoubleTwistedCode, cfg: &RingPairConfig) -> Result<LiftedCode> {
    let p = code.params();
    if cfg.ring.residue_field() != p.field() {
        return Err(Error::ContextMismatch("residue field of R differs from the code's field".into()));
    }
    if cfg.lambda_residue() != p.lambda() {
        return Err(Error::ResidueMismatch);
    }
    let rows = code.basis().iter().map(|r| lift_word(r, code.split(), cfg)).collect();
    Ok(LiftedCode { source: code.clone(), cfg: cfg.clone(), rows })
}

/// Length, size, relative distance and rate of a lifted code.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedReport {
    pub length: usize,
    /// `log_q |C̃|`, the dimension of the source code.
    pub log_q_size: usize,
    pub min_wt: Option<usize>,
    /// Whether `min_wt` came from enumerating `C̃` itself.
    pub enumerated: bool,
    pub exact: bool,
    pub delta: Option<Ratio<u64>>,
    pub rate: Ratio<u64>,
    pub rescale_factor: Ratio<u64>,
    /// `Δ(C̃) = ((α'+α)/(α'ℓ'+αℓ)) Δ(C)` in exact rational arithmetic.
    pub delta_rescale_check: bool,
    pub source: CodeReport,
}

fn ratio_f64(r: &Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl LiftedReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "length": self.length,
            "log_q_size": self.log_q_size,
            "delta": self.delta.as_ref().map(ratio_f64),
            "rate": ratio_f64(&self.rate),
            "delta_rescale_check": self.delta_rescale_check,
            "min_wt": self.min_wt,
            "exact": self.exact,
            "enumerated": self.enumerated,
            "delta_exact": self.delta.map(|d| d.to_string()),
            "rate_exact": self.rate.to_string(),
            "rescale_factor": self.rescale_factor.to_string(),
            "source": self.source.to_json(),
        })
    }
}

/// Reports on `C̃`. When `C̃` has at most `budget` words its minimum weight is
/// found by enumerating the lifted module; otherwise it is taken from the
/// source code, which the embedding preserves.
pub fn lifted_report(code: &LiftedCode, budget: u64) -> LiftedReport {
    let source = code.source.min_weight(budget);
    let length = code.length();
    let (min_wt, enumerated) = match code.enumerate(budget) {
        Ok(words) => (words.iter().map(|w| code.weight(w)).filter(|&w| w > 0).min(), true),
        Err(_) => (source.min_wt, false),
    };
    let factor = code.rescale_factor();
    let delta = min_wt.map(|w| Ratio::new(w as u64, length as u64));
    let source_delta = source.min_wt.map(|w| Ratio::new(w as u64, source.length as u64));
    let delta_rescale_check = match (delta, source_delta) {
        (Some(d), Some(s)) => d == factor * s,
        (None, None) => true,
        _ => false,
    };
    LiftedReport {
        length,
        log_q_size: source.dim,
        min_wt,
        enumerated,
        exact: source.exact,
        delta,
        rate: Ratio::new(source.dim as u64, length as u64),
        rescale_factor: factor,
        delta_rescale_check,
        source,
    }
}

/// Whether the `R`-span of the lifted rows is closed under the `(λ', λ)` double shift.
pub fn verify_rr_closure(code: &LiftedCode) -> bool {
    rows_closed(&code.rows, &code.cfg)
}

pub(crate) fn rows_closed(rows: &[LiftedWord], cfg: &RingPairConfig) -> bool {
    let module = RowModule::new(&cfg.ring, &cfg.ring_prime, rows);
    rows.iter().all(|w| {
        let shifted = LiftedWord {
            prime: ring_consta_shift(&w.prime, &cfg.ring_prime, &cfg.lambda_prime),
            main: ring_consta_shift(&w.main, &cfg.ring, &cfg.lambda),
        };
        module.contains(&shifted)
    })
}

#[cfg(test)]
mod tests;
