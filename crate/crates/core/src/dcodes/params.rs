use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::linalg::Echelon;
use crate::numtheory::gcd;
use crate::polyring::{factor_xn_minus_1, Factorization, Poly, QuotientElement, Twist};

/// Parameters of the ensemble of double `λ`-twisted codes of ratio `α'/α`
/// and cycle lengths `(α'n, αn)` over `F`.
#[derive(Clone, Debug)]
pub struct TwistParams {
    inner: Arc<Inner>,
}

#[derive(Debug)]
struct Inner {
    field: FieldCtx,
    lambda: FieldElement,
    order: u64,
    alpha: usize,
    alpha_prime: usize,
    n: usize,
    factz: Arc<Factorization>,
    twist: Twist,
    twist_prime: Twist,
    /// Independent subset of `{e_I X^j}`, a basis of `I`.
    ideal_basis: Vec<Poly>,
    /// `σ(f)` for every `f` in `ideal_basis`.
    sigma_basis: Vec<Poly>,
}

/// The numeric data the closed-form bounds depend on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleShape {
    pub q: u32,
    pub n: usize,
    pub alpha: usize,
    pub alpha_prime: usize,
    pub mu: usize,
}

impl EnsembleShape {
    /// `min(α', α)`.
    pub fn alpha_min(&self) -> usize {
        self.alpha.min(self.alpha_prime)
    }

    /// `α' + α`.
    pub fn alpha_sum(&self) -> usize {
        self.alpha + self.alpha_prime
    }

    /// Code length `(α' + α) n`.
    pub fn length(&self) -> usize {
        self.alpha_sum() * self.n
    }
}

impl TwistParams {
    /// Validates `gcd(n, qt) = 1`, `gcd(α, t) = 1` and `α' ≡ α (mod t)`.
    pub fn new(field: &FieldCtx, lambda: FieldElement, alpha: usize, alpha_prime: usize, n: usize) -> Result<Self> {
        if alpha == 0 || alpha_prime == 0 {
            return Err(Error::InvalidParams("α and α' must be positive".into()));
        }
        if n < 2 {
            return Err(Error::LengthTooSmall(n));
        }
        let order = field.mult_order(lambda)?;
        let qt = field.q() as u64 * order;
        if gcd(n as u64, qt) != 1 {
            return Err(Error::InvalidParams(format!("gcd(n, qt) = gcd({n}, {qt}) must be 1")));
        }
        if gcd(alpha as u64, order) != 1 {
            return Err(Error::NotCoprime { m: alpha as u64, t: order });
        }
        if (alpha as u64) % order != (alpha_prime as u64) % order {
            return Err(Error::InvalidParams(format!("α' = {alpha_prime} must be congruent to α = {alpha} mod t = {order}")));
        }
        let factz = factor_xn_minus_1(field, n)?;
        let twist = Twist::new(field, lambda, alpha, n)?;
        let twist_prime = Twist::new(field, lambda, alpha_prime, n)?;
        debug_assert_eq!(twist.beta(), twist_prime.beta());

        let source = twist.source();
        let e = source.from_poly(&factz.e_ideal);
        let mut ech = Echelon::new(n);
        let mut ideal_basis = Vec::with_capacity(n - 1);
        let mut shifted = e;
        for _ in 0..n {
            if ech.insert(shifted.coeffs(), field) {
                ideal_basis.push(shifted.to_poly());
            }
            shifted = shifted.consta_shift();
        }
        debug_assert_eq!(ideal_basis.len(), n - 1);
        let sigma_basis = ideal_basis.iter().map(|f| twist.sigma(f)).collect();
        Ok(TwistParams {
            inner: Arc::new(Inner {
                field: field.clone(),
                lambda,
                order,
                alpha,
                alpha_prime,
                n,
                factz,
                twist,
                twist_prime,
                ideal_basis,
                sigma_basis,
            }),
        })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.inner.field
    }

    pub fn lambda(&self) -> FieldElement {
        self.inner.lambda
    }

    /// Multiplicative order `t` of `λ`.
    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn alpha(&self) -> usize {
        self.inner.alpha
    }

    pub fn alpha_prime(&self) -> usize {
        self.inner.alpha_prime
    }

    /// `min(α', α)`.
    pub fn alpha_min(&self) -> usize {
        self.inner.alpha.min(self.inner.alpha_prime)
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    /// Code length `(α' + α) n`.
    pub fn length(&self) -> usize {
        (self.inner.alpha + self.inner.alpha_prime) * self.inner.n
    }

    pub fn factorization(&self) -> &Factorization {
        &self.inner.factz
    }

    pub fn mu(&self) -> usize {
        self.inner.factz.mu
    }

    /// The map `I → I_{λ,α}`.
    pub fn twist(&self) -> &Twist {
        &self.inner.twist
    }

    /// The map `I → I_{λ,α'}`.
    pub fn twist_prime(&self) -> &Twist {
        &self.inner.twist_prime
    }

    pub fn ideal_basis(&self) -> &[Poly] {
        &self.inner.ideal_basis
    }

    pub(crate) fn sigma_basis(&self) -> &[Poly] {
        &self.inner.sigma_basis
    }

    pub fn shape(&self) -> EnsembleShape {
        EnsembleShape {
            q: self.inner.field.q(),
            n: self.inner.n,
            alpha: self.inner.alpha,
            alpha_prime: self.inner.alpha_prime,
            mu: self.mu(),
        }
    }

    /// A uniformly random element of `I`: a uniform vector projected by `e_I`.
    pub fn random_ideal_element<R: Rng + ?Sized>(&self, rng: &mut R) -> QuotientElement {
        let source = self.inner.twist.source();
        source.random(rng).mul_poly(&self.inner.factz.e_ideal)
    }

    /// A uniform sample `(a', a)` from `I_{λ,α'} × I_{λ,α}`.
    pub fn sample_pair_with<R: Rng + ?Sized>(&self, rng: &mut R) -> (QuotientElement, QuotientElement) {
        let b_prime = self.random_ideal_element(rng);
        let b = self.random_ideal_element(rng);
        let a_prime = self.inner.twist_prime.tau(&b_prime).expect("projection lands in I");
        let a = self.inner.twist.tau(&b).expect("projection lands in I");
        (a_prime, a)
    }

    /// [`sample_pair_with`](Self::sample_pair_with) driven by `ChaCha8Rng::seed_from_u64(seed)`.
    pub fn sample_pair(&self, seed: u64) -> (QuotientElement, QuotientElement) {
        self.sample_pair_with(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = &self.inner.field;
        serde_json::json!({
            "field": serde_json::to_value(f).expect("field serializes"),
            "lambda": f.element_to_json(self.inner.lambda),
            "t": self.inner.order,
            "alpha": self.inner.alpha,
            "alpha_prime": self.inner.alpha_prime,
            "n": self.inner.n,
            "mu": self.mu(),
        })
    }
}
