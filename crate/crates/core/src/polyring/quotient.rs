//! The quotient ring `F[X]/(X^N - c)` for a nonzero constant `c`.

use rand::Rng;

use super::poly::{mul_slices, Poly};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};

/// Context for `F[X]/(X^N - c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCtx {
    field: FieldCtx,
    n_total: usize,
    constant: FieldElement,
}

/// An element of a [`QuotientCtx`], stored as exactly `N` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientElement {
    ctx: QuotientCtx,
    coeffs: Vec<FieldElement>,
}

impl QuotientCtx {
    pub fn new(field: &FieldCtx, n_total: usize, constant: FieldElement) -> Result<Self> {
        if n_total == 0 {
            return Err(Error::InvalidParams("quotient exponent must be positive".into()));
        }
        if constant.is_zero() || !field.contains(constant) {
            return Err(Error::InvalidParams("quotient constant must be a nonzero field element".into()));
        }
        Ok(QuotientCtx { field: field.clone(), n_total, constant })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn constant(&self) -> FieldElement {
        self.constant
    }

    /// `X^N - c` as a polynomial.
    pub fn modulus(&self) -> Poly {
        Poly::binomial(&self.field, self.n_total, self.constant)
    }

    pub fn zero(&self) -> QuotientElement {
        QuotientElement { ctx: self.clone(), coeffs: vec![FieldElement::ZERO; self.n_total] }
    }

    pub fn one(&self) -> QuotientElement {
        let mut e = self.zero();
        e.coeffs[0] = FieldElement::ONE;
        e
    }

    /// Reduces an arbitrary polynomial using `X^N = c`.
    pub fn from_poly(&self, p: &Poly) -> QuotientElement {
        QuotientElement { ctx: self.clone(), coeffs: self.reduce_slice(p.coeffs()) }
    }

    /// Takes a coefficient vector of length exactly `N`.
    pub fn from_coeffs(&self, coeffs: Vec<FieldElement>) -> Result<QuotientElement> {
        if coeffs.len() != self.n_total {
            return Err(Error::ContextMismatch(format!(
                "expected {} coefficients, got {}",
                self.n_total,
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().find(|c| !self.field.contains(**c)) {
            return Err(Error::ContextMismatch(format!("coefficient {} outside the field", bad.index())));
        }
        Ok(QuotientElement { ctx: self.clone(), coeffs })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> QuotientElement {
        let coeffs = (0..self.n_total).map(|_| self.field.random(rng)).collect();
        QuotientElement { ctx: self.clone(), coeffs }
    }

    /// Folds coefficients at or above `X^N` back down, `X^{N+k} = c X^k`.
    fn reduce_slice(&self, a: &[FieldElement]) -> Vec<FieldElement> {
        let f = &self.field;
        let n = self.n_total;
        let mut out = vec![FieldElement::ZERO; n];
        // c^(j / N) for the block containing index j
        let mut factor = FieldElement::ONE;
        for (block, chunk) in a.chunks(n).enumerate() {
            if block > 0 {
                factor = f.mul(factor, self.constant);
            }
            for (o, &x) in out.iter_mut().zip(chunk) {
                *o = f.add(*o, f.mul(factor, x));
            }
        }
        out
    }

    fn check(&self, e: &QuotientElement) -> Result<()> {
        if &e.ctx != self {
            return Err(Error::ContextMismatch("quotient elements from different rings".into()));
        }
        Ok(())
    }
}

impl QuotientElement {
    pub fn ctx(&self) -> &QuotientCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, other: &QuotientElement) -> Result<QuotientElement> {
        self.ctx.check(other)?;
        let f = &self.ctx.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(QuotientElement { ctx: self.ctx.clone(), coeffs })
    }

    pub fn sub(&self, other: &QuotientElement) -> Result<QuotientElement> {
        self.ctx.check(other)?;
        let f = &self.ctx.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(QuotientElement { ctx: self.ctx.clone(), coeffs })
    }

    pub fn mul(&self, other: &QuotientElement) -> Result<QuotientElement> {
        self.ctx.check(other)?;
        let prod = mul_slices(&self.coeffs, &other.coeffs, &self.ctx.field);
        Ok(QuotientElement { ctx: self.ctx.clone(), coeffs: self.ctx.reduce_slice(&prod) })
    }

    /// Multiplies by a polynomial of any degree.
    pub fn mul_poly(&self, p: &Poly) -> QuotientElement {
        let prod = mul_slices(&self.coeffs, p.coeffs(), &self.ctx.field);
        QuotientElement { ctx: self.ctx.clone(), coeffs: self.ctx.reduce_slice(&prod) }
    }

    pub fn scale(&self, c: FieldElement) -> QuotientElement {
        let f = &self.ctx.field;
        QuotientElement { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// `(c_0, ..., c_{N-1}) -> (λ c_{N-1}, c_0, ..., c_{N-2})`, i.e. multiplication by `X`.
    pub fn consta_shift(&self) -> QuotientElement {
        let mut coeffs = self.coeffs.clone();
        coeffs.rotate_right(1);
        coeffs[0] = self.ctx.field.mul(coeffs[0], self.ctx.constant);
        QuotientElement { ctx: self.ctx.clone(), coeffs }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = &self.ctx.field;
        serde_json::Value::Array(self.coeffs.iter().map(|&c| f.element_to_json(c)).collect())
    }
}
