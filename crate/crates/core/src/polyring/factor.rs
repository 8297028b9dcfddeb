//! Factorization of `X^n - 1` over `F` for `gcd(n, q) = 1` and the CRT
//! idempotents of `F[X]/(X^n - 1)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;

use super::extension::ExtensionField;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::numtheory::{cyclotomic_cosets, gcd, mult_order_mod};

/// `X^n - 1 = φ_0 φ_1 ⋯ φ_m` with `φ_0 = X - 1`, one factor per `q`-cyclotomic
/// coset (ordered by coset leader), plus the primitive idempotents `e_i` of
/// `F[X]/(X^n - 1)` and the idempotent `e_I = 1 - e_0` of the ideal
/// `I = (X - 1)`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub n: usize,
    pub field: FieldCtx,
    pub factors: Vec<Poly>,
    pub degrees: Vec<usize>,
    pub cosets: Vec<Vec<u64>>,
    /// `min(d_1, ..., d_m)`.
    pub mu: usize,
    pub idempotents: Vec<Poly>,
    pub e_ideal: Poly,
}

impl Factorization {
    /// Number of nontrivial factors `m`.
    pub fn m(&self) -> usize {
        self.factors.len() - 1
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = &self.field;
        serde_json::json!({
            "n": self.n,
            "factors": self.factors.iter().map(|p| p.to_json(f)).collect::<Vec<_>>(),
            "degrees": self.degrees,
            "mu": self.mu,
            "idempotents": self.idempotents.iter().map(|p| p.to_json(f)).collect::<Vec<_>>(),
        })
    }
}

type CacheKey = (u32, u32, usize);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Factorization>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Factorization>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cached [`factor_uncached`].
pub fn factor_xn_minus_1(f: &FieldCtx, n: usize) -> Result<Arc<Factorization>> {
    let key = (f.p(), f.r(), n);
    if let Some(hit) = cache().lock().expect("cache poisoned").get(&key) {
        return Ok(Arc::clone(hit));
    }
    let fac = Arc::new(factor_uncached(f, n)?);
    cache().lock().expect("cache poisoned").entry(key).or_insert_with(|| Arc::clone(&fac));
    Ok(fac)
}

pub fn factor_uncached(f: &FieldCtx, n: usize) -> Result<Factorization> {
    let q = f.q() as u64;
    if n < 2 {
        return Err(Error::LengthTooSmall(n));
    }
    if gcd(n as u64, q) != 1 {
        return Err(Error::NotSeparable { n, q });
    }
    let cosets = cyclotomic_cosets(q, n as u64);
    let m = mult_order_mod(q, n as u64) as usize;
    let ext = ExtensionField::new(f, m);
    let gamma = ext.primitive_root_of_unity(n as u64);

    let mut factors = Vec::with_capacity(cosets.len());
    for coset in &cosets {
        let leader = coset[0];
        if leader == 0 {
            factors.push(Poly::from_ints(f, &[-1, 1]));
            continue;
        }
        let beta = ext.pow(&gamma, &BigUint::from(leader));
        factors.push(ext.minimal_polynomial(&beta, coset.len()));
    }
    let degrees: Vec<usize> = cosets.iter().map(Vec::len).collect();
    let mu = *degrees[1..].iter().min().expect("n >= 2 gives a nontrivial coset");

    let modulus = Poly::binomial(f, n, FieldElement::ONE);
    let idempotents = factors
        .iter()
        .map(|phi| {
            let cofactor = modulus.divrem(phi, f).expect("nonzero").0;
            let (g, _u, v) = Poly::ext_gcd(phi, &cofactor, f);
            debug_assert!(g.is_one());
            v.mul(&cofactor, f).rem(&modulus, f).expect("nonzero")
        })
        .collect::<Vec<_>>();
    let e_ideal = Poly::one().sub(&idempotents[0], f);
    Ok(Factorization {
        n,
        field: f.clone(),
        factors,
        degrees,
        cosets,
        mu,
        idempotents,
        e_ideal,
    })
}

/// Product of all entries of `polys`.
pub fn product(polys: &[Poly], f: &FieldCtx) -> Poly {
    polys.iter().fold(Poly::one(), |acc, p| acc.mul(p, f))
}
