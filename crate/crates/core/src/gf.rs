//! Arithmetic in the residue field `GF(p^r)`.
//!
//! Elements are packed into a single `u32`: the coefficient vector
//! `(c_0, ..., c_{r-1})` of the polynomial representative is read as the
//! base-`p` integer `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`. The modulus is the
//! lexicographically smallest monic irreducible of degree `r` (coefficients
//! compared from the constant term upwards), so packed values are portable
//! between runs.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numtheory::{factor_u64, inv_mod, is_prime};

/// Largest supported field cardinality.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Element of a [`FieldCtx`], packed as a base-`p` integer.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Packed index in `[0, q)`.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn from_raw(v: u32) -> Self {
        FieldElement(v)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

struct Inner {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
    /// Addition table for small extension fields, row-major `q x q`.
    add_table: Option<Vec<u32>>,
    pow_p: Vec<u32>,
}

/// The finite field `GF(p^r)` with `q = p^r <= 2^20`.
///
/// Cloning is cheap; the lookup tables are shared.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.inner.p)
            .field("r", &self.inner.r)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.r == other.inner.r)
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r < 1 {
            return Err(Error::InvalidDegree(r));
        }
        let q = (p as u128).checked_pow(r).unwrap_or(u128::MAX);
        if q > MAX_FIELD_SIZE as u128 {
            return Err(Error::FieldTooLarge { p, r });
        }
        let p = p as u32;
        let q = q as u32;
        let modulus = if r == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, r as usize)
        };
        let mut pow_p = Vec::with_capacity(r as usize + 1);
        let mut acc = 1u32;
        for _ in 0..=r {
            pow_p.push(acc);
            acc = acc.saturating_mul(p);
        }
        let mut inner = Inner {
            p,
            r,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
            pow_p,
        };
        build_tables(&mut inner);
        Ok(FieldCtx { inner: Arc::new(inner) })
    }

    /// Builds `GF(q)` from its cardinality, which must be a prime power.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, r) = prime_power(q).ok_or_else(|| Error::InvalidParams(format!("{q} is not a prime power")))?;
        Self::new(p, r)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn r(&self) -> u32 {
        self.inner.r
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Monic modulus, little-endian, `r + 1` coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The fixed primitive element used for the log tables.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.inner.exp[1])
    }

    /// `g^k` for the fixed generator `g`.
    pub fn gen_power(&self, k: u64) -> FieldElement {
        let order = (self.inner.q - 1) as u64;
        FieldElement(self.inner.exp[(k % order) as usize])
    }

    /// The least `k >= 0` with `g^k = a`.
    pub fn discrete_log(&self, a: FieldElement) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroHasNoOrder);
        }
        if !self.contains(a) {
            return Err(Error::ContextMismatch(format!("{a:?} is not in GF({})", self.inner.q)));
        }
        Ok(self.inner.log[a.0 as usize] as u64)
    }

    /// Image of an integer under `Z -> GF(p) ⊆ GF(q)`.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.inner.p as i64) as u32)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.inner.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::ContextMismatch(format!("index {index} outside GF({})", self.inner.q)))
        }
    }

    #[inline]
    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.inner.q
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.inner.r as usize {
            return Err(Error::Malformed(format!(
                "expected {} coefficients, got {}",
                self.inner.r,
                coeffs.len()
            )));
        }
        let mut v = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.inner.p {
                return Err(Error::Malformed(format!("coefficient {c} not reduced mod {}", self.inner.p)));
            }
            v += c * self.inner.pow_p[i];
        }
        Ok(FieldElement(v))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let p = self.inner.p;
        let mut v = a.0;
        (0..self.inner.r)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if inner.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if inner.r == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= inner.p { s - inner.p } else { s });
        }
        if let Some(t) = &inner.add_table {
            return FieldElement(t[(a.0 * inner.q + b.0) as usize]);
        }
        FieldElement(digitwise(inner, a.0, b.0, |x, y| (x + y) % inner.p))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if inner.p == 2 || a.0 == 0 {
            return a;
        }
        if inner.r == 1 {
            return FieldElement(inner.p - a.0);
        }
        FieldElement(digitwise(inner, a.0, 0, |x, _| (inner.p - x) % inner.p))
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if inner.r == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % inner.p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let s = inner.log[a.0 as usize] + inner.log[b.0 as usize];
        FieldElement(inner.exp[s as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.inner;
        let l = inner.log[a.0 as usize];
        Ok(FieldElement(inner.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let inner = &*self.inner;
        let order = (inner.q - 1) as u64;
        let l = (inner.log[a.0 as usize] as u64 * (e % order)) % order;
        FieldElement(inner.exp[l as usize])
    }

    /// Checked binary operation; rejects elements from a larger field and division by zero.
    pub fn arith(&self, a: FieldElement, b: FieldElement, op: FieldOp) -> Result<FieldElement> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(Error::ContextMismatch(format!(
                    "element {} does not belong to GF({})",
                    x.0, self.inner.q
                )));
            }
        }
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Div => self.div(a, b)?,
        })
    }

    /// Least `t >= 1` with `x^t = 1`, found by stripping prime factors off `q - 1`.
    pub fn mult_order(&self, x: FieldElement) -> Result<u64> {
        if x.0 == 0 {
            return Err(Error::ZeroHasNoOrder);
        }
        let mut order = (self.inner.q - 1) as u64;
        for (prime, _) in factor_u64(order) {
            while order.is_multiple_of(prime) && self.pow(x, order / prime) == FieldElement::ONE {
                order /= prime;
            }
        }
        Ok(order)
    }

    /// The unique `y ∈ ⟨λ⟩` with `y^m = λ`, i.e. `λ^{m^{-1} mod t}`.
    pub fn cyclic_root(&self, lambda: FieldElement, m: u64) -> Result<FieldElement> {
        let t = self.mult_order(lambda)?;
        if t == 1 {
            return Ok(FieldElement::ONE);
        }
        let u = inv_mod(m % t, t).ok_or(Error::NotCoprime { m, t })?;
        Ok(self.pow(lambda, u))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.q).map(FieldElement)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.inner.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.inner.q))
    }

    pub fn element_to_json(&self, a: FieldElement) -> serde_json::Value {
        serde_json::Value::from(self.coeffs(a))
    }

    pub fn element_from_json(&self, v: &serde_json::Value) -> Result<FieldElement> {
        let coeffs: Vec<u32> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
        self.from_coeffs(&coeffs)
    }
}

fn digitwise(inner: &Inner, a: u32, b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    for i in 0..inner.r as usize {
        out += f(a % inner.p, b % inner.p) * inner.pow_p[i];
        a /= inner.p;
        b /= inner.p;
    }
    out
}

fn unpack(inner: &Inner, mut a: u32) -> Vec<u32> {
    (0..inner.r)
        .map(|_| {
            let c = a % inner.p;
            a /= inner.p;
            c
        })
        .collect()
}

fn pack(inner: &Inner, c: &[u32]) -> u32 {
    c.iter().enumerate().map(|(i, &x)| x * inner.pow_p[i]).sum()
}

/// Schoolbook product modulo `(p, modulus)`. Only used while building tables.
fn mul_slow(inner: &Inner, a: u32, b: u32) -> u32 {
    if inner.r == 1 {
        return ((a as u64 * b as u64) % inner.p as u64) as u32;
    }
    let p = inner.p as u64;
    let r = inner.r as usize;
    let (x, y) = (unpack(inner, a), unpack(inner, b));
    let mut prod = vec![0u64; 2 * r - 1];
    for (i, &xi) in x.iter().enumerate() {
        for (j, &yj) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
        }
    }
    for k in (r..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &m) in inner.modulus[..r].iter().enumerate() {
            let idx = k - r + i;
            prod[idx] = (prod[idx] + c * (p - m as u64)) % p;
        }
    }
    let low: Vec<u32> = prod[..r].iter().map(|&v| v as u32).collect();
    pack(inner, &low)
}

fn pow_slow(inner: &Inner, a: u32, mut e: u64) -> u32 {
    let mut base = a;
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_slow(inner, acc, base);
        }
        base = mul_slow(inner, base, base);
        e >>= 1;
    }
    acc
}

fn build_tables(inner: &mut Inner) {
    let q = inner.q;
    let order = (q - 1) as u64;
    let factors = factor_u64(order);
    let generator = (1..q)
        .find(|&g| factors.iter().all(|&(pr, _)| pow_slow(inner, g, order / pr) != 1))
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u32; 2 * (q as usize - 1).max(1)];
    let mut log = vec![0u32; q as usize];
    let mut cur = 1u32;
    for i in 0..(q - 1) as usize {
        exp[i] = cur;
        log[cur as usize] = i as u32;
        cur = mul_slow(inner, cur, generator);
    }
    for i in (q - 1) as usize..exp.len() {
        exp[i] = exp[i - (q - 1) as usize];
    }
    inner.exp = exp;
    inner.log = log;
    if inner.r > 1 && inner.p != 2 && q <= 256 {
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                t[(a * q + b) as usize] = digitwise(inner, a, b, |x, y| (x + y) % inner.p);
            }
        }
        inner.add_table = Some(t);
    }
}

/// Remainder of `a` modulo monic `m` over `GF(p)`; both little-endian.
fn rem_prime(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let dm = m.len() - 1;
    let p = p as u64;
    while a.len() > dm {
        let c = a.pop().unwrap() % p;
        if c != 0 {
            let base = a.len() - dm;
            for i in 0..dm {
                a[base + i] = (a[base + i] + c * (p - m[i] as u64)) % p;
            }
        }
    }
    a.into_iter().map(|x| (x % p) as u32).collect()
}

/// Lexicographically smallest monic irreducible of degree `r` over `GF(p)`,
/// comparing coefficient vectors from the constant term upwards. Irreducibility
/// is decided by trial division against every monic polynomial of degree at
/// most `r / 2`, which is cheap because `p^(r/2) <= 2^10`.
fn smallest_irreducible(p: u32, r: usize) -> Vec<u32> {
    let total = (p as u64).pow(r as u32);
    'candidate: for idx in 0..total {
        // c_0 is the most significant digit in the lexicographic order.
        let mut cand = vec![0u32; r + 1];
        let mut v = idx;
        for i in (0..r).rev() {
            cand[i] = (v % p as u64) as u32;
            v /= p as u64;
        }
        cand[r] = 1;
        if cand[0] == 0 {
            continue;
        }
        for d in 1..=r / 2 {
            for tail in 0..(p as u64).pow(d as u32) {
                let mut div = vec![0u32; d + 1];
                let mut v = tail;
                for c in div.iter_mut().take(d) {
                    *c = (v % p as u64) as u32;
                    v /= p as u64;
                }
                div[d] = 1;
                if rem_prime(&cand, &div, p).iter().all(|&c| c == 0) {
                    continue 'candidate;
                }
            }
        }
        return cand;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Splits a prime power `q` into `(p, r)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factor_u64(q);
    if f.len() == 1 {
        Some((f[0].0, f[0].1))
    } else {
        None
    }
}

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    p: u64,
    r: u32,
    modulus: Vec<u32>,
}

impl Serialize for FieldCtx {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldRepr {
            p: self.inner.p as u64,
            r: self.inner.r,
            modulus: self.inner.modulus.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldCtx {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FieldRepr::deserialize(d)?;
        let ctx = FieldCtx::new(repr.p, repr.r).map_err(serde::de::Error::custom)?;
        if ctx.modulus() != repr.modulus.as_slice() {
            return Err(serde::de::Error::custom(format!(
                "modulus {:?} is not the canonical modulus {:?}",
                repr.modulus,
                ctx.modulus()
            )));
        }
        Ok(ctx)
    }
}
