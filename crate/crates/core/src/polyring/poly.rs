use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};

/// Dense univariate polynomial over a [`FieldCtx`], little-endian, with no
/// trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![FieldElement::ONE] }
    }

    pub fn constant(c: FieldElement) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![FieldElement::ZERO, FieldElement::ONE] }
    }

    /// `c X^k`.
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let mut v = vec![FieldElement::ZERO; k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// `X^n - c`.
    pub fn binomial(f: &FieldCtx, n: usize, c: FieldElement) -> Self {
        let mut v = vec![FieldElement::ZERO; n + 1];
        v[n] = FieldElement::ONE;
        v[0] = f.add(v[0], f.neg(c));
        Poly::new(v)
    }

    pub fn from_ints(f: &FieldCtx, ints: &[i64]) -> Self {
        Poly::new(ints.iter().map(|&v| f.from_int(v)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    /// Coefficient of `X^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElement::ONE
    }

    pub fn lead(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn add(&self, other: &Poly, f: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: FieldElement, f: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &FieldCtx) -> Poly {
        Poly::new(mul_slices(&self.coeffs, &other.coeffs, f))
    }

    pub fn eval(&self, x: FieldElement, f: &FieldCtx) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `f(cX)`: coefficient `k` is multiplied by `c^k`.
    pub fn scale_variable(&self, c: FieldElement, f: &FieldCtx) -> Poly {
        let mut pw = FieldElement::ONE;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            out.push(f.mul(a, pw));
            pw = f.mul(pw, c);
        }
        Poly::new(out)
    }

    pub fn make_monic(&self, f: &FieldCtx) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.lead()).expect("nonzero leading coefficient");
        self.scale(inv, f)
    }

    pub fn divrem(&self, d: &Poly, f: &FieldCtx) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = f.inv(d.lead())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, inv_lead);
            quot[k - dd] = factor;
            for (i, &di) in d.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(factor, di));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, d: &Poly, f: &FieldCtx) -> Result<Poly> {
        Ok(self.divrem(d, f)?.1)
    }

    /// Monic gcd.
    pub fn gcd(a: &Poly, b: &Poly, f: &FieldCtx) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic(f)
    }

    /// Returns `(g, u, v)` with `u a + v b = g` and `g` the monic gcd.
    pub fn ext_gcd(a: &Poly, b: &Poly, f: &FieldCtx) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (quo, rem) = r0.divrem(&r1, f).expect("nonzero divisor");
            let s2 = s0.sub(&quo.mul(&s1, f), f);
            let t2 = t0.sub(&quo.mul(&t1, f), f);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lead()).expect("nonzero");
        (r0.scale(inv, f), s0.scale(inv, f), t0.scale(inv, f))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Poly, f: &FieldCtx) -> Poly {
        let mut acc = Poly::one().rem(m, f).expect("nonzero modulus");
        let base = self.rem(m, f).expect("nonzero modulus");
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc, f).rem(m, f).expect("nonzero modulus");
            if e.bit(i) {
                acc = acc.mul(&base, f).rem(m, f).expect("nonzero modulus");
            }
        }
        acc
    }

    /// Hamming weight of the coefficient vector.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn to_json(&self, f: &FieldCtx) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(|&c| f.element_to_json(c)).collect())
    }
}

/// Product of two coefficient slices. Prime fields accumulate in `u64` and
/// reduce once per output coefficient.
pub(crate) fn mul_slices(a: &[FieldElement], b: &[FieldElement], f: &FieldCtx) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let len = a.len() + b.len() - 1;
    if f.r() == 1 {
        let p = f.p() as u64;
        let mut acc = vec![0u64; len];
        for (i, &ai) in a.iter().enumerate() {
            let ai = ai.index() as u64;
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                acc[i + j] += ai * bj.index() as u64;
            }
            // keep the accumulators well inside u64 for large p
            if p > 1 << 16 {
                for v in acc[i..i + b.len()].iter_mut() {
                    *v %= p;
                }
            }
        }
        return acc.into_iter().map(|v| FieldElement::from_raw((v % p) as u32)).collect();
    }
    let mut out = vec![FieldElement::ZERO; len];
    for (i, &ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, bj));
        }
    }
    out
}
