//! Finite commutative chain rings `Z_{p^s}` and `F_q[u]/(u^ℓ)`.
//!
//! Each ring has a fixed radical generator `π` (`p` resp. `u`), nilpotency
//! index `ℓ` and residue field `F = R/Rπ`. Between two rings of the same
//! family with `ℓ' ≤ ℓ` there is the canonical surjection `ρ` (reduction mod
//! `p^{s'}` resp. truncation), and `η(x) = x̂ π^{ℓ-1}` embeds `F` into the
//! minimal ideal `Rπ^{ℓ-1}`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::numtheory::is_prime;

/// Largest `p^s` accepted for `Z_{p^s}`, so products fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    ZpPow { p: u32, s: u32 },
    FqU { field: FieldCtx, ell: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRingCtx {
    family: Family,
    residue: FieldCtx,
    ell: u32,
    /// `p^s` for `Z_{p^s}`, unused otherwise.
    modulus: u64,
}

/// A ring element: an integer in `[0, p^s)` or the `ℓ` coefficients of `1, u, ..., u^{ℓ-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainRingElement {
    Int(u64),
    Series(Vec<FieldElement>),
}

use ChainRingElement::{Int, Series};

impl ChainRingCtx {
    pub fn zp_pow(p: u64, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if s == 0 {
            return Err(Error::InvalidDegree(0));
        }
        let modulus = p
            .checked_pow(s)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or_else(|| Error::OutOfRange(format!("{p}^{s} exceeds {MAX_MODULUS}")))?;
        Ok(ChainRingCtx {
            family: Family::ZpPow { p: p as u32, s },
            residue: FieldCtx::new(p, 1)?,
            ell: s,
            modulus,
        })
    }

    pub fn fq_u(field: &FieldCtx, ell: u32) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidDegree(0));
        }
        Ok(ChainRingCtx {
            family: Family::FqU { field: field.clone(), ell },
            residue: field.clone(),
            ell,
            modulus: 0,
        })
    }

    /// The field itself viewed as a chain ring with `ℓ = 1`.
    pub fn field(field: &FieldCtx) -> Self {
        Self::fq_u(field, 1).expect("ℓ = 1 is valid")
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn residue_field(&self) -> &FieldCtx {
        &self.residue
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn zero(&self) -> ChainRingElement {
        match &self.family {
            Family::ZpPow { .. } => Int(0),
            Family::FqU { ell, .. } => Series(vec![FieldElement::ZERO; *ell as usize]),
        }
    }

    pub fn one(&self) -> ChainRingElement {
        self.from_int(1)
    }

    /// `π`.
    pub fn pi(&self) -> ChainRingElement {
        self.pi_pow(1)
    }

    /// `π^k` (zero once `k ≥ ℓ`).
    pub fn pi_pow(&self, k: u32) -> ChainRingElement {
        match &self.family {
            Family::ZpPow { p, .. } => {
                if k >= self.ell {
                    Int(0)
                } else {
                    Int((*p as u64).pow(k))
                }
            }
            Family::FqU { ell, .. } => {
                let mut v = vec![FieldElement::ZERO; *ell as usize];
                if k < *ell {
                    v[k as usize] = FieldElement::ONE;
                }
                Series(v)
            }
        }
    }

    pub fn from_int(&self, v: i64) -> ChainRingElement {
        match &self.family {
            Family::ZpPow { .. } => Int(v.rem_euclid(self.modulus as i64) as u64),
            Family::FqU { field, ell } => {
                let mut c = vec![FieldElement::ZERO; *ell as usize];
                c[0] = field.from_int(v);
                Series(c)
            }
        }
    }

    pub fn contains(&self, a: &ChainRingElement) -> bool {
        match (&self.family, a) {
            (Family::ZpPow { .. }, Int(x)) => *x < self.modulus,
            (Family::FqU { field, ell }, Series(c)) => {
                c.len() == *ell as usize && c.iter().all(|&x| field.contains(x))
            }
            _ => false,
        }
    }

    fn check(&self, a: &ChainRingElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{a:?} is not an element of this ring")))
        }
    }

    pub fn add(&self, a: &ChainRingElement, b: &ChainRingElement) -> ChainRingElement {
        match (a, b) {
            (Int(x), Int(y)) => Int((x + y) % self.modulus),
            (Series(x), Series(y)) => {
                let f = &self.residue;
                Series(x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect())
            }
            _ => panic!("mixed ring element representations"),
        }
    }

    pub fn neg(&self, a: &ChainRingElement) -> ChainRingElement {
        match a {
            Int(x) => Int((self.modulus - x) % self.modulus),
            Series(x) => Series(x.iter().map(|&c| self.residue.neg(c)).collect()),
        }
    }

    pub fn sub(&self, a: &ChainRingElement, b: &ChainRingElement) -> ChainRingElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &ChainRingElement, b: &ChainRingElement) -> ChainRingElement {
        match (a, b) {
            (Int(x), Int(y)) => Int(x * y % self.modulus),
            (Series(x), Series(y)) => {
                let f = &self.residue;
                let l = x.len();
                let mut out = vec![FieldElement::ZERO; l];
                for (i, &xi) in x.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (j, &yj) in y[..l - i].iter().enumerate() {
                        out[i + j] = f.add(out[i + j], f.mul(xi, yj));
                    }
                }
                Series(out)
            }
            _ => panic!("mixed ring element representations"),
        }
    }

    /// Checked arithmetic for elements of unknown provenance.
    pub fn arith(&self, a: &ChainRingElement, b: &ChainRingElement, op: RingOp) -> Result<ChainRingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            RingOp::Add => self.add(a, b),
            RingOp::Sub => self.sub(a, b),
            RingOp::Mul => self.mul(a, b),
        })
    }

    pub fn is_zero(&self, a: &ChainRingElement) -> bool {
        match a {
            Int(x) => *x == 0,
            Series(c) => c.iter().all(|x| x.is_zero()),
        }
    }

    /// Largest `v` with `a ∈ Rπ^v`; `None` for zero.
    pub fn valuation(&self, a: &ChainRingElement) -> Option<u32> {
        match (a, &self.family) {
            (Int(0), _) => None,
            (Int(x), Family::ZpPow { p, .. }) => {
                let mut v = 0;
                let mut x = *x;
                while x % *p as u64 == 0 {
                    x /= *p as u64;
                    v += 1;
                }
                Some(v)
            }
            (Series(c), _) => c.iter().position(|x| !x.is_zero()).map(|v| v as u32),
            _ => panic!("mixed ring element representations"),
        }
    }

    pub fn is_unit(&self, a: &ChainRingElement) -> bool {
        self.valuation(a) == Some(0)
    }

    pub fn inv(&self, a: &ChainRingElement) -> Result<ChainRingElement> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        match a {
            Int(x) => {
                let inv = crate::numtheory::inv_mod(*x, self.modulus).ok_or(Error::NotAUnit)?;
                Ok(Int(inv))
            }
            Series(c) => {
                // (c0 (1 + n))^{-1} = c0^{-1} Σ (-n)^k, solved coefficient by coefficient
                let f = &self.residue;
                let inv0 = f.inv(c[0])?;
                let mut out = vec![FieldElement::ZERO; c.len()];
                out[0] = inv0;
                for k in 1..c.len() {
                    let mut s = FieldElement::ZERO;
                    for j in 1..=k {
                        s = f.add(s, f.mul(c[j], out[k - j]));
                    }
                    out[k] = f.neg(f.mul(s, inv0));
                }
                Ok(Series(out))
            }
        }
    }

    /// Some `c` with `c · a = b`, if one exists (requires `v(a) ≤ v(b)`).
    pub fn div_exact(&self, b: &ChainRingElement, a: &ChainRingElement) -> Option<ChainRingElement> {
        let Some(va) = self.valuation(a) else {
            return self.is_zero(b).then(|| self.zero());
        };
        let Some(vb) = self.valuation(b) else {
            return Some(self.zero());
        };
        if vb < va {
            return None;
        }
        // a = π^va u, b = π^va b', so c = b' u^{-1}
        let u = self.shift_down(a, va);
        let bp = self.shift_down(b, va);
        Some(self.mul(&bp, &self.inv(&u).expect("unit part")))
    }

    /// Some `x` with `π^k x = a`, for `a ∈ Rπ^k`.
    fn shift_down(&self, a: &ChainRingElement, k: u32) -> ChainRingElement {
        match (a, &self.family) {
            (Int(x), Family::ZpPow { p, .. }) => Int(x / (*p as u64).pow(k)),
            (Series(c), _) => {
                let mut v = c[k as usize..].to_vec();
                v.resize(c.len(), FieldElement::ZERO);
                Series(v)
            }
            _ => panic!("mixed ring element representations"),
        }
    }

    /// Image in `F = R/Rπ`.
    pub fn residue(&self, a: &ChainRingElement) -> FieldElement {
        match (a, &self.family) {
            (Int(x), Family::ZpPow { p, .. }) => self.residue.from_int((x % *p as u64) as i64),
            (Series(c), _) => c[0],
            _ => panic!("mixed ring element representations"),
        }
    }

    /// The canonical lift of a residue-field element (digit `0` only).
    pub fn lift(&self, x: FieldElement) -> ChainRingElement {
        match &self.family {
            Family::ZpPow { .. } => Int(x.index() as u64),
            Family::FqU { ell, .. } => {
                let mut c = vec![FieldElement::ZERO; *ell as usize];
                c[0] = x;
                Series(c)
            }
        }
    }

    /// `η(x) = x̂ π^{ℓ-1}`.
    pub fn eta_embed(&self, x: FieldElement) -> Result<ChainRingElement> {
        if !self.residue.contains(x) {
            return Err(Error::ContextMismatch("element not in the residue field".into()));
        }
        Ok(self.mul(&self.lift(x), &self.pi_pow(self.ell - 1)))
    }

    /// Whether the canonical surjection `self → target` exists.
    pub fn surjects_onto(&self, target: &ChainRingCtx) -> bool {
        match (&self.family, &target.family) {
            (Family::ZpPow { p, s }, Family::ZpPow { p: p2, s: s2 }) => p == p2 && s2 <= s,
            (Family::FqU { field, ell }, Family::FqU { field: f2, ell: l2 }) => field == f2 && l2 <= ell,
            _ => false,
        }
    }

    /// The canonical surjection `ρ: self → target`.
    pub fn epimorphism(&self, a: &ChainRingElement, target: &ChainRingCtx) -> Result<ChainRingElement> {
        if !self.surjects_onto(target) {
            return Err(Error::IncompatibleRings(format!("{:?} does not surject onto {:?}", self.family, target.family)));
        }
        self.check(a)?;
        Ok(match a {
            Int(x) => Int(x % target.modulus),
            Series(c) => Series(c[..target.ell as usize].to_vec()),
        })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> ChainRingElement {
        match &self.family {
            Family::ZpPow { .. } => Int(rng.gen_range(0..self.modulus)),
            Family::FqU { field, ell } => Series((0..*ell).map(|_| field.random(rng)).collect()),
        }
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> ChainRingElement {
        loop {
            let a = self.random(rng);
            if self.is_unit(&a) {
                return a;
            }
        }
    }

    /// All elements, in a fixed order. Only sensible for small rings.
    pub fn elements(&self) -> Vec<ChainRingElement> {
        match &self.family {
            Family::ZpPow { .. } => (0..self.modulus).map(Int).collect(),
            Family::FqU { field, ell } => {
                let mut out = vec![Vec::new()];
                for _ in 0..*ell {
                    out = out
                        .into_iter()
                        .flat_map(|prefix: Vec<FieldElement>| {
                            field.elements().map(move |x| {
                                let mut v = prefix.clone();
                                v.push(x);
                                v
                            })
                        })
                        .collect();
                }
                out.into_iter().map(Series).collect()
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match &self.family {
            Family::ZpPow { p, s } => serde_json::json!({"family": "zp_pow", "p": p, "s": s}),
            Family::FqU { field, ell } => serde_json::json!({
                "family": "fq_u",
                "field": serde_json::to_value(field).expect("field serializes"),
                "ell": ell,
            }),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::Malformed(format!("chain ring JSON: {what}"));
        let get_u64 = |k: &str| v.get(k).and_then(|x| x.as_u64()).ok_or_else(|| bad(k));
        match v.get("family").and_then(|x| x.as_str()) {
            Some("zp_pow") => Self::zp_pow(get_u64("p")?, get_u64("s")? as u32),
            Some("fq_u") => {
                let field: FieldCtx = serde_json::from_value(v.get("field").cloned().ok_or_else(|| bad("field"))?)
                    .map_err(|e| bad(&e.to_string()))?;
                Self::fq_u(&field, get_u64("ell")? as u32)
            }
            _ => Err(bad("family")),
        }
    }

    pub fn element_to_json(&self, a: &ChainRingElement) -> serde_json::Value {
        match a {
            Int(x) => serde_json::json!(x),
            Series(c) => serde_json::Value::Array(c.iter().map(|&x| self.residue.element_to_json(x)).collect()),
        }
    }

    pub fn element_from_json(&self, v: &serde_json::Value) -> Result<ChainRingElement> {
        let a = match (&self.family, v) {
            (Family::ZpPow { .. }, serde_json::Value::Number(_)) => {
                let x = v.as_i64().ok_or_else(|| Error::Malformed(format!("integer expected, got {v}")))?;
                self.from_int(x)
            }
            (Family::FqU { .. }, serde_json::Value::Array(items)) => {
                Series(items.iter().map(|x| self.residue.element_from_json(x)).collect::<Result<_>>()?)
            }
            _ => return Err(Error::Malformed(format!("not a ring element: {v}"))),
        };
        self.check(&a)?;
        Ok(a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}
