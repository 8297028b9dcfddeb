//! The splitting field `GF(q^m)` of `X^n - 1`, built as `F[Y]/(g)` for a
//! monic irreducible `g` of degree `m = ord_n(q)`. Only used to locate a
//! primitive `n`-th root of unity and descend minimal polynomials to `F`.

use num_bigint::BigUint;

use super::poly::Poly;
use crate::gf::{FieldCtx, FieldElement};
use crate::linalg::express;
use crate::numtheory::factor_u64;

pub(crate) struct ExtensionField {
    base: FieldCtx,
    modulus: Poly,
    m: usize,
}

impl ExtensionField {
    /// Uses the lexicographically smallest monic irreducible of degree `m`
    /// (constant term most significant), tested with Ben-Or's algorithm.
    pub(crate) fn new(base: &FieldCtx, m: usize) -> Self {
        let modulus = if m == 1 { Poly::x() } else { smallest_irreducible(base, m) };
        ExtensionField { base: base.clone(), modulus, m }
    }

    pub(crate) fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b, &self.base).rem(&self.modulus, &self.base).expect("nonzero modulus")
    }

    pub(crate) fn pow(&self, a: &Poly, e: &BigUint) -> Poly {
        a.pow_mod(e, &self.modulus, &self.base)
    }

    /// Coordinates of `a` in the basis `1, Y, ..., Y^{m-1}`.
    pub(crate) fn coords(&self, a: &Poly) -> Vec<FieldElement> {
        (0..self.m).map(|i| a.coeff(i)).collect()
    }

    /// The element whose base-`q` digits (constant term least significant) spell `idx`.
    fn element_from_index(&self, mut idx: u128) -> Poly {
        let q = self.base.q() as u128;
        let mut c = Vec::with_capacity(self.m);
        for _ in 0..self.m {
            c.push(self.base.element((idx % q) as u32).expect("digit below q"));
            idx /= q;
        }
        Poly::new(c)
    }

    /// A primitive `n`-th root of unity: the first element `x` in increasing
    /// index order for which `x^{(q^m - 1)/n}` has order exactly `n`.
    pub(crate) fn primitive_root_of_unity(&self, n: u64) -> Poly {
        let big_q = BigUint::from(self.base.q()).pow(self.m as u32);
        let cofactor = (&big_q - 1u32) / n;
        assert_eq!(&cofactor * n, &big_q - 1u32, "n must divide q^m - 1");
        let primes: Vec<u64> = factor_u64(n).into_iter().map(|(p, _)| p).collect();
        let one = Poly::one();
        for idx in 1u128.. {
            let x = self.element_from_index(idx);
            if x.is_zero() {
                continue;
            }
            let y = self.pow(&x, &cofactor);
            if n == 1 || primes.iter().all(|&p| self.pow(&y, &BigUint::from(n / p)) != one) {
                return y;
            }
        }
        unreachable!("the multiplicative group of GF(q^m) is cyclic")
    }

    /// Minimal polynomial over the base field of `beta`, given its degree `d`,
    /// found as the linear relation expressing `beta^d` in `1, beta, ..., beta^{d-1}`.
    pub(crate) fn minimal_polynomial(&self, beta: &Poly, d: usize) -> Poly {
        let f = &self.base;
        let mut powers = Vec::with_capacity(d + 1);
        let mut cur = Poly::one();
        for _ in 0..=d {
            powers.push(self.coords(&cur));
            cur = self.mul(&cur, beta);
        }
        let target = powers.pop().expect("d + 1 powers");
        let c = express(&powers, &target, f).expect("beta^d lies in the span of lower powers");
        let mut coeffs: Vec<FieldElement> = c.into_iter().map(|x| f.neg(x)).collect();
        coeffs.push(FieldElement::ONE);
        Poly::new(coeffs)
    }
}

/// Ben-Or irreducibility test.
pub(crate) fn is_irreducible(g: &Poly, f: &FieldCtx) -> bool {
    let Some(m) = g.degree() else { return false };
    if m == 0 {
        return false;
    }
    let q = BigUint::from(f.q());
    let x = Poly::x();
    let mut h = x.rem(g, f).expect("nonzero");
    for _ in 0..m / 2 {
        h = h.pow_mod(&q, g, f);
        let d = Poly::gcd(g, &h.sub(&x, f), f);
        if !d.is_one() {
            return false;
        }
    }
    true
}

fn smallest_irreducible(f: &FieldCtx, m: usize) -> Poly {
    let q = f.q() as u128;
    let tail_count = q.checked_pow(m as u32 - 1).unwrap_or(u128::MAX);
    for c0 in 1..f.q() {
        for mut k in 0..tail_count {
            let mut c = vec![FieldElement::ZERO; m + 1];
            c[0] = f.element(c0).expect("below q");
            for i in (1..m).rev() {
                c[i] = f.element((k % q) as u32).expect("digit below q");
                k /= q;
            }
            c[m] = FieldElement::ONE;
            let g = Poly::new(c);
            if is_irreducible(&g, f) {
                return g;
            }
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility() {
        let f = FieldCtx::new(2, 1).unwrap();
        assert!(is_irreducible(&Poly::from_ints(&f, &[1, 1, 1]), &f));
        assert!(!is_irreducible(&Poly::from_ints(&f, &[1, 0, 1]), &f));
        assert!(is_irreducible(&Poly::from_ints(&f, &[1, 1, 0, 0, 1]), &f));
        assert!(!is_irreducible(&Poly::from_ints(&f, &[1, 1, 1, 1, 1, 1]), &f)); // (X^6 - 1)/(X - 1)
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        let f = FieldCtx::new(3, 1).unwrap();
        let ext = ExtensionField::new(&f, 4); // GF(81), 80 = 16 * 5
        for n in [5u64, 8, 16, 20, 40, 80] {
            let g = ext.primitive_root_of_unity(n);
            let one = Poly::one();
            let mut x = g.clone();
            let mut k = 1;
            while x != one {
                x = ext.mul(&x, &g);
                k += 1;
            }
            assert_eq!(k, n);
        }
    }
}
