//! The twisting maps between the ideal `I = (X - 1)` of `F[X]/(X^n - 1)` and
//! the ideal `I_{λ,α}` of `F[X]/(X^{αn} - λ)`.
//!
//! With `c = λ^{1/α}` and `β = λ^{1/(αn)}` (both taken inside `<λ>`):
//!
//! * `ψ(X) = Σ_{k<α} (X^n)^{α-1-k} c^k`, so that `X^{αn} - λ = (X^n - c) ψ(X)`;
//! * `ψ⁺(X) = (X/β - 1) ψ(X)` generates `I_{λ,α}`;
//! * `σ(f)(X) = f(X/β)`;
//! * `τ(f) = σ(f) ψ mod (X^{αn} - λ)` maps `I` onto `I_{λ,α}`.

use super::poly::Poly;
use super::quotient::{QuotientCtx, QuotientElement};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::numtheory::gcd;

/// Precomputed data for one `(λ, α, n)`.
#[derive(Clone, Debug)]
pub struct Twist {
    field: FieldCtx,
    lambda: FieldElement,
    alpha: usize,
    n: usize,
    order: u64,
    root_alpha: FieldElement,
    beta: FieldElement,
    beta_inv: FieldElement,
    psi: Poly,
    psi_plus: Poly,
    source: QuotientCtx,
    target: QuotientCtx,
}

impl Twist {
    pub fn new(f: &FieldCtx, lambda: FieldElement, alpha: usize, n: usize) -> Result<Self> {
        if alpha == 0 || n == 0 {
            return Err(Error::InvalidParams("α and n must be positive".into()));
        }
        let order = f.mult_order(lambda)?;
        let an = (alpha as u64).checked_mul(n as u64).ok_or_else(|| Error::OutOfRange("αn".into()))?;
        if gcd(an, order) != 1 {
            return Err(Error::NotCoprime { m: an, t: order });
        }
        let root_alpha = f.cyclic_root(lambda, alpha as u64)?;
        let beta = f.cyclic_root(lambda, an)?;
        let beta_inv = f.inv(beta)?;

        let mut psi = vec![FieldElement::ZERO; (alpha - 1) * n + 1];
        let mut ck = FieldElement::ONE;
        for k in 0..alpha {
            psi[(alpha - 1 - k) * n] = ck;
            ck = f.mul(ck, root_alpha);
        }
        let psi = Poly::new(psi);
        let phi0_twisted = Poly::new(vec![f.neg(FieldElement::ONE), beta_inv]);
        let psi_plus = phi0_twisted.mul(&psi, f);
        Ok(Twist {
            field: f.clone(),
            lambda,
            alpha,
            n,
            order,
            root_alpha,
            beta,
            beta_inv,
            psi,
            psi_plus,
            source: QuotientCtx::new(f, n, FieldElement::ONE)?,
            target: QuotientCtx::new(f, alpha * n, lambda)?,
        })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn lambda(&self) -> FieldElement {
        self.lambda
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Multiplicative order `t` of `λ`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `λ^{1/α}`.
    pub fn root_alpha(&self) -> FieldElement {
        self.root_alpha
    }

    /// `λ^{1/(αn)}`.
    pub fn beta(&self) -> FieldElement {
        self.beta
    }

    pub fn psi(&self) -> &Poly {
        &self.psi
    }

    pub fn psi_plus(&self) -> &Poly {
        &self.psi_plus
    }

    /// `F[X]/(X^n - 1)`.
    pub fn source(&self) -> &QuotientCtx {
        &self.source
    }

    /// `F[X]/(X^{αn} - λ)`.
    pub fn target(&self) -> &QuotientCtx {
        &self.target
    }

    /// `f(X/β)`.
    pub fn sigma(&self, f: &Poly) -> Poly {
        f.scale_variable(self.beta_inv, &self.field)
    }

    /// Whether `f` lies in `I = (X - 1)`, i.e. `f(1) = 0`.
    pub fn in_source_ideal(&self, f: &QuotientElement) -> bool {
        f.ctx() == &self.source && f.to_poly().eval(FieldElement::ONE, &self.field).is_zero()
    }

    /// Whether `a` lies in `I_{λ,α}`, i.e. `ψ⁺` divides the reduced representative.
    pub fn in_target_ideal(&self, a: &QuotientElement) -> bool {
        a.ctx() == &self.target
            && a.to_poly().rem(&self.psi_plus, &self.field).expect("ψ⁺ is nonzero").is_zero()
    }

    pub fn tau(&self, f: &QuotientElement) -> Result<QuotientElement> {
        if f.ctx() != &self.source {
            return Err(Error::ContextMismatch("τ expects an element of F[X]/(X^n - 1)".into()));
        }
        if !self.in_source_ideal(f) {
            return Err(Error::NotInIdeal("I"));
        }
        Ok(self.tau_unchecked(&f.to_poly()))
    }

    /// `σ(f) ψ` reduced into the target ring, without the membership check.
    pub(crate) fn tau_unchecked(&self, f: &Poly) -> QuotientElement {
        self.target.from_poly(&self.sigma(f).mul(&self.psi, &self.field))
    }
}

/// `ψ_{λ,α}` for length `n`.
pub fn psi(f: &FieldCtx, lambda: FieldElement, alpha: usize, n: usize) -> Result<Poly> {
    let t = f.mult_order(lambda)?;
    if alpha == 0 || n == 0 {
        return Err(Error::InvalidParams("α and n must be positive".into()));
    }
    let c = f.cyclic_root(lambda, alpha as u64).map_err(|_| Error::NotCoprime { m: alpha as u64, t })?;
    let mut v = vec![FieldElement::ZERO; (alpha - 1) * n + 1];
    let mut ck = FieldElement::ONE;
    for k in 0..alpha {
        v[(alpha - 1 - k) * n] = ck;
        ck = f.mul(ck, c);
    }
    Ok(Poly::new(v))
}

/// `ψ⁺_{λ,α}` for length `n`.
pub fn psi_plus(f: &FieldCtx, lambda: FieldElement, alpha: usize, n: usize) -> Result<Poly> {
    Ok(Twist::new(f, lambda, alpha, n)?.psi_plus)
}

/// `σ_λ(g) = g(X/λ^{1/(αn)})`.
pub fn sigma(g: &Poly, f: &FieldCtx, lambda: FieldElement, alpha: usize, n: usize) -> Result<Poly> {
    Ok(Twist::new(f, lambda, alpha, n)?.sigma(g))
}

/// `τ_{λ,α}(g)` for `g` in the ideal `(X - 1)` of `F[X]/(X^n - 1)`.
pub fn tau(g: &QuotientElement, lambda: FieldElement, alpha: usize) -> Result<QuotientElement> {
    let ctx = g.ctx();
    Twist::new(ctx.field(), lambda, alpha, ctx.n_total())?.tau(g)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::linalg::rank;
    use crate::polyring::factor::factor_xn_minus_1;

    #[test]
    fn psi_values() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(psi(&f5, f5.from_int(2), 1, 3).unwrap(), Poly::one());
        assert_eq!(psi(&f5, f5.one(), 2, 4).unwrap(), Poly::from_ints(&f5, &[1, 0, 0, 0, 1]));
        assert_eq!(psi(&f5, f5.from_int(4), 3, 1).unwrap(), Poly::from_ints(&f5, &[1, 4, 1]));
        assert!(matches!(psi(&f5, f5.from_int(4), 2, 1), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn psi_plus_values() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(psi_plus(&f5, f5.one(), 1, 3).unwrap(), Poly::from_ints(&f5, &[-1, 1]));
        let x1 = Poly::from_ints(&f5, &[-1, 1]);
        let xn1 = Poly::from_ints(&f5, &[1, 0, 0, 1]);
        assert_eq!(psi_plus(&f5, f5.one(), 2, 3).unwrap(), x1.mul(&xn1, &f5));
    }

    /// `c · φ̂_0(X/β) · ψ⁺(X) = X^{αn} - λ` with `φ̂_0 = 1 + X + ... + X^{n-1}`.
    fn check_factor_identity(f: &FieldCtx, lambda: FieldElement, alpha: usize, n: usize) {
        let tw = Twist::new(f, lambda, alpha, n).unwrap();
        let phi_hat = Poly::new(vec![f.one(); n]);
        let lhs = tw.sigma(&phi_hat).mul(tw.psi_plus(), f).scale(tw.root_alpha(), f);
        assert_eq!(lhs, Poly::binomial(f, alpha * n, lambda), "λ={lambda:?} α={alpha} n={n}");
        assert_eq!(tw.psi_plus().degree(), Some((alpha - 1) * n + 1));
    }

    #[test]
    fn psi_plus_factor_identity() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        check_factor_identity(&f5, f5.from_int(2), 1, 3);
        for lam in 1..5 {
            let lambda = f5.from_int(lam);
            let t = f5.mult_order(lambda).unwrap();
            for alpha in 1..5usize {
                for n in 1..8usize {
                    if gcd((alpha * n) as u64, t) == 1 {
                        check_factor_identity(&f5, lambda, alpha, n);
                    }
                }
            }
        }
        let f4 = FieldCtx::new(2, 2).unwrap();
        for lambda in f4.elements().filter(|x| !x.is_zero()) {
            check_factor_identity(&f4, lambda, 2, 5);
        }
    }

    #[test]
    fn sigma_is_identity_for_unit_lambda_and_multiplicative() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let g = Poly::from_ints(&f5, &[3, 1, 4, 1, 2]);
        assert_eq!(sigma(&g, &f5, f5.one(), 3, 2).unwrap(), g);
        let tw = Twist::new(&f5, f5.from_int(2), 1, 3).unwrap();
        let beta_inv = f5.inv(tw.beta()).unwrap();
        assert_eq!(tw.sigma(&Poly::x()), Poly::monomial(beta_inv, 1));
        let h = Poly::from_ints(&f5, &[1, 0, 2]);
        assert_eq!(tw.sigma(&g.mul(&h, &f5)), tw.sigma(&g).mul(&tw.sigma(&h), &f5));
    }

    #[test]
    fn tau_basic_images() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let tw = Twist::new(&f5, f5.from_int(2), 3, 3).unwrap();
        let phi0 = tw.source().from_poly(&Poly::from_ints(&f5, &[-1, 1]));
        assert_eq!(tw.tau(&phi0).unwrap(), tw.target().from_poly(tw.psi_plus()));
        let not_in = tw.source().one();
        assert_eq!(tw.tau(&not_in).unwrap_err(), Error::NotInIdeal("I"));

        let id = Twist::new(&f5, f5.one(), 1, 4).unwrap();
        let g = id.source().from_poly(&Poly::from_ints(&f5, &[1, 2, 1, 1]));
        assert!(id.in_source_ideal(&g));
        assert_eq!(id.tau(&g).unwrap().coeffs(), g.coeffs());
    }

    #[test]
    fn tau_semilinear_and_bijective_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f3 = FieldCtx::new(3, 1).unwrap();
        let lambda = f3.from_int(2);
        let n = 5;
        let tw = Twist::new(&f3, lambda, 3, n).unwrap();
        let fac = factor_xn_minus_1(&f3, n).unwrap();
        let e = tw.source().from_poly(&fac.e_ideal);
        for _ in 0..200 {
            let f = tw.source().random(&mut rng).mul(&e).unwrap();
            let g = Poly::new((0..9).map(|_| f3.random(&mut rng)).collect());
            let lhs = tw.tau(&f.mul_poly(&g)).unwrap();
            let rhs = tw.tau(&f).unwrap().mul_poly(&tw.sigma(&g));
            assert_eq!(lhs, rhs);
            assert!(tw.in_target_ideal(&rhs));
        }
        // exhaustive: I has 3^4 elements, the image must too
        let mut images = HashSet::new();
        let mut rows = Vec::new();
        for idx in 0..3u32.pow(n as u32) {
            let coeffs: Vec<_> = (0..n).map(|k| f3.from_int(((idx / 3u32.pow(k as u32)) % 3) as i64)).collect();
            let f = tw.source().from_coeffs(coeffs).unwrap();
            if tw.in_source_ideal(&f) {
                let img = tw.tau(&f).unwrap();
                rows.push(img.coeffs().to_vec());
                images.insert(img.into_coeffs());
            }
        }
        assert_eq!(images.len(), 81);
        assert_eq!(rank(&rows, &f3), n - 1);
    }
}
