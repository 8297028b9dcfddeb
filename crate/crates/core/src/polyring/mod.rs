//! Polynomials over a finite field, the factorization of `X^n - 1`, the
//! quotient rings `F[X]/(X^N - c)` and the twisting maps between them.

mod extension;
pub mod factor;
pub mod poly;
pub mod quotient;
pub mod twist;

pub use factor::{factor_xn_minus_1, Factorization};
pub use poly::Poly;
pub use quotient::{QuotientCtx, QuotientElement};
pub use twist::{psi, psi_plus, sigma, tau, Twist};
