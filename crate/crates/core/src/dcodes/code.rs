use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::linalg::Echelon;
use crate::polyring::QuotientElement;

use super::params::TwistParams;
use super::weight::{min_weight_of_rows, CodeReport};

/// The code `C_{a',a} = {(σ(f) a', σ(f) a) : f ∈ I}` of length `(α' + α) n`.
#[derive(Clone, Debug)]
pub struct DoubleTwistedCode {
    params: TwistParams,
    a_prime: QuotientElement,
    a: QuotientElement,
    /// Independent rows `(σ(f) a', σ(f) a)` for `f` running over a basis of `I`.
    basis: Vec<Vec<FieldElement>>,
}

impl DoubleTwistedCode {
    pub fn params(&self) -> &TwistParams {
        &self.params
    }

    pub fn a_prime(&self) -> &QuotientElement {
        &self.a_prime
    }

    pub fn a(&self) -> &QuotientElement {
        &self.a
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `α' n`, the length of the first block.
    pub fn split(&self) -> usize {
        self.params.alpha_prime() * self.params.n()
    }

    pub fn length(&self) -> usize {
        self.params.length()
    }

    /// Whether `dim = n - 1`.
    pub fn is_full_dim(&self) -> bool {
        self.dim() + 1 == self.params.n()
    }

    /// `(λ rot(u), λ rot(v))` for a codeword `(u, v)`.
    pub fn double_shift(&self, c: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.params.field();
        let lambda = self.params.lambda();
        let (u, v) = c.split_at(self.split());
        let shift = |x: &[FieldElement]| {
            let mut y = x.to_vec();
            y.rotate_right(1);
            y[0] = f.mul(y[0], lambda);
            y
        };
        let mut out = shift(u);
        out.extend(shift(v));
        out
    }

    /// Exact rank test that the double shift of every basis row stays in the code.
    pub fn is_shift_closed(&self) -> bool {
        let f = self.params.field();
        let ech = Echelon::from_rows(self.length(), self.basis.iter().map(Vec::as_slice), f);
        self.basis.iter().all(|r| ech.contains(&self.double_shift(r), f))
    }

    pub fn min_weight(&self, budget: u64) -> CodeReport {
        min_weight_of_rows(&self.basis, self.params.field(), self.length(), budget)
    }

    /// The codeword `(σ(f) a', σ(f) a)` for an element `f` of `I`.
    pub fn codeword(&self, f: &QuotientElement) -> Result<Vec<FieldElement>> {
        if !self.params.twist().in_source_ideal(f) {
            return Err(Error::NotInIdeal("I"));
        }
        let s = self.params.twist().sigma(&f.to_poly());
        let mut out = self.a_prime.mul_poly(&s).into_coeffs();
        out.extend(self.a.mul_poly(&s).into_coeffs());
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = self.params.field();
        serde_json::json!({
            "params": self.params.to_json(),
            "a_prime": self.a_prime.to_json(),
            "a": self.a.to_json(),
            "dim": self.dim(),
            "basis": self.basis.iter()
                .map(|r| r.iter().map(|&c| f.element_to_json(c)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Builds `C_{a',a}` after checking `a' ∈ I_{λ,α'}` and `a ∈ I_{λ,α}`.
pub fn build_code(params: &TwistParams, a_prime: &QuotientElement, a: &QuotientElement) -> Result<DoubleTwistedCode> {
    if !params.twist_prime().in_target_ideal(a_prime) {
        return Err(Error::NotInIdeal("I_{λ,α'}"));
    }
    if !params.twist().in_target_ideal(a) {
        return Err(Error::NotInIdeal("I_{λ,α}"));
    }
    Ok(build_unchecked(params, a_prime, a))
}

pub(crate) fn build_unchecked(params: &TwistParams, a_prime: &QuotientElement, a: &QuotientElement) -> DoubleTwistedCode {
    let f = params.field();
    let mut ech = Echelon::new(params.length());
    let mut basis = Vec::new();
    for s in params.sigma_basis() {
        let mut row = a_prime.mul_poly(s).into_coeffs();
        row.extend(a.mul_poly(s).into_coeffs());
        if ech.insert(&row, f) {
            basis.push(row);
        }
    }
    DoubleTwistedCode { params: params.clone(), a_prime: a_prime.clone(), a: a.clone(), basis }
}

/// Samples `(a', a)` from `seed` and builds the code.
pub fn sample_code(params: &TwistParams, seed: u64) -> DoubleTwistedCode {
    let (a_prime, a) = params.sample_pair(seed);
    build_unchecked(params, &a_prime, &a)
}
