//! Submodule membership in `R'^a × R^b` over a chain ring `R`.
//!
//! `R'` is an `R`-module through `ρ`, and `x ↦ π^{ℓ-ℓ'} x̂` embeds it into `R`
//! as an `R`-module, so the problem reduces to membership in a submodule of
//! `R^{a+b}`. Rows are brought to a Howell-style echelon form: each pivot has
//! the least valuation in its column, and for a pivot of valuation `v` the row
//! `π^{ℓ-v}` times the pivot row (which vanishes in the pivot column) is fed
//! back for the later columns. A vector then lies in the span exactly when
//! greedy reduction against the pivots leaves zero.

use crate::chain_ring::{ChainRingCtx, ChainRingElement};

use super::LiftedWord;

pub struct RowModule {
    ring: ChainRingCtx,
    shift: u32,
    /// `(column, row)` in increasing column order.
    pivots: Vec<(usize, Vec<ChainRingElement>)>,
}

impl RowModule {
    pub fn new(ring: &ChainRingCtx, ring_prime: &ChainRingCtx, rows: &[LiftedWord]) -> Self {
        let shift = ring.ell() - ring_prime.ell();
        let mut m = RowModule { ring: ring.clone(), shift, pivots: Vec::new() };
        let flat: Vec<Vec<ChainRingElement>> = rows.iter().map(|w| m.flatten(w)).collect();
        m.pivots = echelon(ring, flat);
        m
    }

    fn embed(&self, x: &ChainRingElement) -> ChainRingElement {
        let r = &self.ring;
        let lifted = match x {
            ChainRingElement::Int(v) => ChainRingElement::Int(*v),
            ChainRingElement::Series(c) => {
                let mut c = c.clone();
                c.resize(r.ell() as usize, crate::gf::FieldElement::ZERO);
                ChainRingElement::Series(c)
            }
        };
        r.mul(&lifted, &r.pi_pow(self.shift))
    }

    fn flatten(&self, w: &LiftedWord) -> Vec<ChainRingElement> {
        w.prime.iter().map(|x| self.embed(x)).chain(w.main.iter().cloned()).collect()
    }

    pub fn contains(&self, w: &LiftedWord) -> bool {
        let r = &self.ring;
        let mut t = self.flatten(w);
        for (col, row) in &self.pivots {
            if r.is_zero(&t[*col]) {
                continue;
            }
            let Some(c) = r.div_exact(&t[*col], &row[*col]) else {
                return false;
            };
            for (x, y) in t.iter_mut().zip(row) {
                *x = r.sub(x, &r.mul(&c, y));
            }
        }
        t.iter().all(|x| r.is_zero(x))
    }

    pub fn pivot_count(&self) -> usize {
        self.pivots.len()
    }
}

fn echelon(r: &ChainRingCtx, rows: Vec<Vec<ChainRingElement>>) -> Vec<(usize, Vec<ChainRingElement>)> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut pool: Vec<Vec<ChainRingElement>> = rows.into_iter().filter(|v| !v.iter().all(|x| r.is_zero(x))).collect();
    let mut pivots = Vec::new();
    for col in 0..width {
        let best = pool
            .iter()
            .enumerate()
            .filter_map(|(i, v)| r.valuation(&v[col]).map(|val| (val, i)))
            .min();
        let Some((val, idx)) = best else { continue };
        let pivot = pool.swap_remove(idx);
        for v in pool.iter_mut() {
            if r.is_zero(&v[col]) {
                continue;
            }
            let c = r.div_exact(&v[col], &pivot[col]).expect("pivot has least valuation");
            for (x, y) in v.iter_mut().zip(&pivot) {
                *x = r.sub(x, &r.mul(&c, y));
            }
        }
        let annihilated: Vec<ChainRingElement> = pivot.iter().map(|y| r.mul(&r.pi_pow(r.ell() - val), y)).collect();
        pool.push(annihilated);
        pool.retain(|v| !v.iter().all(|x| r.is_zero(x)));
        pivots.push((col, pivot));
    }
    pivots
}
