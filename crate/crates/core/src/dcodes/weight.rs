//! Exhaustive weight enumeration of a linear code by Gray-code traversal.
//!
//! A code of dimension `k` over `GF(p^r)` is treated as an `F_p`-space of
//! dimension `K = rk` spanned by `ω_i g_j`. The `p`-ary modular Gray code
//! changes exactly one digit by `+1` per step (digit `c = v_p(s + 1)` on the
//! step `s → s + 1`), so every step adds a single row to the running
//! codeword and the weight is updated only on that row's support. Binary
//! codes take a bit-packed path.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::linalg::Echelon;

/// `w ≤ δ · len`, with a relative slack of `1e-12` so that grid values like
/// `δ = 0.1` are not lost to rounding.
pub fn weight_at_most(w: usize, delta: f64, len: usize) -> bool {
    (w as f64) <= delta * len as f64 * (1.0 + 1e-12)
}

/// Largest weight `w` with [`weight_at_most`]`(w, δ, len)`.
pub fn max_weight(delta: f64, len: usize) -> usize {
    (0..=len).rev().find(|&w| weight_at_most(w, delta, len)).unwrap_or(0)
}

/// Independent rows spanning the same space as `rows`.
pub fn independent_rows(rows: &[Vec<FieldElement>], f: &FieldCtx) -> Vec<Vec<FieldElement>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut ech = Echelon::new(width);
    rows.iter().filter(|r| ech.insert(r, f)).cloned().collect()
}

/// Number of codewords `q^k`, as a float for budget comparisons.
pub fn code_size(q: u32, k: usize) -> f64 {
    (q as f64).powi(k as i32)
}

/// `hist[w]` = number of codewords of weight `w` in the row space of `rows`
/// (which need not be independent), zero codeword included.
pub fn weight_histogram(rows: &[Vec<FieldElement>], f: &FieldCtx, len: usize, budget: u64) -> Result<Vec<u64>> {
    let basis = independent_rows(rows, f);
    let needed = code_size(f.q(), basis.len());
    if needed > budget as f64 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    if basis.is_empty() {
        let mut h = vec![0; len + 1];
        h[0] = 1;
        return Ok(h);
    }
    if f.q() == 2 {
        Ok(binary_histogram(&basis, len))
    } else {
        Ok(pary_histogram(&basis, f, len))
    }
}

/// Splits the `K` digits into `prefix` high digits enumerated per chunk and
/// `K - prefix` low digits walked by the Gray code.
fn prefix_digits(p: u64, k: usize) -> usize {
    let mut b = 0;
    let mut chunks = 1u64;
    while b < k && chunks < 256 && k - b > 4 {
        b += 1;
        chunks *= p;
    }
    b
}

fn merge(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

#[cfg(feature = "parallel")]
fn map_chunks(chunks: u64, len: usize, f: impl Fn(u64) -> Vec<u64> + Sync + Send) -> Vec<u64> {
    use rayon::prelude::*;
    (0..chunks).into_par_iter().map(f).reduce(|| vec![0; len + 1], merge)
}

#[cfg(not(feature = "parallel"))]
fn map_chunks(chunks: u64, len: usize, f: impl Fn(u64) -> Vec<u64>) -> Vec<u64> {
    (0..chunks).map(f).fold(vec![0; len + 1], merge)
}

fn pack_bits(row: &[FieldElement], words: usize) -> Vec<u64> {
    let mut out = vec![0u64; words];
    for (i, c) in row.iter().enumerate() {
        if !c.is_zero() {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

fn binary_histogram(basis: &[Vec<FieldElement>], len: usize) -> Vec<u64> {
    let words = len.div_ceil(64).max(1);
    let rows: Vec<Vec<u64>> = basis.iter().map(|r| pack_bits(r, words)).collect();
    let k = rows.len();
    let b = prefix_digits(2, k);
    let low = k - b;
    map_chunks(1u64 << b, len, |chunk| {
        let mut hist = vec![0u64; len + 1];
        let mut cw = vec![0u64; words];
        for i in 0..b {
            if chunk >> i & 1 == 1 {
                for (x, y) in cw.iter_mut().zip(&rows[low + i]) {
                    *x ^= y;
                }
            }
        }
        let steps = 1u64 << low;
        for s in 0..steps {
            let w: u32 = cw.iter().map(|x| x.count_ones()).sum();
            hist[w as usize] += 1;
            if s + 1 < steps {
                let c = (s + 1).trailing_zeros() as usize;
                for (x, y) in cw.iter_mut().zip(&rows[c]) {
                    *x ^= y;
                }
            }
        }
        hist
    })
}

/// Sparse `F_p`-row: positions and values of the nonzero entries.
type SparseRow = Vec<(usize, FieldElement)>;

fn pary_histogram(basis: &[Vec<FieldElement>], f: &FieldCtx, len: usize) -> Vec<u64> {
    let p = f.p() as u64;
    // F_p-basis ω_0, ..., ω_{r-1} of F (unit coefficient vectors)
    let omegas: Vec<FieldElement> = (0..f.r() as usize)
        .map(|i| {
            let mut c = vec![0u32; f.r() as usize];
            c[i] = 1;
            f.from_coeffs(&c).expect("unit coefficient vector")
        })
        .collect();
    let rows: Vec<SparseRow> = basis
        .iter()
        .flat_map(|g| {
            omegas.iter().map(move |&w| {
                g.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i, f.mul(w, c))).collect()
            })
        })
        .collect();
    let k = rows.len();
    let b = prefix_digits(p, k);
    let low = k - b;
    let chunks = p.pow(b as u32);
    map_chunks(chunks, len, |chunk| {
        let mut hist = vec![0u64; len + 1];
        let mut cw = vec![FieldElement::ZERO; len];
        let mut weight = 0usize;
        let add_row = |cw: &mut [FieldElement], weight: &mut usize, row: &SparseRow| {
            for &(i, v) in row {
                let old = cw[i];
                let new = f.add(old, v);
                cw[i] = new;
                *weight = *weight + usize::from(!new.is_zero()) - usize::from(!old.is_zero());
            }
        };
        let mut rest = chunk;
        for i in 0..b {
            let digit = rest % p;
            rest /= p;
            for _ in 0..digit {
                add_row(&mut cw, &mut weight, &rows[low + i]);
            }
        }
        let steps = p.pow(low as u32);
        for s in 0..steps {
            hist[weight] += 1;
            if s + 1 < steps {
                let mut t = s + 1;
                let mut c = 0;
                while t % p == 0 {
                    t /= p;
                    c += 1;
                }
                add_row(&mut cw, &mut weight, &rows[c]);
            }
        }
        hist
    })
}

/// Dimension, minimum weight and derived ratios of a code of length `len`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct CodeReport {
    pub length: usize,
    pub dim: usize,
    /// `None` for the zero code.
    pub min_wt: Option<usize>,
    /// `false` when `min_wt` is only an upper bound from sampling.
    pub exact: bool,
    /// `min_wt / length`.
    pub delta: Option<f64>,
    /// `dim / length`.
    pub rate: f64,
}

impl CodeReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Minimum Hamming weight of the row space of `rows`. Exact when the code has
/// at most `budget` words; otherwise the minimum over the basis rows and
/// `budget` pseudo-random combinations, flagged `exact = false`.
pub fn min_weight_of_rows(rows: &[Vec<FieldElement>], f: &FieldCtx, len: usize, budget: u64) -> CodeReport {
    let basis = independent_rows(rows, f);
    let dim = basis.len();
    let rate = dim as f64 / len as f64;
    if dim == 0 {
        return CodeReport { length: len, dim, min_wt: None, exact: true, delta: None, rate };
    }
    let (min_wt, exact) = match weight_histogram(&basis, f, len, budget) {
        Ok(hist) => (hist.iter().skip(1).position(|&c| c > 0).map(|w| w + 1), true),
        Err(_) => (Some(sampled_min_weight(&basis, f, budget)), false),
    };
    CodeReport { length: len, dim, min_wt, exact, delta: min_wt.map(|w| w as f64 / len as f64), rate }
}

fn sampled_min_weight(basis: &[Vec<FieldElement>], f: &FieldCtx, samples: u64) -> usize {
    let weight = |v: &[FieldElement]| v.iter().filter(|c| !c.is_zero()).count();
    let mut best = basis.iter().map(|r| weight(r)).min().expect("nonempty basis");
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let len = basis[0].len();
    for _ in 0..samples {
        let mut v = vec![FieldElement::ZERO; len];
        for row in basis {
            let c = f.random(&mut rng);
            if !c.is_zero() {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
        }
        let w = weight(&v);
        if w > 0 {
            best = best.min(w);
        }
    }
    best
}

/// `|C^{≤δ}|`: codewords (zero included) with `w(c) ≤ δ · len`.
pub fn low_weight_count(rows: &[Vec<FieldElement>], f: &FieldCtx, len: usize, delta: f64, budget: u64) -> Result<u64> {
    let hist = weight_histogram(rows, f, len, budget)?;
    Ok(hist[..=max_weight(delta, len)].iter().sum())
}
