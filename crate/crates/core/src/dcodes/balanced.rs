//! Balanced-code witnesses for constacyclic codes: an information set and
//! all its cyclic rotations cover every coordinate exactly `k` times.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::linalg::{rank, Echelon};

/// Information sets `I_1, ..., I_N` with `I_{j+1} = I_1 - j (mod N)`, and the
/// number of sets containing each coordinate.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BalancedWitness {
    pub sets: Vec<Vec<usize>>,
    pub t_cover: usize,
}

fn consta_shift(c: &[FieldElement], lambda: FieldElement, f: &FieldCtx) -> Vec<FieldElement> {
    let mut y = c.to_vec();
    y.rotate_right(1);
    y[0] = f.mul(y[0], lambda);
    y
}

/// Builds the witness for the `λ`-constacyclic code spanned by `rows` in `F^N`.
pub fn balanced_witness(rows: &[Vec<FieldElement>], lambda: FieldElement, f: &FieldCtx, len: usize) -> Result<BalancedWitness> {
    if rows.iter().any(|r| r.len() != len) {
        return Err(Error::InvalidParams(format!("generator rows must have length {len}")));
    }
    let ech = Echelon::from_rows(len, rows.iter().map(Vec::as_slice), f);
    if !rows.iter().all(|r| ech.contains(&consta_shift(r, lambda, f), f)) {
        return Err(Error::NotShiftClosed);
    }
    let basis = ech.rows();
    let k = basis.len();
    // the greedy choice over a matroid gives the lexicographically first basis
    let mut cols = Echelon::new(k);
    let mut first = Vec::with_capacity(k);
    for j in 0..len {
        if first.len() == k {
            break;
        }
        let col: Vec<FieldElement> = basis.iter().map(|r| r[j]).collect();
        if cols.insert(&col, f) {
            first.push(j);
        }
    }
    let sets = (0..len)
        .map(|j| {
            let mut s: Vec<usize> = first.iter().map(|&i| (i + len - j % len) % len).collect();
            s.sort_unstable();
            s
        })
        .collect();
    Ok(BalancedWitness { sets, t_cover: k })
}

/// Checks the witness against the code: each projection onto a set is a
/// bijection (full column rank on exactly `k` coordinates) and every
/// coordinate lies in exactly `t_cover` sets.
pub fn verify_witness(w: &BalancedWitness, rows: &[Vec<FieldElement>], f: &FieldCtx, len: usize) -> bool {
    let k = rank(rows, f);
    if w.t_cover != k {
        return false;
    }
    let mut cover = vec![0usize; len];
    for set in &w.sets {
        if set.len() != k {
            return false;
        }
        let projected: Vec<Vec<FieldElement>> = rows.iter().map(|r| set.iter().map(|&i| r[i]).collect()).collect();
        if k > 0 && rank(&projected, f) != k {
            return false;
        }
        for &i in set {
            cover[i] += 1;
        }
    }
    cover.iter().all(|&c| c == w.t_cover)
}
