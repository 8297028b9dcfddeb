//! Row reduction over a [`FieldCtx`].

use crate::gf::{FieldCtx, FieldElement};

/// A row space kept in reduced row echelon form. Rows are inserted one at a
/// time, which makes greedy independent-subset selection cheap.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<'a>(width: usize, rows: impl IntoIterator<Item = &'a [FieldElement]>, f: &FieldCtx) -> Self {
        let mut e = Echelon::new(width);
        for r in rows {
            e.insert(r, f);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the stored rows and returns the residual.
    pub fn reduce(&self, v: &[FieldElement], f: &FieldCtx) -> Vec<FieldElement> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElement], f: &FieldCtx) -> bool {
        self.reduce(v, f).iter().all(|c| c.is_zero())
    }

    /// Adds `v` to the span. Returns `false` (and leaves the span unchanged)
    /// if `v` is already in it.
    pub fn insert(&mut self, v: &[FieldElement], f: &FieldCtx) -> bool {
        assert_eq!(v.len(), self.width, "row width mismatch");
        let mut v = self.reduce(v, f);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[p]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if !c.is_zero() {
                for (x, &y) in row.iter_mut().zip(&v) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, v);
        true
    }
}

pub fn rank(rows: &[Vec<FieldElement>], f: &FieldCtx) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    Echelon::from_rows(width, rows.iter().map(Vec::as_slice), f).rank()
}

/// Coefficients `c` with `Σ c_i rows[i] = target`, if any.
pub fn express(rows: &[Vec<FieldElement>], target: &[FieldElement], f: &FieldCtx) -> Option<Vec<FieldElement>> {
    let k = rows.len();
    let width = target.len();
    // Augment each row with a unit vector to track the combination.
    let mut aug: Vec<Vec<FieldElement>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..k).map(|j| if i == j { FieldElement::ONE } else { FieldElement::ZERO }));
            v
        })
        .collect();
    let mut t: Vec<FieldElement> = target.to_vec();
    t.extend(std::iter::repeat_n(FieldElement::ZERO, k));
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(sel) = (pivot_row..k).find(|&i| !aug[i][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, sel);
        let inv = f.inv(aug[pivot_row][col]).expect("nonzero");
        for x in aug[pivot_row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let prow = aug[pivot_row].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != pivot_row && !row[col].is_zero() {
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&prow) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        if !t[col].is_zero() {
            let c = t[col];
            for (x, &y) in t.iter_mut().zip(&prow) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
        pivot_row += 1;
    }
    if t[..width].iter().any(|c| !c.is_zero()) {
        return None;
    }
    // t now holds -(combination) in its tail
    Some(t[width..].iter().map(|&c| f.neg(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: &FieldCtx, xs: &[i64]) -> Vec<FieldElement> {
        xs.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn rank_and_membership() {
        let f = FieldCtx::new(2, 1).unwrap();
        let rows = vec![v(&f, &[1, 1, 0]), v(&f, &[0, 1, 1]), v(&f, &[1, 0, 1])];
        assert_eq!(rank(&rows, &f), 2);
        let e = Echelon::from_rows(3, rows.iter().map(Vec::as_slice), &f);
        assert!(e.contains(&v(&f, &[1, 0, 1]), &f));
        assert!(!e.contains(&v(&f, &[1, 0, 0]), &f));
    }

    #[test]
    fn express_recovers_combination() {
        let f = FieldCtx::new(5, 1).unwrap();
        let rows = vec![v(&f, &[1, 2, 3, 0]), v(&f, &[0, 1, 4, 2]), v(&f, &[2, 2, 2, 2])];
        let target: Vec<FieldElement> = (0..4)
            .map(|i| {
                let a = f.mul(f.from_int(3), rows[0][i]);
                let b = f.mul(f.from_int(4), rows[2][i]);
                f.add(a, b)
            })
            .collect();
        let c = express(&rows, &target, &f).unwrap();
        let back: Vec<FieldElement> = (0..4)
            .map(|i| (0..3).fold(f.zero(), |acc, j| f.add(acc, f.mul(c[j], rows[j][i]))))
            .collect();
        assert_eq!(back, target);
        assert!(express(&rows[..1], &v(&f, &[0, 0, 0, 1]), &f).is_none());
    }
}
