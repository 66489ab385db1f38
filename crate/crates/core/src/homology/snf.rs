//! Smith normal form over the integers.
//!
//! Sparse matrices first lose every unit pivot by plain row elimination in
//! `i64` with checked arithmetic; what is left (usually tiny) goes through a
//! dense `BigInt` reduction. On overflow the whole matrix is redone densely.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rows of `(column, value)` pairs, sorted by column, no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn from_dense(rows: &[Vec<i64>], ncols: usize) -> Self {
        SparseMatrix {
            nrows: rows.len(),
            ncols,
            rows: rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect())
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![BigInt::zero(); self.ncols];
                for &(c, v) in r {
                    d[c] = BigInt::from(v);
                }
                d
            })
            .collect()
    }

    /// `self * other` where `self` is `a x b` and `other` is `b x c`.
    pub fn mul(&self, other: &SparseMatrix) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); other.ncols]; self.nrows];
        for (i, r) in self.rows.iter().enumerate() {
            for &(k, v) in r {
                for &(j, w) in &other.rows[k] {
                    out[i][j] += BigInt::from(v) * BigInt::from(w);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ...`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(rows: &[Vec<BigInt>], ncols: usize) -> SmithForm {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    for r in &mut a {
        r.resize(ncols, BigInt::zero());
    }
    SmithForm { factors: dense_snf(a) }
}

pub fn smith_normal_form_sparse(m: &SparseMatrix) -> SmithForm {
    match eliminate_units(m) {
        Some((units, rest)) => {
            let mut factors = vec![BigInt::one(); units];
            factors.extend(dense_snf(rest));
            SmithForm { factors }
        }
        None => SmithForm { factors: dense_snf(m.to_dense()) },
    }
}

/// `row -= k * pivot`, both sorted; `None` on overflow.
fn axpy(row: &[(usize, i64)], k: i64, pivot: &[(usize, i64)]) -> Option<Vec<(usize, i64)>> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i]);
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, k.checked_mul(pivot[j].1)?.checked_neg()?));
            j += 1;
        } else {
            let v = row[i].1.checked_sub(k.checked_mul(pivot[j].1)?)?;
            if v != 0 {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Removes unit pivots; returns their number and the dense remainder.
fn eliminate_units(m: &SparseMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut rows: Vec<Vec<(usize, i64)>> = m.rows.clone();
    let mut alive: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    // rows holding each column, kept as a superset and filtered on use
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); m.ncols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            holders[c].push(i);
        }
    }
    let mut units = 0;
    let mut progress = true;
    while progress {
        progress = false;
        for r in 0..rows.len() {
            if !alive[r] {
                continue;
            }
            // prefer the unit in the sparsest column
            let Some(&(c, u)) = rows[r]
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .min_by_key(|(c, _)| holders[*c].len())
            else {
                continue;
            };
            let pivot = std::mem::take(&mut rows[r]);
            alive[r] = false;
            units += 1;
            progress = true;
            let hs = std::mem::take(&mut holders[c]);
            for i in hs {
                if i == r || !alive[i] {
                    continue;
                }
                let Ok(pos) = rows[i].binary_search_by_key(&c, |e| e.0) else { continue };
                let k = rows[i][pos].1.checked_mul(u)?;
                let new = axpy(&rows[i], k, &pivot)?;
                for &(cc, _) in &new {
                    if rows[i].binary_search_by_key(&cc, |e| e.0).is_err() {
                        holders[cc].push(i);
                    }
                }
                rows[i] = new;
                if rows[i].is_empty() {
                    alive[i] = false;
                }
            }
        }
    }
    let rest_rows: Vec<&Vec<(usize, i64)>> = rows.iter().zip(&alive).filter(|(_, &a)| a).map(|(r, _)| r).collect();
    let mut cols: Vec<usize> = rest_rows.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    let dense = rest_rows
        .iter()
        .map(|r| {
            let mut d = vec![BigInt::zero(); cols.len()];
            for &(c, v) in r.iter() {
                d[cols.binary_search(&c).unwrap()] = BigInt::from(v);
            }
            d
        })
        .collect();
    Some((units, dense))
}

fn min_abs_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut factors = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        let Some((pi, pj)) = min_abs_nonzero(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut again = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    again = true;
                }
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                if !a[t][j].is_zero() {
                    again = true;
                }
            }
            if again {
                // a smaller remainder appeared in row or column t
                let mut best = (t, t);
                for i in t..nr {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..nc {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            let bad = (t + 1..nr).find(|&i| a[i][t + 1..].iter().any(|x| !x.mod_floor(&p).is_zero()));
            match bad {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in top[t][t..].iter_mut().zip(&rest[0][t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(smith_normal_form(&big(&[&[2, 4], &[6, 8]]), 2).factors, ints(&[2, 4]));
        assert_eq!(smith_normal_form(&big(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3).factors, ints(&[1, 1, 1]));
        assert!(smith_normal_form(&big(&[&[0, 0], &[0, 0]]), 2).factors.is_empty());
        assert_eq!(smith_normal_form(&big(&[&[2, 0], &[0, 3]]), 2).factors, ints(&[1, 6]));
        assert_eq!(smith_normal_form(&big(&[&[4, 6]]), 2).factors, ints(&[2]));
    }

    #[test]
    fn sparse_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
            let rows: Vec<Vec<i64>> =
                (0..r).map(|_| (0..c).map(|_| if rng.gen_bool(0.4) { rng.gen_range(-4..=4) } else { 0 }).collect()).collect();
            let sp = SparseMatrix::from_dense(&rows, c);
            let dense = smith_normal_form(&sp.to_dense(), c);
            assert_eq!(smith_normal_form_sparse(&sp), dense, "{rows:?}");
            // d_i | d_(i+1)
            for w in dense.factors.windows(2) {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn overflow_falls_back() {
        let rows = vec![vec![1, i64::MAX], vec![i64::MAX, 1]];
        let sp = SparseMatrix::from_dense(&rows, 2);
        assert_eq!(smith_normal_form_sparse(&sp), smith_normal_form(&sp.to_dense(), 2));
    }
}
