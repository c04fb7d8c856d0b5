//! Integer matrix normal forms: Hermite (row style) and Smith, both with
//! unimodular transform matrices.

use crate::matrix::Mat;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IMat = Mat<BigInt>;

pub fn imat_from_i64(rows: Vec<Vec<i64>>) -> IMat {
    Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
        .unwrap()
}

pub fn iidentity(n: usize) -> IMat {
    let mut m = Mat { rows: n, cols: n, data: vec![BigInt::zero(); n * n] };
    for i in 0..n {
        *m.at_mut(i, i) = BigInt::one();
    }
    m
}

pub fn imul(a: &IMat, b: &IMat) -> Result<IMat> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch("integer matrix product".into()));
    }
    let mut out = Mat { rows: a.rows, cols: b.cols, data: vec![BigInt::zero(); a.rows * b.cols] };
    for i in 0..a.rows {
        for k in 0..a.cols {
            if a.at(i, k).is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let v = out.at(i, j) + a.at(i, k) * b.at(k, j);
                *out.at_mut(i, j) = v;
            }
        }
    }
    Ok(out)
}

fn swap_rows(m: &mut IMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..m.cols {
        let tmp = m.at(i, c).clone();
        *m.at_mut(i, c) = m.at(j, c).clone();
        *m.at_mut(j, c) = tmp;
    }
}

fn swap_cols(m: &mut IMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..m.rows {
        let tmp = m.at(r, i).clone();
        *m.at_mut(r, i) = m.at(r, j).clone();
        *m.at_mut(r, j) = tmp;
    }
}

/// row_i -= q * row_j
fn row_sub(m: &mut IMat, i: usize, j: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..m.cols {
        let v = m.at(i, c) - q * m.at(j, c);
        *m.at_mut(i, c) = v;
    }
}

fn col_sub(m: &mut IMat, i: usize, j: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for r in 0..m.rows {
        let v = m.at(r, i) - q * m.at(r, j);
        *m.at_mut(r, i) = v;
    }
}

fn negate_row(m: &mut IMat, i: usize) {
    for c in 0..m.cols {
        let v = -m.at(i, c).clone();
        *m.at_mut(i, c) = v;
    }
}

/// Row-style Hermite normal form: returns (H, U) with U unimodular and
/// U*M = H upper echelon, pivots positive, entries above a pivot reduced to
/// [0, pivot). Zero rows are moved to the bottom.
pub fn hnf_with_transform(m: &IMat) -> (IMat, IMat) {
    let mut h = m.clone();
    let mut u = iidentity(m.rows);
    let mut pivot_row = 0usize;
    for col in 0..h.cols {
        if pivot_row >= h.rows {
            break;
        }
        // euclidean elimination in this column below pivot_row
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..h.rows {
                if !h.at(i, col).is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if h.at(i, col).abs() < h.at(b, col).abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let b = match best {
                None => break,
                Some(b) => b,
            };
            swap_rows(&mut h, pivot_row, b);
            swap_rows(&mut u, pivot_row, b);
            if h.at(pivot_row, col).is_negative() {
                negate_row(&mut h, pivot_row);
                negate_row(&mut u, pivot_row);
            }
            let p = h.at(pivot_row, col).clone();
            let mut done = true;
            for i in pivot_row + 1..h.rows {
                let q = h.at(i, col).div_floor(&p);
                row_sub(&mut h, i, pivot_row, &q);
                row_sub(&mut u, i, pivot_row, &q);
                if !h.at(i, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.at(pivot_row, col).is_zero() {
            continue;
        }
        // reduce entries above the pivot
        let p = h.at(pivot_row, col).clone();
        for i in 0..pivot_row {
            let q = h.at(i, col).div_floor(&p);
            row_sub(&mut h, i, pivot_row, &q);
            row_sub(&mut u, i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form: (D, U, V) with U*M*V = D, D diagonal with
/// d1 | d2 | ... and di >= 0, U and V unimodular.
pub fn snf_with_transforms(m: &IMat) -> (IMat, IMat, IMat) {
    let mut d = m.clone();
    let mut u = iidentity(m.rows);
    let mut v = iidentity(m.cols);
    let k = m.rows.min(m.cols);
    for t in 0..k {
        // find a nonzero pivot in the trailing block
        let mut found = None;
        'outer: for i in t..d.rows {
            for j in t..d.cols {
                if !d.at(i, j).is_zero() {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        let (pi, pj) = match found {
            None => break,
            Some(p) => p,
        };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            // clear column t
            let mut changed = false;
            for i in t + 1..d.rows {
                if d.at(i, t).is_zero() {
                    continue;
                }
                if (d.at(i, t) % d.at(t, t)).is_zero() {
                    let q = d.at(i, t) / d.at(t, t);
                    row_sub(&mut d, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                } else {
                    let q = d.at(i, t).div_floor(d.at(t, t));
                    row_sub(&mut d, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                    swap_rows(&mut d, t, i);
                    swap_rows(&mut u, t, i);
                    changed = true;
                }
            }
            for j in t + 1..d.cols {
                if d.at(t, j).is_zero() {
                    continue;
                }
                if (d.at(t, j) % d.at(t, t)).is_zero() {
                    let q = d.at(t, j) / d.at(t, t);
                    col_sub(&mut d, j, t, &q);
                    col_sub(&mut v, j, t, &q);
                } else {
                    let q = d.at(t, j).div_floor(d.at(t, t));
                    col_sub(&mut d, j, t, &q);
                    col_sub(&mut v, j, t, &q);
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    changed = true;
                }
            }
            let col_clear = (t + 1..d.rows).all(|i| d.at(i, t).is_zero());
            let row_clear = (t + 1..d.cols).all(|j| d.at(t, j).is_zero());
            if !changed && col_clear && row_clear {
                break;
            }
        }
        if d.at(t, t).is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    // enforce divisibility d_t | d_{t+1}
    loop {
        let mut fixed = true;
        for t in 0..k.saturating_sub(1) {
            let a = d.at(t, t).clone();
            let b = d.at(t + 1, t + 1).clone();
            if a.is_zero() && !b.is_zero() {
                // move the nonzero entry forward
                swap_rows(&mut d, t, t + 1);
                swap_rows(&mut u, t, t + 1);
                swap_cols(&mut d, t, t + 1);
                swap_cols(&mut v, t, t + 1);
                fixed = false;
                continue;
            }
            if a.is_zero() || (&b % &a).is_zero() {
                continue;
            }
            // standard 2x2 repair: col_t += col_{t+1}, then re-eliminate
            let minus_one = -BigInt::one();
            col_sub(&mut d, t, t + 1, &minus_one);
            col_sub(&mut v, t, t + 1, &minus_one);
            // now the trailing block at t is no longer diagonal; redo gcd steps
            let g = a.gcd(&b);
            // row/col euclid on the 2x2 [[a,0],[b',b]] block
            loop {
                // clear d[t+1][t] and d[t][t+1] with the usual moves
                if !d.at(t + 1, t).is_zero() {
                    let q = d.at(t + 1, t).div_floor(d.at(t, t));
                    row_sub(&mut d, t + 1, t, &q);
                    row_sub(&mut u, t + 1, t, &q);
                    if !d.at(t + 1, t).is_zero() {
                        swap_rows(&mut d, t, t + 1);
                        swap_rows(&mut u, t, t + 1);
                        continue;
                    }
                }
                if !d.at(t, t + 1).is_zero() {
                    let q = d.at(t, t + 1).div_floor(d.at(t, t));
                    col_sub(&mut d, t + 1, t, &q);
                    col_sub(&mut v, t + 1, t, &q);
                    if !d.at(t, t + 1).is_zero() {
                        swap_cols(&mut d, t, t + 1);
                        swap_cols(&mut v, t, t + 1);
                        continue;
                    }
                }
                break;
            }
            if d.at(t, t).is_negative() {
                negate_row(&mut d, t);
                negate_row(&mut u, t);
            }
            if d.at(t + 1, t + 1).is_negative() {
                negate_row(&mut d, t + 1);
                negate_row(&mut u, t + 1);
            }
            debug_assert_eq!(d.at(t, t), &g);
            fixed = false;
        }
        if fixed {
            break;
        }
    }
    (d, u, v)
}

/// Determinant of a unimodular candidate; used by tests and callers to check
/// transform validity.
pub fn idet(m: &IMat) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NonSquareMatrix);
    }
    // Bareiss fraction-free elimination
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for t in 0..n - 1 {
        if a.at(t, t).is_zero() {
            let piv = (t + 1..n).find(|&i| !a.at(i, t).is_zero());
            match piv {
                None => return Ok(BigInt::zero()),
                Some(p) => {
                    swap_rows(&mut a, t, p);
                    sign = -sign;
                }
            }
        }
        for i in t + 1..n {
            for j in t + 1..n {
                let num = a.at(i, j) * a.at(t, t) - a.at(i, t) * a.at(t, j);
                let v = &num / &prev;
                *a.at_mut(i, j) = v;
            }
            *a.at_mut(i, t) = BigInt::zero();
        }
        prev = a.at(t, t).clone();
    }
    Ok(sign * a.at(n - 1, n - 1).clone())
}

/// Inverse of a unimodular integer matrix.
pub fn iinv_unimodular(m: &IMat) -> Result<IMat> {
    let d = idet(m)?;
    if !d.abs().is_one() {
        return Err(Error::NotInvertible(format!("determinant {d} is not a unit")));
    }
    // adjugate via Gauss over rationals is overkill; use HNF trick:
    // solve M * X = I column by column with Cramer replaced by augmented HNF.
    // Simpler: run hnf on [M | I]; since det = ±1, H = I and U = M^{-1}.
    let n = m.rows;
    let (h, u) = hnf_with_transform(m);
    if h != iidentity(n) {
        // can happen only if m not unimodular, guarded above, but hnf of a
        // unimodular matrix is always the identity
        return Err(Error::NotInvertible("HNF of unimodular matrix not identity".into()));
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IMat) {
        let (d, u, v) = snf_with_transforms(m);
        assert_eq!(imul(&imul(&u, m).unwrap(), &v).unwrap(), d);
        assert_eq!(idet(&u).unwrap().abs(), BigInt::one());
        assert_eq!(idet(&v).unwrap().abs(), BigInt::one());
        let k = m.rows.min(m.cols);
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    assert!(d.at(i, j).is_zero());
                }
            }
        }
        for i in 0..k.saturating_sub(1) {
            let a = d.at(i, i);
            let b = d.at(i + 1, i + 1);
            assert!(!a.is_negative() && !b.is_negative());
            if !a.is_zero() {
                assert!((b % a).is_zero() || b.is_zero());
            } else {
                assert!(b.is_zero());
            }
        }
    }

    #[test]
    fn snf_diag() {
        let m = imat_from_i64(vec![vec![2, 0], vec![0, 4]]);
        let (d, _, _) = snf_with_transforms(&m);
        assert_eq!(d, imat_from_i64(vec![vec![2, 0], vec![0, 4]]));
        check_snf(&m);
    }

    #[test]
    fn snf_swap() {
        let m = imat_from_i64(vec![vec![0, 1], vec![1, 0]]);
        let (d, _, _) = snf_with_transforms(&m);
        assert_eq!(d, iidentity(2));
        check_snf(&m);
    }

    #[test]
    fn snf_divisibility_repair() {
        let m = imat_from_i64(vec![vec![2, 0], vec![0, 3]]);
        let (d, _, _) = snf_with_transforms(&m);
        assert_eq!(d, imat_from_i64(vec![vec![1, 0], vec![0, 6]]));
        check_snf(&m);
    }

    #[test]
    fn snf_rectangular_and_random() {
        check_snf(&imat_from_i64(vec![vec![4, 6, 8], vec![2, 2, 2]]));
        check_snf(&imat_from_i64(vec![
            vec![3, 1, -2],
            vec![0, 5, 7],
            vec![2, 2, 2],
            vec![-1, 4, 0],
        ]));
    }

    #[test]
    fn hnf_basic() {
        let m = imat_from_i64(vec![vec![2, 4], vec![3, 5]]);
        let (h, u) = hnf_with_transform(&m);
        assert_eq!(imul(&u, &m).unwrap(), h);
        assert_eq!(idet(&u).unwrap().abs(), BigInt::one());
        assert_eq!(h, imat_from_i64(vec![vec![1, 1], vec![0, 2]]));
    }

    #[test]
    fn unimodular_inverse() {
        let m = imat_from_i64(vec![vec![1, 2], vec![1, 3]]);
        let inv = iinv_unimodular(&m).unwrap();
        assert_eq!(imul(&m, &inv).unwrap(), iidentity(2));
    }
}
