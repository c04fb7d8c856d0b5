//! Dense rectangular matrices over an arbitrary coefficient type, with exact
//! linear algebra over a field: Gaussian elimination, inversion, and the
//! division-free Berkowitz characteristic polynomial.

use crate::field::{FieldOps, Rational, QQ};
use crate::poly::{self, Poly};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Mat<T>> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_rows(rows_in: Vec<Vec<T>>) -> Result<Mat<T>> {
        let rows = rows_in.len();
        let cols = rows_in.first().map_or(0, |r| r.len());
        if rows_in.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Mat { rows, cols, data: rows_in.into_iter().flatten().collect() })
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Mat<T> {
        let mut data = Vec::with_capacity(row_idx.len() * col_idx.len());
        for &i in row_idx {
            for &j in col_idx {
                data.push(self.at(i, j).clone());
            }
        }
        Mat { rows: row_idx.len(), cols: col_idx.len(), data }
    }

    pub fn map<U, G: FnMut(&T) -> U>(&self, mut g: G) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| g(x)).collect() }
    }
}

pub fn identity<F: FieldOps>(f: &F, n: usize) -> Mat<F::Elem> {
    let mut m = Mat { rows: n, cols: n, data: vec![f.zero(); n * n] };
    for i in 0..n {
        *m.at_mut(i, i) = f.one();
    }
    m
}

pub fn add<F: FieldOps>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Result<Mat<F::Elem>> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimensionMismatch("matrix addition".into()));
    }
    Ok(Mat {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect(),
    })
}

pub fn neg<F: FieldOps>(f: &F, a: &Mat<F::Elem>) -> Mat<F::Elem> {
    a.map(|x| f.neg(x))
}

pub fn mul<F: FieldOps>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Result<Mat<F::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = Mat { rows: a.rows, cols: b.cols, data: vec![f.zero(); a.rows * b.cols] };
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.at(i, k);
            if f.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let v = f.add(out.at(i, j), &f.mul(aik, b.at(k, j)));
                *out.at_mut(i, j) = v;
            }
        }
    }
    Ok(out)
}

/// Row vector times matrix.
pub fn row_times_mat<F: FieldOps>(f: &F, v: &[F::Elem], m: &Mat<F::Elem>) -> Result<Vec<F::Elem>> {
    if v.len() != m.rows {
        return Err(Error::DimensionMismatch("row-vector product".into()));
    }
    let mut out = vec![f.zero(); m.cols];
    for (k, vk) in v.iter().enumerate() {
        if f.is_zero(vk) {
            continue;
        }
        for j in 0..m.cols {
            out[j] = f.add(&out[j], &f.mul(vk, m.at(k, j)));
        }
    }
    Ok(out)
}

/// v . G . w for a bilinear form G.
pub fn pairing<F: FieldOps>(
    f: &F,
    v: &[F::Elem],
    g: &Mat<F::Elem>,
    w: &[F::Elem],
) -> Result<F::Elem> {
    let gv = row_times_mat(f, v, g)?;
    if gv.len() != w.len() {
        return Err(Error::DimensionMismatch("pairing".into()));
    }
    let mut acc = f.zero();
    for (x, y) in gv.iter().zip(w) {
        acc = f.add(&acc, &f.mul(x, y));
    }
    Ok(acc)
}

/// Characteristic polynomial det(xI - M) by the Berkowitz algorithm
/// (division-free), returned in ascending degree, monic.
pub fn charpoly<F: FieldOps>(f: &F, m: &Mat<F::Elem>) -> Result<Poly<F::Elem>> {
    if !m.is_square() {
        return Err(Error::NonSquareMatrix);
    }
    let n = m.rows;
    if n == 0 {
        return Ok(vec![f.one()]);
    }
    // poly in DESCENDING order during the iteration (leading coefficient first)
    let mut cur: Vec<F::Elem> = vec![f.one(), f.neg(m.at(0, 0))];
    for k in 1..n {
        // leading (k+1)x(k+1) block partitioned as [[A, c],[r, a]]
        let idx: Vec<usize> = (0..k).collect();
        let a_sub = m.submatrix(&idx, &idx);
        let c: Vec<F::Elem> = (0..k).map(|i| m.at(i, k).clone()).collect();
        let r: Vec<F::Elem> = (0..k).map(|j| m.at(k, j).clone()).collect();
        let a = m.at(k, k).clone();
        // items = [1, -a, -r.c, -r.A.c, -r.A^2.c, ...], length k+2
        let mut items: Vec<F::Elem> = Vec::with_capacity(k + 2);
        items.push(f.one());
        items.push(f.neg(&a));
        let mut vecc = c;
        for step in 0..k {
            let dot = r
                .iter()
                .zip(&vecc)
                .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)));
            items.push(f.neg(&dot));
            if step + 1 < k {
                // vecc = A * vecc
                let mut nv = vec![f.zero(); k];
                for i in 0..k {
                    for j in 0..k {
                        nv[i] = f.add(&nv[i], &f.mul(a_sub.at(i, j), &vecc[j]));
                    }
                }
                vecc = nv;
            }
        }
        // next = Toeplitz(items) * cur: next[i] = sum_j items[i-j] cur[j]
        let mut next = vec![f.zero(); k + 2];
        for (j, cj) in cur.iter().enumerate() {
            for (d, it) in items.iter().enumerate() {
                if j + d < k + 2 {
                    next[j + d] = f.add(&next[j + d], &f.mul(it, cj));
                }
            }
        }
        cur = next;
    }
    cur.reverse();
    poly::trim(f, &mut cur);
    Ok(cur)
}

/// Determinant over a field, by fraction-free-style elimination with exact
/// field arithmetic.
pub fn det<F: FieldOps>(f: &F, m: &Mat<F::Elem>) -> Result<F::Elem> {
    if !m.is_square() {
        return Err(Error::NonSquareMatrix);
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut d = f.one();
    for col in 0..n {
        let piv = (col..n).find(|&i| !f.is_zero(a.at(i, col)));
        let piv = match piv {
            Some(p) => p,
            None => return Ok(f.zero()),
        };
        if piv != col {
            for j in 0..n {
                let tmp = a.at(piv, j).clone();
                *a.at_mut(piv, j) = a.at(col, j).clone();
                *a.at_mut(col, j) = tmp;
            }
            d = f.neg(&d);
        }
        let p = a.at(col, col).clone();
        d = f.mul(&d, &p);
        let pinv = f.inv(&p)?;
        for i in col + 1..n {
            let factor = f.mul(a.at(i, col), &pinv);
            if f.is_zero(&factor) {
                continue;
            }
            for j in col..n {
                let v = f.sub(a.at(i, j), &f.mul(&factor, a.at(col, j)));
                *a.at_mut(i, j) = v;
            }
        }
    }
    Ok(d)
}

/// Determinant and monic characteristic polynomial, cross-checked against
/// each other: det = (-1)^n charpoly(0).
pub fn det_charpoly(m: &Mat<Rational>) -> Result<(Rational, Poly<Rational>)> {
    let f = QQ;
    let cp = charpoly(&f, m)?;
    let c0 = cp.first().cloned().unwrap_or_else(|| f.one());
    let d = if m.rows % 2 == 0 { c0 } else { f.neg(&c0) };
    debug_assert_eq!(d, det(&f, m)?);
    Ok((d, cp))
}

/// Solves M.x = rhs (column convention) or returns the inverse when rhs is
/// absent. Gauss-Jordan with exact arithmetic.
pub fn solve_or_invert<F: FieldOps>(
    f: &F,
    m: &Mat<F::Elem>,
    rhs: Option<&[F::Elem]>,
) -> Result<Mat<F::Elem>> {
    if !m.is_square() {
        return Err(Error::NonSquareMatrix);
    }
    let n = m.rows;
    let aug_cols = match rhs {
        Some(r) => {
            if r.len() != n {
                return Err(Error::DimensionMismatch("rhs length".into()));
            }
            1
        }
        None => n,
    };
    let mut a = m.clone();
    let mut b = match rhs {
        Some(r) => Mat { rows: n, cols: 1, data: r.to_vec() },
        None => identity(f, n),
    };
    for col in 0..n {
        let piv = (col..n)
            .find(|&i| !f.is_zero(a.at(i, col)))
            .ok_or(Error::SingularMatrix)?;
        if piv != col {
            for j in 0..n {
                let tmp = a.at(piv, j).clone();
                *a.at_mut(piv, j) = a.at(col, j).clone();
                *a.at_mut(col, j) = tmp;
            }
            for j in 0..aug_cols {
                let tmp = b.at(piv, j).clone();
                *b.at_mut(piv, j) = b.at(col, j).clone();
                *b.at_mut(col, j) = tmp;
            }
        }
        let pinv = f.inv(a.at(col, col))?;
        for j in 0..n {
            let v = f.mul(a.at(col, j), &pinv);
            *a.at_mut(col, j) = v;
        }
        for j in 0..aug_cols {
            let v = f.mul(b.at(col, j), &pinv);
            *b.at_mut(col, j) = v;
        }
        for i in 0..n {
            if i == col || f.is_zero(a.at(i, col)) {
                continue;
            }
            let factor = a.at(i, col).clone();
            for j in 0..n {
                let v = f.sub(a.at(i, j), &f.mul(&factor, a.at(col, j)));
                *a.at_mut(i, j) = v;
            }
            for j in 0..aug_cols {
                let v = f.sub(b.at(i, j), &f.mul(&factor, b.at(col, j)));
                *b.at_mut(i, j) = v;
            }
        }
    }
    Ok(b)
}

/// Evaluates a polynomial at a square matrix.
pub fn eval_poly_at_matrix<F: FieldOps>(
    f: &F,
    p: &Poly<F::Elem>,
    m: &Mat<F::Elem>,
) -> Result<Mat<F::Elem>> {
    if !m.is_square() {
        return Err(Error::NonSquareMatrix);
    }
    let n = m.rows;
    let mut acc = Mat { rows: n, cols: n, data: vec![f.zero(); n * n] };
    for c in p.iter().rev() {
        acc = mul(f, &acc, m)?;
        for i in 0..n {
            let v = f.add(acc.at(i, i), c);
            *acc.at_mut(i, i) = v;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat_i64;

    fn qmat(rows: Vec<Vec<i64>>) -> Mat<Rational> {
        Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat_i64).collect()).collect())
            .unwrap()
    }

    #[test]
    fn swap_matrix() {
        let m = qmat(vec![vec![0, 1], vec![1, 0]]);
        let (d, cp) = det_charpoly(&m).unwrap();
        assert_eq!(d, rat_i64(-1));
        assert_eq!(cp, vec![rat_i64(-1), rat_i64(0), rat_i64(1)]);
    }

    #[test]
    fn cayley_hamilton() {
        let m = qmat(vec![vec![2, 3, 1], vec![0, 1, -1], vec![4, 2, 2]]);
        let cp = charpoly(&QQ, &m).unwrap();
        let z = eval_poly_at_matrix(&QQ, &cp, &m).unwrap();
        assert!(z.data.iter().all(|x| *x == rat_i64(0)));
    }

    #[test]
    fn invert_roundtrip() {
        let m = qmat(vec![vec![2, 1], vec![1, 1]]);
        let inv = solve_or_invert(&QQ, &m, None).unwrap();
        assert_eq!(mul(&QQ, &m, &inv).unwrap(), identity(&QQ, 2));
    }

    #[test]
    fn singular_rejected() {
        let m = qmat(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(solve_or_invert(&QQ, &m, None), Err(Error::SingularMatrix));
        assert_eq!(det(&QQ, &m).unwrap(), rat_i64(0));
    }

    #[test]
    fn solve_identity() {
        let m = identity(&QQ, 3);
        let rhs = vec![rat_i64(5), rat_i64(-1), rat_i64(7)];
        let x = solve_or_invert(&QQ, &m, Some(&rhs)).unwrap();
        assert_eq!(x.data, rhs);
    }
}
