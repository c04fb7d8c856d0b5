//! Gram-only LLL reduction with exact integer arithmetic, delta = 0.99.
//!
//! Works directly on the Gram matrix (no embedding needed), so it applies to
//! abstract definite lattices given by their pairing. Internally uses the
//! all-integer representation lambda[i][j] = d_j * mu[i][j] with
//! d_i = det(gram of the first i+1 vectors), so no rational arithmetic occurs
//! in the loop.

use crate::field::Rational;
use crate::matrix::Mat;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Symmetric row+column operation: basis b_i -= q * b_j applied to the gram.
fn gram_rowcol_sub(g: &mut Mat<BigInt>, i: usize, j: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let n = g.rows;
    for c in 0..n {
        let v = g.at(i, c) - q * g.at(j, c);
        *g.at_mut(i, c) = v;
    }
    for r in 0..n {
        let v = g.at(r, i) - q * g.at(r, j);
        *g.at_mut(r, i) = v;
    }
}

fn gram_swap(g: &mut Mat<BigInt>, i: usize, j: usize) {
    let n = g.rows;
    for c in 0..n {
        g.data.swap(i * n + c, j * n + c);
    }
    for r in 0..n {
        g.data.swap(r * n + i, r * n + j);
    }
}

fn urow_sub(u: &mut Mat<BigInt>, i: usize, j: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..u.cols {
        let v = u.at(i, c) - q * u.at(j, c);
        *u.at_mut(i, c) = v;
    }
}

fn urow_swap(u: &mut Mat<BigInt>, i: usize, j: usize) {
    for c in 0..u.cols {
        u.data.swap(i * u.cols + c, j * u.cols + c);
    }
}

/// Exact Gram-Schmidt data (mu coefficients and squared norms B*) from a gram
/// matrix. Errors when a pivot is not strictly positive.
pub fn gram_schmidt(g: &Mat<Rational>) -> Result<(Vec<Vec<Rational>>, Vec<Rational>)> {
    let n = g.rows;
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut bstar = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut v = g.at(i, j).clone();
            for k in 0..j {
                v -= &mu[i][k] * &mu[j][k] * &bstar[k];
            }
            if bstar[j].is_zero() {
                return Err(Error::IndefiniteInput);
            }
            mu[i][j] = v / &bstar[j];
        }
        let mut v = g.at(i, i).clone();
        for k in 0..i {
            v -= &mu[i][k] * &mu[i][k] * &bstar[k];
        }
        if !v.is_positive() {
            return Err(Error::IndefiniteInput);
        }
        bstar[i] = v;
    }
    Ok((mu, bstar))
}

/// State for the all-integer algorithm: d[0] = 1, d[i+1] = Gram determinant of
/// the first i+1 vectors; lambda[i][j] = d[j+1] * mu[i][j].
struct IntLll {
    g: Mat<BigInt>,
    u: Mat<BigInt>,
    lambda: Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
}

impl IntLll {
    fn init(g: Mat<BigInt>) -> Result<IntLll> {
        let n = g.rows;
        let mut lambda = vec![vec![BigInt::zero(); n]; n];
        let mut d = vec![BigInt::one(); n + 1];
        for i in 0..n {
            for j in 0..=i {
                let mut uacc = g.at(i, j).clone();
                for k in 0..j {
                    uacc = (&d[k + 1] * uacc - &lambda[i][k] * &lambda[j][k]) / &d[k];
                }
                if j < i {
                    lambda[i][j] = uacc;
                } else {
                    if !uacc.is_positive() {
                        return Err(Error::IndefiniteInput);
                    }
                    d[i + 1] = uacc;
                }
            }
        }
        let u = {
            let mut m = Mat { rows: n, cols: n, data: vec![BigInt::zero(); n * n] };
            for i in 0..n {
                *m.at_mut(i, i) = BigInt::one();
            }
            m
        };
        Ok(IntLll { g, u, lambda, d })
    }

    /// Size-reduce b_k against b_l (l < k).
    fn redi(&mut self, k: usize, l: usize) {
        let two_lam = BigInt::from(2) * self.lambda[k][l].abs();
        if two_lam <= self.d[l + 1] {
            return;
        }
        // q = nearest integer to lambda / d
        let num = BigInt::from(2) * &self.lambda[k][l] + &self.d[l + 1];
        let q = num.div_floor(&(BigInt::from(2) * &self.d[l + 1]));
        gram_rowcol_sub(&mut self.g, k, l, &q);
        urow_sub(&mut self.u, k, l, &q);
        self.lambda[k][l] -= &q * &self.d[l + 1];
        for i in 0..l {
            let v = &self.lambda[k][i] - &q * &self.lambda[l][i];
            self.lambda[k][i] = v;
        }
    }

    /// Swap b_{k-1} and b_k, updating lambda and d.
    fn swapi(&mut self, k: usize) {
        let n = self.g.rows;
        gram_swap(&mut self.g, k - 1, k);
        urow_swap(&mut self.u, k - 1, k);
        for j in 0..k.saturating_sub(1) {
            let tmp = self.lambda[k - 1][j].clone();
            self.lambda[k - 1][j] = self.lambda[k][j].clone();
            self.lambda[k][j] = tmp;
        }
        let lam = self.lambda[k][k - 1].clone();
        let b = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..n {
            let t = self.lambda[i][k].clone();
            self.lambda[i][k] = (&self.d[k + 1] * &self.lambda[i][k - 1] - &lam * &t) / &self.d[k];
            self.lambda[i][k - 1] = (&b * &t + &lam * &self.lambda[i][k]) / &self.d[k + 1];
        }
        self.d[k] = b;
    }
}

/// LLL-reduces a definite gram matrix. Returns (reduced gram, U) with
/// U * G * U^T = reduced and U unimodular. Negative definite input is negated
/// internally and restored on return; non-integral input is scaled by the
/// common denominator (which leaves the transform unchanged).
pub fn lll_reduce(g_in: &Mat<Rational>) -> Result<(Mat<Rational>, Mat<BigInt>)> {
    if !g_in.is_square() {
        return Err(Error::NonSquareMatrix);
    }
    let n = g_in.rows;
    if n == 0 {
        return Ok((g_in.clone(), Mat { rows: 0, cols: 0, data: vec![] }));
    }
    for i in 0..n {
        for j in 0..n {
            if g_in.at(i, j) != g_in.at(j, i) {
                return Err(Error::Invalid("gram matrix not symmetric".into()));
            }
        }
    }
    let negate = g_in.at(0, 0).is_negative();
    let mut scale = BigInt::one();
    for x in &g_in.data {
        scale = scale.lcm(x.denom());
    }
    let gi = g_in.map(|x| {
        let v = x * Rational::from_integer(scale.clone());
        let v = if negate { -v } else { v };
        debug_assert!(v.denom().is_one());
        v.numer().clone()
    });
    let mut st = IntLll::init(gi)?;
    let mut k = 1usize;
    while k < n {
        st.redi(k, k - 1);
        // Lovasz with delta = 99/100:
        // swap when 100 (d[k-1] d[k+1] + lambda^2) < 99 d[k]^2
        let lam = &st.lambda[k][k - 1];
        let lhs = BigInt::from(100) * (&st.d[k - 1] * &st.d[k + 1] + lam * lam);
        let rhs = BigInt::from(99) * &st.d[k] * &st.d[k];
        if lhs < rhs {
            st.swapi(k);
            k = k.max(2) - 1;
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                st.redi(k, l);
            }
            k += 1;
        }
    }
    let sc = Rational::from_integer(scale);
    let red = st.g.map(|x| {
        let v = Rational::from_integer(x.clone()) / &sc;
        if negate {
            -v
        } else {
            v
        }
    });
    Ok((red, st.u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_i64};
    use crate::intmat::{idet, imul};

    fn qmat(rows: Vec<Vec<i64>>) -> Mat<Rational> {
        Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat_i64).collect()).collect())
            .unwrap()
    }

    fn check(g: &Mat<Rational>) -> Mat<Rational> {
        let (red, u) = lll_reduce(g).unwrap();
        assert_eq!(idet(&u).unwrap().abs(), BigInt::one());
        // U G U^T = red
        let uq = u.map(|x| Rational::from_integer(x.clone()));
        let tmp = crate::matrix::mul(&crate::field::QQ, &uq, g).unwrap();
        let lhs = crate::matrix::mul(&crate::field::QQ, &tmp, &uq.transpose()).unwrap();
        assert_eq!(lhs, red);
        // same determinant
        assert_eq!(
            crate::matrix::det(&crate::field::QQ, g).unwrap(),
            crate::matrix::det(&crate::field::QQ, &red).unwrap()
        );
        let _ = imul(&u, &u).unwrap();
        red
    }

    #[test]
    fn identity_fixed() {
        let g = qmat(vec![vec![1, 0], vec![0, 1]]);
        let (red, u) = lll_reduce(&g).unwrap();
        assert_eq!(red, g);
        assert_eq!(u.at(0, 0), &BigInt::one());
    }

    #[test]
    fn already_reduced() {
        let g = qmat(vec![vec![4, 1], vec![1, 4]]);
        let red = check(&g);
        assert_eq!(red, g);
    }

    #[test]
    fn reduces_skew_basis() {
        // basis (1,0), (100,1) of Z^2: gram [[1,100],[100,10001]]
        let g = qmat(vec![vec![1, 100], vec![100, 10001]]);
        let red = check(&g);
        assert_eq!(red, qmat(vec![vec![1, 0], vec![0, 1]]));
    }

    #[test]
    fn negative_definite_ok() {
        let g = qmat(vec![vec![-2, 1], vec![1, -2]]);
        let red = check(&g);
        assert_eq!(red.at(0, 0), &rat_i64(-2));
    }

    #[test]
    fn rational_gram_ok() {
        let mut g = qmat(vec![vec![1, 0, 0], vec![0, 3, 1], vec![0, 1, 9]]);
        *g.at_mut(0, 0) = rat(1, 2);
        let red = check(&g);
        assert_eq!(red.at(0, 0), &rat(1, 2));
    }

    #[test]
    fn larger_random_like() {
        let g = qmat(vec![
            vec![10, 3, 2, 1],
            vec![3, 12, 5, 4],
            vec![2, 5, 14, 6],
            vec![1, 4, 6, 16],
        ]);
        check(&g);
        // B * B^T for a skew triangular B, guaranteed positive definite
        let skew = qmat(vec![
            vec![15, 24, 20, 3],
            vec![24, 42, 34, 5],
            vec![20, 34, 37, 6],
            vec![3, 5, 6, 1],
        ]);
        check(&skew);
    }

    #[test]
    fn indefinite_rejected() {
        let g = qmat(vec![vec![0, 1], vec![1, -2]]);
        assert_eq!(lll_reduce(&g), Err(Error::IndefiniteInput));
    }
}
