//! Sublattice machinery: primitive orthogonal complements, saturations,
//! overlattices, invariant and coinvariant lattices of an isometry.

use crate::{gram_of_rows, Error, LatticeIsometry, QuadLattice, Result};
use exactcore::field::{Rational, QQ};
use exactcore::intmat::{hnf_with_transform, iinv_unimodular, snf_with_transforms, IMat};
use exactcore::matrix::{self, Mat};
use exactcore::FieldOps;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A sublattice (or overlattice) of an ambient lattice, carried with its
/// basis written in ambient coordinates (rows).
#[derive(Debug, Clone)]
pub struct Sublattice {
    pub lattice: QuadLattice,
    pub basis: Mat<Rational>,
}

/// Basis of {x in Z^n : x * A = 0}, automatically saturated.
pub fn integer_kernel(a: &IMat) -> IMat {
    let (d, u, _v) = snf_with_transforms(a);
    let k = a.rows.min(a.cols);
    let mut rows = Vec::new();
    for i in 0..a.rows {
        let diag_zero = i >= k || d.at(i, i).is_zero();
        if diag_zero {
            rows.push(u.row(i).to_vec());
        }
    }
    let cols = a.rows;
    Mat { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
}

fn clear_rows_to_int(m: &Mat<Rational>) -> IMat {
    // scale each row by its denominator lcm; preserves Q-span and kernels
    let mut data = Vec::with_capacity(m.data.len());
    for i in 0..m.rows {
        let mut l = BigInt::one();
        for x in m.row(i) {
            l = l.lcm(x.denom());
        }
        for x in m.row(i) {
            data.push(x.numer() * &l / x.denom());
        }
    }
    Mat { rows: m.rows, cols: m.cols, data }
}

fn clear_cols_to_int(m: &Mat<Rational>) -> IMat {
    let t = m.transpose();
    clear_rows_to_int(&t).transpose()
}

/// Primitive orthogonal complement of the span of `vectors` (rational rows in
/// L tensor Q). The result may be degenerate when the span contains isotropic
/// directions; the radical rank is reported alongside.
pub fn orthogonal_complement(l: &QuadLattice, vectors: &Mat<Rational>) -> Result<Sublattice> {
    if vectors.cols != l.rank() {
        return Err(Error::Core(exactcore::Error::DimensionMismatch(
            "complement vectors".into(),
        )));
    }
    // x in complement iff x . G . v^T = 0 for each v
    let gvt = matrix::mul(&QQ, &l.gram, &vectors.transpose())?;
    let a = clear_cols_to_int(&gvt);
    let basis_int = integer_kernel(&a);
    let basis = crate::to_rat_mat(&basis_int);
    let gram = gram_of_rows(l, &basis);
    Ok(Sublattice { lattice: QuadLattice { gram }, basis })
}

/// Saturation of the Z-span of the given rational rows: the primitive
/// sublattice with the same Q-span.
pub fn saturate_span(l: &QuadLattice, vectors: &Mat<Rational>) -> Result<Sublattice> {
    if vectors.cols != l.rank() {
        return Err(Error::Core(exactcore::Error::DimensionMismatch("span vectors".into())));
    }
    let vi = clear_rows_to_int(vectors);
    let (d, _u, w) = snf_with_transforms(&vi);
    let k = vi.rows.min(vi.cols);
    let r = (0..k).filter(|&i| !d.at(i, i).is_zero()).count();
    let winv = iinv_unimodular(&w)?;
    // saturation basis: first r rows of W^{-1} viewed as coordinate rows
    // (rows of V are in the row space d_i * row_i(W^{-1}))
    let mut rows = Vec::new();
    for i in 0..r {
        rows.push(
            winv.row(i).iter().map(|x| Rational::from_integer(x.clone())).collect::<Vec<_>>(),
        );
    }
    let basis = Mat::from_rows(rows)?;
    let gram = gram_of_rows(l, &basis);
    Ok(Sublattice { lattice: QuadLattice { gram }, basis })
}

/// Overlattice generated by L and the extra rational vectors. Errors when the
/// resulting gram is not integral, or not even while L is even.
pub fn overlattice(l: &QuadLattice, extra: &[Vec<Rational>]) -> Result<Sublattice> {
    let n = l.rank();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n + extra.len());
    for i in 0..n {
        let mut r = vec![QQ.zero(); n];
        r[i] = QQ.one();
        rows.push(r);
    }
    for e in extra {
        if e.len() != n {
            return Err(Error::Core(exactcore::Error::DimensionMismatch(
                "overlattice generator".into(),
            )));
        }
        rows.push(e.clone());
    }
    // common denominator
    let mut ell = BigInt::one();
    for r in &rows {
        for x in r {
            ell = ell.lcm(x.denom());
        }
    }
    let ellr = Rational::from_integer(ell.clone());
    let scaled: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let y = x * &ellr;
                    debug_assert!(y.denom().is_one());
                    y.numer().clone()
                })
                .collect()
        })
        .collect();
    let m = Mat::from_rows(scaled)?;
    let (h, _u) = hnf_with_transform(&m);
    let mut basis_rows = Vec::new();
    for i in 0..h.rows {
        if h.row(i).iter().any(|x| !x.is_zero()) {
            basis_rows.push(
                h.row(i)
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()) / &ellr)
                    .collect::<Vec<_>>(),
            );
        }
    }
    if basis_rows.len() != n {
        return Err(Error::Core(exactcore::Error::Invalid(
            "overlattice generators do not span the right rank".into(),
        )));
    }
    let basis = Mat::from_rows(basis_rows)?;
    let gram = gram_of_rows(l, &basis);
    let result = QuadLattice { gram };
    if l.is_integral() && !result.is_integral() {
        return Err(Error::NonIntegralOverlattice);
    }
    if l.is_even() && !result.is_even() {
        return Err(Error::NonIntegralOverlattice);
    }
    Ok(Sublattice { lattice: result, basis })
}

/// Invariant lattice L^f (saturated fixed sublattice) and coinvariant lattice
/// L_f (primitive orthogonal complement of L^f).
pub fn invariant_coinvariant(
    l: &QuadLattice,
    f: &LatticeIsometry,
) -> Result<(Sublattice, Sublattice)> {
    let n = l.rank();
    if f.matrix.rows != n {
        return Err(Error::Core(exactcore::Error::DimensionMismatch("isometry size".into())));
    }
    // kernel of (M - I) acting on rows
    let mut mi = f.matrix.clone();
    for i in 0..n {
        let v = mi.at(i, i) - Rational::from_integer(BigInt::one());
        *mi.at_mut(i, i) = v;
    }
    let a = clear_cols_to_int(&mi);
    let basis_int = integer_kernel(&a);
    let basis = crate::to_rat_mat(&basis_int);
    let gram = gram_of_rows(l, &basis);
    let inv = Sublattice { lattice: QuadLattice { gram }, basis };
    let coinv = orthogonal_complement(l, &inv.basis)?;
    Ok((inv, coinv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactcore::field::{rat, rat_i64};

    #[test]
    fn complement_of_isotropic_contains_it() {
        let l = QuadLattice::from_i64_rows(vec![vec![0, 1], vec![1, -2]]);
        let e = Mat::from_rows(vec![vec![rat_i64(1), rat_i64(0)]]).unwrap();
        let c = orthogonal_complement(&l, &e).unwrap();
        assert_eq!(c.lattice.rank(), 1);
        // e pairs to zero with itself, so e spans its own complement
        assert_eq!(c.lattice.gram.at(0, 0), &rat_i64(0));
    }

    #[test]
    fn complement_rank_and_det() {
        // Z^3 with standard form; complement of (1,1,1)
        let l = QuadLattice::from_i64_rows(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let v = Mat::from_rows(vec![vec![rat_i64(1), rat_i64(1), rat_i64(1)]]).unwrap();
        let c = orthogonal_complement(&l, &v).unwrap();
        assert_eq!(c.lattice.rank(), 2);
        // A2-like lattice of det 3
        assert_eq!(c.lattice.det(), rat_i64(3));
    }

    #[test]
    fn saturation_divides_out_index() {
        let l = QuadLattice::from_i64_rows(vec![vec![1, 0], vec![0, 1]]);
        let v = Mat::from_rows(vec![vec![rat_i64(2), rat_i64(4)]]).unwrap();
        let s = saturate_span(&l, &v).unwrap();
        assert_eq!(s.lattice.rank(), 1);
        // primitive generator (1,2) has norm 5
        assert_eq!(s.lattice.gram.at(0, 0), &rat_i64(5));
    }

    #[test]
    fn overlattice_index_two() {
        // A1+A1 scaled: gram diag(4,4); adding (1/2, 1/2) gives det 4*4/4 = 4
        let l = QuadLattice::from_i64_rows(vec![vec![4, 0], vec![0, 4]]);
        let s = overlattice(&l, &[vec![rat(1, 2), rat(1, 2)]]).unwrap();
        assert_eq!(s.lattice.det(), rat_i64(4));
        assert!(s.lattice.is_even());
    }

    #[test]
    fn overlattice_rejects_non_integral() {
        let l = QuadLattice::from_i64_rows(vec![vec![2, 0], vec![0, 2]]);
        let r = overlattice(&l, &[vec![rat(1, 2), rat_i64(0)]]);
        assert_eq!(r.unwrap_err(), Error::NonIntegralOverlattice);
    }

    #[test]
    fn identity_invariant_everything() {
        let l = QuadLattice::from_i64_rows(vec![vec![2, 1], vec![1, 2]]);
        let id = LatticeIsometry::new(&l, exactcore::matrix::identity(&QQ, 2)).unwrap();
        let (inv, coinv) = invariant_coinvariant(&l, &id).unwrap();
        assert_eq!(inv.lattice.rank(), 2);
        assert_eq!(coinv.lattice.rank(), 0);
    }

    #[test]
    fn swap_invariant_coinvariant() {
        let l = QuadLattice::from_i64_rows(vec![vec![2, 0], vec![0, 2]]);
        let swap = Mat::from_rows(vec![
            vec![rat_i64(0), rat_i64(1)],
            vec![rat_i64(1), rat_i64(0)],
        ])
        .unwrap();
        let f = LatticeIsometry::new(&l, swap).unwrap();
        let (inv, coinv) = invariant_coinvariant(&l, &f).unwrap();
        assert_eq!(inv.lattice.rank(), 1);
        assert_eq!(coinv.lattice.rank(), 1);
        assert_eq!(inv.lattice.gram.at(0, 0), &rat_i64(4)); // (1,1)
        assert_eq!(coinv.lattice.gram.at(0, 0), &rat_i64(4)); // (1,-1)
    }
}
