//! Isometry testing for definite lattices: LLL fast path plus a pruned
//! backtracking search over short vectors.

use crate::enumerate::enumerate_vectors;
use crate::{to_int_mat, to_rat_mat, Error, QuadLattice, Result};
use exactcore::field::{Rational, QQ};
use exactcore::intmat::{idet, iinv_unimodular, imul, IMat};
use exactcore::lll::lll_reduce;
use exactcore::matrix::{self, Mat};
use num_bigint::BigInt;
use num_traits::Signed;

/// Searches for U with U * G1 * U^T = G2 (row convention). Returns None when
/// the lattices are not isometric. Both must be definite of the same sign.
pub fn isometry_test(l1: &QuadLattice, l2: &QuadLattice) -> Result<Option<IMat>> {
    if l1.rank() != l2.rank() {
        return Ok(None);
    }
    if l1.det() != l2.det() {
        return Ok(None);
    }
    let (p1, m1, z1) = l1.signature();
    let (p2, m2, z2) = l2.signature();
    if z1 > 0 || z2 > 0 {
        return Err(Error::DegenerateLattice);
    }
    if (p1, m1) != (p2, m2) {
        return Ok(None);
    }
    if (p1 > 0 && m1 > 0) || !l1.is_integral() || !l2.is_integral() {
        return Err(Error::IndefiniteLattice);
    }
    let n = l1.rank();
    if n == 0 {
        return Ok(Some(IMat { rows: 0, cols: 0, data: vec![] }));
    }
    let (r1, u1) = lll_reduce(&l1.gram).map_err(map_indef)?;
    let (r2, u2) = lll_reduce(&l2.gram).map_err(map_indef)?;
    let u2inv = iinv_unimodular(&u2)?;
    if r1 == r2 {
        // U2 G2 U2^T = R2 = R1 = U1 G1 U1^T  =>  (U2^{-1} U1) G1 (..)^T = G2
        let u = imul(&u2inv, &u1)?;
        debug_assert!(verify(l1, l2, &u));
        return Ok(Some(u));
    }
    // backtracking in the reduced bases: find W with W R1 W^T = R2
    let lr1 = QuadLattice { gram: r1.clone() };
    let w = match backtrack_isometry(&lr1, &r2)? {
        None => return Ok(None),
        Some(w) => w,
    };
    let u = imul(&imul(&u2inv, &w)?, &u1)?;
    if !verify(l1, l2, &u) {
        return Err(Error::Core(exactcore::Error::Invalid(
            "isometry backtracking produced an invalid transform".into(),
        )));
    }
    Ok(Some(u))
}

fn map_indef(e: exactcore::Error) -> Error {
    match e {
        exactcore::Error::IndefiniteInput => Error::IndefiniteLattice,
        other => Error::Core(other),
    }
}

fn verify(l1: &QuadLattice, l2: &QuadLattice, u: &IMat) -> bool {
    if idet(u).map(|d| d.abs() != BigInt::from(1)).unwrap_or(true) {
        return false;
    }
    let uq = to_rat_mat(u);
    let tmp = matrix::mul(&QQ, &uq, &l1.gram).unwrap();
    let lhs = matrix::mul(&QQ, &tmp, &uq.transpose()).unwrap();
    lhs == l2.gram
}

/// Finds integer W with W * G1 * W^T = target, by assigning images of the
/// target basis vectors among vectors of the right norm in L1.
fn backtrack_isometry(l1: &QuadLattice, target: &Mat<Rational>) -> Result<Option<IMat>> {
    let n = target.rows;
    // candidate vectors in L1 per slot: norm must equal target[i][i];
    // enumerate each distinct norm only once
    let mut by_norm: Vec<(Rational, Vec<Vec<Rational>>)> = Vec::new();
    let mut candidates: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(n);
    for i in 0..n {
        let norm = target.at(i, i);
        if let Some((_, c)) = by_norm.iter().find(|(k, _)| k == norm) {
            candidates.push(c.clone());
            continue;
        }
        let r = enumerate_vectors(l1, norm, None)?;
        // unfold +-
        let mut c = Vec::with_capacity(2 * r.vectors.len());
        for v in r.vectors {
            let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
            c.push(v);
            c.push(neg);
        }
        by_norm.push((norm.clone(), c.clone()));
        candidates.push(c);
    }
    // process slots with fewest candidates first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| candidates[i].len());
    let mut chosen: Vec<Option<Vec<Rational>>> = vec![None; n];
    if assign(0, &order, &mut chosen, &candidates, l1, target) {
        let rows: Vec<Vec<Rational>> =
            chosen.into_iter().map(|c| c.expect("assigned")).collect();
        let w = to_int_mat(&Mat::from_rows(rows)?)?;
        if idet(&w)?.abs() == BigInt::from(1) {
            return Ok(Some(w));
        }
        // pairings matched but the images do not span: with equal
        // determinants this cannot happen, guard anyway
        return Ok(None);
    }
    Ok(None)
}

fn assign(
    depth: usize,
    order: &[usize],
    chosen: &mut Vec<Option<Vec<Rational>>>,
    candidates: &[Vec<Vec<Rational>>],
    l1: &QuadLattice,
    target: &Mat<Rational>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let slot = order[depth];
    'cand: for v in &candidates[slot] {
        for &prev in &order[..depth] {
            let w = chosen[prev].as_ref().expect("assigned earlier");
            if &l1.pairing(v, w) != target.at(slot, prev) {
                continue 'cand;
            }
        }
        chosen[slot] = Some(v.clone());
        if assign(depth + 1, order, chosen, candidates, l1, target) {
            return true;
        }
        chosen[slot] = None;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permuted_a2_isometric() {
        let a2 = QuadLattice::from_i64_rows(vec![vec![2, 1], vec![1, 2]]);
        // same lattice written in a twisted basis
        let twisted = QuadLattice::from_i64_rows(vec![vec![2, -1], vec![-1, 2]]);
        let u = isometry_test(&a2, &twisted).unwrap();
        assert!(u.is_some());
        // reflexive
        assert!(isometry_test(&a2, &a2).unwrap().is_some());
    }

    #[test]
    fn different_det_not_isometric() {
        let a1a1 = QuadLattice::from_i64_rows(vec![vec![2, 0], vec![0, 2]]);
        let a2 = QuadLattice::from_i64_rows(vec![vec![2, 1], vec![1, 2]]);
        assert!(isometry_test(&a1a1, &a2).unwrap().is_none());
    }

    #[test]
    fn same_det_different_class() {
        // diag(1, 16) vs diag(4, 4): same det 16, not isometric
        let l1 = QuadLattice::from_i64_rows(vec![vec![1, 0], vec![0, 16]]);
        let l2 = QuadLattice::from_i64_rows(vec![vec![4, 0], vec![0, 4]]);
        assert!(isometry_test(&l1, &l2).unwrap().is_none());
    }

    #[test]
    fn negative_definite_pair() {
        let l1 = QuadLattice::from_i64_rows(vec![vec![-2, 1], vec![1, -2]]);
        let l2 = QuadLattice::from_i64_rows(vec![vec![-2, -1], vec![-1, -2]]);
        let u = isometry_test(&l1, &l2).unwrap().unwrap();
        assert!(verify(&l1, &l2, &u));
    }
}
