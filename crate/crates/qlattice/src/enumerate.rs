//! Fincke-Pohst enumeration of vectors of a given norm in a definite lattice,
//! with optional rational offset (close-vector problems) and canonical output
//! order.

use crate::{to_rat_mat, Error, QuadLattice, Result};
use exactcore::field::{rat_sign, Rational, QQ};
use exactcore::lll::{gram_schmidt, lll_reduce};
use exactcore::matrix::{self};
use exactcore::FieldOps;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumResult {
    /// coordinate rows in the lattice basis (integers, plus the offset)
    pub vectors: Vec<Vec<Rational>>,
    /// true when only one of each +-x pair is listed (offset-free case)
    pub folded: bool,
}

/// All x in L + offset with (x,x) = norm; L must be definite (either sign).
/// Output sorted lexicographically; with no offset, only the representative
/// with positive first nonzero coordinate is returned and `folded` is set.
pub fn enumerate_vectors(
    l: &QuadLattice,
    norm: &Rational,
    offset: Option<&[Rational]>,
) -> Result<EnumResult> {
    let n = l.rank();
    let q = QQ;
    if n == 0 {
        let ok = norm.is_zero() && offset.map_or(true, |o| o.is_empty());
        return Ok(EnumResult { vectors: if ok { vec![vec![]] } else { vec![] }, folded: false });
    }
    let sign = rat_sign(l.gram.at(0, 0));
    if sign == 0 {
        return Err(Error::IndefiniteLattice);
    }
    let p = if sign < 0 { l.gram.map(|x| -x.clone()) } else { l.gram.clone() };
    let target = if sign < 0 { -norm } else { norm.clone() };
    if target.is_negative() {
        return Ok(EnumResult { vectors: vec![], folded: offset.is_none() });
    }
    let (gred, u) = lll_reduce(&p).map_err(|e| match e {
        exactcore::Error::IndefiniteInput => Error::IndefiniteLattice,
        other => Error::Core(other),
    })?;
    let (mu, bstar) = gram_schmidt(&gred).map_err(|e| match e {
        exactcore::Error::IndefiniteInput => Error::IndefiniteLattice,
        other => Error::Core(other),
    })?;
    // offset in reduced coordinates: x = y * U, x in offset + Z^n
    // <=> y in offset * U^{-1} + Z^n
    let uq = to_rat_mat(&u);
    let off_red: Vec<Rational> = match offset {
        None => vec![q.zero(); n],
        Some(o) => {
            if o.len() != n {
                return Err(Error::Core(exactcore::Error::DimensionMismatch("offset".into())));
            }
            let uinv = matrix::solve_or_invert(&q, &uq, None)?;
            matrix::row_times_mat(&q, o, &uinv)?
        }
    };
    let mut y = vec![q.zero(); n];
    let mut found: Vec<Vec<Rational>> = Vec::new();
    search(&mut y, n, &target, &mu, &bstar, &off_red, &mut found);
    // map back to original coordinates
    let mut vectors: Vec<Vec<Rational>> = found
        .into_iter()
        .map(|yy| matrix::row_times_mat(&q, &yy, &uq).expect("dimension match"))
        .collect();
    let folded = offset.is_none();
    if folded {
        vectors.retain(|v| {
            match v.iter().find(|c| !c.is_zero()) {
                None => true, // zero vector (norm 0 case)
                Some(c) => c.is_positive(),
            }
        });
    }
    vectors.sort();
    Ok(EnumResult { vectors, folded })
}

/// Recursive level-by-level search; level i covers coordinates i..n already
/// chosen, working downward. `rem` is the remaining norm budget.
fn search(
    y: &mut Vec<Rational>,
    level: usize,
    rem: &Rational,
    mu: &[Vec<Rational>],
    bstar: &[Rational],
    off: &[Rational],
    out: &mut Vec<Vec<Rational>>,
) {
    if level == 0 {
        if rem.is_zero() {
            out.push(y.clone());
        }
        return;
    }
    let i = level - 1;
    // center: c = sum_{k>i} y_k mu[k][i]
    let mut c = Rational::zero();
    for k in level..y.len() {
        c += &y[k] * &mu[k][i];
    }
    // b_i (y_i + c)^2 <= rem, y_i in off_i + Z
    let bound2 = rem / &bstar[i]; // (y_i + c)^2 <= bound2
    // y_i = off_i + m: (off_i + m + c)^2 <= bound2
    let shift = &off[i] + &c;
    // |m + shift| <= sqrt(bound2): integer range via integer sqrt of p*q
    let pnum = bound2.numer().clone();
    let pden = bound2.denom().clone();
    let s = (pnum * &pden).sqrt() + BigInt::one(); // sqrt(bound2) <= s/pden
    let radius = Rational::new(s, pden);
    let lo = (-&radius - &shift).ceil().to_integer();
    let hi = (&radius - &shift).floor().to_integer();
    let mut m = lo.clone();
    while m <= hi {
        let yi = &off[i] + Rational::from_integer(m.clone());
        let t = &yi + &c;
        let used = &bstar[i] * &t * &t;
        if &used <= rem {
            y[i] = yi;
            let new_rem = rem - used;
            search(y, i, &new_rem, mu, bstar, off, out);
            y[i] = Rational::zero();
        }
        m += BigInt::one();
    }
}

/// Brute-force reference: all x with coordinates in [-radius, radius]^n (plus
/// offset) and the given norm. For property tests.
pub fn brute_force_box(
    l: &QuadLattice,
    norm: &Rational,
    offset: Option<&[Rational]>,
    radius: i64,
) -> Vec<Vec<Rational>> {
    let n = l.rank();
    let q = QQ;
    let zero_off = vec![q.zero(); n];
    let off = offset.unwrap_or(&zero_off);
    let mut out = Vec::new();
    let mut coords = vec![-radius; n];
    loop {
        let x: Vec<Rational> =
            coords.iter().zip(off).map(|(&c, o)| o + Rational::from_integer(BigInt::from(c))).collect();
        if &l.norm(&x) == norm {
            out.push(x);
        }
        let mut i = 0;
        loop {
            if i == n {
                break;
            }
            coords[i] += 1;
            if coords[i] <= radius {
                break;
            }
            coords[i] = -radius;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactcore::field::{rat, rat_i64};

    #[test]
    fn a1_root() {
        let l = QuadLattice::from_i64_rows(vec![vec![-2]]);
        let r = enumerate_vectors(&l, &rat_i64(-2), None).unwrap();
        assert!(r.folded);
        assert_eq!(r.vectors, vec![vec![rat_i64(1)]]);
    }

    #[test]
    fn square_lattice_norm_one() {
        let l = QuadLattice::from_i64_rows(vec![vec![1, 0], vec![0, 1]]);
        let r = enumerate_vectors(&l, &rat_i64(1), None).unwrap();
        // folded: (0,1) and (1,0)
        assert_eq!(r.vectors.len(), 2);
    }

    #[test]
    fn with_offset_close_vectors() {
        let l = QuadLattice::from_i64_rows(vec![vec![1, 0], vec![0, 1]]);
        let off = vec![rat(1, 2), rat(1, 2)];
        let r = enumerate_vectors(&l, &rat(1, 2), Some(&off)).unwrap();
        assert!(!r.folded);
        // the four (+-1/2, +-1/2) points
        assert_eq!(r.vectors.len(), 4);
    }

    #[test]
    fn matches_brute_force() {
        let cases = [
            (vec![vec![2, 1], vec![1, 2]], 2i64),
            (vec![vec![2, 1], vec![1, 2]], 6),
            (vec![vec![-2, 0, 1], vec![0, -4, 0], vec![1, 0, -2]], -4),
            (vec![vec![4, 1, 0], vec![1, 2, 1], vec![0, 1, 6]], 8),
        ];
        for (g, nrm) in cases {
            let l = QuadLattice::from_i64_rows(g);
            let r = enumerate_vectors(&l, &rat_i64(nrm), None).unwrap();
            let mut brute = brute_force_box(&l, &rat_i64(nrm), None, 6);
            brute.retain(|v| match v.iter().find(|c| !c.is_zero()) {
                None => true,
                Some(c) => c.is_positive(),
            });
            assert_eq!(r.vectors, brute);
        }
    }

    #[test]
    fn indefinite_rejected() {
        let l = QuadLattice::from_i64_rows(vec![vec![0, 1], vec![1, -2]]);
        assert!(enumerate_vectors(&l, &rat_i64(0), None).is_err());
    }
}
