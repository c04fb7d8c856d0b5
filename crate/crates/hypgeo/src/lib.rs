//! Hyperbolic-lattice geometry for signature (1, n-1) lattices: affine slice
//! enumeration, separating roots, and chamber-relative ampleness.

use exactcore::field::{rat_i64, Rational, QQ};
use exactcore::intmat::hnf_with_transform;
use exactcore::matrix::{self, Mat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use qlattice::enumerate::enumerate_vectors;
use qlattice::{to_rat_mat, QuadLattice};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NoSolution,
    InfiniteSlice,
    NotInPositiveCone,
    SweepCapExceeded,
    Lattice(qlattice::Error),
    Core(exactcore::Error),
}

impl From<qlattice::Error> for Error {
    fn from(e: qlattice::Error) -> Self {
        Error::Lattice(e)
    }
}

impl From<exactcore::Error> for Error {
    fn from(e: exactcore::Error) -> Self {
        Error::Core(e)
    }
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::NoSolution => write!(f, "the linear constraints have no integral solution"),
            Error::InfiniteSlice => write!(f, "slice is infinite (norm >= 0 with c = 0)"),
            Error::NotInPositiveCone => write!(f, "class is not in the positive cone of h"),
            Error::SweepCapExceeded => write!(f, "separating-root sweep exceeded the hard cap"),
            Error::Lattice(e) => write!(f, "{e}"),
            Error::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

/// A hyperbolic lattice together with a reference class h of positive square
/// (the ample anchor).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedLattice {
    pub lattice: QuadLattice,
    pub h: Vec<Rational>,
}

impl PolarizedLattice {
    pub fn new(lattice: QuadLattice, h: Vec<Rational>) -> Result<PolarizedLattice> {
        let n = lattice.rank();
        if h.len() != n {
            return Err(Error::Core(exactcore::Error::DimensionMismatch("h".into())));
        }
        if !lattice.is_integral() || h.iter().any(|c| !c.denom().is_one()) {
            return Err(Error::Core(exactcore::Error::Invalid("h must be integral".into())));
        }
        let (sp, sm, sz) = lattice.signature();
        if sp != 1 || sz != 0 || sm != n - 1 {
            return Err(Error::Core(exactcore::Error::Invalid(
                "lattice must have signature (1, n-1)".into(),
            )));
        }
        if !lattice.norm(&h).is_positive() {
            return Err(Error::Core(exactcore::Error::Invalid("h^2 must be positive".into())));
        }
        Ok(PolarizedLattice { lattice, h })
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }
}

/// All integral x with x . h_j = rhs_j for the given constraint vectors and
/// x^2 = norm. The orthogonal complement of the constraints must be negative
/// definite. Err(NoSolution) when the linear system has no integral solution.
fn coset_solutions(
    l: &QuadLattice,
    constraints: &[Vec<Rational>],
    rhs: &[BigInt],
    norm: &Rational,
) -> Result<Vec<Vec<Rational>>> {
    let n = l.rank();
    let k = constraints.len();
    debug_assert_eq!(rhs.len(), k);
    // A[i][j] = e_i . h_j, integer by integrality
    let mut a = Mat { rows: n, cols: k, data: vec![BigInt::zero(); n * k] };
    for (j, hj) in constraints.iter().enumerate() {
        let col = matrix::row_times_mat(&QQ, hj, &l.gram)?;
        for i in 0..n {
            debug_assert!(col[i].denom().is_one());
            *a.at_mut(i, j) = col[i].numer().clone();
        }
    }
    let (h, u) = hnf_with_transform(&a);
    // solve s * H = rhs by forward substitution over the pivot rows
    let mut s = vec![BigInt::zero(); n];
    let mut rem = rhs.to_vec();
    let mut pivot_rows = 0usize;
    for i in 0..n {
        let lead = match h.row(i).iter().position(|c| !c.is_zero()) {
            None => break,
            Some(p) => p,
        };
        pivot_rows = i + 1;
        let piv = h.at(i, lead);
        let (q, r) = rem[lead].div_rem(piv);
        if !r.is_zero() {
            return Err(Error::NoSolution);
        }
        for c in 0..k {
            rem[c] = &rem[c] - &q * h.at(i, c);
        }
        s[i] = q;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::NoSolution);
    }
    let sq: Vec<Rational> = s.iter().map(|c| Rational::from_integer(c.clone())).collect();
    let x0 = matrix::row_times_mat(&QQ, &sq, &to_rat_mat(&u))?;
    // kernel of x -> x * A: rows of U below the pivot rows
    let m = n - pivot_rows;
    if m == 0 {
        return Ok(if &l.norm(&x0) == norm { vec![x0] } else { vec![] });
    }
    let mut ker_rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in pivot_rows..n {
        ker_rows.push(u.row(i).iter().map(|c| Rational::from_integer(c.clone())).collect());
    }
    let kmat = Mat::from_rows(ker_rows)?;
    // split x0 = proj + perp, proj in span(constraints), perp in span(kernel)
    let mut stack: Vec<Vec<Rational>> = kmat.to_rows();
    for hj in constraints {
        stack.push(hj.clone());
    }
    let b = Mat::from_rows(stack)?;
    let binv = matrix::solve_or_invert(&QQ, &b, None)?;
    let coords = matrix::row_times_mat(&QQ, &x0, &binv)?;
    let mut proj = vec![Rational::zero(); n];
    for (j, hj) in constraints.iter().enumerate() {
        for i in 0..n {
            proj[i] += &coords[m + j] * &hj[i];
        }
    }
    let offset: Vec<Rational> = coords[..m].to_vec();
    let klat = QuadLattice { gram: qlattice::gram_of_rows(l, &kmat) };
    let target = norm - l.norm(&proj);
    let found = enumerate_vectors(&klat, &target, Some(&offset))?;
    let kq = to_rat_mat(&kmat.map(|c| {
        debug_assert!(c.denom().is_one());
        c.numer().clone()
    }));
    let mut out = Vec::with_capacity(found.vectors.len());
    for v in found.vectors {
        let y = matrix::row_times_mat(&QQ, &v, &kq)?;
        let x: Vec<Rational> = proj.iter().zip(&y).map(|(p, yy)| p + yy).collect();
        debug_assert!(x.iter().all(|c| c.denom().is_one()));
        debug_assert_eq!(&l.norm(&x), norm);
        out.push(x);
    }
    out.sort();
    Ok(out)
}

/// The finite slice {x in L : x . h = c, x^2 = norm, filter(x)}, canonically
/// ordered. Finiteness needs c != 0 or norm < 0.
pub fn slice_vectors(
    p: &PolarizedLattice,
    c: i64,
    norm: i64,
    extra_filter: Option<&dyn Fn(&[Rational]) -> bool>,
) -> Result<Vec<Vec<Rational>>> {
    if c == 0 && norm >= 0 {
        return Err(Error::InfiniteSlice);
    }
    let mut out = coset_solutions(
        &p.lattice,
        std::slice::from_ref(&p.h),
        &[BigInt::from(c)],
        &rat_i64(norm),
    )?;
    if let Some(f) = extra_filter {
        out.retain(|x| f(x));
    }
    Ok(out)
}

const SWEEP_CAP: i64 = 10_000;

/// All roots r with r^2 = -2, r . h > 0, r . h2 < 0: the walls separating the
/// chambers of h and h2. Requires h2^2 > 0 and h . h2 > 0.
pub fn separating_roots(p: &PolarizedLattice, h2: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    let l = &p.lattice;
    if h2.len() != l.rank() {
        return Err(Error::Core(exactcore::Error::DimensionMismatch("h2".into())));
    }
    let h2h2 = l.norm(h2);
    let hh2 = l.pairing(&p.h, h2);
    if !h2h2.is_positive() || !hh2.is_positive() {
        return Err(Error::NotInPositiveCone);
    }
    let hh = l.norm(&p.h);
    // span(h, h2) gram; degenerate means h2 is proportional to h with a
    // positive ratio, so no separating root exists
    let dets = &hh * &h2h2 - &hh2 * &hh2;
    if dets.is_zero() {
        return Ok(vec![]);
    }
    debug_assert!(dets.is_negative()); // signature (1,1)
    // q(a, b) = (h2^2 a^2 - 2 h.h2 ab + h^2 b^2) / det is the square of the
    // projection of r to span(h, h2) when (a, b) = (r.h, r.h2); need q >= -2.
    // On a >= 1, b <= -1 the numerator is increasing in |a|, |b|, so q is
    // decreasing and the admissible region is a finite staircase.
    let q_of = |a: i64, b: i64| -> Rational {
        let (ar, br) = (rat_i64(a), rat_i64(b));
        (&h2h2 * &ar * &ar - rat_i64(2) * &hh2 * &ar * &br + &hh * &br * &br) / &dets
    };
    let minus_two = rat_i64(-2);
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let mut a = 1i64;
    loop {
        if q_of(a, -1) < minus_two {
            break;
        }
        let mut b = -1i64;
        while q_of(a, b) >= minus_two {
            let q = q_of(a, b);
            match coset_solutions(
                l,
                &[p.h.clone(), h2.to_vec()],
                &[BigInt::from(a), BigInt::from(b)],
                &minus_two,
            ) {
                Ok(v) => out.extend(v),
                Err(Error::NoSolution) => {}
                Err(e) => return Err(e),
            }
            debug_assert!(q >= minus_two);
            b -= 1;
            if -b > SWEEP_CAP {
                return Err(Error::SweepCapExceeded);
            }
        }
        a += 1;
        if a > SWEEP_CAP {
            return Err(Error::SweepCapExceeded);
        }
    }
    out.sort();
    Ok(out)
}

/// True iff v lies in the same Weyl chamber as h: v^2 > 0, v . h > 0 and no
/// root separates v from h.
pub fn is_ample_relative(p: &PolarizedLattice, v: &[Rational]) -> Result<bool> {
    if !p.lattice.norm(v).is_positive() || !p.lattice.pairing(&p.h, v).is_positive() {
        return Ok(false);
    }
    Ok(separating_roots(p, v)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactcore::field::rat_i64;

    fn u_lattice() -> QuadLattice {
        QuadLattice::from_i64_rows(vec![vec![0, 1], vec![1, 0]])
    }

    fn u_plus_a1() -> QuadLattice {
        QuadLattice::from_i64_rows(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -2]])
    }

    fn rv(v: Vec<i64>) -> Vec<Rational> {
        v.into_iter().map(rat_i64).collect()
    }

    #[test]
    fn hyperbolic_plane_slices() {
        let p = PolarizedLattice::new(u_lattice(), rv(vec![1, 1])).unwrap();
        let s = slice_vectors(&p, 1, 0, None).unwrap();
        assert_eq!(s, vec![rv(vec![0, 1]), rv(vec![1, 0])]);
        let s2 = slice_vectors(&p, 2, 0, None).unwrap();
        assert_eq!(s2, vec![rv(vec![0, 2]), rv(vec![2, 0])]);
        assert_eq!(slice_vectors(&p, 0, 0, None), Err(Error::InfiniteSlice));
    }

    #[test]
    fn rank_three_roots_slice() {
        let p = PolarizedLattice::new(u_plus_a1(), rv(vec![1, 1, 0])).unwrap();
        let s = slice_vectors(&p, 1, -2, None).unwrap();
        assert_eq!(
            s,
            vec![
                rv(vec![0, 1, -1]),
                rv(vec![0, 1, 1]),
                rv(vec![1, 0, -1]),
                rv(vec![1, 0, 1]),
            ]
        );
    }

    #[test]
    fn no_solution_on_even_image() {
        // h = (1, 0) in diag(2, -2): x.h = 2 x1, odd c unreachable
        let l = QuadLattice::from_i64_rows(vec![vec![2, 0], vec![0, -2]]);
        let p = PolarizedLattice::new(l, rv(vec![1, 0])).unwrap();
        assert_eq!(slice_vectors(&p, 1, -2, None), Err(Error::NoSolution));
    }

    #[test]
    fn filter_applies() {
        let p = PolarizedLattice::new(u_plus_a1(), rv(vec![1, 1, 0])).unwrap();
        let pred = |x: &[Rational]| x[2].is_positive();
        let s = slice_vectors(&p, 1, -2, Some(&pred)).unwrap();
        assert_eq!(s, vec![rv(vec![0, 1, 1]), rv(vec![1, 0, 1])]);
    }

    #[test]
    fn separating_same_class_empty() {
        let p = PolarizedLattice::new(u_plus_a1(), rv(vec![1, 1, 0])).unwrap();
        assert!(separating_roots(&p, &p.h.clone()).unwrap().is_empty());
        assert!(separating_roots(&p, &rv(vec![2, 2, 0])).unwrap().is_empty());
    }

    #[test]
    fn reflection_produces_separating_root() {
        let l = u_plus_a1();
        let p = PolarizedLattice::new(l.clone(), rv(vec![1, 1, 0])).unwrap();
        // r0 = (1, 0, 1): r0^2 = -2, r0.h = 1; reflect h in r0
        let r0 = rv(vec![1, 0, 1]);
        assert_eq!(l.norm(&r0), rat_i64(-2));
        let h2 = rv(vec![2, 1, 1]); // h + (h.r0) r0
        assert_eq!(l.norm(&h2), rat_i64(2));
        let sep = separating_roots(&p, &h2).unwrap();
        assert!(sep.contains(&r0));
        // antisymmetry: separating(h2, h) = -separating(h, h2)
        let p2 = PolarizedLattice::new(l, h2).unwrap();
        let mut neg: Vec<Vec<Rational>> =
            sep.iter().map(|r| r.iter().map(|c| -c).collect()).collect();
        neg.sort();
        assert_eq!(separating_roots(&p2, &p.h).unwrap(), neg);
    }

    #[test]
    fn ampleness_relative() {
        let l = u_plus_a1();
        let p = PolarizedLattice::new(l, rv(vec![1, 1, 0])).unwrap();
        assert!(is_ample_relative(&p, &p.h.clone()).unwrap());
        assert!(is_ample_relative(&p, &rv(vec![3, 2, 0])).unwrap());
        // reflected class sits across the wall r0
        assert!(!is_ample_relative(&p, &rv(vec![2, 1, 1])).unwrap());
        // negative square or wrong cone component
        assert!(!is_ample_relative(&p, &rv(vec![0, 0, 1])).unwrap());
        assert!(!is_ample_relative(&p, &rv(vec![-1, -1, 0])).unwrap());
    }

    #[test]
    fn positive_cone_enforced() {
        let p = PolarizedLattice::new(u_lattice(), rv(vec![1, 1])).unwrap();
        assert_eq!(separating_roots(&p, &rv(vec![-1, -1])), Err(Error::NotInPositiveCone));
        assert_eq!(separating_roots(&p, &rv(vec![1, -1])), Err(Error::NotInPositiveCone));
    }

    #[test]
    fn slice_matches_brute_force() {
        let l = u_plus_a1();
        let p = PolarizedLattice::new(l.clone(), rv(vec![2, 1, 1])).unwrap();
        for (c, nrm) in [(1i64, -2i64), (2, -2), (2, 0), (3, -4), (0, -2)] {
            let s = slice_vectors(&p, c, nrm, None);
            let mut brute = Vec::new();
            for x1 in -8i64..=8 {
                for x2 in -8i64..=8 {
                    for x3 in -8i64..=8 {
                        let x = rv(vec![x1, x2, x3]);
                        if l.pairing(&x, &p.h) == rat_i64(c) && l.norm(&x) == rat_i64(nrm) {
                            brute.push(x);
                        }
                    }
                }
            }
            brute.sort();
            assert_eq!(s.unwrap(), brute, "c={c} norm={nrm}");
        }
    }
}
