//! Salem polynomial certification with exact rational arithmetic: Sturm
//! sequences, trace polynomials, unit-circle factor tests and spectral-radius
//! checks for rational matrices.

use exactcore::field::{rat, rat_i64, Rational, QQ};
use exactcore::matrix::{charpoly, Mat};
use exactcore::poly::{self, Poly};
use exactcore::FieldOps;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type IntPoly = Vec<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotMonic,
    ZeroConstantTerm,
    Core(exactcore::Error),
}

impl From<exactcore::Error> for Error {
    fn from(e: exactcore::Error) -> Self {
        Error::Core(e)
    }
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::NotMonic => write!(f, "polynomial is not monic"),
            Error::ZeroConstantTerm => write!(f, "polynomial vanishes at 0"),
            Error::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

/// Isolating interval for a single real root, with dyadic endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub poly: IntPoly,
}

impl RootInterval {
    pub fn approx(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / rat_i64(2);
        rational_to_f64(&mid)
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    // good enough for display; certification never uses floats
    let num = q.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let den = q.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    num / den
}

pub fn int_poly(coeffs: &[i64]) -> IntPoly {
    let mut v: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn to_rat_poly(f: &IntPoly) -> Poly<Rational> {
    f.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

fn is_monic(f: &IntPoly) -> bool {
    f.last().map_or(false, |c| c.is_one())
}

fn is_reciprocal(f: &IntPoly) -> bool {
    let n = f.len();
    (0..n).all(|i| f[i] == f[n - 1 - i])
}

// ---------------------------------------------------------------------------
// Sturm machinery
// ---------------------------------------------------------------------------

fn sturm_sequence(p: &Poly<Rational>) -> Vec<Poly<Rational>> {
    let f = QQ;
    let mut seq = vec![p.clone(), poly::derivative(&f, p)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let r = poly::divrem(&f, &seq[n - 2], &seq[n - 1]).expect("nonzero divisor").1;
        if r.is_empty() {
            break;
        }
        seq.push(poly::neg(&f, &r));
    }
    seq
}

fn sign_at(p: &Poly<Rational>, x: &Rational) -> i32 {
    exactcore::field::rat_sign(&poly::eval(&QQ, p, x))
}

fn sign_at_inf(p: &Poly<Rational>, positive: bool) -> i32 {
    match p.last() {
        None => 0,
        Some(l) => {
            let s = exactcore::field::rat_sign(l);
            if positive || (p.len() - 1) % 2 == 0 {
                s
            } else {
                -s
            }
        }
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of the squarefree p in the interval (a, b].
pub fn sturm_count(p: &Poly<Rational>, a: &Rational, b: &Rational) -> usize {
    let seq = sturm_sequence(p);
    let va = variations(seq.iter().map(|q| sign_at(q, a)));
    let vb = variations(seq.iter().map(|q| sign_at(q, b)));
    va.saturating_sub(vb)
}

/// Number of distinct real roots in (a, +infinity).
pub fn sturm_count_above(p: &Poly<Rational>, a: &Rational) -> usize {
    let seq = sturm_sequence(p);
    let va = variations(seq.iter().map(|q| sign_at(q, a)));
    let vinf = variations(seq.iter().map(|q| sign_at_inf(q, true)));
    va.saturating_sub(vinf)
}

/// Number of distinct real roots on the whole line.
pub fn sturm_count_all(p: &Poly<Rational>) -> usize {
    let seq = sturm_sequence(p);
    let vneg = variations(seq.iter().map(|q| sign_at_inf(q, false)));
    let vpos = variations(seq.iter().map(|q| sign_at_inf(q, true)));
    vneg.saturating_sub(vpos)
}

/// Cauchy bound: all real roots lie in (-B, B).
fn cauchy_bound(f: &Poly<Rational>) -> Rational {
    let lead = f.last().expect("nonzero polynomial");
    let mut m = Rational::zero();
    for c in &f[..f.len() - 1] {
        let v = (c / lead).abs();
        if v > m {
            m = v;
        }
    }
    m + rat_i64(1)
}

/// Bisects down to width < 1/10^6 an interval around the unique root of the
/// squarefree `p` in (lo, hi]; `p` must have exactly one root there.
fn bisect_root(p: &Poly<Rational>, mut lo: Rational, mut hi: Rational) -> (Rational, Rational) {
    let width_target = rat(1, 1_000_000);
    while &hi - &lo >= width_target {
        let mid = (&lo + &hi) / rat_i64(2);
        if sturm_count(p, &mid, &hi) == 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

// ---------------------------------------------------------------------------
// Trace polynomial
// ---------------------------------------------------------------------------

/// For reciprocal f of even degree 2m returns g of degree m with
/// f(x) = x^m g(x + 1/x); None when f is not reciprocal of even degree.
pub fn trace_polynomial(f: &IntPoly) -> Option<Poly<Rational>> {
    if f.len() < 2 || f.len() % 2 == 0 || !is_reciprocal(f) {
        return None;
    }
    let m = (f.len() - 1) / 2;
    let q = QQ;
    // v_k with x^k + x^{-k} = v_k(x + 1/x): v_0 = 2, v_1 = y, v_{k+1} = y v_k - v_{k-1}
    let y = vec![q.zero(), q.one()];
    let mut v_prev: Poly<Rational> = vec![q.from_i64(2)];
    let mut v_cur = y.clone();
    let mut g: Poly<Rational> = vec![Rational::from_integer(f[m].clone())];
    for k in 1..=m {
        let c = Rational::from_integer(f[m + k].clone());
        g = poly::add(&q, &g, &poly::scale(&q, &v_cur, &c));
        let next = poly::sub(&q, &poly::mul(&q, &y, &v_cur), &v_prev);
        v_prev = v_cur;
        v_cur = next;
    }
    Some(g)
}

// ---------------------------------------------------------------------------
// Public certification operations
// ---------------------------------------------------------------------------

/// Certifies that f is a Salem polynomial: reciprocal of even degree, one
/// simple real conjugate pair off the unit circle (lambda > 1 and 1/lambda),
/// all other roots on the circle. Returns an isolating interval for lambda.
pub fn is_salem(f: &IntPoly) -> Result<(bool, Option<RootInterval>)> {
    if !is_monic(f) {
        return Err(Error::NotMonic);
    }
    if f.first().map_or(true, |c| c.is_zero()) {
        return Err(Error::ZeroConstantTerm);
    }
    let g = match trace_polynomial(f) {
        None => return Ok((false, None)),
        Some(g) => g,
    };
    let q = QQ;
    let gsf = poly::squarefree_part(&q, &g);
    // all roots of g real: distinct-root count of the squarefree part must
    // equal its degree
    if sturm_count_all(&gsf) != gsf.len() - 1 {
        return Ok((false, None));
    }
    let two = q.from_i64(2);
    // exactly one distinct root in (2, inf), simple in g itself
    if sturm_count_above(&gsf, &two) != 1 {
        return Ok((false, None));
    }
    // no roots below -2
    let minus_two = q.from_i64(-2);
    let bound = cauchy_bound(&gsf);
    if sturm_count(&gsf, &(-&bound - q.one()), &minus_two) != count_at(&gsf, &minus_two) {
        // roots strictly below -2 exist iff count in (-B-1, -2] exceeds the
        // multiplicity-at--2 indicator
        return Ok((false, None));
    }
    // the (2, inf) root must be simple as a root of g (not just of gsf):
    // g and its derivative share no root above 2
    let dg = poly::derivative(&q, &g);
    let shared = poly::gcd(&q, &g, &dg);
    if !shared.is_empty() && shared.len() > 1 && sturm_count_above(&poly::squarefree_part(&q, &shared), &two) > 0 {
        return Ok((false, None));
    }
    // isolate lambda: unique root of f in (1, inf)
    let fq = to_rat_poly(f);
    let fsf = poly::squarefree_part(&q, &fq);
    let one = q.one();
    if sturm_count_above(&fsf, &one) != 1 {
        return Ok((false, None));
    }
    let fb = cauchy_bound(&fsf);
    let (lo, hi) = bisect_root(&fsf, one, fb);
    Ok((true, Some(RootInterval { lo, hi, poly: f.clone() })))
}

/// 1 when x0 is a root of p, else 0 (p squarefree).
fn count_at(p: &Poly<Rational>, x0: &Rational) -> usize {
    if poly::eval(&QQ, p, x0).is_zero() {
        1
    } else {
        0
    }
}

/// True iff all complex roots of f lie on the unit circle: strip x-1 and x+1
/// factors, then demand an even reciprocal remainder whose trace polynomial
/// has all roots in [-2, 2].
pub fn unit_circle_factor_test(f: &IntPoly) -> Result<bool> {
    if !is_monic(f) {
        return Err(Error::NotMonic);
    }
    if f.first().map_or(true, |c| c.is_zero()) {
        return Err(Error::ZeroConstantTerm);
    }
    let q = QQ;
    let mut rem = to_rat_poly(f);
    for r in [q.from_i64(1), q.from_i64(-1)] {
        let lin = vec![q.neg(&r), q.one()];
        loop {
            let (quo, rr) = poly::divrem(&q, &rem, &lin)?;
            if rr.is_empty() {
                rem = quo;
            } else {
                break;
            }
        }
    }
    if rem.len() == 1 {
        return Ok(true);
    }
    let rem_int: IntPoly = rem
        .iter()
        .map(|c| {
            if c.denom().is_one() {
                c.numer().clone()
            } else {
                BigInt::zero() // will fail the reciprocal test anyway
            }
        })
        .collect();
    let g = match trace_polynomial(&rem_int) {
        None => return Ok(false),
        Some(g) => g,
    };
    let gsf = poly::squarefree_part(&q, &g);
    let deg = gsf.len() - 1;
    let lo = q.from_i64(-2);
    let hi = q.from_i64(2);
    // all distinct roots real and inside [-2, 2]
    let inside = sturm_count(&gsf, &lo, &hi) + count_at(&gsf, &lo);
    Ok(sturm_count_all(&gsf) == deg && inside == deg)
}

/// Divisibility of charpoly(M) by a certified Salem polynomial, plus the
/// unit-circle test on the cofactor and the Salem root interval.
pub fn matrix_entropy_check(
    m: &Mat<Rational>,
    salem_poly: &IntPoly,
) -> Result<(bool, Option<bool>, Option<RootInterval>)> {
    let (ok, interval) = is_salem(salem_poly)?;
    if !ok {
        return Err(Error::Core(exactcore::Error::Invalid(
            "supplied polynomial is not Salem".into(),
        )));
    }
    let q = QQ;
    let cp = charpoly(&q, m)?;
    let sp = to_rat_poly(salem_poly);
    let (quo, rem) = poly::divrem(&q, &cp, &sp)?;
    if !rem.is_empty() {
        return Ok((false, None, None));
    }
    // cofactor as integer polynomial
    let mut cof: IntPoly = Vec::with_capacity(quo.len());
    for c in &quo {
        if !c.denom().is_one() {
            return Ok((true, Some(false), interval));
        }
        cof.push(c.numer().clone());
    }
    let on_circle = unit_circle_factor_test(&cof)?;
    Ok((true, Some(on_circle), interval))
}

/// charpoly(M) as an integer polynomial; errors when a coefficient is not an
/// integer.
pub fn integer_charpoly(m: &Mat<Rational>) -> Result<IntPoly> {
    let cp = charpoly(&QQ, m)?;
    let mut out = Vec::with_capacity(cp.len());
    for c in &cp {
        if !c.denom().is_one() {
            return Err(Error::Core(exactcore::Error::Invalid(
                "characteristic polynomial has a non-integer coefficient".into(),
            )));
        }
        out.push(c.numer().clone());
    }
    Ok(out)
}

/// The degree-6 minimal polynomial of tau_8: x^6 - x^4 - 2x^3 - x^2 + 1.
pub fn tau8_polynomial() -> IntPoly {
    int_poly(&[1, 0, -1, -2, -1, 0, 1])
}

/// Lehmer's polynomial x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1.
pub fn lehmer_polynomial() -> IntPoly {
    int_poly(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau8_certified() {
        let (ok, iv) = is_salem(&tau8_polynomial()).unwrap();
        assert!(ok);
        let iv = iv.unwrap();
        assert!(iv.lo > rat(158233, 100000));
        assert!(iv.hi < rat(158235, 100000));
    }

    #[test]
    fn lehmer_certified() {
        let (ok, iv) = is_salem(&lehmer_polynomial()).unwrap();
        assert!(ok);
        let iv = iv.unwrap();
        assert!(iv.lo > rat(117627, 100000));
        assert!(iv.hi < rat(117629, 100000));
    }

    #[test]
    fn non_salem_rejected() {
        // x^2 - 1 has zero constant term? no: constant -1. roots +-1, no root
        // outside the circle
        let (ok, _) = is_salem(&int_poly(&[-1, 0, 1])).unwrap();
        assert!(!ok);
        assert_eq!(is_salem(&int_poly(&[0, 1])), Err(Error::ZeroConstantTerm));
        assert_eq!(is_salem(&int_poly(&[1, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn unit_circle_tests() {
        assert!(unit_circle_factor_test(&int_poly(&[1, 1, 1])).unwrap()); // cyclotomic
        assert!(!unit_circle_factor_test(&int_poly(&[-2, 1])).unwrap()); // x - 2
        assert!(unit_circle_factor_test(&int_poly(&[-1, 1])).unwrap()); // x - 1
        // the degree-12 cofactor of the fixture charpoly
        let cof = int_poly(&[-1, 2, 0, -2, 3, -4, 0, 4, -3, 2, 0, -2, 1]);
        assert!(unit_circle_factor_test(&cof).unwrap());
        // a Salem polynomial is not on the circle
        assert!(!unit_circle_factor_test(&tau8_polynomial()).unwrap());
    }

    #[test]
    fn companion_matrix_entropy() {
        // companion matrix of the tau8 polynomial
        let p = tau8_polynomial();
        let n = p.len() - 1;
        let mut rows = vec![vec![rat_i64(0); n]; n];
        for i in 0..n - 1 {
            rows[i][i + 1] = rat_i64(1);
        }
        for j in 0..n {
            rows[n - 1][j] = -Rational::from_integer(p[j].clone());
        }
        let m = Mat::from_rows(rows).unwrap();
        let (div, circ, iv) = matrix_entropy_check(&m, &p).unwrap();
        assert!(div);
        assert_eq!(circ, Some(true));
        assert!(iv.is_some());
    }

    #[test]
    fn identity_not_divisible() {
        let m = exactcore::matrix::identity(&QQ, 6);
        let (div, _, _) = matrix_entropy_check(&m, &tau8_polynomial()).unwrap();
        assert!(!div);
    }

    #[test]
    fn sturm_agrees_with_scan() {
        // p = (x-1)(x+2)(x-3) = x^3 - 2x^2 - 5x + 6
        let p: Poly<Rational> = [6i64, -5, -2, 1].iter().map(|&c| rat_i64(c)).collect();
        assert_eq!(sturm_count_all(&p), 3);
        assert_eq!(sturm_count(&p, &rat_i64(0), &rat_i64(2)), 1);
        assert_eq!(sturm_count_above(&p, &rat_i64(2)), 1);
        assert_eq!(sturm_count_above(&p, &rat_i64(4)), 0);
    }
}
