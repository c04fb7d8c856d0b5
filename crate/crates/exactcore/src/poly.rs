//! Univariate polynomials over an arbitrary [`FieldOps`] structure.
//!
//! A polynomial is a `Vec` of coefficients in ascending degree with no
//! trailing zero; the zero polynomial is the empty vector.

use crate::field::{FieldOps, Fp, Rational, QQ};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Poly<E> = Vec<E>;

pub fn trim<F: FieldOps>(f: &F, v: &mut Poly<F::Elem>) {
    while v.last().map_or(false, |c| f.is_zero(c)) {
        v.pop();
    }
}

pub fn deg<E>(v: &Poly<E>) -> isize {
    v.len() as isize - 1
}

pub fn constant<F: FieldOps>(f: &F, c: F::Elem) -> Poly<F::Elem> {
    let mut v = vec![c];
    trim(f, &mut v);
    v
}

/// The monomial c * x^n.
pub fn monomial<F: FieldOps>(f: &F, c: F::Elem, n: usize) -> Poly<F::Elem> {
    if f.is_zero(&c) {
        return vec![];
    }
    let mut v = vec![f.zero(); n + 1];
    v[n] = c;
    v
}

pub fn add<F: FieldOps>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        };
        out.push(x);
    }
    trim(f, &mut out);
    out
}

pub fn neg<F: FieldOps>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn sub<F: FieldOps>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    add(f, a, &neg(f, b))
}

pub fn mul<F: FieldOps>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, &mut out);
    out
}

pub fn scale<F: FieldOps>(f: &F, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
    let mut out: Poly<F::Elem> = a.iter().map(|x| f.mul(x, c)).collect();
    trim(f, &mut out);
    out
}

pub fn pow<F: FieldOps>(f: &F, a: &Poly<F::Elem>, mut e: u64) -> Poly<F::Elem> {
    let mut base = a.clone();
    let mut acc = vec![f.one()];
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(f, &acc, &base);
        }
        base = mul(f, &base, &base);
        e >>= 1;
    }
    acc
}

pub fn divrem<F: FieldOps>(
    f: &F,
    a: &Poly<F::Elem>,
    b: &Poly<F::Elem>,
) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
    if b.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let mut rem = a.clone();
    if rem.len() < b.len() {
        return Ok((vec![], rem));
    }
    let lead_inv = f.inv(b.last().unwrap())?;
    let mut quo = vec![f.zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let c = f.mul(rem.last().unwrap(), &lead_inv);
        let d = rem.len() - b.len();
        quo[d] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            rem[d + i] = f.sub(&rem[d + i], &f.mul(&c, bc));
        }
        trim(f, &mut rem);
    }
    trim(f, &mut quo);
    Ok((quo, rem))
}

/// Exact division; errors if the remainder is nonzero.
pub fn div_exact<F: FieldOps>(
    f: &F,
    a: &Poly<F::Elem>,
    b: &Poly<F::Elem>,
) -> Result<Poly<F::Elem>> {
    let (q, r) = divrem(f, a, b)?;
    if !r.is_empty() {
        return Err(Error::Invalid("inexact polynomial division".into()));
    }
    Ok(q)
}

pub fn monic<F: FieldOps>(f: &F, a: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
    match a.last() {
        None => Ok(vec![]),
        Some(l) => {
            let li = f.inv(l)?;
            Ok(scale(f, a, &li))
        }
    }
}

/// Monic gcd by the Euclidean algorithm.
pub fn gcd<F: FieldOps>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let r = divrem(f, &x, &y).expect("nonzero divisor").1;
        x = y;
        y = r;
    }
    monic(f, &x).unwrap_or_default()
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
pub fn xgcd<F: FieldOps>(
    f: &F,
    a: &Poly<F::Elem>,
    b: &Poly<F::Elem>,
) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = vec![f.one()];
    let mut s1: Poly<F::Elem> = vec![];
    let mut t0: Poly<F::Elem> = vec![];
    let mut t1 = vec![f.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1).expect("nonzero divisor");
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if let Some(l) = r0.last().cloned() {
        let li = f.inv(&l).expect("leading coefficient invertible");
        r0 = scale(f, &r0, &li);
        s0 = scale(f, &s0, &li);
        t0 = scale(f, &t0, &li);
    }
    (r0, s0, t0)
}

pub fn derivative<F: FieldOps>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut out = Vec::new();
    for (i, c) in a.iter().enumerate().skip(1) {
        out.push(f.mul(c, &f.from_i64(i as i64)));
    }
    trim(f, &mut out);
    out
}

pub fn eval<F: FieldOps>(f: &F, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

/// Substitutes another polynomial for the variable.
pub fn compose<F: FieldOps>(f: &F, a: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut acc: Poly<F::Elem> = vec![];
    for c in a.iter().rev() {
        acc = add(f, &mul(f, &acc, g), &constant(f, c.clone()));
    }
    acc
}

/// Valuation of `a` at the monic irreducible `pi` (multiplicity of the factor).
pub fn valuation<F: FieldOps>(f: &F, a: &Poly<F::Elem>, pi: &Poly<F::Elem>) -> Option<usize> {
    if a.is_empty() {
        return None; // infinite
    }
    let mut v = 0;
    let mut cur = a.clone();
    loop {
        let (q, r) = divrem(f, &cur, pi).expect("nonzero divisor");
        if !r.is_empty() {
            return Some(v);
        }
        v += 1;
        cur = q;
    }
}

/// Monic gcd together with the monic squarefree part of `f_in`.
///
/// Uses Yun's bound when applicable (characteristic 0 or p > deg), otherwise
/// falls back to iterating gcd(f, f').
pub fn gcd_and_squarefree_part<F: FieldOps>(
    f: &F,
    f_in: &Poly<F::Elem>,
    g_in: &Poly<F::Elem>,
) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let g = gcd(f, f_in, g_in);
    let sf = squarefree_part(f, f_in);
    (g, sf)
}

/// Monic squarefree part: the product of the distinct irreducible factors.
pub fn squarefree_part<F: FieldOps>(f: &F, a: &Poly<F::Elem>) -> Poly<F::Elem> {
    if a.is_empty() {
        return vec![];
    }
    if a.len() == 1 {
        return vec![f.one()];
    }
    let applicable = match f.characteristic() {
        None => true,
        Some(p) => p as usize > a.len() - 1,
    };
    if applicable {
        let d = derivative(f, a);
        let g = gcd(f, a, &d);
        return monic(f, &div_exact(f, a, &g).expect("gcd divides")).expect("nonzero");
    }
    // Small characteristic fallback: strip repeated factors by iterated gcd.
    // Handles the separable part only; purely inseparable parts (p-th powers)
    // are reduced by exponent division for prime fields via Frobenius on
    // coefficients being the identity.
    let d = derivative(f, a);
    if d.is_empty() {
        // a = b(x^p) over F_p; take p-th "root" by exponent division.
        let p = f.characteristic().expect("finite characteristic") as usize;
        let mut b = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if i % p == 0 {
                b.push(c.clone());
            } else {
                assert!(f.is_zero(c), "derivative zero forces p | exponents");
            }
        }
        return squarefree_part(f, &b);
    }
    let g = gcd(f, a, &d);
    if g.len() == 1 {
        return monic(f, a).expect("nonzero");
    }
    let part = div_exact(f, a, &g).expect("gcd divides");
    let rest = squarefree_part(f, &g);
    let extra = div_exact(f, &rest, &gcd(f, &rest, &part)).expect("gcd divides");
    monic(f, &mul(f, &part, &extra)).expect("nonzero")
}

// ---------------------------------------------------------------------------
// Factorization over prime fields (distinct-degree + equal-degree splitting)
// ---------------------------------------------------------------------------

/// Complete factorization over F_p into monic irreducibles with multiplicity,
/// sorted by (degree, coefficients) for determinism.
pub fn factor_mod_p(fp: &Fp, a: &Poly<u64>) -> Result<Vec<(Poly<u64>, usize)>> {
    if a.is_empty() {
        return Err(Error::Invalid("cannot factor the zero polynomial".into()));
    }
    let mut out: Vec<(Poly<u64>, usize)> = Vec::new();
    let mut stack = vec![(monic(fp, a)?, 1usize)];
    while let Some((f, mult)) = stack.pop() {
        if f.len() <= 1 {
            continue;
        }
        let d = derivative(fp, &f);
        if d.is_empty() {
            // f = g(x^p); over F_p this is g(x)^p.
            let p = fp.p() as usize;
            let mut g = Vec::new();
            for (i, c) in f.iter().enumerate() {
                if i % p == 0 {
                    g.push(*c);
                }
            }
            stack.push((g, mult * p));
            continue;
        }
        let g = gcd(fp, &f, &d);
        if g.len() > 1 {
            stack.push((div_exact(fp, &f, &g)?, mult));
            stack.push((g, mult));
            continue;
        }
        // f squarefree: distinct-degree then equal-degree splitting
        for (h, k) in distinct_degree_split(fp, &f)? {
            for irr in equal_degree_split(fp, &h, k)? {
                merge_factor(&mut out, irr, mult);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn merge_factor(out: &mut Vec<(Poly<u64>, usize)>, f: Poly<u64>, m: usize) {
    for (g, k) in out.iter_mut() {
        if *g == f {
            *k += m;
            return;
        }
    }
    out.push((f, m));
}

fn powmod_poly(fp: &Fp, base: &Poly<u64>, e: &BigInt, m: &Poly<u64>) -> Result<Poly<u64>> {
    let mut acc = vec![1u64];
    let mut b = divrem(fp, base, m)?.1;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = divrem(fp, &mul(fp, &acc, &b), m)?.1;
        }
        b = divrem(fp, &mul(fp, &b, &b), m)?.1;
    }
    Ok(acc)
}

fn distinct_degree_split(fp: &Fp, f: &Poly<u64>) -> Result<Vec<(Poly<u64>, usize)>> {
    let mut out = Vec::new();
    let mut rem = f.clone();
    let x = vec![0, 1];
    let mut xq = x.clone();
    let p = BigInt::from(fp.p());
    let mut d = 0usize;
    while rem.len() > 1 {
        d += 1;
        if 2 * d > rem.len() - 1 {
            out.push((rem.clone(), rem.len() - 1));
            break;
        }
        xq = powmod_poly(fp, &xq, &p, &rem)?;
        let g = gcd(fp, &sub(fp, &xq, &x), &rem);
        if g.len() > 1 {
            out.push((g.clone(), d));
            rem = div_exact(fp, &rem, &g)?;
            xq = divrem(fp, &xq, &rem)?.1;
        }
    }
    Ok(out)
}

/// Cantor-Zassenhaus equal-degree splitting of a squarefree product of
/// irreducibles of degree `d`, driven by a deterministic xorshift stream.
fn equal_degree_split(fp: &Fp, f: &Poly<u64>, d: usize) -> Result<Vec<Poly<u64>>> {
    let n = f.len() - 1;
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let mut state: u64 = 0x9e3779b97f4a7c15;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let e = (BigInt::from(fp.p()).pow(d as u32) - 1) / 2;
    loop {
        let mut r: Poly<u64> = (0..2 * d).map(|_| next() % fp.p()).collect();
        trim(fp, &mut r);
        if r.len() <= 1 {
            continue;
        }
        let h = powmod_poly(fp, &r, &e, f)?;
        let g = gcd(fp, &sub(fp, &h, &vec![1]), f);
        if g.len() > 1 && g.len() < f.len() {
            let mut left = equal_degree_split(fp, &g, d)?;
            let rest = div_exact(fp, f, &g)?;
            left.extend(equal_degree_split(fp, &rest, d)?);
            return Ok(left);
        }
    }
}

/// All roots in F_p with multiplicity, sorted.
pub fn roots_mod_p(fp: &Fp, a: &Poly<u64>) -> Result<Vec<(u64, usize)>> {
    let mut out = Vec::new();
    for (f, m) in factor_mod_p(fp, a)? {
        if f.len() == 2 {
            // x + c -> root -c
            out.push((fp.neg(&f[0]), m));
        }
    }
    out.sort();
    Ok(out)
}

/// All rational roots with multiplicity (complete), by the rational root
/// theorem on the primitive integer model followed by multiplicity extraction.
pub fn rational_roots(a: &Poly<Rational>) -> Vec<(Rational, usize)> {
    let f = QQ;
    if a.is_empty() || a.len() == 1 {
        return vec![];
    }
    // clear denominators
    let mut lcm = BigInt::one();
    for c in a {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = a.iter().map(|c| c.numer() * &lcm / c.denom()).collect();
    // strip powers of x
    let mut k = 0;
    while ints[k].is_zero() {
        k += 1;
    }
    let mut out: Vec<(Rational, usize)> = Vec::new();
    if k > 0 {
        out.push((f.zero(), k));
    }
    let a0 = &ints[k];
    let an = ints.last().unwrap();
    let mut candidates: Vec<Rational> = Vec::new();
    for p in divisors(&a0.abs()) {
        for q in divisors(&an.abs()) {
            for s in [1i64, -1] {
                let c = Rational::new(&p * BigInt::from(s), q.clone());
                if !candidates.contains(&c) {
                    candidates.push(c);
                }
            }
        }
    }
    for c in candidates {
        if !eval(&f, a, &c).is_zero() {
            continue;
        }
        let lin = vec![f.neg(&c), f.one()];
        let v = valuation(&f, a, &lin).expect("nonzero");
        if v > 0 {
            out.push((c, v));
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Outcome flag for root searches over proper number fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootCompleteness {
    Complete,
    CandidatesOnly,
}

/// Roots of `a` discoverable in the coefficient field: validates the supplied
/// candidates and, over Q-like bases, nothing more is attempted here (prime
/// fields and rationals have complete dedicated paths above).
pub fn roots_from_candidates<F: FieldOps>(
    f: &F,
    a: &Poly<F::Elem>,
    candidates: &[F::Elem],
) -> Vec<(F::Elem, usize)> {
    let mut out = Vec::new();
    for c in candidates {
        if out.iter().any(|(r, _)| r == c) {
            continue;
        }
        if f.is_zero(&eval(f, a, c)) {
            let lin = vec![f.neg(c), f.one()];
            let v = valuation(f, a, &lin).expect("nonzero polynomial");
            if v > 0 {
                out.push((c.clone(), v));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat_i64;

    fn qp(cs: &[i64]) -> Poly<Rational> {
        let mut v: Vec<Rational> = cs.iter().map(|&c| rat_i64(c)).collect();
        trim(&QQ, &mut v);
        v
    }

    #[test]
    fn gcd_shared_linear() {
        // gcd(t^2 - 1, t - 1) = t - 1
        let g = gcd(&QQ, &qp(&[-1, 0, 1]), &qp(&[-1, 1]));
        assert_eq!(g, qp(&[-1, 1]));
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        let fp = Fp::new(113).unwrap();
        // (t-1)^3 (t+1)
        let t1 = vec![112, 1];
        let f = mul(&fp, &mul(&fp, &t1, &t1), &mul(&fp, &t1, &vec![1, 1]));
        let sf = squarefree_part(&fp, &f);
        assert_eq!(sf, mul(&fp, &t1, &vec![1, 1]));
    }

    #[test]
    fn factor_t8_minus_1_mod_113() {
        let fp = Fp::new(113).unwrap();
        let mut f = vec![fp.neg(&1)];
        f.extend(std::iter::repeat(0).take(7));
        f.push(1);
        let fac = factor_mod_p(&fp, &f).unwrap();
        assert_eq!(fac.len(), 8);
        assert!(fac.iter().all(|(g, m)| g.len() == 2 && *m == 1));
        let roots: Vec<u64> = roots_mod_p(&fp, &f).unwrap().iter().map(|r| r.0).collect();
        assert_eq!(roots, vec![1, 15, 18, 44, 69, 95, 98, 112]);
    }

    #[test]
    fn factor_irreducible_quadratic_mod_3() {
        let fp = Fp::new(3).unwrap();
        let fac = factor_mod_p(&fp, &vec![1, 0, 1]).unwrap();
        assert_eq!(fac, vec![(vec![1, 0, 1], 1)]);
    }

    #[test]
    fn factor_square_mod_5() {
        let fp = Fp::new(5).unwrap();
        let t1 = vec![4, 1];
        let f = mul(&fp, &t1, &t1);
        assert_eq!(factor_mod_p(&fp, &f).unwrap(), vec![(t1, 2)]);
    }

    #[test]
    fn rational_roots_complete() {
        // (2x - 1)(x + 3)^2
        let f = mul(
            &QQ,
            &qp(&[-1, 2]),
            &mul(&QQ, &qp(&[3, 1]), &qp(&[3, 1])),
        );
        let roots = rational_roots(&f);
        assert_eq!(
            roots,
            vec![(rat_i64(-3), 2), (crate::field::rat(1, 2), 1)]
        );
        // x^2 + 1: none
        assert!(rational_roots(&qp(&[1, 0, 1])).is_empty());
    }

    #[test]
    fn xgcd_bezout() {
        let a = qp(&[-1, 0, 1]);
        let b = qp(&[2, 3, 1]);
        let (g, s, t) = xgcd(&QQ, &a, &b);
        let lhs = add(&QQ, &mul(&QQ, &s, &a), &mul(&QQ, &t, &b));
        assert_eq!(lhs, g);
        assert_eq!(g, qp(&[1, 1])); // common factor x+1
    }
}
