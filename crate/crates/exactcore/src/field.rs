//! Field abstraction used by the polynomial and matrix towers.
//!
//! A *structure object* (e.g. [`QQ`], [`Fp`], a number field, a rational
//! function field) carries the context needed for arithmetic, while elements
//! are plain data. This keeps element types simple and lets towers such as
//! K(t)(x) compose without lifetime or context plumbing inside elements.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. Invariants (reduced form, positive denominator) are
/// maintained by `num_rational`.
pub type Rational = BigRational;

pub fn rat_i64(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub trait FieldOps: Clone {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// `None` means characteristic zero.
    fn characteristic(&self) -> Option<u64>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The rational numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QQ;

impl FieldOps for QQ {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        BigRational::zero()
    }
    fn one(&self) -> Rational {
        BigRational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn from_i64(&self, n: i64) -> Rational {
        rat_i64(n)
    }
    fn characteristic(&self) -> Option<u64> {
        None
    }
}

/// Prime field F_p with p < 2^31; elements are residues in [0, p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Fp> {
        if p >= 1 << 31 {
            return Err(Error::Invalid(format!("modulus {p} too large")));
        }
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(Fp { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn elem_from_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        let (_, digits) = r.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }

    /// Reduces a rational whose denominator is a unit mod p.
    pub fn elem_from_rational(&self, q: &Rational) -> Result<u64> {
        let den = self.elem_from_bigint(q.denom());
        if den == 0 {
            return Err(Error::NotInvertible(format!(
                "denominator of {q} vanishes mod {}",
                self.p
            )));
        }
        let num = self.elem_from_bigint(q.numer());
        Ok(self.mul(&num, &self.inv(&den)?))
    }

    pub fn pow_u(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    pub fn sqrt(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return Some(0);
        }
        if self.p == 2 {
            return Some(a);
        }
        if self.pow_u(a, (self.p - 1) / 2) != 1 {
            return None;
        }
        // Tonelli-Shanks
        let p = self.p;
        let mut q = p - 1;
        let mut s = 0u64;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.pow_u(z, (p - 1) / 2) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow_u(z, q);
        let mut t = self.pow_u(a, q);
        let mut r = self.pow_u(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = tt * tt % p;
                i += 1;
            }
            let b = self.pow_u(c, 1 << (m - i - 1));
            m = i;
            c = b * b % p;
            t = t * c % p;
            r = r * b % p;
        }
        Some(r.min(p - r))
    }
}

impl FieldOps for Fp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u(*a, self.p - 2))
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }
    fn characteristic(&self) -> Option<u64> {
        Some(self.p)
    }
}

/// Deterministic Miller-Rabin, valid for all n < 3.3 * 10^14.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sign of a rational number: -1, 0 or 1.
pub fn rat_sign(a: &Rational) -> i32 {
    if a.is_zero() {
        0
    } else if a.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(113));
        assert!(is_prime(2147483647));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn fp_basics() {
        let f = Fp::new(113).unwrap();
        assert_eq!(f.mul(&50, &60), 3000 % 113);
        assert_eq!(f.mul(&f.inv(&7).unwrap(), &7), 1);
        assert_eq!(f.sqrt(112), Some(15)); // -1 is a square mod 113
        let f3 = Fp::new(3).unwrap();
        assert_eq!(f3.sqrt(2), None);
    }

    #[test]
    fn fp_rejects_composite() {
        assert!(Fp::new(91).is_err());
    }
}
