//! Number fields Q[x]/(m(x)) with m monic irreducible over Q.
//!
//! Elements are coefficient vectors of fixed length deg(m). Irreducibility is
//! the caller's responsibility; inversion fails with a clear error when a
//! nontrivial factor of the modulus is uncovered.

use crate::field::{FieldOps, Rational, QQ};
use crate::poly;
use crate::{Error, Result};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub struct NumberField {
    minpoly: Vec<Rational>,
    degree: usize,
}

impl NumberField {
    /// `minpoly` in ascending degree; must be monic of degree >= 1.
    pub fn new(minpoly: Vec<Rational>) -> Result<NumberField> {
        let f = QQ;
        let mut m = minpoly;
        poly::trim(&f, &mut m);
        if m.len() < 2 {
            return Err(Error::Invalid("minpoly must have degree >= 1".into()));
        }
        if !f.is_one(m.last().unwrap()) {
            return Err(Error::Invalid("minpoly must be monic".into()));
        }
        let degree = m.len() - 1;
        Ok(NumberField { minpoly: m, degree })
    }

    /// Q(alpha) with alpha^8 + 6 alpha^4 + 1 = 0.
    pub fn k_alpha() -> NumberField {
        let mut m = vec![QQ.zero(); 9];
        m[0] = QQ.one();
        m[4] = QQ.from_i64(6);
        m[8] = QQ.one();
        NumberField::new(m).unwrap()
    }

    /// Q(zeta_8) as Q[x]/(x^4 + 1).
    pub fn q_zeta8() -> NumberField {
        let mut m = vec![QQ.zero(); 5];
        m[0] = QQ.one();
        m[4] = QQ.one();
        NumberField::new(m).unwrap()
    }

    /// Q(zeta_16) as Q[x]/(x^8 + 1).
    pub fn q_zeta16() -> NumberField {
        let mut m = vec![QQ.zero(); 9];
        m[0] = QQ.one();
        m[8] = QQ.one();
        NumberField::new(m).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    /// The generator alpha as an element.
    pub fn gen(&self) -> Vec<Rational> {
        let mut v = vec![QQ.zero(); self.degree];
        if self.degree > 1 {
            v[1] = QQ.one();
        } else {
            // degree-1 field: alpha = -m[0]
            v[0] = QQ.neg(&self.minpoly[0]);
        }
        v
    }

    /// Builds an element from a (possibly long) coefficient list, reducing
    /// modulo the minimal polynomial.
    pub fn elem(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let f = QQ;
        let mut v = coeffs.to_vec();
        poly::trim(&f, &mut v);
        if v.len() > self.degree {
            v = poly::divrem(&f, &v, &self.minpoly).expect("monic modulus").1;
        }
        self.pad(v)
    }

    pub fn elem_i64(&self, coeffs: &[i64]) -> Vec<Rational> {
        let v: Vec<Rational> = coeffs.iter().map(|&c| QQ.from_i64(c)).collect();
        self.elem(&v)
    }

    fn pad(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        v.resize(self.degree, QQ.zero());
        v
    }

    /// The rational part, if the element is rational.
    pub fn to_rational(&self, a: &[Rational]) -> Option<Rational> {
        if a.iter().skip(1).all(|c| c.is_zero()) {
            Some(a[0].clone())
        } else {
            None
        }
    }
}

impl FieldOps for NumberField {
    type Elem = Vec<Rational>;

    fn zero(&self) -> Vec<Rational> {
        vec![QQ.zero(); self.degree]
    }
    fn one(&self) -> Vec<Rational> {
        let mut v = self.zero();
        v[0] = QQ.one();
        v
    }
    fn is_zero(&self, a: &Vec<Rational>) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    fn add(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn neg(&self, a: &Vec<Rational>) -> Vec<Rational> {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        let f = QQ;
        let mut pa = a.clone();
        let mut pb = b.clone();
        poly::trim(&f, &mut pa);
        poly::trim(&f, &mut pb);
        let prod = poly::mul(&f, &pa, &pb);
        let r = poly::divrem(&f, &prod, &self.minpoly).expect("monic modulus").1;
        self.pad(r)
    }
    fn inv(&self, a: &Vec<Rational>) -> Result<Vec<Rational>> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let f = QQ;
        let mut pa = a.clone();
        poly::trim(&f, &mut pa);
        let (g, s, _) = poly::xgcd(&f, &pa, &self.minpoly);
        if g.len() != 1 {
            return Err(Error::NotInvertible(
                "modulus is reducible: gcd with element is nontrivial".into(),
            ));
        }
        // g is monic constant 1, so s * a = 1 mod minpoly already
        let r = poly::divrem(&f, &s, &self.minpoly).expect("monic modulus").1;
        Ok(self.pad(r))
    }
    fn from_i64(&self, n: i64) -> Vec<Rational> {
        let mut v = self.zero();
        v[0] = QQ.from_i64(n);
        v
    }
    fn characteristic(&self) -> Option<u64> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn sqrt2_in_k_alpha() {
        // sqrt(2) = (alpha^4 + 3)/2 in Q(alpha), alpha^8 = -6 alpha^4 - 1
        let k = NumberField::k_alpha();
        let mut s = vec![rat(3, 2); 1];
        s.resize(5, QQ.zero());
        s[4] = rat(1, 2);
        let s = k.elem(&s);
        assert_eq!(k.mul(&s, &s), k.from_i64(2));
    }

    #[test]
    fn inverse_roundtrip() {
        let k = NumberField::k_alpha();
        let a = k.elem_i64(&[1, 2, 0, 0, 3]);
        let ai = k.inv(&a).unwrap();
        assert!(k.is_one(&k.mul(&a, &ai)));
    }

    #[test]
    fn zeta8_order() {
        let k = NumberField::q_zeta8();
        let z = k.gen();
        assert_eq!(k.pow(&z, 4), k.neg(&k.one()));
        assert!(k.is_one(&k.pow(&z, 8)));
    }
}
