//! Rational functions num/den over an arbitrary coefficient field, and the
//! field structure K(t) they form.
//!
//! Canonical form: denominator monic and coprime to the numerator; the zero
//! function has numerator [] and denominator [1].

use crate::field::FieldOps;
use crate::poly::{self, Poly};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<E> {
    pub num: Poly<E>,
    pub den: Poly<E>,
}

/// K(t) over the coefficient field `base`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFuncField<F: FieldOps> {
    pub base: F,
}

impl<F: FieldOps> RatFuncField<F> {
    pub fn new(base: F) -> Self {
        RatFuncField { base }
    }

    /// Canonicalizes num/den: cancel the gcd, make the denominator monic.
    pub fn make(&self, num: Poly<F::Elem>, den: Poly<F::Elem>) -> Result<RatFunc<F::Elem>> {
        let f = &self.base;
        let mut num = num;
        let mut den = den;
        poly::trim(f, &mut num);
        poly::trim(f, &mut den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if num.is_empty() {
            return Ok(RatFunc { num: vec![], den: vec![f.one()] });
        }
        let g = poly::gcd(f, &num, &den);
        if g.len() > 1 {
            num = poly::div_exact(f, &num, &g)?;
            den = poly::div_exact(f, &den, &g)?;
        }
        let lead_inv = f.inv(den.last().unwrap())?;
        den = poly::scale(f, &den, &lead_inv);
        num = poly::scale(f, &num, &lead_inv);
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(&self, num: Poly<F::Elem>) -> RatFunc<F::Elem> {
        self.make(num, vec![self.base.one()]).expect("unit denominator")
    }

    /// The variable t.
    pub fn var(&self) -> RatFunc<F::Elem> {
        self.from_poly(vec![self.base.zero(), self.base.one()])
    }

    pub fn from_base(&self, c: F::Elem) -> RatFunc<F::Elem> {
        self.from_poly(vec![c])
    }

    pub fn is_poly(&self, a: &RatFunc<F::Elem>) -> bool {
        a.den.len() == 1
    }

    /// Evaluates at a base-field point; errors if the denominator vanishes.
    pub fn eval(&self, a: &RatFunc<F::Elem>, x: &F::Elem) -> Result<F::Elem> {
        let f = &self.base;
        let d = poly::eval(f, &a.den, x);
        if f.is_zero(&d) {
            return Err(Error::DivisionByZero);
        }
        Ok(f.mul(&poly::eval(f, &a.num, x), &f.inv(&d)?))
    }

    /// Substitutes a rational function for the variable.
    pub fn compose(&self, a: &RatFunc<F::Elem>, g: &RatFunc<F::Elem>) -> Result<RatFunc<F::Elem>> {
        // num(g)/den(g) with common denominator den_g^max(deg num, deg den)
        let f = &self.base;
        let dn = a.num.len().max(a.den.len());
        let mut num_acc: Poly<F::Elem> = vec![];
        let mut den_acc: Poly<F::Elem> = vec![];
        // Horner in g, tracking powers of g.den to stay polynomial:
        // sum c_i g.num^i g.den^(dn-1-i)
        let mut gd_pow = vec![f.one()];
        let mut powers_gd: Vec<Poly<F::Elem>> = Vec::with_capacity(dn);
        for _ in 0..dn {
            powers_gd.push(gd_pow.clone());
            gd_pow = poly::mul(f, &gd_pow, &g.den);
        }
        let mut gn_pow = vec![f.one()];
        for i in 0..dn {
            if let Some(c) = a.num.get(i) {
                let term = poly::scale(f, &poly::mul(f, &gn_pow, &powers_gd[dn - 1 - i]), c);
                num_acc = poly::add(f, &num_acc, &term);
            }
            if let Some(c) = a.den.get(i) {
                let term = poly::scale(f, &poly::mul(f, &gn_pow, &powers_gd[dn - 1 - i]), c);
                den_acc = poly::add(f, &den_acc, &term);
            }
            gn_pow = poly::mul(f, &gn_pow, &g.num);
        }
        self.make(num_acc, den_acc)
    }

    /// Order of vanishing at the monic irreducible place pi; negative at poles.
    pub fn valuation(&self, a: &RatFunc<F::Elem>, pi: &Poly<F::Elem>) -> Option<i64> {
        let f = &self.base;
        if a.num.is_empty() {
            return None; // infinite
        }
        let vn = poly::valuation(f, &a.num, pi).expect("nonzero") as i64;
        let vd = poly::valuation(f, &a.den, pi).expect("nonzero") as i64;
        Some(vn - vd)
    }

    /// deg num - deg den; the order of pole at infinity of a degree-0 chart.
    pub fn degree(&self, a: &RatFunc<F::Elem>) -> Option<i64> {
        if a.num.is_empty() {
            return None;
        }
        Some(a.num.len() as i64 - a.den.len() as i64)
    }
}

impl<F: FieldOps> FieldOps for RatFuncField<F> {
    type Elem = RatFunc<F::Elem>;

    fn zero(&self) -> Self::Elem {
        RatFunc { num: vec![], den: vec![self.base.one()] }
    }
    fn one(&self) -> Self::Elem {
        RatFunc { num: vec![self.base.one()], den: vec![self.base.one()] }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_empty()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        let num = poly::add(
            f,
            &poly::mul(f, &a.num, &b.den),
            &poly::mul(f, &b.num, &a.den),
        );
        let den = poly::mul(f, &a.den, &b.den);
        self.make(num, den).expect("nonzero denominator")
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFunc { num: poly::neg(&self.base, &a.num), den: a.den.clone() }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        self.make(poly::mul(f, &a.num, &b.num), poly::mul(f, &a.den, &b.den))
            .expect("nonzero denominator")
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if a.num.is_empty() {
            return Err(Error::DivisionByZero);
        }
        self.make(a.den.clone(), a.num.clone())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_poly(vec![self.base.from_i64(n)])
    }
    fn characteristic(&self) -> Option<u64> {
        self.base.characteristic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat_i64, QQ};

    fn kt() -> RatFuncField<QQ> {
        RatFuncField::new(QQ)
    }

    #[test]
    fn canonical_form_unique() {
        let f = kt();
        // (t^2-1)/(t-1) = (t+1)/1
        let a = f
            .make(vec![rat_i64(-1), rat_i64(0), rat_i64(1)], vec![rat_i64(-1), rat_i64(1)])
            .unwrap();
        assert_eq!(a, f.from_poly(vec![rat_i64(1), rat_i64(1)]));
        // 2t/2 normalizes
        let b = f.make(vec![rat_i64(0), rat_i64(2)], vec![rat_i64(2)]).unwrap();
        assert_eq!(b, f.var());
    }

    #[test]
    fn field_axioms_smoke() {
        let f = kt();
        let t = f.var();
        let a = f.add(&t, &f.one());
        let ai = f.inv(&a).unwrap();
        assert!(f.is_one(&f.mul(&a, &ai)));
        assert!(f.is_zero(&f.sub(&a, &a)));
    }

    #[test]
    fn compose_substitution() {
        let f = kt();
        // a(t) = (t+1)/t, g = t^2: a(g) = (t^2+1)/t^2
        let a = f.make(vec![rat_i64(1), rat_i64(1)], vec![rat_i64(0), rat_i64(1)]).unwrap();
        let g = f.from_poly(vec![rat_i64(0), rat_i64(0), rat_i64(1)]);
        let c = f.compose(&a, &g).unwrap();
        let want = f
            .make(
                vec![rat_i64(1), rat_i64(0), rat_i64(1)],
                vec![rat_i64(0), rat_i64(0), rat_i64(1)],
            )
            .unwrap();
        assert_eq!(c, want);
    }

    #[test]
    fn valuation_and_degree() {
        let f = kt();
        let a = f
            .make(vec![rat_i64(0), rat_i64(0), rat_i64(1)], vec![rat_i64(-1), rat_i64(1)])
            .unwrap(); // t^2/(t-1)
        let t = vec![rat_i64(0), rat_i64(1)];
        let t1 = vec![rat_i64(-1), rat_i64(1)];
        assert_eq!(f.valuation(&a, &t), Some(2));
        assert_eq!(f.valuation(&a, &t1), Some(-1));
        assert_eq!(f.degree(&a), Some(1));
    }
}
