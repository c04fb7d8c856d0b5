//! Short Weierstrass models y^2 = x^3 + A(t) x + B(t) over K(t) with the K3
//! degree bounds deg A <= 8, deg B <= 12, and places of the base line.

use crate::{Error, Result};
use exactcore::field::FieldOps;
use exactcore::poly::{self, Poly};
use exactcore::ratfunc::{RatFunc, RatFuncField};

/// y^2 = x^3 + A x + B with A, B in K[t].
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassModel<F: FieldOps> {
    pub field: F,
    pub a: Poly<F::Elem>,
    pub b: Poly<F::Elem>,
}

/// A closed point of the base P^1: a monic irreducible pi(t), or infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum Place<E> {
    Finite(Poly<E>),
    Infinity,
}

impl<E: Clone + PartialEq + std::fmt::Debug> Place<E> {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.len().saturating_sub(1),
            Place::Infinity => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelInvariants<E> {
    pub b2: Poly<E>,
    pub b4: Poly<E>,
    pub b6: Poly<E>,
    pub b8: Poly<E>,
    pub c4: Poly<E>,
    pub c6: Poly<E>,
    pub delta: Poly<E>,
    pub j: RatFunc<E>,
}

impl<F: FieldOps> WeierstrassModel<F> {
    pub fn new(field: F, a: Poly<F::Elem>, b: Poly<F::Elem>) -> Result<WeierstrassModel<F>> {
        if let Some(p) = field.characteristic() {
            if p == 2 || p == 3 {
                return Err(Error::UnsupportedCharacteristic);
            }
        }
        let mut a = a;
        let mut b = b;
        poly::trim(&field, &mut a);
        poly::trim(&field, &mut b);
        if poly::deg(&a) > 8 || poly::deg(&b) > 12 {
            return Err(Error::DegreeBoundExceeded);
        }
        let w = WeierstrassModel { field, a, b };
        if w.delta().is_empty() {
            return Err(Error::ZeroDiscriminant);
        }
        Ok(w)
    }

    /// -16 (4A^3 + 27B^2)
    pub fn delta(&self) -> Poly<F::Elem> {
        let f = &self.field;
        let a3 = poly::mul(f, &poly::mul(f, &self.a, &self.a), &self.a);
        let b2 = poly::mul(f, &self.b, &self.b);
        let s = poly::add(
            f,
            &poly::scale(f, &a3, &f.from_i64(4)),
            &poly::scale(f, &b2, &f.from_i64(27)),
        );
        poly::scale(f, &s, &f.from_i64(-16))
    }

    /// The chart at infinity: t = 1/s, x -> x/s^4, y -> y/s^6 gives
    /// Y^2 = X^3 + (s^8 A(1/s)) X + s^12 B(1/s).
    pub fn infinity_chart(&self) -> WeierstrassModel<F> {
        let f = &self.field;
        let mut at = vec![f.zero(); 9];
        for (i, c) in self.a.iter().enumerate() {
            at[8 - i] = c.clone();
        }
        let mut bt = vec![f.zero(); 13];
        for (i, c) in self.b.iter().enumerate() {
            bt[12 - i] = c.clone();
        }
        poly::trim(f, &mut at);
        poly::trim(f, &mut bt);
        WeierstrassModel { field: self.field.clone(), a: at, b: bt }
    }

    /// RHS x^3 + A x + B as a value, for a given x in K(t).
    pub fn rhs_at(
        &self,
        kt: &RatFuncField<F>,
        x: &RatFunc<F::Elem>,
    ) -> RatFunc<F::Elem> {
        let a = kt.from_poly(self.a.clone());
        let b = kt.from_poly(self.b.clone());
        let x3 = kt.mul(&kt.mul(x, x), x);
        kt.add(&kt.add(&x3, &kt.mul(&a, x)), &b)
    }

    pub fn function_field(&self) -> RatFuncField<F> {
        RatFuncField::new(self.field.clone())
    }
}

/// Standard formulary b2, b4, b6, b8, c4, c6, Delta, j for the short form.
pub fn model_invariants<F: FieldOps>(w: &WeierstrassModel<F>) -> Result<ModelInvariants<F::Elem>> {
    let f = &w.field;
    let delta = w.delta();
    if delta.is_empty() {
        return Err(Error::ZeroDiscriminant);
    }
    let c4 = poly::scale(f, &w.a, &f.from_i64(-48));
    let c6 = poly::scale(f, &w.b, &f.from_i64(-864));
    let kt = w.function_field();
    let c43 = poly::mul(f, &poly::mul(f, &c4, &c4), &c4);
    let j = kt.make(c43.clone(), delta.clone()).map_err(Error::Core)?;
    // consistency: c4^3 - c6^2 = 1728 Delta
    debug_assert_eq!(
        poly::sub(f, &c43, &poly::mul(f, &c6, &c6)),
        poly::scale(f, &delta, &f.from_i64(1728))
    );
    Ok(ModelInvariants {
        b2: vec![],
        b4: poly::scale(f, &w.a, &f.from_i64(2)),
        b6: poly::scale(f, &w.b, &f.from_i64(4)),
        b8: poly::neg(f, &poly::mul(f, &w.a, &w.a)),
        c4,
        c6,
        delta,
        j,
    })
}
