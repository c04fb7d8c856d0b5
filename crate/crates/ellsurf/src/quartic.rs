//! Quartic-to-Weierstrass transformation (Connell's point-based recipe),
//! Moebius maps on the t-line, base change, Weierstrass isomorphisms of
//! short-form models, admissible Moebius enumeration and generic-fiber
//! automorphisms.

use crate::ffield::{CurveElem, CurveField};
use crate::model::WeierstrassModel;
use crate::{Error, Result};
use exactcore::field::FieldOps;
use exactcore::poly::{self, Poly};
use exactcore::ratfunc::{RatFunc, RatFuncField};

/// A point of the projective t-line.
#[derive(Debug, Clone, PartialEq)]
pub enum P1<E> {
    Finite(E),
    Infinity,
}

/// t -> (a t + b)/(c t + d), stored up to scalar with det != 0.
#[derive(Debug, Clone, PartialEq)]
pub struct MoebiusMap<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
}

impl<E: Clone + PartialEq + std::fmt::Debug> MoebiusMap<E> {
    pub fn new<F: FieldOps<Elem = E>>(f: &F, a: E, b: E, c: E, d: E) -> Result<Self> {
        let det = f.sub(&f.mul(&a, &d), &f.mul(&b, &c));
        if f.is_zero(&det) {
            return Err(Error::SingularGram);
        }
        Ok(MoebiusMap { a, b, c, d })
    }

    pub fn identity<F: FieldOps<Elem = E>>(f: &F) -> Self {
        MoebiusMap { a: f.one(), b: f.zero(), c: f.zero(), d: f.one() }
    }

    pub fn compose<F: FieldOps<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        // self after other: matrix product self * other
        MoebiusMap {
            a: f.add(&f.mul(&self.a, &other.a), &f.mul(&self.b, &other.c)),
            b: f.add(&f.mul(&self.a, &other.b), &f.mul(&self.b, &other.d)),
            c: f.add(&f.mul(&self.c, &other.a), &f.mul(&self.d, &other.c)),
            d: f.add(&f.mul(&self.c, &other.b), &f.mul(&self.d, &other.d)),
        }
    }

    pub fn inverse<F: FieldOps<Elem = E>>(&self, f: &F) -> Self {
        MoebiusMap {
            a: self.d.clone(),
            b: f.neg(&self.b),
            c: f.neg(&self.c),
            d: self.a.clone(),
        }
    }

    pub fn act<F: FieldOps<Elem = E>>(&self, f: &F, z: &P1<E>) -> P1<E> {
        match z {
            P1::Finite(v) => {
                let den = f.add(&f.mul(&self.c, v), &self.d);
                if f.is_zero(&den) {
                    P1::Infinity
                } else {
                    let num = f.add(&f.mul(&self.a, v), &self.b);
                    P1::Finite(f.div(&num, &den).expect("nonzero denominator"))
                }
            }
            P1::Infinity => {
                if f.is_zero(&self.c) {
                    P1::Infinity
                } else {
                    P1::Finite(f.div(&self.a, &self.c).expect("nonzero denominator"))
                }
            }
        }
    }

    /// The map as an element of K(t).
    pub fn as_ratfunc<F: FieldOps<Elem = E>>(&self, kt: &RatFuncField<F>) -> RatFunc<E> {
        kt.make(vec![self.b.clone(), self.a.clone()], vec![self.d.clone(), self.c.clone()])
            .expect("nonzero row")
    }

    /// Normalized representative (first nonzero entry scaled to 1), for
    /// deduplication up to scalar.
    pub fn normalized<F: FieldOps<Elem = E>>(&self, f: &F) -> Self {
        for lead in [&self.a, &self.b, &self.c, &self.d] {
            if !f.is_zero(lead) {
                let li = f.inv(lead).expect("nonzero");
                return MoebiusMap {
                    a: f.mul(&self.a, &li),
                    b: f.mul(&self.b, &li),
                    c: f.mul(&self.c, &li),
                    d: f.mul(&self.d, &li),
                };
            }
        }
        self.clone()
    }
}

/// Matrix of the Moebius map sending (p1, p2, p3) to (0, 1, infinity).
fn to_standard_triple<F: FieldOps>(
    f: &F,
    p1: &P1<F::Elem>,
    p2: &P1<F::Elem>,
    p3: &P1<F::Elem>,
) -> MoebiusMap<F::Elem> {
    use P1::*;
    match (p1, p2, p3) {
        (Finite(a), Finite(b), Finite(c)) => {
            let bc = f.sub(b, c);
            let ba = f.sub(b, a);
            MoebiusMap {
                a: bc.clone(),
                b: f.neg(&f.mul(a, &bc)),
                c: ba.clone(),
                d: f.neg(&f.mul(c, &ba)),
            }
        }
        (Infinity, Finite(b), Finite(c)) => MoebiusMap {
            a: f.zero(),
            b: f.sub(b, c),
            c: f.one(),
            d: f.neg(c),
        },
        (Finite(a), Infinity, Finite(c)) => MoebiusMap {
            a: f.one(),
            b: f.neg(a),
            c: f.one(),
            d: f.neg(c),
        },
        (Finite(a), Finite(b), Infinity) => MoebiusMap {
            a: f.one(),
            b: f.neg(a),
            c: f.zero(),
            d: f.sub(b, a),
        },
        _ => unreachable!("triple points must be distinct"),
    }
}

/// All Moebius maps carrying the first set onto the second (as sets), found
/// by fixing the first three source points and running over ordered target
/// triples.
pub fn admissible_moebius<F: FieldOps>(
    f: &F,
    crit1: &[P1<F::Elem>],
    crit2: &[P1<F::Elem>],
) -> Result<Vec<MoebiusMap<F::Elem>>> {
    if crit1.len() < 3 {
        return Err(Error::TooFewCriticalValues);
    }
    if crit1.len() != crit2.len() {
        return Ok(vec![]);
    }
    let n1 = to_standard_triple(f, &crit1[0], &crit1[1], &crit1[2]);
    let mut out: Vec<MoebiusMap<F::Elem>> = Vec::new();
    let n = crit2.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let n2 = to_standard_triple(f, &crit2[i], &crit2[j], &crit2[k]);
                let mu = n2.inverse(f).compose(f, &n1);
                // mu must send crit1 onto crit2 bijectively
                let ok = crit1.iter().all(|z| {
                    let img = mu.act(f, z);
                    crit2.iter().any(|w| w == &img)
                });
                if !ok {
                    continue;
                }
                let norm = mu.normalized(f);
                if !out.contains(&norm) {
                    out.push(norm);
                }
            }
        }
    }
    Ok(out)
}

/// Pullback of the model along mu, renormalized to polynomial coefficients
/// by the twist x -> x/(c t + d)^4, y -> y/(c t + d)^6.
pub fn base_change<F: FieldOps>(
    w: &WeierstrassModel<F>,
    mu: &MoebiusMap<F::Elem>,
) -> Result<WeierstrassModel<F>> {
    let f = &w.field;
    let kt = w.function_field();
    let m = mu.as_ratfunc(&kt);
    let den: Poly<F::Elem> = vec![mu.d.clone(), mu.c.clone()];
    let den4 = poly::pow(f, &den, 4);
    let a_mu = kt.compose(&kt.from_poly(w.a.clone()), &m).map_err(Error::Core)?;
    let b_mu = kt.compose(&kt.from_poly(w.b.clone()), &m).map_err(Error::Core)?;
    let a_tw = kt.mul(&a_mu, &kt.from_poly(poly::pow(f, &den4, 2)));
    let b_tw = kt.mul(&b_mu, &kt.from_poly(poly::pow(f, &den4, 3)));
    if !kt.is_poly(&a_tw) || !kt.is_poly(&b_tw) {
        return Err(Error::UnsupportedForm);
    }
    WeierstrassModel::new(f.clone(), a_tw.num, b_tw.num)
}

/// A short-form isomorphism (x, y) -> (u^2 x, u^3 y) carrying W1 to W2, i.e.
/// A2 = A1/u^4 and B2 = B1/u^6.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassScaling<E> {
    pub u: E,
}

/// Searches a scaling isomorphism between two short-form models. `fourth_root`
/// supplies 4th roots in K (used when B = 0); square roots are derived from it
/// where needed.
pub fn weierstrass_isomorphism<F: FieldOps>(
    w1: &WeierstrassModel<F>,
    w2: &WeierstrassModel<F>,
    fourth_root: &dyn Fn(&F::Elem) -> Option<F::Elem>,
) -> Result<Option<WeierstrassScaling<F::Elem>>> {
    let f = &w1.field;
    let kt = w1.function_field();
    let verify = |u: &F::Elem| -> bool {
        let u4 = f.pow(u, 4);
        let u6 = f.pow(u, 6);
        let a_ok = poly::sub(f, &poly::scale(f, &w2.a, &u4), &w1.a).is_empty();
        let b_ok = poly::sub(f, &poly::scale(f, &w2.b, &u6), &w1.b).is_empty();
        a_ok && b_ok
    };
    if w1.b.is_empty() != w2.b.is_empty() || w1.a.is_empty() != w2.a.is_empty() {
        return Ok(None);
    }
    if w1.b.is_empty() {
        // j = 1728: u^4 = A1/A2, which must be a constant
        let r = kt
            .make(w1.a.clone(), w2.a.clone())
            .map_err(Error::Core)?;
        if kt.degree(&r) != Some(0) || r.den.len() != 1 {
            return Ok(None);
        }
        let c = f.div(&r.num[0], &r.den[0]).map_err(Error::Core)?;
        match fourth_root(&c) {
            Some(u) if verify(&u) => Ok(Some(WeierstrassScaling { u })),
            _ => Ok(None),
        }
    } else if w1.a.is_empty() {
        Err(Error::UnsupportedForm)
    } else {
        // generic j: u^2 = (B1/B2)/(A1/A2) must be constant and consistent
        let ra = kt.make(w1.a.clone(), w2.a.clone()).map_err(Error::Core)?;
        let rb = kt.make(w1.b.clone(), w2.b.clone()).map_err(Error::Core)?;
        let u2r = kt.div(&rb, &ra).map_err(Error::Core)?;
        if kt.degree(&u2r) != Some(0) || u2r.den.len() != 1 {
            return Ok(None);
        }
        let u2 = f.div(&u2r.num[0], &u2r.den[0]).map_err(Error::Core)?;
        // u from u^2 through the 4th-root hook applied to u^2 squared
        match fourth_root(&f.mul(&u2, &u2)) {
            Some(u) => {
                for cand in [u.clone(), f.neg(&u)] {
                    if verify(&cand) {
                        return Ok(Some(WeierstrassScaling { u: cand }));
                    }
                }
                Ok(None)
            }
            None => Ok(None),
        }
    }
}

/// Automorphisms of the generic fiber of an A-only short form: scalings with
/// u^4 = 1. Always contains 1 and -1; further candidates (e.g. a known square
/// root of -1) are filtered from `candidates`.
pub fn generic_fiber_automorphisms<F: FieldOps>(
    w: &WeierstrassModel<F>,
    candidates: &[F::Elem],
) -> Result<Vec<WeierstrassScaling<F::Elem>>> {
    if !w.b.is_empty() {
        return Err(Error::UnsupportedForm);
    }
    let f = &w.field;
    let mut us = vec![f.one(), f.neg(&f.one())];
    for c in candidates {
        if f.is_zero(&f.sub(&f.pow(c, 4), &f.one())) && !us.iter().any(|u| u == c) {
            us.push(c.clone());
        }
    }
    Ok(us.into_iter().map(|u| WeierstrassScaling { u }).collect())
}

/// The transformation data from v^2 = q(u) with rational point (u0, v0),
/// v0 != 0, to a short Weierstrass model over K(t). Coefficients of q are
/// polynomials in t; `a` holds the shifted quartic q(u + u0) coefficients
/// a1..a4 in K(t) (the constant term is p^2 with p = v0).
pub struct QuarticToWeierstrass<F: FieldOps> {
    pub model: WeierstrassModel<F>,
    u0: RatFunc<F::Elem>,
    p: RatFunc<F::Elem>,
    a: [RatFunc<F::Elem>; 4],
    a1l: RatFunc<F::Elem>,
    a2l: RatFunc<F::Elem>,
    a3l: RatFunc<F::Elem>,
    b2: RatFunc<F::Elem>,
}

/// Connell's recipe: translate the point to u = 0 so the constant term is
/// v0^2, map to the long form
///   y^2 + (a1/p) xy + 2p a3 y = x^3 + A2 x^2 + A4 x + A2 A4,
///   A2 = a2 - a1^2/(4p^2), A4 = -4p^2 a4,
/// then complete the square and depress to y^2 = x^3 + A x + B.
pub fn quartic_to_weierstrass<F: FieldOps>(
    field: F,
    q: &[Poly<F::Elem>],
    u0: RatFunc<F::Elem>,
    v0: RatFunc<F::Elem>,
) -> Result<QuarticToWeierstrass<F>> {
    if q.len() != 5 {
        return Err(Error::UnsupportedForm);
    }
    let kt = RatFuncField::new(field.clone());
    // squarefree check: gcd(q, q') must be constant in K(t)[u]
    let qpoly: Poly<RatFunc<F::Elem>> = q.iter().map(|c| kt.from_poly(c.clone())).collect();
    let g = poly::gcd(&kt, &qpoly, &poly::derivative(&kt, &qpoly));
    if poly::deg(&g) > 0 {
        return Err(Error::SingularQuartic);
    }
    // point on curve: v0^2 = q(u0)
    let qu0 = poly::eval(&kt, &qpoly, &u0);
    if !kt.is_zero(&kt.sub(&kt.mul(&v0, &v0), &qu0)) {
        return Err(Error::PointNotOnCurve);
    }
    if kt.is_zero(&v0) {
        return Err(Error::UnsupportedForm);
    }
    // shift u -> u + u0
    let shifted = poly::compose(&kt, &qpoly, &vec![u0.clone(), kt.one()]);
    let mut sh = shifted;
    sh.resize(5, kt.zero());
    let p = v0;
    let a1 = sh[1].clone();
    let a2 = sh[2].clone();
    let a3 = sh[3].clone();
    let a4 = sh[4].clone();
    let p2 = kt.mul(&p, &p);
    let four = kt.from_i64(4);
    let a2l = kt.sub(&a2, &kt.div(&kt.mul(&a1, &a1), &kt.mul(&four, &p2))?);
    let a4l = kt.neg(&kt.mul(&kt.mul(&four, &p2), &a4));
    let a6l = kt.mul(&a2l, &a4l);
    let a1l = kt.div(&a1, &p)?;
    let a3l = kt.mul(&kt.mul(&kt.from_i64(2), &p), &a3);
    // long form to short form
    let b2 = kt.add(&kt.mul(&a1l, &a1l), &kt.mul(&four, &a2l));
    let b4 = kt.add(&kt.mul(&kt.from_i64(2), &a4l), &kt.mul(&a1l, &a3l));
    let b6 = kt.add(&kt.mul(&a3l, &a3l), &kt.mul(&four, &a6l));
    let c4 = kt.sub(&kt.mul(&b2, &b2), &kt.mul(&kt.from_i64(24), &b4));
    let c6 = kt.add(
        &kt.sub(
            &kt.neg(&kt.mul(&kt.mul(&b2, &b2), &b2)),
            &kt.mul(&kt.from_i64(216), &b6),
        ),
        &kt.mul(&kt.from_i64(36), &kt.mul(&b2, &b4)),
    );
    let a_short = kt.div(&c4, &kt.from_i64(-48))?;
    let b_short = kt.div(&c6, &kt.from_i64(-864))?;
    if !kt.is_poly(&a_short) || !kt.is_poly(&b_short) {
        return Err(Error::UnsupportedForm);
    }
    let model = WeierstrassModel::new(field, a_short.num, b_short.num)?;
    Ok(QuarticToWeierstrass { model, u0, p, a: [a1, a2, a3, a4], a1l, a2l, a3l, b2 })
}

impl<F: FieldOps> QuarticToWeierstrass<F> {
    /// Forward coordinate map evaluated in any curve field containing (u, v):
    /// (u, v) -> (xi, eta) on the short model.
    pub fn forward(
        &self,
        c: &CurveField<F>,
        u: &CurveElem<F::Elem>,
        v: &CurveElem<F::Elem>,
    ) -> Result<(CurveElem<F::Elem>, CurveElem<F::Elem>)> {
        let s = |r: &RatFunc<F::Elem>| c.scalar_t(r.clone());
        let kt = &c.kt;
        let two = kt.from_i64(2);
        let us = c.sub(u, &s(&self.u0));
        let us2 = c.mul(&us, &us);
        let vp = c.add(v, &s(&self.p));
        // x = (2p(v + p) + a1 u)/u^2
        let xnum = c.add(
            &c.mul(&s(&kt.mul(&two, &self.p)), &vp),
            &c.mul(&s(&self.a[0]), &us),
        );
        let x = c.div(&xnum, &us2)?;
        // y = (4p^2(v + p) + 2p(a2 u^2 + a1 u) - a1^2 u^2/(2p))/u^3
        let p2 = kt.mul(&self.p, &self.p);
        let t1 = c.mul(&s(&kt.mul(&kt.from_i64(4), &p2)), &vp);
        let inner = c.add(&c.mul(&s(&self.a[1]), &us2), &c.mul(&s(&self.a[0]), &us));
        let t2 = c.mul(&s(&kt.mul(&two, &self.p)), &inner);
        let coef = kt.div(&kt.mul(&self.a[0], &self.a[0]), &kt.mul(&two, &self.p))?;
        let t3 = c.mul(&s(&coef), &us2);
        let ynum = c.sub(&c.add(&t1, &t2), &t3);
        let y = c.div(&ynum, &c.mul(&us2, &us))?;
        // long to short: xi = x + b2/12, eta = y + (a1l x + a3l)/2
        let twelve = kt.from_i64(12);
        let xi = c.add(&x, &s(&kt.div(&self.b2, &twelve)?));
        let half = kt.div(&kt.one(), &two)?;
        let eta = c.add(
            &y,
            &c.mul(&s(&half), &c.add(&c.mul(&s(&self.a1l), &x), &s(&self.a3l))),
        );
        Ok((xi, eta))
    }

    /// Backward coordinate map: (xi, eta) on the short model -> (u, v).
    pub fn backward(
        &self,
        c: &CurveField<F>,
        xi: &CurveElem<F::Elem>,
        eta: &CurveElem<F::Elem>,
    ) -> Result<(CurveElem<F::Elem>, CurveElem<F::Elem>)> {
        let s = |r: &RatFunc<F::Elem>| c.scalar_t(r.clone());
        let kt = &c.kt;
        let two = kt.from_i64(2);
        let twelve = kt.from_i64(12);
        // short to long
        let x = c.sub(xi, &s(&kt.div(&self.b2, &twelve)?));
        let half = kt.div(&kt.one(), &two)?;
        let y = c.sub(
            eta,
            &c.mul(&s(&half), &c.add(&c.mul(&s(&self.a1l), &x), &s(&self.a3l))),
        );
        // u = 2p(x + A2)/y, with A2 = a2 - a1^2/(4p^2)
        let xa2 = c.add(&x, &s(&self.a2l));
        let us = c.div(&c.mul(&s(&kt.mul(&two, &self.p)), &xa2), &y)?;
        // v from x: v = x u^2/(2p) - p - a1 u/(2p)
        let us2 = c.mul(&us, &us);
        let inv2p = kt.div(&kt.one(), &kt.mul(&two, &self.p))?;
        let v = c.sub(
            &c.sub(
                &c.mul(&s(&inv2p), &c.mul(&x, &us2)),
                &s(&self.p),
            ),
            &c.mul(&s(&kt.mul(&inv2p, &self.a[0])), &us),
        );
        let u = c.add(&us, &s(&self.u0));
        Ok((u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactcore::field::{rat_i64, Fp, QQ};

    #[test]
    fn e1_quartic_model() {
        // v^2 = u^4 + t^8 - 1 with point (1, t^4)
        let mut c0 = vec![rat_i64(-1)];
        c0.resize(9, rat_i64(0));
        c0[8] = rat_i64(1);
        let q = vec![c0, vec![], vec![], vec![], vec![rat_i64(1)]];
        let kt = RatFuncField::new(QQ);
        let u0 = kt.from_poly(vec![rat_i64(1)]);
        let mut t4 = vec![rat_i64(0); 5];
        t4[4] = rat_i64(1);
        let v0 = kt.from_poly(t4);
        let tr = quartic_to_weierstrass(QQ, &q, u0, v0).unwrap();
        // model is y^2 = x^3 + 4(1 - t^8) x: same j as E1 (1728), related by u^4 = 4
        assert!(tr.model.b.is_empty());
        let mut want = vec![rat_i64(4)];
        want.resize(9, rat_i64(0));
        want[8] = rat_i64(-4);
        assert_eq!(tr.model.a, want);
    }

    #[test]
    fn forward_backward_roundtrip() {
        // over F_113 to keep the tower arithmetic light
        let f = Fp::new(113).unwrap();
        let mut c0 = vec![112u64];
        c0.resize(9, 0);
        c0[8] = 1;
        let q = vec![c0.clone(), vec![], vec![], vec![], vec![1]];
        let kt = RatFuncField::new(f.clone());
        let u0 = kt.from_poly(vec![1]);
        let mut t4 = vec![0u64; 5];
        t4[4] = 1;
        let v0 = kt.from_poly(t4);
        let tr = quartic_to_weierstrass(f.clone(), &q, u0, v0).unwrap();
        // quartic double cover: y plays v, x plays u
        let qk: Vec<_> = q.iter().map(|c| kt.from_poly(c.clone())).collect();
        let cq = CurveField::with_rhs(f.clone(), qk);
        let (xi, eta) = tr.forward(&cq, &cq.x(), &cq.y()).unwrap();
        // (xi, eta) satisfies the short equation inside the quartic field
        let a_el = cq.scalar_t(cq.kt.from_poly(tr.model.a.clone()));
        let xi3 = cq.mul(&cq.mul(&xi, &xi), &xi);
        let rhs = cq.add(&xi3, &cq.mul(&a_el, &xi));
        assert!(cq.is_zero(&cq.sub(&cq.mul(&eta, &eta), &rhs)));
        // backward o forward = identity
        let (u, v) = tr.backward(&cq, &xi, &eta).unwrap();
        assert_eq!(u, cq.x());
        assert_eq!(v, cq.y());
    }

    #[test]
    fn point_off_curve_rejected() {
        let q = vec![vec![rat_i64(1)], vec![], vec![], vec![], vec![rat_i64(1)]];
        let kt = RatFuncField::new(QQ);
        let u0 = kt.from_poly(vec![rat_i64(0)]);
        let v0 = kt.from_poly(vec![rat_i64(2)]);
        assert!(matches!(
            quartic_to_weierstrass(QQ, &q, u0, v0),
            Err(Error::PointNotOnCurve)
        ));
        // v^2 = u^4 + 1 with (0,1): j = 1728 result
        let u0 = kt.from_poly(vec![rat_i64(0)]);
        let v0 = kt.from_poly(vec![rat_i64(1)]);
        let tr = quartic_to_weierstrass(QQ, &q, u0, v0).unwrap();
        assert!(tr.model.b.is_empty());
        assert!(!tr.model.a.is_empty());
    }

    #[test]
    fn zeta8_base_change_is_admissible() {
        let f = Fp::new(113).unwrap();
        let w = WeierstrassModel::new(f.clone(), vec![1, 0, 0, 0, 0, 0, 0, 0, 112], vec![])
            .unwrap();
        // critical values: 8th roots of unity
        let roots: Vec<u64> = (0..113).filter(|&z| f.pow_u(z, 8) == 1).collect();
        let crit: Vec<P1<u64>> = roots.iter().map(|&z| P1::Finite(z)).collect();
        let mus = admissible_moebius(&f, &crit, &crit).unwrap();
        // the stabilizer of mu_8 in PGL_2 contains at least t -> zeta t and t -> 1/t
        assert!(mus.len() >= 16);
        // zeta_8 = a generator of the order-8 subgroup
        let zeta = roots.iter().copied().find(|&z| f.pow_u(z, 4) == 112).unwrap();
        let mu = MoebiusMap::new(&f, zeta, 0, 0, 1).unwrap();
        assert!(mus.contains(&mu.normalized(&f)));
        // it lifts: base change is isomorphic with u = 1
        let wb = base_change(&w, &mu).unwrap();
        let fourth = |c: &u64| (0..113u64).find(|&x| f.pow_u(x, 4) == *c);
        let iso = weierstrass_isomorphism(&wb, &w, &fourth).unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn four_fiber_automorphisms_f113() {
        let f = Fp::new(113).unwrap();
        let w = WeierstrassModel::new(f.clone(), vec![1, 0, 0, 0, 0, 0, 0, 0, 112], vec![])
            .unwrap();
        let i = (0..113u64).find(|&x| f.pow_u(x, 2) == 112).unwrap();
        let auts = generic_fiber_automorphisms(&w, &[i, f.neg(&i)]).unwrap();
        assert_eq!(auts.len(), 4);
    }

    #[test]
    fn quartic_model_same_j() {
        // v^2 = u^4 + t^8 - 1 over QQ: transformed model has j = 1728 like E1
        let mut c0 = vec![rat_i64(-1)];
        c0.resize(9, rat_i64(0));
        c0[8] = rat_i64(1);
        let q = vec![c0, vec![], vec![], vec![], vec![rat_i64(1)]];
        let kt = RatFuncField::new(QQ);
        let u0 = kt.from_poly(vec![rat_i64(1)]);
        let mut t4 = vec![rat_i64(0); 5];
        t4[4] = rat_i64(1);
        let v0 = kt.from_poly(t4);
        let tr = quartic_to_weierstrass(QQ, &q, u0, v0).unwrap();
        let inv = crate::model::model_invariants(&tr.model).unwrap();
        let mut e1a = vec![rat_i64(1)];
        e1a.resize(9, rat_i64(0));
        e1a[8] = rat_i64(-1);
        let e1 = WeierstrassModel::new(QQ, e1a, vec![]).unwrap();
        let inv1 = crate::model::model_invariants(&e1).unwrap();
        assert_eq!(inv.j, inv1.j);
    }
}
