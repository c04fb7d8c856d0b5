//! Sections of the elliptic fibration as points of the generic fiber over
//! K(t): chord-tangent group law, translations, the base involution
//! eps: t -> -t, and two-torsion enumeration for A-only short forms.

use crate::model::WeierstrassModel;
use crate::{Error, Result};
use exactcore::field::FieldOps;
use exactcore::poly::{self, Poly};
use exactcore::ratfunc::RatFunc;

/// A section: the symbolic zero section, or an affine point with x, y in K(t).
#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceSection<E> {
    Zero,
    Point { x: RatFunc<E>, y: RatFunc<E> },
}

impl<E: Clone + PartialEq + std::fmt::Debug> SurfaceSection<E> {
    pub fn point(x: RatFunc<E>, y: RatFunc<E>) -> Self {
        SurfaceSection::Point { x, y }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SurfaceSection::Zero)
    }
}

/// Builds a section from polynomial coordinates and checks the curve equation.
pub fn section_from_polys<F: FieldOps>(
    w: &WeierstrassModel<F>,
    x: Poly<F::Elem>,
    y: Poly<F::Elem>,
) -> Result<SurfaceSection<F::Elem>> {
    let kt = w.function_field();
    let s = SurfaceSection::point(kt.from_poly(x), kt.from_poly(y));
    if !is_on_curve(w, &s) {
        return Err(Error::NotOnCurve);
    }
    Ok(s)
}

pub fn is_on_curve<F: FieldOps>(w: &WeierstrassModel<F>, s: &SurfaceSection<F::Elem>) -> bool {
    match s {
        SurfaceSection::Zero => true,
        SurfaceSection::Point { x, y } => {
            let kt = w.function_field();
            let lhs = kt.mul(y, y);
            kt.is_zero(&kt.sub(&lhs, &w.rhs_at(&kt, x)))
        }
    }
}

pub fn point_neg<F: FieldOps>(
    w: &WeierstrassModel<F>,
    s: &SurfaceSection<F::Elem>,
) -> SurfaceSection<F::Elem> {
    match s {
        SurfaceSection::Zero => SurfaceSection::Zero,
        SurfaceSection::Point { x, y } => {
            let kt = w.function_field();
            SurfaceSection::point(x.clone(), kt.neg(y))
        }
    }
}

/// Chord-tangent addition over K(t). Inputs are checked against the curve.
pub fn point_add<F: FieldOps>(
    w: &WeierstrassModel<F>,
    p: &SurfaceSection<F::Elem>,
    q: &SurfaceSection<F::Elem>,
) -> Result<SurfaceSection<F::Elem>> {
    if !is_on_curve(w, p) || !is_on_curve(w, q) {
        return Err(Error::NotOnCurve);
    }
    let kt = w.function_field();
    let (xp, yp) = match p {
        SurfaceSection::Zero => return Ok(q.clone()),
        SurfaceSection::Point { x, y } => (x, y),
    };
    let (xq, yq) = match q {
        SurfaceSection::Zero => return Ok(p.clone()),
        SurfaceSection::Point { x, y } => (x, y),
    };
    let lambda = if xp == xq {
        if kt.is_zero(&kt.add(yp, yq)) {
            // P + (-P) = O, including 2-torsion doubling
            return Ok(SurfaceSection::Zero);
        }
        // tangent: (3x^2 + A) / (2y)
        let a = kt.from_poly(w.a.clone());
        let num = kt.add(&kt.mul(&kt.from_i64(3), &kt.mul(xp, xp)), &a);
        kt.div(&num, &kt.mul(&kt.from_i64(2), yp))?
    } else {
        kt.div(&kt.sub(yq, yp), &kt.sub(xq, xp))?
    };
    let x3 = kt.sub(&kt.sub(&kt.mul(&lambda, &lambda), xp), xq);
    let y3 = kt.sub(&kt.mul(&lambda, &kt.sub(xp, &x3)), yp);
    Ok(SurfaceSection::point(x3, y3))
}

/// Translation by a fixed section as a map on sections: P -> P + Q.
pub fn translation_by<F: FieldOps>(
    w: &WeierstrassModel<F>,
    q: &SurfaceSection<F::Elem>,
    p: &SurfaceSection<F::Elem>,
) -> Result<SurfaceSection<F::Elem>> {
    point_add(w, p, q)
}

/// The base involution eps: t -> -t applied to both coordinates. The model
/// must be eps-stable (A(-t) = A(t), B(-t) = B(t)), which is checked.
pub fn section_eps<F: FieldOps>(
    w: &WeierstrassModel<F>,
    s: &SurfaceSection<F::Elem>,
) -> Result<SurfaceSection<F::Elem>> {
    let f = &w.field;
    let kt = w.function_field();
    let negt = kt.from_poly(vec![f.zero(), f.neg(&f.one())]);
    let stable = |c: &Poly<F::Elem>| {
        c.iter().enumerate().all(|(i, v)| i % 2 == 0 || f.is_zero(v))
    };
    if !stable(&w.a) || !stable(&w.b) {
        return Err(Error::UnsupportedForm);
    }
    match s {
        SurfaceSection::Zero => Ok(SurfaceSection::Zero),
        SurfaceSection::Point { x, y } => Ok(SurfaceSection::point(
            kt.compose(x, &negt).map_err(Error::Core)?,
            kt.compose(y, &negt).map_err(Error::Core)?,
        )),
    }
}

/// Square root of a polynomial, if any: p = s^2. `base_sqrt` supplies square
/// roots in the coefficient field; `None` is returned when p is not a square
/// (or cannot be certified as one without a base square root, in which case
/// the structural tests below have already ruled it out for odd degree and
/// nonsquare shapes).
fn poly_sqrt<F: FieldOps>(
    f: &F,
    p: &Poly<F::Elem>,
    base_sqrt: &dyn Fn(&F::Elem) -> Option<F::Elem>,
) -> Option<Poly<F::Elem>> {
    if p.is_empty() {
        return Some(vec![]);
    }
    let dp = poly::deg(p);
    if dp % 2 != 0 {
        return None;
    }
    let d = (dp / 2) as usize;
    let lead = base_sqrt(p.last().unwrap())?;
    let mut s = vec![f.zero(); d + 1];
    s[d] = lead;
    let twol_inv = f.inv(&f.mul(&f.from_i64(2), &s[d])).ok()?;
    for k in (0..d).rev() {
        // coefficient of t^(d+k) in s^2
        let mut acc = f.zero();
        for i in (k + 1)..d {
            let j = d + k - i;
            if j > k && j <= d {
                acc = f.add(&acc, &f.mul(&s[i], &s[j]));
            }
        }
        let target = p.get(d + k).cloned().unwrap_or_else(|| f.zero());
        s[k] = f.mul(&f.sub(&target, &acc), &twol_inv);
    }
    let sq = poly::mul(f, &s, &s);
    let mut pp = p.clone();
    poly::trim(f, &mut pp);
    if sq == pp {
        Some(s)
    } else {
        None
    }
}

/// Nontrivial 2-torsion sections of y^2 = x^3 + A x (B = 0 required): x = 0
/// always, plus (c, 0) and (-c, 0) when -A = c^2 in K[t]. `base_sqrt`
/// supplies square roots in K; it is only consulted when the structural shape
/// admits a square.
pub fn two_torsion<F: FieldOps>(
    w: &WeierstrassModel<F>,
    base_sqrt: &dyn Fn(&F::Elem) -> Option<F::Elem>,
) -> Result<Vec<SurfaceSection<F::Elem>>> {
    if !w.b.is_empty() {
        return Err(Error::UnsupportedForm);
    }
    let f = &w.field;
    let kt = w.function_field();
    let mut out = vec![SurfaceSection::point(kt.zero(), kt.zero())];
    let nega = poly::neg(f, &w.a);
    if let Some(c) = poly_sqrt(f, &nega, base_sqrt) {
        let cr = kt.from_poly(c);
        out.push(SurfaceSection::point(cr.clone(), kt.zero()));
        out.push(SurfaceSection::point(kt.neg(&cr), kt.zero()));
    }
    Ok(out)
}
