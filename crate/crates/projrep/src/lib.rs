//! Finite projective matrix groups over cyclotomic number fields: closure,
//! order, center, relative invariants, and exact symbolic identities for the
//! quadric cover construction.

use exactcore::field::Rational;
use exactcore::matrix::{self, Mat};
use exactcore::multipoly::{self, MultiPolyLite};
use exactcore::numberfield::NumberField;
use exactcore::FieldOps;

pub type KElem = Vec<Rational>;
pub type KPoly = MultiPolyLite<KElem>;
pub type KMat = Mat<KElem>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    ClosureCapExceeded,
    NonHomogeneous,
    NotInvertible,
    NotRelativeInvariant,
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
            Error::ClosureCapExceeded => write!(f, "projective closure exceeded the element cap"),
            Error::NonHomogeneous => write!(f, "polynomial is not homogeneous"),
            Error::NotInvertible => write!(f, "generator matrix is singular"),
            Error::NotRelativeInvariant => {
                write!(f, "polynomial is not preserved up to scaling")
            }
            Error::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

pub const CLOSURE_CAP: usize = 100_000;

/// Scales a matrix so its first nonzero entry in row-major order is 1; the
/// canonical representative of the projective class.
pub fn proj_normalize(k: &NumberField, m: &KMat) -> KMat {
    for i in 0..m.rows {
        for j in 0..m.cols {
            let c = m.at(i, j);
            if !k.is_zero(c) {
                let inv = k.inv(c).expect("nonzero entry");
                let rows: Vec<Vec<KElem>> = (0..m.rows)
                    .map(|r| (0..m.cols).map(|s| k.mul(m.at(r, s), &inv)).collect())
                    .collect();
                return Mat::from_rows(rows).expect("same shape");
            }
        }
    }
    m.clone()
}

/// A finite subgroup of PGL(n) over a number field, stored as the full list
/// of normalized representatives.
pub struct ProjMatrixGroup {
    pub base: NumberField,
    pub gens: Vec<KMat>,
    pub elements: Vec<KMat>,
}

impl ProjMatrixGroup {
    /// Breadth-first closure under multiplication with projective
    /// normalization; errors once the cap is exceeded.
    pub fn closure(base: NumberField, gens: Vec<KMat>) -> Result<ProjMatrixGroup> {
        let n = gens.first().map_or(1, |g| g.rows);
        for g in &gens {
            if matrix::solve_or_invert(&base, g, None).is_err() {
                return Err(Error::NotInvertible);
            }
        }
        let id = matrix::identity(&base, n);
        let mut elements = vec![proj_normalize(&base, &id)];
        let ngens: Vec<KMat> = gens.iter().map(|g| proj_normalize(&base, g)).collect();
        let mut frontier: Vec<KMat> = Vec::new();
        for g in &ngens {
            if !elements.contains(g) {
                elements.push(g.clone());
                frontier.push(g.clone());
            }
        }
        while let Some(m) = frontier.pop() {
            for g in &ngens {
                let prod = proj_normalize(&base, &matrix::mul(&base, &m, g)?);
                if !elements.contains(&prod) {
                    if elements.len() >= CLOSURE_CAP {
                        return Err(Error::ClosureCapExceeded);
                    }
                    elements.push(prod.clone());
                    frontier.push(prod);
                }
            }
        }
        Ok(ProjMatrixGroup { base, gens, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &KMat) -> bool {
        self.elements.contains(&proj_normalize(&self.base, m))
    }

    /// Elements commuting projectively with every group element.
    pub fn center(&self) -> Vec<KMat> {
        let k = &self.base;
        self.elements
            .iter()
            .filter(|z| {
                self.elements.iter().all(|g| {
                    let zg = proj_normalize(k, &matrix::mul(k, z, g).expect("square"));
                    let gz = proj_normalize(k, &matrix::mul(k, g, z).expect("square"));
                    zg == gz
                })
            })
            .cloned()
            .collect()
    }
}

/// Order 128 image of the group acting on the quadric cover: generators over
/// Q(zeta_8), row-vector action.
pub fn standard_generators(k: &NumberField) -> (KMat, KMat) {
    let z = k.gen();
    let z3 = k.mul(&k.mul(&z, &z), &z);
    let o = k.one();
    let zero = k.zero();
    let g1 = Mat::from_rows(vec![
        vec![zero.clone(), o.clone(), zero.clone(), zero.clone()],
        vec![k.neg(&o), zero.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), o.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), zero.clone(), k.neg(&o)],
    ])
    .expect("shape");
    let g2 = Mat::from_rows(vec![
        vec![zero.clone(), zero.clone(), o.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), zero.clone(), o.clone()],
        vec![z.clone(), zero.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), k.neg(&z3), zero.clone(), zero.clone()],
    ])
    .expect("shape");
    (g1, g2)
}

/// The two relative invariants: q = xy + zw and b = x^4 + y^4 - i z^4 - i w^4
/// with i = zeta_8^2.
pub fn invariant_q(k: &NumberField) -> KPoly {
    let mp = |e: &[u32], c: KElem| multipoly::term(k, 4, e, c).expect("arity");
    let q = mp(&[1, 1, 0, 0], k.one());
    multipoly::add(k, &q, &mp(&[0, 0, 1, 1], k.one())).expect("arity")
}

pub fn invariant_b(k: &NumberField) -> KPoly {
    let i = k.mul(&k.gen(), &k.gen());
    let mi = k.neg(&i);
    let mp = |e: &[u32], c: KElem| multipoly::term(k, 4, e, c).expect("arity");
    let mut b = mp(&[4, 0, 0, 0], k.one());
    for (e, c) in [
        ([0u32, 4, 0, 0], k.one()),
        ([0, 0, 4, 0], mi.clone()),
        ([0, 0, 0, 4], mi),
    ] {
        b = multipoly::add(k, &b, &mp(&e, c)).expect("arity");
    }
    b
}

/// For each generator g, finds chi(g) with poly . g = chi(g) * poly; fails if
/// any generator breaks the scaling, and cross-checks multiplicativity on all
/// generator pairs.
pub fn relative_invariant_character(
    k: &NumberField,
    poly: &KPoly,
    gens: &[KMat],
) -> Result<Vec<KElem>> {
    if !poly.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    let chi_of = |m: &KMat| -> Result<KElem> {
        let img = multipoly::act_by_matrix(k, poly, m)?;
        multipoly::scalar_ratio(k, poly, &img).ok_or(Error::NotRelativeInvariant)
    };
    let mut chis = Vec::with_capacity(gens.len());
    for g in gens {
        chis.push(chi_of(g)?);
    }
    // multiplicativity on a bounded sample of products
    let sample = gens.len().min(4);
    for (i, g) in gens.iter().take(sample).enumerate() {
        for (j, h) in gens.iter().take(sample).enumerate() {
            let gh = matrix::mul(k, g, h)?;
            let want = k.mul(&chis[i], &chis[j]);
            if chi_of(&gh)? != want {
                return Err(Error::NotRelativeInvariant);
            }
        }
    }
    Ok(chis)
}

/// Multiplicative order of a nonzero scalar, bounded probe; None when the
/// order exceeds the bound.
pub fn scalar_order(k: &NumberField, c: &KElem, bound: u32) -> Option<u32> {
    let mut acc = c.clone();
    for e in 1..=bound {
        if k.is_one(&acc) {
            return Some(e);
        }
        acc = k.mul(&acc, c);
    }
    None
}

/// Exact identities from the 2-form lemma and the tilted-diagonal splitting.
pub struct LemmaReport {
    pub pullback_identity: bool,
    pub form_scalar: KElem,
    pub form_scalar_order: Option<u32>,
    pub restriction_matches: bool,
    pub discriminant_matches: bool,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.pullback_identity
            && self.form_scalar_order == Some(8)
            && self.restriction_matches
            && self.discriminant_matches
    }
}

/// Verifies, over Q(zeta_8):
/// - substituting (t, v) -> (1/(zeta_8 t), zeta_8^3 v) into
///   f = 1 + t^4 v^4 - i t^4 - i v^4 gives i t^-4 f (cleared of denominators);
/// - the induced scalar on the 2-form line is -zeta_8, of order 8;
/// - b restricted to the tilted diagonal (x, y, z, w) = (s^2, a t^2, s t, -a s t)
///   equals s^8 - i (a^4 + 1) s^4 t^4 + a^4 t^8, whose discriminant as a
///   quadratic in (s^4, t^4) recovers a^8 + 6 a^4 + 1.
pub fn lemma_identity_check(k: &NumberField) -> Result<LemmaReport> {
    let z = k.gen();
    let i = k.mul(&z, &z);
    let zinv = k.inv(&z).map_err(|_| Error::NotInvertible)?;
    let z3 = k.mul(&i, &z);

    // f in variables (t, v)
    let mp2 = |e: &[u32], c: KElem| multipoly::term(k, 2, e, c).expect("arity");
    let mut f = mp2(&[0, 0], k.one());
    for (e, c) in [
        ([4u32, 4], k.one()),
        ([4, 0], k.neg(&i)),
        ([0, 4], k.neg(&i)),
    ] {
        f = multipoly::add(k, &f, &mp2(&e, c)).expect("arity");
    }
    // t^4 * f(1/(zeta_8 t), zeta_8^3 v): monomial t^a v^b picks up
    // zeta_8^(3b - a) and lands on t^(4 - a) v^b
    let mut lhs = MultiPolyLite::zero(2);
    for (e, c) in &f.terms {
        let (a, b) = (e[0], e[1]);
        let mut coeff = c.clone();
        for _ in 0..a {
            coeff = k.mul(&coeff, &zinv);
        }
        for _ in 0..b {
            coeff = k.mul(&coeff, &z3);
        }
        lhs = multipoly::add(k, &lhs, &mp2(&[4 - a, b], coeff)).expect("arity");
    }
    let rhs = multipoly::scale(k, &f, &i);
    let pullback_identity = lhs == rhs;

    // 2-form scalar: (1/zeta_8) from the lambda factor, (-1/zeta_8) from dt,
    // zeta_8^3 from dv
    let form_scalar = k.mul(&k.mul(&zinv, &k.neg(&zinv)), &z3);
    let form_scalar_order = scalar_order(k, &form_scalar, 16);

    // tilted diagonal in variables (s, t, a)
    let mp3 = |e: &[u32], c: KElem| multipoly::term(k, 3, e, c).expect("arity");
    let subs = vec![
        mp3(&[2, 0, 0], k.one()),
        mp3(&[0, 2, 1], k.one()),
        mp3(&[1, 1, 0], k.one()),
        mp3(&[1, 1, 1], k.neg(&k.one())),
    ];
    let b = invariant_b(k);
    let restricted = multipoly::substitute(k, &b, &subs)?;
    let mut expected = mp3(&[8, 0, 0], k.one());
    for (e, c) in [
        ([4u32, 4, 4], k.neg(&i)),
        ([4, 4, 0], k.neg(&i)),
        ([0, 8, 4], k.one()),
    ] {
        expected = multipoly::add(k, &expected, &mp3(&e, c))?;
    }
    let restriction_matches = restricted == expected;

    // quadratic in (s^4, t^4): c0 s^8 + c1 s^4 t^4 + c2 t^8 with coefficients
    // in a; then (i c1)^2 + 4 c0 c2 = a^8 + 6 a^4 + 1
    let coeff_at = |ps: u32, pt: u32| -> KPoly {
        let mut out = MultiPolyLite::zero(3);
        for (e, c) in &restricted.terms {
            if e[0] == ps && e[1] == pt {
                out = multipoly::add(k, &out, &mp3(&[0, 0, e[2]], c.clone())).expect("arity");
            }
        }
        out
    };
    let c0 = coeff_at(8, 0);
    let c1 = coeff_at(4, 4);
    let c2 = coeff_at(0, 8);
    let ic1 = multipoly::scale(k, &c1, &i);
    let disc = multipoly::add(
        k,
        &multipoly::mul(k, &ic1, &ic1)?,
        &multipoly::scale(k, &multipoly::mul(k, &c0, &c2)?, &k.from_i64(4)),
    )?;
    let mut want = mp3(&[0, 0, 8], k.one());
    want = multipoly::add(k, &want, &mp3(&[0, 0, 4], k.from_i64(6)))?;
    want = multipoly::add(k, &want, &mp3(&[0, 0, 0], k.one()))?;
    let discriminant_matches = disc == want;

    Ok(LemmaReport {
        pullback_identity,
        form_scalar,
        form_scalar_order,
        restriction_matches,
        discriminant_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k8() -> NumberField {
        NumberField::q_zeta8()
    }

    #[test]
    fn identity_group_has_order_one() {
        let k = k8();
        let g = ProjMatrixGroup::closure(k.clone(), vec![matrix::identity(&k, 4)]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn group_order_and_center() {
        let k = k8();
        let (g1, g2) = standard_generators(&k);
        let g = ProjMatrixGroup::closure(k.clone(), vec![g1.clone(), g2]).unwrap();
        assert_eq!(g.order(), 128);
        let c = g.center();
        assert_eq!(c.len(), 2);
        let g1sq = matrix::mul(&k, &g1, &g1).unwrap();
        assert!(c.contains(&proj_normalize(&k, &g1sq)));
        assert!(c.contains(&proj_normalize(&k, &matrix::identity(&k, 4))));
    }

    #[test]
    fn characters_of_q_and_b() {
        let k = k8();
        let (g1, g2) = standard_generators(&k);
        let gens = [g1, g2];
        let q = invariant_q(&k);
        let chi_q = relative_invariant_character(&k, &q, &gens).unwrap();
        assert_eq!(chi_q[0], k.from_i64(-1));
        let b = invariant_b(&k);
        let chi_b = relative_invariant_character(&k, &b, &gens).unwrap();
        assert!(k.is_one(&chi_b[0]));
        for chi in chi_q.iter().chain(&chi_b) {
            assert!(scalar_order(&k, chi, 16).is_some());
        }
    }

    #[test]
    fn invariant_under_full_group() {
        let k = k8();
        let (g1, g2) = standard_generators(&k);
        let g = ProjMatrixGroup::closure(k.clone(), vec![g1, g2]).unwrap();
        let q = invariant_q(&k);
        let b = invariant_b(&k);
        assert!(relative_invariant_character(&k, &q, &g.elements).is_ok());
        assert!(relative_invariant_character(&k, &b, &g.elements).is_ok());
    }

    #[test]
    fn non_homogeneous_rejected() {
        let k = k8();
        let (g1, _) = standard_generators(&k);
        let p = multipoly::add(
            &k,
            &multipoly::term(&k, 4, &[1, 0, 0, 0], k.one()).unwrap(),
            &multipoly::term(&k, 4, &[2, 0, 0, 0], k.one()).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            relative_invariant_character(&k, &p, &[g1]),
            Err(Error::NonHomogeneous)
        ));
    }

    #[test]
    fn lemma_identities_hold() {
        let k = k8();
        let rep = lemma_identity_check(&k).unwrap();
        assert!(rep.pullback_identity);
        assert!(rep.restriction_matches);
        assert!(rep.discriminant_matches);
        // scalar is -zeta_8
        assert_eq!(rep.form_scalar, k.neg(&k.gen()));
        assert_eq!(rep.form_scalar_order, Some(8));
        assert!(rep.all_hold());
    }
}
