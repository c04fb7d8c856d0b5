//! Reduction of number-field data, Weierstrass models, and sections to a
//! prime finite field along a degree-1 place, with good-reduction guards and
//! equivariance checks across the reduction.

use ellsurf::{
    fiber_configuration, ns_gram_assemble, KodairaType, NSBasisSpec, SurfaceSection,
    WeierstrassModel,
};
use exactcore::field::{Fp, Rational, QQ};
use exactcore::matrix::Mat;
use exactcore::numberfield::NumberField;
use exactcore::poly::{self, Poly};
use exactcore::ratfunc::RatFunc;
use exactcore::FieldOps;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NoDegreeOnePlace,
    NotAdmissible,
    NotARoot,
    Surface(ellsurf::Error),
    Core(exactcore::Error),
}

impl From<ellsurf::Error> for Error {
    fn from(e: ellsurf::Error) -> Self {
        Error::Surface(e)
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
            Error::NoDegreeOnePlace => write!(f, "minimal polynomial has no root mod p"),
            Error::NotAdmissible => write!(f, "denominator lies in the place"),
            Error::NotARoot => write!(f, "value is not a simple root of the minimal polynomial"),
            Error::Surface(e) => write!(f, "{e}"),
            Error::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

/// A degree-1 place of a number field over an odd prime p, given by a simple
/// root of the minimal polynomial mod p. Reduction sends alpha to the root.
#[derive(Clone)]
pub struct ReductionMap {
    pub field: NumberField,
    pub fp: Fp,
    pub root: u64,
}

impl ReductionMap {
    pub fn new(field: NumberField, p: u64, root: u64) -> Result<ReductionMap> {
        if p == 2 {
            return Err(Error::NoDegreeOnePlace);
        }
        let fp = Fp::new(p).map_err(Error::Core)?;
        let m = reduce_minpoly(&field, &fp)?;
        let root = root % p;
        if !fp.is_zero(&poly::eval(&fp, &m, &root)) {
            return Err(Error::NotARoot);
        }
        let dm = poly::derivative(&fp, &m);
        if fp.is_zero(&poly::eval(&fp, &dm, &root)) {
            return Err(Error::NotARoot);
        }
        Ok(ReductionMap { field, fp, root })
    }

    pub fn p(&self) -> u64 {
        self.fp.p()
    }

    /// p/q with q a unit at the place.
    pub fn reduce_rational(&self, q: &Rational) -> Result<u64> {
        self.fp.elem_from_rational(q).map_err(|_| Error::NotAdmissible)
    }

    /// Number-field element, alpha evaluated at the root.
    pub fn reduce_scalar(&self, a: &[Rational]) -> Result<u64> {
        let mut acc = 0u64;
        for c in a.iter().rev() {
            let r = self.reduce_rational(c)?;
            acc = self.fp.add(&self.fp.mul(&acc, &self.root), &r);
        }
        Ok(acc)
    }

    /// Univariate polynomial over the field; trailing zeros trimmed.
    pub fn reduce_poly(&self, f: &Poly<Vec<Rational>>) -> Result<Poly<u64>> {
        let mut out = Vec::with_capacity(f.len());
        for c in f {
            out.push(self.reduce_scalar(c)?);
        }
        poly::trim(&self.fp, &mut out);
        Ok(out)
    }

    /// Rational function; the denominator must stay nonzero.
    pub fn reduce_ratfunc(&self, f: &RatFunc<Vec<Rational>>) -> Result<RatFunc<u64>> {
        let num = self.reduce_poly(&f.num)?;
        let den = self.reduce_poly(&f.den)?;
        if den.is_empty() {
            return Err(Error::NotAdmissible);
        }
        let kt = exactcore::ratfunc::RatFuncField::new(self.fp.clone());
        kt.make(num, den).map_err(Error::Core)
    }

    /// Weierstrass model; the reduced discriminant must not vanish.
    pub fn reduce_model(&self, w: &WeierstrassModel<NumberField>) -> Result<WeierstrassModel<Fp>> {
        let a = self.reduce_poly(&w.a)?;
        let b = self.reduce_poly(&w.b)?;
        WeierstrassModel::new(self.fp.clone(), a, b).map_err(Error::Surface)
    }

    /// Section with polynomial coordinates; checked on the reduced curve.
    pub fn reduce_section(
        &self,
        wbar: &WeierstrassModel<Fp>,
        s: &SurfaceSection<Vec<Rational>>,
    ) -> Result<SurfaceSection<u64>> {
        match s {
            SurfaceSection::Zero => Ok(SurfaceSection::Zero),
            SurfaceSection::Point { x, y } => {
                let sx = self.reduce_ratfunc(x)?;
                let sy = self.reduce_ratfunc(y)?;
                let img = SurfaceSection::Point { x: sx, y: sy };
                if !ellsurf::is_on_curve(wbar, &img) {
                    return Err(Error::Surface(ellsurf::Error::NotOnCurve));
                }
                Ok(img)
            }
        }
    }
}

fn reduce_minpoly(field: &NumberField, fp: &Fp) -> Result<Poly<u64>> {
    let mut m = Vec::new();
    for c in field.minpoly() {
        m.push(fp.elem_from_rational(c).map_err(|_| Error::NotAdmissible)?);
    }
    poly::trim(fp, &mut m);
    if m.len() != field.degree() + 1 {
        return Err(Error::NotAdmissible);
    }
    Ok(m)
}

/// Degree-1 place over p with the smallest simple root of the minimal
/// polynomial (canonical choice).
pub fn find_degree_one_place(k: &NumberField, p: u64) -> Result<ReductionMap> {
    if p == 2 {
        return Err(Error::NoDegreeOnePlace);
    }
    let fp = Fp::new(p).map_err(Error::Core)?;
    let m = reduce_minpoly(k, &fp)?;
    let dm = poly::derivative(&fp, &m);
    for r in 0..p {
        if fp.is_zero(&poly::eval(&fp, &m, &r)) && !fp.is_zero(&poly::eval(&fp, &dm, &r)) {
            return ReductionMap::new(k.clone(), p, r);
        }
    }
    Err(Error::NoDegreeOnePlace)
}

/// Entrywise comparison of the geometry computed over the number field and
/// over the residue field: fiber types at matched places, the full Gram
/// matrix of the standard basis, and pairwise section intersections (the
/// latter are entries of the Gram).
pub struct EquivarianceReport {
    pub fiber_types: Vec<(KodairaType, KodairaType)>,
    pub fibers_match: bool,
    pub gram_k: Mat<Rational>,
    pub gram_p: Mat<Rational>,
    pub gram_match: bool,
}

impl EquivarianceReport {
    pub fn all_match(&self) -> bool {
        self.fibers_match && self.gram_match
    }
}

pub fn equivariance_check(
    w: &WeierstrassModel<NumberField>,
    basis: &NSBasisSpec<Vec<Rational>>,
    map: &ReductionMap,
) -> Result<EquivarianceReport> {
    let wbar = map.reduce_model(w)?;
    let mut places_p = Vec::with_capacity(basis.places.len());
    for c in &basis.places {
        places_p.push(map.reduce_scalar(c)?);
    }
    // reduced place labels must stay distinct for the label bijection
    for i in 0..places_p.len() {
        for j in 0..i {
            if places_p[i] == places_p[j] {
                return Err(Error::NotAdmissible);
            }
        }
    }
    let mut sections_p = Vec::with_capacity(basis.sections.len());
    for s in &basis.sections {
        sections_p.push(map.reduce_section(&wbar, s)?);
    }
    let basis_p = NSBasisSpec { places: places_p.clone(), sections: sections_p };

    let cfg_k = fiber_configuration(w, &basis.places)?;
    let cfg_p = fiber_configuration(&wbar, &places_p)?;
    let mut fiber_types = Vec::new();
    let mut fibers_match = cfg_k.fibers.len() == cfg_p.fibers.len();
    for (a, b) in cfg_k.fibers.iter().zip(&cfg_p.fibers) {
        fibers_match &= a.kodaira == b.kodaira;
        fiber_types.push((a.kodaira.clone(), b.kodaira.clone()));
    }

    let gram_k = ns_gram_assemble(w, basis)?;
    let gram_p = ns_gram_assemble(&wbar, &basis_p)?;
    let gram_match = gram_k == gram_p;
    Ok(EquivarianceReport { fiber_types, fibers_match, gram_k, gram_p, gram_match })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactcore::field::{rat, rat_i64};

    fn k() -> NumberField {
        NumberField::k_alpha()
    }

    #[test]
    fn canonical_place_over_113() {
        let m = find_degree_one_place(&k(), 113).unwrap();
        assert_eq!(m.root, 21);
        let m43 = ReductionMap::new(k(), 113, 43).unwrap();
        assert_eq!(m43.root, 43);
    }

    #[test]
    fn place_over_41_exists() {
        assert!(find_degree_one_place(&k(), 41).is_ok());
    }

    #[test]
    fn no_place_for_gaussian_over_3() {
        let qi = NumberField::new(vec![rat_i64(1), rat_i64(0), rat_i64(1)]).unwrap();
        assert!(matches!(find_degree_one_place(&qi, 3), Err(Error::NoDegreeOnePlace)));
    }

    #[test]
    fn denominator_in_place_rejected() {
        let m = ReductionMap::new(k(), 113, 43).unwrap();
        assert_eq!(m.reduce_rational(&rat(1, 113)), Err(Error::NotAdmissible));
        assert_eq!(m.reduce_rational(&rat(113, 5)), Ok(0));
    }

    #[test]
    fn sqrt2_reduces_to_sqrt2() {
        let kk = k();
        let m = ReductionMap::new(kk.clone(), 113, 43).unwrap();
        // sqrt(2) = (alpha^4 + 3)/2
        let s = kk.elem(&[rat(3, 2), rat_i64(0), rat_i64(0), rat_i64(0), rat(1, 2)]);
        let r = m.reduce_scalar(&s).unwrap();
        assert_eq!(m.fp.mul(&r, &r), 2);
    }

    #[test]
    fn homomorphism_on_random_elements() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let kk = k();
        let m = ReductionMap::new(kk.clone(), 113, 43).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let a: Vec<Rational> =
                (0..8).map(|_| rat_i64(rng.random_range(-50..50))).collect();
            let b: Vec<Rational> =
                (0..8).map(|_| rat_i64(rng.random_range(-50..50))).collect();
            let lhs = m.reduce_scalar(&kk.mul(&a, &b)).unwrap();
            let rhs = m.fp.mul(&m.reduce_scalar(&a).unwrap(), &m.reduce_scalar(&b).unwrap());
            assert_eq!(lhs, rhs);
            let lhs = m.reduce_scalar(&kk.add(&a, &b)).unwrap();
            let rhs = m.fp.add(&m.reduce_scalar(&a).unwrap(), &m.reduce_scalar(&b).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    fn kel(kk: &NumberField, terms: &[(i64, i64, usize)]) -> Vec<Rational> {
        let mut v = kk.zero();
        for &(n, d, e) in terms {
            v[e] = &v[e] + rat(n, d);
        }
        v
    }

    #[test]
    fn equivariance_on_sparse_sections() {
        let kk = k();
        let mut a = vec![kk.one()];
        a.resize(9, kk.zero());
        a[8] = kk.from_i64(-1);
        let w = WeierstrassModel::new(kk.clone(), a, vec![]).unwrap();
        // the eight 8th roots of unity in K as place labels
        let places = vec![
            kk.from_i64(-1),
            kel(&kk, &[(-1, 4, 6), (-1, 4, 4), (-7, 4, 2), (-3, 4, 0)]),
            kel(&kk, &[(1, 4, 6), (-1, 4, 4), (7, 4, 2), (-3, 4, 0)]),
            kel(&kk, &[(-1, 2, 6), (-5, 2, 2)]),
            kel(&kk, &[(1, 2, 6), (5, 2, 2)]),
            kel(&kk, &[(-1, 4, 6), (1, 4, 4), (-7, 4, 2), (3, 4, 0)]),
            kel(&kk, &[(1, 4, 6), (1, 4, 4), (7, 4, 2), (3, 4, 0)]),
            kk.one(),
        ];
        // two sparse sections on y^2 = x^3 + (1 - t^8) x
        let c1 = kel(&kk, &[(1, 2, 6), (7, 2, 2)]);
        let s3 = ellsurf::section_from_polys(
            &w,
            vec![kk.from_i64(-1), kk.zero(), kk.zero(), kk.zero(), kk.one()],
            vec![c1.clone(), kk.zero(), kk.zero(), kk.zero(), kk.neg(&c1)],
        )
        .unwrap();
        let x0 = kel(&kk, &[(-1, 2, 4), (1, 1, 2), (-1, 2, 0)]);
        let s5 = ellsurf::section_from_polys(
            &w,
            vec![
                kel(&kk, &[(-1, 1, 2)]),
                kk.zero(),
                x0.clone(),
                kk.zero(),
                kel(&kk, &[(1, 2, 4), (1, 2, 0)]),
            ],
            vec![
                x0,
                kk.zero(),
                kel(&kk, &[(3, 2, 4), (1, 2, 0)]),
                kk.zero(),
                kel(&kk, &[(1, 2, 6), (-1, 1, 4), (1, 2, 2)]),
                kk.zero(),
                kel(&kk, &[(-1, 2, 6), (-3, 2, 2)]),
            ],
        )
        .unwrap();
        let basis = NSBasisSpec { places, sections: vec![s3, s5] };
        let m = ReductionMap::new(kk, 113, 43).unwrap();
        let rep = equivariance_check(&w, &basis, &m).unwrap();
        assert!(rep.fibers_match);
        assert!(rep.gram_match);
        assert!(rep.all_match());
        assert_eq!(rep.fiber_types.len(), 8);
        for (a, b) in &rep.fiber_types {
            assert_eq!(a, &KodairaType::III);
            assert_eq!(b, &KodairaType::III);
        }
        assert_eq!(rep.gram_k.rows, 12);
    }

    #[test]
    fn e1_model_reduces() {
        let kk = k();
        let mut a = vec![kk.one()];
        a.resize(9, kk.zero());
        a[8] = kk.from_i64(-1);
        let w = WeierstrassModel::new(kk.clone(), a, vec![]).unwrap();
        let m = ReductionMap::new(kk, 113, 43).unwrap();
        let wbar = m.reduce_model(&w).unwrap();
        assert_eq!(wbar.a, vec![1, 0, 0, 0, 0, 0, 0, 0, 112]);
        assert!(wbar.b.is_empty());
    }
}
