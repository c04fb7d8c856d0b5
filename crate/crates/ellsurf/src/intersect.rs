//! Intersection numbers of sections, Neron-Severi Gram assembly in the basis
//! (e, o, a_{1,1}..a_{1,m}, s_1..s_n), divisor classes, and pushforward
//! isometries of concrete automorphisms.

use crate::model::WeierstrassModel;
use crate::section::{is_on_curve, SurfaceSection};
use crate::{Error, Result};
use exactcore::field::{rat_i64, FieldOps, Rational, QQ};
use exactcore::matrix::{self, Mat};
use exactcore::poly::{self, Poly};
use exactcore::ratfunc::RatFunc;
use num_traits::{One, Zero};
use qlattice::{LatticeIsometry, QuadLattice};

/// Which component of a reducible fiber a section passes through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Identity,
    NonIdentity,
}

/// Ordered NS basis data: e, o, the non-identity components a_{1,i} at the
/// degree-1 places t = places[i], then the sections. All sections must have
/// polynomial coordinates with deg x <= 4, deg y <= 6.
#[derive(Debug, Clone)]
pub struct NSBasisSpec<E> {
    pub places: Vec<E>,
    pub sections: Vec<SurfaceSection<E>>,
}

impl<E> NSBasisSpec<E> {
    pub fn rank(&self) -> usize {
        2 + self.places.len() + self.sections.len()
    }
}

/// A divisor given either by a section or by a fiber component over
/// places[fiber_index].
#[derive(Debug, Clone)]
pub enum DivisorSpec<E> {
    Section(SurfaceSection<E>),
    FiberComponent { fiber_index: usize, identity: bool },
}

/// Extracts polynomial coordinates of a supported-shape section.
fn poly_coords<'a, F: FieldOps>(
    s: &'a SurfaceSection<F::Elem>,
) -> Result<(&'a Poly<F::Elem>, &'a Poly<F::Elem>)> {
    match s {
        SurfaceSection::Zero => Err(Error::UnsupportedSectionShape),
        SurfaceSection::Point { x, y } => {
            if x.den.len() != 1 || y.den.len() != 1 {
                return Err(Error::UnsupportedSectionShape);
            }
            if poly::deg(&x.num) > 4 || poly::deg(&y.num) > 6 {
                return Err(Error::UnsupportedSectionShape);
            }
            Ok((&x.num, &y.num))
        }
    }
}

/// x-coordinate of the singular point of the fiber at t = c (y is 0 there).
/// For a double root r of x^3 + ax + b one has a = -3r^2, b = 2r^3, so
/// r = -3b/(2a); when a = b = 0 the cusp sits at x = 0.
pub fn singular_x_at<F: FieldOps>(w: &WeierstrassModel<F>, c: &F::Elem) -> Result<F::Elem> {
    let f = &w.field;
    let ac = poly::eval(f, &w.a, c);
    let bc = poly::eval(f, &w.b, c);
    if f.is_zero(&ac) {
        if f.is_zero(&bc) {
            return Ok(f.zero());
        }
        // a = 0, b != 0: double root needs -4a^3 = 27b^2, impossible here
        return Err(Error::UnsupportedFiberType);
    }
    let num = f.mul(&f.from_i64(-3), &bc);
    f.div(&num, &f.mul(&f.from_i64(2), &ac)).map_err(Error::Core)
}

/// True when the section (rational coordinates) reduces to the singular point
/// of the fiber at t = c. A pole at c counts as missing the singular point.
fn passes_singular<F: FieldOps>(
    w: &WeierstrassModel<F>,
    x: &RatFunc<F::Elem>,
    y: &RatFunc<F::Elem>,
    c: &F::Elem,
) -> Result<bool> {
    let f = &w.field;
    let dxv = poly::eval(f, &x.den, c);
    let dyv = poly::eval(f, &y.den, c);
    if f.is_zero(&dxv) || f.is_zero(&dyv) {
        return Ok(false);
    }
    let xv = f.div(&poly::eval(f, &x.num, c), &dxv).map_err(Error::Core)?;
    let yv = f.div(&poly::eval(f, &y.num, c), &dyv).map_err(Error::Core)?;
    let x0 = singular_x_at(w, c)?;
    Ok(f.is_zero(&f.sub(&xv, &x0)) && f.is_zero(&yv))
}

/// Component of a supported-shape section at a reducible fiber of type I1,
/// I2 or III over a degree-1 place.
pub fn component_of_section_at<F: FieldOps>(
    w: &WeierstrassModel<F>,
    s: &SurfaceSection<F::Elem>,
    kodaira: crate::tate::KodairaType,
    c: &F::Elem,
) -> Result<Component> {
    use crate::tate::KodairaType as K;
    if !matches!(kodaira, K::I(1) | K::I(2) | K::III) {
        return Err(Error::UnsupportedFiberType);
    }
    let (x, y) = match s {
        SurfaceSection::Zero => return Ok(Component::Identity),
        SurfaceSection::Point { x, y } => (x, y),
    };
    let f = &w.field;
    if f.is_zero(&poly::eval(f, &x.den, c)) || f.is_zero(&poly::eval(f, &y.den, c)) {
        return Err(Error::PoleAtPlace);
    }
    Ok(if passes_singular(w, x, y, c)? {
        Component::NonIdentity
    } else {
        Component::Identity
    })
}

/// Valuation at s = 0 of a polynomial; None for the zero polynomial.
fn vs0<F: FieldOps>(f: &F, p: &Poly<F::Elem>) -> Option<i64> {
    p.iter().position(|c| !f.is_zero(c)).map(|v| v as i64)
}

/// s^w * n(1/s) / d(1/s) as a (num, den) pair of polynomials in s.
fn inf_rat<F: FieldOps>(
    f: &F,
    n: &Poly<F::Elem>,
    d: &Poly<F::Elem>,
    w: i64,
) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let shift = w - poly::deg(n) as i64 + poly::deg(d) as i64;
    let mut nn: Poly<F::Elem> = n.iter().rev().cloned().collect();
    let mut dd: Poly<F::Elem> = d.iter().rev().cloned().collect();
    if shift >= 0 {
        let mut padded = vec![f.zero(); shift as usize];
        padded.extend(nn);
        nn = padded;
    } else {
        let mut padded = vec![f.zero(); (-shift) as usize];
        padded.extend(dd);
        dd = padded;
    }
    poly::trim(f, &mut nn);
    poly::trim(f, &mut dd);
    (nn, dd)
}

/// Intersection number of a rational-coordinate section D with a
/// supported-shape section s_j: degree of gcd of the coordinate differences
/// (aggregating deg(place) * min-valuation over all finite coincidences),
/// plus the infinity-chart valuation, minus one for each fiber where both
/// pass through the singular point. Returns None when D equals s_j.
fn pair_with_section<F: FieldOps>(
    w: &WeierstrassModel<F>,
    sing_places: &[F::Elem],
    dx: &RatFunc<F::Elem>,
    dy: &RatFunc<F::Elem>,
    xj: &Poly<F::Elem>,
    yj: &Poly<F::Elem>,
) -> Result<Option<i64>> {
    let f = &w.field;
    let h1 = poly::sub(f, &dx.num, &poly::mul(f, xj, &dx.den));
    let h2 = poly::sub(f, &dy.num, &poly::mul(f, yj, &dy.den));
    if h1.is_empty() && h2.is_empty() {
        return Ok(None);
    }
    let g = poly::gcd(f, &h1, &h2);
    let fin = poly::deg(&g).max(0) as i64;
    // infinity chart: X = s^4 x(1/s), Y = s^6 y(1/s)
    let (nx_i, dx_i) = inf_rat(f, &dx.num, &dx.den, 4);
    let (ny_i, dy_i) = inf_rat(f, &dy.num, &dy.den, 6);
    let (xj_i, _) = inf_rat(f, xj, &vec![f.one()], 4);
    let (yj_i, _) = inf_rat(f, yj, &vec![f.one()], 6);
    let d1 = poly::sub(f, &nx_i, &poly::mul(f, &xj_i, &dx_i));
    let d2 = poly::sub(f, &ny_i, &poly::mul(f, &yj_i, &dy_i));
    let big = i64::MAX / 4;
    let v1 = vs0(f, &d1).unwrap_or(big) - vs0(f, &dx_i).unwrap_or(0);
    let v2 = vs0(f, &d2).unwrap_or(big) - vs0(f, &dy_i).unwrap_or(0);
    let inf = v1.min(v2);
    // blowup correction at shared singular passages
    let mut corr = 0i64;
    let one = vec![f.one()];
    for c in sing_places {
        let rxj = RatFunc { num: xj.clone(), den: one.clone() };
        let ryj = RatFunc { num: yj.clone(), den: one.clone() };
        if passes_singular(w, dx, dy, c)? && passes_singular(w, &rxj, &ryj, c)? {
            corr += 1;
        }
    }
    Ok(Some(fin + inf - corr))
}

/// P . Q for two distinct supported-shape sections.
pub fn section_intersections<F: FieldOps>(
    w: &WeierstrassModel<F>,
    sing_places: &[F::Elem],
    p: &SurfaceSection<F::Elem>,
    q: &SurfaceSection<F::Elem>,
) -> Result<i64> {
    let (xp, yp) = poly_coords::<F>(p)?;
    let (xq, yq) = poly_coords::<F>(q)?;
    let f = &w.field;
    let one = vec![f.one()];
    let dx = RatFunc { num: xp.clone(), den: one.clone() };
    let dy = RatFunc { num: yp.clone(), den: one };
    match pair_with_section(w, sing_places, &dx, &dy, xq, yq)? {
        Some(v) => Ok(v),
        None => Err(Error::IdenticalSections),
    }
}

/// P . O: pole count of x, i.e. deg(den x)/2 plus the infinity-chart pole
/// contribution max(0, deg x - 4)/2 (zero for the supported shape).
pub fn section_zero_intersection<F: FieldOps>(
    w: &WeierstrassModel<F>,
    p: &SurfaceSection<F::Elem>,
) -> Result<i64> {
    let _ = w;
    match p {
        SurfaceSection::Zero => Err(Error::IdenticalSections),
        SurfaceSection::Point { x, .. } => {
            let fin = poly::deg(&x.den).max(0) as i64 / 2;
            let inf = (poly::deg(&x.num) as i64 - poly::deg(&x.den) as i64 - 4).max(0) / 2;
            Ok(fin + inf)
        }
    }
}

/// The full pairing row (D.e, D.o, D.a_{1,i}.., D.s_j..) of a section D with
/// rational coordinates against the basis. D.s_j is -2 when D coincides with
/// s_j as a function.
fn pairing_row<F: FieldOps>(
    w: &WeierstrassModel<F>,
    basis: &NSBasisSpec<F::Elem>,
    dx: &RatFunc<F::Elem>,
    dy: &RatFunc<F::Elem>,
) -> Result<Vec<i64>> {
    let m = basis.places.len();
    let n = basis.sections.len();
    let mut row = vec![0i64; 2 + m + n];
    row[0] = 1;
    row[1] = poly::deg(&dx.den).max(0) as i64 / 2
        + (poly::deg(&dx.num) as i64 - poly::deg(&dx.den) as i64 - 4).max(0) / 2;
    for (k, c) in basis.places.iter().enumerate() {
        row[2 + k] = if passes_singular(w, dx, dy, c)? { 1 } else { 0 };
    }
    for (j, s) in basis.sections.iter().enumerate() {
        let (xj, yj) = poly_coords::<F>(s)?;
        row[2 + m + j] = match pair_with_section(w, &basis.places, dx, dy, xj, yj)? {
            Some(v) => v,
            None => -2,
        };
    }
    Ok(row)
}

/// Assembles the Gram matrix of the basis (e, o, a_{1,i}.., s_j..):
/// e^2 = 0, e.o = 1, e.a = 0, e.s = 1; o^2 = -2, o.a = 0, o.s = P.O;
/// a^2 = -2, distinct a orthogonal, a.s by the component test;
/// s^2 = -2 hardcoded, s.s' by section_intersections.
pub fn ns_gram_assemble<F: FieldOps>(
    w: &WeierstrassModel<F>,
    basis: &NSBasisSpec<F::Elem>,
) -> Result<Mat<Rational>> {
    let m = basis.places.len();
    let n = basis.sections.len();
    let rank = basis.rank();
    let mut g = Mat { rows: rank, cols: rank, data: vec![Rational::zero(); rank * rank] };
    let set = |gm: &mut Mat<Rational>, i: usize, j: usize, v: i64| {
        *gm.at_mut(i, j) = rat_i64(v);
        *gm.at_mut(j, i) = rat_i64(v);
    };
    set(&mut g, 0, 1, 1);
    *g.at_mut(1, 1) = rat_i64(-2);
    for i in 0..m {
        *g.at_mut(2 + i, 2 + i) = rat_i64(-2);
    }
    let f = &w.field;
    let one = vec![f.one()];
    for j in 0..n {
        let s = &basis.sections[j];
        if !is_on_curve(w, s) {
            return Err(Error::NotOnCurve);
        }
        let col = 2 + m + j;
        set(&mut g, 0, col, 1);
        set(&mut g, 1, col, section_zero_intersection(w, s)?);
        let (xj, yj) = poly_coords::<F>(s)?;
        let rx = RatFunc { num: xj.clone(), den: one.clone() };
        let ry = RatFunc { num: yj.clone(), den: one.clone() };
        for (i, c) in basis.places.iter().enumerate() {
            let v = if passes_singular(w, &rx, &ry, c)? { 1 } else { 0 };
            set(&mut g, 2 + i, col, v);
        }
        *g.at_mut(col, col) = rat_i64(-2);
        for j2 in 0..j {
            let v = section_intersections(w, &basis.places, s, &basis.sections[j2])?;
            set(&mut g, col, 2 + m + j2, v);
        }
    }
    Ok(g)
}

/// Solves v . G = (D.b_1, .., D.b_r) for the class of D in the basis span
/// (denominators up to 2 allowed, for index-2 overlattices). For sections the
/// self-intersection v G v^T = -2 is asserted.
pub fn ns_class_of_divisor<F: FieldOps>(
    w: &WeierstrassModel<F>,
    basis: &NSBasisSpec<F::Elem>,
    gram: &Mat<Rational>,
    d: &DivisorSpec<F::Elem>,
) -> Result<Vec<Rational>> {
    let rank = basis.rank();
    match d {
        DivisorSpec::FiberComponent { fiber_index, identity } => {
            if *fiber_index >= basis.places.len() {
                return Err(Error::PlaceNotInBasis);
            }
            let mut v = vec![Rational::zero(); rank];
            if *identity {
                // full fiber e = identity + non-identity component
                v[0] = Rational::one();
                v[2 + fiber_index] = -Rational::one();
            } else {
                v[2 + fiber_index] = Rational::one();
            }
            Ok(v)
        }
        DivisorSpec::Section(s) => {
            let (dx, dy) = match s {
                SurfaceSection::Zero => {
                    let mut v = vec![Rational::zero(); rank];
                    v[1] = Rational::one();
                    return Ok(v);
                }
                SurfaceSection::Point { x, y } => (x, y),
            };
            if !is_on_curve(w, s) {
                return Err(Error::NotOnCurve);
            }
            let row = pairing_row(w, basis, dx, dy)?;
            let rhs: Vec<Rational> = row.iter().map(|&v| rat_i64(v)).collect();
            // v G = rhs  <=>  G^T v^T = rhs^T, and G is symmetric
            let sol = matrix::solve_or_invert(&QQ, gram, Some(&rhs))
                .map_err(|_| Error::SingularGram)?;
            let v: Vec<Rational> = (0..rank).map(|i| sol.at(i, 0).clone()).collect();
            for c in &v {
                if !(c.denom().is_one() || c.denom() == &2.into()) {
                    return Err(Error::NonIntegralClass);
                }
            }
            // self-intersection check
            let gv = matrix::row_times_mat(&QQ, &v, gram).map_err(Error::Core)?;
            let self_int: Rational = v.iter().zip(&gv).map(|(a, b)| a * b).sum();
            if self_int != rat_i64(-2) {
                return Err(Error::NonIntegralClass);
            }
            Ok(v)
        }
    }
}

/// A concrete automorphism for pushforward purposes: the Moebius action on
/// degree-1 places, the induced map on sections, the image of the zero
/// section, and whether fiber components are swapped (true when the
/// automorphism involves translation by a section through the non-identity
/// component; the base involution alone preserves the singular point).
pub struct PushforwardSpec<'a, E> {
    pub base_map: &'a dyn Fn(&E) -> E,
    pub section_map: &'a dyn Fn(&SurfaceSection<E>) -> Result<SurfaceSection<E>>,
    pub zero_image: SurfaceSection<E>,
    pub swap_components: bool,
}

/// Builds the pushforward matrix (row i = image of basis vector i) and
/// verifies M G M^T = G.
pub fn build_pushforward_matrix<F: FieldOps>(
    w: &WeierstrassModel<F>,
    basis: &NSBasisSpec<F::Elem>,
    gram: &Mat<Rational>,
    spec: &PushforwardSpec<'_, F::Elem>,
) -> Result<LatticeIsometry> {
    let f = &w.field;
    let _m = basis.places.len();
    let rank = basis.rank();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(rank);
    // e is fixed
    let mut erow = vec![Rational::zero(); rank];
    erow[0] = Rational::one();
    rows.push(erow);
    // o maps to the class of the image of the zero section
    rows.push(ns_class_of_divisor(
        w,
        basis,
        gram,
        &DivisorSpec::Section(spec.zero_image.clone()),
    )?);
    // a_{1,i} maps to the component over mu(t_i)
    for c in &basis.places {
        let img = (spec.base_map)(c);
        let k = basis
            .places
            .iter()
            .position(|p| f.is_zero(&f.sub(p, &img)))
            .ok_or(Error::PlaceNotInBasis)?;
        rows.push(ns_class_of_divisor(
            w,
            basis,
            gram,
            &DivisorSpec::FiberComponent { fiber_index: k, identity: spec.swap_components },
        )?);
    }
    // sections map through the point action
    for s in &basis.sections {
        let img = (spec.section_map)(s)?;
        rows.push(ns_class_of_divisor(w, basis, gram, &DivisorSpec::Section(img))?);
    }
    let mat = Mat::from_rows(rows).map_err(Error::Core)?;
    let lat = QuadLattice::new(gram.clone()).map_err(Error::Lattice)?;
    LatticeIsometry::new(&lat, mat).map_err(|_| Error::IsometryCheckFailed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::section::section_from_polys;
    use exactcore::field::Fp;

    fn e1() -> WeierstrassModel<Fp> {
        let f = Fp::new(113).unwrap();
        WeierstrassModel::new(f, vec![1, 0, 0, 0, 0, 0, 0, 0, 112], vec![]).unwrap()
    }

    fn fixture_sections(w: &WeierstrassModel<Fp>) -> Vec<SurfaceSection<u64>> {
        let data: [(&[u64], &[u64]); 8] = [
            (&[26, 75, 106, 6, 62], &[58, 101, 67, 60, 37, 67, 66]),
            (&[98, 0, 97, 0, 112], &[0, 91, 0, 82, 0, 104]),
            (&[112, 0, 0, 0, 1], &[26, 0, 0, 0, 87]),
            (&[7, 70, 11, 17, 8], &[89, 29, 41, 64, 60, 17, 39]),
            (&[72, 0, 104, 0, 50], &[104, 0, 36, 0, 30, 0, 56]),
            (&[13, 59, 60, 45, 31], &[17, 44, 10, 75, 67, 18, 43]),
            (&[7, 17, 61, 43, 105], &[89, 70, 63, 9, 53, 33, 20]),
            (&[87, 107, 8, 75, 62], &[34, 37, 46, 63, 103, 103, 66]),
        ];
        data.iter()
            .map(|(x, y)| section_from_polys(w, x.to_vec(), y.to_vec()).unwrap())
            .collect()
    }

    fn places_from_root(r: u64) -> Vec<u64> {
        // t_i as polynomials in a root r of a^8 + 6a^4 + 1 mod 113
        let p = 113u64;
        let f = Fp::new(p).unwrap();
        let a2 = f.pow_u(r, 2);
        let a4 = f.pow_u(r, 4);
        let a6 = f.pow_u(r, 6);
        let inv4 = f.inv(&4).unwrap();
        let inv2 = f.inv(&2).unwrap();
        let neg = |x: u64| (p - x % p) % p;
        vec![
            p - 1,
            neg((a6 + a4 + 7 * a2 + 3) % p) * inv4 % p,
            (a6 + neg(a4) + 7 * a2 + neg(3)) % p * inv4 % p,
            neg((a6 + 5 * a2) % p) * inv2 % p,
            (a6 + 5 * a2) % p * inv2 % p,
            (neg(a6) + a4 + neg(7 * a2 % p) + 3) % p * inv4 % p,
            (a6 + a4 + 7 * a2 + 3) % p * inv4 % p,
            1,
        ]
    }

    #[test]
    fn fixture_intersections() {
        let w = e1();
        let secs = fixture_sections(&w);
        let places = places_from_root(43);
        // s1.s2 = 2
        assert_eq!(section_intersections(&w, &places, &secs[0], &secs[1]).unwrap(), 2);
        // P.O = 0 for every fixture section
        for s in &secs {
            assert_eq!(section_zero_intersection(&w, s).unwrap(), 0);
        }
    }

    #[test]
    fn component_at_t1() {
        let w = e1();
        let secs = fixture_sections(&w);
        // t_1 = -1: s1 passes the singular point, a_{1,1}.s_1 = 1
        let c = component_of_section_at(&w, &secs[0], crate::tate::KodairaType::III, &112)
            .unwrap();
        assert_eq!(c, Component::NonIdentity);
        // zero section always identity
        let z = component_of_section_at(
            &w,
            &SurfaceSection::Zero,
            crate::tate::KodairaType::III,
            &112,
        )
        .unwrap();
        assert_eq!(z, Component::Identity);
    }

    #[test]
    fn gram_signature_and_det() {
        let w = e1();
        let basis = NSBasisSpec { places: places_from_root(43), sections: fixture_sections(&w) };
        let g = ns_gram_assemble(&w, &basis).unwrap();
        assert_eq!(g.rows, 18);
        let l = QuadLattice::new(g.clone()).unwrap();
        // signature (1,17) makes the determinant -1024; the discriminant
        // (absolute value) is 1024
        assert_eq!(l.det(), rat_i64(-1024));
        assert_eq!(l.signature(), (1, 17, 0));
        assert!(l.is_even());
    }

    #[test]
    fn iota_pushforward_is_involution() {
        use crate::section::{section_eps, translation_by};
        let w = e1();
        let basis = NSBasisSpec { places: places_from_root(43), sections: fixture_sections(&w) };
        let g = ns_gram_assemble(&w, &basis).unwrap();
        let p2 = section_from_polys(&w, vec![0], vec![0]).unwrap();
        let f = w.field.clone();
        let base_map = move |c: &u64| f.neg(c);
        let wc = w.clone();
        let p2c = p2.clone();
        let section_map = move |s: &SurfaceSection<u64>| {
            let e = section_eps(&wc, s)?;
            translation_by(&wc, &p2c, &e)
        };
        let spec = PushforwardSpec {
            base_map: &base_map,
            section_map: &section_map,
            zero_image: p2.clone(),
            swap_components: true,
        };
        let iso = build_pushforward_matrix(&w, &basis, &g, &spec).unwrap();
        let m = &iso.matrix;
        // involution
        let m2 = matrix::mul(&QQ, m, m).unwrap();
        assert_eq!(m2, matrix::identity(&QQ, 18));
        // o maps to the class of p_2, which has half-integer coordinates
        let vp2 = ns_class_of_divisor(&w, &basis, &g, &DivisorSpec::Section(p2)).unwrap();
        assert_eq!((0..18).map(|j| m.at(1, j).clone()).collect::<Vec<_>>(), vp2);
        // a_{1,1} (over t = -1) maps to e - a_{1,8} (over t = 1)
        let mut want = vec![Rational::zero(); 18];
        want[0] = Rational::one();
        want[9] = -Rational::one();
        assert_eq!((0..18).map(|j| m.at(2, j).clone()).collect::<Vec<_>>(), want);
        // image of the degree-4 class h; the self-intersection is preserved
        let half = Rational::new(1.into(), 2.into());
        let scale = |cs: &[i64]| -> Vec<Rational> {
            cs.iter().map(|&c| rat_i64(c) * &half).collect()
        };
        let vh = scale(&[8, 2, -1, -1, -1, 1, -1, -1, 1, -1, 4, 4, 0, -2, 2, -2, -4, 0]);
        let vh_img = matrix::row_times_mat(&QQ, &vh, m).unwrap();
        let want_img =
            scale(&[16, 6, -1, -1, -1, -3, -1, -1, -3, -1, -4, -4, 0, 2, -2, 2, 4, 0]);
        assert_eq!(vh_img, want_img);
        let pair = |u: &[Rational], v: &[Rational]| -> Rational {
            let gv = matrix::row_times_mat(&QQ, v, &g).unwrap();
            u.iter().zip(&gv).map(|(a, b)| a * b).sum()
        };
        assert_eq!(pair(&vh, &vh), rat_i64(4));
        assert_eq!(pair(&vh_img, &vh_img), rat_i64(4));
    }

    #[test]
    fn class_round_trip() {
        let w = e1();
        let basis = NSBasisSpec { places: places_from_root(43), sections: fixture_sections(&w) };
        let g = ns_gram_assemble(&w, &basis).unwrap();
        for (j, s) in basis.sections.iter().enumerate() {
            let v =
                ns_class_of_divisor(&w, &basis, &g, &DivisorSpec::Section(s.clone())).unwrap();
            let mut want = vec![Rational::zero(); 18];
            want[10 + j] = Rational::one();
            assert_eq!(v, want, "section {}", j + 1);
        }
    }

    #[test]
    fn p2_class_has_halves() {
        let w = e1();
        let kt = w.function_field();
        let basis = NSBasisSpec { places: places_from_root(43), sections: fixture_sections(&w) };
        let g = ns_gram_assemble(&w, &basis).unwrap();
        let p2 = SurfaceSection::point(kt.zero(), kt.zero());
        let v = ns_class_of_divisor(&w, &basis, &g, &DivisorSpec::Section(p2)).unwrap();
        let half = Rational::new(1.into(), 2.into());
        let want: Vec<Rational> = [4, 2, -1, -1, -1, -1, -1, -1, -1, -1, 0, 0, 0, 0, 0, 0, 0, 0]
            .iter()
            .map(|&c| rat_i64(c) * &half)
            .collect();
        assert_eq!(v, want);
    }
}
