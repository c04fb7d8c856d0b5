//! Tate's algorithm for short Weierstrass models over K(t) in residue
//! characteristic >= 5, fiber configurations, and the trivial lattice /
//! Mordell-Weil quotient.

use crate::model::{Place, WeierstrassModel};
use crate::{Error, Result};
use exactcore::field::{rat_i64, FieldOps, Rational, QQ};
use exactcore::intmat::snf_with_transforms;
use exactcore::matrix::{self, Mat};
use exactcore::poly;
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KodairaType {
    I(usize),
    II,
    III,
    IV,
    IStar(usize),
    IVStar,
    IIIStar,
    IIStar,
}

impl std::fmt::Display for KodairaType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

/// ADE label of the non-identity component lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootLabel {
    A(usize),
    D(usize),
    E(usize),
}

impl RootLabel {
    pub fn rank(&self) -> usize {
        match self {
            RootLabel::A(n) | RootLabel::D(n) | RootLabel::E(n) => *n,
        }
    }

    /// Negated Cartan matrix (the fiber-component gram).
    pub fn negated_gram(&self) -> Mat<Rational> {
        let n = self.rank();
        let mut g = Mat { rows: n, cols: n, data: vec![Rational::zero(); n * n] };
        let link = |g: &mut Mat<Rational>, i: usize, j: usize| {
            *g.at_mut(i, j) = rat_i64(1);
            *g.at_mut(j, i) = rat_i64(1);
        };
        for i in 0..n {
            *g.at_mut(i, i) = rat_i64(-2);
        }
        match self {
            RootLabel::A(_) => {
                for i in 1..n {
                    link(&mut g, i - 1, i);
                }
            }
            RootLabel::D(_) => {
                // path on 0..n-2, with n-1 attached to n-3
                for i in 1..n - 1 {
                    link(&mut g, i - 1, i);
                }
                link(&mut g, n - 3, n - 1);
            }
            RootLabel::E(_) => {
                // path on 0..n-2, with n-1 attached to node 2
                for i in 1..n - 1 {
                    link(&mut g, i - 1, i);
                }
                link(&mut g, 2, n - 1);
            }
        }
        g
    }
}

impl KodairaType {
    pub fn components(&self) -> usize {
        match self {
            KodairaType::I(0) => 1,
            KodairaType::I(n) => *n,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::IStar(n) => 5 + n,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    pub fn root_label(&self) -> Option<RootLabel> {
        match self {
            KodairaType::I(n) if *n >= 2 => Some(RootLabel::A(n - 1)),
            KodairaType::III => Some(RootLabel::A(1)),
            KodairaType::IV => Some(RootLabel::A(2)),
            KodairaType::IStar(n) => Some(RootLabel::D(4 + n)),
            KodairaType::IVStar => Some(RootLabel::E(6)),
            KodairaType::IIIStar => Some(RootLabel::E(7)),
            KodairaType::IIStar => Some(RootLabel::E(8)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalFiberData<E> {
    pub place: Place<E>,
    pub kodaira: KodairaType,
    pub lattice: Option<RootLabel>,
    pub components: usize,
    pub v_delta: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiberConfig<E> {
    /// bad fibers only (v(Delta) > 0), finite places first, then infinity
    pub fibers: Vec<LocalFiberData<E>>,
    /// true when the listed finite places account for every root of Delta
    pub complete: bool,
    /// sum of deg(place) * v(Delta) over the listed places
    pub total_v_delta: usize,
}

/// Local Kodaira type at t = c (degree-1 place) from the valuations of c4 and
/// Delta; valid for residue characteristic >= 5.
fn local_type<F: FieldOps>(w: &WeierstrassModel<F>, c: &F::Elem) -> Result<(KodairaType, usize)> {
    let f = &w.field;
    let pi = vec![f.neg(c), f.one()];
    let delta = w.delta();
    let vd = poly::valuation(f, &delta, &pi).unwrap_or(0);
    let va = if w.a.is_empty() {
        usize::MAX
    } else {
        poly::valuation(f, &w.a, &pi).unwrap_or(0)
    };
    classify(va, vd)
}

fn classify(vc4: usize, vd: usize) -> Result<(KodairaType, usize)> {
    // local minimalization: (x, y) -> (u^2 x, u^3 y) with u a uniformizer
    // drops (v(c4), v(Delta)) by (4, 12)
    let mut vc4 = vc4;
    let mut vd = vd;
    while vd >= 12 && vc4 >= 4 {
        vd -= 12;
        vc4 = vc4.saturating_sub(4);
    }
    let t = if vd == 0 {
        KodairaType::I(0)
    } else if vc4 == 0 {
        KodairaType::I(vd)
    } else if vd == 2 {
        KodairaType::II
    } else if vd == 3 {
        KodairaType::III
    } else if vd == 4 {
        KodairaType::IV
    } else if vd == 6 && vc4 >= 2 {
        KodairaType::IStar(0)
    } else if vc4 == 2 && vd > 6 {
        KodairaType::IStar(vd - 6)
    } else if vd == 8 {
        KodairaType::IVStar
    } else if vd == 9 {
        KodairaType::IIIStar
    } else if vd == 10 {
        KodairaType::IIStar
    } else {
        return Err(Error::NonMinimalModel);
    };
    Ok((t, vd))
}

/// Runs Tate's algorithm at the supplied degree-1 finite places (roots of
/// Delta among `candidate_roots`) and at infinity via the K3 chart. The
/// result is flagged incomplete when Delta has roots outside the candidates.
pub fn fiber_configuration<F: FieldOps>(
    w: &WeierstrassModel<F>,
    candidate_roots: &[F::Elem],
) -> Result<FiberConfig<F::Elem>> {
    let f = &w.field;
    let delta = w.delta();
    if delta.is_empty() {
        return Err(Error::ZeroDiscriminant);
    }
    let mut fibers = Vec::new();
    let mut finite_v = 0usize;
    let mut used: Vec<F::Elem> = Vec::new();
    for c in candidate_roots {
        if used.iter().any(|u| u == c) {
            continue;
        }
        if !f.is_zero(&poly::eval(f, &delta, c)) {
            continue;
        }
        used.push(c.clone());
        let (kodaira, vd) = local_type(w, c)?;
        finite_v += vd;
        fibers.push(LocalFiberData {
            place: Place::Finite(vec![f.neg(c), f.one()]),
            lattice: kodaira.root_label(),
            components: kodaira.components(),
            kodaira,
            v_delta: vd,
        });
    }
    let complete = finite_v == poly::deg(&delta).max(0) as usize;
    // infinity chart
    let winf = w.infinity_chart();
    let (kinf, vinf) = local_type(&winf, &f.zero())?;
    if vinf > 0 {
        fibers.push(LocalFiberData {
            place: Place::Infinity,
            lattice: kinf.root_label(),
            components: kinf.components(),
            kodaira: kinf,
            v_delta: vinf,
        });
    }
    let total = finite_v + vinf;
    // Euler characteristic of a minimal elliptic surface is a multiple of 12
    // (24 for the K3 bounds); checked only when the place list is complete
    if complete && total % 12 != 0 {
        return Err(Error::Core(exactcore::Error::Invalid(format!(
            "total v(Delta) = {total}, not a multiple of 12"
        ))));
    }
    Ok(FiberConfig { fibers, complete, total_v_delta: total })
}

/// Free rank and torsion invariants of NS/Triv.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MordellWeil {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

/// The trivial-lattice gram (hyperbolic cell <e,o> plus the negated root
/// lattices of the configuration) and NS/Triv computed by SNF.
///
/// `ns_basis_rows` are the rows of an NS basis written in the coordinates of
/// the ambient basis B; `triv_indices` select the B-vectors spanning Triv.
pub fn trivial_lattice_and_mw<E: Clone + PartialEq + std::fmt::Debug>(
    config: &FiberConfig<E>,
    ns_basis_rows: &Mat<Rational>,
    triv_indices: &[usize],
) -> Result<(Mat<Rational>, MordellWeil)> {
    // Triv gram: [[0,1],[1,-2]] + root lattices
    let mut blocks: Vec<Mat<Rational>> = vec![Mat::from_rows(vec![
        vec![rat_i64(0), rat_i64(1)],
        vec![rat_i64(1), rat_i64(-2)],
    ])
    .map_err(Error::Core)?];
    for fd in &config.fibers {
        if let Some(l) = fd.lattice {
            blocks.push(l.negated_gram());
        }
    }
    let rank: usize = blocks.iter().map(|b| b.rows).sum();
    let mut triv = Mat { rows: rank, cols: rank, data: vec![Rational::zero(); rank * rank] };
    let mut off = 0;
    for b in &blocks {
        for i in 0..b.rows {
            for j in 0..b.cols {
                *triv.at_mut(off + i, off + j) = b.at(i, j).clone();
            }
        }
        off += b.rows;
    }
    // quotient: coordinates of the Triv basis vectors in the NS basis
    let n = ns_basis_rows.rows;
    let winv = matrix::solve_or_invert(&QQ, ns_basis_rows, None).map_err(Error::Core)?;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(triv_indices.len());
    for &i in triv_indices {
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        let coords = matrix::row_times_mat(&QQ, &e, &winv).map_err(Error::Core)?;
        let mut r = Vec::with_capacity(n);
        for c in &coords {
            if !c.denom().is_one() {
                return Err(Error::NonIntegralClass);
            }
            r.push(c.numer().clone());
        }
        rows.push(r);
    }
    let m = Mat::from_rows(rows).map_err(Error::Core)?;
    let (d, _, _) = snf_with_transforms(&m);
    let k = m.rows.min(m.cols);
    let mut torsion = Vec::new();
    let mut zero_diag = 0usize;
    for i in 0..k {
        let di = d.at(i, i);
        if di.is_zero() {
            zero_diag += 1;
        } else if !di.is_one() {
            torsion.push(di.clone());
        }
    }
    if zero_diag > 0 {
        // Triv does not embed with full rank
        return Err(Error::Core(exactcore::Error::Invalid("trivial lattice rank drop".into())));
    }
    let free_rank = n - m.rows;
    Ok((triv, MordellWeil { free_rank, torsion }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactcore::field::Fp;

    fn e1_f113() -> WeierstrassModel<Fp> {
        let f = Fp::new(113).unwrap();
        let mut a = vec![0u64; 9];
        a[0] = 1;
        a[8] = 112;
        WeierstrassModel::new(f, a, vec![]).unwrap()
    }

    #[test]
    fn e1_mod113_eight_type_iii() {
        let w = e1_f113();
        let f = w.field.clone();
        let roots: Vec<u64> = (0..113).filter(|&z| f.pow_u(z, 8) == 1).collect();
        assert_eq!(roots.len(), 8);
        let cfg = fiber_configuration(&w, &roots).unwrap();
        assert!(cfg.complete);
        assert_eq!(cfg.total_v_delta, 24);
        assert_eq!(cfg.fibers.len(), 8); // good reduction at infinity
        for fd in &cfg.fibers {
            assert_eq!(fd.kodaira, KodairaType::III);
            assert_eq!(fd.components, 2);
            assert_eq!(fd.lattice, Some(RootLabel::A(1)));
            assert_eq!(fd.v_delta, 3);
        }
    }

    #[test]
    fn type_iii_at_zero_f7() {
        // y^2 = x^3 + t x over F_7: v(A) = 1, v(Delta) = 3 at t = 0
        let f = Fp::new(7).unwrap();
        let w = WeierstrassModel::new(f, vec![0, 1], vec![]).unwrap();
        let cfg = fiber_configuration(&w, &[0]).unwrap();
        assert_eq!(cfg.fibers[0].kodaira, KodairaType::III);
        assert_eq!(cfg.fibers[0].place, Place::Finite(vec![0, 1]));
        // rational elliptic surface: III* at infinity after minimalization
        assert_eq!(cfg.fibers[1].place, Place::Infinity);
        assert_eq!(cfg.fibers[1].kodaira, KodairaType::IIIStar);
        assert_eq!(cfg.total_v_delta, 12);
    }

    #[test]
    fn incomplete_when_roots_missing() {
        let w = e1_f113();
        let cfg = fiber_configuration(&w, &[1]).unwrap();
        assert!(!cfg.complete);
        assert_eq!(cfg.fibers.len(), 1);
    }

    #[test]
    fn component_counts_table() {
        assert_eq!(KodairaType::I(5).components(), 5);
        assert_eq!(KodairaType::IStar(2).components(), 7);
        assert_eq!(KodairaType::IStar(2).root_label(), Some(RootLabel::D(6)));
        assert_eq!(KodairaType::IIStar.root_label(), Some(RootLabel::E(8)));
        // D4 gram has det 4
        let d4 = RootLabel::D(4).negated_gram();
        let det = matrix::det(&QQ, &d4).unwrap();
        assert_eq!(det, rat_i64(4));
        let e8 = RootLabel::E(8).negated_gram();
        assert_eq!(matrix::det(&QQ, &e8).unwrap(), rat_i64(1));
    }
}
