//! Integer and rational quadratic lattices: invariants, discriminant groups,
//! sublattice operations, vector enumeration, definite isometry testing and
//! Kneser neighbor genus enumeration.

pub mod disc;
pub mod enumerate;
pub mod isom;
pub mod kneser;
pub mod sublat;

pub use disc::{disc_action_subgroup, DiscGroup, InducedMap};
pub use enumerate::enumerate_vectors;
pub use isom::isometry_test;
pub use kneser::kneser_neighbors_and_genus;
pub use sublat::{invariant_coinvariant, orthogonal_complement, overlattice, saturate_span};

use exactcore::field::{rat_sign, Rational, QQ};
use exactcore::matrix::{self, Mat};
use exactcore::FieldOps;
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DegenerateLattice,
    IndefiniteLattice,
    NonIntegralOverlattice,
    NoIsotropicVector,
    NotAnIsometry,
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
            Error::DegenerateLattice => write!(f, "lattice gram matrix is degenerate"),
            Error::IndefiniteLattice => write!(f, "definite lattice required"),
            Error::NonIntegralOverlattice => write!(f, "overlattice gram not integral/even"),
            Error::NoIsotropicVector => write!(f, "no isotropic vector mod p"),
            Error::NotAnIsometry => write!(f, "matrix is not an isometry of the lattice"),
            Error::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

/// A quadratic lattice given by its (symmetric, usually integral) Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadLattice {
    pub gram: Mat<Rational>,
}

impl QuadLattice {
    pub fn new(gram: Mat<Rational>) -> Result<QuadLattice> {
        if !gram.is_square() {
            return Err(Error::Core(exactcore::Error::NonSquareMatrix));
        }
        for i in 0..gram.rows {
            for j in 0..gram.cols {
                if gram.at(i, j) != gram.at(j, i) {
                    return Err(Error::Core(exactcore::Error::Invalid(
                        "gram matrix not symmetric".into(),
                    )));
                }
            }
        }
        Ok(QuadLattice { gram })
    }

    pub fn from_i64_rows(rows: Vec<Vec<i64>>) -> QuadLattice {
        let gram = Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(exactcore::field::rat_i64).collect())
                .collect(),
        )
        .unwrap();
        QuadLattice::new(gram).expect("symmetric input")
    }

    pub fn rank(&self) -> usize {
        self.gram.rows
    }

    pub fn is_integral(&self) -> bool {
        self.gram.data.iter().all(|x| x.denom().is_one())
    }

    pub fn is_even(&self) -> bool {
        self.is_integral()
            && (0..self.rank()).all(|i| (self.gram.at(i, i).numer() % BigInt::from(2)).is_zero())
    }

    pub fn det(&self) -> Rational {
        matrix::det(&QQ, &self.gram).expect("square matrix")
    }

    /// Signature (positive, negative, zero counts) by exact congruence
    /// diagonalization.
    pub fn signature(&self) -> (usize, usize, usize) {
        signature_of(&self.gram)
    }

    pub fn pairing(&self, v: &[Rational], w: &[Rational]) -> Rational {
        matrix::pairing(&QQ, v, &self.gram, w).expect("dimension match")
    }

    pub fn norm(&self, v: &[Rational]) -> Rational {
        self.pairing(v, v)
    }
}

/// Signature of a rational symmetric matrix: (n_plus, n_minus, n_zero).
pub fn signature_of(g: &Mat<Rational>) -> (usize, usize, usize) {
    let n = g.rows;
    let mut a = g.clone();
    let mut plus = 0;
    let mut minus = 0;
    let mut zero = 0;
    let mut idx: Vec<usize> = (0..n).collect();
    while !idx.is_empty() {
        // find a nonzero diagonal pivot, or repair using an off-diagonal entry
        let piv = idx.iter().position(|&i| !a.at(i, i).is_zero());
        let piv = match piv {
            Some(p) => p,
            None => {
                // all diagonal entries zero on the remaining block
                let mut found = None;
                'search: for (pi, &i) in idx.iter().enumerate() {
                    for &j in &idx {
                        if i != j && !a.at(i, j).is_zero() {
                            found = Some((pi, j));
                            break 'search;
                        }
                    }
                }
                match found {
                    None => {
                        zero += idx.len();
                        break;
                    }
                    Some((pi, j)) => {
                        let i = idx[pi];
                        // b_i += b_j makes the diagonal entry 2*a_ij != 0
                        for c in 0..n {
                            let v = a.at(i, c) + a.at(j, c);
                            *a.at_mut(i, c) = v;
                        }
                        for r in 0..n {
                            let v = a.at(r, i) + a.at(r, j);
                            *a.at_mut(r, i) = v;
                        }
                        pi
                    }
                }
            }
        };
        let i = idx[piv];
        let d = a.at(i, i).clone();
        match rat_sign(&d) {
            1 => plus += 1,
            -1 => minus += 1,
            _ => unreachable!("pivot is nonzero"),
        }
        idx.remove(piv);
        // clear row/column i on the remaining block
        for &r in &idx {
            if a.at(r, i).is_zero() {
                continue;
            }
            let factor = a.at(r, i) / &d;
            for c in 0..n {
                let v = a.at(r, c).clone() - &factor * a.at(i, c);
                *a.at_mut(r, c) = v;
            }
            for rr in 0..n {
                let v = a.at(rr, r).clone() - &factor * a.at(rr, i);
                *a.at_mut(rr, r) = v;
            }
        }
    }
    (plus, minus, zero)
}

/// Genus-distinguishing data: signature, parity, invariant factors and the
/// Milgram residue (signature of the discriminant form mod 8, when computed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusFingerprint {
    pub sig_plus: usize,
    pub sig_minus: usize,
    pub even: bool,
    pub invariants: Vec<BigInt>,
    pub milgram: Option<u8>,
}

#[derive(Debug, Clone)]
pub struct LatticeInvariants {
    pub signature: (usize, usize),
    pub even: bool,
    pub det: Rational,
    pub disc: Option<DiscGroup>,
    pub fingerprint: GenusFingerprint,
}

/// Full invariant bundle; DiscGroup requires an integral gram.
pub fn lattice_invariants(l: &QuadLattice) -> Result<LatticeInvariants> {
    let (p, m, z) = l.signature();
    if z > 0 {
        return Err(Error::DegenerateLattice);
    }
    let det = l.det();
    let even = l.is_even();
    let disc = if l.is_integral() { Some(disc::disc_group(l)?) } else { None };
    let invariants = disc.as_ref().map(|d| d.invariants.clone()).unwrap_or_default();
    let milgram = match &disc {
        Some(d) if even => disc::milgram_residue(d),
        _ => None,
    };
    if let Some(res) = milgram {
        let expect = ((p as i64 - m as i64).rem_euclid(8)) as u8;
        if res != expect {
            return Err(Error::Core(exactcore::Error::Invalid(format!(
                "Milgram residue {res} contradicts signature residue {expect}"
            ))));
        }
    }
    Ok(LatticeInvariants {
        signature: (p, m),
        even,
        det,
        disc,
        fingerprint: GenusFingerprint { sig_plus: p, sig_minus: m, even, invariants, milgram },
    })
}

/// An isometry in the row convention: v maps to v * M, with M G M^T = G and
/// M integral on the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeIsometry {
    pub matrix: Mat<Rational>,
}

impl LatticeIsometry {
    pub fn new(l: &QuadLattice, matrix: Mat<Rational>) -> Result<LatticeIsometry> {
        let q = QQ;
        let tmp = matrix::mul(&q, &matrix, &l.gram)?;
        let check = matrix::mul(&q, &tmp, &matrix.transpose())?;
        if check != l.gram {
            return Err(Error::NotAnIsometry);
        }
        Ok(LatticeIsometry { matrix })
    }
}

/// Convenience: gram of the lattice spanned by rational rows inside an
/// ambient lattice.
pub fn gram_of_rows(ambient: &QuadLattice, rows: &Mat<Rational>) -> Mat<Rational> {
    let q = QQ;
    let tmp = matrix::mul(&q, rows, &ambient.gram).expect("dimension match");
    matrix::mul(&q, &tmp, &rows.transpose()).expect("dimension match")
}

/// Converts a rational matrix with integer entries to BigInt; errors otherwise.
pub fn to_int_mat(m: &Mat<Rational>) -> Result<Mat<BigInt>> {
    let mut data = Vec::with_capacity(m.data.len());
    for x in &m.data {
        if !x.denom().is_one() {
            return Err(Error::Core(exactcore::Error::Invalid(
                "matrix entry is not an integer".into(),
            )));
        }
        data.push(x.numer().clone());
    }
    Ok(Mat { rows: m.rows, cols: m.cols, data })
}

pub fn to_rat_mat(m: &Mat<BigInt>) -> Mat<Rational> {
    m.map(|x| Rational::from_integer(x.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactcore::field::rat_i64;

    #[test]
    fn hyperbolic_cell() {
        let l = QuadLattice::from_i64_rows(vec![vec![0, 1], vec![1, -2]]);
        let inv = lattice_invariants(&l).unwrap();
        assert_eq!(inv.signature, (1, 1));
        assert!(inv.even);
        assert_eq!(inv.det, rat_i64(-1));
        assert!(inv.fingerprint.invariants.is_empty());
    }

    #[test]
    fn signature_basis_independent() {
        let l = QuadLattice::from_i64_rows(vec![vec![2, 1, 0], vec![1, 2, 0], vec![0, 0, -2]]);
        assert_eq!(l.signature(), (2, 1, 0));
        // conjugate by a unimodular matrix
        let u = Mat::from_rows(vec![
            vec![rat_i64(1), rat_i64(3), rat_i64(0)],
            vec![rat_i64(0), rat_i64(1), rat_i64(-2)],
            vec![rat_i64(1), rat_i64(1), rat_i64(1)],
        ])
        .unwrap();
        let g2 = gram_of_rows(&l, &u);
        assert_eq!(signature_of(&g2), (2, 1, 0));
    }

    #[test]
    fn isometry_rejects_non_isometry() {
        let l = QuadLattice::from_i64_rows(vec![vec![2, 0], vec![0, 4]]);
        let m = Mat::from_rows(vec![
            vec![rat_i64(0), rat_i64(1)],
            vec![rat_i64(1), rat_i64(0)],
        ])
        .unwrap();
        assert!(LatticeIsometry::new(&l, m).is_err());
        let id = exactcore::matrix::identity(&QQ, 2);
        assert!(LatticeIsometry::new(&l, id).is_ok());
    }
}
