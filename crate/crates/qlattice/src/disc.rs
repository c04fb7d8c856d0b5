//! Discriminant groups NS^dual / NS, discriminant quadratic forms, the
//! Milgram residue via exact Gauss sums, and induced isometry actions.

use crate::{Error, LatticeIsometry, QuadLattice, Result};
use exactcore::field::{Rational, QQ};
use exactcore::intmat::{iinv_unimodular, snf_with_transforms, IMat};
use exactcore::matrix::{self, Mat};
use exactcore::poly::{self, Poly};
use exactcore::FieldOps;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Discriminant group of an integral nondegenerate lattice, with generators
/// given as dual vectors (rational coordinates in the lattice basis).
#[derive(Debug, Clone)]
pub struct DiscGroup {
    /// invariant factors > 1, in divisibility order
    pub invariants: Vec<BigInt>,
    /// dual-vector generators matching `invariants`
    pub generators: Vec<Vec<Rational>>,
    /// q(g_i) in Q/2Z, normalized to [0, 2)
    pub q_values: Vec<Rational>,
    /// b(g_i, g_j) in Q/Z, normalized to [0, 1)
    pub pairings: Vec<Vec<Rational>>,
    /// right SNF transform: class coordinates of an integral row a are a*V
    v: IMat,
    /// full SNF diagonal (including trivial factors)
    full_diag: Vec<BigInt>,
    gram: Mat<Rational>,
}

fn mod_reduce(x: &Rational, modulus: i64) -> Rational {
    // representative in [0, modulus)
    let m = Rational::from_integer(BigInt::from(modulus));
    let q = (x / &m).floor();
    x - q * m
}

pub fn disc_group(l: &QuadLattice) -> Result<DiscGroup> {
    if !l.is_integral() {
        return Err(Error::Core(exactcore::Error::Invalid(
            "discriminant group needs an integral gram".into(),
        )));
    }
    let n = l.rank();
    let gi: IMat = l.gram.map(|x| x.numer().clone());
    let (d, _u, v) = snf_with_transforms(&gi);
    let full_diag: Vec<BigInt> = (0..n).map(|i| d.at(i, i).clone()).collect();
    if full_diag.iter().any(|x| x.is_zero()) {
        return Err(Error::DegenerateLattice);
    }
    let vinv = iinv_unimodular(&v)?;
    let ginv = matrix::solve_or_invert(&QQ, &l.gram, None)?;
    let mut invariants = Vec::new();
    let mut generators = Vec::new();
    for i in 0..n {
        if full_diag[i] > BigInt::one() {
            invariants.push(full_diag[i].clone());
            // generator: integral row = row i of V^{-1}; dual vector = row * G^{-1}
            let row: Vec<Rational> =
                (0..n).map(|j| Rational::from_integer(vinv.at(i, j).clone())).collect();
            let dual = matrix::row_times_mat(&QQ, &row, &ginv)?;
            generators.push(dual);
        }
    }
    let k = invariants.len();
    let mut q_values = Vec::with_capacity(k);
    let mut pairings = vec![vec![Rational::zero(); k]; k];
    for i in 0..k {
        let qv = matrix::pairing(&QQ, &generators[i], &l.gram, &generators[i])?;
        q_values.push(mod_reduce(&qv, 2));
        for j in 0..k {
            let b = matrix::pairing(&QQ, &generators[i], &l.gram, &generators[j])?;
            pairings[i][j] = mod_reduce(&b, 1);
        }
    }
    Ok(DiscGroup {
        invariants,
        generators,
        q_values,
        pairings,
        v,
        full_diag,
        gram: l.gram.clone(),
    })
}

impl DiscGroup {
    pub fn order(&self) -> BigInt {
        self.invariants.iter().product()
    }

    /// Class coordinates (one per invariant factor > 1) of a dual vector w,
    /// i.e. w with w*G integral.
    pub fn class_coords(&self, w: &[Rational]) -> Result<Vec<BigInt>> {
        let a = matrix::row_times_mat(&QQ, w, &self.gram)?;
        let mut ai = Vec::with_capacity(a.len());
        for x in &a {
            if !x.denom().is_one() {
                return Err(Error::Core(exactcore::Error::Invalid(
                    "vector does not lie in the dual lattice".into(),
                )));
            }
            ai.push(x.numer().clone());
        }
        let n = self.full_diag.len();
        let mut out = Vec::new();
        for j in 0..n {
            if self.full_diag[j] > BigInt::one() {
                let mut acc = BigInt::zero();
                for i in 0..n {
                    acc += &ai[i] * self.v.at(i, j);
                }
                out.push(acc.mod_floor(&self.full_diag[j]));
            }
        }
        Ok(out)
    }

    /// q(x) in Q/2Z for the class with the given coordinates.
    pub fn q_of_coords(&self, coords: &[BigInt]) -> Rational {
        let n = self.generators.first().map_or(0, |g| g.len());
        let mut w = vec![Rational::zero(); n];
        for (c, g) in coords.iter().zip(&self.generators) {
            let cr = Rational::from_integer(c.clone());
            for (wi, gi) in w.iter_mut().zip(g) {
                *wi += &cr * gi;
            }
        }
        let qv = matrix::pairing(&QQ, &w, &self.gram, &w).expect("dimension match");
        mod_reduce(&qv, 2)
    }
}

// ---------------------------------------------------------------------------
// Milgram residue via exact Gauss sums
// ---------------------------------------------------------------------------

/// Cyclotomic polynomial Phi_n by recursive exact division.
fn cyclotomic(n: u64) -> Poly<Rational> {
    let q = QQ;
    // x^n - 1
    let mut xn = vec![q.from_i64(-1)];
    xn.resize(n as usize, q.zero());
    xn.push(q.one());
    let mut result = xn;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic(d);
            result = poly::div_exact(&q, &result, &phi_d).expect("cyclotomic divides");
        }
    }
    result
}

/// Signature mod 8 of the discriminant form, by comparing the Gauss sum
/// sum_x exp(pi i q(x)) with sqrt(|D|) * zeta_8^sigma exactly in a cyclotomic
/// field. Returns None when the group is too large or sqrt(|D|) is not of the
/// form a or a*sqrt(2).
pub fn milgram_residue(d: &DiscGroup) -> Option<u8> {
    let order = d.order();
    if order > BigInt::from(1 << 14) {
        return None;
    }
    if order.is_one() {
        return Some(0);
    }
    // |D| = a^2 or 2 a^2 needed to write sqrt(|D|) in Q(zeta_8)
    let (a, with_sqrt2) = match split_square(&order) {
        Some(x) => x,
        None => return None,
    };
    // collect q-value denominators to size the cyclotomic order:
    // exp(pi i a/b) = zeta_N^(a*N/(2b)) needs 2b | N; also need 8 | N
    let mut nn: u64 = 8;
    let counts: Vec<u64> = d
        .invariants
        .iter()
        .map(|x| x.to_string().parse::<u64>().expect("small invariant"))
        .collect();
    // q on the whole group has denominators dividing lcm of 2*d_i^2 values;
    // compute the exact sum and track denominators as we go, so first pass
    // collects them
    let mut qs: Vec<Rational> = Vec::new();
    let mut coords = vec![0u64; counts.len()];
    loop {
        let big: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        let qv = d.q_of_coords(&big);
        let den = qv.denom().to_string().parse::<u64>().ok()?;
        nn = lcm64(nn, 2 * den);
        qs.push(qv);
        // increment multi-index
        let mut i = 0;
        loop {
            if i == coords.len() {
                break;
            }
            coords[i] += 1;
            if coords[i] < counts[i] {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
        if i == coords.len() {
            break;
        }
    }
    // Gauss sum in Z[x]/(x^nn - 1)
    let mut sum = vec![BigInt::zero(); nn as usize];
    for qv in &qs {
        // exponent = q * nn / 2 mod nn (integral since 2*den | nn)
        let prod = qv * Rational::from_integer(BigInt::from(nn / 2));
        debug_assert!(prod.denom().is_one());
        let idx = prod.numer().mod_floor(&BigInt::from(nn));
        let idx = idx.to_string().parse::<usize>().ok()?;
        sum[idx] += BigInt::one();
    }
    let phi = cyclotomic(nn);
    let sum_q: Poly<Rational> = sum.iter().map(|c| Rational::from_integer(c.clone())).collect();
    for sigma in 0u64..8 {
        // rhs = a * (sqrt2 factor) * zeta_8^sigma with zeta_8 = x^(nn/8),
        // exponents reduced mod nn
        let mut rhs_red = vec![Rational::zero(); nn as usize];
        let base = sigma * (nn / 8);
        let ar = Rational::from_integer(a.clone());
        if with_sqrt2 {
            // sqrt2 = zeta_8 + zeta_8^{-1} = x^(nn/8) + x^(7nn/8)
            rhs_red[((base + nn / 8) % nn) as usize] += &ar;
            rhs_red[((base + 7 * nn / 8) % nn) as usize] += &ar;
        } else {
            rhs_red[(base % nn) as usize] += &ar;
        }
        let diff = poly::sub(&QQ, &sum_q, &rhs_red);
        let rem = poly::divrem(&QQ, &diff, &phi).expect("monic").1;
        if rem.is_empty() {
            return Some(sigma as u8);
        }
    }
    None
}

fn lcm64(a: u64, b: u64) -> u64 {
    a / gcd64(a, b) * b
}

fn gcd64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd64(b, a % b)
    }
}

/// Writes |n| as a^2 or 2 a^2; None otherwise.
fn split_square(n: &BigInt) -> Option<(BigInt, bool)> {
    let n = n.abs();
    let s = n.sqrt();
    if &s * &s == n {
        return Some((s, false));
    }
    if (&n % BigInt::from(2)).is_zero() {
        let h = &n / BigInt::from(2);
        let s = h.sqrt();
        if &s * &s == h {
            return Some((s, true));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Induced action on the discriminant group
// ---------------------------------------------------------------------------

/// Induced map on the discriminant group: row i is the class-coordinate image
/// of generator i.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct InducedMap {
    pub rows: Vec<Vec<BigInt>>,
}

pub fn induced_map(d: &DiscGroup, f: &LatticeIsometry) -> Result<InducedMap> {
    let mut rows = Vec::with_capacity(d.generators.len());
    for g in &d.generators {
        let img = matrix::row_times_mat(&QQ, g, &f.matrix)?;
        rows.push(d.class_coords(&img)?);
    }
    Ok(InducedMap { rows })
}

impl InducedMap {
    pub fn identity(d: &DiscGroup) -> InducedMap {
        let k = d.invariants.len();
        let rows = (0..k)
            .map(|i| {
                let mut r = vec![BigInt::zero(); k];
                r[i] = BigInt::one();
                r
            })
            .collect();
        InducedMap { rows }
    }

    /// Composition: first self, then other. Entries in column j are reduced
    /// mod the j-th invariant factor.
    pub fn compose(&self, other: &InducedMap, d: &DiscGroup) -> InducedMap {
        let k = self.rows.len();
        let mut rows = vec![vec![BigInt::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let mut acc = BigInt::zero();
                for m in 0..k {
                    acc += &self.rows[i][m] * &other.rows[m][j];
                }
                rows[i][j] = acc.mod_floor(&d.invariants[j]);
            }
        }
        InducedMap { rows }
    }
}

/// Closure of the group generated by the induced maps of the given isometries.
pub fn disc_action_subgroup(l: &QuadLattice, isoms: &[LatticeIsometry]) -> Result<Vec<InducedMap>> {
    let d = disc_group(l)?;
    let gens: Vec<InducedMap> =
        isoms.iter().map(|f| induced_map(&d, f)).collect::<Result<_>>()?;
    let mut elems = vec![InducedMap::identity(&d)];
    let mut frontier = elems.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in &frontier {
            for g in &gens {
                let c = e.compose(g, &d);
                if !elems.contains(&c) {
                    elems.push(c.clone());
                    next.push(c);
                }
            }
        }
        frontier = next;
        if elems.len() > 100_000 {
            return Err(Error::Core(exactcore::Error::Invalid(
                "discriminant action closure too large".into(),
            )));
        }
    }
    elems.sort();
    Ok(elems)
}

/// Equality of two generated subgroups as sorted element lists.
pub fn same_subgroup(a: &[InducedMap], b: &[InducedMap]) -> bool {
    a == b
}
