//! Kneser p-neighbors and genus enumeration by neighbor closure with
//! isometry deduplication.

use crate::enumerate::enumerate_vectors;
use crate::isom::isometry_test;
use crate::{Error, QuadLattice, Result};
use exactcore::field::{rat_i64, Rational};
use exactcore::intmat::hnf_with_transform;
use exactcore::lll::lll_reduce;
use exactcore::matrix::Mat;
use exactcore::FieldOps;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// The p-neighbor L(x, p) for a primitive x with Q(x) = 0 mod 2p^2 and the
/// lattice even: {y : (x,y) = 0 mod p} + Z * x/p, in the coordinates of L.
fn neighbor_lattice(l: &QuadLattice, x: &[BigInt], p: &BigInt) -> Result<QuadLattice> {
    let n = l.rank();
    let gi = int_gram(l);
    let aint = int_pair_row(&gi, x); // (x, e_j) values
    // rows generating {y : y.a = 0 mod p}: kernel vectors plus p*e_j
    // stack: for j in 0..n the vector p*e_j, and the "solved" combinations
    // e_j*a_k - e_k*a_j; simplest correct generator set: p e_j for all j and
    // for each j, a_ref_inv * (-a_j) * e_ref + e_j where a_ref is a unit mod p
    let refpos = aint
        .iter()
        .position(|c| !(c % p).is_zero())
        .ok_or_else(|| Error::Core(exactcore::Error::Invalid("x pairs to 0 mod p with all of L".into())))?;
    let aref_inv = modinv(&aint[refpos].mod_floor(p), p);
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..n {
        let mut r = vec![BigInt::zero(); j + 1];
        r[j] = p.clone();
        r.resize(n, BigInt::zero());
        gens.push(r);
    }
    for j in 0..n {
        if j == refpos {
            continue;
        }
        // e_j - (a_j * aref_inv) e_ref pairs with x to 0 mod p
        let c = (&aint[j] * &aref_inv).mod_floor(p);
        let mut r = vec![BigInt::zero(); n];
        r[j] = BigInt::one();
        r[refpos] = -c;
        gens.push(r);
    }
    // plus x/p: scale everything by p, append x, HNF, divide by p
    let mut scaled: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|r| r.iter().map(|c| c * p).collect())
        .collect();
    scaled.push(x.to_vec());
    let m = Mat::from_rows(scaled)?;
    let (h, _u) = hnf_with_transform(&m);
    let mut rows = Vec::new();
    for i in 0..h.rows {
        if h.row(i).iter().any(|c| !c.is_zero()) {
            rows.push(h.row(i).to_vec());
        }
    }
    if rows.len() != n {
        return Err(Error::Core(exactcore::Error::Invalid("neighbor rank drop".into())));
    }
    // gram of the p-scaled basis divided by p^2, all integral
    let p2 = p * p;
    let mut gram = Mat { rows: n, cols: n, data: vec![Rational::zero(); n * n] };
    for i in 0..n {
        let gi_row = int_pair_row(&gi, &rows[i]);
        for j in i..n {
            let mut s = BigInt::zero();
            for (c, g) in rows[j].iter().zip(&gi_row) {
                if !c.is_zero() {
                    s += c * g;
                }
            }
            debug_assert!((&s % &p2).is_zero());
            let v = Rational::from_integer(s / &p2);
            *gram.at_mut(i, j) = v.clone();
            *gram.at_mut(j, i) = v;
        }
    }
    let out = QuadLattice { gram };
    if !out.is_even() {
        return Err(Error::Core(exactcore::Error::Invalid("neighbor gram not even".into())));
    }
    Ok(out)
}

/// Integer copy of an integral gram matrix.
fn int_gram(l: &QuadLattice) -> Vec<Vec<BigInt>> {
    let n = l.rank();
    let mut g = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let e = l.gram.at(i, j);
            debug_assert!(e.denom().is_one());
            g[i][j] = e.numer().clone();
        }
    }
    g
}

/// x * G for integer data.
fn int_pair_row(g: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
    let n = g.len();
    let mut out = vec![BigInt::zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for j in 0..n {
            out[j] += xi * &g[i][j];
        }
    }
    out
}

/// x * G * x^T for integer data.
fn int_norm(g: &[Vec<BigInt>], x: &[BigInt]) -> BigInt {
    let row = int_pair_row(g, x);
    let mut s = BigInt::zero();
    for (c, r) in x.iter().zip(&row) {
        if !c.is_zero() {
            s += c * r;
        }
    }
    s
}

fn modinv(a: &BigInt, p: &BigInt) -> BigInt {
    let e = p - BigInt::from(2);
    modpow(a, &e, p)
}

fn modpow(a: &BigInt, e: &BigInt, p: &BigInt) -> BigInt {
    let mut acc = BigInt::one();
    let mut base = a.mod_floor(p);
    for i in 0..e.bits() {
        if e.bit(i) {
            acc = (&acc * &base).mod_floor(p);
        }
        base = (&base * &base).mod_floor(p);
    }
    acc
}

/// Adjusts a mod-p isotropic primitive x so that Q(x) = 0 mod 2p^2.
fn lift_isotropic(l: &QuadLattice, x: &[BigInt], p: &BigInt) -> Result<Vec<BigInt>> {
    let gi = int_gram(l);
    let qx = int_norm(&gi, x);
    let m = &qx / BigInt::from(2); // Q even
    if (&qx % (BigInt::from(2) * p * p)).is_zero() {
        return Ok(x.to_vec());
    }
    // find y = e_j with (x, y) a unit mod p
    let aint = int_pair_row(&gi, x);
    let j = aint
        .iter()
        .position(|c| !(c % p).is_zero())
        .ok_or_else(|| Error::Core(exactcore::Error::Invalid("isotropic vector not primitive mod p".into())))?;
    // c = -(m/p) * (x,y)^{-1} mod p
    let mp = (&m / p).mod_floor(p);
    let c = ((-mp) * modinv(&aint[j].mod_floor(p), p)).mod_floor(p);
    let mut out = x.to_vec();
    out[j] = &out[j] + c * p;
    debug_assert!((int_norm(&gi, &out) % (BigInt::from(2) * p * p)).is_zero());
    Ok(out)
}

/// All projective isotropic vectors mod p (first nonzero coordinate 1),
/// excluding those pairing to 0 mod p with the whole lattice.
fn isotropic_lines(l: &QuadLattice, p: u64) -> Vec<Vec<BigInt>> {
    let n = l.rank();
    // gram reduced mod p for fast filtering
    let gi = int_gram(l);
    let pb = BigInt::from(p);
    let gmod: Vec<Vec<u64>> = gi
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    let r = c.mod_floor(&pb);
                    let (_, digits) = r.to_u64_digits();
                    digits.first().copied().unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    // enumerate representatives: leading index k with x_k = 1, free below
    let mut x = vec![0u64; n];
    for k in 0..n {
        let free = n - k - 1;
        let total = (p as u128).pow(free as u32);
        for mut idx in 0..total {
            for c in x.iter_mut() {
                *c = 0;
            }
            x[k] = 1;
            for pos in k + 1..n {
                x[pos] = (idx % p as u128) as u64;
                idx /= p as u128;
            }
            let mut q = 0u64;
            let mut pairs_to_zero = true;
            for i in 0..n {
                let mut row = 0u64;
                for j in 0..n {
                    if x[j] != 0 {
                        row = (row + x[j] * gmod[i][j]) % p;
                    }
                }
                if row != 0 {
                    pairs_to_zero = false;
                }
                if x[i] != 0 {
                    q = (q + x[i] * row) % p;
                }
            }
            if q == 0 && !pairs_to_zero {
                out.push(x.iter().map(|&c| BigInt::from(c)).collect());
            }
        }
    }
    out
}

/// Genus (spinor-genus) enumeration by p-neighbor closure with isometry
/// deduplication. Returns one representative per class; the input lattice is
/// class 0.
pub fn kneser_neighbors_and_genus(l: &QuadLattice, p: u64) -> Result<Vec<QuadLattice>> {
    if !l.is_even() {
        return Err(Error::Core(exactcore::Error::Invalid("lattice must be even".into())));
    }
    let (sp, sm, sz) = l.signature();
    if sz > 0 {
        return Err(Error::DegenerateLattice);
    }
    if sp > 0 && sm > 0 {
        return Err(Error::IndefiniteLattice);
    }
    let det = l.det();
    if (det.numer() % BigInt::from(p)).is_zero() {
        return Err(Error::Core(exactcore::Error::Invalid(format!(
            "p = {p} divides the determinant"
        ))));
    }
    let pb = BigInt::from(p);
    let mut classes: Vec<QuadLattice> = vec![l.clone()];
    // cache: reduced gram -> class index, to avoid repeated isometry tests
    let mut seen: HashMap<String, usize> = HashMap::new();
    let (r0, _) = lll_reduce(&l.gram).map_err(Error::Core)?;
    seen.insert(gram_key(&r0), 0);
    let mut queue = vec![l.clone()];
    let mut first = true;
    while let Some(cur) = queue.pop() {
        let lines = isotropic_lines(&cur, p);
        if lines.is_empty() {
            if first && classes.len() == 1 {
                return Err(Error::NoIsotropicVector);
            }
            continue;
        }
        first = false;
        for x in lines {
            let lifted = lift_isotropic(&cur, &x, &pb)?;
            let nb = neighbor_lattice(&cur, &lifted, &pb)?;
            debug_assert_eq!(nb.det(), det);
            let (rg, _) = lll_reduce(&nb.gram).map_err(Error::Core)?;
            let key = gram_key(&rg);
            if seen.contains_key(&key) {
                continue;
            }
            // isometry test against known classes
            let mut matched = None;
            for (ci, c) in classes.iter().enumerate() {
                if isometry_test(c, &nb)?.is_some() {
                    matched = Some(ci);
                    break;
                }
            }
            match matched {
                Some(ci) => {
                    seen.insert(key, ci);
                }
                None => {
                    classes.push(nb.clone());
                    seen.insert(key, classes.len() - 1);
                    queue.push(nb);
                }
            }
        }
    }
    Ok(classes)
}

fn gram_key(g: &Mat<Rational>) -> String {
    let mut s = String::new();
    for x in &g.data {
        s.push_str(&x.to_string());
        s.push(',');
    }
    s
}

/// Maximum of the quadratic form on nonzero vectors of a negative definite
/// lattice: the largest norm (closest to zero) attained.
pub fn negative_definite_maximum(l: &QuadLattice) -> Result<Rational> {
    let (sp, _sm, sz) = l.signature();
    if sp > 0 || sz > 0 {
        return Err(Error::IndefiniteLattice);
    }
    let mut k: i64 = 2;
    loop {
        let r = enumerate_vectors(l, &rat_i64(-k), None)?;
        if !r.vectors.is_empty() {
            return Ok(rat_i64(-k));
        }
        k += 2;
        if k > 1000 {
            return Err(Error::Core(exactcore::Error::Invalid(
                "no short vector found up to norm -1000".into(),
            )));
        }
    }
}
