//! Small sparse multivariate polynomials over a field, sufficient for the
//! invariant-theory checks: addition, multiplication, linear substitution by
//! a matrix (row-vector action) and general per-variable substitution.

use crate::field::FieldOps;
use crate::matrix::Mat;
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Sparse polynomial in `arity` variables; keys are exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPolyLite<E> {
    pub arity: usize,
    pub terms: BTreeMap<Vec<u32>, E>,
}

impl<E: Clone + PartialEq> MultiPolyLite<E> {
    pub fn zero(arity: usize) -> Self {
        MultiPolyLite { arity, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }
}

pub fn term<F: FieldOps>(
    f: &F,
    arity: usize,
    exps: &[u32],
    coeff: F::Elem,
) -> Result<MultiPolyLite<F::Elem>> {
    if exps.len() != arity {
        return Err(Error::DimensionMismatch("exponent arity".into()));
    }
    let mut p = MultiPolyLite::zero(arity);
    if !f.is_zero(&coeff) {
        p.terms.insert(exps.to_vec(), coeff);
    }
    Ok(p)
}

pub fn var<F: FieldOps>(f: &F, arity: usize, i: usize) -> MultiPolyLite<F::Elem> {
    let mut e = vec![0u32; arity];
    e[i] = 1;
    term(f, arity, &e, f.one()).expect("arity matches")
}

pub fn add<F: FieldOps>(
    f: &F,
    a: &MultiPolyLite<F::Elem>,
    b: &MultiPolyLite<F::Elem>,
) -> Result<MultiPolyLite<F::Elem>> {
    if a.arity != b.arity {
        return Err(Error::DimensionMismatch("multipoly arity".into()));
    }
    let mut out = a.clone();
    for (e, c) in &b.terms {
        let v = match out.terms.get(e) {
            Some(x) => f.add(x, c),
            None => c.clone(),
        };
        if f.is_zero(&v) {
            out.terms.remove(e);
        } else {
            out.terms.insert(e.clone(), v);
        }
    }
    Ok(out)
}

pub fn neg<F: FieldOps>(f: &F, a: &MultiPolyLite<F::Elem>) -> MultiPolyLite<F::Elem> {
    MultiPolyLite {
        arity: a.arity,
        terms: a.terms.iter().map(|(e, c)| (e.clone(), f.neg(c))).collect(),
    }
}

pub fn sub<F: FieldOps>(
    f: &F,
    a: &MultiPolyLite<F::Elem>,
    b: &MultiPolyLite<F::Elem>,
) -> Result<MultiPolyLite<F::Elem>> {
    add(f, a, &neg(f, b))
}

pub fn scale<F: FieldOps>(
    f: &F,
    a: &MultiPolyLite<F::Elem>,
    c: &F::Elem,
) -> MultiPolyLite<F::Elem> {
    if f.is_zero(c) {
        return MultiPolyLite::zero(a.arity);
    }
    MultiPolyLite {
        arity: a.arity,
        terms: a.terms.iter().map(|(e, x)| (e.clone(), f.mul(x, c))).collect(),
    }
}

pub fn mul<F: FieldOps>(
    f: &F,
    a: &MultiPolyLite<F::Elem>,
    b: &MultiPolyLite<F::Elem>,
) -> Result<MultiPolyLite<F::Elem>> {
    if a.arity != b.arity {
        return Err(Error::DimensionMismatch("multipoly arity".into()));
    }
    let mut out = MultiPolyLite::zero(a.arity);
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = f.mul(ca, cb);
            let v = match out.terms.get(&e) {
                Some(x) => f.add(x, &c),
                None => c,
            };
            if f.is_zero(&v) {
                out.terms.remove(&e);
            } else {
                out.terms.insert(e, v);
            }
        }
    }
    Ok(out)
}

pub fn pow<F: FieldOps>(
    f: &F,
    a: &MultiPolyLite<F::Elem>,
    e: u32,
) -> Result<MultiPolyLite<F::Elem>> {
    let mut acc = term(f, a.arity, &vec![0; a.arity], f.one())?;
    for _ in 0..e {
        acc = mul(f, &acc, a)?;
    }
    Ok(acc)
}

/// Substitutes `subs[i]` for variable i.
pub fn substitute<F: FieldOps>(
    f: &F,
    a: &MultiPolyLite<F::Elem>,
    subs: &[MultiPolyLite<F::Elem>],
) -> Result<MultiPolyLite<F::Elem>> {
    if subs.len() != a.arity {
        return Err(Error::DimensionMismatch("substitution arity".into()));
    }
    let out_arity = subs.first().map_or(a.arity, |s| s.arity);
    let mut out = MultiPolyLite::zero(out_arity);
    for (e, c) in &a.terms {
        let mut t = term(f, out_arity, &vec![0; out_arity], c.clone())?;
        for (i, &exp) in e.iter().enumerate() {
            if exp > 0 {
                t = mul(f, &t, &pow(f, &subs[i], exp)?)?;
            }
        }
        out = add(f, &out, &t)?;
    }
    Ok(out)
}

/// Linear substitution x |-> x . M (row-vector action): variable i is replaced
/// by sum_j M[i][j] x_j.
pub fn act_by_matrix<F: FieldOps>(
    f: &F,
    a: &MultiPolyLite<F::Elem>,
    m: &Mat<F::Elem>,
) -> Result<MultiPolyLite<F::Elem>> {
    if m.rows != a.arity || m.cols != a.arity {
        return Err(Error::DimensionMismatch("matrix action arity".into()));
    }
    let subs: Vec<MultiPolyLite<F::Elem>> = (0..a.arity)
        .map(|i| {
            let mut s = MultiPolyLite::zero(a.arity);
            for j in 0..a.arity {
                let c = m.at(i, j);
                if !f.is_zero(c) {
                    let mut e = vec![0u32; a.arity];
                    e[j] = 1;
                    s.terms.insert(e, c.clone());
                }
            }
            s
        })
        .collect();
    substitute(f, a, &subs)
}

/// If b = c * a for a scalar c, returns c.
pub fn scalar_ratio<F: FieldOps>(
    f: &F,
    a: &MultiPolyLite<F::Elem>,
    b: &MultiPolyLite<F::Elem>,
) -> Option<F::Elem> {
    if a.arity != b.arity || a.terms.len() != b.terms.len() {
        return None;
    }
    if a.is_zero() {
        return Some(f.one());
    }
    let (e0, c0) = a.terms.iter().next().unwrap();
    let d0 = b.terms.get(e0)?;
    let ratio = f.div(d0, c0).ok()?;
    for (e, c) in &a.terms {
        let d = b.terms.get(e)?;
        if *d != f.mul(c, &ratio) {
            return None;
        }
    }
    Some(ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat_i64, QQ};
    use crate::matrix::Mat;

    #[test]
    fn homogeneous_and_arith() {
        let f = QQ;
        // q = xy + zw in 4 variables
        let q = add(
            &f,
            &term(&f, 4, &[1, 1, 0, 0], rat_i64(1)).unwrap(),
            &term(&f, 4, &[0, 0, 1, 1], rat_i64(1)).unwrap(),
        )
        .unwrap();
        assert!(q.is_homogeneous());
        assert_eq!(q.total_degree(), Some(2));
        assert!(sub(&f, &q, &q).unwrap().is_zero());
    }

    #[test]
    fn matrix_action_and_ratio() {
        let f = QQ;
        let q = add(
            &f,
            &term(&f, 2, &[1, 1], rat_i64(1)).unwrap(),
            &term(&f, 2, &[2, 0], rat_i64(1)).unwrap(),
        )
        .unwrap();
        // scale both variables by 2: degree-2 homogeneous scales by 4
        let m = Mat::from_rows(vec![
            vec![rat_i64(2), rat_i64(0)],
            vec![rat_i64(0), rat_i64(2)],
        ])
        .unwrap();
        let qm = act_by_matrix(&f, &q, &m).unwrap();
        assert_eq!(scalar_ratio(&f, &q, &qm), Some(rat_i64(4)));
    }

    #[test]
    fn substitution() {
        let f = QQ;
        // p = x^2, substitute x = y + 1 (in 1 variable we need arity bookkeeping)
        let p = term(&f, 1, &[2], rat_i64(1)).unwrap();
        let s = add(
            &f,
            &term(&f, 1, &[1], rat_i64(1)).unwrap(),
            &term(&f, 1, &[0], rat_i64(1)).unwrap(),
        )
        .unwrap();
        let r = substitute(&f, &p, &[s]).unwrap();
        let want = add(
            &f,
            &add(
                &f,
                &term(&f, 1, &[2], rat_i64(1)).unwrap(),
                &term(&f, 1, &[1], rat_i64(2)).unwrap(),
            )
            .unwrap(),
            &term(&f, 1, &[0], rat_i64(1)).unwrap(),
        )
        .unwrap();
        assert_eq!(r, want);
    }
}
