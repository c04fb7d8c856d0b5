//! JSON encodings for exact scalars and their aggregates.
//!
//! Rational: string "num/den", or just "num" when the denominator is 1.
//! Number-field element: ascending coefficient array of rational strings.
//! Polynomial: ascending coefficient array. Matrix: row-major array of rows.

use crate::field::Rational;
use crate::matrix::Mat;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::Value;
use std::str::FromStr;

pub fn rational_to_json(q: &Rational) -> Value {
    if q.denom().is_one() {
        Value::String(q.numer().to_string())
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(BigInt::from(i)))
            } else {
                Err(Error::Invalid(format!("non-integer JSON number {n}")))
            }
        }
        other => Err(Error::Invalid(format!("expected rational, got {other}"))),
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let mut parts = s.splitn(2, '/');
    let num = parts.next().unwrap_or("");
    let num = BigInt::from_str(num.trim())
        .map_err(|_| Error::Invalid(format!("bad rational numerator in {s:?}")))?;
    match parts.next() {
        None => Ok(Rational::from_integer(num)),
        Some(d) => {
            let den = BigInt::from_str(d.trim())
                .map_err(|_| Error::Invalid(format!("bad rational denominator in {s:?}")))?;
            if den == BigInt::from(0) {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(num, den))
        }
    }
}

pub fn poly_to_json(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(rational_to_json).collect())
}

pub fn poly_from_json(v: &Value) -> Result<Vec<Rational>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Invalid("expected polynomial coefficient array".into()))?;
    arr.iter().map(rational_from_json).collect()
}

/// A number-field element is encoded exactly like a (fixed-length) polynomial.
pub fn nf_elem_to_json(e: &[Rational]) -> Value {
    poly_to_json(e)
}

pub fn nf_elem_from_json(v: &Value, degree: usize) -> Result<Vec<Rational>> {
    let mut coeffs = poly_from_json(v)?;
    if coeffs.len() > degree {
        return Err(Error::Invalid(format!(
            "element has {} coefficients, field degree is {degree}",
            coeffs.len()
        )));
    }
    coeffs.resize(degree, Rational::from_integer(BigInt::from(0)));
    Ok(coeffs)
}

pub fn matrix_to_json(m: &Mat<Rational>) -> Value {
    Value::Array(
        (0..m.rows)
            .map(|i| Value::Array(m.row(i).iter().map(rational_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<Mat<Rational>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Invalid("expected matrix array".into()))?;
    let parsed: Result<Vec<Vec<Rational>>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Invalid("expected matrix row array".into()))?
                .iter()
                .map(rational_from_json)
                .collect()
        })
        .collect();
    Mat::from_rows(parsed?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_i64};

    #[test]
    fn rational_roundtrip() {
        for q in [rat_i64(5), rat_i64(-3), rat(1, 2), rat(-7, 4)] {
            let j = rational_to_json(&q);
            assert_eq!(rational_from_json(&j).unwrap(), q);
        }
        assert_eq!(rational_to_json(&rat_i64(5)), Value::String("5".into()));
        assert_eq!(rational_to_json(&rat(1, 2)), Value::String("1/2".into()));
        assert_eq!(rational_from_json(&serde_json::json!(7)).unwrap(), rat_i64(7));
    }

    #[test]
    fn matrix_roundtrip() {
        let m = Mat::from_rows(vec![
            vec![rat_i64(0), rat(1, 2)],
            vec![rat_i64(-1), rat_i64(3)],
        ])
        .unwrap();
        let j = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&j).unwrap(), m);
    }

    #[test]
    fn bad_input_rejected() {
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
