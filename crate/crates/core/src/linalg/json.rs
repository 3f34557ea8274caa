//! Exact JSON encoding: every rational is a two-integer array `[num, den]`.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Number, Value};

use super::gauss::Gq;
use super::herm::{ExactHerm, HermMatrix};
use super::rational::Rational;
use super::rmatrix::RMatrix;
use super::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error("expected {expected} at {path}")]
    Shape { expected: &'static str, path: String },
    #[error("zero denominator at {0}")]
    ZeroDenominator(String),
    #[error("invalid value at {path}: {reason}")]
    Invalid { path: String, reason: String },
}

impl JsonError {
    pub fn shape(expected: &'static str, path: impl Into<String>) -> Self {
        JsonError::Shape { expected, path: path.into() }
    }
}

fn big_to_json(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

fn big_from_json(v: &Value, path: &str) -> Result<BigInt, JsonError> {
    match v {
        Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| JsonError::shape("integer", path))
        }
        _ => Err(JsonError::shape("integer", path)),
    }
}

/// Hex SHA-256 of the compact serialization of `v`.
pub fn json_digest(v: &Value) -> String {
    use sha2::{Digest, Sha256};
    let text = serde_json::to_string(v).expect("serializable");
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn rat_to_json(r: &Rational) -> Value {
    Value::Array(vec![big_to_json(r.numer()), big_to_json(r.denom())])
}

pub fn rat_from_json(v: &Value, path: &str) -> Result<Rational, JsonError> {
    let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| JsonError::shape("[num, den]", path))?;
    let num = big_from_json(&arr[0], path)?;
    let den = big_from_json(&arr[1], path)?;
    if num_traits::Zero::is_zero(&den) {
        return Err(JsonError::ZeroDenominator(path.to_string()));
    }
    Ok(Rational::new(num, den))
}

pub fn vec_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat_to_json).collect())
}

pub fn vec_from_json(v: &Value, path: &str) -> Result<Vec<Rational>, JsonError> {
    v.as_array()
        .ok_or_else(|| JsonError::shape("array of rationals", path))?
        .iter()
        .enumerate()
        .map(|(i, x)| rat_from_json(x, &format!("{path}[{i}]")))
        .collect()
}

pub fn vecs_to_json(v: &[Vec<Rational>]) -> Value {
    Value::Array(v.iter().map(|x| vec_to_json(x)).collect())
}

pub fn vecs_from_json(v: &Value, path: &str) -> Result<Vec<Vec<Rational>>, JsonError> {
    v.as_array()
        .ok_or_else(|| JsonError::shape("array of vectors", path))?
        .iter()
        .enumerate()
        .map(|(i, x)| vec_from_json(x, &format!("{path}[{i}]")))
        .collect()
}

pub fn rmatrix_to_json(m: &RMatrix) -> Value {
    serde_json::json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": vecs_to_json(&m.row_vecs()),
    })
}

pub fn rmatrix_from_json(v: &Value, path: &str) -> Result<RMatrix, JsonError> {
    let rows = vecs_from_json(&v["entries"], &format!("{path}.entries"))?;
    let expect_rows = usize_field(v, "rows", path)?;
    let expect_cols = usize_field(v, "cols", path)?;
    if rows.len() != expect_rows || rows.iter().any(|r| r.len() != expect_cols) {
        return Err(JsonError::shape("rows x cols entries", path));
    }
    if expect_rows == 0 {
        return Ok(RMatrix::zeros(0, expect_cols));
    }
    RMatrix::from_rows(&rows).map_err(|e| JsonError::Invalid { path: path.into(), reason: e.to_string() })
}

pub fn usize_field(v: &Value, key: &str, path: &str) -> Result<usize, JsonError> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| JsonError::shape("nonnegative integer", format!("{path}.{key}")))
}

/// `{"d", "entries": [[re_num, re_den, im_num, im_den], …]}`, lower triangle row-major.
/// Float matrices are written through their exact binary value.
pub fn herm_to_json<S: Scalar>(h: &HermMatrix<S>) -> Value {
    let entries: Vec<Value> = h
        .lower()
        .iter()
        .map(|z| {
            let z = z.to_exact();
            Value::Array(vec![
                big_to_json(z.re.numer()),
                big_to_json(z.re.denom()),
                big_to_json(z.im.numer()),
                big_to_json(z.im.denom()),
            ])
        })
        .collect();
    serde_json::json!({ "d": h.dim(), "entries": entries })
}

pub fn herm_from_json(v: &Value, path: &str) -> Result<ExactHerm, JsonError> {
    let d = usize_field(v, "d", path)?;
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError::shape("entries array", format!("{path}.entries")))?;
    let mut lower = Vec::with_capacity(entries.len());
    for (i, e) in entries.iter().enumerate() {
        let p = format!("{path}.entries[{i}]");
        let arr = e.as_array().filter(|a| a.len() == 4).ok_or_else(|| JsonError::shape("[re_num, re_den, im_num, im_den]", &p))?;
        let re = rat_from_json(&Value::Array(arr[0..2].to_vec()), &p)?;
        let im = rat_from_json(&Value::Array(arr[2..4].to_vec()), &p)?;
        lower.push(Gq::new(re, im));
    }
    HermMatrix::from_lower(d, lower).map_err(|e| JsonError::Invalid { path: path.into(), reason: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rat;

    #[test]
    fn big_rationals_round_trip() {
        let big = Rational::new(BigInt::from(10).pow(40) + 7, BigInt::from(3).pow(30));
        let v = rat_to_json(&big);
        assert_eq!(rat_from_json(&v, "$").unwrap(), big);
        let text = serde_json::to_string(&v).unwrap();
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(rat_from_json(&back, "$").unwrap(), big);
        assert_eq!(rat_to_json(&rat(-1, 3)).to_string(), "[-1,3]");
    }

    #[test]
    fn rejects_zero_denominator() {
        let v: Value = serde_json::from_str("[1,0]").unwrap();
        assert!(matches!(rat_from_json(&v, "$"), Err(JsonError::ZeroDenominator(_))));
    }

    #[test]
    fn herm_round_trip() {
        let h = ExactHerm::from_rows(&[
            vec![Gq::real(rat(1, 2)), Gq::new(rat(0, 1), rat(-1, 3))],
            vec![Gq::new(rat(0, 1), rat(1, 3)), Gq::real(rat(2, 1))],
        ])
        .unwrap();
        let v = herm_to_json(&h);
        assert_eq!(herm_from_json(&v, "$").unwrap(), h);
    }
}
