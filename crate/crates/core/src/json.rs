//! Small helpers for exact JSON numbers.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Number, Value};

pub(crate) fn int(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integers are valid JSON numbers"))
}

pub(crate) fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

/// Reads an integer array; accepts JSON numbers of any size.
pub(crate) fn read_ints(v: &Value) -> Option<Vec<BigInt>> {
    v.as_array()?
        .iter()
        .map(|x| match x {
            Value::Number(n) => BigInt::from_str(&n.to_string()).ok(),
            _ => None,
        })
        .collect()
}
