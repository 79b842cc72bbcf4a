//! Exact rationals are serialized as `"p/q"` strings (or `"p"` for
//! integers), never as floats.

use num_rational::BigRational;
use serde::ser::SerializeSeq;
use serde::Serializer;

pub fn ratio<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub fn opt_ratio<S: Serializer>(value: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

pub fn ratio_array<S: Serializer>(values: &[BigRational; 3], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        seq.serialize_element(&v.to_string())?;
    }
    seq.end()
}
