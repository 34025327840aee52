//! Serialization helpers: arbitrary-precision values travel as decimal
//! strings so nothing is clipped to 64 bits on the wire.

use num_bigint::{BigInt, BigUint};
use serde::Serializer;

pub fn biguint_str<S: Serializer>(value: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&value.to_string())
}

pub fn bigint_str<S: Serializer>(value: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&value.to_string())
}

pub fn biguint_vec_str<S: Serializer>(values: &[BigUint], ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(values.iter().map(|v| v.to_string()))
}

pub fn bigint_vec_str<S: Serializer>(values: &[BigInt], ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(values.iter().map(|v| v.to_string()))
}
