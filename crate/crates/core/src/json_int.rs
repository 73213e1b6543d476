//! Serde adapters writing big integers as plain JSON numbers.
//!
//! Values that fit `i64`/`u64` are emitted as numbers; anything larger falls
//! back to a decimal string. Both forms are accepted on input.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Deserializer, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum Repr {
    Signed(i64),
    Unsigned(u64),
    Text(String),
}

impl Repr {
    fn into_bigint<E: serde::de::Error>(self) -> Result<BigInt, E> {
        match self {
            Repr::Signed(v) => Ok(v.into()),
            Repr::Unsigned(v) => Ok(v.into()),
            Repr::Text(s) => s.parse().map_err(E::custom),
        }
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(v) {
            Ok(x) => s.serialize_i64(x),
            Err(_) => s.serialize_str(&v.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Repr::deserialize(d)?.into_bigint()
    }
}

pub mod biguint {
    use super::*;
    use serde::de::Error;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        match u64::try_from(v) {
            Ok(x) => s.serialize_u64(x),
            Err(_) => s.serialize_str(&v.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let v = Repr::deserialize(d)?.into_bigint::<D::Error>()?;
        v.to_biguint()
            .ok_or_else(|| D::Error::custom("expected a nonnegative integer"))
    }
}

pub mod bigint_matrix {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::Serialize;

    struct Row<'a>(&'a [BigInt]);

    impl Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(self.0.len()))?;
            for v in self.0 {
                match i64::try_from(v) {
                    Ok(x) => seq.serialize_element(&x)?,
                    Err(_) => seq.serialize_element(&v.to_string())?,
                }
            }
            seq.end()
        }
    }

    pub fn serialize<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            seq.serialize_element(&Row(row))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let raw: Vec<Vec<Repr>> = Deserialize::deserialize(d)?;
        raw.into_iter()
            .map(|row| row.into_iter().map(Repr::into_bigint).collect())
            .collect()
    }
}
