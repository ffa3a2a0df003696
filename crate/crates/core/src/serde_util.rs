//! Serde adapters that render rationals as `"p/q"` strings.

use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::scalar::{format_rational, parse_rational};

/// A single rational.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// An optional rational.
pub mod rational_opt {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(format_rational).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|v| parse_rational(&v).map_err(D::Error::custom)).transpose()
    }
}

/// A list of rationals.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(x: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        x.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_rational(s).map_err(D::Error::custom)).collect()
    }
}

/// A list of rational pairs.
pub mod rational_pairs {
    use super::*;

    pub fn serialize<S: Serializer>(x: &[(BigRational, BigRational)], s: S) -> Result<S::Ok, S::Error> {
        x.iter()
            .map(|(a, b)| (format_rational(a), format_rational(b)))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(BigRational, BigRational)>, D::Error> {
        let v = Vec::<(String, String)>::deserialize(d)?;
        v.iter()
            .map(|(a, b)| Ok((parse_rational(a).map_err(D::Error::custom)?, parse_rational(b).map_err(D::Error::custom)?)))
            .collect()
    }
}

/// A big integer rendered as a decimal string.
pub mod bigint {
    use super::*;
    use num_bigint::BigInt;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// An optional big integer rendered as a decimal string or `null`.
pub mod bigint_opt {
    use super::*;
    use num_bigint::BigInt;

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(|v| v.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?.map(|s| s.parse().map_err(D::Error::custom)).transpose()
    }
}
