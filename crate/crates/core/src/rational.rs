//! Exact rational numbers and their string serialization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Arbitrary-precision rational used throughout the crate.
pub type Rational = num_rational::BigRational;

/// `n / d` as a [`Rational`]. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fractional part `{x} = x - floor(x)`, always in `[0, 1)`.
pub fn fract(x: &Rational) -> Rational {
    x - x.floor()
}

/// Parses `"7/6"`, `"-1/3"`, `"2"`.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Input form of a rational: `"7/6"` or a plain integer.
#[derive(serde::Deserialize)]
#[serde(untagged)]
enum Raw {
    Int(i64),
    Text(String),
}

impl Raw {
    fn into_rational<E: serde::de::Error>(self) -> Result<Rational, E> {
        match self {
            Raw::Int(n) => Ok(int(n)),
            Raw::Text(t) => parse(&t).ok_or_else(|| E::custom(format!("invalid rational `{t}`"))),
        }
    }
}

/// Serde adapter writing a rational as its `Display` string. Reading also
/// accepts integers.
pub mod serde_str {
    use super::{Raw, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        Raw::deserialize(d)?.into_rational()
    }
}

/// Serde adapter for `BTreeMap<String, Rational>` with string values.
pub mod serde_map {
    use super::{Raw, Rational};
    use serde::{ser::SerializeMap, Deserialize, Deserializer, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<String, Rational>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let mut out = s.serialize_map(Some(map.len()))?;
        for (k, v) in map {
            out.serialize_entry(k, &v.to_string())?;
        }
        out.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<String, Rational>, D::Error> {
        let raw = BTreeMap::<String, Raw>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| Ok((k, v.into_rational()?)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractional_part_of_negative() {
        assert_eq!(fract(&ratio(-1, 3)), ratio(2, 3));
        assert_eq!(fract(&ratio(7, 6)), ratio(1, 6));
        assert_eq!(fract(&int(2)), int(0));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse("7/6"), Some(ratio(7, 6)));
        assert_eq!(parse(" -2 / 4 "), Some(ratio(-1, 2)));
        assert_eq!(parse("5"), Some(int(5)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn serde_accepts_integers() {
        #[derive(serde::Deserialize)]
        struct W {
            #[serde(with = "serde_str")]
            q: Rational,
            #[serde(with = "serde_map")]
            m: std::collections::BTreeMap<String, Rational>,
        }
        let w: W = serde_json::from_str(r#"{"q": -2, "m": {"a": "1/3", "b": 4}}"#).unwrap();
        assert_eq!(w.q, int(-2));
        assert_eq!(w.m["a"], ratio(1, 3));
        assert_eq!(w.m["b"], int(4));
        assert!(serde_json::from_str::<W>(r#"{"q": "1/0", "m": {}}"#).is_err());
    }
}
