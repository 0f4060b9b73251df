use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Exact rational scalar. Always in lowest terms with a positive denominator.
pub type Scalar = BigRational;

/// Integer as a scalar.
pub fn q(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `num / den` as a scalar. Panics when `den == 0`.
pub fn qf(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `"p/q"`, always with an explicit denominator.
pub fn format_rational(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"p"` or `"p/q"`. Decimal points and exponents are rejected so that
/// nothing inexact can enter.
pub fn parse_rational(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = |m: &str| Error::parse("rational", format!("{m}: {s:?}"));
    if s.contains(['.', 'e', 'E']) {
        return Err(bad("floating-point literal"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}



/// Serde adapter writing a [`Scalar`] as a `"p/q"` string.
pub mod rational_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Scalar};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of `"p/q"` strings.
pub mod rational_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{format_rational, parse_rational, Scalar};

    pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
