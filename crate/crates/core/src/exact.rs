//! JSON encodings for exact numbers: big integers as plain JSON numbers of
//! any size, rationals as `"num/den"` strings.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

/// Formats a rational as `"num/den"` in lowest terms, `den > 0`.
pub fn ratio_to_string<T>(r: &Ratio<T>) -> String
where
    T: Clone + num_integer::Integer + std::fmt::Display,
{
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio<T>(s: &str) -> Option<Ratio<T>>
where
    T: Clone + num_integer::Integer + FromStr,
{
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n = n.trim().parse().ok()?;
    let d: T = d.trim().parse().ok()?;
    (!d.is_zero()).then(|| Ratio::new(n, d))
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&x.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&n.to_string()).map_err(D::Error::custom)
    }
}

pub mod biguint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&x.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigUint::from_str(&n.to_string()).map_err(D::Error::custom)
    }
}

pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let nums = xs
            .iter()
            .map(|x| serde_json::Number::from_str(&x.to_string()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::ser::Error::custom)?;
        nums.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<serde_json::Number>::deserialize(d)?
            .iter()
            .map(|n| BigInt::from_str(&n.to_string()).map_err(D::Error::custom))
            .collect()
    }
}

pub mod ratio {
    use super::*;

    pub fn serialize<S, T>(r: &Ratio<T>, s: S) -> Result<S::Ok, S::Error>
    where
        S: Serializer,
        T: Clone + num_integer::Integer + std::fmt::Display,
    {
        s.serialize_str(&ratio_to_string(r))
    }

    pub fn deserialize<'de, D, T>(d: D) -> Result<Ratio<T>, D::Error>
    where
        D: Deserializer<'de>,
        T: Clone + num_integer::Integer + FromStr,
    {
        let s = String::deserialize(d)?;
        parse_ratio(&s).ok_or_else(|| D::Error::custom(format!("expected \"num/den\", got {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Sample {
        #[serde(with = "bigint")]
        big: BigInt,
        #[serde(with = "ratio")]
        r: Ratio<i64>,
        #[serde(with = "bigint_vec")]
        v: Vec<BigInt>,
    }

    #[test]
    fn round_trip_large_values() {
        let big: BigInt = BigInt::from(3u8).pow(90) * -1;
        let s = Sample { big: big.clone(), r: Ratio::new(-6, 4), v: vec![BigInt::one(), big.clone()] };
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, format!(r#"{{"big":{big},"r":"-3/2","v":[1,{big}]}}"#));
        assert_eq!(serde_json::from_str::<Sample>(&json).unwrap(), s);
    }

    #[test]
    fn ratio_parsing() {
        assert_eq!(parse_ratio::<i64>("4"), Some(Ratio::from_integer(4)));
        assert_eq!(parse_ratio::<i64>("2/-4"), Some(Ratio::new(-1, 2)));
        assert_eq!(parse_ratio::<i64>("1/0"), None);
        assert_eq!(parse_ratio::<i64>("x/2"), None);
    }
}
