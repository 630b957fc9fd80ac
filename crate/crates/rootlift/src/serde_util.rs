//! Decimal-string (de)serialization for big integers and rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum Lit {
    Text(String),
    Int(i64),
}

fn parse_int<E: serde::de::Error>(l: Lit) -> Result<BigInt, E> {
    match l {
        Lit::Int(n) => Ok(BigInt::from(n)),
        Lit::Text(t) => t.trim().parse().map_err(|_| E::custom(format!("invalid integer {t:?}"))),
    }
}

/// Parses "p", "p/q" or "-p/q".
pub fn parse_rational(t: &str) -> Option<BigRational> {
    let t = t.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(t.parse().ok()?)),
    }
}

pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub mod big {
    use super::*;
    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        parse_int(Lit::deserialize(d)?)
    }
}

/// An integer given as a JSON number or decimal string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigLit(pub BigInt);

impl<'de> Deserialize<'de> for BigLit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        big::deserialize(d).map(BigLit)
    }
}

pub mod big_vec {
    use super::*;
    use serde::Serialize;
    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Lit>::deserialize(d)?.into_iter().map(parse_int).collect()
    }
}

pub mod big_vecs {
    use super::*;
    use serde::Serialize;
    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<Lit>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(parse_int).collect())
            .collect()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RatLit {
    Text(String),
    Int(i64),
}

fn parse_rat<E: serde::de::Error>(l: RatLit) -> Result<BigRational, E> {
    match l {
        RatLit::Int(n) => Ok(BigRational::from_integer(BigInt::from(n))),
        RatLit::Text(t) => parse_rational(&t).ok_or_else(|| E::custom(format!("invalid rational {t:?}"))),
    }
}

pub mod rat_vec {
    use super::*;
    use serde::Serialize;
    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(fmt_rational).collect::<Vec<_>>().serialize(s)
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<RatLit>::deserialize(d)?.into_iter().map(parse_rat).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(fmt_rational(&parse_rational("-3/6").unwrap()), "-1/2");
        assert_eq!(fmt_rational(&parse_rational("4").unwrap()), "4");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }
}
