//! Serde adapters writing big integers as JSON numbers when they fit in 64 bits and
//! as decimal strings otherwise.

use serde::{de, Deserialize, Deserializer, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum Repr {
    Unsigned(u64),
    Signed(i64),
    Text(String),
}

pub mod unsigned {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        match v.to_u64() {
            Some(x) => s.serialize_u64(x),
            None => s.serialize_str(&v.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Unsigned(x) => Ok(x.into()),
            Repr::Signed(x) => Err(de::Error::custom(format!("expected a non-negative integer, got {x}"))),
            Repr::Text(t) => t.parse().map_err(|_| de::Error::custom(format!("bad integer {t:?}"))),
        }
    }
}

pub mod signed {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&v.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Unsigned(x) => Ok(x.into()),
            Repr::Signed(x) => Ok(x.into()),
            Repr::Text(t) => t.parse().map_err(|_| de::Error::custom(format!("bad integer {t:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::{BigInt, BigUint};
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Pair {
        #[serde(with = "super::unsigned")]
        u: BigUint,
        #[serde(with = "super::signed")]
        s: BigInt,
    }

    #[test]
    fn round_trip() {
        let big: BigUint = BigUint::from(u64::MAX) * 3u32;
        for p in [Pair { u: 5u32.into(), s: (-7).into() }, Pair { u: big.clone(), s: BigInt::from(big) * -1 }] {
            let text = serde_json::to_string(&p).unwrap();
            assert_eq!(serde_json::from_str::<Pair>(&text).unwrap(), p);
        }
        assert_eq!(serde_json::to_string(&Pair { u: 5u32.into(), s: 2.into() }).unwrap(), r#"{"u":5,"s":2}"#);
        assert!(serde_json::from_str::<Pair>(r#"{"u":-1,"s":0}"#).is_err());
    }
}
