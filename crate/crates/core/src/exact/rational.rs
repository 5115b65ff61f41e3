//! Exact rationals and their JSON representation.
//!
//! All arithmetic is carried out in [`Rational`], which is always kept in
//! lowest terms with a positive denominator. On the wire a rational is either
//! a bare JSON integer (when the denominator is one and the value fits in an
//! `i64`) or a string `"p/q"`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

/// Exact rational number in lowest terms.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`, reduced. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let text = text.trim();
    let bad = || ExactError::ParseRational(text.to_string());
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ExactError::ZeroDenominator);
            }
            Ok(Rational::new(n, d))
        }
        None => BigInt::from_str(text)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
    }
}

/// Canonical text form: `p` when the denominator is one, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Integer value of `q`, if it is an integer fitting in `i64`.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || n < k {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Serde wrapper giving a [`Rational`] its JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JsonRational(pub Rational);

impl fmt::Display for JsonRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match to_i64(&self.0) {
            Some(n) => serializer.serialize_i64(n),
            None => serializer.serialize_str(&format_rational(&self.0)),
        }
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RatVisitor;

        impl Visitor<'_> for RatVisitor {
            type Value = JsonRational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a string \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(JsonRational(rat(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(JsonRational(Rational::from_integer(BigInt::from(v))))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
                Err(E::custom(format!(
                    "floating point value {v} is not allowed; write it as \"p/q\""
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                parse_rational(v).map(JsonRational).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(RatVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), rat(-7));
        assert_eq!(parse_rational("3/-6").unwrap(), ratio(-1, 2));
        assert_eq!(format_rational(&ratio(-2, 4)), "-1/2");
        assert_eq!(format_rational(&rat(5)), "5");
        assert!(matches!(parse_rational("1/0"), Err(ExactError::ZeroDenominator)));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn json_forms() {
        let v: Vec<JsonRational> = serde_json::from_str(r#"[1, "2/3", "-4"]"#).unwrap();
        assert_eq!(v[1].0, ratio(2, 3));
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"[1,"2/3",-4]"#);
        assert!(serde_json::from_str::<JsonRational>("0.5").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 3), rat(10));
        assert_eq!(binomial(3, 3), rat(1));
        assert_eq!(binomial(2, 3), rat(0));
    }

    proptest! {
        #[test]
        fn sum_clears_denominators(a in -1000i64..1000, b in 1i64..500, c in -1000i64..1000, d in 1i64..500) {
            let s = (ratio(a, b) + ratio(c, d)) * rat(b) * rat(d);
            prop_assert!(s.is_integer());
            prop_assert_eq!(s, rat(a * d + c * b));
        }

        #[test]
        fn always_reduced(a in -10_000i64..10_000, b in 1i64..10_000) {
            let q = ratio(a, b);
            prop_assert!(num_integer::Integer::gcd(q.numer(), q.denom()).is_one() || q.is_zero());
            prop_assert!(q.denom().is_positive());
        }
    }
}
