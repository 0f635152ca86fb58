//! Exact scalars: big rationals and the extended half-line `[0, ∞]`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// How `0 · ∞` is resolved inside a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConventionMode {
    /// `0 · ∞ := 0`
    Zero,
    /// `0 · ∞ := ∞`
    Inf,
}

/// A rational number or `+∞`.
///
/// Finite values are usually nonnegative; negative finite values are allowed so
/// that differences of lattice elements can be represented, but any product of a
/// negative value with `∞` is rejected.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtScalar {
    Finite(Rational),
    Inf,
}

impl Ord for ExtScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtScalar::Finite(a), ExtScalar::Finite(b)) => a.cmp(b),
            (ExtScalar::Finite(_), ExtScalar::Inf) => Ordering::Less,
            (ExtScalar::Inf, ExtScalar::Finite(_)) => Ordering::Greater,
            (ExtScalar::Inf, ExtScalar::Inf) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rational> for ExtScalar {
    fn from(q: Rational) -> Self {
        ExtScalar::Finite(q)
    }
}

impl From<i64> for ExtScalar {
    fn from(n: i64) -> Self {
        ExtScalar::Finite(int(n))
    }
}

impl ExtScalar {
    pub fn zero() -> Self {
        ExtScalar::Finite(Rational::zero())
    }

    pub fn one() -> Self {
        ExtScalar::Finite(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtScalar::Finite(q) if q.is_zero())
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtScalar::Inf)
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, ExtScalar::Finite(q) if q.is_negative())
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtScalar::Finite(q) => Some(q),
            ExtScalar::Inf => None,
        }
    }

    pub fn expect_finite(&self) -> Result<&Rational> {
        self.finite()
            .ok_or_else(|| Error::Input("expected a finite value, found inf".into()))
    }

    pub fn add(&self, other: &ExtScalar) -> ExtScalar {
        match (self, other) {
            (ExtScalar::Finite(a), ExtScalar::Finite(b)) => ExtScalar::Finite(a + b),
            _ => ExtScalar::Inf,
        }
    }

    /// Product without a convention; `0 · ∞` is an error.
    pub fn try_mul(&self, other: &ExtScalar) -> Result<ExtScalar> {
        match (self, other) {
            (ExtScalar::Finite(a), ExtScalar::Finite(b)) => Ok(ExtScalar::Finite(a * b)),
            (ExtScalar::Finite(q), ExtScalar::Inf) | (ExtScalar::Inf, ExtScalar::Finite(q)) => {
                if q.is_zero() {
                    Err(Error::UndefinedProduct)
                } else if q.is_negative() {
                    Err(Error::Input("negative value multiplied by inf".into()))
                } else {
                    Ok(ExtScalar::Inf)
                }
            }
            (ExtScalar::Inf, ExtScalar::Inf) => Ok(ExtScalar::Inf),
        }
    }

    pub fn mul(&self, other: &ExtScalar, mode: ConventionMode) -> Result<ExtScalar> {
        match self.try_mul(other) {
            Err(Error::UndefinedProduct) => Ok(match mode {
                ConventionMode::Zero => ExtScalar::zero(),
                ConventionMode::Inf => ExtScalar::Inf,
            }),
            other => other,
        }
    }

    /// Integer power with `0^t := ∞` and `∞^t := 0` for `t < 0`.
    pub fn powi(&self, t: i64) -> Result<ExtScalar> {
        if t == 0 {
            return Ok(ExtScalar::one());
        }
        let exp = i32::try_from(t.unsigned_abs())
            .map_err(|_| Error::Input(format!("exponent {t} too large")))?;
        match self {
            ExtScalar::Inf => Ok(if t > 0 { ExtScalar::Inf } else { ExtScalar::zero() }),
            ExtScalar::Finite(q) if q.is_zero() => {
                Ok(if t > 0 { ExtScalar::zero() } else { ExtScalar::Inf })
            }
            ExtScalar::Finite(q) => {
                let p = num_traits::pow(q.clone(), exp as usize);
                Ok(ExtScalar::Finite(if t > 0 { p } else { p.recip() }))
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtScalar::Finite(q) => q.to_f64().unwrap_or(f64::NAN),
            ExtScalar::Inf => f64::INFINITY,
        }
    }
}

pub fn ext_sum<'a>(items: impl IntoIterator<Item = &'a ExtScalar>) -> ExtScalar {
    items
        .into_iter()
        .fold(ExtScalar::zero(), |acc, x| acc.add(x))
}

pub fn ext_product<'a>(
    items: impl IntoIterator<Item = &'a ExtScalar>,
    mode: ConventionMode,
) -> Result<ExtScalar> {
    // Resolve the convention over the whole product, not pairwise: a zero and an
    // infinity anywhere in the list decide the value.
    let items: Vec<&ExtScalar> = items.into_iter().collect();
    let has_zero = items.iter().any(|x| x.is_zero());
    let has_inf = items.iter().any(|x| x.is_inf());
    if has_zero && has_inf {
        if items.iter().any(|x| x.is_negative()) {
            return Err(Error::Input("negative value multiplied by inf".into()));
        }
        return Ok(match mode {
            ConventionMode::Zero => ExtScalar::zero(),
            ConventionMode::Inf => ExtScalar::Inf,
        });
    }
    let mut acc = ExtScalar::one();
    for x in items {
        acc = acc.try_mul(x)?;
    }
    Ok(acc)
}

/// Whether a rational is an integer, returning it as `i64` when it fits.
pub fn as_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"`, `"p/q"` or `"inf"`.
pub fn parse_ext(s: &str) -> Result<ExtScalar> {
    let s = s.trim();
    if s == "inf" {
        return Ok(ExtScalar::Inf);
    }
    parse_rational(s).map(ExtScalar::Finite)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Input(format!("cannot parse rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Input("denominator must be nonzero".into()));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtScalar::Finite(q) => f.write_str(&format_rational(q)),
            ExtScalar::Inf => f.write_str("inf"),
        }
    }
}

// JSON form: {"num": p, "den": q}, an integer shorthand, or "inf".

fn serialize_bigint<S: SerializeMap>(map: &mut S, key: &str, v: &BigInt) -> std::result::Result<(), S::Error> {
    match v.to_i64() {
        Some(i) => map.serialize_entry(key, &i),
        None => map.serialize_entry(key, &v.to_string()),
    }
}

fn serialize_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(2))?;
    serialize_bigint(&mut map, "num", q.numer())?;
    serialize_bigint(&mut map, "den", q.denom())?;
    map.end()
}

impl Serialize for ExtScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtScalar::Finite(q) => serialize_rational(q, s),
            ExtScalar::Inf => s.serialize_str("inf"),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BigIntRepr {
    Int(i64),
    Str(String),
}

impl BigIntRepr {
    fn into_bigint<E: de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            BigIntRepr::Int(i) => Ok(BigInt::from(i)),
            BigIntRepr::Str(s) => s
                .parse()
                .map_err(|_| E::custom(format!("invalid integer string `{s}`"))),
        }
    }
}

struct ExtVisitor {
    allow_inf: bool,
}

impl<'de> Visitor<'de> for ExtVisitor {
    type Value = ExtScalar;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.allow_inf {
            f.write_str("an integer, {\"num\": p, \"den\": q}, or \"inf\"")
        } else {
            f.write_str("an integer or {\"num\": p, \"den\": q}")
        }
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExtScalar, E> {
        Ok(ExtScalar::Finite(int(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExtScalar, E> {
        Ok(ExtScalar::Finite(Rational::from_integer(BigInt::from(v))))
    }

    fn visit_f64<E: de::Error>(self, _: f64) -> std::result::Result<ExtScalar, E> {
        Err(E::custom("floating-point literals are not accepted; use {\"num\", \"den\"}"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExtScalar, E> {
        if v == "inf" && self.allow_inf {
            Ok(ExtScalar::Inf)
        } else {
            Err(E::invalid_value(de::Unexpected::Str(v), &self))
        }
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<ExtScalar, A::Error> {
        let mut num: Option<BigInt> = None;
        let mut den: Option<BigInt> = None;
        while let Some(key) = map.next_key::<String>()? {
            match key.as_str() {
                "num" => num = Some(map.next_value::<BigIntRepr>()?.into_bigint()?),
                "den" => den = Some(map.next_value::<BigIntRepr>()?.into_bigint()?),
                other => return Err(de::Error::unknown_field(other, &["num", "den"])),
            }
        }
        let num = num.ok_or_else(|| de::Error::missing_field("num"))?;
        let den = den.ok_or_else(|| de::Error::missing_field("den"))?;
        if den.is_zero() {
            return Err(de::Error::custom("denominator must be nonzero"));
        }
        Ok(ExtScalar::Finite(Rational::new(num, den)))
    }
}

impl<'de> Deserialize<'de> for ExtScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(ExtVisitor { allow_inf: true })
    }
}

/// JSON wrapper for an exact (finite) rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_rational(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match d.deserialize_any(ExtVisitor { allow_inf: false })? {
            ExtScalar::Finite(q) => Ok(Q(q)),
            ExtScalar::Inf => unreachable!("inf rejected by visitor"),
        }
    }
}

impl From<Rational> for Q {
    fn from(q: Rational) -> Self {
        Q(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_times_inf_needs_mode() {
        let z = ExtScalar::zero();
        assert!(matches!(z.try_mul(&ExtScalar::Inf), Err(Error::UndefinedProduct)));
        assert_eq!(z.mul(&ExtScalar::Inf, ConventionMode::Zero).unwrap(), ExtScalar::zero());
        assert_eq!(z.mul(&ExtScalar::Inf, ConventionMode::Inf).unwrap(), ExtScalar::Inf);
    }

    #[test]
    fn negative_powers_follow_conventions() {
        assert_eq!(ExtScalar::zero().powi(-1).unwrap(), ExtScalar::Inf);
        assert_eq!(ExtScalar::Inf.powi(-2).unwrap(), ExtScalar::zero());
        assert_eq!(ExtScalar::from(2).powi(-2).unwrap(), ExtScalar::Finite(rat(1, 4)));
        assert_eq!(ExtScalar::Inf.powi(3).unwrap(), ExtScalar::Inf);
    }

    #[test]
    fn product_resolves_convention_globally() {
        let xs = [ExtScalar::Inf, ExtScalar::from(3), ExtScalar::zero()];
        assert_eq!(ext_product(&xs, ConventionMode::Zero).unwrap(), ExtScalar::zero());
        assert_eq!(ext_product(&xs, ConventionMode::Inf).unwrap(), ExtScalar::Inf);
    }

    #[test]
    fn json_forms() {
        let v: ExtScalar = serde_json::from_str(r#"{"num": 6, "den": 4}"#).unwrap();
        assert_eq!(v, ExtScalar::Finite(rat(3, 2)));
        let v: ExtScalar = serde_json::from_str(r#""inf""#).unwrap();
        assert_eq!(v, ExtScalar::Inf);
        assert!(serde_json::from_str::<ExtScalar>(r#"{"num": 1, "den": 0}"#).is_err());
        assert!(serde_json::from_str::<ExtScalar>(r#"{"num": 1, "den": 2, "x": 1}"#).is_err());
        assert!(serde_json::from_str::<Q>(r#""inf""#).is_err());
        assert!(serde_json::from_str::<Q>("0.5").is_err());
        let s = serde_json::to_string(&ExtScalar::Finite(rat(-1, 3))).unwrap();
        assert_eq!(s, r#"{"num":-1,"den":3}"#);
    }

    #[test]
    fn infinity_is_top() {
        assert!(ExtScalar::Inf > ExtScalar::from(1_000_000));
        assert_eq!(parse_ext("3/6").unwrap(), ExtScalar::Finite(rat(1, 2)));
        assert!(parse_rational("1/0").is_err());
    }
}
