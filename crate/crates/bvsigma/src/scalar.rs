//! Dual-mode scalar arithmetic.
//!
//! Every function value is either an exact rational pair or a double pair,
//! and the mode is carried through all downstream computations. Exact-mode
//! magnitudes are produced only when they are rational (the difference is
//! real, purely imaginary, or a perfect square); otherwise the computation
//! reports [`Error::IrrationalMagnitude`] and the caller must switch the
//! data to float mode.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Exact rational scalar.
pub type Q = num_rational::BigRational;

/// Tolerance used when comparing float-mode quantities.
pub const FLOAT_TOL: f64 = 1e-9;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root of a nonnegative rational, when it exists in the rationals.
pub fn exact_sqrt(v: &Q) -> Option<Q> {
    if v.is_negative() {
        return None;
    }
    let num = v.numer().sqrt();
    let den = v.denom().sqrt();
    if &(&num * &num) == v.numer() && &(&den * &den) == v.denom() {
        Some(Q::new(num, den))
    } else {
        None
    }
}

/// Nonnegative real scalar in one of the two value modes.
#[derive(Clone, Debug)]
pub enum RScalar {
    Exact(Q),
    Float(f64),
}

impl RScalar {
    pub fn zero_exact() -> Self {
        RScalar::Exact(Q::zero())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RScalar::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RScalar::Exact(v) => q_to_f64(v),
            RScalar::Float(v) => *v,
        }
    }

    pub fn as_exact(&self) -> Option<&Q> {
        match self {
            RScalar::Exact(v) => Some(v),
            RScalar::Float(_) => None,
        }
    }

    pub fn add(&self, other: &RScalar) -> RScalar {
        match (self, other) {
            (RScalar::Exact(a), RScalar::Exact(b)) => RScalar::Exact(a + b),
            _ => RScalar::Float(self.to_f64() + other.to_f64()),
        }
    }

    pub fn sub_abs(&self, other: &RScalar) -> RScalar {
        match (self, other) {
            (RScalar::Exact(a), RScalar::Exact(b)) => RScalar::Exact((a - b).abs()),
            _ => RScalar::Float((self.to_f64() - other.to_f64()).abs()),
        }
    }

    pub fn scale(&self, factor: &Q) -> RScalar {
        match self {
            RScalar::Exact(v) => RScalar::Exact(v * factor),
            RScalar::Float(v) => RScalar::Float(v * q_to_f64(factor)),
        }
    }

    pub fn div_nat(&self, n: u64) -> RScalar {
        match self {
            RScalar::Exact(v) => RScalar::Exact(v / Q::from_integer(BigInt::from(n))),
            RScalar::Float(v) => RScalar::Float(v / n as f64),
        }
    }

    pub fn max(self, other: RScalar) -> RScalar {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RScalar::Exact(v) => v.is_zero(),
            RScalar::Float(v) => *v == 0.0,
        }
    }

    /// Equality up to the float tolerance; exact on two exact values.
    pub fn approx_eq(&self, other: &RScalar) -> bool {
        match (self, other) {
            (RScalar::Exact(a), RScalar::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= FLOAT_TOL,
        }
    }
}

impl PartialEq for RScalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (RScalar::Exact(a), RScalar::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl PartialOrd for RScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (RScalar::Exact(a), RScalar::Exact(b)) => a.partial_cmp(b),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for RScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RScalar::Exact(v) => write!(f, "{v}"),
            RScalar::Float(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for RScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(1))?;
        match self {
            RScalar::Exact(v) => m.serialize_entry("exact", &v.to_string())?,
            RScalar::Float(v) => m.serialize_entry("float", v)?,
        }
        m.end()
    }
}

/// Complex scalar in one of the two value modes.
#[derive(Clone, Debug, PartialEq)]
pub enum CScalar {
    Exact { re: Q, im: Q },
    Float { re: f64, im: f64 },
}

impl CScalar {
    pub fn exact(re: Q, im: Q) -> Self {
        CScalar::Exact { re, im }
    }

    pub fn exact_real(re: Q) -> Self {
        CScalar::Exact { re, im: Q::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        CScalar::exact_real(q_int(n))
    }

    pub fn float(re: f64, im: f64) -> Self {
        CScalar::Float { re, im }
    }

    pub fn zero_exact() -> Self {
        CScalar::exact_real(Q::zero())
    }

    pub fn one_exact() -> Self {
        CScalar::exact_real(Q::one())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CScalar::Exact { .. })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            CScalar::Exact { re, im } => re.is_zero() && im.is_zero(),
            CScalar::Float { re, im } => *re == 0.0 && *im == 0.0,
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        match self {
            CScalar::Exact { re, im } => (q_to_f64(re), q_to_f64(im)),
            CScalar::Float { re, im } => (*re, *im),
        }
    }

    pub fn add(&self, other: &CScalar) -> CScalar {
        match (self, other) {
            (CScalar::Exact { re: a, im: b }, CScalar::Exact { re: c, im: d }) => {
                CScalar::Exact { re: a + c, im: b + d }
            }
            _ => {
                let (a, b) = self.to_f64_pair();
                let (c, d) = other.to_f64_pair();
                CScalar::Float { re: a + c, im: b + d }
            }
        }
    }

    pub fn sub(&self, other: &CScalar) -> CScalar {
        match (self, other) {
            (CScalar::Exact { re: a, im: b }, CScalar::Exact { re: c, im: d }) => {
                CScalar::Exact { re: a - c, im: b - d }
            }
            _ => {
                let (a, b) = self.to_f64_pair();
                let (c, d) = other.to_f64_pair();
                CScalar::Float { re: a - c, im: b - d }
            }
        }
    }

    pub fn mul(&self, other: &CScalar) -> CScalar {
        match (self, other) {
            (CScalar::Exact { re: a, im: b }, CScalar::Exact { re: c, im: d }) => CScalar::Exact {
                re: a * c - b * d,
                im: a * d + b * c,
            },
            _ => {
                let (a, b) = self.to_f64_pair();
                let (c, d) = other.to_f64_pair();
                CScalar::Float {
                    re: a * c - b * d,
                    im: a * d + b * c,
                }
            }
        }
    }

    pub fn scale(&self, factor: &Q) -> CScalar {
        match self {
            CScalar::Exact { re, im } => CScalar::Exact {
                re: re * factor,
                im: im * factor,
            },
            CScalar::Float { re, im } => {
                let f = q_to_f64(factor);
                CScalar::Float { re: re * f, im: im * f }
            }
        }
    }

    /// Modulus, in the same mode as the value.
    pub fn abs(&self) -> Result<RScalar> {
        match self {
            CScalar::Exact { re, im } => {
                if im.is_zero() {
                    Ok(RScalar::Exact(re.abs()))
                } else if re.is_zero() {
                    Ok(RScalar::Exact(im.abs()))
                } else {
                    let sq = re * re + im * im;
                    exact_sqrt(&sq)
                        .map(RScalar::Exact)
                        .ok_or(Error::IrrationalMagnitude)
                }
            }
            CScalar::Float { re, im } => Ok(RScalar::Float(re.hypot(*im))),
        }
    }

    pub fn abs_diff(&self, other: &CScalar) -> Result<RScalar> {
        self.sub(other).abs()
    }

    /// Equality up to the float tolerance; exact on two exact values.
    pub fn approx_eq(&self, other: &CScalar) -> bool {
        match (self, other) {
            (CScalar::Exact { re: a, im: b }, CScalar::Exact { re: c, im: d }) => a == c && b == d,
            _ => {
                let (a, b) = self.to_f64_pair();
                let (c, d) = other.to_f64_pair();
                (a - c).abs() <= FLOAT_TOL && (b - d).abs() <= FLOAT_TOL
            }
        }
    }
}

impl fmt::Display for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CScalar::Exact { re, im } => write!(f, "{re}+{im}i"),
            CScalar::Float { re, im } => write!(f, "{re}+{im}i"),
        }
    }
}

impl Serialize for CScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(1))?;
        match self {
            CScalar::Exact { re, im } => {
                m.serialize_entry("exact", &[re.to_string(), im.to_string()])?
            }
            CScalar::Float { re, im } => m.serialize_entry("float", &[re, im])?,
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for CScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        enum Repr {
            #[serde(rename = "exact")]
            Exact([String; 2]),
            #[serde(rename = "float")]
            Float([f64; 2]),
        }
        match Repr::deserialize(d)? {
            Repr::Exact([re, im]) => Ok(CScalar::Exact {
                re: parse_q(&re).map_err(serde::de::Error::custom)?,
                im: parse_q(&im).map_err(serde::de::Error::custom)?,
            }),
            Repr::Float([re, im]) => Ok(CScalar::Float { re, im }),
        }
    }
}

/// Parse a rational written as `p/q` or `p`.
pub fn parse_q(s: &str) -> std::result::Result<Q, String> {
    Q::from_str(s.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))
}

/// Serde adapter serializing a rational as a `p/q` string.
pub mod serde_q {
    use super::{parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let raw = String::deserialize(d)?;
        parse_q(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a pair of rationals as two `p/q` strings.
pub mod serde_q_pair {
    use super::{parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &(Q, Q), s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&v.0.to_string())?;
        t.serialize_element(&v.1.to_string())?;
        t.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(Q, Q), D::Error> {
        let raw = <[String; 2]>::deserialize(d)?;
        Ok((
            parse_q(&raw[0]).map_err(serde::de::Error::custom)?,
            parse_q(&raw[1]).map_err(serde::de::Error::custom)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(exact_sqrt(&q(2, 1)), None);
        assert_eq!(exact_sqrt(&q(0, 1)), Some(q(0, 1)));
        assert_eq!(exact_sqrt(&q(-1, 1)), None);
    }

    #[test]
    fn abs_of_real_and_pythagorean_values_is_exact() {
        let v = CScalar::exact(q(-3, 2), q_int(0));
        assert_eq!(v.abs().unwrap().as_exact().unwrap(), &q(3, 2));
        let w = CScalar::exact(q_int(3), q_int(4));
        assert_eq!(w.abs().unwrap().as_exact().unwrap(), &q_int(5));
    }

    #[test]
    fn abs_of_irrational_magnitude_errors_in_exact_mode() {
        let v = CScalar::exact(q_int(1), q_int(1));
        assert!(matches!(v.abs(), Err(Error::IrrationalMagnitude)));
        let f = CScalar::float(1.0, 1.0);
        assert!((f.abs().unwrap().to_f64() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn mode_promotion_on_mixed_arithmetic() {
        let a = CScalar::exact(q(1, 2), q_int(0));
        let b = CScalar::float(0.25, 0.0);
        assert!(matches!(a.add(&b), CScalar::Float { .. }));
    }

    #[test]
    fn rational_round_trip() {
        let v = parse_q("-7/3").unwrap();
        assert_eq!(v.to_string(), "-7/3");
        assert_eq!(parse_q("5").unwrap().to_string(), "5");
    }
}
