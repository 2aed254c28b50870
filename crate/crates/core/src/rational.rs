//! The exact rational scalar used throughout the crate.
//!
//! [`Rat`] wraps an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. It is the only numeric scalar in the library: no
//! intersection number, coefficient or volume is ever represented in floating
//! point. The textual form is `p/q` (or just `p` when the denominator is 1),
//! which is also the serialization format used in scene files and reports.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number: arbitrary-precision, always in lowest terms,
/// denominator always positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    /// `n/d` from machine integers. Panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    /// `n/d` from big integers. Panics if `d == 0`.
    pub fn from_big(n: BigInt, d: BigInt) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        Rat(BigRational::new(n, d))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// Largest integer `<= self`, exact.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Fractional part `self - floor(self)`, exact; always in `[0, 1)`.
    pub fn frac(&self) -> Self {
        Rat(&self.0 - self.0.floor())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    pub fn square(&self) -> Self {
        Rat(&self.0 * &self.0)
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn cmp_int(&self, n: i64) -> Ordering {
        self.0.cmp(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Rendered with `sig` significant decimal digits (round half away from
    /// zero). Display-only: results never feed back into computation.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        assert!(sig > 0);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let a = self.0.abs();
        let (p, q) = (a.numer().clone(), a.denom().clone());
        // exponent e with 10^e <= a < 10^(e+1)
        let mut e: i64 = (p.to_string().len() as i64) - (q.to_string().len() as i64) + 1;
        let pow = |k: i64| -> (BigInt, BigInt) {
            // returns (p*10^max(0,-k), q*10^max(0,k)) so that a/10^k = first/second
            if k >= 0 {
                (p.clone(), &q * BigInt::from(10u32).pow(k as u32))
            } else {
                (&p * BigInt::from(10u32).pow((-k) as u32), q.clone())
            }
        };
        loop {
            let (x, y) = pow(e);
            if x >= y {
                e += 1;
            } else {
                let (x2, y2) = pow(e - 1);
                if x2 < y2 {
                    e -= 1;
                } else {
                    break;
                }
            }
        }
        // now 10^(e-1) <= a < 10^e; scale to sig digits
        let shift = sig as i64 - e;
        let scaled = if shift >= 0 {
            (&p * BigInt::from(10u32).pow(shift as u32), q.clone())
        } else {
            (p.clone(), &q * BigInt::from(10u32).pow((-shift) as u32))
        };
        let (digits_num, digits_den) = scaled;
        let two = BigInt::from(2);
        let rounded = (&digits_num * &two + &digits_den) / (&digits_den * &two);
        let mut digits = rounded.to_string();
        let mut exp = e;
        if digits.len() > sig {
            // rounding produced an extra digit (e.g. 999.96 -> 1000)
            digits.truncate(sig);
            exp += 1;
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if exp <= 0 {
            out.push_str("0.");
            for _ in 0..(-exp) {
                out.push('0');
            }
            out.push_str(digits.trim_end_matches('0'));
            if out.ends_with('.') {
                out.push('0');
            }
        } else if (exp as usize) >= digits.len() {
            out.push_str(&digits);
            for _ in 0..(exp as usize - digits.len()) {
                out.push('0');
            }
        } else {
            out.push_str(&digits[..exp as usize]);
            let rest = digits[exp as usize..].trim_end_matches('0');
            if !rest.is_empty() {
                out.push('.');
                out.push_str(rest);
            }
        }
        out
    }

    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Error parsing a `p/q` literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {input:?}: {reason}")]
pub struct ParseRatError {
    pub input: String,
    pub reason: &'static str,
}

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseRatError {
            input: s.to_string(),
            reason,
        };
        let t = s.trim();
        if t.is_empty() {
            return Err(err("empty string"));
        }
        match t.split_once('/') {
            None => {
                let n: BigInt = t.parse().map_err(|_| err("not an integer"))?;
                Ok(Rat::from_bigint(n))
            }
            Some((ns, ds)) => {
                let n: BigInt = ns.trim().parse().map_err(|_| err("bad numerator"))?;
                let d: BigInt = ds.trim().parse().map_err(|_| err("bad denominator"))?;
                if d.is_zero() {
                    return Err(err("zero denominator"));
                }
                Ok(Rat::from_big(n, d))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_bigint(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rat> for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign<Rat> for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        self.0 -= rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

/// Shorthand used pervasively in tests and constructions.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = Rat::new(-4, -6);
        assert_eq!(r, rat(2, 3));
        assert_eq!(r.to_string(), "2/3");
        let r = Rat::new(4, -6);
        assert_eq!(r.to_string(), "-2/3");
        assert!(Rat::new(3, 3).is_one());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "1", "-7", "2/3", "-5/9", "86436"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("4/6".parse::<Rat>().unwrap().to_string(), "2/3");
        assert!(" 1 / 2 ".parse::<Rat>().is_ok());
        assert!("1/0".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
        assert!("a/2".parse::<Rat>().is_err());
    }

    #[test]
    fn floor_and_frac() {
        assert_eq!(rat(7, 3).floor_int(), BigInt::from(2));
        assert_eq!(rat(-7, 3).floor_int(), BigInt::from(-3));
        assert_eq!(rat(7, 3).frac(), rat(1, 3));
        assert_eq!(rat(-7, 3).frac(), rat(2, 3));
        assert_eq!(rat(6, 3).frac(), Rat::zero());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rat(1, 2).to_decimal_string(12), "0.5");
        assert_eq!(rat(2, 1).to_decimal_string(12), "2");
        assert_eq!(rat(1, 3).to_decimal_string(12), "0.333333333333");
        assert_eq!(rat(-1, 4).to_decimal_string(12), "-0.25");
        assert_eq!(rat(1, 86436).to_decimal_string(12), "0.0000115692535518");
        assert_eq!(Rat::zero().to_decimal_string(12), "0");
        assert_eq!(rat(1999, 2).to_decimal_string(3), "1000");
        assert_eq!(rat(12345, 1).to_decimal_string(3), "12300");
    }

    #[test]
    fn serde_as_string() {
        let r = rat(-5, 9);
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, "\"-5/9\"");
        let back: Rat = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
    }
}
