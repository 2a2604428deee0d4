use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::MathError;

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, MathError> {
        let den = den.into();
        if den.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    /// Panicking constructor for literals known to be valid.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("nonzero literal denominator")
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Rational, MathError> {
        if other.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    pub fn recip(&self) -> Result<Rational, MathError> {
        Rational::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Rational {
        Rational(num_traits::pow(self.0.clone(), e as usize))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering rounded half-to-even at `sig` significant digits,
    /// computed from the exact value.
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.0.is_negative();
        let n = self.0.numer().abs();
        let d = self.0.denom().clone();
        // exponent e with 10^e <= |x| < 10^(e+1)
        let mut e: i64 = n.to_string().len() as i64 - d.to_string().len() as i64;
        let ten = BigInt::from(10);
        let cmp_pow = |e: i64| -> bool {
            // |x| >= 10^e
            if e >= 0 {
                n >= &d * num_traits::pow(ten.clone(), e as usize)
            } else {
                &n * num_traits::pow(ten.clone(), (-e) as usize) >= d
            }
        };
        while !cmp_pow(e) {
            e -= 1;
        }
        while cmp_pow(e + 1) {
            e += 1;
        }
        // scaled = |x| * 10^(sig-1-e), rounded half-even to an integer
        let shift = sig as i64 - 1 - e;
        let (sn, sd) = if shift >= 0 {
            (&n * num_traits::pow(ten.clone(), shift as usize), d.clone())
        } else {
            (n.clone(), &d * num_traits::pow(ten.clone(), (-shift) as usize))
        };
        let (q, r) = sn.div_rem(&sd);
        let twice = &r * 2;
        let mut digits = if twice > sd || (twice == sd && q.is_odd()) { q + 1 } else { q };
        let mut shift = shift;
        if digits.to_string().len() > sig {
            // rounding carried into a new digit (e.g. 9.99.. -> 10.0)
            digits /= 10;
            shift -= 1;
        }
        let s = digits.to_string();
        let out = if shift <= 0 {
            let mut s = s;
            for _ in 0..(-shift) {
                s.push('0');
            }
            s
        } else {
            let shift = shift as usize;
            let padded = if s.len() <= shift {
                format!("{}{}", "0".repeat(shift - s.len() + 1), s)
            } else {
                s
            };
            let split = padded.len() - shift;
            let (ip, fp) = padded.split_at(split);
            let fp = fp.trim_end_matches('0');
            if fp.is_empty() {
                ip.to_string()
            } else {
                format!("{}.{}", ip, fp)
            }
        };
        if neg {
            format!("-{}", out)
        } else {
            out
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = MathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || MathError::Parse(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::int(BigInt::from_str(s).map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            I(i64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::I(i) => Ok(Rational::int(i)),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, o: &Rational) -> Rational {
                Rational(&self.0 $op &o.0)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                Rational(self.0 $op o.0)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: &Rational) -> Rational {
                Rational(self.0 $op &o.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, o: &Rational) {
        self.0 += &o.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let a = Rational::frac(1, 10);
        let b = Rational::frac(1, 2);
        assert_eq!(&a + &b, Rational::frac(3, 5));
        assert_eq!(Rational::frac(149, 200) * Rational::zero(), Rational::zero());
        assert_eq!(Rational::frac(58, 100).to_string(), "29/50");
        assert_eq!(Rational::zero().denom(), &BigInt::from(1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Rational::one().checked_div(&Rational::zero()), Err(MathError::DivisionByZero));
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn parse_and_print() {
        let r: Rational = "-6/4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
        let r: Rational = "7".parse().unwrap();
        assert_eq!(r.to_string(), "7");
        assert!("1/x".parse::<Rational>().is_err());
        let j = serde_json::to_string(&Rational::frac(29, 50)).unwrap();
        assert_eq!(j, "\"29/50\"");
        let back: Rational = serde_json::from_str(&j).unwrap();
        assert_eq!(back, Rational::frac(29, 50));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Rational::frac(5, 4).to_decimal(12), "1.25");
        assert_eq!(Rational::frac(1, 3).to_decimal(12), "0.333333333333");
        assert_eq!(Rational::frac(2, 3).to_decimal(12), "0.666666666667");
        assert_eq!(Rational::frac(-29, 50).to_decimal(12), "-0.58");
        assert_eq!(Rational::int(123456).to_decimal(3), "123000");
        // half-even: 0.125 at 2 digits -> 0.12, 0.135 -> 0.14
        assert_eq!(Rational::frac(1, 8).to_decimal(2), "0.12");
        assert_eq!(Rational::frac(135, 1000).to_decimal(2), "0.14");
        assert_eq!(Rational::frac(999, 1000).to_decimal(2), "1");
        assert_eq!(Rational::frac(1, 1000).to_decimal(12), "0.001");
    }
}
