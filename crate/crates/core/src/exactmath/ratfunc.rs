use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{IntPoly, MathError, Poly, Rational};

/// Quotient of two integer polynomials in canonical form: coprime as
/// polynomials, coprime integer contents, positive leading coefficient of the
/// denominator, and zero represented as 0/1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: IntPoly::one(), den: IntPoly::one() }
    }

    pub fn from_rational(r: &Rational) -> Self {
        RatFunc::normalize(IntPoly::constant(r.numer().clone()), IntPoly::constant(r.denom().clone()))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::int(n))
    }

    /// The polynomial's coefficients read in its own variable.
    pub fn from_poly(p: &Poly) -> Self {
        let (c, ip) = p.to_int();
        RatFunc::normalize(ip.scale(c.numer()), IntPoly::constant(c.denom().clone()))
    }

    pub fn from_intpoly(p: IntPoly) -> Self {
        RatFunc::normalize(p, IntPoly::one())
    }

    /// Builds `num / den` and reduces it to canonical form.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, MathError> {
        if den.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den);
        if g.is_one() {
            return Ok(RatFunc::normalize(num, den));
        }
        let n = num.div_exact(&g).expect("gcd divides numerator");
        let d = den.div_exact(&g).expect("gcd divides denominator");
        Ok(RatFunc::normalize(n, d))
    }

    /// Builds `num / (scalar · Π factors)` where every common factor of the
    /// numerator with the denominator divides one of the listed factors. Only
    /// gcds against the (small) factors are computed.
    pub fn from_factored(num: IntPoly, factors: &[IntPoly], scalar: &BigInt) -> Result<Self, MathError> {
        if scalar.is_zero() || factors.iter().any(|f| f.is_zero()) {
            return Err(MathError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let mut num = num;
        let mut den = IntPoly::constant(scalar.clone());
        for f in factors {
            let mut f = f.clone();
            loop {
                if f.is_constant() {
                    break;
                }
                let r = num.prem(&f)?;
                let g = f.gcd(&r);
                if g.is_constant() {
                    break;
                }
                num = num.div_exact(&g).expect("common factor divides numerator");
                f = f.div_exact(&g).expect("gcd divides factor");
            }
            den = den.mul(&f);
        }
        Ok(RatFunc::normalize(num, den))
    }

    /// Fixes contents and sign of an already coprime pair.
    fn normalize(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let c = num.content().gcd(&den.content());
        let (mut num, mut den) = if c.is_one() {
            (num, den)
        } else {
            (num.div_scalar_exact(&c), den.div_scalar_exact(&c))
        };
        if den.lc().is_negative() {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(Rational::new(self.num.coeffs().first().cloned().unwrap_or_default(), self.den.lc()).expect("nonzero"))
        } else {
            None
        }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let (a, b, c, d) = (&self.num, &self.den, &o.num, &o.den);
        let g1 = a.gcd(d);
        let g2 = c.gcd(b);
        let (a, d) = if g1.is_one() { (a.clone(), d.clone()) } else { (a.div_exact(&g1).unwrap(), d.div_exact(&g1).unwrap()) };
        let (c, b) = if g2.is_one() { (c.clone(), b.clone()) } else { (c.div_exact(&g2).unwrap(), b.div_exact(&g2).unwrap()) };
        RatFunc::normalize(a.mul(&c), b.mul(&d))
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (a, b, c, d) = (&self.num, &self.den, &o.num, &o.den);
        if b == d {
            return RatFunc::new(a.add(c), b.clone()).expect("nonzero denominator");
        }
        let g = b.gcd(d);
        if g.is_one() {
            return RatFunc::normalize(a.mul(d).add(&c.mul(b)), b.mul(d));
        }
        let b1 = b.div_exact(&g).unwrap();
        let d1 = d.div_exact(&g).unwrap();
        let t = a.mul(&d1).add(&c.mul(&b1));
        if t.is_zero() {
            return RatFunc::zero();
        }
        let g2 = t.gcd(&g);
        if g2.is_one() {
            return RatFunc::normalize(t, b1.mul(d));
        }
        let t = t.div_exact(&g2).unwrap();
        let d2 = d.div_exact(&g2).unwrap();
        RatFunc::normalize(t, b1.mul(&d2))
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn recip(&self) -> Result<RatFunc, MathError> {
        if self.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        Ok(RatFunc::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, o: &RatFunc) -> Result<RatFunc, MathError> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn scale(&self, r: &Rational) -> RatFunc {
        self.mul(&RatFunc::from_rational(r))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        // coprimality is preserved by powers
        RatFunc::normalize(self.num.pow(e), self.den.pow(e))
    }

    pub fn square(&self) -> RatFunc {
        self.pow(2)
    }

    pub fn derivative(&self) -> RatFunc {
        if self.num.is_zero() {
            return RatFunc::zero();
        }
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        RatFunc::new(n, self.den.mul(&self.den)).expect("nonzero denominator")
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, MathError> {
        self.num.eval(x).checked_div(&self.den.eval(x))
    }

    /// Total size measure, used for diagnostics.
    pub fn degrees(&self) -> (usize, usize) {
        (self.num.degree().unwrap_or(0), self.den.degree().unwrap_or(0))
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: IntPoly,
            den: IntPoly,
        }
        let r = Raw::deserialize(d)?;
        RatFunc::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}
