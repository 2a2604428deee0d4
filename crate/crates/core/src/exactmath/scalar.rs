use std::fmt::Debug;

use super::{EpsPoly, MathError, RatFunc, Rational};

/// Field-like operations shared by the point-evaluation and symbolic paths of
/// the curvature formulas.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn try_div(&self, o: &Self) -> Result<Self, MathError>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::int(n))
    }

    fn scale_int(&self, n: i64) -> Self {
        self.mul(&Self::from_int(n))
    }

    fn half(&self) -> Self {
        self.mul(&Self::from_rational(&Rational::frac(1, 2)))
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if Rational::is_zero(self) {
            return o.clone();
        }
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        if Rational::is_zero(self) || o.is_zero() {
            return Rational::zero();
        }
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_div(&self, o: &Self) -> Result<Self, MathError> {
        self.checked_div(o)
    }
}

impl Scalar for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn from_rational(r: &Rational) -> Self {
        RatFunc::from_rational(r)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn try_div(&self, o: &Self) -> Result<Self, MathError> {
        RatFunc::try_div(self, o)
    }
}

impl Scalar for EpsPoly {
    fn zero() -> Self {
        EpsPoly::zero()
    }
    fn one() -> Self {
        EpsPoly::one()
    }
    fn from_rational(r: &Rational) -> Self {
        EpsPoly::from_rational(r)
    }
    fn is_zero(&self) -> bool {
        EpsPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        EpsPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        EpsPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        EpsPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        EpsPoly::neg(self)
    }
    fn try_div(&self, o: &Self) -> Result<Self, MathError> {
        EpsPoly::try_div(self, o)
    }
}
