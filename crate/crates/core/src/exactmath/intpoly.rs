use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{MathError, Poly, Rational, Var};

/// Dense univariate polynomial with integer coefficients, lowest degree first,
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The monomial `t`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Largest coefficient size in bits (0 for the zero polynomial).
    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Positive gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the positive content; signs of all values are preserved.
    pub fn primitive(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.div_scalar_exact(&c)
    }

    /// Primitive part normalized to a positive leading coefficient.
    pub fn primitive_positive(&self) -> IntPoly {
        let p = self.primitive();
        if p.lc().is_negative() {
            -&p
        } else {
            p
        }
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|x| x / c).collect())
    }

    /// Division by a scalar that must divide every coefficient; the quotient
    /// is checked modulo a large prime, so an inexact divisor is reported.
    pub fn div_scalar_checked(&self, c: &BigInt) -> Option<IntPoly> {
        if c.is_zero() {
            return None;
        }
        let p = BigInt::from(GCD_PRIMES[0]);
        let cp = c.mod_floor(&p);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            let q = x / c;
            if (&q.mod_floor(&p) * &cp - x.mod_floor(&p)).mod_floor(&p) != BigInt::zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntPoly::new(out))
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        // sum a_i n^i d^(deg-i) / d^deg, Horner in integers
        let n = x.numer();
        let d = x.denom();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        // dpow is now d^(deg+1); one factor too many
        let den = dpow / d;
        Rational::new(acc, den).expect("positive denominator")
    }

    /// Sign (-1, 0, 1) of the value at a rational point.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let n = x.numer();
        let d = x.denom();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        if acc.is_zero() {
            0
        } else if acc.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(out)
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = o.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&-o)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut out = IntPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Pseudo-remainder `lc(q)^(δ+1) p mod q`, δ = deg p − deg q.
    pub fn prem(&self, q: &IntPoly) -> Result<IntPoly, MathError> {
        if q.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        if self.is_zero() || self.deg() < q.deg() {
            return Ok(self.clone());
        }
        let dq = q.deg();
        let lq = q.lc();
        let mut r = self.coeffs.clone();
        let steps = self.deg() - dq + 1;
        for s in 0..steps {
            let top = self.deg() - s;
            let lr = std::mem::take(&mut r[top]);
            for c in r.iter_mut().take(top) {
                *c *= &lq;
            }
            if !lr.is_zero() {
                for (j, qc) in q.coeffs.iter().enumerate().take(dq) {
                    r[top - dq + j] -= &lr * qc;
                }
            }
        }
        r.truncate(dq);
        Ok(IntPoly::new(r))
    }

    /// Pseudo-remainder scaled so that it is a POSITIVE multiple of the exact
    /// remainder over the rationals.
    pub fn prem_positive(&self, q: &IntPoly) -> Result<IntPoly, MathError> {
        let r = self.prem(q)?;
        if self.is_zero() || self.deg() < q.deg() {
            return Ok(r);
        }
        let delta = self.deg() - q.deg();
        if q.lc().is_negative() && (delta + 1) % 2 == 1 {
            Ok(-&r)
        } else {
            Ok(r)
        }
    }

    /// Quotient and remainder over the rationals.
    pub fn divrem(&self, q: &IntPoly) -> Result<(Poly, Poly), MathError> {
        Poly::from_int(self, Var::T).divrem(&Poly::from_int(q, Var::T))
    }

    /// Exact division over the rationals when `q` divides `self` and the
    /// quotient is integral (always the case for primitive `q` by Gauss' lemma).
    pub fn div_exact(&self, q: &IntPoly) -> Option<IntPoly> {
        if q.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.deg() < q.deg() {
            return None;
        }
        let dq = q.deg();
        let lq = q.lc();
        let mut r = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.deg() - dq + 1];
        for i in (0..quot.len()).rev() {
            let top = i + dq;
            if r[top].is_zero() {
                continue;
            }
            let (c, rem) = r[top].div_rem(&lq);
            if !rem.is_zero() {
                return None;
            }
            for (j, qc) in q.coeffs.iter().enumerate() {
                r[i + j] -= &c * qc;
            }
            quot[i] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    /// Greatest common divisor via the subresultant PRS; primitive with a
    /// positive leading coefficient. gcd(0, 0) = 0.
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return o.primitive_positive();
        }
        if o.is_zero() {
            return self.primitive_positive();
        }
        let (mut a, mut b) = if self.deg() >= o.deg() {
            (self.primitive(), o.primitive())
        } else {
            (o.primitive(), self.primitive())
        };
        if b.is_constant() || coprime_mod_p(&a, &b) {
            return IntPoly::one();
        }
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.deg() - b.deg();
            let r = a.prem(&b).expect("nonzero divisor");
            if r.is_zero() {
                return b.primitive_positive();
            }
            if r.is_constant() {
                return IntPoly::one();
            }
            let divisor = &g * num_traits::pow(h.clone(), delta);
            a = b;
            b = r.div_scalar_exact(&divisor);
            g = a.lc();
            // h = g^δ / h^(δ-1)
            h = if delta == 0 {
                h
            } else {
                let num = num_traits::pow(g.clone(), delta);
                let den = num_traits::pow(h.clone(), delta - 1);
                num / den
            };
        }
    }

    fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        let mut v: Vec<u64> = self.coeffs.iter().map(|c| u64::try_from(c.mod_floor(&pb)).expect("reduced")).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Primitive part of D^n·p(a + w·u) as a polynomial in u, where D is the
    /// common denominator of a and w. Only a positive factor is introduced, so
    /// signs of values carry over point by point.
    pub fn compose_affine(&self, a: &Rational, w: &Rational) -> IntPoly {
        if self.is_constant() {
            return self.clone();
        }
        let d = a.denom().lcm(w.denom());
        let big_a = a.numer() * (&d / a.denom());
        let big_w = w.numer() * (&d / w.denom());
        let n = self.deg();
        let mut dpow = vec![BigInt::one()];
        for k in 1..=n {
            dpow.push(&dpow[k - 1] * &d);
        }
        let lin = IntPoly::new(vec![big_a, big_w]);
        let mut acc = IntPoly::constant(self.coeffs[n].clone());
        for k in (0..n).rev() {
            acc = acc.mul(&lin).add(&IntPoly::constant(&self.coeffs[k] * &dpow[n - k]));
        }
        acc.primitive()
    }

    /// `self / gcd(self, self')`, primitive.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.is_constant() {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            return self.primitive();
        }
        self.primitive().div_exact(&g).expect("gcd divides").primitive()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings(s: &[String]) -> Result<IntPoly, MathError> {
        let mut out = Vec::with_capacity(s.len());
        for c in s {
            out.push(c.trim().parse::<BigInt>().map_err(|_| MathError::Parse(c.clone()))?);
        }
        Ok(IntPoly::new(out))
    }
}

impl std::ops::Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", mag)?,
                1 => write!(f, "{}t", mag)?,
                _ => write!(f, "{}t^{}", mag, i)?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        IntPoly::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

/// Primes below 2⁶¹ for the modular coprimality test.
const GCD_PRIMES: [u64; 3] = [2305843009213693951, 2305843009213693921, 2305843009213693907];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// True when gcd(a mod p, b mod p) is constant for some prime p dividing
/// neither leading coefficient; then gcd(a, b) over ℤ is constant as well.
/// A false return is inconclusive.
fn coprime_mod_p(a: &IntPoly, b: &IntPoly) -> bool {
    for &p in &GCD_PRIMES {
        let (mut x, mut y) = (a.reduce_mod(p), b.reduce_mod(p));
        if x.len() != a.coeffs.len() || y.len() != b.coeffs.len() {
            continue;
        }
        while y.len() > 1 {
            let inv = powmod(*y.last().expect("nonzero"), p - 2, p);
            while x.len() >= y.len() {
                let q = mulmod(*x.last().expect("nonzero"), inv, p);
                let shift = x.len() - y.len();
                for (i, c) in y.iter().enumerate() {
                    let t = mulmod(q, *c, p);
                    x[i + shift] = (x[i + shift] + p - t) % p;
                }
                while x.last() == Some(&0) {
                    x.pop();
                }
            }
            std::mem::swap(&mut x, &mut y);
        }
        return y.len() == 1;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        // (t-1)^2 (t+2) and (t-1)(t+3)
        let a = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[3, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let sq = p(&[2720, 4620, -5253, -9240, 5066, 4620, 374]);
        assert!(sq.gcd(&sq.derivative()).is_one());
        assert_eq!(p(&[0, 0, 6]).gcd(&p(&[0, 4])), p(&[0, 1]));
    }

    #[test]
    fn modular_coprimality() {
        let a = p(&[-1, 1]).mul(&p(&[3, 0, 7]));
        assert!(coprime_mod_p(&a, &p(&[5, 2])));
        assert!(!coprime_mod_p(&a, &p(&[-1, 1]).mul(&p(&[1, 1]))));
        // t − 1 and t − 1 − p share a root mod p only
        let q = BigInt::from(GCD_PRIMES[0]);
        let shifted = IntPoly::new(vec![-(&q + BigInt::one()), BigInt::one()]);
        assert!(p(&[-1, 1]).gcd(&shifted).is_one());
        // leading coefficient divisible by every modulus falls through to exact gcd
        let lc: BigInt = GCD_PRIMES.iter().map(|&x| BigInt::from(x)).product();
        let big = IntPoly::new(vec![BigInt::from(-1), lc.clone()]);
        assert!(!coprime_mod_p(&big, &p(&[1, 0, 1])));
        assert!(big.gcd(&p(&[1, 0, 1])).is_one());
    }

    #[test]
    fn prem_and_exact_division() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        assert!(a.prem(&b).unwrap().is_zero());
        assert_eq!(a.div_exact(&b), Some(p(&[1, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&b), None);
        assert!(a.prem(&IntPoly::zero()).is_err());
    }

    #[test]
    fn prem_positive_sign() {
        // remainder of t^2 by -2t+1 is 1/4; prem = (-2)^2 * 1/4 = 1
        let r = p(&[0, 0, 1]).prem_positive(&p(&[1, -2])).unwrap();
        assert_eq!(r, p(&[1]));
        // t^3 by -2t+1: exact remainder 1/8, prem = (-2)^3/8 = -1, flipped to 1
        let r = p(&[0, 0, 0, 1]).prem_positive(&p(&[1, -2])).unwrap();
        assert_eq!(r, p(&[1]));
    }

    #[test]
    fn squarefree() {
        let a = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]));
        assert_eq!(a.squarefree_part().primitive_positive(), p(&[-1, 1]).mul(&p(&[2, 1])));
        let sq = p(&[2720, 4620, -5253, -9240, 5066, 4620, 374]);
        assert_eq!(sq.squarefree_part(), sq.primitive());
    }

    #[test]
    fn evaluation() {
        let sq = p(&[2720, 4620, -5253, -9240, 5066, 4620, 374]);
        assert_eq!(sq.eval(&Rational::frac(1, 10)), Rational::new(3120783174i64, 1000000).unwrap());
        assert_eq!(sq.sign_at(&Rational::frac(1, 10)), 1);
        assert_eq!(p(&[-1, 2]).sign_at(&Rational::frac(1, 2)), 0);
    }
}
