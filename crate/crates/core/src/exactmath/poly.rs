use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{IntPoly, MathError, Rational};

/// Which variable a polynomial is written in: plain `t`, or `s = t − c`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub enum Var {
    #[default]
    T,
    Shifted(Rational),
}

impl Var {
    /// The center `c` with `s = t − c` (zero for plain `t`).
    pub fn center(&self) -> Rational {
        match self {
            Var::T => Rational::zero(),
            Var::Shifted(c) => c.clone(),
        }
    }

    /// Converts a value of `t` into this variable.
    pub fn local(&self, t: &Rational) -> Rational {
        match self {
            Var::T => t.clone(),
            Var::Shifted(c) => t - c,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Var::T => "t".to_string(),
            Var::Shifted(c) => format!("t-{}", c),
        }
    }
}

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    var: Var,
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(var: Var, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { var, coeffs }
    }

    pub fn from_fracs(var: Var, c: &[(i64, i64)]) -> Self {
        Self::new(var, c.iter().map(|&(n, d)| Rational::frac(n, d)).collect())
    }

    pub fn zero(var: Var) -> Self {
        Poly { var, coeffs: Vec::new() }
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        Self::new(var, vec![c])
    }

    /// The polynomial equal to the variable itself.
    pub fn x(var: Var) -> Self {
        Self::new(var, vec![Rational::zero(), Rational::one()])
    }

    pub fn from_int(p: &IntPoly, var: Var) -> Self {
        Self::new(var, p.coeffs().iter().map(|c| Rational::int(c.clone())).collect())
    }

    pub fn var(&self) -> &Var {
        &self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    fn check_var(&self, o: &Poly) -> Result<(), MathError> {
        if self.var != o.var {
            return Err(MathError::VariableMismatch(self.var.name(), o.var.name()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Poly) -> Result<Poly, MathError> {
        self.check_var(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let out = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Ok(Poly::new(self.var.clone(), out))
    }

    pub fn try_sub(&self, o: &Poly) -> Result<Poly, MathError> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Poly) -> Result<Poly, MathError> {
        self.check_var(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Poly::zero(self.var.clone()));
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Ok(Poly::new(self.var.clone(), out))
    }

    pub fn neg(&self) -> Poly {
        Poly { var: self.var.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.var.clone(), self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.var.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rational::int(i as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Poly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derivative();
        }
        p
    }

    /// Value at a point given in this polynomial's own variable.
    pub fn eval_local(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Value at the point `t` (converted into the local variable first).
    pub fn eval(&self, t: &Rational) -> Rational {
        self.eval_local(&self.var.local(t))
    }

    /// Division with remainder over the rationals.
    pub fn divrem(&self, q: &Poly) -> Result<(Poly, Poly), MathError> {
        self.check_var(q)?;
        if q.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        let dq = q.coeffs.len() - 1;
        let lq = q.lc();
        let mut r = self.coeffs.clone();
        if r.len() <= dq {
            return Ok((Poly::zero(self.var.clone()), self.clone()));
        }
        let mut quot = vec![Rational::zero(); r.len() - dq];
        for i in (0..quot.len()).rev() {
            let c = r[i + dq].checked_div(&lq)?;
            if c.is_zero() {
                continue;
            }
            for (j, qc) in q.coeffs.iter().enumerate() {
                r[i + j] = &r[i + j] - &(&c * qc);
            }
            quot[i] = c;
        }
        r.truncate(dq);
        Ok((Poly::new(self.var.clone(), quot), Poly::new(self.var.clone(), r)))
    }

    /// Re-expresses the polynomial in another variable (exact Taylor shift).
    pub fn to_var(&self, target: &Var) -> Poly {
        if &self.var == target {
            return self.clone();
        }
        // x_self = x_target + (c_target − c_self)
        let shift = target.center() - self.var.center();
        let lin = Poly::new(target.clone(), vec![shift, Rational::one()]);
        let mut acc = Poly::zero(target.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(&lin).expect("same var").try_add(&Poly::constant(target.clone(), c.clone())).expect("same var");
        }
        acc
    }

    pub fn to_plain(&self) -> Poly {
        self.to_var(&Var::T)
    }

    /// Splits into a positive rational scalar and an integer polynomial with
    /// `self = scalar * int`; the integer polynomial is primitive.
    pub fn to_int(&self) -> (Rational, IntPoly) {
        if self.is_zero() {
            return (Rational::one(), IntPoly::zero());
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let ip = IntPoly::new(ints);
        let content = ip.content();
        let prim = ip.div_scalar_exact(&content);
        (Rational::new(content, l).expect("positive"), prim)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}](", self.var.name())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    /// Panics on a variable mismatch; use `try_add` for a checked version.
    fn add(self, o: &Poly) -> Poly {
        self.try_add(o).expect("polynomial variable mismatch")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self.try_sub(o).expect("polynomial variable mismatch")
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.try_mul(o).expect("polynomial variable mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(c: &[i64]) -> Poly {
        Poly::new(Var::T, c.iter().map(|&x| Rational::int(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let v1 = t(&[0, 4, 0, -10]);
        assert_eq!(&v1 + &Poly::zero(Var::T), v1);
        assert_eq!(&Poly::x(Var::T) * &Poly::x(Var::T), t(&[0, 0, 1]));
        assert_eq!(&v1 * &Poly::x(Var::T), t(&[0, 0, 4, 0, -10]));
        let s = Poly::x(Var::Shifted(Rational::frac(29, 50)));
        assert!(v1.try_add(&s).is_err());
    }

    #[test]
    fn derivatives() {
        let p = t(&[2720, 4620, -5253, -9240, 5066, 4620, 374]);
        assert_eq!(p.derivative(), t(&[4620, -10506, -27720, 20264, 23100, 2244]));
        assert!(t(&[7]).derivative().is_zero());
        assert_eq!(t(&[0, 4, 0, -10]).derivative(), t(&[4, 0, -30]));
    }

    #[test]
    fn divrem_reconstructs() {
        let (q, r) = t(&[-1, 0, 1]).divrem(&t(&[-1, 1])).unwrap();
        assert_eq!(q, t(&[1, 1]));
        assert!(r.is_zero());
        let (q, r) = t(&[0, 0, 1]).divrem(&t(&[0, 1])).unwrap();
        assert_eq!(q, t(&[0, 1]));
        assert!(r.is_zero());
        assert!(t(&[1]).divrem(&Poly::zero(Var::T)).is_err());
    }

    #[test]
    fn shift_round_trip() {
        let l = Rational::frac(29, 50);
        let s = Var::Shifted(l.clone());
        let p = Poly::from_fracs(s.clone(), &[(5, 4), (0, 1), (-3, 1), (1, 1)]);
        let plain = p.to_plain();
        for x in [Rational::frac(1, 2), Rational::frac(3, 7), l.clone()] {
            assert_eq!(p.eval(&x), plain.eval(&x));
        }
        assert_eq!(plain.to_var(&s), p);
        assert_eq!(p.eval(&l), Rational::frac(5, 4));
    }

    #[test]
    fn integer_lift() {
        let p = Poly::from_fracs(Var::T, &[(149, 200), (-11, 9), (-1, 10), (-1, 25)]);
        let (c, ip) = p.to_int();
        assert!(c.signum() > 0);
        assert_eq!(ip.content(), BigInt::one());
        let x = Rational::frac(1, 3);
        assert_eq!(&c * &ip.eval(&x), p.eval(&x));
    }
}
