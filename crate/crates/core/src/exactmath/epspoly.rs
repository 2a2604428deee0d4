use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{MathError, RatFunc, Rational};

/// Laurent polynomial in the fiber scale ε with rational-function
/// coefficients in t. Zero coefficients are never stored. Negative powers only
/// appear transiently (inverse metric blocks); finished curvature quantities
/// are polynomial in ε.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct EpsPoly {
    terms: BTreeMap<i32, RatFunc>,
}

impl EpsPoly {
    pub fn zero() -> Self {
        EpsPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    /// The monomial ε.
    pub fn eps() -> Self {
        Self::monomial(1, RatFunc::one())
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::constant(RatFunc::from_rational(r))
    }

    pub fn monomial(deg: i32, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(deg, c);
        }
        EpsPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i32, RatFunc)>) -> Self {
        let mut out = EpsPoly::zero();
        for (d, c) in it {
            out = out.add(&EpsPoly::monomial(d, c));
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<i32, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, deg: i32) -> RatFunc {
        self.terms.get(&deg).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest-order term in ε.
    pub fn lowest_term(&self) -> Result<(i32, RatFunc), MathError> {
        self.terms
            .iter()
            .next()
            .map(|(d, c)| (*d, c.clone()))
            .ok_or(MathError::ZeroInput("lowest term of the zero ε-polynomial"))
    }

    pub fn add(&self, o: &EpsPoly) -> EpsPoly {
        let mut terms = self.terms.clone();
        for (d, c) in &o.terms {
            match terms.get(d) {
                Some(x) => {
                    let s = x.add(c);
                    if s.is_zero() {
                        terms.remove(d);
                    } else {
                        terms.insert(*d, s);
                    }
                }
                None => {
                    terms.insert(*d, c.clone());
                }
            }
        }
        EpsPoly { terms }
    }

    pub fn neg(&self) -> EpsPoly {
        EpsPoly { terms: self.terms.iter().map(|(d, c)| (*d, c.neg())).collect() }
    }

    pub fn sub(&self, o: &EpsPoly) -> EpsPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &EpsPoly) -> EpsPoly {
        let mut acc: BTreeMap<i32, RatFunc> = BTreeMap::new();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &o.terms {
                let p = c1.mul(c2);
                let e = acc.entry(d1 + d2).or_default();
                *e = e.add(&p);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        EpsPoly { terms: acc }
    }

    pub fn scale(&self, c: &RatFunc) -> EpsPoly {
        if c.is_zero() {
            return EpsPoly::zero();
        }
        EpsPoly { terms: self.terms.iter().map(|(d, x)| (*d, x.mul(c))).collect() }
    }

    pub fn shift(&self, k: i32) -> EpsPoly {
        EpsPoly { terms: self.terms.iter().map(|(d, x)| (d + k, x.clone())).collect() }
    }

    /// Division; only single-term divisors are invertible.
    pub fn try_div(&self, o: &EpsPoly) -> Result<EpsPoly, MathError> {
        if o.terms.len() != 1 {
            return Err(MathError::NotInvertible(format!("ε-polynomial with {} terms", o.terms.len())));
        }
        let (d, c) = o.terms.iter().next().unwrap();
        let inv = c.recip()?;
        Ok(self.scale(&inv).shift(-d))
    }

    /// Formal derivative in t, coefficient-wise.
    pub fn derivative_t(&self) -> EpsPoly {
        EpsPoly::from_terms(self.terms.iter().map(|(d, c)| (*d, c.derivative())))
    }

    /// Substitutes a rational ε, leaving a rational function of t.
    pub fn eval_eps(&self, eps: &Rational) -> Result<RatFunc, MathError> {
        let mut acc = RatFunc::zero();
        for (d, c) in &self.terms {
            let e = if *d >= 0 { eps.pow(*d as u32) } else { eps.recip()?.pow((-*d) as u32) };
            acc = acc.add(&c.scale(&e));
        }
        Ok(acc)
    }

    /// Double evaluation at (ε, t).
    pub fn eval(&self, eps: &Rational, t: &Rational) -> Result<Rational, MathError> {
        let mut acc = Rational::zero();
        for (d, c) in &self.terms {
            let e = if *d >= 0 { eps.pow(*d as u32) } else { eps.recip()?.pow((-*d) as u32) };
            acc = acc + e * c.eval(t)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for EpsPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "ε^{}·[{:?}]", d, c)?;
        }
        Ok(())
    }
}
