//! Sturm chains, real-root counting on half-open intervals, and sign
//! certification of polynomials and rational functions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactmath::{IntPoly, RatFunc, Rational};

/// Sturm chain of the squarefree part of an input polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SturmSequence {
    pub terms: Vec<IntPoly>,
    pub squarefree_input: IntPoly,
    /// True when the input had repeated factors that were divided out.
    pub multiplicity_discarded: bool,
}

impl SturmSequence {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    p.squarefree_part()
}

/// Builds p₁ = sqfree(p), p₂ = p₁′ and p_{i+1} = −rem(p_{i−1}, p_i) up to
/// positive factors. The pseudo-remainders are divided by the magnitudes of
/// the subresultant PRS divisors, which keeps coefficients at subresultant
/// size without computing contents. The remainder loop runs on GMP integers.
pub fn sturm_sequence(p: &IntPoly) -> SturmSequence {
    assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
    let sq = p.squarefree_part();
    let discarded = sq.degree() != p.degree();
    let mut terms = vec![sq.clone()];
    if !sq.is_constant() {
        terms.push(sq.derivative().primitive());
        let tail = gmp::chain_tail(&terms[0], &terms[1]);
        terms.extend(tail);
    }
    SturmSequence { terms, squarefree_input: sq, multiplicity_discarded: discarded }
}

mod gmp {
    use num_bigint::{BigInt, BigUint, Sign};
    use rug::integer::Order;
    use rug::ops::Pow;
    use rug::Integer;

    use crate::exactmath::IntPoly;

    fn to_gmp(x: &BigInt) -> Integer {
        let (sign, digits) = x.to_u32_digits();
        let m = Integer::from_digits(&digits, Order::Lsf);
        if sign == Sign::Minus {
            -m
        } else {
            m
        }
    }

    fn from_gmp(x: &Integer) -> BigInt {
        let mut digits = vec![0u32; x.significant_digits::<u32>()];
        x.write_digits(&mut digits, Order::Lsf);
        let m = BigUint::new(digits);
        let sign = match x.cmp0() {
            std::cmp::Ordering::Less => Sign::Minus,
            std::cmp::Ordering::Equal => Sign::NoSign,
            std::cmp::Ordering::Greater => Sign::Plus,
        };
        BigInt::from_biguint(sign, m)
    }

    /// Pseudo-remainder lc(b)^(δ+1)·a mod b, trailing zeros removed.
    fn prem(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let lb = &b[db];
        let mut r = a.to_vec();
        for top in (db..=da).rev() {
            let lr = std::mem::take(&mut r[top]);
            for c in r.iter_mut().take(top) {
                *c *= lb;
            }
            if lr != 0 {
                for (j, bc) in b.iter().enumerate().take(db) {
                    r[top - db + j] -= Integer::from(&lr * bc);
                }
            }
        }
        r.truncate(db);
        while r.last().is_some_and(|x| *x == 0) {
            r.pop();
        }
        r
    }

    /// Chain terms after p₁, p₂ (both nonconstant or p₂ constant).
    pub(super) fn chain_tail(p1: &IntPoly, p2: &IntPoly) -> Vec<IntPoly> {
        let conv = |p: &IntPoly| p.coeffs().iter().map(to_gmp).collect::<Vec<_>>();
        let mut prev = conv(p1);
        let mut cur = conv(p2);
        let (mut g, mut h) = (Integer::from(1), Integer::from(1));
        let mut out = Vec::new();
        while cur.len() > 1 {
            let delta = (prev.len() - cur.len()) as u32;
            let mut r = prem(&prev, &cur);
            if r.is_empty() {
                break;
            }
            let lc = cur.last().expect("nonzero term");
            // prem carries lc^(δ+1); make it a positive multiple of rem, then negate
            let flip = lc.cmp0().is_lt() && delta % 2 == 0;
            let d = Integer::from(&g * Integer::from((&h).pow(delta)));
            for c in r.iter_mut() {
                c.div_exact_mut(&d);
                if !flip {
                    *c = -std::mem::take(c);
                }
            }
            g = Integer::from(lc.abs_ref());
            if delta > 0 {
                h = Integer::from((&g).pow(delta)).div_exact(&Integer::from((&h).pow(delta - 1)));
            }
            out.push(IntPoly::new(r.iter().map(from_gmp).collect()));
            prev = std::mem::replace(&mut cur, r);
        }
        out
    }
}

pub fn evaluate_chain(seq: &SturmSequence, x: &Rational) -> Vec<Rational> {
    seq.terms.iter().map(|q| q.eval(x)).collect()
}

fn chain_signs(seq: &SturmSequence, x: &Rational) -> Vec<i32> {
    seq.terms.iter().map(|q| q.sign_at(x)).collect()
}

/// Sign changes in a sequence of signs, zeros skipped.
pub fn sign_changes(signs: &[i32]) -> usize {
    let mut last = 0;
    let mut n = 0;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

pub fn sign_changes_at(seq: &SturmSequence, x: &Rational) -> usize {
    sign_changes(&chain_signs(seq, x))
}

/// Number of distinct real roots of `p` in (a, b].
pub fn count_roots(p: &IntPoly, a: &Rational, b: &Rational) -> usize {
    assert!(a < b, "count_roots needs a < b");
    if p.is_constant() {
        return 0;
    }
    let seq = sturm_sequence(p);
    sign_changes_at(&seq, a) - sign_changes_at(&seq, b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    StrictlyPositive,
    StrictlyNegative,
    HasZero(usize),
    BoundaryZero,
}

impl Verdict {
    pub fn sign(&self) -> Option<i32> {
        match self {
            Verdict::StrictlyPositive => Some(1),
            Verdict::StrictlyNegative => Some(-1),
            _ => None,
        }
    }
}

/// Interval with optionally excluded endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub a: Rational,
    pub b: Rational,
    #[serde(default)]
    pub open_a: bool,
    #[serde(default)]
    pub open_b: bool,
}

impl Interval {
    pub fn closed(a: Rational, b: Rational) -> Self {
        Interval { a, b, open_a: false, open_b: false }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let left = if self.open_a { x > &self.a } else { x >= &self.a };
        let right = if self.open_b { x < &self.b } else { x <= &self.b };
        left && right
    }

    pub fn shifted(&self, by: &Rational) -> Interval {
        Interval { a: &self.a - by, b: &self.b - by, open_a: self.open_a, open_b: self.open_b }
    }
}

/// Outcome of a Sturm sign check on an interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCertificate {
    pub polynomial: IntPoly,
    pub interval: Interval,
    pub chain_length: usize,
    pub sign_changes_at_a: usize,
    pub sign_changes_at_b: usize,
    pub roots_in_half_open: usize,
    pub endpoint_values: (Rational, Rational),
    pub multiplicity_discarded: bool,
    pub verdict: Verdict,
}

/// Certifies the sign of `p` on the closed interval [a, b].
pub fn certify_positive(p: &IntPoly, a: &Rational, b: &Rational) -> SignCertificate {
    certify_on(p, &Interval::closed(a.clone(), b.clone()))
}

/// Certifies a strict sign of `p` on an interval whose endpoints may be
/// excluded. Roots counted in (a, b] are corrected for a root exactly at an
/// excluded right endpoint.
pub fn certify_on(p: &IntPoly, iv: &Interval) -> SignCertificate {
    assert!(iv.a < iv.b, "certification needs a < b");
    let (a, b) = (&iv.a, &iv.b);
    let va = p.eval(a);
    let vb = p.eval(b);
    if p.is_constant() {
        let s = va.signum();
        let verdict = match s {
            1 => Verdict::StrictlyPositive,
            -1 => Verdict::StrictlyNegative,
            _ => Verdict::HasZero(1),
        };
        return SignCertificate {
            polynomial: p.clone(),
            interval: iv.clone(),
            chain_length: 1,
            sign_changes_at_a: 0,
            sign_changes_at_b: 0,
            roots_in_half_open: 0,
            endpoint_values: (va, vb),
            multiplicity_discarded: false,
            verdict,
        };
    }
    let seq = sturm_sequence(p);
    let sa = sign_changes_at(&seq, a);
    let sb = sign_changes_at(&seq, b);
    let roots = sa - sb;
    let interior_roots = roots - usize::from(vb.is_zero());
    let verdict = if va.is_zero() && !iv.open_a {
        Verdict::BoundaryZero
    } else if vb.is_zero() && !iv.open_b {
        Verdict::BoundaryZero
    } else if interior_roots > 0 {
        Verdict::HasZero(interior_roots)
    } else {
        // no roots inside; the sign is read at b unless b is an excluded zero,
        // then at a (nonzero, or the interval would have been rejected above)
        let s = if !vb.is_zero() { vb.signum() } else if !va.is_zero() { va.signum() } else { 0 };
        match s {
            1 => Verdict::StrictlyPositive,
            -1 => Verdict::StrictlyNegative,
            _ => {
                // both endpoints excluded zeros: sign at the midpoint
                let mid = (a + b) * Rational::frac(1, 2);
                if p.sign_at(&mid) > 0 {
                    Verdict::StrictlyPositive
                } else {
                    Verdict::StrictlyNegative
                }
            }
        }
    };
    SignCertificate {
        polynomial: p.clone(),
        interval: iv.clone(),
        chain_length: seq.len(),
        sign_changes_at_a: sa,
        sign_changes_at_b: sb,
        roots_in_half_open: roots,
        endpoint_values: (va, vb),
        multiplicity_discarded: seq.multiplicity_discarded,
        verdict,
    }
}

/// Which part of a rational function failed to have a definite sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    Numerator(Verdict),
    Denominator(Verdict),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RatSign {
    Positive,
    Negative,
    Indeterminate(Witness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatSignCertificate {
    pub num: SignCertificate,
    pub den: SignCertificate,
    pub sign: RatSign,
}

/// Sign of a rational function on an interval via separate certification of
/// numerator and denominator.
pub fn certify_sign(f: &RatFunc, a: &Rational, b: &Rational) -> RatSign {
    certify_sign_on(f, &Interval::closed(a.clone(), b.clone())).sign
}

pub fn certify_sign_on(f: &RatFunc, iv: &Interval) -> RatSignCertificate {
    let num = certify_on(f.num(), iv);
    // the denominator must not vanish anywhere on the closed interval
    let den = certify_on(f.den(), &Interval::closed(iv.a.clone(), iv.b.clone()));
    let sign = match (num.verdict.sign(), den.verdict.sign()) {
        (Some(x), Some(y)) => {
            if x * y > 0 {
                RatSign::Positive
            } else {
                RatSign::Negative
            }
        }
        (None, _) => RatSign::Indeterminate(Witness::Numerator(num.verdict.clone())),
        (_, None) => RatSign::Indeterminate(Witness::Denominator(den.verdict.clone())),
    };
    RatSignCertificate { num, den, sign }
}

/// Certifies many polynomials in parallel; output order follows input order.
pub fn certify_many(jobs: &[(IntPoly, Interval)]) -> Vec<SignCertificate> {
    jobs.par_iter().map(|(p, iv)| certify_on(p, iv)).collect()
}
