//! Re-verification of a certificate from its embedded data alone. The Sturm
//! counting here is a separate minimal implementation on coefficient vectors;
//! it shares no code with the polynomial types used to build certificates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::evidence::{Evidence, Outcome, SturmFactor};
use super::{Certificate, Check};
use crate::exactmath::Rational;
use crate::sturm::Verdict;

type Coeffs = Vec<BigInt>;

fn trim(mut p: Coeffs) -> Coeffs {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn deg(p: &[BigInt]) -> usize {
    p.len().saturating_sub(1)
}

fn deriv(p: &[BigInt]) -> Coeffs {
    p.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect()
}

/// |lc(b)|^(δ+1)·a mod b, with δ = deg a − deg b.
fn prem_abs(a: &[BigInt], b: &[BigInt]) -> Coeffs {
    let lb = b.last().expect("nonzero divisor").abs();
    let db = deg(b);
    let mut r: Coeffs = a.to_vec();
    let mut steps = deg(a) + 1 - db;
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        let bl = b.last().unwrap();
        // r ← |lb|·r − (lr·sgn(lb))·x^shift·b
        let q = if bl.is_negative() { -lr } else { lr };
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &q * bc;
        }
        r = trim(r);
        steps -= 1;
    }
    let mut f = BigInt::one();
    for _ in 0..steps {
        f *= &lb;
    }
    r.into_iter().map(|c| c * &f).collect()
}

fn div_exact_scalar(p: &[BigInt], d: &BigInt) -> Option<Coeffs> {
    p.iter()
        .map(|c| {
            let (q, r) = c.div_rem(d);
            r.is_zero().then_some(q)
        })
        .collect()
}

/// Sturm chain p, p′, … with each remainder reduced by the subresultant
/// divisor; every term is a positive multiple of the Euclidean one.
fn chain(p: &[BigInt]) -> Option<Vec<Coeffs>> {
    let mut out = vec![p.to_vec(), trim(deriv(p))];
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let n = out.len();
        let (a, b) = (&out[n - 2], &out[n - 1]);
        if deg(b) == 0 {
            return Some(out);
        }
        let delta = (deg(a) - deg(b)) as u32;
        let r = prem_abs(a, b);
        if r.is_empty() {
            return Some(out);
        }
        let d = &g * num_traits::pow(h.clone(), delta as usize);
        let next: Coeffs = div_exact_scalar(&r, &d)?.into_iter().map(|c| -c).collect();
        g = b.last().unwrap().abs();
        h = if delta == 0 {
            h
        } else {
            let num = num_traits::pow(g.clone(), delta as usize);
            let den = num_traits::pow(h.clone(), delta as usize - 1);
            let (q, rem) = num.div_rem(&den);
            if !rem.is_zero() {
                return None;
            }
            q
        };
        out.push(next);
    }
}

/// Exact quotient of polynomials over ℤ, if it exists.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Coeffs> {
    let mut r = a.to_vec();
    let db = deg(b);
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    let lb = b.last()?;
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (k, bc) in b.iter().enumerate() {
            r[i + k] -= &c * bc;
        }
        q[i] = c;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

/// Sign of p(n/d) with d > 0.
fn sign_at(p: &[BigInt], x: &Rational) -> i32 {
    let (n, d) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut dp = BigInt::one();
    // Σ c_k n^k d^(m−k), accumulated from the top
    let m = deg(p);
    let mut pows = vec![BigInt::one(); m + 1];
    for k in 1..=m {
        dp *= d;
        pows[k] = dp.clone();
    }
    for (k, c) in p.iter().enumerate().rev() {
        acc = acc * n + c * &pows[m - k];
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

fn changes(ch: &[Coeffs], x: &Rational) -> usize {
    let signs: Vec<i32> = ch.iter().map(|p| sign_at(p, x)).filter(|s| *s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Recomputed Sturm data for one factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recount {
    pub chain_length: usize,
    pub sign_changes: [usize; 2],
    pub endpoint_signs: [i32; 2],
    pub multiplicity_discarded: bool,
    pub verdict: Verdict,
}

fn strict(s: i32) -> Verdict {
    if s > 0 {
        Verdict::StrictlyPositive
    } else {
        Verdict::StrictlyNegative
    }
}

pub fn recount(f: &SturmFactor) -> Result<Recount, String> {
    let p = trim(f.poly.coeffs().to_vec());
    let iv = &f.interval;
    if iv.a >= iv.b {
        return Err("empty interval".into());
    }
    let ea = sign_at(&p, &iv.a);
    let eb = sign_at(&p, &iv.b);
    if deg(&p) == 0 {
        let s = if p.is_empty() { 0 } else { sign_at(&p, &iv.a) };
        let verdict = if s == 0 { Verdict::HasZero(1) } else { strict(s) };
        return Ok(Recount { chain_length: 1, sign_changes: [0, 0], endpoint_signs: [ea, eb], multiplicity_discarded: false, verdict });
    }
    let full = chain(&p).ok_or("subresultant division was not exact")?;
    let last = full.last().unwrap();
    let (ch, discarded) = if deg(last) == 0 {
        (full, false)
    } else {
        let content = last.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let g = div_exact_scalar(last, &content).ok_or("content division failed")?;
        let q = poly_div_exact(&p, &g).ok_or("squarefree reduction failed")?;
        (chain(&q).ok_or("subresultant division was not exact")?, true)
    };
    let sa = changes(&ch, &iv.a);
    let sb = changes(&ch, &iv.b);
    if sb > sa {
        return Err("sign changes increase along the interval".into());
    }
    let interior = sa - sb - usize::from(eb == 0);
    let verdict = if (ea == 0 && !iv.open_a) || (eb == 0 && !iv.open_b) {
        Verdict::BoundaryZero
    } else if interior > 0 {
        Verdict::HasZero(interior)
    } else if eb != 0 {
        strict(eb)
    } else if ea != 0 {
        strict(ea)
    } else {
        let mid = &(&iv.a + &iv.b) * &Rational::frac(1, 2);
        strict(sign_at(&p, &mid))
    };
    Ok(Recount { chain_length: ch.len(), sign_changes: [sa, sb], endpoint_signs: [ea, eb], multiplicity_discarded: discarded, verdict })
}

fn factor_issues(name: &str, f: &SturmFactor, span: &(Rational, Rational), out: &mut Vec<String>) -> Option<i32> {
    let lo = &f.offset + &(&f.scale * &f.interval.a);
    let hi = &f.offset + &(&f.scale * &f.interval.b);
    if f.scale.signum() <= 0 || (&lo, &hi) != (&span.0, &span.1) {
        out.push(format!("{} [{}]: recorded interval maps to [{}, {}], expected [{}, {}]", name, f.role, lo, hi, span.0, span.1));
    }
    match recount(f) {
        Ok(r) => {
            let recorded = Recount {
                chain_length: f.chain_length,
                sign_changes: f.sign_changes,
                endpoint_signs: f.endpoint_signs,
                multiplicity_discarded: f.multiplicity_discarded,
                verdict: f.verdict.clone(),
            };
            if r != recorded {
                out.push(format!("{} [{}]: recorded {:?}, recomputed {:?}", name, f.role, recorded, r));
            }
            r.verdict.sign()
        }
        Err(e) => {
            out.push(format!("{} [{}]: {}", name, f.role, e));
            None
        }
    }
}

fn product(signs: &[Option<i32>]) -> Option<i32> {
    signs.iter().try_fold(1, |acc, s| s.map(|s| acc * s))
}

/// Recomputes the verdict of one check; disagreements are appended to `out`.
fn replay_check(c: &Check, out: &mut Vec<String>) -> bool {
    let span = c.interval.clone();
    let holds = match &c.evidence {
        Evidence::Sign { expect, factors } => {
            let Some(span) = span else {
                out.push(format!("{}: sign evidence without interval", c.name));
                return false;
            };
            let s: Vec<_> = factors.iter().map(|f| factor_issues(&c.name, f, &span, out)).collect();
            !factors.is_empty() && product(&s) == Some(*expect)
        }
        Evidence::Cover { parts } => {
            let Some(span) = span else {
                out.push(format!("{}: cover without interval", c.name));
                return false;
            };
            let mut at = span.0.clone();
            let mut ok = !parts.is_empty();
            for p in parts {
                if p.interval.0 != at || p.interval.0 >= p.interval.1 {
                    out.push(format!("{}: cover has a gap at {}", c.name, at));
                    ok = false;
                }
                let s: Vec<_> = p.factors.iter().map(|f| factor_issues(&c.name, f, &p.interval, out)).collect();
                ok &= !p.factors.is_empty() && product(&s) == Some(1);
                at = p.interval.1.clone();
            }
            if at != span.1 {
                out.push(format!("{}: cover ends at {} instead of {}", c.name, at, span.1));
                ok = false;
            }
            ok
        }
        Evidence::Relation { lhs, rel, rhs } => {
            use super::evidence::Rel;
            match rel {
                Rel::Eq => lhs == rhs,
                Rel::Gt => lhs > rhs,
                Rel::Lt => lhs < rhs,
            }
        }
        Evidence::Identity { lhs, rhs } => trim(lhs.coeffs().to_vec()) == trim(rhs.coeffs().to_vec()),
        Evidence::Radical { radicand, c: cc, a, rhs } => {
            // (√x + 2c)·a > r, separately: a > 0 ⇒ √x > r/a − 2c, a < 0 ⇒ √x < r/a − 2c
            if radicand.signum() < 0 {
                false
            } else if a.is_zero() {
                rhs.signum() < 0
            } else {
                let bound = &rhs.checked_div(a).expect("nonzero") - &(&Rational::int(2) * cc);
                let sq = &bound * &bound;
                if a.signum() > 0 {
                    bound.signum() < 0 || radicand > &sq
                } else {
                    bound.signum() > 0 && radicand < &sq
                }
            }
        }
        // recorded comparisons need the curvature formulas to redo; the
        // recorded counts are taken as given
        Evidence::Tally { compared, mismatched } => *compared > 0 && *mismatched == 0,
        Evidence::Unavailable { .. } => false,
    };
    if Outcome::from_bool(holds) != c.verdict {
        out.push(format!("{}: recorded {:?}, recomputed {:?}", c.name, c.verdict, Outcome::from_bool(holds)));
    }
    holds
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub checks: usize,
    pub sturm_factors: usize,
    /// Checks whose evidence needs the curvature formulas to redo.
    pub taken_as_recorded: usize,
    pub disagreements: Vec<String>,
    pub overall: Outcome,
}

impl ReplayReport {
    /// Every verdict, and the overall one, recomputed identically.
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

pub fn replay(cert: &Certificate) -> ReplayReport {
    let results: Vec<(bool, Vec<String>)> = cert
        .checks
        .par_iter()
        .map(|c| {
            let mut out = Vec::new();
            let ok = replay_check(c, &mut out);
            (ok, out)
        })
        .collect();
    let mut disagreements: Vec<String> = results.iter().flat_map(|(_, d)| d.clone()).collect();
    let overall = Outcome::from_bool(results.iter().all(|(ok, _)| *ok));
    if overall != cert.overall {
        disagreements.push(format!("overall: recorded {:?}, recomputed {:?}", cert.overall, overall));
    }
    let count_factors = |e: &Evidence| match e {
        Evidence::Sign { factors, .. } => factors.len(),
        Evidence::Cover { parts } => parts.iter().map(|p| p.factors.len()).sum(),
        _ => 0,
    };
    ReplayReport {
        checks: cert.checks.len(),
        sturm_factors: cert.checks.iter().map(|c| count_factors(&c.evidence)).sum(),
        taken_as_recorded: cert.checks.iter().filter(|c| matches!(c.evidence, Evidence::Tally { .. })).count(),
        disagreements,
        overall,
    }
}

pub fn replay_json(s: &str) -> Result<ReplayReport, serde_json::Error> {
    Ok(replay(&serde_json::from_str(s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::sturm_factor;
    use crate::exactmath::IntPoly;

    fn b(c: &[i64]) -> Coeffs {
        c.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn chain_of_quadratic() {
        // t² − 1: (t² − 1, 2t, positive constant)
        let ch = chain(&b(&[-1, 0, 1])).unwrap();
        assert_eq!(ch.len(), 3);
        assert_eq!(ch[1], b(&[0, 2]));
        assert_eq!(ch[2].len(), 1);
        assert!(ch[2][0].is_positive());
    }

    #[test]
    fn planted_roots_counted() {
        // (t − 1/3)(t − 1/2)(t + 2) = (3t − 1)(2t − 1)(t + 2)/6
        let p = b(&[2, -9, 7, 6]);
        let f = sturm_factor("p", &IntPoly::new(p), &Rational::zero(), &Rational::zero(), &Rational::one(), (false, false));
        let r = recount(&f).unwrap();
        assert_eq!(r.verdict, Verdict::HasZero(2));
        assert_eq!(r.chain_length, f.chain_length);
    }

    #[test]
    fn double_root_is_reduced() {
        // (3t − 1)²
        let f = sturm_factor("p", &IntPoly::new(b(&[1, -6, 9])), &Rational::zero(), &Rational::zero(), &Rational::one(), (false, false));
        let r = recount(&f).unwrap();
        assert!(r.multiplicity_discarded);
        assert_eq!(r.verdict, Verdict::HasZero(1));
        assert_eq!(r.sign_changes, f.sign_changes);
    }

    #[test]
    fn sign_at_rationals() {
        let p = b(&[-2, 0, 1]);
        assert_eq!(sign_at(&p, &Rational::frac(7, 5)), -1);
        assert_eq!(sign_at(&p, &Rational::frac(3, 2)), 1);
        assert_eq!(sign_at(&p, &Rational::frac(-3, 2)), 1);
    }

    #[test]
    fn tampered_factor_is_caught() {
        let mut f = sturm_factor("p", &IntPoly::new(b(&[1, 0, 1])), &Rational::zero(), &Rational::zero(), &Rational::one(), (false, false));
        assert_eq!(recount(&f).unwrap().verdict, Verdict::StrictlyPositive);
        f.poly = IntPoly::new(b(&[-1, 0, 4]));
        let mut out = vec![];
        factor_issues("x", &f, &(Rational::zero(), Rational::one()), &mut out);
        assert_eq!(out.len(), 1);
    }
}
