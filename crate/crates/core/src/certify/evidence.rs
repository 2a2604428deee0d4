use serde::{Deserialize, Serialize};

use crate::curvature::PieceData;
use crate::exactmath::{IntPoly, RatFunc, Rational};
use crate::sturm::{certify_on, Interval, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Outcome::Pass
    }
}

/// One polynomial whose sign was certified with a Sturm chain. The polynomial
/// is written in a variable x with t = offset + scale·x.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SturmFactor {
    pub role: String,
    pub offset: Rational,
    pub scale: Rational,
    pub poly: IntPoly,
    pub interval: Interval,
    pub chain_length: usize,
    pub sign_changes: [usize; 2],
    pub endpoint_signs: [i32; 2],
    pub multiplicity_discarded: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rel {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "<")]
    Lt,
}

impl Rel {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Rel::Eq => lhs == rhs,
            Rel::Gt => lhs > rhs,
            Rel::Lt => lhs < rhs,
        }
    }
}

/// A sub-interval of a cover together with the branch that holds there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverPart {
    pub branch: String,
    pub interval: (Rational, Rational),
    pub factors: Vec<SturmFactor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Every factor has a strict sign and their product has sign `expect`.
    Sign { expect: i32, factors: Vec<SturmFactor> },
    /// An exact rational relation.
    Relation { lhs: Rational, rel: Rel, rhs: Rational },
    /// Two integer polynomials that must be equal.
    Identity { lhs: IntPoly, rhs: IntPoly },
    /// Sub-intervals covering the check interval, each with a positive
    /// certificate for one branch.
    Cover { parts: Vec<CoverPart> },
    /// Result of a comparison that needs the curvature formulas to redo.
    Tally { compared: usize, mismatched: usize },
    /// (√radicand + 2c)·a > rhs, decided exactly.
    Radical { radicand: Rational, c: Rational, a: Rational, rhs: Rational },
    /// The check could not be carried out.
    Unavailable { reason: String },
}

impl Evidence {
    /// Whether the recorded data supports the claim.
    pub fn holds(&self) -> bool {
        match self {
            Evidence::Sign { expect, factors } => sign_product(factors) == Some(*expect),
            Evidence::Relation { lhs, rel, rhs } => rel.holds(lhs, rhs),
            Evidence::Identity { lhs, rhs } => lhs == rhs,
            Evidence::Cover { parts } => !parts.is_empty() && parts.iter().all(|p| sign_product(&p.factors) == Some(1)),
            Evidence::Tally { compared, mismatched } => *compared > 0 && *mismatched == 0,
            Evidence::Radical { radicand, c, a, rhs } => radical_holds(radicand, c, a, rhs),
            Evidence::Unavailable { .. } => false,
        }
    }
}

pub fn sign_product(factors: &[SturmFactor]) -> Option<i32> {
    let mut s = 1;
    for f in factors {
        s *= f.verdict.sign()?;
    }
    Some(s)
}

/// Certifies `p` (in the piece variable) on the global interval [a, b].
/// The polynomial is recorded either in the piece variable or rescaled to
/// [0, 1], whichever has smaller coefficients.
pub fn sturm_factor(role: &str, p: &IntPoly, center: &Rational, a: &Rational, b: &Rational, open: (bool, bool)) -> SturmFactor {
    let local = (center.clone(), Rational::one(), p.clone(), a - center, b - center);
    let choice = if p.is_constant() {
        local
    } else {
        let unit = p.compose_affine(&(a - center), &(b - a));
        if unit.max_bits() < p.max_bits() {
            (a.clone(), b - a, unit, Rational::zero(), Rational::one())
        } else {
            local
        }
    };
    let (offset, scale, poly, xa, xb) = choice;
    let interval = Interval { a: xa, b: xb, open_a: open.0, open_b: open.1 };
    let cert = certify_on(&poly, &interval);
    SturmFactor {
        role: role.to_string(),
        offset,
        scale,
        endpoint_signs: [cert.endpoint_values.0.signum(), cert.endpoint_values.1.signum()],
        chain_length: cert.chain_length,
        sign_changes: [cert.sign_changes_at_a, cert.sign_changes_at_b],
        multiplicity_discarded: cert.multiplicity_discarded,
        verdict: cert.verdict,
        interval,
        poly,
    }
}

/// Sign evidence for a rational function of the piece variable on [a, b]:
/// the numerator on the requested interval, the denominator on the closed one.
pub fn ratfunc_factors(f: &RatFunc, d: &PieceData, a: &Rational, b: &Rational, open: (bool, bool)) -> Vec<SturmFactor> {
    let c = d.var.center();
    let mut out = vec![sturm_factor("numerator", f.num(), &c, a, b, open)];
    if !f.den().is_one() {
        out.push(sturm_factor("denominator", f.den(), &c, a, b, (false, false)));
    }
    out
}

pub fn sign_evidence(f: &RatFunc, d: &PieceData, expect: i32, open: (bool, bool)) -> Evidence {
    let (a, b) = &d.interval;
    Evidence::Sign { expect, factors: ratfunc_factors(f, d, a, b, open) }
}

/// Decides (√x + 2c)·a > r for x ≥ 0 by isolating the root and squaring
/// only when both sides are known to be nonnegative.
pub fn radical_holds(x: &Rational, c: &Rational, a: &Rational, r: &Rational) -> bool {
    if x.signum() < 0 {
        return false;
    }
    match a.signum() {
        0 => r.signum() < 0,
        s => {
            // √x > t for a > 0, √x < t for a < 0
            let t = &r.checked_div(a).expect("a is nonzero") - &(c * &Rational::int(2));
            if s > 0 {
                t.signum() < 0 || x > &(&t * &t)
            } else {
                t.signum() > 0 && x < &(&t * &t)
            }
        }
    }
}
