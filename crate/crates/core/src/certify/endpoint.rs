use serde::Serialize;
use thiserror::Error;

use super::evidence::{Evidence, Outcome};
use super::Check;
use crate::exactmath::{Poly, Rational, Var};
use crate::metricdef::{PiecewiseMetric, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EndpointError {
    #[error("endpoint jet at {at} does not match the expected form: {detail}")]
    Template { at: &'static str, detail: String },
}

/// Taylor data at t = 0: v₁ = 4t − d₀t³ + O(t⁵), v₂ = a₂ − b₂t − c₂t² + O(t³),
/// |v₃| = a₂ + b₂t − c₂t² + O(t³).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetAtZero {
    pub a2: Rational,
    pub b2: Rational,
    pub c2: Rational,
    pub d0: Rational,
}

/// Taylor data at t = L in s = t − L: v₁ = a₁ − c₁s² + O(s³),
/// v₂ = −(4/ℓ)s + d₃s³ + O(s⁴), |v₃| = a₁ − c₁s² + O(s³).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetAtL {
    pub a1: Rational,
    pub c1: Rational,
    pub d3: Rational,
    pub ell: u32,
}

impl JetAtZero {
    /// (√(3(b₂²+2)d₀) + 2c₂)a₂ > 3|4 − b₂²|.
    pub fn evidence(&self) -> Evidence {
        let b2sq = &self.b2 * &self.b2;
        let radicand = &(&(&b2sq + &Rational::int(2)) * &self.d0) * &Rational::int(3);
        let rhs = &(&Rational::int(4) - &b2sq).abs() * &Rational::int(3);
        Evidence::Radical { radicand, c: self.c2.clone(), a: self.a2.clone(), rhs }
    }
}

impl JetAtL {
    /// (√(6d₃ℓ) + 2c₁)a₁ > 12/ℓ.
    pub fn evidence(&self) -> Evidence {
        let ell = Rational::int(self.ell as i64);
        let radicand = &(&self.d3 * &ell) * &Rational::int(6);
        let rhs = Rational::int(12).checked_div(&ell).expect("ell > 0");
        Evidence::Radical { radicand, c: self.c1.clone(), a: self.a1.clone(), rhs }
    }
}

fn coeffs_at(p: &Poly, center: &Rational, n: usize) -> Vec<Rational> {
    let var = if center.is_zero() { Var::T } else { Var::Shifted(center.clone()) };
    let q = p.to_var(&var);
    (0..n).map(|j| q.coeff(j)).collect()
}

fn expect_eq(at: &'static str, what: &str, got: &Rational, want: &Rational) -> Result<(), EndpointError> {
    if got == want {
        Ok(())
    } else {
        Err(EndpointError::Template { at, detail: format!("{} is {}, expected {}", what, got, want) })
    }
}

/// Jets of v₁, v₂, |v₃| at the two collapse points read from the end pieces.
pub fn endpoint_jets(m: &PiecewiseMetric) -> Result<(JetAtZero, JetAtL), EndpointError> {
    let zero = Rational::zero();
    let first = |i: usize| &m.v[i].piece_at(&zero, Side::Right).poly;
    let last = |i: usize| &m.v[i].piece_at(&m.l, Side::Left).poly;

    let at = "t=0";
    let v1 = coeffs_at(first(0), &zero, 5);
    let v2 = coeffs_at(first(1), &zero, 3);
    let mut v3 = coeffs_at(first(2), &zero, 3);
    if v3[0].signum() < 0 {
        v3.iter_mut().for_each(|c| *c = -c.clone());
    }
    for j in [0, 2, 4] {
        expect_eq(at, &format!("t^{} coefficient of v1", j), &v1[j], &zero)?;
    }
    expect_eq(at, "t coefficient of v1", &v1[1], &Rational::int(4))?;
    let jet0 = JetAtZero { a2: v2[0].clone(), b2: -v2[1].clone(), c2: -v2[2].clone(), d0: -v1[3].clone() };
    expect_eq(at, "|v3|(0)", &v3[0], &jet0.a2)?;
    expect_eq(at, "|v3|'(0)", &v3[1], &jet0.b2)?;
    expect_eq(at, "|v3|''(0)/2", &v3[2], &-jet0.c2.clone())?;

    let at = "t=L";
    let l = &m.l;
    let v1 = coeffs_at(last(0), l, 3);
    let v2 = coeffs_at(last(1), l, 4);
    let mut v3 = coeffs_at(last(2), l, 3);
    if v3[0].signum() < 0 {
        v3.iter_mut().for_each(|c| *c = -c.clone());
    }
    let ell = Rational::int(m.ell as i64);
    expect_eq(at, "s coefficient of v1", &v1[1], &zero)?;
    expect_eq(at, "v2(L)", &v2[0], &zero)?;
    expect_eq(at, "v2'(L)", &v2[1], &Rational::int(-4).checked_div(&ell).map_err(|e| EndpointError::Template { at, detail: e.to_string() })?)?;
    expect_eq(at, "s^2 coefficient of v2", &v2[2], &zero)?;
    let jet_l = JetAtL { a1: v1[0].clone(), c1: -v1[2].clone(), d3: v2[3].clone(), ell: m.ell };
    for j in 0..3 {
        expect_eq(at, &format!("s^{} coefficient of |v3|", j), &v3[j], &v1[j])?;
    }
    Ok((jet0, jet_l))
}

/// The two endpoint inequalities as exact checks.
pub fn check_endpoint_inequalities(m: &PiecewiseMetric) -> Result<Vec<Check>, EndpointError> {
    let (j0, jl) = endpoint_jets(m)?;
    let make = |name: &str, anchor: &str, t: Rational, ev: Evidence| Check {
        name: name.to_string(),
        anchor: anchor.to_string(),
        piece: None,
        interval: Some((t.clone(), t)),
        depends_on: vec![],
        verdict: Outcome::from_bool(ev.holds()),
        evidence: ev,
    };
    Ok(vec![
        make(
            "endpoint/t=0",
            "positive curvature at t=0: (sqrt(3(b2^2+2)d0) + 2c2)a2 > 3|4-b2^2|",
            Rational::zero(),
            j0.evidence(),
        ),
        make("endpoint/t=L", "positive curvature at t=L: (sqrt(6 d3 ell) + 2c1)a1 > 12/ell", m.l.clone(), jl.evidence()),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metricdef::build_p2_metric;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn shipped_jets() {
        let (j0, jl) = endpoint_jets(&build_p2_metric()).unwrap();
        assert_eq!(j0, JetAtZero { a2: q(149, 200), b2: q(11, 9), c2: q(1, 10), d0: q(10, 1) });
        assert_eq!(jl, JetAtL { a1: q(5, 4), c1: q(3, 1), d3: q(3, 10), ell: 3 });
        assert!(j0.evidence().holds());
        assert!(jl.evidence().holds());
    }

    #[test]
    fn squaring_oracle_for_shipped_constants() {
        // independent: both sides positive, compare squares directly
        let (a2, b2, c2, d0) = (q(149, 200), q(11, 9), q(1, 10), q(10, 1));
        let lhs_free = &(&Rational::int(3) * &(&(&(&b2 * &b2) + &Rational::int(2)) * &d0)) * &(&a2 * &a2);
        let rhs = &Rational::int(3) * &(&Rational::int(4) - &(&b2 * &b2)).abs() - &(&(&Rational::int(2) * &c2) * &a2);
        assert!(rhs.signum() > 0 && lhs_free > &rhs * &rhs);
        let (a1, c1, d3) = (q(5, 4), q(3, 1), q(3, 10));
        let rhs = &Rational::int(4) - &(&(&Rational::int(2) * &c1) * &a1);
        // 12/ℓ − 2c₁a₁ = 4 − 7.5 < 0: holds without squaring
        assert!(rhs.signum() < 0);
        assert!((&Rational::int(18) * &d3).signum() > 0);
    }

    #[test]
    fn b2_equal_two_makes_right_side_zero() {
        let j = JetAtZero { a2: q(1, 100), b2: q(2, 1), c2: q(0, 1), d0: q(1, 1000) };
        assert!(j.evidence().holds());
    }

    #[test]
    fn unmodified_hitchin_jet_fails() {
        // a = tan(π/5) and b₂ = √(1+a²) replaced by rational approximants
        let a = q(1453, 2000);
        let a_sq = &a * &a;
        let b2 = q(12361, 10000);
        let c2 = (&(&Rational::int(5) * &a_sq) - &Rational::int(3)).checked_div(&(&Rational::int(2) * &a)).unwrap();
        let d0 = (&Rational::int(4) * &(&a_sq + &Rational::int(3))).checked_div(&(&Rational::int(3) * &a_sq)).unwrap();
        let j = JetAtZero { a2: a, b2, c2, d0 };
        assert!(!j.evidence().holds());
    }

    #[test]
    fn template_mismatch_is_reported() {
        let mut m = build_p2_metric();
        let p = &mut m.v[0].pieces[0].poly;
        *p = Poly::new(p.var().clone(), p.coeffs().iter().map(|c| c * &Rational::int(2)).collect());
        assert!(matches!(endpoint_jets(&m), Err(EndpointError::Template { at: "t=0", .. })));
    }
}
