use serde::Serialize;

use super::det::leading_principal_minors;
use super::{BlockLabel, OperatorBlock};
use crate::curvature::CurvatureFrame;
use crate::exactmath::{EpsPoly, MathError, RatFunc, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct MinorSpectrum {
    pub block: BlockLabel,
    pub k: usize,
    pub det: EpsPoly,
    pub eps_degree: i32,
    pub leading: RatFunc,
}

/// Determinants of the upper-left k×k blocks and their lowest ε terms.
/// A zero determinant is reported as a degeneracy error.
pub fn leading_minors(block: &OperatorBlock) -> Result<Vec<MinorSpectrum>, MathError> {
    let dets = leading_principal_minors(&block.entries)?;
    dets.into_iter()
        .enumerate()
        .map(|(n, det)| {
            let (eps_degree, leading) = det.lowest_term()?;
            Ok(MinorSpectrum { block: block.label, k: n + 1, det, eps_degree, leading })
        })
        .collect()
}

/// The minimal-degree coefficient of each exact-mode minor equals the
/// leading-mode one.
pub fn alpha_independent(leading: &[MinorSpectrum], exact: &[MinorSpectrum]) -> Vec<bool> {
    leading.iter().zip(exact).map(|(l, e)| l.eps_degree == e.eps_degree && l.leading == e.leading).collect()
}

/// k = 2: lead = γ_i²γ_j² r_ir_j(2 − r_ir_j) with r = β/γ, i.e.
/// β_iβ_j(2γ_iγ_j − β_iβ_j).
pub fn k2_identity(fr: &CurvatureFrame, i: usize, j: usize, lead: &RatFunc) -> bool {
    let (b, g) = (&fr.beta, &fr.gamma);
    let bb = b[i].mul(&b[j]);
    let rhs = bb.mul(&g[i].mul(&g[j]).scale(&Rational::int(2)).sub(&bb));
    &rhs == lead
}

/// k = 3: 4·lead = γ_i²γ_j²γ_k²·[6r_ir_jr_k² − 4r_i²r_j²r_k² − (r_i − r_j)²
/// − 2r_i²r_j² + 2r_ir_jr_k(r_i + r_j)] with r = β/γ.
pub fn k3_identity(fr: &CurvatureFrame, i: usize, j: usize, k: usize, lead: &RatFunc) -> Result<bool, MathError> {
    let r = |n: usize| fr.beta[n].try_div(&fr.gamma[n]);
    let (ri, rj, rk) = (r(i)?, r(j)?, r(k)?);
    let q = |n: i64| Rational::int(n);
    let rr = ri.mul(&rj);
    let f = rr
        .mul(&rk.square())
        .scale(&q(6))
        .sub(&rr.square().mul(&rk.square()).scale(&q(4)))
        .sub(&ri.sub(&rj).square())
        .sub(&rr.square().scale(&q(2)))
        .add(&rr.mul(&rk).mul(&ri.add(&rj)).scale(&q(2)));
    let g2 = fr.gamma[i].mul(&fr.gamma[j]).mul(&fr.gamma[k]).square();
    Ok(g2.mul(&f) == lead.scale(&q(4)))
}

/// r_ir_j − 2 with r = β/γ: the k = 2 condition in its typeset direction.
pub fn printed_k2_condition(fr: &CurvatureFrame, i: usize, j: usize) -> Result<RatFunc, MathError> {
    let rr = fr.beta[i].try_div(&fr.gamma[i])?.mul(&fr.beta[j].try_div(&fr.gamma[j])?);
    Ok(rr.sub(&RatFunc::from_int(2)))
}

/// 6r_ir_j + 2r_ir_k + 2r_jr_k − 4 − r_k²[2 − (r_i − r_j)²] with r = β/γ, as typeset.
pub fn printed_k3_condition(fr: &CurvatureFrame, i: usize, j: usize, k: usize) -> Result<RatFunc, MathError> {
    let r = |n: usize| fr.beta[n].try_div(&fr.gamma[n]);
    let (ri, rj, rk) = (r(i)?, r(j)?, r(k)?);
    let q = |n: i64| Rational::int(n);
    let lhs = ri.mul(&rj).scale(&q(6)).add(&ri.mul(&rk).scale(&q(2))).add(&rj.mul(&rk).scale(&q(2)));
    let rhs = RatFunc::from_int(4).add(&rk.square().mul(&RatFunc::from_int(2).sub(&ri.sub(&rj).square())));
    Ok(lhs.sub(&rhs))
}
