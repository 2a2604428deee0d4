use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::connection::{connection_jet, point_tensor};
use super::frame::{base_quantities, PieceData};
use super::oracle::{basis_vec, Arg, Jet, OrbitGeometry, OrbitVec};
use crate::exactmath::{MathError, RatFunc, Rational, Scalar};

/// Rational points (ε, t) with t strictly inside the piece, drawn from a
/// seeded ChaCha stream.
pub fn sample_points(d: &PieceData, seed: u64, n: usize) -> Vec<(Rational, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (d.piece as u64).wrapping_mul(0x9e37_79b9));
    let (a, b) = &d.interval;
    (0..n)
        .map(|_| {
            let k: i64 = rng.gen_range(1..1000);
            let t = a + &(&(b - a) * &Rational::frac(k, 1000));
            let eps = Rational::frac(rng.gen_range(1..50), rng.gen_range(100..1000));
            (eps, t)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub points: Vec<(Rational, Rational)>,
    pub antisymmetry: bool,
    pub pair_symmetry: bool,
    pub bianchi: bool,
    /// First few violations, "kind at (ε, t): indices".
    pub violations: Vec<String>,
}

impl SymmetryReport {
    pub fn pass(&self) -> bool {
        self.antisymmetry && self.pair_symmetry && self.bianchi
    }
}

/// Checks a 7⁴ table for the curvature-tensor symmetries; `bianchi = false`
/// skips the first Bianchi identity.
pub fn tensor_symmetries(r: &[Rational], bianchi: bool) -> (bool, bool, bool, Vec<String>) {
    let at = |a: usize, b: usize, c: usize, d: usize| &r[a * 343 + b * 49 + c * 7 + d];
    let (mut anti, mut pair, mut bi) = (true, true, true);
    let mut v = Vec::new();
    for a in 0..7 {
        for b in 0..7 {
            for c in 0..7 {
                for d in 0..7 {
                    let x = at(a, b, c, d);
                    if x != &-at(b, a, c, d) || x != &-at(a, b, d, c) {
                        anti = false;
                        v.push(format!("antisymmetry {:?}", (a, b, c, d)));
                    }
                    if x != at(c, d, a, b) {
                        pair = false;
                        v.push(format!("pair symmetry {:?}", (a, b, c, d)));
                    }
                    if bianchi && !(&(x + at(b, c, a, d)) + at(c, a, b, d)).is_zero() {
                        bi = false;
                        v.push(format!("Bianchi {:?}", (a, b, c, d)));
                    }
                }
            }
        }
    }
    v.truncate(8);
    (anti, pair, bi, v)
}

pub fn check_symmetries(d: &PieceData, seed: u64, n: usize) -> Result<SymmetryReport, MathError> {
    let points = sample_points(d, seed, n);
    let mut rep = SymmetryReport { points: points.clone(), antisymmetry: true, pair_symmetry: true, bianchi: true, violations: vec![] };
    for (eps, t) in &points {
        let r = point_tensor(d, eps, t)?;
        let (a, p, b, v) = tensor_symmetries(&r, true);
        rep.antisymmetry &= a;
        rep.pair_symmetry &= p;
        rep.bianchi &= b;
        rep.violations.extend(v.into_iter().map(|s| format!("{} at ({}, {})", s, eps, t)));
    }
    rep.violations.truncate(8);
    Ok(rep)
}

/// L, M, N of the base through the general formulas: a single SO(3) orbit
/// with ⟨X_i,X_i⟩ = v_i², read in the frame X_i/v_i.
pub fn base_via_general(v: &[RatFunc; 3]) -> ([RatFunc; 3], [RatFunc; 3], [RatFunc; 3]) {
    let one = || [RatFunc::one(), RatFunc::one(), RatFunc::one()];
    let zero = || [RatFunc::zero(), RatFunc::zero(), RatFunc::zero()];
    let f0 = [0, 1, 2].map(|i| v[i].square());
    let f1 = [0, 1, 2].map(|i| f0[i].derivative());
    let f2 = [0, 1, 2].map(|i| f1[i].derivative());
    let jet = Jet { f: [f0, f1, f2], g: [one(), zero(), zero()], h: [zero(), zero(), zero()] };
    let geo = OrbitGeometry::new(&jet).expect("v_i nonzero");
    let e: Vec<Arg<RatFunc>> = (0..3)
        .map(|i| {
            let mut x: OrbitVec<RatFunc> = basis_vec(i);
            x[i] = v[i].recip().expect("v_i nonzero");
            Arg::Orbit(x)
        })
        .collect();
    let l = [0, 1, 2].map(|k| geo.riemann(&e[k], &Arg::T, &e[k], &Arg::T));
    let m = [0, 1, 2].map(|k| {
        let (i, j) = super::frame::cyc(k);
        geo.riemann(&e[i], &e[j], &e[i], &e[j])
    });
    let n = [0, 1, 2].map(|k| {
        let (i, j) = super::frame::cyc(k);
        geo.riemann(&e[i], &e[j], &e[k], &Arg::T)
    });
    (l, m, n)
}

/// Whether both derivations of (L, M, N) agree exactly.
pub fn base_paths_agree(d: &PieceData) -> bool {
    base_quantities(&d.v) == base_via_general(&d.v)
}

/// Under f → ε, h → εh, g = v² + εh²: ⟨X_i, V_i⟩ = 0 and ⟨V_i, V_i⟩ = v_i² for
/// V_i = Y_i − h_i X_i.
pub fn scaling_contract(d: &PieceData) -> bool {
    let jet = connection_jet(d);
    (0..3).all(|i| {
        let (f, g, h) = (&jet.f[0][i], &jet.g[0][i], &jet.h[0][i]);
        let c = crate::exactmath::EpsPoly::constant(d.h[i].clone());
        // ⟨X, Y − cX⟩ = h − c f ; ⟨V, V⟩ = g − 2c h + c² f
        let xv = h.sub(&c.mul(f));
        let vv = g.sub(&c.mul(h).scale_int(2)).add(&c.mul(&c).mul(f));
        xv.is_zero() && vv == crate::exactmath::EpsPoly::constant(d.v[i].square())
    })
}
