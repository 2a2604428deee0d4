//! Piecewise-polynomial connection metrics: data model, file format, C²
//! gluing, the shipped P₂ instance and smoothness checks.

mod glue;
mod io;
mod p2;
mod smooth;

pub use glue::{hermite_c2_glue, jet2, quintic_from_jets};
pub use io::{Conventions, MetricFile, PieceSpec, V3Sign};
pub use p2::{build_p2_metric, p2_metric_file};
pub use smooth::{check_gen_smooth, check_smoothness, CheckEntry, GenSmoothError, SmoothnessReport};

use thiserror::Error;

use crate::exactmath::{Poly, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("malformed metric file: {0}")]
    Parse(String),
    #[error("invalid metric at {location}: {message}")]
    Invalid { location: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub a: Rational,
    pub b: Rational,
    pub poly: Poly,
    /// Generated by C² Hermite gluing rather than read from the file.
    pub glued: bool,
}

/// Which piece to use at a breakpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseFunc {
    pub pieces: Vec<Piece>,
}

impl PiecewiseFunc {
    pub fn start(&self) -> &Rational {
        &self.pieces[0].a
    }

    pub fn end(&self) -> &Rational {
        &self.pieces.last().expect("nonempty").b
    }

    /// Piece containing `t`; at a breakpoint `side` picks the neighbor.
    /// Outside the domain the nearest end piece is used.
    pub fn piece_at(&self, t: &Rational, side: Side) -> &Piece {
        let n = self.pieces.len();
        for (i, p) in self.pieces.iter().enumerate() {
            let inside = match side {
                Side::Right => &p.a <= t && (t < &p.b || i == n - 1),
                Side::Left => (&p.a < t || i == 0) && t <= &p.b,
            };
            if inside {
                return p;
            }
        }
        if t < self.start() {
            &self.pieces[0]
        } else {
            &self.pieces[n - 1]
        }
    }

    /// Right-continuous value (the last piece is closed on the right).
    pub fn eval(&self, t: &Rational) -> Rational {
        self.piece_at(t, Side::Right).poly.eval(t)
    }

    pub fn deriv(&self, t: &Rational, n: usize, side: Side) -> Rational {
        self.piece_at(t, side).poly.nth_derivative(n).eval(t)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseMetric {
    pub ell: u32,
    pub l: Rational,
    pub breakpoints: Vec<Rational>,
    /// v₁, v₂, v₃ with the signed convention v₃ < 0 when the file asks for it.
    pub v: [PiecewiseFunc; 3],
    pub h: [PiecewiseFunc; 3],
    pub source: MetricFile,
}

impl PiecewiseMetric {
    pub fn from_json(s: &str) -> Result<Self, MetricError> {
        MetricFile::from_json(s)?.resolve()
    }

    pub fn fingerprint(&self) -> String {
        self.source.fingerprint()
    }

    pub fn num_pieces(&self) -> usize {
        self.breakpoints.len() - 1
    }

    pub fn piece_interval(&self, i: usize) -> (Rational, Rational) {
        (self.breakpoints[i].clone(), self.breakpoints[i + 1].clone())
    }

    /// Common variable of the six polynomials on piece `i` (plain t when they
    /// disagree).
    pub fn piece_var(&self, i: usize) -> Var {
        let vars: Vec<&Var> = self.v.iter().chain(self.h.iter()).map(|f| f.pieces[i].poly.var()).collect();
        if vars.iter().all(|v| *v == vars[0]) {
            vars[0].clone()
        } else {
            Var::T
        }
    }

    /// (v, h) polynomials on piece `i`, all in `piece_var(i)`.
    pub fn piece_polys(&self, i: usize) -> ([Poly; 3], [Poly; 3]) {
        let var = self.piece_var(i);
        let conv = |f: &PiecewiseFunc| f.pieces[i].poly.to_var(&var);
        (
            [conv(&self.v[0]), conv(&self.v[1]), conv(&self.v[2])],
            [conv(&self.h[0]), conv(&self.h[1]), conv(&self.h[2])],
        )
    }

    /// Unrolls (v_i, h_i) into single functions on [0, 3L]:
    /// [0,L] ↦ f₁(t), [L,2L] ↦ f₃(2L − t), [2L,3L] ↦ f₂(t − 2L).
    /// With `magnitude` the v₃ segment uses |v₃| (continuous at L and 2L).
    pub fn map_to_3l(&self, magnitude: bool) -> (PiecewiseFunc, PiecewiseFunc) {
        let v3_sign = if magnitude && self.v[2].eval(&self.l).signum() < 0 { -1 } else { 1 };
        (self.unroll(&self.v, v3_sign), self.unroll(&self.h, 1))
    }

    fn unroll(&self, f: &[PiecewiseFunc; 3], sign3: i64) -> PiecewiseFunc {
        let two_l = &self.l * &Rational::int(2);
        let mut pieces = f[0].pieces.clone();
        for p in f[2].pieces.iter().rev() {
            let poly = reflect(&p.poly, &two_l).scale(&Rational::int(sign3));
            pieces.push(Piece { a: &two_l - &p.b, b: &two_l - &p.a, poly, glued: p.glued });
        }
        for p in &f[1].pieces {
            pieces.push(Piece { a: &p.a + &two_l, b: &p.b + &two_l, poly: translate(&p.poly, &two_l), glued: p.glued });
        }
        PiecewiseFunc { pieces }
    }

    /// Reads the three original functions back from unrolled ones.
    pub fn roll_back(&self, unrolled: &PiecewiseFunc) -> [PiecewiseFunc; 3] {
        let two_l = &self.l * &Rational::int(2);
        let n = self.num_pieces();
        let f1 = PiecewiseFunc { pieces: unrolled.pieces[..n].to_vec() };
        let f3 = PiecewiseFunc {
            pieces: unrolled.pieces[n..2 * n]
                .iter()
                .rev()
                .map(|p| Piece { a: &two_l - &p.b, b: &two_l - &p.a, poly: reflect(&p.poly, &two_l), glued: p.glued })
                .collect(),
        };
        let neg = -two_l.clone();
        let f2 = PiecewiseFunc {
            pieces: unrolled.pieces[2 * n..]
                .iter()
                .map(|p| Piece { a: &p.a - &two_l, b: &p.b - &two_l, poly: translate(&p.poly, &neg), glued: p.glued })
                .collect(),
        };
        [f1, f2, f3]
    }
}

/// q(t) = p(m − t), kept in shifted form.
fn reflect(p: &Poly, m: &Rational) -> Poly {
    // p in s = t' − c; with t' = m − t: s = −(t − (m − c))
    let c = p.var().center();
    let coeffs = p.coeffs().iter().enumerate().map(|(n, x)| if n % 2 == 1 { -x } else { x.clone() }).collect();
    let center = m - &c;
    Poly::new(if center.is_zero() { Var::T } else { Var::Shifted(center) }, coeffs)
}

/// q(t) = p(t − d).
fn translate(p: &Poly, d: &Rational) -> Poly {
    let center = &p.var().center() + d;
    Poly::new(if center.is_zero() { Var::T } else { Var::Shifted(center) }, p.coeffs().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unroll_values() {
        let m = build_p2_metric();
        let (v, h) = m.map_to_3l(false);
        let l = m.l.clone();
        let two_l = &l * &Rational::int(2);
        let three_l = &l * &Rational::int(3);
        assert!(v.eval(&Rational::zero()).is_zero());
        assert_eq!(h.eval(&three_l), Rational::frac(5, 3));
        assert_eq!(v.eval(&(&two_l - &l)), m.v[2].eval(&l));
        assert_eq!(v.eval(&(&two_l - &Rational::frac(1, 5))), m.v[2].eval(&Rational::frac(1, 5)));
        assert_eq!(v.eval(&(&two_l + &Rational::frac(1, 5))), m.v[1].eval(&Rational::frac(1, 5)));
        let (vm, _) = m.map_to_3l(true);
        assert_eq!(vm.eval(&l), Rational::frac(5, 4));
        assert_eq!(vm.eval(&two_l), Rational::frac(149, 200));
    }

    #[test]
    fn unroll_round_trip() {
        let m = build_p2_metric();
        let (v, h) = m.map_to_3l(false);
        let back = m.roll_back(&v);
        for i in 0..3 {
            for (p, q) in back[i].pieces.iter().zip(&m.v[i].pieces) {
                assert_eq!((&p.a, &p.b), (&q.a, &q.b));
                assert_eq!(p.poly.to_plain(), q.poly.to_plain());
            }
        }
        let back = m.roll_back(&h);
        assert_eq!(back[1].pieces[2].poly.to_plain(), m.h[1].pieces[2].poly.to_plain());
    }

    #[test]
    fn piece_lookup_sides() {
        let m = build_p2_metric();
        let t = Rational::frac(1, 10);
        assert!(!m.v[0].piece_at(&t, Side::Left).glued);
        assert!(m.v[0].piece_at(&t, Side::Right).glued);
        assert_eq!(m.v[0].piece_at(&m.l, Side::Right).b, m.l);
    }
}
