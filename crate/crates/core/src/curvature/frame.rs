use serde::Serialize;

use crate::exactmath::{MathError, RatFunc, Rational, Var};
use crate::metricdef::PiecewiseMetric;

/// Cyclic successors: for i returns (j, k) with (i, j, k) a cyclic permutation.
pub fn cyc(i: usize) -> (usize, usize) {
    ((i + 1) % 3, (i + 2) % 3)
}

/// The index distinct from i and j.
pub fn third(i: usize, j: usize) -> usize {
    3 - i - j
}

/// v and h on one piece as rational functions of the piece variable.
#[derive(Clone, Debug, Serialize)]
pub struct PieceData {
    pub piece: usize,
    pub var: Var,
    pub interval: (Rational, Rational),
    pub v: [RatFunc; 3],
    pub h: [RatFunc; 3],
}

impl PieceData {
    pub fn new(m: &PiecewiseMetric, piece: usize) -> Self {
        let (v, h) = m.piece_polys(piece);
        let rf = |p: &[crate::exactmath::Poly; 3]| [0, 1, 2].map(|i| RatFunc::from_poly(&p[i]));
        PieceData { piece, var: m.piece_var(piece), interval: m.piece_interval(piece), v: rf(&v), h: rf(&h) }
    }

    /// From explicit functions in the plain variable t.
    pub fn from_funcs(v: [RatFunc; 3], h: [RatFunc; 3], interval: (Rational, Rational)) -> Self {
        PieceData { piece: 0, var: Var::T, interval, v, h }
    }

    /// Evaluates a function of the piece variable at the global parameter t.
    pub fn at(&self, f: &RatFunc, t: &Rational) -> Result<Rational, MathError> {
        f.eval(&self.var.local(t))
    }
}

/// Base and connection quantities on one piece, indexed from 0.
#[derive(Clone, Debug, Serialize)]
pub struct CurvatureFrame {
    pub data: PieceData,
    pub beta: [RatFunc; 3],
    pub beta_prime: [RatFunc; 3],
    pub gamma: [RatFunc; 3],
    /// b[i][j] and c[i][j] for i ≠ j; the diagonal is zero.
    pub b: [[RatFunc; 3]; 3],
    pub c: [[RatFunc; 3]; 3],
    pub l: [RatFunc; 3],
    pub m: [RatFunc; 3],
    pub n: [RatFunc; 3],
}

fn div(a: &RatFunc, b: &RatFunc) -> RatFunc {
    a.try_div(b).expect("v_i is not identically zero on a piece")
}

pub fn base_quantities(v: &[RatFunc; 3]) -> ([RatFunc; 3], [RatFunc; 3], [RatFunc; 3]) {
    let dv: Vec<RatFunc> = v.iter().map(|x| x.derivative()).collect();
    let sq: Vec<RatFunc> = v.iter().map(|x| x.square()).collect();
    let log_d: Vec<RatFunc> = (0..3).map(|i| div(&dv[i], &v[i])).collect();
    let l = [0, 1, 2].map(|k| div(&dv[k].derivative(), &v[k]).neg());
    let m = [0, 1, 2].map(|k| {
        let (i, j) = cyc(k);
        let num = sq[k]
            .mul(&sq[i].add(&sq[j]))
            .scale(&Rational::int(2))
            .sub(&sq[k].square().scale(&Rational::int(3)))
            .add(&sq[i].sub(&sq[j]).square());
        div(&num, &sq[i].mul(&sq[j]).mul(&sq[k])).sub(&log_d[i].mul(&log_d[j]))
    });
    let n = [0, 1, 2].map(|k| {
        let (i, j) = cyc(k);
        let vvv = v[i].mul(&v[j]).mul(&v[k]);
        let t1 = div(&dv[k], &v[i].mul(&v[j])).scale(&Rational::int(-2));
        let t2 = log_d[i].mul(&div(&sq[i].add(&sq[k]).sub(&sq[j]), &vvv));
        let t3 = log_d[j].mul(&div(&sq[j].add(&sq[k]).sub(&sq[i]), &vvv));
        t1.add(&t2).add(&t3)
    });
    (l, m, n)
}

pub fn compute_frame(data: PieceData) -> CurvatureFrame {
    let v = &data.v;
    let h = &data.h;
    let beta = [0, 1, 2].map(|i| div(&h[i].derivative(), &v[i].scale(&Rational::int(2))));
    let beta_prime = [0, 1, 2].map(|i| beta[i].derivative());
    let gamma = [0, 1, 2].map(|i| {
        let (j, k) = cyc(i);
        div(&h[i].add(&h[j].mul(&h[k])), &v[j].mul(&v[k])).neg()
    });
    let dot = |x: [&RatFunc; 3], i: usize, j: usize| {
        let k = third(i, j);
        let w0 = div(&h[j].scale(&Rational::int(2)), &v[j]);
        let w1 = div(&v[k].square().add(&v[i].square()).sub(&v[j].square()), &v[i].mul(&v[j]).mul(&v[k]));
        let w2 = div(&v[j].derivative(), &v[j]);
        x[0].mul(&w0).add(&x[1].mul(&w1)).add(&x[2].mul(&w2))
    };
    let mut b: [[RatFunc; 3]; 3] = Default::default();
    let mut c: [[RatFunc; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let k = third(i, j);
                b[i][j] = dot([&gamma[k], &gamma[i], &beta[i]], i, j);
                c[i][j] = dot([&beta[k], &beta[i], &gamma[i]], i, j);
            }
        }
    }
    let (l, m, n) = base_quantities(v);
    CurvatureFrame { data, beta, beta_prime, gamma, b, c, l, m, n }
}

pub fn frame_for_piece(m: &PiecewiseMetric, piece: usize) -> CurvatureFrame {
    compute_frame(PieceData::new(m, piece))
}

/// Base quantities (L, M, N) for every piece.
pub fn base_curvature(m: &PiecewiseMetric) -> Vec<([RatFunc; 3], [RatFunc; 3], [RatFunc; 3])> {
    (0..m.num_pieces()).map(|p| base_quantities(&PieceData::new(m, p).v)).collect()
}

impl CurvatureFrame {
    /// Named scalar quantities, for dumps and certificates.
    pub fn named(&self) -> Vec<(String, RatFunc)> {
        let mut out = Vec::new();
        for i in 0..3 {
            out.push((format!("beta{}", i + 1), self.beta[i].clone()));
            out.push((format!("beta{}'", i + 1), self.beta_prime[i].clone()));
            out.push((format!("gamma{}", i + 1), self.gamma[i].clone()));
            out.push((format!("L{}", i + 1), self.l[i].clone()));
            out.push((format!("M{}", i + 1), self.m[i].clone()));
            out.push((format!("N{}", i + 1), self.n[i].clone()));
        }
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    out.push((format!("B{}{}", i + 1, j + 1), self.b[i][j].clone()));
                    out.push((format!("C{}{}", i + 1, j + 1), self.c[i][j].clone()));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{IntPoly, Poly};
    use crate::metricdef::build_p2_metric;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn gamma2_on_first_piece() {
        let f = frame_for_piece(&build_p2_metric(), 0);
        let num = ip(&[2720, 4620, -5253, -9240, 5066, 4620, 374]).scale(&180.into());
        let den = ip(&[-2, 0, 5]).mul(&ip(&[-1341, -2200, 180, 1260])).scale(&187.into());
        let expected = RatFunc::new(num, den).unwrap();
        assert_eq!(f.gamma[1], expected);
    }

    #[test]
    fn flat_in_t_degeneration() {
        let c = |x: i64| RatFunc::from_int(x);
        let d = PieceData::from_funcs([c(1), c(2), c(-3)], [c(1), c(0), c(5)], (Rational::zero(), Rational::one()));
        let f = compute_frame(d);
        for i in 0..3 {
            assert!(f.l[i].is_zero());
            assert!(f.beta[i].is_zero());
        }
    }

    #[test]
    fn l_for_v1_first_piece() {
        let f = frame_for_piece(&build_p2_metric(), 0);
        assert_eq!(f.l[0], RatFunc::new(ip(&[30]), ip(&[2, 0, -5])).unwrap());
    }

    /// Evaluate v, v', v'' at a point, then apply the displayed formulas.
    fn n_by_values(v: [&Poly; 3], t: &Rational, k: usize) -> Rational {
        let (i, j) = cyc(k);
        let val = |p: &Poly| p.eval(t);
        let d = |p: &Poly| p.derivative().eval(t);
        let (vi, vj, vk) = (val(v[i]), val(v[j]), val(v[k]));
        let vvv = &(&vi * &vj) * &vk;
        let two = Rational::int(2);
        let t1 = -(&two * &d(v[k]).checked_div(&(&vi * &vj)).unwrap());
        let t2 = d(v[i]).checked_div(&vi).unwrap() * (&(&(&vi * &vi) + &(&vk * &vk)) - &(&vj * &vj)).checked_div(&vvv).unwrap();
        let t3 = d(v[j]).checked_div(&vj).unwrap() * (&(&(&vj * &vj) + &(&vk * &vk)) - &(&vi * &vi)).checked_div(&vvv).unwrap();
        &(&t1 + &t2) + &t3
    }

    #[test]
    fn n_difference_matches_pointwise_formula() {
        let m = build_p2_metric();
        let t = Rational::frac(1, 4);
        let p = 1;
        let f = frame_for_piece(&m, p);
        let (v, _) = m.piece_polys(p);
        let vr = [&v[0], &v[1], &v[2]];
        let sym = &f.data.at(&f.n[0], &t).unwrap() - &f.data.at(&f.n[1], &t).unwrap();
        assert_eq!(sym, &n_by_values(vr, &t, 0) - &n_by_values(vr, &t, 1));
    }

    #[test]
    fn round_sphere_window() {
        // v1 = v2 = −v3 = c: M_k = (4c⁴ − 3c⁴ + 0)/c⁶ = 1/c²
        let c = RatFunc::from_int(2);
        let v = [c.clone(), c.clone(), c.neg()];
        let (_, m, n) = base_quantities(&v);
        for k in 0..3 {
            assert_eq!(m[k].as_constant(), Some(Rational::frac(1, 4)));
            assert!(n[k].is_zero());
        }
    }
}
