//! Curvature of a cohomogeneity-one metric whose orbit metric is block
//! diagonal in (X_i, Y_i): ⟨X_i,X_i⟩ = f_i, ⟨Y_i,Y_i⟩ = g_i, ⟨X_i,Y_i⟩ = h_i,
//! with [X_i,X_j] = 2X_k, [Y_i,Y_j] = 2Y_k, [X,Y] = 0 and a unit geodesic T.
//!
//! Orbit components come from
//!   g(R(X,Y)Z,W) = −½Q(B₋(X,Y),[Z,W]) − ½Q([X,Y],B₋(Z,W)) + ½Q(P[X,Y],[Z,W])
//!     + ¼Q(P[X,Z],[Y,W]) − ¼Q(P[X,W],[Y,Z]) + Q(B₊(X,Z),P⁻¹B₊(Y,W))
//!     − Q(B₊(X,W),P⁻¹B₊(Y,Z)) + ¼Q(P'X,Z)Q(P'Y,W) − ¼Q(P'X,W)Q(P'Y,Z)
//! with B± (X,Y) = ½([X,PY] ∓ [PX,Y]). Components are reported with the sign
//! that makes R(x,y,x,y) the (unnormalized) sectional curvature.

use crate::exactmath::{EpsPoly, MathError, Rational, Scalar};

use super::frame::cyc;

/// Coordinates in (X₁,X₂,X₃,Y₁,Y₂,Y₃).
pub type OrbitVec<S> = [S; 6];

#[derive(Clone, Debug)]
pub enum Arg<S> {
    Orbit(OrbitVec<S>),
    T,
}

/// f, g, h and their first two t-derivatives.
#[derive(Clone, Debug)]
pub struct Jet<S> {
    pub f: [[S; 3]; 3],
    pub g: [[S; 3]; 3],
    pub h: [[S; 3]; 3],
}

/// Symmetric 2×2 blocks [[a, c], [c, b]] acting on (X_i, Y_i).
#[derive(Clone, Debug)]
struct BlockMap<S> {
    a: [S; 3],
    b: [S; 3],
    c: [S; 3],
}

impl<S: Scalar> BlockMap<S> {
    fn apply(&self, x: &OrbitVec<S>) -> OrbitVec<S> {
        let mut out: OrbitVec<S> = std::array::from_fn(|_| S::zero());
        for i in 0..3 {
            let (p, q) = (&x[i], &x[3 + i]);
            out[i] = self.a[i].mul(p).add(&self.c[i].mul(q));
            out[3 + i] = self.c[i].mul(p).add(&self.b[i].mul(q));
        }
        out
    }
}

pub struct OrbitGeometry<S> {
    p: BlockMap<S>,
    p_inv: BlockMap<S>,
    dp: BlockMap<S>,
    /// −½P'' + ¼P'P⁻¹P', the T-T block.
    k: BlockMap<S>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("D_{0} = f g − h² is not invertible")]
    Degenerate(usize),
}

impl<S: Scalar> OrbitGeometry<S> {
    pub fn new(jet: &Jet<S>) -> Result<Self, OracleError> {
        let p = BlockMap { a: jet.f[0].clone(), b: jet.g[0].clone(), c: jet.h[0].clone() };
        let dp = BlockMap { a: jet.f[1].clone(), b: jet.g[1].clone(), c: jet.h[1].clone() };
        let mut inv = BlockMap { a: p.a.clone(), b: p.b.clone(), c: p.c.clone() };
        for i in 0..3 {
            let d = p.a[i].mul(&p.b[i]).sub(&p.c[i].mul(&p.c[i]));
            let q = |x: &S| x.try_div(&d).map_err(|_: MathError| OracleError::Degenerate(i + 1));
            inv.a[i] = q(&p.b[i])?;
            inv.b[i] = q(&p.a[i])?;
            inv.c[i] = q(&p.c[i].neg())?;
        }
        // (P'P⁻¹P') block-wise: symmetric product of symmetric 2×2 matrices
        let mut k = BlockMap { a: p.a.clone(), b: p.b.clone(), c: p.c.clone() };
        for i in 0..3 {
            let (a, b, c) = (&dp.a[i], &dp.b[i], &dp.c[i]);
            let (ia, ib, ic) = (&inv.a[i], &inv.b[i], &inv.c[i]);
            // M = P'·P⁻¹ = [[a ia + c ic, a ic + c ib], [c ia + b ic, c ic + b ib]]
            let m11 = a.mul(ia).add(&c.mul(ic));
            let m12 = a.mul(ic).add(&c.mul(ib));
            let m21 = c.mul(ia).add(&b.mul(ic));
            let m22 = c.mul(ic).add(&b.mul(ib));
            // M·P'
            let s11 = m11.mul(a).add(&m12.mul(c));
            let s22 = m21.mul(c).add(&m22.mul(b));
            let s12 = m11.mul(c).add(&m12.mul(b));
            let quarter = S::from_rational(&Rational::frac(1, 4));
            k.a[i] = s11.mul(&quarter).sub(&jet.f[2][i].half());
            k.b[i] = s22.mul(&quarter).sub(&jet.g[2][i].half());
            k.c[i] = s12.mul(&quarter).sub(&jet.h[2][i].half());
        }
        Ok(OrbitGeometry { p, p_inv: inv, dp, k })
    }

    /// Orbit part of ⟨R(x,y)z,w⟩ with the sectional sign convention.
    pub fn orbit4(&self, x: &OrbitVec<S>, y: &OrbitVec<S>, z: &OrbitVec<S>, w: &OrbitVec<S>) -> S {
        let half = |s: S| s.half();
        let quarter = |s: S| s.half().half();
        let xy = bracket(x, y);
        let zw = bracket(z, w);
        let xz = bracket(x, z);
        let yw = bracket(y, w);
        let xw = bracket(x, w);
        let yz = bracket(y, z);
        let mut acc = half(q(&self.bminus(x, y), &zw)).neg();
        acc = acc.sub(&half(q(&xy, &self.bminus(z, w))));
        acc = acc.add(&half(q(&self.p.apply(&xy), &zw)));
        acc = acc.add(&quarter(q(&self.p.apply(&xz), &yw)));
        acc = acc.sub(&quarter(q(&self.p.apply(&xw), &yz)));
        acc = acc.add(&q(&self.bplus(x, z), &self.p_inv.apply(&self.bplus(y, w))));
        acc = acc.sub(&q(&self.bplus(x, w), &self.p_inv.apply(&self.bplus(y, z))));
        let (dx, dy) = (self.dp.apply(x), self.dp.apply(y));
        acc = acc.add(&quarter(q(&dx, z).mul(&q(&dy, w))));
        acc = acc.sub(&quarter(q(&dx, w).mul(&q(&dy, z))));
        acc.neg()
    }

    /// ⟨R(x,y)z,T⟩.
    pub fn orbit3_t(&self, x: &OrbitVec<S>, y: &OrbitVec<S>, z: &OrbitVec<S>) -> S {
        let half = |s: S| s.half();
        let quarter = |s: S| s.half().half();
        let (dx, dy, dz) = (self.dp.apply(x), self.dp.apply(y), self.dp.apply(z));
        let mut acc = half(q(&bracket(x, y), &dz));
        acc = acc.sub(&quarter(q(&bracket(z, x), &dy)));
        acc = acc.sub(&quarter(q(&bracket(y, z), &dx)));
        acc = acc.sub(&half(q(&dx, &self.p_inv.apply(&self.bplus(y, z)))));
        acc = acc.add(&half(q(&dy, &self.p_inv.apply(&self.bplus(z, x)))));
        acc.neg()
    }

    /// ⟨R(x,T)y,T⟩.
    pub fn t_block(&self, x: &OrbitVec<S>, y: &OrbitVec<S>) -> S {
        q(&self.k.apply(x), y)
    }

    /// Full 4-tensor on vectors that are orbit vectors or T.
    pub fn riemann(&self, a: &Arg<S>, b: &Arg<S>, c: &Arg<S>, d: &Arg<S>) -> S {
        use Arg::*;
        match (a, b, c, d) {
            (Orbit(x), Orbit(y), Orbit(z), Orbit(w)) => self.orbit4(x, y, z, w),
            (Orbit(x), Orbit(y), Orbit(z), T) => self.orbit3_t(x, y, z),
            (Orbit(x), Orbit(y), T, Orbit(z)) => self.orbit3_t(x, y, z).neg(),
            (Orbit(x), T, Orbit(y), Orbit(z)) => self.orbit3_t(y, z, x),
            (T, Orbit(x), Orbit(y), Orbit(z)) => self.orbit3_t(y, z, x).neg(),
            (Orbit(x), T, Orbit(y), T) | (T, Orbit(x), T, Orbit(y)) => self.t_block(x, y),
            (Orbit(x), T, T, Orbit(y)) | (T, Orbit(x), Orbit(y), T) => self.t_block(x, y).neg(),
            _ => S::zero(),
        }
    }

    fn bplus(&self, x: &OrbitVec<S>, y: &OrbitVec<S>) -> OrbitVec<S> {
        let a = bracket(x, &self.p.apply(y));
        let b = bracket(&self.p.apply(x), y);
        std::array::from_fn(|m| a[m].sub(&b[m]).half())
    }

    fn bminus(&self, x: &OrbitVec<S>, y: &OrbitVec<S>) -> OrbitVec<S> {
        let a = bracket(x, &self.p.apply(y));
        let b = bracket(&self.p.apply(x), y);
        std::array::from_fn(|m| a[m].add(&b[m]).half())
    }
}

fn q<S: Scalar>(x: &OrbitVec<S>, y: &OrbitVec<S>) -> S {
    let mut acc = S::zero();
    for m in 0..6 {
        if !x[m].is_zero() && !y[m].is_zero() {
            acc = acc.add(&x[m].mul(&y[m]));
        }
    }
    acc
}

fn bracket<S: Scalar>(x: &OrbitVec<S>, y: &OrbitVec<S>) -> OrbitVec<S> {
    let mut out: OrbitVec<S> = std::array::from_fn(|_| S::zero());
    for off in [0, 3] {
        for i in 0..3 {
            let (j, k) = cyc(i);
            let a = x[off + i].mul(&y[off + j]);
            let b = x[off + j].mul(&y[off + i]);
            out[off + k] = out[off + k].add(&a.sub(&b).scale_int(2));
        }
    }
    out
}

pub fn basis_vec<S: Scalar>(m: usize) -> OrbitVec<S> {
    std::array::from_fn(|n| if n == m { S::one() } else { S::zero() })
}

/// Jet of ε-polynomials with t-derivatives computed formally.
pub fn eps_jet(f: &[EpsPoly; 3], g: &[EpsPoly; 3], h: &[EpsPoly; 3]) -> Jet<EpsPoly> {
    let d = |x: &[EpsPoly; 3]| {
        let d1: [EpsPoly; 3] = std::array::from_fn(|i| x[i].derivative_t());
        let d2: [EpsPoly; 3] = std::array::from_fn(|i| d1[i].derivative_t());
        [x.clone(), d1, d2]
    };
    Jet { f: d(f), g: d(g), h: d(h) }
}

/// Point evaluation of a symbolic jet; `local` is the piece variable value.
pub fn eval_jet(j: &Jet<EpsPoly>, eps: &Rational, local: &Rational) -> Result<Jet<Rational>, MathError> {
    let ev = |x: &[[EpsPoly; 3]; 3]| -> Result<[[Rational; 3]; 3], MathError> {
        let mut out: [[Rational; 3]; 3] = Default::default();
        for o in 0..3 {
            for i in 0..3 {
                out[o][i] = x[o][i].eval(eps, local)?;
            }
        }
        Ok(out)
    };
    Ok(Jet { f: ev(&j.f)?, g: ev(&j.g)?, h: ev(&j.h)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant_jet(f: [i64; 3], g: [i64; 3], h: [i64; 3]) -> Jet<Rational> {
        let z = || [Rational::zero(), Rational::zero(), Rational::zero()];
        let c = |x: [i64; 3]| x.map(Rational::int);
        Jet { f: [c(f), z(), z()], g: [c(g), z(), z()], h: [c(h), z(), z()] }
    }

    #[test]
    fn product_of_round_spheres() {
        let geo = OrbitGeometry::new(&constant_jet([1, 1, 1], [1, 1, 1], [0, 0, 0])).unwrap();
        let e = |m: usize| Arg::Orbit(basis_vec::<Rational>(m));
        assert_eq!(geo.riemann(&e(0), &e(1), &e(0), &e(1)), Rational::one());
        assert_eq!(geo.riemann(&e(0), &e(4), &e(0), &e(4)), Rational::zero());
        assert_eq!(geo.riemann(&e(0), &Arg::T, &e(0), &Arg::T), Rational::zero());
    }

    #[test]
    fn berger_sphere_pattern() {
        // ⟨X_i,X_i⟩ = (1,2,4); Milnor's frame gives K₁₂ = λ₃μ₃ − μ₁μ₂ = −23/8,
        // so R(X₁,X₂,X₁,X₂) = K₁₂ f₁f₂ = −23/4
        let geo = OrbitGeometry::new(&constant_jet([1, 2, 4], [1, 1, 1], [0, 0, 0])).unwrap();
        let e = |m: usize| Arg::Orbit(basis_vec::<Rational>(m));
        assert_eq!(geo.riemann(&e(0), &e(1), &e(0), &e(1)), Rational::frac(-23, 4));
    }

    #[test]
    fn degenerate_block_is_named() {
        let r = OrbitGeometry::new(&constant_jet([1, 1, 1], [1, 4, 1], [0, 2, 0]));
        assert_eq!(r.err(), Some(OracleError::Degenerate(2)));
    }
}
