use crate::exactmath::{Poly, Rational, Var};

/// Value, first and second derivative of `p` at `t`.
pub fn jet2(p: &Poly, t: &Rational) -> [Rational; 3] {
    [p.eval(t), p.derivative().eval(t), p.nth_derivative(2).eval(t)]
}

/// The unique quintic on [a, b] whose value, first and second derivative
/// agree with `left` at `a` and with `right` at `b`. Returned in plain `t`.
pub fn hermite_c2_glue(left: &Poly, right: &Poly, a: &Rational, b: &Rational) -> Poly {
    assert!(a < b, "gluing interval must be nonempty");
    let [y0, d0, s0] = jet2(left, a);
    let [y1, d1, s1] = jet2(right, b);
    quintic_from_jets(a, b, [y0, d0, s0], [y1, d1, s1])
}

pub fn quintic_from_jets(a: &Rational, b: &Rational, left: [Rational; 3], right: [Rational; 3]) -> Poly {
    let h = b - a;
    let [y0, d0, s0] = left;
    let [y1, d1, s1] = right;
    let c0 = y0;
    let c1 = d0;
    let c2 = s0 * Rational::frac(1, 2);
    let h2 = &h * &h;
    let h3 = &h2 * &h;
    let h4 = &h3 * &h;
    let h5 = &h4 * &h;
    let r0 = y1 - (&c0 + &(&c1 * &h) + &(&c2 * &h2));
    let r1 = d1 - (&c1 + &(&(&c2 * &Rational::int(2)) * &h));
    let r2 = s1 - (&c2 * &Rational::int(2));
    let m = vec![
        vec![h3.clone(), h4.clone(), h5.clone()],
        vec![&h2 * &Rational::int(3), &h3 * &Rational::int(4), &h4 * &Rational::int(5)],
        vec![&h * &Rational::int(6), &h2 * &Rational::int(12), &h3 * &Rational::int(20)],
    ];
    let x = solve_small(m, vec![r0, r1, r2]);
    let local = Poly::new(Var::Shifted(a.clone()), vec![c0, c1, c2, x[0].clone(), x[1].clone(), x[2].clone()]);
    local.to_plain()
}

/// Gaussian elimination with exact pivots for a small nonsingular system.
fn solve_small(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Vec<Rational> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("nonsingular Hermite system");
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].checked_div(&m[col][col]).expect("nonzero pivot");
            for c in col..n {
                let v = &m[col][c] * &f;
                m[r][c] = &m[r][c] - &v;
            }
            let v = &rhs[col] * &f;
            rhs[r] = &rhs[r] - &v;
        }
    }
    (0..n).map(|i| rhs[i].checked_div(&m[i][i]).expect("nonzero pivot")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: 6×6 Gauss–Jordan on the monomial basis in t.
    fn monomial_oracle(a: &Rational, b: &Rational, l: [Rational; 3], r: [Rational; 3]) -> Poly {
        let row = |x: &Rational, d: usize| -> Vec<Rational> {
            (0..6)
                .map(|j| {
                    if j < d {
                        return Rational::zero();
                    }
                    let mut f = Rational::one();
                    for k in 0..d {
                        f = f * Rational::int((j - k) as i64);
                    }
                    f * x.pow((j - d) as u32)
                })
                .collect()
        };
        let mut m: Vec<Vec<Rational>> = Vec::new();
        let mut y = Vec::new();
        for d in 0..3 {
            m.push(row(a, d));
            y.push(l[d].clone());
        }
        for d in 0..3 {
            m.push(row(b, d));
            y.push(r[d].clone());
        }
        for c in 0..6 {
            let p = (c..6).find(|&i| !m[i][c].is_zero()).unwrap();
            m.swap(c, p);
            y.swap(c, p);
            let inv = m[c][c].recip().unwrap();
            for j in 0..6 {
                m[c][j] = &m[c][j] * &inv;
            }
            y[c] = &y[c] * &inv;
            for i in 0..6 {
                if i != c && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..6 {
                        let v = &m[c][j] * &f;
                        m[i][j] = &m[i][j] - &v;
                    }
                    let v = &y[c] * &f;
                    y[i] = &y[i] - &v;
                }
            }
        }
        Poly::new(Var::T, y)
    }

    #[test]
    fn reproduces_a_quintic() {
        let q = Poly::from_fracs(Var::T, &[(1, 3), (-2, 1), (5, 7), (1, 1), (-3, 2), (2, 9)]);
        let a = Rational::frac(1, 10);
        let b = Rational::frac(1, 2);
        assert_eq!(hermite_c2_glue(&q, &q, &a, &b), q);
    }

    #[test]
    fn constants_glue_to_constant() {
        let c = Poly::constant(Var::T, Rational::frac(7, 3));
        let g = hermite_c2_glue(&c, &c, &Rational::zero(), &Rational::one());
        assert_eq!(g, c);
    }

    #[test]
    fn v1_middle_piece_matches_oracle() {
        let l = Rational::frac(29, 50);
        let left = Poly::from_fracs(Var::T, &[(0, 1), (4, 1), (0, 1), (-10, 1)]);
        let right = Poly::from_fracs(Var::Shifted(l.clone()), &[(5, 4), (0, 1), (-3, 1), (1, 1)]);
        let a = Rational::frac(1, 10);
        let b = Rational::frac(1, 2);
        assert_eq!(jet2(&left, &a), [Rational::frac(39, 100), Rational::frac(37, 10), Rational::int(-6)]);
        let g = hermite_c2_glue(&left, &right, &a, &b);
        assert_eq!(jet2(&g, &a), jet2(&left, &a));
        assert_eq!(jet2(&g, &b), jet2(&right, &b));
        assert_eq!(g, monomial_oracle(&a, &b, jet2(&left, &a), jet2(&right, &b)));
        assert!(g.degree().unwrap() <= 5);
    }
}
