use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{PiecewiseFunc, PiecewiseMetric, Side};
use crate::exactmath::{Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub group: String,
    pub name: String,
    pub required: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub entries: Vec<CheckEntry>,
    pub c2: bool,
    /// Third-derivative continuity at interior breakpoints; informational.
    pub c3_probe: Vec<CheckEntry>,
    pub c3: bool,
}

impl SmoothnessReport {
    fn finish(entries: Vec<CheckEntry>, c3_probe: Vec<CheckEntry>) -> Self {
        let c2 = entries.iter().all(|e| e.pass);
        let c3 = c2 && c3_probe.iter().all(|e| e.pass);
        SmoothnessReport { entries, c2, c3_probe, c3 }
    }

    pub fn failures(&self) -> Vec<&CheckEntry> {
        self.entries.iter().filter(|e| !e.pass).collect()
    }
}

fn eq_entry(group: &str, name: String, computed: Rational, required: Rational) -> CheckEntry {
    CheckEntry {
        group: group.to_string(),
        name,
        pass: computed == required,
        required: required.to_string(),
        computed: computed.to_string(),
    }
}

fn primes(n: usize) -> &'static str {
    ["", "'", "''", "'''"][n]
}

/// Exact check of the C² boundary conditions at both ends, the C² junctions
/// between pieces, the conditions for the unrolled functions on [0, 3L], and
/// a C³ probe at the interior breakpoints.
pub fn check_smoothness(m: &PiecewiseMetric) -> SmoothnessReport {
    let mut e = Vec::new();
    let zero = Rational::zero();
    let l = &m.l;
    let ell = Rational::int(m.ell as i64);
    e.push(CheckEntry {
        group: "ell".into(),
        name: "ell > 2".into(),
        required: "> 2".into(),
        computed: m.ell.to_string(),
        pass: m.ell > 2,
    });
    let d = |f: &PiecewiseFunc, n: usize, t: &Rational| {
        let side = if t.is_zero() { Side::Right } else { Side::Left };
        f.deriv(t, n, side)
    };
    // |v₃| read with the sign v₃ has at the evaluation point
    let v3m = |n: usize, t: &Rational| {
        let side = if t.is_zero() { Side::Right } else { Side::Left };
        let s = m.v[2].deriv(t, 0, side).signum();
        let s = if s == 0 { 1 } else { s };
        &m.v[2].deriv(t, n, side) * &Rational::int(s as i64)
    };
    let (v1, v2) = (&m.v[0], &m.v[1]);
    let (h1, h2, h3) = (&m.h[0], &m.h[1], &m.h[2]);
    let g0 = "endpoint t=0";
    let gl = "endpoint t=L";
    e.push(eq_entry(g0, "v1(0) = 0".into(), d(v1, 0, &zero), zero.clone()));
    e.push(eq_entry(g0, "v1'(0) = 4".into(), d(v1, 1, &zero), Rational::int(4)));
    e.push(eq_entry(g0, "v1''(0) = 0".into(), d(v1, 2, &zero), zero.clone()));
    e.push(eq_entry(g0, "v2(0) = |v3|(0)".into(), d(v2, 0, &zero), v3m(0, &zero)));
    e.push(eq_entry(g0, "v2'(0) = -|v3|'(0)".into(), d(v2, 1, &zero), -v3m(1, &zero)));
    e.push(eq_entry(g0, "v2''(0) = |v3|''(0)".into(), d(v2, 2, &zero), v3m(2, &zero)));
    e.push(eq_entry(gl, "v2(L) = 0".into(), d(v2, 0, l), zero.clone()));
    e.push(eq_entry(gl, "v2'(L) = -4/ell".into(), d(v2, 1, l), Rational::int(-4).checked_div(&ell).unwrap_or_default()));
    e.push(eq_entry(gl, "v2''(L) = 0".into(), d(v2, 2, l), zero.clone()));
    e.push(eq_entry(gl, "v1(L) = |v3|(L)".into(), d(v1, 0, l), v3m(0, l)));
    e.push(eq_entry(gl, "v1'(L) = 0".into(), d(v1, 1, l), zero.clone()));
    e.push(eq_entry(gl, "|v3|'(L) = 0".into(), v3m(1, l), zero.clone()));
    e.push(eq_entry(gl, "v1''(L) = |v3|''(L)".into(), d(v1, 2, l), v3m(2, l)));
    e.push(eq_entry(g0, "h1(0) = -1".into(), d(h1, 0, &zero), Rational::int(-1)));
    e.push(eq_entry(g0, "h1'(0) = 0".into(), d(h1, 1, &zero), zero.clone()));
    e.push(eq_entry(g0, "h2(0) = h3(0)".into(), d(h2, 0, &zero), d(h3, 0, &zero)));
    e.push(eq_entry(g0, "h2'(0) = -h3'(0)".into(), d(h2, 1, &zero), -d(h3, 1, &zero)));
    e.push(eq_entry(g0, "h2''(0) = h3''(0)".into(), d(h2, 2, &zero), d(h3, 2, &zero)));
    let h2l = (&ell + &Rational::int(2)).checked_div(&ell).unwrap_or_default();
    e.push(eq_entry(gl, "h2(L) = (ell+2)/ell".into(), d(h2, 0, l), h2l.clone()));
    e.push(eq_entry(gl, "h2'(L) = 0".into(), d(h2, 1, l), zero.clone()));
    e.push(eq_entry(gl, "h1(L) = 0".into(), d(h1, 0, l), zero.clone()));
    e.push(eq_entry(gl, "h3(L) = 0".into(), d(h3, 0, l), zero.clone()));
    e.push(eq_entry(gl, "h1'(L) = -h3'(L)".into(), d(h1, 1, l), -d(h3, 1, l)));
    e.push(eq_entry(gl, "h1''(L) = 0".into(), d(h1, 2, l), zero.clone()));
    e.push(eq_entry(gl, "h3''(L) = 0".into(), d(h3, 2, l), zero.clone()));

    let names = ["v1", "v2", "v3", "h1", "h2", "h3"];
    let funcs: Vec<&PiecewiseFunc> = m.v.iter().chain(m.h.iter()).collect();
    let mut c3 = Vec::new();
    for t in &m.breakpoints[1..m.breakpoints.len() - 1] {
        for (name, f) in names.iter().zip(&funcs) {
            for n in 0..4 {
                let left = f.deriv(t, n, Side::Left);
                let right = f.deriv(t, n, Side::Right);
                let entry = CheckEntry {
                    group: "junction".into(),
                    name: format!("{}{} continuous at t={}", name, primes(n), t),
                    required: "0 jump".into(),
                    computed: format!("jump {}", &right - &left),
                    pass: left == right,
                };
                if n < 3 {
                    e.push(entry);
                } else {
                    c3.push(entry);
                }
            }
        }
    }

    // the same conditions phrased for the unrolled functions on [0, 3L]
    let (v, h) = m.map_to_3l(true);
    let three_l = l * &Rational::int(3);
    let two_l = l * &Rational::int(2);
    let gu = "unrolled [0,3L]";
    let at = |f: &PiecewiseFunc, n: usize, t: &Rational, side: Side| f.deriv(t, n, side);
    e.push(eq_entry(gu, "v(0) = 0".into(), at(&v, 0, &zero, Side::Right), zero.clone()));
    e.push(eq_entry(gu, "v'(0) = 4".into(), at(&v, 1, &zero, Side::Right), Rational::int(4)));
    e.push(eq_entry(gu, "v''(0) = 0".into(), at(&v, 2, &zero, Side::Right), zero.clone()));
    e.push(eq_entry(gu, "v'(L-) = 0".into(), at(&v, 1, l, Side::Left), zero.clone()));
    e.push(eq_entry(gu, "v'(L+) = 0".into(), at(&v, 1, l, Side::Right), zero.clone()));
    e.push(eq_entry(gu, "v(3L) = 0".into(), at(&v, 0, &three_l, Side::Left), zero.clone()));
    e.push(eq_entry(gu, "v'(3L) = -4/ell".into(), at(&v, 1, &three_l, Side::Left), Rational::int(-4).checked_div(&ell).unwrap_or_default()));
    e.push(eq_entry(gu, "v''(3L) = 0".into(), at(&v, 2, &three_l, Side::Left), zero.clone()));
    e.push(eq_entry(gu, "h(0) = -1".into(), at(&h, 0, &zero, Side::Right), Rational::int(-1)));
    e.push(eq_entry(gu, "h'(0) = 0".into(), at(&h, 1, &zero, Side::Right), zero.clone()));
    e.push(eq_entry(gu, "h(L) = 0".into(), at(&h, 0, l, Side::Left), zero.clone()));
    e.push(eq_entry(gu, "h''(L) = 0".into(), at(&h, 2, l, Side::Left), zero.clone()));
    e.push(eq_entry(gu, "h(3L) = (ell+2)/ell".into(), at(&h, 0, &three_l, Side::Left), h2l));
    e.push(eq_entry(gu, "h'(3L) = 0".into(), at(&h, 1, &three_l, Side::Left), zero.clone()));
    for (name, f) in [("v", &v), ("h", &h)] {
        for t in [l, &two_l] {
            for n in 0..3 {
                e.push(eq_entry(
                    gu,
                    format!("{}{} continuous at t={}", name, primes(n), t),
                    at(f, n, t, Side::Right),
                    at(f, n, t, Side::Left),
                ));
            }
        }
    }
    SmoothnessReport::finish(e, c3)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenSmoothError {
    #[error("slopes must be coprime, got gcd({0}, {1}) = {2}")]
    SlopesNotCoprime(i64, i64, i64),
    #[error("k must be positive")]
    ZeroK,
}

/// Taylor coefficients at 0 of orders 0..=m.
fn taylor(p: &Poly, m: usize) -> Vec<Rational> {
    let plain = p.to_plain();
    (0..=m).map(|j| plain.coeff(j)).collect()
}

/// A series of the form t^e φ(t²): nonzero coefficients only at orders ≥ e
/// with the parity of e; a fractional e forces the series to vanish. Checked
/// through order m.
fn valuation_entry(group: &str, name: &str, coeffs: &[Rational], e_num: i64, e_den: i64) -> CheckEntry {
    let integral = e_num % e_den == 0;
    let e = e_num / e_den;
    let mut bad = None;
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let ok = integral && j as i64 >= e && (j as i64 - e) % 2 == 0;
        if !ok {
            bad = Some(j);
            break;
        }
    }
    let required = if integral {
        format!("t^{} phi(t^2) through order {}", e, coeffs.len() - 1)
    } else {
        format!("identically 0 through order {} (exponent {}/{} is fractional)", coeffs.len() - 1, e_num, e_den)
    };
    CheckEntry {
        group: group.to_string(),
        name: name.to_string(),
        required,
        computed: match bad {
            None => "ok".to_string(),
            Some(j) => format!("nonzero coefficient at order {}: {}", j, coeffs[j]),
        },
        pass: bad.is_none(),
    }
}

/// Smoothness at a singular orbit t = 0 with slopes (p, q) and |H ∩ K⁰| = k,
/// truncated to derivatives of order ≤ m. Index 0 of each triple is the
/// collapsing function.
pub fn check_gen_smooth(
    f: &[Poly; 3],
    g: &[Poly; 3],
    h: &[Poly; 3],
    p: i64,
    q: i64,
    k: u32,
    m: usize,
) -> Result<SmoothnessReport, GenSmoothError> {
    let gg = p.gcd(&q);
    if gg != 1 {
        return Err(GenSmoothError::SlopesNotCoprime(p, q, gg));
    }
    if k == 0 {
        return Err(GenSmoothError::ZeroK);
    }
    let tf: Vec<Vec<Rational>> = f.iter().map(|x| taylor(x, m)).collect();
    let tg: Vec<Vec<Rational>> = g.iter().map(|x| taylor(x, m)).collect();
    let th: Vec<Vec<Rational>> = h.iter().map(|x| taylor(x, m)).collect();
    let mut e = Vec::new();
    let ga = "collapsing (a)";
    for (name, c) in [("f1", &tf[0]), ("g1", &tg[0]), ("h1", &th[0])] {
        e.push(valuation_entry(ga, &format!("{} even", name), c, 0, 1));
    }
    let (pr, qr) = (Rational::int(p), Rational::int(q));
    e.push(eq_entry(ga, "p f1(0) = -q h1(0)".into(), &pr * &tf[0][0], -(&qr * &th[0][0])));
    e.push(eq_entry(ga, "q g1(0) = -p h1(0)".into(), &qr * &tg[0][0], -(&pr * &th[0][0])));
    if m >= 2 {
        // second derivatives are twice the order-2 coefficients
        let two = Rational::int(2);
        let lhs = &(&(&pr * &pr) * &tf[0][2]) + &(&(&qr * &qr) * &tg[0][2]);
        let lhs = &(&lhs + &(&(&(&two * &pr) * &qr) * &th[0][2])) * &two;
        let kk = Rational::int(k as i64);
        e.push(eq_entry(ga, "p^2 f1'' + q^2 g1'' + 2pq h1'' = 2k^2 at 0".into(), lhs, &(&kk * &kk) * &two));
    }
    let gb = "remaining (b)";
    let k = k as i64;
    let comb = |a: &[Rational], b: &[Rational], s: i64| -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + &(y * &Rational::int(s))).collect()
    };
    e.push(valuation_entry(gb, "f2+f3 even", &comb(&tf[1], &tf[2], 1), 0, 1));
    e.push(valuation_entry(gb, "f2-f3 = t^(4|p|/k) phi", &comb(&tf[1], &tf[2], -1), 4 * p.abs(), k));
    e.push(valuation_entry(gb, "g2+g3 even", &comb(&tg[1], &tg[2], 1), 0, 1));
    e.push(valuation_entry(gb, "g2-g3 = t^(4|q|/k) phi", &comb(&tg[1], &tg[2], -1), 4 * q.abs(), k));
    e.push(valuation_entry(gb, "h2+h3 = t^(2|q-p|/k) phi", &comb(&th[1], &th[2], 1), 2 * (q - p).abs(), k));
    e.push(valuation_entry(gb, "h2-h3 = t^(2|q+p|/k) phi", &comb(&th[1], &th[2], -1), 2 * (q + p).abs(), k));
    Ok(SmoothnessReport::finish(e, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::super::{build_p2_metric, p2_metric_file};
    use super::*;
    use crate::exactmath::Var;

    #[test]
    fn shipped_metric_is_c2_not_c3() {
        let r = check_smoothness(&build_p2_metric());
        assert!(r.c2, "{:#?}", r.failures());
        assert!(!r.c3);
        let e = r.entries.iter().find(|e| e.name == "v2'(L) = -4/ell").unwrap();
        assert_eq!(e.computed, "-4/3");
        let e = r.entries.iter().find(|e| e.name == "h2(L) = (ell+2)/ell").unwrap();
        assert_eq!(e.computed, "5/3");
    }

    #[test]
    fn single_condition_sensitivity() {
        let mut f = p2_metric_file();
        f.v.get_mut("1").unwrap()[0].coeffs.as_mut().unwrap()[1] = Rational::int(5);
        let r = check_smoothness(&f.resolve().unwrap());
        let fails: Vec<&str> = r.failures().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(fails, vec!["v1'(0) = 4", "v'(0) = 4"]);
    }

    /// f = 1, g = v² + h² at the t = 0 end with slopes (1, 1) and k = 4.
    fn connection_data(m: &PiecewiseMetric) -> ([Poly; 3], [Poly; 3], [Poly; 3]) {
        let (v, h) = m.piece_polys(0);
        let one = Poly::constant(Var::T, Rational::one());
        let g = |i: usize| &(&v[i] * &v[i]) + &(&h[i] * &h[i]);
        ([one.clone(), one.clone(), one], [g(0), g(1), g(2)], h)
    }

    #[test]
    fn general_conditions_specialize() {
        let m = build_p2_metric();
        let (f, g, h) = connection_data(&m);
        let r = check_gen_smooth(&f, &g, &h, 1, 1, 4, 2).unwrap();
        assert!(r.c2, "{:#?}", r.failures());
        // both checkers reject the same perturbations at t = 0
        for (fam, idx, coeff, val) in [("h", "1", 1, "1/3"), ("v", "2", 2, "1/7"), ("h", "2", 1, "2")] {
            let mut file = p2_metric_file();
            let tgt = if fam == "h" { &mut file.h } else { &mut file.v };
            tgt.get_mut(idx).unwrap()[0].coeffs.as_mut().unwrap()[coeff] = val.parse().unwrap();
            let pm = file.resolve().unwrap();
            let (f, g, h) = connection_data(&pm);
            let gen = check_gen_smooth(&f, &g, &h, 1, 1, 4, 2).unwrap();
            let rep = check_smoothness(&pm);
            let rep_at0 = rep.entries.iter().filter(|e| e.group == "endpoint t=0").all(|e| e.pass);
            assert!(!gen.c2);
            assert!(!rep_at0);
        }
    }

    #[test]
    fn constructed_collapsing_solution() {
        // p = q = 1, k = 2: f1 = g1 = 1 + 2t², h1 = −1 gives 4 + 4 = 2k²
        let zero = Poly::zero(Var::T);
        let f1 = Poly::new(Var::T, vec![Rational::one(), Rational::zero(), Rational::int(2)]);
        let h1 = Poly::new(Var::T, vec![Rational::int(-1), Rational::zero(), Rational::zero()]);
        let r = check_gen_smooth(
            &[f1.clone(), zero.clone(), zero.clone()],
            &[f1, zero.clone(), zero.clone()],
            &[h1, zero.clone(), zero],
            1,
            1,
            2,
            4,
        )
        .unwrap();
        assert!(r.entries.iter().filter(|e| e.group == "collapsing (a)").all(|e| e.pass), "{:#?}", r.failures());
    }

    #[test]
    fn valuation_violation_is_named() {
        let zero = Poly::zero(Var::T);
        let h2 = Poly::x(Var::T);
        let r = check_gen_smooth(
            &[zero.clone(), zero.clone(), zero.clone()],
            &[zero.clone(), zero.clone(), zero.clone()],
            &[zero.clone(), h2, zero.clone()],
            1,
            2,
            1,
            3,
        )
        .unwrap();
        // h2 − h3 must be t^6 φ: order 1 is too low
        let e = r.entries.iter().find(|e| e.name.starts_with("h2-h3")).unwrap();
        assert!(!e.pass);
        assert!(e.computed.contains("order 1"));
        assert!(check_gen_smooth(&[zero.clone(), zero.clone(), zero.clone()], &[zero.clone(), zero.clone(), zero.clone()], &[zero.clone(), zero.clone(), zero], 2, 4, 1, 2).is_err());
    }

    #[test]
    fn fractional_exponent_forces_zero() {
        let c = vec![Rational::zero(), Rational::one()];
        assert!(!valuation_entry("b", "x", &c, 4, 3).pass);
        assert!(valuation_entry("b", "x", &[Rational::zero(), Rational::zero()], 4, 3).pass);
    }
}
