use std::collections::BTreeMap;

use super::{Conventions, MetricFile, PieceSpec, PiecewiseMetric, V3Sign};
use crate::exactmath::Rational;

fn q(s: &str) -> Rational {
    s.parse().expect("valid literal")
}

fn qs(v: &[&str]) -> Vec<Rational> {
    v.iter().map(|s| q(s)).collect()
}

/// Three pieces: explicit at t = 0, glued in the middle, explicit at t = L
/// in the shifted variable t − L.
fn family(first: &[&str], last: &[&str]) -> Vec<PieceSpec> {
    vec![
        PieceSpec::explicit(q("0"), q("1/10"), "0", qs(first)),
        PieceSpec::glued(q("1/10"), q("1/2")),
        PieceSpec::explicit(q("1/2"), q("29/50"), "L", qs(last)),
    ]
}

/// The P₂ metric data (ℓ = 3, L = 29/50). v₃ is listed with positive values
/// and negated on load so that v₁ > 0, v₂ > 0, v₃ < 0.
pub fn p2_metric_file() -> MetricFile {
    let mut v = BTreeMap::new();
    v.insert("1".to_string(), family(&["0", "4", "0", "-10"], &["5/4", "0", "-3", "1"]));
    v.insert("2".to_string(), family(&["149/200", "-11/9", "-1/10", "-1/25"], &["0", "-4/3", "0", "3/10"]));
    v.insert("3".to_string(), family(&["149/200", "11/9", "-1/10", "-7/10"], &["5/4", "0", "-3", "-3"]));
    let mut h = BTreeMap::new();
    h.insert("1".to_string(), family(&["-1", "0", "4", "0", "-4"], &["0", "31/12", "0", "-16/7"]));
    h.insert("2".to_string(), family(&["21/17", "16/11", "-21/17", "1/10"], &["5/3", "0", "-4/3", "0", "1/4"]));
    h.insert("3".to_string(), family(&["21/17", "-16/11", "-21/17", "-1/10"], &["0", "-31/12", "0", "20/11"]));
    MetricFile {
        ell: 3,
        l: q("29/50"),
        breakpoints: qs(&["0", "1/10", "1/2", "29/50"]),
        conventions: Some(Conventions {
            v3_sign: V3Sign::NegateOnLoad,
            note: Some(
                "v3 coefficients are the magnitudes |v3|; the loader negates them so that v1 > 0, v2 > 0, v3 < 0. \
                 With the opposite sign gamma_2 is negative near t = 0."
                    .to_string(),
            ),
        }),
        v,
        h,
    }
}

pub fn build_p2_metric() -> PiecewiseMetric {
    p2_metric_file().resolve().expect("shipped metric is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_coefficients() {
        let m = build_p2_metric();
        assert_eq!(m.v[0].pieces[0].poly.coeffs(), &qs(&["0", "4", "0", "-10"])[..]);
        assert_eq!(m.h[1].eval(&q("0")), q("21/17"));
        assert_eq!(m.h[1].eval(&m.l), q("5/3"));
        assert_eq!(m.v[2].eval(&q("0")), q("-149/200"));
        assert_eq!(m.l, q("58/100"));
    }

    #[test]
    fn glued_pieces_are_c2() {
        let m = build_p2_metric();
        for f in m.v.iter().chain(m.h.iter()) {
            for w in f.pieces.windows(2) {
                let t = &w[0].b;
                for n in 0..3 {
                    let l = w[0].poly.nth_derivative(n).eval(t);
                    let r = w[1].poly.nth_derivative(n).eval(t);
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn regluing_is_idempotent() {
        let m = build_p2_metric();
        for f in m.v.iter().chain(m.h.iter()) {
            let g = super::super::hermite_c2_glue(&f.pieces[1].poly, &f.pieces[1].poly, &f.pieces[1].a, &f.pieces[1].b);
            assert_eq!(g, f.pieces[1].poly.to_plain());
        }
    }
}
