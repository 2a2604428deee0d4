//! Plot data: sampled series rendered as CSV or a standalone SVG.

use std::fmt::Write;

use poscurv::certify::{grid, minor_curves};
use poscurv::curvature::frame_for_piece;
use poscurv::exactmath::Rational;
use poscurv::metricdef::PiecewiseMetric;
use poscurv::thorpe::BlockLabel;

/// Significant digits in CSV output (round half to even).
pub const CSV_DIGITS: usize = 12;

pub struct Series {
    pub name: String,
    /// None where the quantity has no value (a pole at a collapse point).
    pub points: Vec<(Rational, Option<Rational>)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum What {
    V,
    H,
    Minors,
    Frame,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

/// n equally spaced points of [a, b] including both ends; n ≤ 1 gives the ends.
fn points(a: &Rational, b: &Rational, n: usize) -> Vec<Rational> {
    if n <= 1 {
        return vec![a.clone(), b.clone()];
    }
    (0..n).map(|j| a + &(&(b - a) * &Rational::frac(j as i64, n as i64 - 1))).collect()
}

pub fn series(m: &PiecewiseMetric, what: What, n: usize) -> Result<Vec<Series>, String> {
    let zero = Rational::zero();
    let three_l = &m.l * &Rational::int(3);
    let mut out = Vec::new();
    match what {
        What::V | What::H => {
            let (fs, sym) = if what == What::V { (&m.v, "v") } else { (&m.h, "h") };
            for (i, f) in fs.iter().enumerate() {
                let pts = points(&zero, &m.l, n).into_iter().map(|t| {
                    let y = f.eval(&t);
                    (t, Some(y))
                });
                out.push(Series { name: format!("{}{}", sym, i + 1), points: pts.collect() });
            }
            let (v, h) = m.map_to_3l(true);
            let f = if what == What::V { v } else { h };
            let pts = points(&zero, &three_l, n).into_iter().map(|t| {
                let y = f.eval(&t);
                (t, Some(y))
            });
            out.push(Series { name: format!("{}_on_0_3L", sym), points: pts.collect() });
        }
        What::Minors => {
            for block in BlockLabel::PAIRS {
                let curves = minor_curves(m, block, n).map_err(|e| e.to_string())?;
                for k in 0..5 {
                    let pts = curves.iter().map(|(t, v)| (t.clone(), Some(v[k].clone()))).collect();
                    out.push(Series { name: format!("{}_k{}", block, k + 1), points: pts });
                }
            }
        }
        What::Frame => {
            let frames: Vec<_> = (0..m.num_pieces()).map(|p| frame_for_piece(m, p)).collect();
            let named: Vec<_> = frames.iter().map(|f| f.named()).collect();
            let names: Vec<String> = named[0].iter().map(|(s, _)| s.clone()).collect();
            let g = grid(m, n);
            for (idx, name) in names.iter().enumerate() {
                let pts = g
                    .iter()
                    .map(|(p, t)| {
                        let q = &named[*p][idx].1;
                        (t.clone(), frames[*p].data.at(q, t).ok())
                    })
                    .collect();
                out.push(Series { name: name.clone(), points: pts });
            }
        }
    }
    Ok(out)
}

pub fn to_csv(series: &[Series]) -> String {
    let mut s = String::from("series,t,value\n");
    for ser in series {
        for (t, y) in &ser.points {
            let y = y.as_ref().map_or_else(|| "undefined".to_string(), |y| y.to_decimal(CSV_DIGITS));
            writeln!(s, "{},{},{}", ser.name, t.to_decimal(CSV_DIGITS), y).unwrap();
        }
    }
    s
}

const COLORS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

/// Static SVG with one polyline per series. For v plots the line
/// y = (4/ℓ)(3L − t), an upper bound for the concave unrolled v, is added.
pub fn to_svg(series: &[Series], title: &str, bound: Option<(f64, f64)>) -> String {
    let (w, h, pad) = (720.0, 480.0, 50.0);
    let vals: Vec<(f64, f64)> = series.iter().flat_map(|s| s.points.iter().filter_map(|(t, y)| y.as_ref().map(|y| (t.to_f64(), y.to_f64())))).collect();
    let fin = |x: f64| x.is_finite();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for (x, y) in vals.iter().filter(|(x, y)| fin(*x) && fin(*y)) {
        x0 = x0.min(*x);
        x1 = x1.max(*x);
        y0 = y0.min(*y);
        y1 = y1.max(*y);
    }
    if x0 > x1 {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if let Some((slope, x_end)) = bound {
        y1 = y1.max(slope * x_end);
        y0 = y0.min(0.0);
    }
    if (x1 - x0).abs() < 1e-300 {
        x1 = x0 + 1.0;
    }
    if (y1 - y0).abs() < 1e-300 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| pad + (x - x0) / (x1 - x0) * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - y0) / (y1 - y0) * (h - 2.0 * pad);
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#).unwrap();
    writeln!(s, r#"<rect x="{pad}" y="{pad}" width="{}" height="{}" fill="none" stroke="black"/>"#, w - 2.0 * pad, h - 2.0 * pad).unwrap();
    writeln!(s, r#"<text x="{}" y="30" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#, w / 2.0, title).unwrap();
    for (v, anchor, x, y) in [(x0, "start", sx(x0), h - pad + 18.0), (x1, "end", sx(x1), h - pad + 18.0)] {
        writeln!(s, r#"<text x="{x:.2}" y="{y:.2}" font-family="sans-serif" font-size="11" text-anchor="{anchor}">{v:.4}</text>"#).unwrap();
    }
    for (v, y) in [(y0, sy(y0)), (y1, sy(y1))] {
        writeln!(s, r#"<text x="{:.2}" y="{y:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{v:.4}</text>"#, pad - 4.0).unwrap();
    }
    for (i, ser) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        // break the polyline where values are missing
        let mut runs: Vec<Vec<String>> = vec![vec![]];
        for (t, y) in &ser.points {
            match y.as_ref().map(|y| y.to_f64()).filter(|y| y.is_finite()) {
                Some(y) => runs.last_mut().unwrap().push(format!("{:.2},{:.2}", sx(t.to_f64()), sy(y))),
                None => runs.push(vec![]),
            }
        }
        for r in runs.iter().filter(|r| !r.is_empty()) {
            writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, r.join(" ")).unwrap();
        }
        let ly = pad + 14.0 + 14.0 * i as f64;
        writeln!(s, r#"<text x="{:.2}" y="{ly:.2}" font-family="sans-serif" font-size="11" fill="{color}">{}</text>"#, w - pad - 110.0, ser.name).unwrap();
    }
    if let Some((slope, x_end)) = bound {
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="6,4"/>"#,
            sx(0.0),
            sy(slope * x_end),
            sx(x_end),
            sy(0.0)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use poscurv::metricdef::build_p2_metric;

    #[test]
    fn grid_one_gives_exact_endpoints() {
        let m = build_p2_metric();
        let s = series(&m, What::V, 1).unwrap();
        assert_eq!(s[0].points.len(), 2);
        assert_eq!(s[0].points[1], (m.l.clone(), Some(Rational::frac(5, 4))));
        assert_eq!(s[1].points[0].1, Some(Rational::frac(149, 200)));
    }

    #[test]
    fn csv_rounding() {
        let s = vec![Series { name: "x".into(), points: vec![(Rational::frac(1, 3), Some(Rational::frac(2, 3))), (Rational::one(), None)] }];
        assert_eq!(to_csv(&s), "series,t,value\nx,0.333333333333,0.666666666667\nx,1,undefined\n");
    }

    #[test]
    fn svg_is_standalone() {
        let m = build_p2_metric();
        let s = to_svg(&series(&m, What::V, 20).unwrap(), "v", Some((4.0 / 3.0, 1.74)));
        assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
        assert_eq!(s.matches("<polyline").count(), 4);
        assert!(s.contains("stroke-dasharray"));
    }
}
