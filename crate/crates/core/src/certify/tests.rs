use super::*;
use crate::curvature::compute_frame;
use crate::metricdef::build_p2_metric;

fn metric(json: &str) -> PiecewiseMetric {
    PiecewiseMetric::from_json(json).unwrap()
}

fn constant_frame(l: [i64; 3], m: [i64; 3], n: [i64; 3], beta: i64) -> CurvatureFrame {
    let c = |x: [i64; 3]| x.map(RatFunc::from_int);
    let z = || c([0, 0, 0]);
    CurvatureFrame {
        data: PieceData::from_funcs(c([1, 1, 1]), z(), (Rational::zero(), Rational::one())),
        beta: c([beta; 3]),
        beta_prime: z(),
        gamma: c([1, 1, 1]),
        b: [z(), z(), z()],
        c: [z(), z(), z()],
        l: c(l),
        m: c(m),
        n: c(n),
    }
}

fn verdicts(checks: &[Check]) -> Vec<(String, bool)> {
    checks.iter().map(|c| (c.name.clone(), c.verdict.passed())).collect()
}

#[test]
fn sign_conventions_of_shipped_metric() {
    let checks = check_sign_conventions(&build_p2_metric());
    assert_eq!(checks.len(), 9);
    assert!(checks.iter().all(|c| c.verdict.passed()), "{:?}", verdicts(&checks));
    let v1 = checks.iter().find(|c| c.name == "piece1/sign/v1").unwrap();
    match &v1.evidence {
        Evidence::Sign { factors, .. } => assert!(factors[0].interval.open_a),
        e => panic!("{:?}", e),
    }
}

#[test]
fn flipped_v3_fails_fatness_at_gamma2() {
    let m = metric(include_str!("../../data/p2_flipped_v3.metric.json"));
    let fr = frame_for_piece(&m, 0);
    let checks = check_fatness(&fr, &m.l);
    let g2 = checks.iter().find(|c| c.name == "piece1/fatness/gamma2").unwrap();
    assert_eq!(g2.verdict, Outcome::Fail);
    assert!(check_sign_conventions(&m).iter().any(|c| c.name == "piece1/sign/v3" && !c.verdict.passed()));
}

#[test]
fn perturbed_cubic_fails_named_checks() {
    let m = metric(include_str!("../../data/p2_v2_cubic_-1.metric.json"));
    let fr = frame_for_piece(&m, 1);
    let failed: Vec<String> = check_hyperfatness(&fr, &m.l).into_iter().filter(|c| !c.verdict.passed()).map(|c| c.name).collect();
    assert_eq!(failed, vec!["piece2/hf1/2".to_string()]);
}

#[test]
fn constant_h1_gives_zero_beta1() {
    let m = build_p2_metric();
    let mut d = PieceData::new(&m, 1);
    d.h[0] = RatFunc::from_int(-1);
    let fr = compute_frame(d);
    let checks = check_fatness(&fr, &m.l);
    let b1 = &checks[0];
    assert_eq!(b1.name, "piece2/fatness/beta1");
    assert_eq!(b1.verdict, Outcome::Fail);
    match &b1.evidence {
        Evidence::Sign { factors, .. } => assert_eq!(factors[0].verdict, Verdict::HasZero(1)),
        e => panic!("{:?}", e),
    }
}

use crate::sturm::Verdict;

#[test]
fn hf1_reduces_to_l_positive_for_constant_frame() {
    let pass = check_hyperfatness(&constant_frame([1, 2, 3], [1, 1, 1], [0, 0, 0], 1), &Rational::one());
    let hf1: Vec<&Check> = pass.iter().filter(|c| c.name.contains("/hf1/")).collect();
    assert_eq!(hf1.len(), 3);
    assert!(hf1.iter().all(|c| c.verdict.passed()));
    let fail = check_hyperfatness(&constant_frame([1, -2, 3], [1, 1, 1], [0, 0, 0], 1), &Rational::one());
    let bad: Vec<String> = fail.iter().filter(|c| c.name.contains("/hf1/") && !c.verdict.passed()).map(|c| c.name.clone()).collect();
    assert_eq!(bad, vec!["piece1/hf1/2".to_string()]);
}

#[test]
fn equal_n_passes_base_trivially() {
    let checks = check_base_positive(&constant_frame([2, 3, 5], [7, 1, 2], [4, 4, 4], 1), &Rational::one());
    assert_eq!(checks.len(), 9);
    assert!(checks.iter().all(|c| c.verdict.passed()));
    match &checks[6].evidence {
        Evidence::Cover { parts } => {
            assert_eq!(parts.len(), 1);
            assert_eq!(parts[0].branch, "x+y-A^2 > 0");
        }
        e => panic!("{:?}", e),
    }
}

#[test]
fn base_cover_splits_where_needed() {
    // A = N1 − N2 = 4t − 2 on [0,1], x = y = 1: x + y − A² > 0 needs |A| < √2,
    // fails near both ends where only |A| < 2 holds
    let mut fr = constant_frame([1, 1, 1], [1, 1, 1], [0, 0, 0], 1);
    fr.n[0] = RatFunc::from_intpoly(crate::exactmath::IntPoly::from_i64(&[-2, 4]));
    fr.n[0] = fr.n[0].scale(&Rational::frac(9, 10));
    let checks = check_base_positive(&fr, &Rational::int(5));
    let n12 = checks.iter().find(|c| c.name == "piece1/base/N12").unwrap();
    assert!(n12.verdict.passed());
    match &n12.evidence {
        Evidence::Cover { parts } => {
            assert!(parts.len() > 1);
            assert_eq!(parts.first().unwrap().interval.0, Rational::zero());
            assert_eq!(parts.last().unwrap().interval.1, Rational::one());
            assert!(parts.windows(2).all(|w| w[0].interval.1 == w[1].interval.0));
        }
        e => panic!("{:?}", e),
    }
    // |A| reaching 2 at the ends violates the condition
    fr.n[0] = RatFunc::from_intpoly(crate::exactmath::IntPoly::from_i64(&[-2, 4]));
    let checks = check_base_positive(&fr, &Rational::int(5));
    assert!(!checks.iter().find(|c| c.name == "piece1/base/N12").unwrap().verdict.passed());
}

#[test]
fn smoothness_entries_are_exact_relations() {
    let (checks, c3) = check_smoothness_entries(&build_p2_metric());
    assert!(checks.iter().all(|c| c.verdict.passed()));
    assert!(checks.iter().all(|c| matches!(c.evidence, Evidence::Relation { .. })));
    assert!(!c3.holds);
}

#[test]
fn grid_uses_right_piece_at_breakpoints() {
    let m = build_p2_metric();
    let g = grid(&m, 50);
    assert_eq!(g.len(), 50);
    assert_eq!(g[0], (0, Rational::zero()));
    assert_eq!(g[49], (2, m.l.clone()));
    let g = grid(&m, 59);
    // t = 10L/58 = 1/10
    assert_eq!(g[10], (1, Rational::frac(1, 10)));
    assert_eq!(grid(&m, 1).len(), 2);
}

fn small_certificate() -> Certificate {
    let m = build_p2_metric();
    let fr = frame_for_piece(&m, 2);
    let mut checks = check_fatness(&fr, &m.l);
    checks.extend(check_endpoint_inequalities(&m).unwrap());
    checks.extend(check_smoothness_entries(&m).0);
    Certificate {
        metric_sha256: m.fingerprint(),
        mode: "leading".into(),
        config: ConfigRecord { seed: 1, eps: None, samples: 0 },
        overall: Outcome::from_bool(checks.iter().all(|c| c.verdict.passed())),
        checks,
        informational: vec![],
    }
}

#[test]
fn certificates_are_deterministic_and_replay() {
    let a = small_certificate();
    let b = small_certificate();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.overall, Outcome::Pass);
    let back: Certificate = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(back, a);
    let rep = replay::replay(&back);
    assert!(rep.agrees(), "{:?}", rep.disagreements);
    assert!(rep.sturm_factors >= 6);
    assert_eq!(rep.checks, a.checks.len());
}

#[test]
fn replay_detects_flipped_verdicts() {
    let mut c = small_certificate();
    c.checks[1].verdict = Outcome::Fail;
    let rep = replay::replay(&c);
    assert!(!rep.agrees());
    assert!(rep.disagreements.iter().any(|d| d.starts_with("piece3/fatness/beta2")));
}
