use super::*;
use crate::curvature::{base_via_general, frame_for_piece, point_tensor, CurvatureFrame, PieceData};
use crate::metricdef::build_p2_metric;

fn frames() -> Vec<CurvatureFrame> {
    let m = build_p2_metric();
    (0..m.num_pieces()).map(|p| frame_for_piece(&m, p)).collect()
}

#[test]
fn params_in_three_sasakian_limit() {
    let one = RatFunc::one();
    let z = RatFunc::zero();
    let c3 = || [one.clone(), one.clone(), one.clone()];
    let zz = || [z.clone(), z.clone(), z.clone()];
    let fr = CurvatureFrame {
        data: PieceData::from_funcs(c3(), zz(), (Rational::zero(), Rational::one())),
        beta: c3(),
        beta_prime: zz(),
        gamma: c3(),
        b: [zz(), zz(), zz()],
        c: [zz(), zz(), zz()],
        l: zz(),
        m: zz(),
        n: zz(),
    };
    let p = build_params(&fr);
    let eps_minus = EpsPoly::eps().sub(&EpsPoly::monomial(2, one.clone()));
    for i in 0..3 {
        assert_eq!(p.a[i], eps_minus);
        assert_eq!(p.b[i], eps_minus.neg());
        assert!(p.c[i].is_zero());
    }
    assert!(p.d1.is_zero());
}

#[test]
fn d2_is_minus_n2_by_second_path() {
    let fr = &frames()[0];
    let p = build_params(fr);
    let t = Rational::frac(1, 20);
    let (_, _, n) = base_via_general(&fr.data.v);
    let d2 = p.d2.eval(&Rational::one(), &fr.data.var.local(&t)).unwrap();
    assert_eq!(d2, -fr.data.at(&n[1], &t).unwrap());
}

#[test]
fn a0_is_diagonal_and_raw_block_is_not() {
    for fr in frames() {
        let p = build_params(&fr);
        let comps = general_components(&fr);
        let a0 = assemble_from_4form(&comps, &FourForm::from_params(&p), BlockLabel::A0, false);
        let raw = assemble_from_4form(&comps, &FourForm::default(), BlockLabel::A0, false);
        for r in 0..3 {
            for c in 0..3 {
                if r != c {
                    assert!(a0.entries[r][c].is_zero());
                    let k = 3 - r - c;
                    let (i, j) = if (r + 1) % 3 == c { (r, c) } else { (c, r) };
                    let expect = EpsPoly::monomial(1, fr.gamma[k].clone()).sub(&EpsPoly::monomial(2, fr.gamma[i].mul(&fr.gamma[j])));
                    assert_eq!(raw.entries[r][c], expect);
                }
            }
            assert_eq!(a0.entries[r][r], EpsPoly::monomial(2, fr.beta[r].square()));
        }
        assert_eq!(a0.entries, displayed_block(&fr, &p, BlockLabel::A0, CEntry::Derived).entries);
    }
}

#[test]
fn assembled_blocks_match_displayed() {
    for fr in frames() {
        let p = build_params(&fr);
        let form = FourForm::from_params(&p);
        let table = table_components(&fr);
        let general = general_components(&fr);
        for label in BlockLabel::PAIRS {
            let (_, _, k) = label.indices().unwrap();
            let shown = displayed_block(&fr, &p, label, CEntry::Derived);
            assert!(shown.is_symmetric());
            assert_eq!(assemble_from_4form(&table, &form, label, false).entries, shown.entries, "{}", label);
            let exact = assemble_from_4form(&general, &form, label, false);
            for r in 0..5 {
                for c in 0..5 {
                    let diff = exact.entries[r][c].sub(&shown.entries[r][c]);
                    if (r, c) == (3, 4) || (r, c) == (4, 3) {
                        // εα
                        assert_eq!(diff.min_degree(), Some(1));
                    } else {
                        assert!(diff.is_zero(), "{} ({},{})", label, r, c);
                    }
                }
            }
            let printed = displayed_block(&fr, &p, label, CEntry::AsPrinted);
            for r in 0..5 {
                for c in 0..5 {
                    let same = printed.entries[r][c] == shown.entries[r][c];
                    assert_eq!(same, !matches!((r, c), (2, 3) | (3, 2)), "{} ({},{})", label, r, c);
                }
            }
            let _ = k;
        }
    }
}

#[test]
fn spot_entries() {
    let fr = &frames()[1];
    let p = build_params(fr);
    let a23 = displayed_block(fr, &p, BlockLabel::A23, CEntry::Derived);
    // εγ₁ − ε²β₂β₃ − a₁
    let alt = EpsPoly::monomial(1, fr.gamma[0].clone()).sub(&EpsPoly::monomial(2, fr.beta[1].mul(&fr.beta[2]))).sub(&p.a[0]);
    assert_eq!(a23.entries[0][1], alt);
    let a12 = displayed_block(fr, &p, BlockLabel::A12, CEntry::Derived);
    assert_eq!(a12.entries[3][4], EpsPoly::constant(fr.n[2].sub(&fr.n[1])));
}

#[test]
fn modified_operator_breaks_bianchi() {
    use Axis::{X, Z};
    let fr = &frames()[1];
    let p = build_params(fr);
    let form = FourForm::from_params(&p);
    let (eps, t) = (Rational::frac(1, 50), Rational::frac(3, 10));
    let r = point_tensor(&fr.data, &eps, &t).unwrap();
    let local = fr.data.var.local(&t);
    let full = |l: [Axis; 4]| {
        let idx = l[0].index() * 343 + l[1].index() * 49 + l[2].index() * 7 + l[3].index();
        &r[idx] + &form.eval(l).eval(&eps, &local).unwrap()
    };
    let (x, y, z, w) = (X(0), X(1), Z(0), Z(1));
    let raw_sum = &(&r[x.index() * 343 + y.index() * 49 + z.index() * 7 + w.index()]
        + &r[y.index() * 343 + z.index() * 49 + x.index() * 7 + w.index()])
        + &r[z.index() * 343 + x.index() * 49 + y.index() * 7 + w.index()];
    assert!(raw_sum.is_zero());
    let sum = &(&full([x, y, z, w]) + &full([y, z, x, w])) + &full([z, x, y, w]);
    assert!(!sum.is_zero());
}

#[test]
fn minor_degrees_and_identities() {
    for fr in frames() {
        let p = build_params(&fr);
        for label in BlockLabel::PAIRS {
            let (i, j, k) = label.indices().unwrap();
            let block = build_block(&fr, &p, label, Mode::Leading, false);
            let ms = leading_minors(&block).unwrap();
            let degs: Vec<i32> = ms.iter().map(|m| m.eps_degree).collect();
            assert_eq!(degs, [2, 4, 6, 6, 6], "{}", label);
            assert_eq!(ms[0].leading, fr.gamma[i].square());
            assert!(k2_identity(&fr, i, j, &ms[1].leading));
            assert!(k3_identity(&fr, i, j, k, &ms[2].leading).unwrap());
        }
    }
}

#[test]
fn exact_mode_lowest_terms_are_alpha_free() {
    let fr = &frames()[0];
    let p = build_params(fr);
    let label = BlockLabel::A31;
    let lead = leading_minors(&build_block(fr, &p, label, Mode::Leading, false)).unwrap();
    let exact = leading_minors(&build_block(fr, &p, label, Mode::Exact, false)).unwrap();
    assert_eq!(alpha_independent(&lead, &exact), [true; 5]);
    assert_ne!(lead[4].det, exact[4].det);
}

#[test]
fn printed_k2_direction_fails_where_minor_is_positive() {
    let fr = &frames()[1];
    let t = Rational::frac(3, 10);
    let p = build_params(fr);
    let ms = leading_minors(&build_block(fr, &p, BlockLabel::A12, Mode::Leading, false)).unwrap();
    assert_eq!(fr.data.at(&ms[1].leading, &t).unwrap().signum(), 1);
    assert_eq!(fr.data.at(&printed_k2_condition(fr, 0, 1).unwrap(), &t).unwrap().signum(), -1);
}

#[test]
fn perm_signs() {
    use Axis::*;
    let base = [X(0), X(1), Z(0), Z(1)];
    assert_eq!(perm_sign(&base, &base), Some(1));
    assert_eq!(perm_sign(&base, &[X(0), Z(0), X(1), Z(1)]), Some(-1));
    assert_eq!(perm_sign(&base, &[Z(1), X(0), X(1), Z(0)]), Some(-1));
    assert_eq!(perm_sign(&base, &[X(0), X(0), Z(0), Z(1)]), None);
    assert_eq!(perm_sign(&base, &[X(0), X(2), Z(0), Z(1)]), None);
}
