use num_bigint::BigInt;
use proptest::prelude::*;

use poscurv::exactmath::{EpsPoly, IntPoly, Poly, RatFunc, Rational, Var};
use poscurv::sturm::{count_roots, sturm_sequence};

fn small_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-30i64..=30, 1..=max_deg + 1).prop_map(|c| IntPoly::from_i64(&c))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    small_poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| Rational::frac(n, d))
}

fn interval() -> impl Strategy<Value = (Rational, Rational)> {
    (rational(), 1i64..=60, 1i64..=9).prop_map(|(a, n, d)| {
        let b = &a + &Rational::frac(n, d);
        (a, b)
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    small_poly(2).prop_map(RatFunc::from_intpoly)
}

fn epspoly() -> impl Strategy<Value = EpsPoly> {
    prop::collection::vec((0i32..4, ratfunc()), 0..4).prop_map(EpsPoly::from_terms)
}

/// Root count by brute force from planted linear factors.
fn planted(roots: &[(i64, i64)], mult: &[u32], unit: i64) -> (IntPoly, Vec<Rational>) {
    let mut p = IntPoly::constant(unit);
    let mut distinct: Vec<Rational> = Vec::new();
    for (&(n, d), &k) in roots.iter().zip(mult) {
        let r = Rational::frac(n, d);
        if distinct.contains(&r) {
            continue;
        }
        p = p.mul(&IntPoly::new(vec![(-r.numer()).clone(), r.denom().clone()]).pow(k));
        distinct.push(r);
    }
    (p, distinct)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(p in small_poly(5), q in small_poly(5), r in small_poly(5)) {
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.sub(&p), IntPoly::zero());
        prop_assert_eq!(p.mul(&IntPoly::one()), p.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in small_poly(5), q in small_poly(5), x in rational()) {
        prop_assert_eq!(p.mul(&q).eval(&x), &p.eval(&x) * &q.eval(&x));
        prop_assert_eq!(p.add(&q).eval(&x), &p.eval(&x) + &q.eval(&x));
        prop_assert_eq!(p.sign_at(&x), p.eval(&x).signum());
    }

    #[test]
    fn divrem_reconstructs(p in small_poly(7), q in nonzero_poly(4)) {
        let (quo, rem) = p.divrem(&q).unwrap();
        let qp = Poly::from_int(&q, Var::T);
        let back = quo.try_mul(&qp).unwrap().try_add(&rem).unwrap();
        prop_assert_eq!(back, Poly::from_int(&p, Var::T));
        prop_assert!(rem.is_zero() || rem.degree() < q.degree());
    }

    #[test]
    fn pseudo_remainder_is_positive_multiple(p in nonzero_poly(7), q in nonzero_poly(4)) {
        prop_assume!(p.degree() >= q.degree());
        let (_, rem) = p.divrem(&q).unwrap();
        let pr = Poly::from_int(&p.prem_positive(&q).unwrap(), Var::T);
        // pr = c·rem with c > 0
        if rem.is_zero() {
            prop_assert!(pr.is_zero());
        } else {
            let c = pr.lc().checked_div(&rem.lc()).unwrap();
            prop_assert!(c.signum() > 0);
            prop_assert_eq!(rem.scale(&c), pr);
        }
    }

    #[test]
    fn gcd_divides_both(p in nonzero_poly(5), q in nonzero_poly(5), f in nonzero_poly(2)) {
        let (a, b) = (p.mul(&f), q.mul(&f));
        let g = a.gcd(&b);
        prop_assert!(a.div_exact(&g).is_some());
        prop_assert!(b.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&f.primitive()).is_some());
    }

    #[test]
    fn eps_evaluation_is_a_homomorphism(p in epspoly(), q in epspoly(), e in rational(), t in rational()) {
        let ev = |x: &EpsPoly| x.eval(&e, &t).unwrap();
        prop_assert_eq!(ev(&p.mul(&q)), &ev(&p) * &ev(&q));
        prop_assert_eq!(ev(&p.add(&q)), &ev(&p) + &ev(&q));
        prop_assert_eq!(ev(&p.shift(2)), &ev(&p) * &e.pow(2));
    }

    #[test]
    fn root_count_is_additive(p in nonzero_poly(6), (a, b) in interval(), s in 1i64..=99) {
        prop_assume!(!p.is_constant());
        let m = &a + &(&(&b - &a) * &Rational::frac(s, 100));
        prop_assert_eq!(count_roots(&p, &a, &b), count_roots(&p, &a, &m) + count_roots(&p, &m, &b));
    }

    #[test]
    fn affine_composition_keeps_signs(p in nonzero_poly(6), a in rational(), w in (1i64..=20, 1i64..=9), u in rational()) {
        let w = Rational::frac(w.0, w.1);
        let c = p.compose_affine(&a, &w);
        let t = &a + &(&w * &u);
        prop_assert_eq!(c.sign_at(&u), p.sign_at(&t));
    }

    #[test]
    fn planted_roots_are_counted(
        roots in prop::collection::vec((-30i64..=30, 1i64..=7), 1..5),
        mult in prop::collection::vec(1u32..=3, 5),
        unit in prop_oneof![Just(-3i64), Just(-1), Just(1), Just(2)],
        (a, b) in interval(),
    ) {
        let (p, distinct) = planted(&roots, &mult, unit);
        let expect = distinct.iter().filter(|r| **r > a && **r <= b).count();
        prop_assert_eq!(count_roots(&p, &a, &b), expect);
    }

    #[test]
    fn chain_ends_in_nonzero_constant_for_squarefree(roots in prop::collection::vec(-20i64..=20, 1..6)) {
        let mut p = IntPoly::one();
        let mut seen = Vec::new();
        for r in roots {
            if !seen.contains(&r) {
                p = p.mul(&IntPoly::new(vec![BigInt::from(-r), BigInt::from(1)]));
                seen.push(r);
            }
        }
        let s = sturm_sequence(&p);
        prop_assert!(!s.multiplicity_discarded);
        prop_assert!(s.terms.last().unwrap().is_constant());
    }
}
