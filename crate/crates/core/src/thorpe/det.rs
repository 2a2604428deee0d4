//! Leading principal minors of a matrix over ℚ(t)[ε, ε⁻¹].
//!
//! Each row is multiplied by the lcm of its denominators, giving a matrix
//! over ℤ[t][ε]. Every leading minor then comes out of one memoized Laplace
//! expansion along the last row, and the row factors are divided back at
//! the end.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::exactmath::{EpsPoly, IntPoly, MathError, RatFunc};

/// Σ ε^d · p_d(t) with integer polynomial coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BiPoly(BTreeMap<i32, IntPoly>);

impl BiPoly {
    fn one() -> Self {
        BiPoly(BTreeMap::from([(0, IntPoly::one())]))
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_assign(&mut self, o: &BiPoly, negate: bool) {
        for (d, c) in &o.0 {
            let e = self.0.entry(*d).or_insert_with(IntPoly::zero);
            *e = if negate { e.sub(c) } else { e.add(c) };
            if e.is_zero() {
                self.0.remove(d);
            }
        }
    }

    fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut acc: BTreeMap<i32, IntPoly> = BTreeMap::new();
        for (d1, c1) in &self.0 {
            for (d2, c2) in &o.0 {
                let e = acc.entry(d1 + d2).or_insert_with(IntPoly::zero);
                *e = e.add(&c1.mul(c2));
            }
        }
        acc.retain(|_, c| !c.is_zero());
        BiPoly(acc)
    }
}

/// A row scaled to integer coefficients: row = ints / (scalar · poly).
#[derive(Clone, Debug)]
struct LiftedRow {
    entries: Vec<BiPoly>,
    poly: IntPoly,
    scalar: BigInt,
}

fn lift_row(row: &[EpsPoly]) -> LiftedRow {
    let mut poly = IntPoly::one();
    let mut scalar = BigInt::one();
    for e in row {
        for c in e.terms().values() {
            let den = c.den();
            let content = den.content();
            scalar = scalar.lcm(&content);
            let prim = den.primitive_positive();
            let g = poly.gcd(&prim);
            poly = poly.mul(&prim.div_exact(&g).expect("gcd divides"));
        }
    }
    let full = poly.scale(&scalar);
    let entries = row
        .iter()
        .map(|e| {
            BiPoly(
                e.terms()
                    .iter()
                    .map(|(d, c)| (*d, c.num().mul(&full.div_exact(c.den()).expect("row lcm is a multiple"))))
                    .collect(),
            )
        })
        .collect();
    LiftedRow { entries, poly, scalar }
}

/// det(rows 0..r, columns in mask), recursively along row r−1.
fn minor(rows: &[LiftedRow], r: usize, mask: u32, memo: &mut HashMap<(usize, u32), BiPoly>) -> BiPoly {
    if r == 0 {
        return BiPoly::one();
    }
    if let Some(v) = memo.get(&(r, mask)) {
        return v.clone();
    }
    let mut acc = BiPoly::default();
    let mut pos = 0;
    for c in 0..32 {
        if mask & (1 << c) == 0 {
            continue;
        }
        let a = &rows[r - 1].entries[c];
        if !a.is_zero() {
            let sub = minor(rows, r - 1, mask & !(1 << c), memo);
            if !sub.is_zero() {
                acc.add_assign(&a.mul(&sub), (r - 1 + pos) % 2 == 1);
            }
        }
        pos += 1;
    }
    memo.insert((r, mask), acc.clone());
    acc
}

/// det of the leading k×k block for k = 1..n, as exact ε-polynomials.
pub fn leading_principal_minors(m: &[Vec<EpsPoly>]) -> Result<Vec<EpsPoly>, MathError> {
    let n = m.len();
    assert!(n <= 31 && m.iter().all(|r| r.len() == n), "square matrix of size < 32");
    let rows: Vec<LiftedRow> = m.iter().map(|r| lift_row(r)).collect();
    let mut memo = HashMap::new();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let num = minor(&rows, k, (1u32 << k) - 1, &mut memo);
        let polys: Vec<IntPoly> = rows[..k].iter().map(|r| r.poly.clone()).collect();
        let scalar = rows[..k].iter().fold(BigInt::one(), |a, r| a * &r.scalar);
        let mut terms = Vec::new();
        for (d, c) in num.0 {
            terms.push((d, RatFunc::from_factored(c, &polys, &scalar)?));
        }
        out.push(EpsPoly::from_terms(terms));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{Rational, Scalar};

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(IntPoly::from_i64(num), IntPoly::from_i64(den)).unwrap()
    }

    /// Cofactor expansion over EpsPoly directly, no lifting.
    fn naive_det(m: &[Vec<EpsPoly>]) -> EpsPoly {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = EpsPoly::zero();
        for c in 0..n {
            let sub: Vec<Vec<EpsPoly>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect()).collect();
            let term = m[0][c].mul(&naive_det(&sub));
            acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    #[test]
    fn matches_naive_expansion() {
        let e = |d: i32, c: RatFunc| EpsPoly::monomial(d, c);
        let m = vec![
            vec![e(2, rf(&[1, 1], &[2, 0, 1])), e(1, rf(&[3], &[1, 1])), EpsPoly::one().add(&e(1, rf(&[0, 1], &[5])))],
            vec![e(1, rf(&[3], &[1, 1])), e(0, rf(&[1, 0, 1], &[3, 1])), e(2, rf(&[-1], &[7]))],
            vec![EpsPoly::one().add(&e(1, rf(&[0, 1], &[5]))), e(2, rf(&[-1], &[7])), e(-1, rf(&[2, 2], &[1, 0, 0, 1]))],
        ];
        let got = leading_principal_minors(&m).unwrap();
        for k in 1..=3 {
            let sub: Vec<Vec<EpsPoly>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            assert_eq!(got[k - 1], naive_det(&sub), "k = {}", k);
        }
    }

    #[test]
    fn singular_matrix_gives_zero() {
        let a = EpsPoly::from_rational(&Rational::frac(2, 3));
        let m = vec![vec![a.clone(), a.scale_int(2)], vec![a.scale_int(3), a.scale_int(6)]];
        let got = leading_principal_minors(&m).unwrap();
        assert!(got[1].is_zero());
        assert_eq!(got[0], a);
    }
}
