use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::frame::{cyc, CurvatureFrame, PieceData};
use super::oracle::{basis_vec, eps_jet, eval_jet, Arg, Jet, OrbitGeometry, OrbitVec};
use crate::exactmath::{EpsPoly, MathError, RatFunc, Rational, Scalar};

/// Unit frame X₁*, X₂*, X₃*, Z̄₁, Z̄₂, Z̄₃, T; indices from 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X(usize),
    Z(usize),
    T,
}

impl Axis {
    pub const ALL: [Axis; 7] = [Axis::X(0), Axis::X(1), Axis::X(2), Axis::Z(0), Axis::Z(1), Axis::Z(2), Axis::T];

    pub fn index(self) -> usize {
        match self {
            Axis::X(i) => i,
            Axis::Z(i) => 3 + i,
            Axis::T => 6,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X(i) => write!(f, "X{}", i + 1),
            Axis::Z(i) => write!(f, "Z{}", i + 1),
            Axis::T => write!(f, "T"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub [Axis; 4]);

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({},{},{},{})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl Serialize for Axis {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Label {
    /// Representative under the algebraic symmetries of a curvature tensor,
    /// with the sign relating the two. Zero sign for forced zeros.
    pub fn canonical(self) -> (i32, Label) {
        let [a, b, c, d] = self.0;
        if a == b || c == d {
            return (0, self);
        }
        let mut sign = 1;
        let (p, q) = if a < b { ((a, b), 1) } else { ((b, a), -1) };
        sign *= q;
        let (r, q) = if c < d { ((c, d), 1) } else { ((d, c), -1) };
        sign *= q;
        let (p, r) = if p <= r { (p, r) } else { (r, p) };
        (sign, Label([p.0, p.1, r.0, r.1]))
    }

    /// All canonical labels with nonzero-possible pairs: 231 of them.
    pub fn all_canonical() -> Vec<Label> {
        let mut pairs = Vec::new();
        for a in 0..7 {
            for b in a + 1..7 {
                pairs.push((Axis::ALL[a], Axis::ALL[b]));
            }
        }
        let mut out = Vec::new();
        for (n, p) in pairs.iter().enumerate() {
            for r in &pairs[n..] {
                out.push(Label([p.0, p.1, r.0, r.1]));
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvComponent {
    pub label: Label,
    pub value: EpsPoly,
}

/// f_i = ε, h_i → εh_i, g_i = v_i² + εh_i².
pub fn connection_jet(d: &PieceData) -> Jet<EpsPoly> {
    let f: [EpsPoly; 3] = std::array::from_fn(|_| EpsPoly::eps());
    let h: [EpsPoly; 3] = std::array::from_fn(|i| EpsPoly::monomial(1, d.h[i].clone()));
    let g: [EpsPoly; 3] =
        std::array::from_fn(|i| EpsPoly::constant(d.v[i].square()).add(&EpsPoly::monomial(1, d.h[i].square())));
    eps_jet(&f, &g, &h)
}

/// Frame vectors in action-field coordinates: Z̄_i = (Y_i − h_i X_i)/v_i with
/// the signed v_i.
fn unit_args<S: Scalar>(v: &[S; 3], h: &[S; 3]) -> Result<[Arg<S>; 7], MathError> {
    let mut out: Vec<Arg<S>> = (0..3).map(|i| Arg::Orbit(basis_vec(i))).collect();
    for i in 0..3 {
        let mut z: OrbitVec<S> = std::array::from_fn(|_| S::zero());
        let inv = S::one().try_div(&v[i])?;
        z[3 + i] = inv.clone();
        z[i] = h[i].mul(&inv).neg();
        out.push(Arg::Orbit(z));
    }
    out.push(Arg::T);
    Ok(out.try_into().unwrap_or_else(|_| unreachable!()))
}

/// Symbolic curvature tensor in the unit frame on one piece.
pub struct UnitTensor {
    geo: OrbitGeometry<EpsPoly>,
    args: [Arg<EpsPoly>; 7],
}

impl UnitTensor {
    pub fn new(d: &PieceData) -> Self {
        let geo = OrbitGeometry::new(&connection_jet(d)).expect("D_i = εv_i² is invertible");
        let v = d.v.clone().map(EpsPoly::constant);
        let h = d.h.clone().map(EpsPoly::constant);
        UnitTensor { geo, args: unit_args(&v, &h).expect("v_i nonzero") }
    }

    pub fn component(&self, l: Label) -> EpsPoly {
        let [a, b, c, d] = l.0.map(|x| &self.args[x.index()]);
        self.geo.riemann(a, b, c, d)
    }

    /// Every canonical component, computed in parallel.
    pub fn all(&self) -> BTreeMap<Label, EpsPoly> {
        Label::all_canonical().into_par_iter().map(|l| (l, self.component(l))).collect()
    }
}

/// The 7⁴ unit-frame components at a rational point (ε, t), indexed
/// a·343 + b·49 + c·7 + d. Computed on the action-field basis and pushed
/// through the (two-term) frame change.
pub fn point_tensor(d: &PieceData, eps: &Rational, t: &Rational) -> Result<Vec<Rational>, MathError> {
    let local = d.var.local(t);
    let jet = eval_jet(&connection_jet(d), eps, &local)?;
    let geo = OrbitGeometry::new(&jet).map_err(|e| MathError::NotInvertible(e.to_string()))?;
    let mut basis: Vec<Arg<Rational>> = (0..6).map(|m| Arg::Orbit(basis_vec(m))).collect();
    basis.push(Arg::T);
    let mut raw = vec![Rational::zero(); 2401];
    for a in 0..7 {
        for b in 0..7 {
            if a == b {
                continue;
            }
            for c in 0..7 {
                for e in 0..7 {
                    if c != e {
                        raw[a * 343 + b * 49 + c * 7 + e] = geo.riemann(&basis[a], &basis[b], &basis[c], &basis[e]);
                    }
                }
            }
        }
    }
    // rows: unit vector → action-basis coordinates
    let mut rows: Vec<Vec<(usize, Rational)>> = (0..3).map(|i| vec![(i, Rational::one())]).collect();
    for i in 0..3 {
        let v = d.v[i].eval(&local)?;
        let h = d.h[i].eval(&local)?;
        let inv = v.recip()?;
        rows.push(vec![(3 + i, inv.clone()), (i, -(&h * &inv))]);
    }
    rows.push(vec![(6, Rational::one())]);
    // contract one index at a time
    let mut cur = raw;
    for axis in 0..4 {
        let stride = [343, 49, 7, 1][axis];
        let mut next = vec![Rational::zero(); 2401];
        for idx in 0..2401 {
            let u = (idx / stride) % 7;
            let base = idx - u * stride;
            let mut acc = Rational::zero();
            for (m, w) in &rows[u] {
                let x = &cur[base + m * stride];
                if !x.is_zero() {
                    acc = &acc + &(w * x);
                }
            }
            next[idx] = acc;
        }
        cur = next;
    }
    Ok(cur)
}

/// Value of a table row; `with_alpha` marks N_k + εα, whose α part is only
/// known through the general formulas.
#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub family: &'static str,
    pub label: Label,
    pub value: EpsPoly,
    pub with_alpha: bool,
}

fn e0(x: &RatFunc) -> EpsPoly {
    EpsPoly::constant(x.clone())
}

fn e1(x: &RatFunc) -> EpsPoly {
    EpsPoly::monomial(1, x.clone())
}

fn e2(x: &RatFunc) -> EpsPoly {
    EpsPoly::monomial(2, x.clone())
}

/// The closed-form components of a connection metric, one row per family
/// and cyclic (i, j, k).
pub fn curvature_table(fr: &CurvatureFrame) -> Vec<TableEntry> {
    use Axis::{T, X, Z};
    let (b, g, bp) = (&fr.beta, &fr.gamma, &fr.beta_prime);
    let mut out = Vec::new();
    let zero = RatFunc::zero();
    for i in 0..3 {
        let (j, k) = cyc(i);
        let mut push = |family: &'static str, l: [Axis; 4], value: EpsPoly, with_alpha: bool| {
            out.push(TableEntry { family, label: Label(l), value, with_alpha })
        };
        push("XiZiXiZi", [X(i), Z(i), X(i), Z(i)], e2(&b[i].square()), false);
        push("XiZiXjZj", [X(i), Z(i), X(j), Z(j)], e1(&g[k]).sub(&e2(&g[i].mul(&g[j]))), false);
        push("XiXjXiXj", [X(i), X(j), X(i), X(j)], EpsPoly::eps(), false);
        push("XiXjXiZj", [X(i), X(j), X(i), Z(j)], e0(&zero), false);
        push(
            "XiXjZiZj",
            [X(i), X(j), Z(i), Z(j)],
            e1(&g[k].scale(&Rational::int(2))).sub(&e2(&g[i].mul(&g[j]).add(&b[i].mul(&b[j])))),
            false,
        );
        push("XiZjXiZj", [X(i), Z(j), X(i), Z(j)], e2(&g[i].square()), false);
        push("XiZjXjZi", [X(i), Z(j), X(j), Z(i)], e1(&g[k]).neg().add(&e2(&b[i].mul(&b[j]))), false);
        push("ZiZjXiZj", [Z(i), Z(j), X(i), Z(j)], e1(&fr.b[i][j]).neg(), false);
        push("ZiZjZiZj", [Z(i), Z(j), Z(i), Z(j)], e0(&fr.m[k]).sub(&e1(&g[k].square().scale(&Rational::int(3)))), false);
        push("XiXjXkT", [X(i), X(j), X(k), T], e0(&zero), false);
        push(
            "XiXjZkT",
            [X(i), X(j), Z(k), T],
            e1(&b[k].scale(&Rational::int(-2))).add(&e2(&b[i].mul(&g[j]).add(&b[j].mul(&g[i])))),
            false,
        );
        push("XiZjXkT", [X(i), Z(j), X(k), T], e1(&b[j]).sub(&e2(&b[i].mul(&g[k]))), false);
        push("XiZjZkT", [X(i), Z(j), Z(k), T], e1(&fr.c[i][j]), false);
        push("ZiZjXkT", [Z(i), Z(j), X(k), T], e1(&fr.c[i][j].add(&fr.c[j][i])).neg(), false);
        push("ZiZjZkT", [Z(i), Z(j), Z(k), T], e0(&fr.n[k]), true);
        push("XiTXiT", [X(i), T, X(i), T], e2(&b[i].square()), false);
        push("XiTZiT", [X(i), T, Z(i), T], e1(&bp[i]).neg(), false);
        push("ZiTZiT", [Z(i), T, Z(i), T], e0(&fr.l[i]).sub(&e1(&b[i].square().scale(&Rational::int(3)))), false);
    }
    out
}

/// The table with the Z̄_iZ̄_jX_kT row replaced by −ε(C_ki + C_kj) and the
/// anticyclic rows that the printed list leaves implicit:
/// R(X_j,Z̄_i,X_j,Z̄_i) = ε²γ_j², R(X_j,Z̄_i,Z̄_i,Z̄_j) = εB_ji,
/// R(X_j,Z̄_i,Z̄_k,T) = −εC_ji and R(X_j,Z̄_i,X_k,T) = −εβ_i + ε²β_jγ_k.
pub fn completed_table(fr: &CurvatureFrame) -> Vec<TableEntry> {
    use Axis::{T, X, Z};
    let (b, g) = (&fr.beta, &fr.gamma);
    let mut out: Vec<TableEntry> = curvature_table(fr).into_iter().filter(|e| e.family != "ZiZjXkT").collect();
    for i in 0..3 {
        let (j, k) = cyc(i);
        let mut push = |family: &'static str, l: [Axis; 4], value: EpsPoly| {
            out.push(TableEntry { family, label: Label(l), value, with_alpha: false })
        };
        push("ZiZjXkT", [Z(i), Z(j), X(k), T], e1(&fr.c[k][i].add(&fr.c[k][j])).neg());
        push("XjZiXjZi", [X(j), Z(i), X(j), Z(i)], e2(&g[j].square()));
        push("XjZiZiZj", [X(j), Z(i), Z(i), Z(j)], e1(&fr.b[j][i]));
        push("XjZiZkT", [X(j), Z(i), Z(k), T], e1(&fr.c[j][i]).neg());
        push("XjZiXkT", [X(j), Z(i), X(k), T], e1(&b[i]).neg().add(&e2(&b[j].mul(&g[k]))));
    }
    out
}

/// Table rows keyed by canonical label, values adjusted by the symmetry sign.
/// Panics if two rows land on one label with different values.
pub fn table_by_label(rows: Vec<TableEntry>) -> BTreeMap<Label, (EpsPoly, TableEntry)> {
    let mut map: BTreeMap<Label, (EpsPoly, TableEntry)> = BTreeMap::new();
    for e in rows {
        let (s, l) = e.label.canonical();
        if s == 0 {
            continue;
        }
        let v = if s < 0 { e.value.neg() } else { e.value.clone() };
        if let Some((old, prev)) = map.get(&l) {
            assert!(old == &v, "{} and {} disagree at {}", prev.label, e.label, l);
            continue;
        }
        map.insert(l, (v, e));
    }
    map
}

/// The table as components, with the α-bearing family taken from the
/// general formulas.
pub fn connection_curvature(fr: &CurvatureFrame) -> Vec<CurvComponent> {
    let ut = UnitTensor::new(&fr.data);
    curvature_table(fr)
        .into_par_iter()
        .map(|e| {
            let value = if e.with_alpha { ut.component(e.label) } else { e.value };
            CurvComponent { label: e.label, value }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub label: Label,
    pub table: EpsPoly,
    pub general: EpsPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub piece: usize,
    pub components_checked: usize,
    /// Table rows equal to the general formulas.
    pub table_rows_matched: usize,
    /// Table rows that disagree with the general formulas.
    pub table_mismatches: Vec<Residual>,
    /// Components the table lists as zero that are not.
    pub nonzero_unlisted: Vec<Residual>,
    /// ε⁰ part of R(Z̄_i,Z̄_j,Z̄_k,T) equals N_k, for cyclic (i, j, k) in order k = 3, 1, 2.
    pub n_leading_matches: [bool; 3],
    /// α_k = (R(Z̄_i,Z̄_j,Z̄_k,T) − N_k)/ε.
    pub alpha: [EpsPoly; 3],
}

/// Component at any label from the canonical map.
pub fn general_at(general: &BTreeMap<Label, EpsPoly>, l: Label) -> EpsPoly {
    let (s, c) = l.canonical();
    match (s, general.get(&c)) {
        (0, _) | (_, None) => EpsPoly::zero(),
        (1, Some(v)) => v.clone(),
        (_, Some(v)) => v.neg(),
    }
}

pub fn alpha_of(general: &EpsPoly, n: &RatFunc) -> EpsPoly {
    general.sub(&EpsPoly::constant(n.clone())).try_div(&EpsPoly::eps()).expect("ε is invertible")
}

/// Compares every canonical component of the general formulas against the
/// given table rows (missing rows count as zero).
pub fn residuals_against(fr: &CurvatureFrame, general: &BTreeMap<Label, EpsPoly>, rows: Vec<TableEntry>) -> ResidualReport {
    let table = table_by_label(rows);
    let mut matched = 0;
    let mut mismatches = Vec::new();
    let mut unlisted = Vec::new();
    let mut n_ok = [false; 3];
    let mut alpha: [EpsPoly; 3] = Default::default();
    for (l, g) in general {
        match table.get(l) {
            Some((_, e)) if e.with_alpha => {
                let k = match e.label.0[2] {
                    Axis::Z(k) => k,
                    _ => unreachable!("ZiZjZkT rows end in Z_k, T"),
                };
                // the label is listed in row order, so no sign adjustment
                let row = general_at(general, e.label);
                n_ok[k] = row.coeff(0) == fr.n[k] && row.min_degree().map_or(true, |d| d >= 0);
                alpha[k] = alpha_of(&row, &fr.n[k]);
                matched += n_ok[k] as usize;
            }
            Some((v, _)) => {
                if v == g {
                    matched += 1;
                } else {
                    mismatches.push(Residual { label: *l, table: v.clone(), general: g.clone() });
                }
            }
            None => {
                if !g.is_zero() {
                    unlisted.push(Residual { label: *l, table: EpsPoly::zero(), general: g.clone() });
                }
            }
        }
    }
    ResidualReport {
        piece: fr.data.piece,
        components_checked: general.len(),
        table_rows_matched: matched,
        table_mismatches: mismatches,
        nonzero_unlisted: unlisted,
        n_leading_matches: n_ok,
        alpha,
    }
}

/// Residuals of the printed table.
pub fn residuals(fr: &CurvatureFrame) -> ResidualReport {
    let general = UnitTensor::new(&fr.data).all();
    residuals_against(fr, &general, curvature_table(fr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::frame_for_piece;
    use crate::metricdef::build_p2_metric;

    #[test]
    fn canonical_labels() {
        use Axis::*;
        assert_eq!(Label::all_canonical().len(), 231);
        let (s, l) = Label([Z(2), Z(0), Z(1), T]).canonical();
        assert_eq!((s, l), (-1, Label([Z(0), Z(2), Z(1), T])));
        assert_eq!(Label([X(0), X(0), Z(1), T]).canonical().0, 0);
    }

    #[test]
    fn printed_table_against_general_formulas() {
        let m = build_p2_metric();
        for p in 0..m.num_pieces() {
            let fr = frame_for_piece(&m, p);
            let general = UnitTensor::new(&fr.data).all();
            let r = residuals_against(&fr, &general, curvature_table(&fr));
            assert_eq!(r.table_rows_matched, 51);
            assert_eq!(r.n_leading_matches, [true; 3]);
            let bad: Vec<String> = r.table_mismatches.iter().map(|x| x.label.to_string()).collect();
            assert_eq!(bad, ["R(X1,T,Z2,Z3)", "R(X2,T,Z1,Z3)", "R(X3,T,Z1,Z2)"]);
            assert_eq!(r.nonzero_unlisted.len(), 12);
            for a in &r.alpha {
                assert_eq!(a.min_degree(), Some(0));
            }
            let full = residuals_against(&fr, &general, completed_table(&fr));
            assert!(full.table_mismatches.is_empty() && full.nonzero_unlisted.is_empty(), "piece {}", p);
        }
    }

    #[test]
    fn point_values_at_quarter() {
        let m = build_p2_metric();
        let fr = frame_for_piece(&m, 1);
        let (eps, t) = (Rational::frac(1, 100), Rational::frac(1, 4));
        let pt = point_tensor(&fr.data, &eps, &t).unwrap();
        let at = |l: [Axis; 4]| pt[l[0].index() * 343 + l[1].index() * 49 + l[2].index() * 7 + l[3].index()].clone();
        let ev = |f: &RatFunc| fr.data.at(f, &t).unwrap();
        use Axis::*;
        // ⟨R(X₁*,Z̄₂)Z̄₃,T⟩ = εC₁₂
        assert_eq!(at([X(0), Z(1), Z(2), T]), &eps * &ev(&fr.c[0][1]));
        for i in 0..3 {
            let b = ev(&fr.beta[i]);
            let expect = &ev(&fr.l[i]) - &(&(&Rational::int(3) * &eps) * &(&b * &b));
            assert_eq!(at([Z(i), T, Z(i), T]), expect);
        }
    }
}
