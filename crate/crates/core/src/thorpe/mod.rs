//! Thorpe-modified curvature operator: the invariant 4-form, the operator
//! blocks A₀ and A_ij, and their leading-order Sylvester minors.

mod det;
mod minors;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::curvature::{completed_table, cyc, general_at, table_by_label, Axis, CurvatureFrame, Label, UnitTensor};
use crate::exactmath::{EpsPoly, RatFunc, Rational};

pub use det::leading_principal_minors;
pub use minors::{
    alpha_independent, k2_identity, k3_identity, leading_minors, printed_k2_condition, printed_k3_condition, MinorSpectrum,
};

#[derive(Clone, Debug, Serialize)]
pub struct PuttmannParams {
    pub a: [EpsPoly; 3],
    pub b: [EpsPoly; 3],
    pub c: [EpsPoly; 3],
    pub d1: EpsPoly,
    pub d2: EpsPoly,
}

fn e1(x: &RatFunc) -> EpsPoly {
    EpsPoly::monomial(1, x.clone())
}

fn e2(x: &RatFunc) -> EpsPoly {
    EpsPoly::monomial(2, x.clone())
}

/// a_i = εγ_i − ε²γ_jγ_k, b_i = −εβ_i + ½ε²(β_jγ_k + β_kγ_j), c = d₁ = 0, d₂ = −N₂.
pub fn build_params(fr: &CurvatureFrame) -> PuttmannParams {
    let (b, g) = (&fr.beta, &fr.gamma);
    let a = [0, 1, 2].map(|i| {
        let (j, k) = cyc(i);
        e1(&g[i]).sub(&e2(&g[j].mul(&g[k])))
    });
    let bb = [0, 1, 2].map(|i| {
        let (j, k) = cyc(i);
        e1(&b[i]).neg().add(&e2(&b[j].mul(&g[k]).add(&b[k].mul(&g[j])).scale(&Rational::frac(1, 2))))
    });
    PuttmannParams {
        a,
        b: bb,
        c: Default::default(),
        d1: EpsPoly::zero(),
        d2: EpsPoly::constant(fr.n[1].neg()),
    }
}

/// An invariant 4-form as coefficients on ordered 4-tuples of frame vectors.
#[derive(Clone, Debug, Default, Serialize)]
pub struct FourForm {
    pub terms: Vec<(Label, EpsPoly)>,
}

impl FourForm {
    /// a_k X_iX_jZ̄_iZ̄_j; b_m and c_m on (X₁,X₂,X₃,T) resp. (Z̄₁,Z̄₂,Z̄₃,T)
    /// with slot m swapped to the other family; d₁ X₁X₂X₃T; d₂ Z̄₁Z̄₂Z̄₃T.
    pub fn from_params(p: &PuttmannParams) -> FourForm {
        use Axis::{T, X, Z};
        let mut terms = Vec::new();
        for k in 0..3 {
            let (i, j) = cyc(k);
            terms.push((Label([X(i), X(j), Z(i), Z(j)]), p.a[k].clone()));
        }
        for m in 0..3 {
            let mut xs = [X(0), X(1), X(2), T];
            xs[m] = Z(m);
            terms.push((Label(xs), p.b[m].clone()));
            let mut zs = [Z(0), Z(1), Z(2), T];
            zs[m] = X(m);
            terms.push((Label(zs), p.c[m].clone()));
        }
        terms.push((Label([X(0), X(1), X(2), T]), p.d1.clone()));
        terms.push((Label([Z(0), Z(1), Z(2), T]), p.d2.clone()));
        FourForm { terms }
    }

    pub fn eval(&self, args: [Axis; 4]) -> EpsPoly {
        for (l, c) in &self.terms {
            if let Some(s) = perm_sign(&l.0, &args) {
                return if s > 0 { c.clone() } else { c.neg() };
            }
        }
        EpsPoly::zero()
    }
}

/// Sign of the permutation taking `from` to `to`, if they hold the same
/// distinct entries.
fn perm_sign(from: &[Axis; 4], to: &[Axis; 4]) -> Option<i32> {
    let mut idx = [0usize; 4];
    for (n, a) in to.iter().enumerate() {
        idx[n] = from.iter().position(|b| b == a)?;
    }
    let mut seen = [false; 4];
    for &i in &idx {
        if seen[i] {
            return None;
        }
        seen[i] = true;
    }
    let mut inv = 0;
    for x in 0..4 {
        for y in x + 1..4 {
            if idx[x] > idx[y] {
                inv += 1;
            }
        }
    }
    Some(if inv % 2 == 0 { 1 } else { -1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BlockLabel {
    A0,
    A12,
    A23,
    A31,
}

impl BlockLabel {
    pub const PAIRS: [BlockLabel; 3] = [BlockLabel::A12, BlockLabel::A23, BlockLabel::A31];

    /// (i, j, k), cyclic, for A_ij.
    pub fn indices(self) -> Option<(usize, usize, usize)> {
        match self {
            BlockLabel::A0 => None,
            BlockLabel::A12 => Some((0, 1, 2)),
            BlockLabel::A23 => Some((1, 2, 0)),
            BlockLabel::A31 => Some((2, 0, 1)),
        }
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// ε-lowest-order matrix, εα dropped.
    Leading,
    /// Every entry from the general curvature formulas, α included.
    Exact,
}

/// How the (X_k∧T, Z̄_i∧Z̄_j) entry of the displayed 5×5 block is written.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CEntry {
    /// −ε(C_ki + C_kj), the value of R(X_k,T,Z̄_i,Z̄_j).
    Derived,
    /// −ε(C_ij + C_ji), as typeset.
    AsPrinted,
}

#[derive(Clone, Debug, Serialize)]
pub struct OperatorBlock {
    pub label: BlockLabel,
    pub basis: Vec<(Axis, Axis)>,
    pub entries: Vec<Vec<EpsPoly>>,
}

impl OperatorBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|r| (0..n).all(|c| self.entries[r][c] == self.entries[c][r]))
    }

    pub fn basis_names(&self) -> Vec<String> {
        self.basis.iter().map(|(a, b)| format!("{}^{}", a, b)).collect()
    }
}

pub fn block_basis(label: BlockLabel, six: bool) -> Vec<(Axis, Axis)> {
    use Axis::{T, X, Z};
    match label.indices() {
        None => (0..3).map(|i| (X(i), Z(i))).collect(),
        Some((i, j, k)) => {
            let mut b = vec![(X(i), Z(j)), (Z(i), X(j)), (X(k), T), (Z(i), Z(j)), (Z(k), T)];
            if six {
                b.insert(0, (X(i), X(j)));
            }
            b
        }
    }
}

/// Entries ⟨(R̂ + η̂)(u∧v), w∧z⟩ = R(u,v,w,z) + η(u,v,w,z) for the block's basis.
pub fn assemble_from_4form(
    component: &dyn Fn(Label) -> EpsPoly,
    form: &FourForm,
    label: BlockLabel,
    six: bool,
) -> OperatorBlock {
    let basis = block_basis(label, six);
    let entries = basis
        .iter()
        .map(|&(u, v)| {
            basis.iter().map(|&(w, z)| component(Label([u, v, w, z])).add(&form.eval([u, v, w, z]))).collect()
        })
        .collect();
    OperatorBlock { label, basis, entries }
}

/// Component lookup from the completed closed-form table; α is absent.
pub fn table_components(fr: &CurvatureFrame) -> impl Fn(Label) -> EpsPoly {
    let map: BTreeMap<Label, EpsPoly> = table_by_label(completed_table(fr)).into_iter().map(|(l, (v, _))| (l, v)).collect();
    move |l| general_at(&map, l)
}

/// Component lookup from the general formulas.
pub fn general_components(fr: &CurvatureFrame) -> impl Fn(Label) -> EpsPoly {
    let map = UnitTensor::new(&fr.data).all();
    move |l| general_at(&map, l)
}

/// The displayed matrices: A₀ = diag(ε²β_i²) and the 5×5 A_ij.
pub fn displayed_block(fr: &CurvatureFrame, p: &PuttmannParams, label: BlockLabel, c_entry: CEntry) -> OperatorBlock {
    let (b, g) = (&fr.beta, &fr.gamma);
    let basis = block_basis(label, false);
    let Some((i, j, k)) = label.indices() else {
        let n = 3;
        let mut entries = vec![vec![EpsPoly::zero(); n]; n];
        for (r, row) in entries.iter_mut().enumerate() {
            row[r] = e2(&b[r].square());
        }
        return OperatorBlock { label, basis, entries };
    };
    let half = Rational::frac(1, 2);
    let mut m = vec![vec![EpsPoly::zero(); 5]; 5];
    m[0][0] = e2(&g[i].square());
    m[0][1] = e2(&g[i].mul(&g[j]).sub(&b[i].mul(&b[j])));
    m[0][2] = e2(&b[k].mul(&g[i]).sub(&b[i].mul(&g[k])).scale(&half));
    m[0][3] = e1(&fr.b[i][j]).neg();
    m[0][4] = e1(&fr.c[i][j]);
    m[1][1] = e2(&g[j].square());
    m[1][2] = e2(&b[k].mul(&g[j]).sub(&b[j].mul(&g[k])).scale(&half));
    m[1][3] = e1(&fr.b[j][i]).neg();
    m[1][4] = e1(&fr.c[j][i]);
    m[2][2] = e2(&b[k].square());
    m[2][3] = match c_entry {
        CEntry::Derived => e1(&fr.c[k][i].add(&fr.c[k][j])).neg(),
        CEntry::AsPrinted => e1(&fr.c[i][j].add(&fr.c[j][i])).neg(),
    };
    m[2][4] = e1(&fr.beta_prime[k]).neg();
    m[3][3] = EpsPoly::constant(fr.m[k].clone()).sub(&e1(&g[k].square().scale(&Rational::int(3))));
    m[3][4] = EpsPoly::constant(fr.n[k].clone()).add(&p.d2);
    m[4][4] = EpsPoly::constant(fr.l[k].clone()).sub(&e1(&b[k].square().scale(&Rational::int(3))));
    for r in 0..5 {
        for c in 0..r {
            m[r][c] = m[c][r].clone();
        }
    }
    OperatorBlock { label, basis, entries: m }
}

/// Operator block in the requested mode. Leading mode uses the displayed
/// formulas (5×5) or the completed table (6×6); exact mode uses the general
/// curvature formulas throughout.
pub fn build_block(fr: &CurvatureFrame, p: &PuttmannParams, label: BlockLabel, mode: Mode, six: bool) -> OperatorBlock {
    let form = FourForm::from_params(p);
    match (mode, six) {
        (Mode::Leading, false) => displayed_block(fr, p, label, CEntry::Derived),
        (Mode::Leading, true) => assemble_from_4form(&table_components(fr), &form, label, true),
        (Mode::Exact, _) => assemble_from_4form(&general_components(fr), &form, label, six),
    }
}

#[cfg(test)]
mod tests;
