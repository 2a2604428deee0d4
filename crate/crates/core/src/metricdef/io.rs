use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{hermite_c2_glue, MetricError, Piece, PiecewiseFunc, PiecewiseMetric};
use crate::exactmath::{Poly, Rational, Var};

/// On-disk metric definition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricFile {
    pub ell: u32,
    #[serde(rename = "L")]
    pub l: Rational,
    pub breakpoints: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conventions: Option<Conventions>,
    pub v: BTreeMap<String, Vec<PieceSpec>>,
    pub h: BTreeMap<String, Vec<PieceSpec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Conventions {
    /// "negate_on_load": the file lists |v₃| and the loader stores −v₃ so that
    /// v₃ < 0; "as_given": coefficients are used verbatim.
    pub v3_sign: V3Sign,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum V3Sign {
    NegateOnLoad,
    AsGiven,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub interval: [Rational; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub glue: Option<bool>,
}

impl PieceSpec {
    pub fn explicit(a: Rational, b: Rational, center: &str, coeffs: Vec<Rational>) -> Self {
        PieceSpec { interval: [a, b], center: Some(center.to_string()), coeffs: Some(coeffs), glue: None }
    }

    pub fn glued(a: Rational, b: Rational) -> Self {
        PieceSpec { interval: [a, b], center: None, coeffs: None, glue: Some(true) }
    }
}

impl MetricFile {
    pub fn from_json(s: &str) -> Result<Self, MetricError> {
        serde_json::from_str(s).map_err(|e| MetricError::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e)))
    }

    /// Canonical serialization: fixed key order, two-space indentation.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("metric serializes")
    }

    /// SHA-256 of the canonical serialization, lowercase hex.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        digest.iter().map(|b| format!("{:02x}", b)).collect()
    }

    pub fn v3_sign(&self) -> V3Sign {
        self.conventions.as_ref().map(|c| c.v3_sign).unwrap_or(V3Sign::AsGiven)
    }

    /// Validates the file and resolves glued pieces.
    pub fn resolve(&self) -> Result<PiecewiseMetric, MetricError> {
        let bad = |loc: &str, msg: String| MetricError::Invalid { location: loc.to_string(), message: msg };
        if self.ell == 0 {
            return Err(bad("ell", "must be a positive integer".into()));
        }
        if self.l.signum() <= 0 {
            return Err(bad("L", "must be positive".into()));
        }
        let bp = &self.breakpoints;
        if bp.len() < 2 {
            return Err(bad("breakpoints", "need at least two breakpoints".into()));
        }
        if !bp[0].is_zero() {
            return Err(bad("breakpoints[0]", "first breakpoint must be 0".into()));
        }
        if bp.last() != Some(&self.l) {
            return Err(bad("breakpoints", "last breakpoint must equal L".into()));
        }
        for i in 1..bp.len() {
            if bp[i] <= bp[i - 1] {
                return Err(bad(&format!("breakpoints[{}]", i), "breakpoints must increase strictly".into()));
            }
        }
        let resolve_family = |name: &str, fam: &BTreeMap<String, Vec<PieceSpec>>, negate3: bool| -> Result<[PiecewiseFunc; 3], MetricError> {
            for k in fam.keys() {
                if !["1", "2", "3"].contains(&k.as_str()) {
                    return Err(bad(&format!("{}.{}", name, k), "unknown component; expected 1, 2 or 3".into()));
                }
            }
            let mut out = Vec::new();
            for idx in ["1", "2", "3"] {
                let loc = format!("{}.{}", name, idx);
                let pieces = fam.get(idx).ok_or_else(|| bad(&loc, "missing component".into()))?;
                let neg = negate3 && idx == "3";
                out.push(self.resolve_func(&loc, pieces, neg)?);
            }
            Ok([out[0].clone(), out[1].clone(), out[2].clone()])
        };
        let negate = self.v3_sign() == V3Sign::NegateOnLoad;
        let v = resolve_family("v", &self.v, negate)?;
        let h = resolve_family("h", &self.h, false)?;
        Ok(PiecewiseMetric {
            ell: self.ell,
            l: self.l.clone(),
            breakpoints: self.breakpoints.clone(),
            v,
            h,
            source: self.clone(),
        })
    }

    fn resolve_func(&self, loc: &str, specs: &[PieceSpec], negate: bool) -> Result<PiecewiseFunc, MetricError> {
        let bad = |l: String, msg: String| MetricError::Invalid { location: l, message: msg };
        let bp = &self.breakpoints;
        for i in 1..specs.len() {
            let prev_end = &specs[i - 1].interval[1];
            let start = &specs[i].interval[0];
            if start < prev_end {
                return Err(bad(format!("{}[{}]", loc, i), format!("overlapping pieces: starts at {} before previous piece ends at {}", start, prev_end)));
            }
            if start > prev_end {
                return Err(bad(format!("{}[{}]", loc, i), format!("gap between {} and {}", prev_end, start)));
            }
        }
        if specs.len() != bp.len() - 1 {
            return Err(bad(loc.to_string(), format!("expected {} pieces (one per breakpoint interval), found {}", bp.len() - 1, specs.len())));
        }
        let mut polys: Vec<Option<Poly>> = Vec::new();
        for (i, s) in specs.iter().enumerate() {
            let ploc = format!("{}[{}]", loc, i);
            if s.interval[0] != bp[i] || s.interval[1] != bp[i + 1] {
                return Err(bad(ploc, format!("interval [{}, {}] does not match breakpoints [{}, {}]", s.interval[0], s.interval[1], bp[i], bp[i + 1])));
            }
            match (&s.coeffs, s.glue) {
                (Some(_), Some(true)) => return Err(bad(ploc, "a piece is either explicit or glued, not both".into())),
                (None, Some(true)) => polys.push(None),
                (Some(c), _) => {
                    let var = self.parse_center(&ploc, s.center.as_deref())?;
                    let mut p = Poly::new(var, c.clone());
                    if negate {
                        p = p.neg();
                    }
                    polys.push(Some(p));
                }
                (None, _) => return Err(bad(ploc, "piece needs \"coeffs\" or \"glue\": true".into())),
            }
        }
        let mut pieces = Vec::new();
        for i in 0..polys.len() {
            let (a, b) = (bp[i].clone(), bp[i + 1].clone());
            match &polys[i] {
                Some(p) => pieces.push(Piece { a, b, poly: p.clone(), glued: false }),
                None => {
                    let ploc = format!("{}[{}]", loc, i);
                    let left = i.checked_sub(1).and_then(|j| polys[j].clone()).ok_or_else(|| bad(ploc.clone(), "glued piece needs an explicit piece on its left".into()))?;
                    let right = polys.get(i + 1).cloned().flatten().ok_or_else(|| bad(ploc.clone(), "glued piece needs an explicit piece on its right".into()))?;
                    let g = hermite_c2_glue(&left, &right, &a, &b);
                    pieces.push(Piece { a, b, poly: g, glued: true });
                }
            }
        }
        Ok(PiecewiseFunc { pieces })
    }

    fn parse_center(&self, loc: &str, c: Option<&str>) -> Result<Var, MetricError> {
        match c.map(str::trim) {
            None | Some("0") => Ok(Var::T),
            Some("L") => Ok(Var::Shifted(self.l.clone())),
            Some(other) => {
                let r: Rational = other.parse().map_err(|_| MetricError::Invalid {
                    location: loc.to_string(),
                    message: format!("center must be \"0\", \"L\" or a rational, got {:?}", other),
                })?;
                Ok(if r.is_zero() { Var::T } else { Var::Shifted(r) })
            }
        }
    }
}
