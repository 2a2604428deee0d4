//! Full positivity check of a connection metric and the resulting
//! machine-checkable certificate.

mod endpoint;
mod evidence;
pub mod replay;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curvature::{
    base_paths_agree, check_symmetries, completed_table, curvature_table, frame_for_piece, residuals_against, third, CurvatureFrame, PieceData, UnitTensor,
};
use crate::exactmath::{MathError, RatFunc, Rational};
use crate::metricdef::{check_smoothness, PiecewiseMetric, Side};
use crate::thorpe::{alpha_independent, build_block, build_params, k2_identity, k3_identity, leading_minors, BlockLabel, MinorSpectrum, Mode};

pub use endpoint::{check_endpoint_inequalities, endpoint_jets, EndpointError, JetAtL, JetAtZero};
pub use evidence::{radical_holds, sign_product, sturm_factor, CoverPart, Evidence, Outcome, Rel, SturmFactor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The mathematical condition being checked.
    pub anchor: String,
    /// 1-based piece number.
    pub piece: Option<usize>,
    pub interval: Option<(Rational, Rational)>,
    pub depends_on: Vec<String>,
    pub evidence: Evidence,
    pub verdict: Outcome,
}

/// Diagnostics that do not enter the overall verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Info {
    pub name: String,
    pub holds: bool,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub seed: u64,
    pub eps: Option<Rational>,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub metric_sha256: String,
    pub mode: String,
    pub config: ConfigRecord,
    pub checks: Vec<Check>,
    pub informational: Vec<Info>,
    pub overall: Outcome,
}

impl Certificate {
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.verdict.passed()).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunMode {
    /// Lowest ε-order coefficient of each minor.
    Leading,
    /// Additionally the full minors at a fixed ε.
    Exact(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub mode: RunMode,
    pub seed: u64,
    /// Sample points per piece for the tensor-symmetry checks.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { mode: RunMode::Leading, seed: 1, samples: 2 }
    }
}

fn piece_name(p: usize) -> String {
    format!("piece{}", p + 1)
}

/// Collapse points at the ends of a piece: t = 0 on the first piece, t = L on
/// the last one.
fn collapse_flags(d: &PieceData, l: &Rational) -> (bool, bool) {
    (d.interval.0.is_zero(), &d.interval.1 == l)
}

/// Closed unless the reduced denominator vanishes at a collapse point, where
/// the quantity has no value and only the open side is certified.
fn open_flags(f: &RatFunc, d: &PieceData, l: &Rational) -> (bool, bool) {
    let (c0, c1) = collapse_flags(d, l);
    let den_zero = |t: &Rational| f.den().eval(&d.var.local(t)).is_zero();
    (c0 && den_zero(&d.interval.0), c1 && den_zero(&d.interval.1))
}

fn make_check(name: String, anchor: String, d: Option<&PieceData>, deps: Vec<String>, evidence: Evidence) -> Check {
    Check {
        name,
        anchor,
        piece: d.map(|d| d.piece + 1),
        interval: d.map(|d| d.interval.clone()),
        depends_on: deps,
        verdict: Outcome::from_bool(evidence.holds()),
        evidence,
    }
}

fn sign_check(name: String, anchor: String, d: &PieceData, l: &Rational, f: &RatFunc, expect: i32, deps: Vec<String>) -> Check {
    let open = open_flags(f, d, l);
    let ev = evidence::sign_evidence(f, d, expect, open);
    make_check(name, anchor, Some(d), deps, ev)
}

fn unavailable(name: String, anchor: String, d: Option<&PieceData>, reason: String) -> Check {
    make_check(name, anchor, d, vec![], Evidence::Unavailable { reason })
}

/// A deferred check; running them in parallel keeps the output order.
type Job<'a> = Box<dyn Fn() -> Check + Send + Sync + 'a>;

fn run_jobs(jobs: Vec<Job<'_>>) -> Vec<Check> {
    jobs.par_iter().map(|j| j()).collect()
}

/// Smoothness conditions as exact relations.
pub fn check_smoothness_entries(m: &PiecewiseMetric) -> (Vec<Check>, Info) {
    let rep = check_smoothness(m);
    let checks = rep
        .entries
        .iter()
        .map(|e| {
            let name = format!("smoothness/{}/{}", e.group, e.name);
            let anchor = format!("C2 smoothness: {}", e.name);
            let computed = e.computed.strip_prefix("jump ").unwrap_or(&e.computed);
            let ev = match (e.required.as_str(), computed.parse::<Rational>()) {
                ("> 2", Ok(x)) => Evidence::Relation { lhs: x, rel: Rel::Gt, rhs: Rational::int(2) },
                ("0 jump", Ok(x)) => Evidence::Relation { lhs: x, rel: Rel::Eq, rhs: Rational::zero() },
                (req, Ok(x)) => match req.parse::<Rational>() {
                    Ok(r) => Evidence::Relation { lhs: x, rel: Rel::Eq, rhs: r },
                    Err(_) => Evidence::Unavailable { reason: format!("required value {:?} is not a rational", req) },
                },
                (_, Err(_)) => Evidence::Unavailable { reason: format!("computed value {:?} is not a rational", e.computed) },
            };
            make_check(name, anchor, None, vec![], ev)
        })
        .collect();
    let info = Info {
        name: "smoothness/C3 probe".into(),
        holds: rep.c3,
        detail: serde_json::to_value(&rep.c3_probe).expect("serializable"),
    };
    (checks, info)
}

/// v₁ > 0, v₂ > 0 and v₃ < 0, with v₁ and v₂ allowed to vanish only at their
/// collapse points.
pub fn check_sign_conventions(m: &PiecewiseMetric) -> Vec<Check> {
    let mut jobs: Vec<Job> = Vec::new();
    for p in 0..m.num_pieces() {
        let d = PieceData::new(m, p);
        let (c0, c1) = collapse_flags(&d, &m.l);
        for (i, expect, open) in [(0, 1, (c0, false)), (1, 1, (false, c1)), (2, -1, (false, false))] {
            let d = d.clone();
            jobs.push(Box::new(move || {
                let rel = if expect > 0 { ">" } else { "<" };
                let ev = evidence::sign_evidence(&d.v[i], &d, expect, open);
                make_check(
                    format!("{}/sign/v{}", piece_name(d.piece), i + 1),
                    format!("sign convention v{} {} 0", i + 1, rel),
                    Some(&d),
                    vec![],
                    ev,
                )
            }));
        }
    }
    run_jobs(jobs)
}

fn fatness_jobs<'a>(fr: &'a CurvatureFrame, l: &'a Rational) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job> = Vec::new();
    let pn = piece_name(fr.data.piece);
    for (sym, q) in [("beta", &fr.beta), ("gamma", &fr.gamma)] {
        for i in 0..3 {
            let pn = pn.clone();
            jobs.push(Box::new(move || {
                sign_check(format!("{}/fatness/{}{}", pn, sym, i + 1), format!("fatness: {}{} > 0", sym, i + 1), &fr.data, l, &q[i], 1, vec![])
            }));
        }
    }
    jobs
}

/// β_i > 0 and γ_i > 0 on one piece.
pub fn check_fatness(fr: &CurvatureFrame, l: &Rational) -> Vec<Check> {
    run_jobs(fatness_jobs(fr, l))
}

fn hyperfatness_jobs<'a>(fr: &'a CurvatureFrame, l: &'a Rational) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job> = Vec::new();
    let pn = piece_name(fr.data.piece);
    for i in 0..3 {
        let pn = pn.clone();
        jobs.push(Box::new(move || {
            let name = format!("{}/hf1/{}", pn, i + 1);
            let anchor = format!("(beta{0}'/beta{0})^2 < L{0}", i + 1);
            let deps = vec![format!("{}/fatness/beta{}", pn, i + 1)];
            match fr.beta_prime[i].try_div(&fr.beta[i]) {
                Ok(r) => sign_check(name, anchor, &fr.data, l, &fr.l[i].sub(&r.square()), 1, deps),
                Err(e) => unavailable(name, anchor, Some(&fr.data), e.to_string()),
            }
        }));
    }
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let k = third(i, j);
            let pn = pn.clone();
            jobs.push(Box::new(move || {
                let f = fr.gamma[i].square().mul(&fr.m[k]).sub(&fr.b[i][j].square());
                sign_check(
                    format!("{}/hf2/{}{}", pn, i + 1, j + 1),
                    format!("B{0}{1}^2 < gamma{0}^2 M{2}", i + 1, j + 1, k + 1),
                    &fr.data,
                    l,
                    &f,
                    1,
                    vec![format!("{}/fatness/gamma{}", pn, i + 1)],
                )
            }));
        }
    }
    jobs
}

/// (β_i′/β_i)² < L_i and B_ij² < γ_i²M_k on one piece.
pub fn check_hyperfatness(fr: &CurvatureFrame, l: &Rational) -> Vec<Check> {
    run_jobs(hyperfatness_jobs(fr, l))
}

const COVER_DEPTH: usize = 10;

/// Bisection cover of the piece where on each part either x + y − A² > 0 or
/// 4xy − (A² − x − y)² > 0 is certified. Either one gives A² < (√x + √y)².
fn base_cover(d: &PieceData, g: &RatFunc, f: &RatFunc, open: (bool, bool)) -> Evidence {
    let mut parts = Vec::new();
    let mut stack = vec![(d.interval.0.clone(), d.interval.1.clone(), 0usize)];
    while let Some((a, b, depth)) = stack.pop() {
        let oa = open.0 && a == d.interval.0;
        let ob = open.1 && b == d.interval.1;
        let mut done = false;
        for (branch, h) in [("x+y-A^2 > 0", g), ("4xy-(A^2-x-y)^2 > 0", f)] {
            let factors = evidence::ratfunc_factors(h, d, &a, &b, (oa, ob));
            if sign_product(&factors) == Some(1) {
                parts.push(CoverPart { branch: branch.into(), interval: (a.clone(), b.clone()), factors });
                done = true;
                break;
            }
        }
        if !done {
            if depth >= COVER_DEPTH {
                let factors = evidence::ratfunc_factors(f, d, &a, &b, (oa, ob));
                parts.push(CoverPart { branch: "none".into(), interval: (a, b), factors });
                continue;
            }
            let mid = &(&a + &b) * &Rational::frac(1, 2);
            // right half first on the stack so parts come out left to right
            stack.push((mid.clone(), b, depth + 1));
            stack.push((a, mid, depth + 1));
        }
    }
    Evidence::Cover { parts }
}

fn base_jobs<'a>(fr: &'a CurvatureFrame, l: &'a Rational) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job> = Vec::new();
    let pn = piece_name(fr.data.piece);
    for (sym, q) in [("L", &fr.l), ("M", &fr.m)] {
        for i in 0..3 {
            let pn = pn.clone();
            jobs.push(Box::new(move || {
                sign_check(format!("{}/base/{}{}", pn, sym, i + 1), format!("base curvature: {}{} > 0", sym, i + 1), &fr.data, l, &q[i], 1, vec![])
            }));
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let pn = pn.clone();
        jobs.push(Box::new(move || {
            let name = format!("{}/base/N{}{}", pn, i + 1, j + 1);
            let anchor = format!("|N{0}-N{1}| < sqrt(L{0}M{0}) + sqrt(L{1}M{1})", i + 1, j + 1);
            let deps = [format!("L{}", i + 1), format!("M{}", i + 1), format!("L{}", j + 1), format!("M{}", j + 1)]
                .iter()
                .map(|s| format!("{}/base/{}", pn, s))
                .collect();
            let a2 = fr.n[i].sub(&fr.n[j]).square();
            let x = fr.l[i].mul(&fr.m[i]);
            let y = fr.l[j].mul(&fr.m[j]);
            let s = x.add(&y);
            let g = s.sub(&a2);
            let f = x.mul(&y).scale(&Rational::int(4)).sub(&a2.sub(&s).square());
            let open = open_flags(&f, &fr.data, l);
            let ev = base_cover(&fr.data, &g, &f, open);
            make_check(name, anchor, Some(&fr.data), deps, ev)
        }));
    }
    jobs
}

/// L_i > 0, M_i > 0 and |N_i − N_j| < √(L_iM_i) + √(L_jM_j) on one piece.
pub fn check_base_positive(fr: &CurvatureFrame, l: &Rational) -> Vec<Check> {
    run_jobs(base_jobs(fr, l))
}

/// Leading and exact-mode minors of the three pair blocks of one piece.
pub struct PieceMinors {
    pub leading: Vec<Result<Vec<MinorSpectrum>, MathError>>,
    pub exact: Vec<Result<Vec<MinorSpectrum>, MathError>>,
}

pub fn piece_minors(fr: &CurvatureFrame) -> PieceMinors {
    let p = build_params(fr);
    let work: Vec<(BlockLabel, Mode)> =
        BlockLabel::PAIRS.iter().flat_map(|b| [(*b, Mode::Leading), (*b, Mode::Exact)]).collect();
    let out: Vec<_> = work.par_iter().map(|(b, mode)| leading_minors(&build_block(fr, &p, *b, *mode, false))).collect();
    let mut pm = PieceMinors { leading: vec![], exact: vec![] };
    for (n, r) in out.into_iter().enumerate() {
        if n % 2 == 0 {
            pm.leading.push(r);
        } else {
            pm.exact.push(r);
        }
    }
    pm
}

fn minor_jobs<'a>(fr: &'a CurvatureFrame, l: &'a Rational, pm: &'a PieceMinors, mode: &'a RunMode) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job> = Vec::new();
    let pn = piece_name(fr.data.piece);
    for (bi, block) in BlockLabel::PAIRS.iter().enumerate() {
        let (i, _, _) = block.indices().expect("pair block");
        for k in 1..=5 {
            let pn = pn.clone();
            let name = format!("{}/minor/{}/k{}", pn, block, k);
            let anchor = format!("leading eps-coefficient of the {}x{} leading minor of {} > 0", k, k, block);
            let deps = if k == 1 { vec![format!("{}/fatness/gamma{}", pn, i + 1)] } else { vec![] };
            jobs.push(Box::new(move || match &pm.leading[bi] {
                Ok(s) => sign_check(name.clone(), anchor.clone(), &fr.data, l, &s[k - 1].leading, 1, deps.clone()),
                Err(e) => unavailable(name.clone(), anchor.clone(), Some(&fr.data), e.to_string()),
            }));
            if let RunMode::Exact(eps) = mode {
                let name = format!("{}/minor-exact/{}/k{}", pn, block, k);
                let anchor = format!("{}x{} leading minor of {} at eps = {} > 0 (fixed-eps extension)", k, k, block, eps);
                jobs.push(Box::new(move || match pm.exact[bi].as_ref().map_err(|e| e.clone()).and_then(|s| s[k - 1].det.eval_eps(eps)) {
                    Ok(f) => sign_check(name.clone(), anchor.clone(), &fr.data, l, &f, 1, vec![]),
                    Err(e) => unavailable(name.clone(), anchor.clone(), Some(&fr.data), e.to_string()),
                }));
            }
        }
    }
    jobs
}

/// Sign certificates of all leading minors on every piece.
pub fn check_minors(m: &PiecewiseMetric, mode: &RunMode) -> Vec<Check> {
    let frames: Vec<CurvatureFrame> = (0..m.num_pieces()).into_par_iter().map(|p| frame_for_piece(m, p)).collect();
    let minors: Vec<PieceMinors> = frames.par_iter().map(piece_minors).collect();
    let jobs = frames.iter().zip(&minors).flat_map(|(fr, pm)| minor_jobs(fr, &m.l, pm, mode)).collect();
    run_jobs(jobs)
}

fn tally(name: String, anchor: &str, d: &PieceData, compared: usize, mismatched: usize) -> Check {
    make_check(name, anchor.to_string(), Some(d), vec![], Evidence::Tally { compared, mismatched })
}

/// Cross-checks against the general curvature formulas.
fn oracle_jobs<'a>(fr: &'a CurvatureFrame, pm: &'a PieceMinors, cfg: &'a VerifyConfig) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job> = Vec::new();
    let pn = piece_name(fr.data.piece);
    let d = &fr.data;
    {
        let pn = pn.clone();
        jobs.push(Box::new(move || {
            let general = UnitTensor::new(d).all();
            let rep = residuals_against(fr, &general, completed_table(fr));
            let bad = rep.table_mismatches.len() + rep.nonzero_unlisted.len() + rep.n_leading_matches.iter().filter(|x| !**x).count();
            tally(format!("{}/oracle/components", pn), "curvature components equal the general cohomogeneity-one formulas", d, rep.components_checked, bad)
        }));
    }
    {
        let pn = pn.clone();
        jobs.push(Box::new(move || {
            let ok = base_paths_agree(d);
            tally(format!("{}/oracle/base", pn), "L, M, N agree with the single-orbit general formulas", d, 1, usize::from(!ok))
        }));
    }
    {
        let pn = pn.clone();
        jobs.push(Box::new(move || {
            let name = format!("{}/oracle/symmetries", pn);
            let anchor = "curvature tensor symmetries and first Bianchi identity at sample points";
            match check_symmetries(d, cfg.seed, cfg.samples) {
                Ok(r) => {
                    let bad = [r.antisymmetry, r.pair_symmetry, r.bianchi].iter().filter(|x| !**x).count();
                    tally(name, anchor, d, 3, if r.points.is_empty() { 3 } else { bad })
                }
                Err(e) => unavailable(name, anchor.into(), Some(d), e.to_string()),
            }
        }));
    }
    for (bi, block) in BlockLabel::PAIRS.iter().enumerate() {
        let pn1 = pn.clone();
        jobs.push(Box::new(move || {
            let name = format!("{}/oracle/alpha-free/{}", pn1, block);
            let anchor = "lowest eps-terms of the minors do not involve alpha";
            match (&pm.leading[bi], &pm.exact[bi]) {
                (Ok(l), Ok(e)) => {
                    let v = alpha_independent(l, e);
                    tally(name, anchor, d, v.len(), v.iter().filter(|x| !**x).count())
                }
                (Err(e), _) | (_, Err(e)) => unavailable(name, anchor.into(), Some(d), e.to_string()),
            }
        }));
        let pn = pn.clone();
        jobs.push(Box::new(move || {
            let name = format!("{}/oracle/low-minors/{}", pn, block);
            let anchor = "k=2,3 minors equal their closed forms in r = beta/gamma";
            let (i, j, k) = block.indices().expect("pair block");
            match &pm.leading[bi] {
                Ok(s) => {
                    let ok2 = k2_identity(fr, i, j, &s[1].leading);
                    let ok3 = k3_identity(fr, i, j, k, &s[2].leading).unwrap_or(false);
                    tally(name, anchor, d, 2, usize::from(!ok2) + usize::from(!ok3))
                }
                Err(e) => unavailable(name, anchor.into(), Some(d), e.to_string()),
            }
        }));
    }
    jobs
}

fn printed_table_info(frames: &[CurvatureFrame]) -> Info {
    let per_piece: Vec<serde_json::Value> = frames
        .par_iter()
        .map(|fr| {
            let general = UnitTensor::new(&fr.data).all();
            let rep = residuals_against(fr, &general, curvature_table(fr));
            let labels: Vec<String> = rep.table_mismatches.iter().map(|r| format!("{}", r.label)).collect();
            serde_json::json!({
                "piece": fr.data.piece + 1,
                "rows_matched": rep.table_rows_matched,
                "mismatched": labels,
                "nonzero_unlisted": rep.nonzero_unlisted.len(),
            })
        })
        .collect();
    let holds = per_piece.iter().all(|v| v["mismatched"].as_array().map_or(false, |a| a.is_empty()));
    Info { name: "oracle/printed-table".into(), holds, detail: serde_json::Value::Array(per_piece) }
}

/// v'' ≤ 0 for the unrolled v on a grid of [0, 3L].
fn concavity_info(m: &PiecewiseMetric) -> Info {
    let (v, _) = m.map_to_3l(true);
    let three_l = &m.l * &Rational::int(3);
    let n = 60;
    let bad: Vec<String> = (0..=n)
        .map(|j| &three_l * &Rational::frac(j, n))
        .filter(|t| v.deriv(t, 2, Side::Right).signum() > 0)
        .map(|t| t.to_string())
        .collect();
    Info { name: "unrolled v concave on grid".into(), holds: bad.is_empty(), detail: serde_json::json!({ "grid": n + 1, "convex_at": bad }) }
}

/// Runs every check in order: smoothness, sign conventions, fatness, HF I/II,
/// base positivity, endpoint inequalities, cross-checks, minors.
pub fn verify(m: &PiecewiseMetric, cfg: &VerifyConfig) -> Certificate {
    verify_timed(m, cfg).0
}

/// Wall-clock time per stage of a run; not part of the certificate.
pub type StageTimes = Vec<(&'static str, std::time::Duration)>;

pub fn verify_timed(m: &PiecewiseMetric, cfg: &VerifyConfig) -> (Certificate, StageTimes) {
    let mut times = StageTimes::new();
    let mut clock = std::time::Instant::now();
    let mut lap = |name: &'static str, times: &mut StageTimes| {
        times.push((name, clock.elapsed()));
        clock = std::time::Instant::now();
    };
    let l = &m.l;
    let frames: Vec<CurvatureFrame> = (0..m.num_pieces()).into_par_iter().map(|p| frame_for_piece(m, p)).collect();
    lap("frames", &mut times);
    let minors: Vec<PieceMinors> = frames.par_iter().map(piece_minors).collect();
    lap("minor determinants", &mut times);

    let (mut checks, c3_info) = check_smoothness_entries(m);
    checks.extend(check_sign_conventions(m));
    let mut jobs: Vec<Job> = Vec::new();
    for fr in &frames {
        jobs.extend(fatness_jobs(fr, l));
    }
    for fr in &frames {
        jobs.extend(hyperfatness_jobs(fr, l));
    }
    for fr in &frames {
        jobs.extend(base_jobs(fr, l));
    }
    checks.extend(run_jobs(jobs));
    match check_endpoint_inequalities(m) {
        Ok(c) => checks.extend(c),
        Err(e) => {
            for at in ["t=0", "t=L"] {
                checks.push(unavailable(format!("endpoint/{}", at), "positive curvature at the collapse point".into(), None, e.to_string()));
            }
        }
    }
    lap("auxiliary conditions", &mut times);
    let jobs: Vec<Job> = frames.iter().zip(&minors).flat_map(|(fr, pm)| oracle_jobs(fr, pm, cfg)).collect();
    checks.extend(run_jobs(jobs));
    lap("cross-checks", &mut times);
    let jobs: Vec<Job> = frames.iter().zip(&minors).flat_map(|(fr, pm)| minor_jobs(fr, l, pm, &cfg.mode)).collect();
    checks.extend(run_jobs(jobs));
    lap("minor certificates", &mut times);

    let informational = vec![c3_info, printed_table_info(&frames), concavity_info(m)];
    lap("diagnostics", &mut times);
    let overall = Outcome::from_bool(checks.iter().all(|c| c.verdict.passed()));
    let (mode, eps) = match &cfg.mode {
        RunMode::Leading => ("leading".to_string(), None),
        RunMode::Exact(e) => ("exact".to_string(), Some(e.clone())),
    };
    let cert = Certificate {
        metric_sha256: m.fingerprint(),
        mode,
        config: ConfigRecord { seed: cfg.seed, eps, samples: cfg.samples },
        checks,
        informational,
        overall,
    };
    (cert, times)
}

/// Grid t_j = jL/(n−1), j = 0..n; at a breakpoint the piece to the right is
/// used (the last piece at t = L).
pub fn grid(m: &PiecewiseMetric, n: usize) -> Vec<(usize, Rational)> {
    let pts: Vec<Rational> = if n <= 1 {
        vec![Rational::zero(), m.l.clone()]
    } else {
        (0..n).map(|j| &m.l * &Rational::frac(j as i64, n as i64 - 1)).collect()
    };
    let last = m.num_pieces() - 1;
    pts.into_iter()
        .map(|t| {
            let p = (0..m.num_pieces()).find(|&p| t >= m.breakpoints[p] && t < m.breakpoints[p + 1]).unwrap_or(last);
            (p, t)
        })
        .collect()
}

/// Exact values of the lowest ε-coefficients of the leading minors of
/// `block` on the grid, one column per k in 1..=5.
pub fn minor_curves(m: &PiecewiseMetric, block: BlockLabel, n: usize) -> Result<Vec<(Rational, Vec<Rational>)>, MathError> {
    let frames: Vec<CurvatureFrame> = (0..m.num_pieces()).into_par_iter().map(|p| frame_for_piece(m, p)).collect();
    let spectra: Vec<Vec<MinorSpectrum>> = frames
        .par_iter()
        .map(|fr| leading_minors(&build_block(fr, &build_params(fr), block, Mode::Leading, false)))
        .collect::<Result<_, _>>()?;
    grid(m, n)
        .into_iter()
        .map(|(p, t)| {
            let vals = spectra[p].iter().map(|s| frames[p].data.at(&s.leading, &t)).collect::<Result<Vec<_>, _>>()?;
            Ok((t, vals))
        })
        .collect()
}

#[cfg(test)]
mod tests;
