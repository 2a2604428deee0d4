mod plot;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use poscurv::certify::{self, replay, Check, RunMode, VerifyConfig};
use poscurv::curvature::{frame_for_piece, UnitTensor};
use poscurv::exactmath::{IntPoly, Rational};
use poscurv::metricdef::{check_smoothness, PiecewiseMetric};
use poscurv::sturm::{certify_on, evaluate_chain, sturm_sequence, Interval};
use poscurv::thorpe::{build_block, build_params, leading_minors, BlockLabel, Mode as BlockMode};

#[derive(Parser, Debug)]
#[command(name = "poscurv", version, about = "Exact positivity certificates for cohomogeneity-one connection metrics")]
struct Cli {
    /// leading: lowest ε-coefficients of the minors; exact: also the full minors at --eps
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Leading)]
    mode: ModeArg,
    /// ε for exact mode, a rational p/q with 0 < ε ≤ 1
    #[arg(long, global = true)]
    eps: Option<String>,
    /// Seed for the sample points of the tensor-symmetry checks
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads (default: available cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output file (stdout when absent)
    #[arg(long, short = 'o', global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Leading,
    Exact,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every check and write the certificate
    Verify { metric: PathBuf },
    /// Sturm chain and root count of one polynomial on an interval
    Sturm {
        /// Integer coefficients from the constant term up, as a JSON array
        #[arg(long)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        open_a: bool,
        #[arg(long)]
        open_b: bool,
    },
    /// Boundary and junction conditions
    Smoothness { metric: PathBuf },
    /// β_i > 0 and γ_i > 0 on every piece
    Fatness { metric: PathBuf },
    /// Positive curvature of the base on every piece
    Base { metric: PathBuf },
    /// Sign certificates of all leading minors
    Minors { metric: PathBuf },
    /// Frame quantities and curvature components as integer coefficient arrays
    DumpCurvature { metric: PathBuf },
    /// Leading minors of every block and piece
    DumpMinors { metric: PathBuf },
    /// Sampled curves as CSV or SVG
    Plot {
        metric: PathBuf,
        #[arg(long, value_enum, default_value_t = plot::What::V)]
        what: plot::What,
        #[arg(long, value_enum, default_value_t = plot::Format::Csv)]
        format: plot::Format,
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Re-check a certificate file with the independent Sturm counter
    Replay { certificate: PathBuf },
}

/// An input problem; reported with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn load_metric(path: &Path) -> Result<PiecewiseMetric, InputError> {
    let s = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {}", path.display(), e)))?;
    PiecewiseMetric::from_json(&s).map_err(|e| InputError(format!("{}: {}", path.display(), e)))
}

fn parse_rational(s: &str, what: &str) -> Result<Rational, InputError> {
    s.parse().map_err(|_| InputError(format!("{} is not a rational p/q: {:?}", what, s)))
}

fn run_mode(cli: &Cli) -> Result<RunMode, InputError> {
    match (cli.mode, &cli.eps) {
        (ModeArg::Leading, None) => Ok(RunMode::Leading),
        (ModeArg::Leading, Some(_)) => Err(InputError("--eps needs --mode exact".into())),
        (ModeArg::Exact, None) => Err(InputError("--mode exact needs --eps".into())),
        (ModeArg::Exact, Some(e)) => {
            let eps = parse_rational(e, "--eps")?;
            if eps.signum() <= 0 || eps > Rational::one() {
                return Err(InputError(format!("--eps must satisfy 0 < eps <= 1, got {}", eps)));
            }
            Ok(RunMode::Exact(eps))
        }
    }
}

/// Writes via a temporary file in the target directory and a rename.
fn write_atomic(path: &Path, data: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{}.tmp{}", name, std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(data.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

fn emit(cli: &Cli, data: &str) -> Result<(), InputError> {
    match &cli.out {
        Some(p) => write_atomic(p, data).map_err(|e| InputError(format!("{}: {}", p.display(), e))),
        None => {
            print!("{}", data);
            Ok(())
        }
    }
}

fn emit_json(cli: &Cli, v: &impl serde::Serialize) -> Result<(), InputError> {
    emit(cli, &(serde_json::to_string_pretty(v)? + "\n"))
}

fn status(pass: bool) -> ExitCode {
    ExitCode::from(if pass { 0 } else { 1 })
}

fn report_failures(checks: &[&Check]) {
    for c in checks.iter().filter(|c| !c.verdict.passed()) {
        eprintln!("FAIL {}: {}", c.name, c.anchor);
    }
}

fn emit_checks(cli: &Cli, checks: Vec<Check>) -> Result<ExitCode, InputError> {
    let pass = checks.iter().all(|c| c.verdict.passed());
    report_failures(&checks.iter().collect::<Vec<_>>());
    emit_json(cli, &json!({ "checks": checks, "overall": if pass { "PASS" } else { "FAIL" } }))?;
    Ok(status(pass))
}

fn cmd_sturm(cli: &Cli, coeffs: &str, a: &str, b: &str, open_a: bool, open_b: bool) -> Result<ExitCode, InputError> {
    let raw: Vec<Value> = serde_json::from_str(coeffs).map_err(|e| InputError(format!("--coeffs: {}", e)))?;
    let strs: Vec<String> = raw
        .iter()
        .map(|v| match v {
            Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
            Value::String(s) => Ok(s.clone()),
            other => Err(InputError(format!("--coeffs: not an integer: {}", other))),
        })
        .collect::<Result<_, _>>()?;
    let p = IntPoly::from_strings(&strs)?;
    if p.is_zero() {
        return Err(InputError("--coeffs: zero polynomial".into()));
    }
    let (a, b) = (parse_rational(a, "--a")?, parse_rational(b, "--b")?);
    if a >= b {
        return Err(InputError(format!("need a < b, got a = {}, b = {}", a, b)));
    }
    let iv = Interval { a: a.clone(), b: b.clone(), open_a, open_b };
    let cert = certify_on(&p, &iv);
    let seq = sturm_sequence(&p);
    let signs = |x: &Rational| evaluate_chain(&seq, x).iter().map(|v| v.signum()).collect::<Vec<i32>>();
    let out = json!({
        "polynomial": p,
        "interval": iv,
        "squarefree_part": seq.squarefree_input,
        "multiplicity_discarded": seq.multiplicity_discarded,
        "chain": seq.terms,
        "signs_at_a": signs(&a),
        "signs_at_b": signs(&b),
        "sign_changes": [cert.sign_changes_at_a, cert.sign_changes_at_b],
        "roots_in_half_open": cert.roots_in_half_open,
        "verdict": cert.verdict,
    });
    emit_json(cli, &out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_plot(cli: &Cli, m: &PiecewiseMetric, what: plot::What, format: plot::Format, grid: usize) -> Result<ExitCode, InputError> {
    let series = plot::series(m, what, grid).map_err(InputError)?;
    let data = match format {
        plot::Format::Csv => plot::to_csv(&series),
        plot::Format::Svg => {
            let bound = (what == plot::What::V).then(|| {
                let three_l = (&m.l * &Rational::int(3)).to_f64();
                (4.0 / m.ell as f64, three_l)
            });
            let title = match what {
                plot::What::V => "v functions on [0, L] and [0, 3L]",
                plot::What::H => "h functions on [0, L] and [0, 3L]",
                plot::What::Minors => "leading coefficients of the minors",
                plot::What::Frame => "frame quantities",
            };
            plot::to_svg(&series, title, bound)
        }
    };
    emit(cli, &data)?;
    Ok(ExitCode::SUCCESS)
}

fn dump_curvature(m: &PiecewiseMetric) -> Value {
    let pieces: Vec<Value> = (0..m.num_pieces())
        .map(|p| {
            let fr = frame_for_piece(m, p);
            let quantities: BTreeMap<String, Value> = fr.named().into_iter().map(|(n, f)| (n, json!(f))).collect();
            let components: BTreeMap<String, Value> = UnitTensor::new(&fr.data).all().into_iter().map(|(l, e)| (l.to_string(), json!(e))).collect();
            json!({
                "piece": p + 1,
                "interval": fr.data.interval,
                "variable": fr.data.var.name(),
                "quantities": quantities,
                "components": components,
            })
        })
        .collect();
    json!({ "metric_sha256": m.fingerprint(), "pieces": pieces })
}

fn dump_minors(m: &PiecewiseMetric, mode: BlockMode) -> Result<Value, InputError> {
    let mut pieces = Vec::new();
    for p in 0..m.num_pieces() {
        let fr = frame_for_piece(m, p);
        let params = build_params(&fr);
        let mut blocks = BTreeMap::new();
        for b in BlockLabel::PAIRS {
            let spectra = leading_minors(&build_block(&fr, &params, b, mode, false))?;
            let v: Vec<Value> = spectra.iter().map(|s| json!({ "k": s.k, "eps_degree": s.eps_degree, "leading": s.leading, "det": s.det })).collect();
            blocks.insert(b.to_string(), v);
        }
        pieces.push(json!({ "piece": p + 1, "interval": fr.data.interval, "variable": fr.data.var.name(), "blocks": blocks }));
    }
    Ok(json!({ "metric_sha256": m.fingerprint(), "pieces": pieces }))
}

fn run(cli: &Cli) -> Result<ExitCode, InputError> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global()?;
    }
    let mode = run_mode(cli)?;
    match &cli.command {
        Command::Verify { metric } => {
            let m = load_metric(metric)?;
            let cfg = VerifyConfig { mode, seed: cli.seed, ..VerifyConfig::default() };
            let cert = certify::verify(&m, &cfg);
            report_failures(&cert.failures());
            eprintln!("{} checks, overall {:?}", cert.checks.len(), cert.overall);
            emit(cli, &(cert.to_json() + "\n"))?;
            Ok(status(cert.overall.passed()))
        }
        Command::Sturm { coeffs, a, b, open_a, open_b } => cmd_sturm(cli, coeffs, a, b, *open_a, *open_b),
        Command::Smoothness { metric } => {
            let rep = check_smoothness(&load_metric(metric)?);
            for e in rep.failures() {
                eprintln!("FAIL {}: required {}, computed {}", e.name, e.required, e.computed);
            }
            emit_json(cli, &rep)?;
            Ok(status(rep.c2))
        }
        Command::Fatness { metric } => {
            let m = load_metric(metric)?;
            let checks = (0..m.num_pieces()).flat_map(|p| certify::check_fatness(&frame_for_piece(&m, p), &m.l)).collect();
            emit_checks(cli, checks)
        }
        Command::Base { metric } => {
            let m = load_metric(metric)?;
            let checks = (0..m.num_pieces()).flat_map(|p| certify::check_base_positive(&frame_for_piece(&m, p), &m.l)).collect();
            emit_checks(cli, checks)
        }
        Command::Minors { metric } => {
            let m = load_metric(metric)?;
            emit_checks(cli, certify::check_minors(&m, &mode))
        }
        Command::DumpCurvature { metric } => {
            emit_json(cli, &dump_curvature(&load_metric(metric)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DumpMinors { metric } => {
            let block_mode = if mode == RunMode::Leading { BlockMode::Leading } else { BlockMode::Exact };
            emit_json(cli, &dump_minors(&load_metric(metric)?, block_mode)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Plot { metric, what, format, grid } => cmd_plot(cli, &load_metric(metric)?, *what, *format, *grid),
        Command::Replay { certificate } => {
            let s = fs::read_to_string(certificate).map_err(|e| InputError(format!("{}: {}", certificate.display(), e)))?;
            let rep = replay::replay_json(&s).map_err(|e| InputError(format!("{}: {}", certificate.display(), e)))?;
            for d in &rep.disagreements {
                eprintln!("DISAGREE {}", d);
            }
            emit_json(cli, &rep)?;
            Ok(status(rep.agrees()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
