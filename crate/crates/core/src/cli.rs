//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid configuration,
//! 3 numerical failure, 4 point set not reducible to `Z^2`, 5 identity check
//! failed.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::frame::{analyze, find_zak_zeros, theta_zero_certificate, GaborSystem, ZakZero};
use crate::lattice::{Matrix2x2, PointSet};
use crate::special_fn::{hermite, jacobi_defect, log_derivative_defect, theta3, HermiteIndex};
use crate::tf_operators::{
    apply_frft, intertwining_defect, FrftMethod, Grid, OperatorChain, SampledFunction, TfPoint, UnitaryOp,
    DEFAULT_HERMITE_TERMS,
};
use crate::window::Window;
use crate::zak::{
    fmt_f64, verify_identities, zak_surface_with, IdentityCheck, IdentityOptions, Truncation, ZakEvaluator,
};

#[derive(Debug, Parser)]
#[command(name = "gabor-zak", version, about = "Zak transform and frame analysis of Hermite Gabor systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zak transform on an N x N grid of the unit square (CSV plus JSON sidecar).
    ZakSurface {
        #[command(flatten)]
        window: WindowArgs,
        /// Grid size per axis (default 64).
        #[arg(long)]
        n: Option<usize>,
        /// Terms on each side of the center, or "auto".
        #[arg(long)]
        truncation: Option<String>,
        /// CSV path; the sidecar goes next to it with a .json extension.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Frame bound estimates and verdict for a Gabor system.
    FrameBounds {
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        set: SetArgs,
        /// Grid size per axis (default 1024).
        #[arg(long)]
        n: Option<usize>,
        /// JSON report path; only the verdict goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Zeros of the Zak transform of a window.
    FindZeros {
        #[command(flatten)]
        window: WindowArgs,
        /// Search grid size per axis (default 256).
        #[arg(long)]
        n: Option<usize>,
        /// Residual a reported zero must reach; never stricter than 1e-8.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// JSON output path (default stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs an identity suite and reports the largest defects.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        window: WindowArgs,
        /// Fractional Fourier angle for the frft suite.
        #[arg(long, default_value_t = 0.6)]
        angle: f64,
        /// Number of sample points.
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Allow a sampled Fourier transform in the Poisson check.
        #[arg(long)]
        allow_sampled_fourier: bool,
        /// Replaces the tolerance of every check.
        #[arg(long)]
        tolerance: Option<f64>,
        /// JSON report path (default stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fractional Fourier transform of a sampled window (CSV t,re,im,abs).
    FrftApply {
        #[command(flatten)]
        window: WindowArgs,
        /// Rotation angle r in radians.
        #[arg(long, allow_negative_numbers = true)]
        angle: f64,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// CSV path (default stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Zak,
    Theta,
    Frft,
    Intertwining,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Quadrature,
    Hermite,
    Auto,
}

impl From<Method> for FrftMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Quadrature => FrftMethod::Quadrature,
            Method::Hermite => FrftMethod::HermiteEigen { terms: DEFAULT_HERMITE_TERMS },
            Method::Auto => FrftMethod::Auto,
        }
    }
}

/// Window flags. The window is `pi(shift) F_frft V_chirp D_dilate h_n`.
#[derive(Debug, Clone, Default, Args)]
pub struct WindowArgs {
    /// Hermite order n.
    #[arg(long)]
    pub hermite: Option<usize>,
    /// Dilation factor a > 0.
    #[arg(long, allow_negative_numbers = true)]
    pub dilate: Option<f64>,
    /// Chirp rate q.
    #[arg(long, allow_negative_numbers = true)]
    pub chirp: Option<f64>,
    /// Fractional Fourier angle r.
    #[arg(long, allow_negative_numbers = true)]
    pub frft: Option<f64>,
    /// Time-frequency shift "x,omega".
    #[arg(long, allow_negative_numbers = true)]
    pub shift: Option<String>,
    /// JSON job file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Point set flags.
#[derive(Debug, Clone, Default, Args)]
pub struct SetArgs {
    /// Named set: Z2, Z2-union-half, sqrt2-square, D-sqrt2.
    #[arg(long)]
    pub set: Option<String>,
    /// Point set as JSON: {"generator": [[a,b],[c,d]], "shifts": [[x,w], ...]}.
    #[arg(long)]
    pub set_json: Option<String>,
    /// Additional coset shift "x,omega" (repeatable).
    #[arg(long, allow_negative_numbers = true)]
    pub extra_shift: Vec<String>,
    /// Rotates the set by this angle.
    #[arg(long, allow_negative_numbers = true)]
    pub rotate: Option<f64>,
}

/// Contents of a `--config` file.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default)]
    pub window: Option<Window>,
    #[serde(default)]
    pub set: Option<PointSet>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub truncation: Option<usize>,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

/// Failure of a command, with its exit code.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Run(Error),
    IdentityFailure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::IdentityFailure(_) => 5,
            CliError::Run(e) => match e {
                Error::Io(_) => 1,
                Error::InvalidArgument(_) | Error::Json(_) => 2,
                Error::IrreducibleSet(_) => 4,
                _ => 3,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Run(e) => write!(f, "{e}"),
            CliError::IdentityFailure(m) => write!(f, "identity check failed: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn parse_pair(s: &str) -> CliResult<TfPoint> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(CliError::Config(format!("expected \"x,omega\", got {s:?}")));
    }
    let num = |p: &str| p.parse::<f64>().map_err(|_| CliError::Config(format!("not a number: {p:?}")));
    Ok(TfPoint::new(num(parts[0])?, num(parts[1])?))
}

fn load_config(path: Option<&Path>) -> CliResult<JobConfig> {
    match path {
        None => Ok(JobConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))
        }
    }
}

impl WindowArgs {
    fn has_ops(&self) -> bool {
        self.dilate.is_some() || self.chirp.is_some() || self.frft.is_some() || self.shift.is_some()
    }

    /// The window from the config file with the flags applied on top.
    pub fn resolve(&self, cfg: &JobConfig) -> CliResult<Window> {
        let mut w = cfg.window.clone().unwrap_or_default();
        if let Some(n) = self.hermite {
            w.hermite = HermiteIndex(n);
        }
        if self.has_ops() {
            let mut ops = Vec::new();
            if let Some(z) = &self.shift {
                ops.push(UnitaryOp::shift(parse_pair(z)?));
            }
            if let Some(r) = self.frft {
                ops.push(UnitaryOp::Frft { r });
            }
            if let Some(q) = self.chirp {
                ops.push(UnitaryOp::Chirp { q });
            }
            if let Some(a) = self.dilate {
                ops.push(UnitaryOp::Dilation { a });
            }
            w.chain = OperatorChain::new(ops).map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(w)
    }
}

/// Resolves a named point set.
pub fn preset(name: &str) -> CliResult<PointSet> {
    match name {
        "Z2" => Ok(PointSet::integer()),
        "Z2-union-half" => Ok(PointSet::z2_union_half()),
        "sqrt2-square" => Ok(PointSet::sqrt2_square()),
        "D-sqrt2" => Ok(PointSet::d_sqrt2()),
        other => {
            Err(CliError::Config(format!("unknown set {other:?}; expected Z2, Z2-union-half, sqrt2-square or D-sqrt2")))
        }
    }
}

impl SetArgs {
    pub fn resolve(&self, cfg: &JobConfig) -> CliResult<PointSet> {
        let mut set = match (&self.set, &self.set_json) {
            (Some(_), Some(_)) => return Err(CliError::Config("give either --set or --set-json".into())),
            (Some(name), None) => preset(name)?,
            (None, Some(json)) => {
                serde_json::from_str(json).map_err(|e| CliError::Config(format!("--set-json: {e}")))?
            }
            (None, None) => cfg.set.clone().unwrap_or_else(PointSet::integer),
        };
        for s in &self.extra_shift {
            set = set.with_shift(parse_pair(s)?).map_err(|e| CliError::Config(e.to_string()))?;
        }
        if let Some(r) = self.rotate {
            set = set.transform(&Matrix2x2::rotation(r))?;
        }
        Ok(set)
    }
}

fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Run(Error::Io(e))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::Run(Error::Io(e)))
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Run(Error::Json(e)))?;
    s.push('\n');
    Ok(s)
}

/// Deterministic points spread over `[-2, 2)^2` (additive recurrence).
pub fn sample_points(count: usize) -> Vec<TfPoint> {
    let a1 = 0.754_877_666_246_692_7;
    let a2 = 0.569_840_290_998_053_3;
    (1..=count)
        .map(|i| {
            let i = i as f64;
            TfPoint::new(4.0 * (0.5 + a1 * i).fract() - 2.0, 4.0 * (0.5 + a2 * i).fract() - 2.0)
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct SuiteReport {
    suite: String,
    checks: Vec<IdentityCheck>,
    passed: bool,
}

fn check(name: &str, defect: f64, tolerance: f64, samples: usize) -> IdentityCheck {
    IdentityCheck { name: name.into(), max_defect: defect, tolerance, samples, passed: defect <= tolerance }
}

fn theta_checks() -> CliResult<Vec<IdentityCheck>> {
    let cert = theta_zero_certificate()?;
    let th = theta3(1.0)?;
    let alphas = [0.25, 0.5, 1.0, 2.0, 4.0];
    let mut jac: f64 = 0.0;
    let mut logd: f64 = 0.0;
    for a in alphas {
        jac = jac.max(jacobi_defect(a)?);
        logd = logd.max(log_derivative_defect(a)?);
    }
    Ok(vec![
        check("theta_combination", (th.value + 4.0 * th.derivative).abs(), 1e-13, 1),
        check("zak_theta_agreement", 2f64.powf(0.25) * cert.difference, 1e-13, 1),
        check("zak_origin_zero", cert.zak_value.abs(), 1e-12, 1),
        check("even_zero", cert.even_zero, 1e-12, 1),
        check("jacobi", jac, 1e-12, alphas.len()),
        check("log_derivative", logd, 1e-12, alphas.len()),
    ])
}

/// Relative defects of `F_r h_n = e^{-i n r} h_n` for both methods and of
/// `F_a F_b = F_{a+b}`.
pub fn frft_checks(n: HermiteIndex, r: f64, tolerance: f64) -> crate::Result<Vec<IdentityCheck>> {
    let grid = Grid::default();
    let f = SampledFunction::from_fn(grid, |t| Complex64::new(hermite(n, t), 0.0));
    let expect = f.scale(Complex64::from_polar(1.0, -(n.0 as f64) * r));
    let quad = apply_frft(r, &f, FrftMethod::Quadrature)?.relative_distance(&expect);
    let herm = apply_frft(r, &f, FrftMethod::HermiteEigen { terms: DEFAULT_HERMITE_TERMS })?.relative_distance(&expect);
    let half = apply_frft(0.5 * r, &f, FrftMethod::Auto)?;
    let twice = apply_frft(0.5 * r, &half, FrftMethod::Auto)?;
    let semigroup = twice.relative_distance(&apply_frft(r, &f, FrftMethod::Auto)?);
    Ok(vec![
        check("eigenvalue_quadrature", quad, tolerance, 1),
        check("eigenvalue_hermite", herm, tolerance, 1),
        check("semigroup", semigroup, tolerance, 1),
    ])
}

/// Largest intertwining defect over `points` for each operator kind.
pub fn intertwining_checks(n: HermiteIndex, points: &[TfPoint], tolerance: f64) -> crate::Result<Vec<IdentityCheck>> {
    let ops = [
        ("dilation", UnitaryOp::Dilation { a: 1.7 }),
        ("chirp", UnitaryOp::Chirp { q: 0.8 }),
        ("frft", UnitaryOp::Frft { r: 0.6 }),
        ("fourier", UnitaryOp::Fourier),
    ];
    let grid = Grid::default();
    let mut out = Vec::new();
    for (name, op) in ops {
        let mut worst: f64 = 0.0;
        for z in points {
            worst = worst.max(intertwining_defect(&op, *z, n, grid)?);
        }
        out.push(check(&format!("intertwining_{name}"), worst, tolerance, points.len()));
    }
    Ok(out)
}

fn finish_suite(suite: &str, checks: Vec<IdentityCheck>, out: Option<&Path>) -> CliResult<()> {
    let passed = checks.iter().all(|c| c.passed);
    let report = SuiteReport { suite: suite.into(), checks, passed };
    write_output(out, &to_json(&report)?)?;
    if passed {
        Ok(())
    } else {
        let failed: Vec<String> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
        Err(CliError::IdentityFailure(failed.join(", ")))
    }
}

fn truncation_of(arg: Option<&str>, cfg: &JobConfig) -> CliResult<Truncation> {
    match arg {
        None => Ok(cfg.truncation.map_or(Truncation::Auto, Truncation::Fixed)),
        Some("auto") => Ok(Truncation::Auto),
        Some(s) => s
            .parse::<usize>()
            .map(Truncation::Fixed)
            .map_err(|_| CliError::Config(format!("--truncation must be a count or \"auto\", got {s:?}"))),
    }
}

#[derive(Debug, Serialize)]
struct ZeroReport<'a> {
    window: &'a Window,
    resolution: usize,
    zeros: Vec<ZakZero>,
}

/// Runs one parsed command.
pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::ZakSurface { window, n, truncation, out } => {
            let cfg = load_config(window.config.as_deref())?;
            let w = window.resolve(&cfg)?;
            let n = n.or(cfg.n).unwrap_or(64);
            let trunc = truncation_of(truncation.as_deref(), &cfg)?;
            let surface = zak_surface_with(&ZakEvaluator::new(&w)?, n, trunc)?;
            match out.or(cfg.out) {
                Some(path) => surface.write_files(&path, &path.with_extension("json"))?,
                None => surface.write_csv(std::io::stdout().lock())?,
            }
            Ok(())
        }
        Command::FrameBounds { window, set, n, out } => {
            let cfg = load_config(window.config.as_deref())?;
            let w = window.resolve(&cfg)?;
            let set = set.resolve(&cfg)?;
            let n = n.or(cfg.n).unwrap_or(1024);
            let report = analyze(&GaborSystem::single(w, set), n)?;
            let json = to_json(&report)?;
            match out.or(cfg.out) {
                Some(path) => {
                    write_output(Some(&path), &json)?;
                    println!("{}", report.verdict);
                }
                None => write_output(None, &json)?,
            }
            eprintln!("verdict: {}", report.verdict);
            Ok(())
        }
        Command::FindZeros { window, n, tol, out } => {
            let cfg = load_config(window.config.as_deref())?;
            let w = window.resolve(&cfg)?;
            let n = n.or(cfg.n).unwrap_or(256);
            let zeros = find_zak_zeros(&w, n, tol)?;
            let report = ZeroReport { window: &w, resolution: n, zeros };
            write_output(out.or(cfg.out).as_deref(), &to_json(&report)?)
        }
        Command::Verify { suite, window, angle, points, allow_sampled_fourier, tolerance, out } => {
            let cfg = load_config(window.config.as_deref())?;
            let w = window.resolve(&cfg)?;
            let out = out.or(cfg.out);
            let pts = sample_points(points.max(1));
            let mut checks = match suite {
                Suite::Zak => {
                    let opts = IdentityOptions { allow_sampled_fourier, ..IdentityOptions::default() };
                    verify_identities(&w, &pts, &opts)?.checks
                }
                Suite::Theta => theta_checks()?,
                Suite::Frft => frft_checks(w.hermite, angle, 1e-7)?,
                Suite::Intertwining => {
                    let pts: Vec<TfPoint> = pts.iter().take(50).copied().collect();
                    intertwining_checks(w.hermite, &pts, 1e-6)?
                }
            };
            if let Some(tol) = tolerance {
                for c in &mut checks {
                    c.tolerance = tol;
                    c.passed = c.max_defect <= tol;
                }
            }
            let name = format!("{suite:?}").to_lowercase();
            finish_suite(&name, checks, out.as_deref())
        }
        Command::FrftApply { window, angle, method, out } => {
            let cfg = load_config(window.config.as_deref())?;
            let w = window.resolve(&cfg)?;
            let f = w.sample(Grid::default())?;
            let g = apply_frft(angle, &f, method.into())?;
            let mut text = String::from("t,re,im,abs\n");
            for (t, v) in g.grid().points().zip(g.values()) {
                text.push_str(&format!("{},{},{},{}\n", fmt_f64(t), fmt_f64(v.re), fmt_f64(v.im), fmt_f64(v.norm())));
            }
            write_output(out.or(cfg.out).as_deref(), &text)
        }
    }
}

/// Parses the arguments, runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(CliError::Run(Error::Io(e))) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
