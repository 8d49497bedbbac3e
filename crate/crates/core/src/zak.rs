//! The Zak transform `Z f(x, w) = sum_k f(k - x) e^{2 pi i w k}`.
//!
//! Series are summed over `k` centered on the window's mass, and every value
//! carries a bound on the dropped tail computed from the window envelope
//! (see [`Window::envelope`]). Windows whose chain needs sampled operators
//! are interpolated from a grid instead; those values carry an additional
//! interpolation budget.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tf_operators::{Grid, SampledFunction, TfPoint, UnitaryOp};
pub use crate::window::{Parity, Profile, Window};

/// Tail target for automatic truncation.
pub const AUTO_TAIL_TARGET: f64 = 1e-14;
/// Smallest automatic truncation.
pub const MIN_TRUNCATION: usize = 8;
/// Largest automatic truncation.
pub const MAX_TRUNCATION: usize = 64;
/// Interpolation error allowance for sampled windows.
pub const INTERPOLATION_BUDGET: f64 = 1e-9;

/// How many terms on each side of the center to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Truncation {
    #[default]
    Auto,
    Fixed(usize),
}

/// A Zak transform value with its error bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZakValue {
    pub value: Complex64,
    /// Bound on the sum of the dropped terms.
    pub tail_bound: f64,
    /// Interpolation allowance (zero for closed-form windows).
    pub interpolation_budget: f64,
    /// Half-width of the summation range.
    pub truncation: usize,
}

enum Kind {
    Closed(Profile),
    Sampled { f: SampledFunction, edge: f64 },
}

/// Prepared Zak evaluation for one window.
pub struct ZakEvaluator {
    window: Window,
    kind: Kind,
}

impl ZakEvaluator {
    /// Prepares `window`, sampling it on the default grid if needed.
    pub fn new(window: &Window) -> Result<Self> {
        Self::with_grid(window, Grid::default())
    }

    pub fn with_grid(window: &Window, grid: Grid) -> Result<Self> {
        let window = window.simplified();
        let kind = match window.profile() {
            Some(p) => Kind::Closed(p),
            None => {
                let f = window.sample(grid)?;
                let peak = f.max_abs();
                let edge = f
                    .grid()
                    .points()
                    .zip(f.values())
                    .filter(|(t, _)| *t <= grid.start + 1.0 || *t >= grid.end() - 1.0)
                    .map(|(_, v)| v.norm())
                    .fold(0.0, f64::max);
                if edge > 1e-10 * peak {
                    return Err(Error::UnboundedWindow(format!(
                        "{window} does not decay inside the sampling grid (edge {edge:e})"
                    )));
                }
                Kind::Sampled { f, edge }
            }
        };
        Ok(ZakEvaluator { window, kind })
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn is_sampled(&self) -> bool {
        matches!(self.kind, Kind::Sampled { .. })
    }

    /// The window value at `t`.
    pub fn window_value(&self, t: f64) -> Complex64 {
        match &self.kind {
            Kind::Closed(_) => self.window.eval(t).expect("closed form"),
            Kind::Sampled { f, .. } => f.at(t),
        }
    }

    fn center(&self) -> f64 {
        match &self.kind {
            Kind::Closed(p) => p.center(),
            Kind::Sampled { .. } => 0.0,
        }
    }

    /// Chooses the summation range for `f(spacing k - x)`.
    ///
    /// Returns `(k_center, half_width, tail_bound)`.
    fn range(&self, spacing: f64, x: f64, trunc: Truncation) -> (i64, usize, f64) {
        let k_c = ((x + self.center()) / spacing).round() as i64;
        match &self.kind {
            Kind::Closed(p) => {
                let cap = match trunc {
                    Truncation::Auto => MAX_TRUNCATION,
                    Truncation::Fixed(k) => k.max(1),
                };
                let reach = cap + 64;
                let env = |k: i64| {
                    let t = spacing * k as f64 - x;
                    p.amplitude * crate::special_fn::hermite_envelope(self.window.hermite, p.slope * t + p.offset)
                };
                // suffix[j] = sum over offsets >= j of both sides
                let mut suffix = vec![0.0; reach + 2];
                for j in (1..=reach).rev() {
                    suffix[j] = suffix[j + 1] + env(k_c + j as i64) + env(k_c - j as i64);
                }
                match trunc {
                    Truncation::Fixed(k) => {
                        let k = k.max(1);
                        (k_c, k, suffix[k + 1])
                    }
                    Truncation::Auto => {
                        let k = (MIN_TRUNCATION..=MAX_TRUNCATION)
                            .find(|&k| suffix[k + 1] < AUTO_TAIL_TARGET)
                            .unwrap_or(MAX_TRUNCATION);
                        (k_c, k, suffix[k + 1])
                    }
                }
            }
            Kind::Sampled { f, edge } => {
                let g = f.grid();
                let lo = ((g.start + x) / spacing).ceil() as i64;
                let hi = ((g.end() + x) / spacing).floor() as i64;
                let half = (k_c - lo).max(hi - k_c).max(0) as usize;
                (k_c, half, 2.0 * edge)
            }
        }
    }

    fn lattice_sum<P>(&self, spacing: f64, x: f64, phase: P, trunc: Truncation) -> ZakValue
    where
        P: Fn(i64) -> Complex64,
    {
        let (k_c, half, tail_bound) = self.range(spacing, x, trunc);
        let half_i = half as i64;
        let mut value = Complex64::new(0.0, 0.0);
        // outermost terms first
        for off in (0..=half_i).rev() {
            for k in if off == 0 { vec![k_c] } else { vec![k_c - off, k_c + off] } {
                let w = self.window_value(spacing * k as f64 - x);
                if w.norm_sqr() > 0.0 {
                    value += w * phase(k);
                }
            }
        }
        ZakValue {
            value,
            tail_bound,
            interpolation_budget: if self.is_sampled() { INTERPOLATION_BUDGET } else { 0.0 },
            truncation: half,
        }
    }

    /// `Z w(x, omega)`.
    pub fn zak(&self, x: f64, omega: f64, trunc: Truncation) -> ZakValue {
        self.lattice_sum(1.0, x, |k| unit_phase(omega * k as f64), trunc)
    }

    /// `Z_a w(x, omega) = sqrt(a) sum_k w(a k - x) e^{2 pi i a k omega}`.
    pub fn zak_scaled(&self, a: f64, x: f64, omega: f64, trunc: Truncation) -> Result<ZakValue> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidArgument(format!("scaled Zak transform needs a > 0, got {a}")));
        }
        let mut v = self.lattice_sum(a, x, |k| unit_phase(a * k as f64 * omega), trunc);
        v.value *= a.sqrt();
        v.tail_bound *= a.sqrt();
        Ok(v)
    }

    /// One column `x = i / n` of a surface; `roots[m] = e^{2 pi i m / n}`.
    fn column(&self, x: f64, roots: &[Complex64], trunc: Truncation) -> (Vec<Complex64>, f64, usize) {
        let n = roots.len() as i64;
        let (k_c, half, tail) = self.range(1.0, x, trunc);
        let half_i = half as i64;
        let terms: Vec<(i64, Complex64)> = (-half_i..=half_i)
            .map(|off| {
                let k = k_c + off;
                (k, self.window_value(k as f64 - x))
            })
            .filter(|(_, w)| w.norm_sqr() > 0.0)
            .collect();
        let values = (0..n)
            .map(|j| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, w) in terms.iter().rev() {
                    acc += w * roots[(j * k).rem_euclid(n) as usize];
                }
                acc
            })
            .collect();
        (values, tail, half)
    }
}

/// `e^{2 pi i t}`, exact at multiples of 1/4.
pub fn unit_phase(t: f64) -> Complex64 {
    let f = t.rem_euclid(1.0);
    let quarter = f * 4.0;
    if quarter == quarter.round() {
        return match quarter as i64 % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * f)
}

/// `e^{2 pi i m / n}` for `m = 0..n`.
pub fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n).map(|m| unit_phase(m as f64 / n as f64)).collect()
}

/// `Z w(x, omega)` with its tail bound.
pub fn zak_point(w: &Window, x: f64, omega: f64, trunc: Truncation) -> Result<ZakValue> {
    Ok(ZakEvaluator::new(w)?.zak(x, omega, trunc))
}

/// `Z_a w(x, omega)`.
pub fn zak_scaled(a: f64, w: &Window, x: f64, omega: f64) -> Result<ZakValue> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidArgument(format!("scaled Zak transform needs a > 0, got {a}")));
    }
    ZakEvaluator::new(w)?.zak_scaled(a, x, omega, Truncation::Auto)
}

/// Zak transform values on the nodes `(i/N, j/N)` of `[0, 1)^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZakSurface {
    pub window: Window,
    pub resolution: usize,
    /// Largest half-width used over all columns.
    pub truncation: usize,
    /// Largest tail bound over all nodes.
    pub tail_bound: f64,
    pub interpolation_budget: f64,
    /// Row major in `x`: `values[i * N + j]` is the node `(i/N, j/N)`.
    pub values: Vec<Complex64>,
}

/// Sidecar metadata of a surface CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZakSurfaceMeta {
    pub window: Window,
    pub resolution: usize,
    pub truncation: usize,
    pub tail_bound: f64,
    pub interpolation_budget: f64,
}

/// Evaluates the Zak transform on an `N x N` grid.
pub fn zak_surface(w: &Window, n: usize) -> Result<ZakSurface> {
    zak_surface_with(&ZakEvaluator::new(w)?, n, Truncation::Auto)
}

pub fn zak_surface_with(ev: &ZakEvaluator, n: usize, trunc: Truncation) -> Result<ZakSurface> {
    if n < 8 {
        return Err(Error::InvalidArgument(format!("surface resolution must be at least 8, got {n}")));
    }
    let roots = roots_of_unity(n);
    let columns: Vec<(Vec<Complex64>, f64, usize)> =
        (0..n).into_par_iter().map(|i| ev.column(i as f64 / n as f64, &roots, trunc)).collect();
    let truncation = columns.iter().map(|c| c.2).max().unwrap_or(0);
    let tail_bound = columns.iter().map(|c| c.1).fold(0.0, f64::max);
    let values = columns.into_iter().flat_map(|c| c.0).collect();
    Ok(ZakSurface {
        window: ev.window().clone(),
        resolution: n,
        truncation,
        tail_bound,
        interpolation_budget: if ev.is_sampled() { INTERPOLATION_BUDGET } else { 0.0 },
        values,
    })
}

impl ZakSurface {
    pub fn value(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.resolution + j]
    }

    pub fn point(&self, i: usize, j: usize) -> TfPoint {
        let n = self.resolution as f64;
        TfPoint::new(i as f64 / n, j as f64 / n)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Node with the smallest modulus, `(i, j, |Z|)`.
    pub fn abs_min(&self) -> (usize, usize, f64) {
        let (idx, v) = self.values.iter().map(|v| v.norm()).enumerate().fold((0, f64::INFINITY), |acc, (i, v)| {
            if v < acc.1 {
                (i, v)
            } else {
                acc
            }
        });
        (idx / self.resolution, idx % self.resolution, v)
    }

    /// `|Z|^2` at every node.
    pub fn abs_sqr(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    /// Largest difference of `|Z|` between neighbouring nodes, including the
    /// wrap-around neighbours (`|Z|` is 1-periodic in both variables).
    pub fn grid_slack(&self) -> f64 {
        let m: Vec<f64> = self.values.iter().map(|v| v.norm()).collect();
        max_neighbor_difference(&m, self.resolution)
    }

    pub fn meta(&self) -> ZakSurfaceMeta {
        ZakSurfaceMeta {
            window: self.window.clone(),
            resolution: self.resolution,
            truncation: self.truncation,
            tail_bound: self.tail_bound,
            interpolation_budget: self.interpolation_budget,
        }
    }

    /// Writes `x,omega,re,im,abs` rows in node order.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        wtr.write_record(["x", "omega", "re", "im", "abs"])?;
        for i in 0..self.resolution {
            for j in 0..self.resolution {
                let p = self.point(i, j);
                let v = self.value(i, j);
                wtr.write_record([fmt_f64(p.x), fmt_f64(p.omega), fmt_f64(v.re), fmt_f64(v.im), fmt_f64(v.norm())])?;
            }
        }
        wtr.flush()?;
        Ok(())
    }

    /// Writes the CSV and its JSON sidecar.
    pub fn write_files(&self, csv_path: &Path, json_path: &Path) -> Result<()> {
        self.write_csv(std::io::BufWriter::new(std::fs::File::create(csv_path)?))?;
        let mut json = serde_json::to_string_pretty(&self.meta())?;
        json.push('\n');
        std::fs::write(json_path, json)?;
        Ok(())
    }
}

/// Shortest round-trip decimal form.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

/// Largest absolute difference between 4-neighbours on an `n x n` torus.
pub(crate) fn max_neighbor_difference(m: &[f64], n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let v = m[i * n + j];
            worst = worst.max((v - m[((i + 1) % n) * n + j]).abs());
            worst = worst.max((v - m[i * n + (j + 1) % n]).abs());
        }
    }
    worst
}

/// Options for [`verify_identities`].
#[derive(Debug, Clone)]
pub struct IdentityOptions {
    /// Shifts `(xi, eta)` for the covariance check.
    pub shifts: Vec<TfPoint>,
    /// Compute the Fourier transform by quadrature when no closed form exists.
    pub allow_sampled_fourier: bool,
    pub tolerance: f64,
    pub zero_tolerance: f64,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        IdentityOptions {
            shifts: vec![TfPoint::new(0.25, -0.5), TfPoint::new(-0.7, 0.3), TfPoint::new(1.3, 0.9)],
            allow_sampled_fourier: false,
            tolerance: 1e-10,
            zero_tolerance: 1e-12,
        }
    }
}

/// Largest defect of one identity over the sample points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub max_defect: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub window: Window,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn make_check(name: &str, defects: impl Iterator<Item = f64>, tolerance: f64) -> IdentityCheck {
    let mut samples = 0;
    let mut max_defect: f64 = 0.0;
    for d in defects {
        samples += 1;
        max_defect = max_defect.max(d);
    }
    IdentityCheck { name: name.to_string(), max_defect, tolerance, samples, passed: max_defect <= tolerance }
}

/// Checks the structural identities of the Zak transform of `w`:
///
/// * quasi-periodicity `Z(x+1, w) = e^{2 pi i w} Z(x, w)` and `Z(x, w+1) = Z(x, w)`,
/// * shift covariance `Z(M_eta T_xi f)(x, w) = e^{-2 pi i x eta} Z f(x+xi, w+eta)`,
/// * the Poisson relation `Z f(x, w) = e^{2 pi i x w} Z (F^-1 f)(-w, x)`,
/// * conjugate symmetry `Z f(x, -w) = conj Z f(x, w)` for real windows,
/// * the parity zeros: `(1/2, 1/2)` for even windows and
///   `(0, 0), (0, 1/2), (1/2, 0)` for odd ones.
pub fn verify_identities(w: &Window, points: &[TfPoint], opts: &IdentityOptions) -> Result<IdentityReport> {
    let ev = ZakEvaluator::new(w)?;
    let z = |x: f64, om: f64| ev.zak(x, om, Truncation::Auto).value;
    let tol = opts.tolerance;
    let mut checks = Vec::new();

    checks.push(make_check(
        "quasi_periodicity_x",
        points.iter().map(|p| (z(p.x + 1.0, p.omega) - unit_phase(p.omega) * z(p.x, p.omega)).norm()),
        tol,
    ));
    checks.push(make_check(
        "quasi_periodicity_omega",
        points.iter().map(|p| (z(p.x, p.omega + 1.0) - z(p.x, p.omega)).norm()),
        tol,
    ));

    let mut cov = Vec::new();
    for s in &opts.shifts {
        let shifted = ZakEvaluator::new(&w.shifted(*s))?;
        for p in points {
            let lhs = shifted.zak(p.x, p.omega, Truncation::Auto).value;
            let rhs = unit_phase(-p.x * s.omega) * z(p.x + s.x, p.omega + s.omega);
            cov.push((lhs - rhs).norm());
        }
    }
    checks.push(make_check("shift_covariance", cov.into_iter(), tol));

    let fourier = w.then(UnitaryOp::Frft { r: -std::f64::consts::FRAC_PI_2 }).simplified();
    if !fourier.is_closed_form() && !opts.allow_sampled_fourier {
        return Err(Error::PoissonUnavailable(w.to_string()));
    }
    let fev = ZakEvaluator::new(&fourier)?;
    checks.push(make_check(
        "poisson",
        points.iter().map(|p| {
            let lhs = z(p.x, p.omega);
            let rhs = unit_phase(p.x * p.omega) * fev.zak(-p.omega, p.x, Truncation::Auto).value;
            (lhs - rhs).norm()
        }),
        if fev.is_sampled() { tol.max(10.0 * INTERPOLATION_BUDGET) } else { tol },
    ));

    if w.is_real() {
        checks.push(make_check(
            "conjugate_symmetry",
            points.iter().map(|p| (z(p.x, -p.omega) - z(p.x, p.omega).conj()).norm()),
            tol,
        ));
    }

    match w.parity() {
        Some(Parity::Even) => {
            checks.push(make_check("even_zero", [z(0.5, 0.5).norm()].into_iter(), opts.zero_tolerance))
        }
        Some(Parity::Odd) => checks.push(make_check(
            "odd_zeros",
            [z(0.0, 0.0), z(0.0, 0.5), z(0.5, 0.0)].into_iter().map(|v| v.norm()),
            opts.zero_tolerance,
        )),
        None => {}
    }

    Ok(IdentityReport { window: w.clone(), checks })
}
