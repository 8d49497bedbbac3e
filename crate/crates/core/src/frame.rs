//! Frame analysis of Gabor systems through the Zak transform.
//!
//! A multi-window system over `Z^2` is a frame exactly when
//! `A <= sum_m |Z g_m(x, w)|^2 <= B` on the unit square. Systems over other
//! point sets are first rewritten over `Z^2` with [`reduce_to_multiwindow`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{integer_coset_representatives, integer_matrix, iwasawa_factor, unimodular_sublattice, PointSet};
use crate::special_fn::{theta3, HermiteIndex};
use crate::tf_operators::{OperatorChain, TfPoint, UnitaryOp};
use crate::window::Window;
use crate::zak::{max_neighbor_difference, zak_surface_with, Truncation, ZakEvaluator};

/// Residual at or below which a zero is certified.
pub const CERTIFIED_RESIDUAL: f64 = 1e-10;
/// Polishing tolerance on the objective.
pub const REFINEMENT_TOL: f64 = 1e-12;
/// Polished minima with a larger residual are not reported as zeros.
pub const REPORTED_RESIDUAL: f64 = 1e-8;
/// Largest denominator tried when snapping a zero to a rational point.
pub const SNAP_DENOMINATOR: i64 = 8;
const SNAP_DISTANCE: f64 = 1e-7;
const MAX_SWEEPS: usize = 200;
const MAX_CANDIDATES: usize = 64;

/// The union of `G(g_m, set)` over the windows `g_m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaborSystem {
    pub windows: Vec<Window>,
    pub set: PointSet,
}

impl GaborSystem {
    pub fn new(windows: Vec<Window>, set: PointSet) -> Result<Self> {
        if windows.is_empty() {
            return Err(Error::InvalidArgument("a Gabor system needs at least one window".into()));
        }
        Ok(GaborSystem { windows, set })
    }

    /// `G(w, set)`.
    pub fn single(w: Window, set: PointSet) -> Self {
        GaborSystem { windows: vec![w], set }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NotFrame,
    LikelyFrame,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::NotFrame => "NotFrame",
            Verdict::LikelyFrame => "LikelyFrame",
            Verdict::Inconclusive => "Inconclusive",
        };
        f.write_str(s)
    }
}

/// A located zero of a Zak objective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZakZero {
    pub x: f64,
    pub omega: f64,
    /// Square root of the objective at the point.
    pub residual: f64,
    /// Whether the point is rational with a small denominator and the
    /// residual there is at most [`CERTIFIED_RESIDUAL`].
    pub certified: bool,
}

impl ZakZero {
    pub fn point(&self) -> TfPoint {
        TfPoint::new(self.x, self.omega)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    /// Lower frame bound estimate: the refined minimum of the objective.
    #[serde(rename = "A_est")]
    pub a_est: f64,
    /// Upper frame bound estimate: the grid maximum.
    #[serde(rename = "B_est")]
    pub b_est: f64,
    /// Unrefined grid minimum.
    pub grid_min: f64,
    /// Largest objective difference between neighbouring grid nodes.
    pub slack: f64,
    pub zeros: Vec<ZakZero>,
    pub verdict: Verdict,
    pub resolution: usize,
    pub refinement_tol: f64,
}

/// `sum_m |Z g_m|^2` together with its residual vector.
struct Objective {
    evaluators: Vec<ZakEvaluator>,
}

impl Objective {
    fn new(windows: &[Window]) -> Result<Self> {
        Ok(Objective { evaluators: windows.iter().map(ZakEvaluator::new).collect::<Result<_>>()? })
    }

    fn residuals(&self, x: f64, omega: f64) -> Vec<f64> {
        self.evaluators
            .iter()
            .flat_map(|ev| {
                let v = ev.zak(x, omega, Truncation::Auto).value;
                [v.re, v.im]
            })
            .collect()
    }

    fn value(&self, x: f64, omega: f64) -> f64 {
        self.residuals(x, omega).iter().map(|r| r * r).sum()
    }

    fn grid(&self, n: usize) -> Result<Vec<f64>> {
        let mut total = vec![0.0; n * n];
        for ev in &self.evaluators {
            let s = zak_surface_with(ev, n, Truncation::Auto)?;
            for (t, v) in total.iter_mut().zip(&s.values) {
                *t += v.norm_sqr();
            }
        }
        Ok(total)
    }

    /// Golden-section coordinate descent followed by Gauss-Newton steps.
    fn polish(&self, start: TfPoint, width: f64) -> (TfPoint, f64) {
        let mut p = start;
        let mut best = self.value(p.x, p.omega);
        let mut w = width;
        for _ in 0..MAX_SWEEPS {
            if best <= REFINEMENT_TOL * REFINEMENT_TOL {
                break;
            }
            let before = p;
            let prev = best;
            let x = golden_section(|x| self.value(x, p.omega), p.x - w, p.x + w);
            if self.value(x, p.omega) < best {
                p.x = x;
                best = self.value(p.x, p.omega);
            }
            let om = golden_section(|o| self.value(p.x, o), p.omega - w, p.omega + w);
            if self.value(p.x, om) < best {
                p.omega = om;
                best = self.value(p.x, p.omega);
            }
            let moved = (p.x - before.x).abs().max((p.omega - before.omega).abs());
            if prev - best <= REFINEMENT_TOL * prev.max(f64::MIN_POSITIVE) && moved < 1e-13 {
                break;
            }
            w = (4.0 * moved).clamp(1e-12, width);
        }
        for _ in 0..30 {
            let Some(next) = self.gauss_newton_step(p) else { break };
            let v = self.value(next.x, next.omega);
            if v < best {
                p = next;
                best = v;
            } else {
                break;
            }
        }
        (p, best)
    }

    fn gauss_newton_step(&self, p: TfPoint) -> Option<TfPoint> {
        let h = 1e-7;
        let r = self.residuals(p.x, p.omega);
        let rxp = self.residuals(p.x + h, p.omega);
        let rxm = self.residuals(p.x - h, p.omega);
        let rop = self.residuals(p.x, p.omega + h);
        let rom = self.residuals(p.x, p.omega - h);
        let (mut jxx, mut jxo, mut joo, mut gx, mut go) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for i in 0..r.len() {
            let dx = (rxp[i] - rxm[i]) / (2.0 * h);
            let dw = (rop[i] - rom[i]) / (2.0 * h);
            jxx += dx * dx;
            jxo += dx * dw;
            joo += dw * dw;
            gx += dx * r[i];
            go += dw * r[i];
        }
        let det = jxx * joo - jxo * jxo;
        if !(det.is_finite() && det.abs() > 1e-300) {
            return None;
        }
        let sx = (joo * gx - jxo * go) / det;
        let so = (jxx * go - jxo * gx) / det;
        Some(TfPoint::new(p.x - sx, p.omega - so))
    }
}

fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if hi - lo <= 1e-15 * (1.0 + lo.abs()) {
            break;
        }
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    if fc < fd {
        c
    } else {
        d
    }
}

/// Nearest rational with denominator at most [`SNAP_DENOMINATOR`], if within
/// the snapping distance.
fn snap(v: f64) -> Option<f64> {
    (1..=SNAP_DENOMINATOR).map(|q| (v * q as f64).round() / q as f64).find(|r| (r - v).abs() <= SNAP_DISTANCE)
}

/// Local minima of a periodic `n x n` grid (8-neighbourhood, non-strict).
fn local_minima(values: &[f64], n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = values[i * n + j];
            let is_min = (-1i64..=1).all(|di| {
                (-1i64..=1).all(|dj| {
                    let ii = (i as i64 + di).rem_euclid(n as i64) as usize;
                    let jj = (j as i64 + dj).rem_euclid(n as i64) as usize;
                    values[ii * n + jj] >= v
                })
            });
            if is_min {
                out.push((i, j));
            }
        }
    }
    out
}

/// Polishes the candidate nodes and returns the reported zeros, deduplicated
/// within `1/(2n)` and sorted.
fn refine_candidates(obj: &Objective, n: usize, nodes: &[(usize, usize)]) -> (Vec<ZakZero>, f64) {
    let step = 1.0 / n as f64;
    let polished: Vec<(TfPoint, f64)> =
        nodes.par_iter().map(|&(i, j)| obj.polish(TfPoint::new(i as f64 * step, j as f64 * step), step)).collect();
    let refined_min = polished.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let mut zeros: Vec<ZakZero> = Vec::new();
    for (p, v) in polished {
        let residual = v.max(0.0).sqrt();
        if residual > REPORTED_RESIDUAL {
            continue;
        }
        let w = p.wrapped();
        let mut zero = ZakZero { x: w.x, omega: w.omega, residual, certified: false };
        if let (Some(sx), Some(so)) = (snap(w.x), snap(w.omega)) {
            let snapped = TfPoint::new(sx, so).wrapped();
            let r = obj.value(snapped.x, snapped.omega).max(0.0).sqrt();
            if r <= CERTIFIED_RESIDUAL {
                zero = ZakZero { x: snapped.x, omega: snapped.omega, residual: r, certified: true };
            }
        }
        let dup = zeros.iter_mut().find(|z| z.point().torus_distance(&zero.point()) < 0.5 * step);
        match dup {
            Some(existing) => {
                if zero.certified && !existing.certified
                    || zero.residual < existing.residual && zero.certified == existing.certified
                {
                    *existing = zero;
                }
            }
            None => zeros.push(zero),
        }
    }
    zeros.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.omega.total_cmp(&b.omega)));
    (zeros, refined_min)
}

/// Rewrites a system over a union of lattice cosets as an equivalent
/// multi-window system over `Z^2`.
///
/// With `set = U_j (G Z^2 + s_j)` and `det G = 1/m`, an integer matrix `C`
/// with `det C = m` makes `U = G C` unimodular and splits `G Z^2` into the
/// `m` cosets `U Z^2 + G v`. Factoring `U = R_r V_q D_a` gives the unitary
/// `F_r V_q D_a` with matrix `U`; its inverse maps `G(pi(s_j + G v) g, U Z^2)`
/// onto a system over `Z^2`. The resulting windows are stored in canonical
/// form, which drops constant phases.
pub fn reduce_to_multiwindow(sys: &GaborSystem) -> Result<GaborSystem> {
    if sys.windows.is_empty() {
        return Err(Error::InvalidArgument("a Gabor system needs at least one window".into()));
    }
    if sys.set.is_integer_lattice() {
        return Ok(sys.clone());
    }
    let g = sys.set.generator();
    let c = unimodular_sublattice(&g)?;
    let u = g * integer_matrix(c);
    let f = iwasawa_factor(&u).map_err(|e| Error::IrreducibleSet(e.to_string()))?;
    if (f.scale - 1.0).abs() > 1e-9 {
        return Err(Error::IrreducibleSet(format!("reduced generator has determinant {}", f.scale * f.scale)));
    }
    let back = OperatorChain::new(vec![
        UnitaryOp::Dilation { a: 1.0 / f.a },
        UnitaryOp::Chirp { q: -f.q },
        UnitaryOp::Frft { r: -f.r },
    ])?;
    let reps = integer_coset_representatives(c)?;
    let mut windows = Vec::with_capacity(sys.windows.len() * reps.len() * sys.set.shifts().len());
    for w in &sys.windows {
        for s in sys.set.shifts() {
            for &(i, j) in &reps {
                let gv = g.apply(TfPoint::new(i as f64, j as f64));
                let t = TfPoint::new(s.x + gv.x, s.omega + gv.omega);
                let moved = w.shifted(t).then_chain(&back).canonical();
                windows.push(wrap_outer_shift(moved));
            }
        }
    }
    GaborSystem::new(windows, PointSet::integer())
}

/// Replaces an outermost shift `pi(z)` by `pi(z mod Z^2)`, which changes a
/// system over `Z^2` only by phases.
fn wrap_outer_shift(w: Window) -> Window {
    match w.chain.ops.first() {
        Some(UnitaryOp::TfShift { x, omega }) => {
            let z = TfPoint::new(*x, *omega).wrapped();
            let mut ops = w.chain.ops.clone();
            ops[0] = UnitaryOp::shift(z);
            Window { hermite: w.hermite, chain: OperatorChain { ops } }.simplified()
        }
        _ => w,
    }
}

/// Frame bound estimates of a system over `Z^2` from an `n x n` grid.
pub fn frame_bounds(sys: &GaborSystem, n: usize) -> Result<FrameReport> {
    if !sys.set.is_integer_lattice() {
        return Err(Error::InvalidArgument("frame bounds need a system over Z^2; reduce it first".into()));
    }
    if n < 8 {
        return Err(Error::InvalidArgument(format!("resolution must be at least 8, got {n}")));
    }
    let obj = Objective::new(&sys.windows)?;
    let grid = obj.grid(n)?;
    let grid_min = grid.iter().copied().fold(f64::INFINITY, f64::min);
    let b_est = grid.iter().copied().fold(0.0, f64::max);
    let slack = max_neighbor_difference(&grid, n);
    let mut nodes: Vec<(usize, usize)> = local_minima(&grid, n)
        .into_iter()
        .filter(|&(i, j)| {
            let v = grid[i * n + j];
            v <= 3.0 * grid_min || v <= slack
        })
        .collect();
    nodes.sort_by(|a, b| grid[a.0 * n + a.1].total_cmp(&grid[b.0 * n + b.1]).then(a.cmp(b)));
    nodes.truncate(MAX_CANDIDATES);
    let (zeros, refined_min) = refine_candidates(&obj, n, &nodes);
    let a_est = grid_min.min(refined_min).max(0.0);
    let verdict = if zeros.iter().any(|z| z.certified) {
        Verdict::NotFrame
    } else if a_est > 10.0 * slack {
        Verdict::LikelyFrame
    } else {
        Verdict::Inconclusive
    };
    Ok(FrameReport {
        a_est,
        b_est: b_est.max(a_est),
        grid_min,
        slack,
        zeros,
        verdict,
        resolution: n,
        refinement_tol: REFINEMENT_TOL,
    })
}

/// `sum_m |Z g_m|^2` on the nodes `(i/n, j/n)`, row major in `x`.
pub fn frame_objective(sys: &GaborSystem, n: usize) -> Result<Vec<f64>> {
    Objective::new(&sys.windows)?.grid(n)
}

/// Reduces `sys` to `Z^2` and estimates its frame bounds.
pub fn analyze(sys: &GaborSystem, n: usize) -> Result<FrameReport> {
    frame_bounds(&reduce_to_multiwindow(sys)?, n)
}

/// Zeros of `Z w` found from the local minima of `|Z w|` on an `n x n` grid.
/// A polished minimum is kept when its residual is at most `max(tol, 1e-8)`.
pub fn find_zak_zeros(w: &Window, n: usize, tol: f64) -> Result<Vec<ZakZero>> {
    if n < 32 {
        return Err(Error::InvalidArgument(format!("zero search needs resolution at least 32, got {n}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let obj = Objective::new(std::slice::from_ref(w))?;
    let modulus: Vec<f64> = obj.grid(n)?.into_iter().map(f64::sqrt).collect();
    let slack = max_neighbor_difference(&modulus, n);
    let nodes: Vec<(usize, usize)> =
        local_minima(&modulus, n).into_iter().filter(|&(i, j)| modulus[i * n + j] <= slack).collect();
    let (zeros, _) = refine_candidates(&obj, n, &nodes);
    Ok(zeros.into_iter().filter(|z| z.residual <= tol.max(REPORTED_RESIDUAL)).collect())
}

/// The transported system `(U g_m, U * set)` for the unitary given by `chain`.
pub fn equivalence_transport(sys: &GaborSystem, chain: &OperatorChain) -> Result<GaborSystem> {
    let set = sys.set.transform(&chain.matrix())?;
    let windows = sys.windows.iter().map(|w| w.then_chain(chain)).collect();
    GaborSystem::new(windows, set)
}

/// Both sides of `2^{1/4} Z h_2(0, 0) = -theta_3(1) - 4 theta_3'(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaCertificate {
    /// `Z h_2(0, 0)` from the Zak series.
    pub zak_value: f64,
    /// `-(theta_3(1) + 4 theta_3'(1)) / 2^{1/4}`.
    pub theta_combination: f64,
    pub difference: f64,
    /// `|Z h_2(1/2, 1/2)|`.
    pub even_zero: f64,
    pub theta3_at_one: f64,
    pub passed: bool,
}

pub fn theta_zero_certificate() -> Result<ThetaCertificate> {
    let ev = ZakEvaluator::new(&Window::hermite(2))?;
    let origin = ev.zak(0.0, 0.0, Truncation::Auto).value;
    let th = theta3(1.0)?;
    let theta_combination = -(th.value + 4.0 * th.derivative) / 2f64.powf(0.25);
    let zak_value = origin.re;
    let difference = (zak_value - theta_combination).abs().max(origin.im.abs());
    let even_zero = ev.zak(0.5, 0.5, Truncation::Auto).value.norm();
    let passed = zak_value.abs() <= 1e-12
        && theta_combination.abs() <= 1e-12
        && difference <= 1e-13
        && even_zero <= 1e-12
        && th.value > 1.0;
    Ok(ThetaCertificate { zak_value, theta_combination, difference, even_zero, theta3_at_one: th.value, passed })
}

/// The two windows `pi(1/4 + (m-1)/2, 1/2) D_{sqrt 2}^{-1} h_n`, `m = 1, 2`.
pub fn dilated_shift_pair(n: HermiteIndex) -> Vec<Window> {
    let base = Window::hermite(n.0).then(UnitaryOp::Dilation { a: std::f64::consts::FRAC_1_SQRT_2 });
    vec![base.shifted(TfPoint::new(0.25, 0.5)), base.shifted(TfPoint::new(0.75, 0.5))]
}
