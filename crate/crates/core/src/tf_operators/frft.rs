//! Fractional Fourier transform of sampled functions.
//!
//! With the kernel
//!
//! ```text
//! k_r(s, t) = sqrt(1 - i cot r) exp(pi i (cot r s^2 - 2 csc r s t + cot r t^2))
//! ```
//!
//! `F_{pi/2}` is the Fourier transform and every Hermite function satisfies
//! `F_r h_n = e^{-i n r} h_n`. The angle is first reduced to `(-pi, pi]`, where
//! the principal square root gives the kernel its correct sign.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::sampled::SampledFunction;
use crate::error::{Error, Result};
use crate::lattice::wrap_angle;
use crate::special_fn::hermite_all;

/// How to evaluate the fractional Fourier transform of a sampled function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrftMethod {
    /// Direct trapezoid quadrature of the kernel integral.
    Quadrature,
    /// Expand in Hermite functions and rotate each coefficient.
    HermiteEigen { terms: usize },
    /// Quadrature when the kernel is resolved by the grid, else Hermite.
    Auto,
}

/// Default number of Hermite coefficients.
pub const DEFAULT_HERMITE_TERMS: usize = 96;

/// Auto doubles the Hermite term count up to this before giving up.
pub const MAX_AUTO_HERMITE_TERMS: usize = 384;

/// Largest unresolved relative energy accepted by the Hermite method.
pub const HERMITE_ENERGY_TOL: f64 = 1e-12;

/// Highest kernel frequency the quadrature accepts, as a fraction of the
/// sampling rate.
const QUADRATURE_BANDWIDTH: f64 = 0.75;

/// Angles this close to a multiple of pi/2 use the exact special cases.
const SPECIAL_ANGLE_TOL: f64 = 1e-12;

fn support_radius(f: &SampledFunction) -> f64 {
    match f.effective_support(1e-16) {
        Some((lo, hi)) => lo.abs().max(hi.abs()),
        None => 0.0,
    }
}

/// Whether direct quadrature resolves the kernel oscillation for angle `r`.
///
/// The integrand's local frequency is `cot(r) t - csc(r) s`; it has to stay
/// well below the sampling rate `1/h` for every `t` in the support of `f`
/// and every output node `s`.
pub fn quadrature_resolves(r: f64, f: &SampledFunction) -> bool {
    let r = wrap_angle(r);
    let (s, c) = r.sin_cos();
    if s.abs() < 1e-3 {
        return false;
    }
    let grid = f.grid();
    let max_freq = (c / s).abs() * support_radius(f) + grid.half_extent() / s.abs();
    (c / s).abs() <= 1e3 && max_freq <= QUADRATURE_BANDWIDTH / grid.step
}

fn special_case(r: f64, f: &SampledFunction) -> Option<SampledFunction> {
    if r.abs() <= SPECIAL_ANGLE_TOL {
        return Some(f.clone());
    }
    if (r - PI).abs() <= SPECIAL_ANGLE_TOL || (r + PI).abs() <= SPECIAL_ANGLE_TOL {
        return Some(f.reflect());
    }
    None
}

/// `F_r f` by trapezoid quadrature.
pub fn frft_quadrature(r: f64, f: &SampledFunction) -> Result<SampledFunction> {
    let r = wrap_angle(r);
    if let Some(out) = special_case(r, f) {
        return Ok(out);
    }
    if !quadrature_resolves(r, f) {
        return Err(Error::SingularAngle { angle: r });
    }
    let (sin_r, cos_r) = r.sin_cos();
    let cot = cos_r / sin_r;
    let csc = 1.0 / sin_r;
    let amp = Complex64::new(1.0, -cot).sqrt();
    let grid = f.grid();
    let h = grid.step;
    let chirped: Vec<Complex64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let t = grid.point(j);
            v * Complex64::from_polar(1.0, PI * cot * t * t)
        })
        .collect();
    // exp(-2 pi i csc s t_j) is advanced by a constant factor per node and
    // re-seeded every RESEED nodes to bound the drift.
    const RESEED: usize = 64;
    let values = (0..grid.len)
        .into_par_iter()
        .map(|i| {
            let s = grid.point(i);
            let freq = -2.0 * PI * csc * s;
            let step = Complex64::from_polar(1.0, freq * h);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut phase = Complex64::new(1.0, 0.0);
            for (j, g) in chirped.iter().enumerate() {
                if j % RESEED == 0 {
                    phase = Complex64::from_polar(1.0, freq * grid.point(j));
                }
                acc += g * phase;
                phase *= step;
            }
            amp * Complex64::from_polar(1.0, PI * cot * s * s) * acc * h
        })
        .collect();
    Ok(SampledFunction::new(grid, values))
}

/// Hermite coefficients `c_n = <f, h_n>` for `n < terms`, with the relative
/// energy they leave unresolved.
pub fn hermite_coefficients(f: &SampledFunction, terms: usize) -> (Vec<Complex64>, f64) {
    let grid = f.grid();
    let h = grid.step;
    let coeffs = (0..grid.len)
        .into_par_iter()
        .fold(
            || vec![Complex64::new(0.0, 0.0); terms],
            |mut acc, j| {
                let v = f.values()[j];
                if v.norm_sqr() > 0.0 {
                    let hs = hermite_all(terms - 1, grid.point(j));
                    for (a, hn) in acc.iter_mut().zip(hs) {
                        *a += v * hn;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![Complex64::new(0.0, 0.0); terms],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
        .into_iter()
        .map(|c| c * h)
        .collect::<Vec<_>>();
    let total = f.norm_sqr();
    let captured: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    let residual = if total > 0.0 { ((total - captured) / total).max(0.0) } else { 0.0 };
    (coeffs, residual)
}

/// `F_r f` through the Hermite eigen-expansion.
pub fn frft_hermite(r: f64, f: &SampledFunction, terms: usize) -> Result<SampledFunction> {
    if terms == 0 {
        return Err(Error::InvalidArgument("Hermite expansion needs at least one term".into()));
    }
    let r = wrap_angle(r);
    if let Some(out) = special_case(r, f) {
        return Ok(out);
    }
    let (coeffs, residual) = hermite_coefficients(f, terms);
    if residual > HERMITE_ENERGY_TOL {
        return Err(Error::TruncationTooCoarse { terms, residual });
    }
    let rotated: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c * Complex64::from_polar(1.0, -((n as f64) * r).rem_euclid(2.0 * PI)))
        .collect();
    Ok(SampledFunction::from_fn(f.grid(), |s| {
        let hs = hermite_all(terms - 1, s);
        rotated.iter().zip(hs).map(|(c, hn)| c * hn).sum()
    }))
}

/// `F_r f` with the requested method.
pub fn apply_frft(r: f64, f: &SampledFunction, method: FrftMethod) -> Result<SampledFunction> {
    match method {
        FrftMethod::Quadrature => frft_quadrature(r, f),
        FrftMethod::HermiteEigen { terms } => frft_hermite(r, f, terms),
        FrftMethod::Auto => {
            if special_case(wrap_angle(r), f).is_some() || quadrature_resolves(r, f) {
                frft_quadrature(r, f)
            } else {
                let mut terms = DEFAULT_HERMITE_TERMS;
                loop {
                    match frft_hermite(r, f, terms) {
                        Err(Error::TruncationTooCoarse { .. }) if terms < MAX_AUTO_HERMITE_TERMS => terms *= 2,
                        out => return out,
                    }
                }
            }
        }
    }
}
