//! Normalized Hermite functions and the restricted Jacobi theta-3 function.
//!
//! Hermite functions use the `e^{-pi t^2}` normalization,
//!
//! ```text
//! h_0(t) = 2^{1/4} e^{-pi t^2},   h_1(t) = 2 sqrt(pi) t h_0(t),
//! h_{n+1}(t) = (2 sqrt(pi) t / sqrt(n+1)) h_n(t) - sqrt(n/(n+1)) h_{n-1}(t),
//! ```
//!
//! so that `||h_n||_2 = 1` and `F h_n = (-i)^n h_n` for the Fourier transform
//! `F f(y) = int f(t) e^{-2 pi i y t} dt`.  In particular
//! `h_2(t) = 2^{-1/4} (4 pi t^2 - 1) e^{-pi t^2}`.
//!
//! The theta function is `theta_3(alpha) = sum_k e^{-pi alpha k^2}`, i.e. the
//! Jacobi `vartheta_3(0; i alpha)`, together with its derivative in `alpha`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const FOURTH_ROOT_OF_TWO: f64 = 1.189_207_115_002_721;

/// Order of a Hermite function.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HermiteIndex(pub usize);

impl HermiteIndex {
    pub fn order(self) -> usize {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Eigenvalue of the Fourier transform, `(-i)^n`.
    pub fn fourier_eigenvalue(self) -> num_complex::Complex64 {
        use num_complex::Complex64;
        match self.0 % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        }
    }
}

impl From<usize> for HermiteIndex {
    fn from(n: usize) -> Self {
        HermiteIndex(n)
    }
}

// Rescaling threshold for the polynomial part of the recurrence.
const RESCALE_ABOVE: f64 = 1e150;
const RESCALE_BY: f64 = 1e-150;
const LN_RESCALE: f64 = 345.387_763_949_107_06; // 150 ln 10

/// Runs the three-term recurrence on the polynomial factor and applies the
/// Gaussian weight at the end, carrying an explicit exponent so neither the
/// polynomial nor the weight can overflow or underflow prematurely.
fn recurrence_into(n_max: usize, t: f64, out: Option<&mut Vec<f64>>) -> f64 {
    let two_sqrt_pi_t = 2.0 * PI.sqrt() * t;
    let gauss_exp = -PI * t * t;
    let mut log_scale = 0.0;
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut out = out;
    if let Some(v) = out.as_deref_mut() {
        v.clear();
        v.push(FOURTH_ROOT_OF_TWO * gauss_exp.exp());
    }
    for k in 0..n_max {
        let kf = k as f64;
        let next = two_sqrt_pi_t / (kf + 1.0).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            prev *= RESCALE_BY;
            log_scale += LN_RESCALE;
        }
        if let Some(v) = out.as_deref_mut() {
            v.push(FOURTH_ROOT_OF_TWO * cur * (gauss_exp + log_scale).exp());
        }
    }
    FOURTH_ROOT_OF_TWO * cur * (gauss_exp + log_scale).exp()
}

/// Evaluates the normalized Hermite function `h_n(t)`.
pub fn hermite(n: HermiteIndex, t: f64) -> f64 {
    recurrence_into(n.0, t, None)
}

/// Evaluates `h_0(t), ..., h_{n_max}(t)` in one pass.
pub fn hermite_all(n_max: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    recurrence_into(n_max, t, Some(&mut out));
    out
}

/// Pointwise upper bound for `|h_n(t)|`.
///
/// Uses the recurrence with both terms added, which dominates the signed
/// recurrence term by term, so the result bounds `|h_n(t)|` for every `t`
/// and keeps the Gaussian decay of the true function.
pub fn hermite_envelope(n: HermiteIndex, t: f64) -> f64 {
    let y = 2.0 * PI.sqrt() * t.abs();
    let gauss_exp = -PI * t * t;
    let mut log_scale = 0.0;
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n.0 {
        let kf = k as f64;
        let next = y / (kf + 1.0).sqrt() * cur + (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            prev *= RESCALE_BY;
            log_scale += LN_RESCALE;
        }
    }
    FOURTH_ROOT_OF_TWO * cur * (gauss_exp + log_scale).exp()
}

/// `theta_3(alpha)` and its derivative with respect to `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaValue {
    pub alpha: f64,
    pub value: f64,
    pub derivative: f64,
    /// Largest `|k|` kept in the series.
    pub truncation: usize,
}

impl ThetaValue {
    /// `alpha * theta_3'(alpha) / theta_3(alpha)`.
    pub fn log_derivative(&self) -> f64 {
        self.alpha * self.derivative / self.value
    }
}

const THETA_MIN_TERMS: usize = 6;

/// Evaluates `theta_3(alpha) = sum_k e^{-pi alpha k^2}` and
/// `theta_3'(alpha) = -pi sum_k k^2 e^{-pi alpha k^2}`.
///
/// Terms are added for `k = 1, 2, ...` until `k` is at least 6, lies past the
/// maximum of `k^2 e^{-pi alpha k^2}`, and the dropped tail is below `1e-16`
/// of the partial sum. Past that maximum consecutive terms shrink by at
/// least `rho = e^{-pi alpha (2K+1)}`, so the tail of both series is bounded by
/// the first dropped term over `1 - rho`.
pub fn theta3(alpha: f64) -> Result<ThetaValue> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidArgument(format!("theta_3 requires alpha > 0, got {alpha}")));
    }
    let peak = 1.0 / (PI * alpha).sqrt();
    let mut terms: Vec<(f64, f64)> = Vec::new();
    let mut partial = 1.0;
    let mut k = 0usize;
    loop {
        k += 1;
        let kf = k as f64;
        let e = (-PI * alpha * kf * kf).exp();
        terms.push((e, PI * kf * kf * e));
        partial += 2.0 * e;
        if k < THETA_MIN_TERMS || kf < peak {
            continue;
        }
        let next = kf + 1.0;
        let e_next = (-PI * alpha * next * next).exp();
        let rho = (-PI * alpha * (2.0 * next + 1.0)).exp();
        let tail = 2.0 * e_next * (1.0 + PI * next * next) / (1.0 - rho);
        if tail < 1e-16 * partial {
            break;
        }
    }
    // smallest terms first
    let mut value = 0.0;
    let mut derivative = 0.0;
    for &(e, d) in terms.iter().rev() {
        value += 2.0 * e;
        derivative -= 2.0 * d;
    }
    value += 1.0;
    Ok(ThetaValue { alpha, value, derivative, truncation: k })
}

/// `|theta_3(1/alpha) - sqrt(alpha) theta_3(alpha)|`.
pub fn jacobi_defect(alpha: f64) -> Result<f64> {
    let direct = theta3(alpha)?;
    let inverse = theta3(1.0 / alpha)?;
    Ok((inverse.value - alpha.sqrt() * direct.value).abs())
}

/// Defect of the differentiated Jacobi identity
/// `alpha theta_3'(alpha)/theta_3(alpha) + alpha^{-1} theta_3'(1/alpha)/theta_3(1/alpha) = -1/2`.
pub fn log_derivative_defect(alpha: f64) -> Result<f64> {
    let direct = theta3(alpha)?;
    let inverse = theta3(1.0 / alpha)?;
    Ok((direct.log_derivative() + inverse.log_derivative() + 0.5).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_closed_forms() {
        let h2_explicit = |t: f64| 2f64.powf(-0.25) * (4.0 * PI * t * t - 1.0) * (-PI * t * t).exp();
        for &t in &[-3.0, -0.7, 0.0, 0.25, 1.3, 2.9] {
            assert!((hermite(HermiteIndex(2), t) - h2_explicit(t)).abs() < 1e-15);
        }
        assert!((hermite(HermiteIndex(0), 0.0) - 2f64.powf(0.25)).abs() < 1e-16);
        assert!((hermite(HermiteIndex(2), 0.0) + 2f64.powf(-0.25)).abs() < 1e-15);
        assert_eq!(hermite(HermiteIndex(3), 0.0), 0.0);
    }

    #[test]
    fn hermite_all_matches_single() {
        let all = hermite_all(12, 0.83);
        assert_eq!(all.len(), 13);
        for (n, v) in all.iter().enumerate() {
            assert_eq!(*v, hermite(HermiteIndex(n), 0.83));
        }
    }

    #[test]
    fn hermite_far_tail_is_finite() {
        for n in [0, 5, 40, 120] {
            for t in [-50.0, 20.0, 50.0] {
                let v = hermite(HermiteIndex(n), t);
                assert!(v.is_finite());
                assert!(v.abs() < 1e-100);
            }
        }
        // large order near its turning point stays O(1)
        let v = hermite(HermiteIndex(400), 5.0);
        assert!(v.is_finite() && v.abs() < 2.0);
    }

    #[test]
    fn envelope_dominates() {
        for n in 0..12 {
            for i in -80..=80 {
                let t = i as f64 * 0.05;
                let h = hermite(HermiteIndex(n), t).abs();
                assert!(hermite_envelope(HermiteIndex(n), t) >= h * (1.0 - 1e-14));
            }
        }
    }

    #[test]
    fn theta_rejects_nonpositive() {
        assert!(theta3(0.0).is_err());
        assert!(theta3(-1.0).is_err());
        assert!(theta3(f64::NAN).is_err());
    }

    #[test]
    fn theta_at_one() {
        let th = theta3(1.0).unwrap();
        // Direct summation with a generous fixed cutoff.
        let direct: f64 = (-30i32..=30).map(|k| (-PI * (k * k) as f64).exp()).sum();
        assert!((th.value - direct).abs() < 1e-15);
        assert!((th.value - 1.086_434_811_213_308).abs() < 1e-14);
        assert!((th.value + 4.0 * th.derivative).abs() < 1e-13);
        assert!(th.value > 0.0 && th.derivative < 0.0);
        assert!(th.truncation >= THETA_MIN_TERMS);
    }

    #[test]
    fn theta_small_alpha_keeps_enough_terms() {
        let th = theta3(1e-3).unwrap();
        // sqrt(alpha) theta(alpha) = theta(1/alpha) ~ 1
        assert!((1e-3f64.sqrt() * th.value - theta3(1e3).unwrap().value).abs() < 1e-12);
    }
}
