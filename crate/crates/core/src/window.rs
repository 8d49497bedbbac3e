//! Symbolic windows: a Hermite function with a chain of unitary operators.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Matrix2x2;
use crate::special_fn::{hermite, hermite_envelope, HermiteIndex};
use crate::tf_operators::{apply_op, FrftMethod, Grid, OperatorChain, SampledFunction, TfPoint, UnitaryOp};

/// `chain` applied to the Hermite function `h_n`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Window {
    pub hermite: HermiteIndex,
    #[serde(default)]
    pub chain: OperatorChain,
}

/// Parity of a window about the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// `|w(t)| = amplitude * |h_n(slope * t + offset)|` for closed-form windows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profile {
    pub amplitude: f64,
    pub slope: f64,
    pub offset: f64,
}

impl Profile {
    /// Point where the argument of `h_n` vanishes.
    pub fn center(&self) -> f64 {
        -self.offset / self.slope
    }

    /// Width relative to `h_n`.
    pub fn scale(&self) -> f64 {
        1.0 / self.slope.abs()
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.chain.ops {
            match *op {
                UnitaryOp::Dilation { a } => write!(f, "D[{a}] ")?,
                UnitaryOp::Chirp { q } => write!(f, "V[{q}] ")?,
                UnitaryOp::Frft { r } => write!(f, "F[{r}] ")?,
                UnitaryOp::Fourier => write!(f, "F ")?,
                UnitaryOp::TfShift { x, omega } => write!(f, "pi({x},{omega}) ")?,
            }
        }
        write!(f, "h{}", self.hermite.0)
    }
}

impl Window {
    pub fn new(n: impl Into<HermiteIndex>, chain: OperatorChain) -> Self {
        Window { hermite: n.into(), chain }
    }

    /// The plain Hermite function `h_n`.
    pub fn hermite(n: usize) -> Self {
        Window { hermite: HermiteIndex(n), chain: OperatorChain::identity() }
    }

    /// `op ∘ self`.
    pub fn then(&self, op: UnitaryOp) -> Window {
        Window { hermite: self.hermite, chain: self.chain.then(op) }
    }

    /// `outer ∘ self`.
    pub fn then_chain(&self, outer: &OperatorChain) -> Window {
        Window { hermite: self.hermite, chain: self.chain.then_chain(outer) }
    }

    /// `pi(z) ∘ self`.
    pub fn shifted(&self, z: TfPoint) -> Window {
        self.then(UnitaryOp::shift(z))
    }

    /// The Fourier transform of this window.
    pub fn fourier(&self) -> Window {
        self.then(UnitaryOp::Fourier)
    }

    pub fn simplified(&self) -> Window {
        Window { hermite: self.hermite, chain: self.chain.simplified() }
    }

    /// Number of outer operators that have to be applied to samples.
    ///
    /// Dilations, chirps and shifts act pointwise. A fractional Fourier
    /// transform is pointwise only while it acts on the bare Hermite function
    /// (as the phase `e^{-i n r}`); once a pointwise operator sits underneath,
    /// it and everything outside it must be sampled.
    pub fn sampled_prefix(&self) -> usize {
        let ops = &self.chain.ops;
        let mut seen_pointwise = false;
        for (idx, op) in ops.iter().enumerate().rev() {
            if op.frft_angle().is_some() {
                if seen_pointwise {
                    return idx + 1;
                }
            } else {
                seen_pointwise = true;
            }
        }
        0
    }

    pub fn is_closed_form(&self) -> bool {
        self.sampled_prefix() == 0
    }

    /// Evaluates the closed-form part `ops[from..]` at `t`.
    fn eval_suffix(&self, from: usize, t: f64) -> Complex64 {
        let n = self.hermite.0 as f64;
        let mut factor = Complex64::new(1.0, 0.0);
        let mut arg = t;
        for op in &self.chain.ops[from..] {
            match *op {
                UnitaryOp::Dilation { a } => {
                    factor /= a.sqrt();
                    arg /= a;
                }
                UnitaryOp::Chirp { q } => factor *= Complex64::from_polar(1.0, PI * q * arg * arg),
                UnitaryOp::TfShift { x, omega } => {
                    factor *= Complex64::from_polar(1.0, 2.0 * PI * omega * arg);
                    arg -= x;
                }
                UnitaryOp::Frft { r } => {
                    factor *= Complex64::from_polar(1.0, -(n * r).rem_euclid(2.0 * PI));
                }
                UnitaryOp::Fourier => factor *= self.hermite.fourier_eigenvalue(),
            }
        }
        factor * hermite(self.hermite, arg)
    }

    /// Pointwise value; only for closed-form windows.
    pub fn eval(&self, t: f64) -> Result<Complex64> {
        if !self.is_closed_form() {
            return Err(Error::NotClosedForm(self.to_string()));
        }
        Ok(self.eval_suffix(0, t))
    }

    /// Modulus profile of a closed-form window.
    pub fn profile(&self) -> Option<Profile> {
        if !self.is_closed_form() {
            return None;
        }
        let (mut amplitude, mut slope, mut offset) = (1.0, 1.0, 0.0);
        for op in &self.chain.ops {
            match *op {
                UnitaryOp::Dilation { a } => {
                    amplitude /= a.sqrt();
                    slope /= a;
                    offset /= a;
                }
                UnitaryOp::TfShift { x, .. } => offset -= x,
                _ => {}
            }
        }
        Some(Profile { amplitude, slope, offset })
    }

    /// Upper bound for `|w(t)|` of a closed-form window.
    pub fn envelope(&self, t: f64) -> Option<f64> {
        let p = self.profile()?;
        Some(p.amplitude * hermite_envelope(self.hermite, p.slope * t + p.offset))
    }

    /// Parity about the origin, when the chain preserves it (every operator
    /// except a nonzero shift does).
    pub fn parity(&self) -> Option<Parity> {
        let shifts =
            self.chain.ops.iter().any(|op| matches!(op, UnitaryOp::TfShift { x, omega } if *x != 0.0 || *omega != 0.0));
        if shifts {
            None
        } else if self.hermite.is_even() {
            Some(Parity::Even)
        } else {
            Some(Parity::Odd)
        }
    }

    /// Whether the window is real valued.
    pub fn is_real(&self) -> bool {
        self.chain.ops.iter().all(|op| match op {
            UnitaryOp::Dilation { .. } => true,
            UnitaryOp::TfShift { omega, .. } => *omega == 0.0,
            _ => false,
        })
    }

    /// A closed-form window equal to this one up to a constant factor of
    /// modulus one, written as `pi(z) V_q D_a h_n`.
    ///
    /// Shifts are moved outward through the other operators with
    /// `A pi(z) = c pi(M_A z) A`, and the remaining matrix `M` is split as
    /// `V_q D_a R_r`; the rotation acts on `h_n` as a phase.
    pub fn canonical(&self) -> Window {
        let mut z = TfPoint::ORIGIN;
        let mut m = Matrix2x2::IDENTITY;
        for op in self.chain.ops.iter().rev() {
            match *op {
                UnitaryOp::TfShift { x, omega } => z = TfPoint::new(z.x + x, z.omega + omega),
                _ => {
                    let a = op.matrix();
                    z = a.apply(z);
                    m = a * m;
                }
            }
        }
        let r = (-m.b).atan2(m.a);
        let (s, c) = r.sin_cos();
        let a = m.a.hypot(m.b);
        let q = (m.c * c - m.d * s) / a;
        Window::hermite(self.hermite.0)
            .then(UnitaryOp::Dilation { a })
            .then(UnitaryOp::Chirp { q })
            .shifted(z)
            .simplified()
    }

    /// Samples the window on `grid`: the closed-form part pointwise, the
    /// remaining outer operators on samples.
    pub fn sample(&self, grid: Grid) -> Result<SampledFunction> {
        let split = self.sampled_prefix();
        let inner = SampledFunction::from_fn(grid, |t| self.eval_suffix(split, t));
        self.chain.ops[..split].iter().rev().try_fold(inner, |acc, op| apply_op(op, &acc, FrftMethod::Auto))
    }
}
