//! Time-frequency shifts and the unitary operators that intertwine them.
//!
//! Each operator `U` comes with a matrix `M` so that
//! `U pi(z) U^{-1} = c(z) pi(M z)` with `|c(z)| = 1`:
//!
//! | operator | action | matrix |
//! |---|---|---|
//! | `Dilation(a)` | `a^{-1/2} f(t/a)` | `diag(a, 1/a)` |
//! | `Chirp(q)` | `e^{pi i q t^2} f(t)` | `[[1,0],[q,1]]` |
//! | `Frft(r)` | fractional Fourier transform | rotation `R_r` |
//! | `Fourier` | `F = F_{pi/2}` | `R_{pi/2}` |
//! | `TfShift(z)` | `e^{2 pi i w t} f(t-x)` | identity |
//!
//! The phase factors `c(z)` are never tracked; they cancel in frame operators.

mod frft;
mod sampled;

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use frft::{
    apply_frft, frft_hermite, frft_quadrature, hermite_coefficients, quadrature_resolves, FrftMethod,
    DEFAULT_HERMITE_TERMS, HERMITE_ENERGY_TOL,
};
pub use sampled::{Grid, SampledFunction, DEFAULT_HALF_EXTENT, DEFAULT_STEP};

use crate::error::{Error, Result};
use crate::lattice::{wrap_angle, Matrix2x2};
use crate::special_fn::HermiteIndex;
use crate::window::Window;

/// A point `z = (x, omega)` of the time-frequency plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TfPoint {
    pub x: f64,
    pub omega: f64,
}

impl TfPoint {
    pub const ORIGIN: TfPoint = TfPoint { x: 0.0, omega: 0.0 };

    pub const fn new(x: f64, omega: f64) -> Self {
        TfPoint { x, omega }
    }

    /// Integer key on a `1e-9` lattice, used for ordering and set equality.
    pub fn key(&self) -> (i64, i64) {
        ((self.x * 1e9).round() as i64, (self.omega * 1e9).round() as i64)
    }

    /// Distance on the torus `R^2 / Z^2` in the max norm.
    pub fn torus_distance(&self, other: &TfPoint) -> f64 {
        let d = |a: f64, b: f64| {
            let r = (a - b).rem_euclid(1.0);
            r.min(1.0 - r)
        };
        d(self.x, other.x).max(d(self.omega, other.omega))
    }

    /// Representative in `[0, 1)^2`.
    pub fn wrapped(&self) -> TfPoint {
        let w = |v: f64| {
            let r = v.rem_euclid(1.0);
            if r >= 1.0 {
                0.0
            } else {
                r
            }
        };
        TfPoint::new(w(self.x), w(self.omega))
    }
}

/// One of the generating unitary operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitaryOp {
    Dilation { a: f64 },
    Chirp { q: f64 },
    Frft { r: f64 },
    TfShift { x: f64, omega: f64 },
    Fourier,
}

impl UnitaryOp {
    pub fn dilation(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidArgument(format!("dilation needs a > 0, got {a}")));
        }
        Ok(UnitaryOp::Dilation { a })
    }

    pub fn shift(z: TfPoint) -> Self {
        UnitaryOp::TfShift { x: z.x, omega: z.omega }
    }

    /// The inverse operator, up to a unimodular constant for `TfShift`.
    pub fn inverse(&self) -> UnitaryOp {
        match *self {
            UnitaryOp::Dilation { a } => UnitaryOp::Dilation { a: 1.0 / a },
            UnitaryOp::Chirp { q } => UnitaryOp::Chirp { q: -q },
            UnitaryOp::Frft { r } => UnitaryOp::Frft { r: -r },
            UnitaryOp::TfShift { x, omega } => UnitaryOp::TfShift { x: -x, omega: -omega },
            UnitaryOp::Fourier => UnitaryOp::Frft { r: -FRAC_PI_2 },
        }
    }

    /// Angle of a fractional Fourier transform, if this is one.
    pub fn frft_angle(&self) -> Option<f64> {
        match *self {
            UnitaryOp::Frft { r } => Some(r),
            UnitaryOp::Fourier => Some(FRAC_PI_2),
            _ => None,
        }
    }

    pub fn matrix(&self) -> Matrix2x2 {
        project_isomorphism(self)
    }

    fn is_identity(&self) -> bool {
        const TOL: f64 = 1e-13;
        match *self {
            UnitaryOp::Dilation { a } => (a - 1.0).abs() <= TOL,
            UnitaryOp::Chirp { q } => q.abs() <= TOL,
            UnitaryOp::Frft { r } => wrap_angle(r).abs() <= TOL,
            UnitaryOp::TfShift { x, omega } => x == 0.0 && omega == 0.0,
            UnitaryOp::Fourier => false,
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = match *self {
            UnitaryOp::Dilation { a } => {
                if a.is_nan() || a <= 0.0 {
                    return Err(Error::InvalidArgument(format!("dilation needs a > 0, got {a}")));
                }
                a.is_finite()
            }
            UnitaryOp::Chirp { q } => q.is_finite(),
            UnitaryOp::Frft { r } => r.is_finite(),
            UnitaryOp::TfShift { x, omega } => x.is_finite() && omega.is_finite(),
            UnitaryOp::Fourier => true,
        };
        if finite {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("non-finite parameter in {self:?}")))
        }
    }
}

/// The 2x2 matrix of an operator.
pub fn project_isomorphism(op: &UnitaryOp) -> Matrix2x2 {
    match *op {
        UnitaryOp::Dilation { a } => Matrix2x2::dilation(a),
        UnitaryOp::Chirp { q } => Matrix2x2::chirp(q),
        UnitaryOp::Frft { r } => Matrix2x2::rotation(r),
        UnitaryOp::Fourier => Matrix2x2::rotation(FRAC_PI_2),
        UnitaryOp::TfShift { .. } => Matrix2x2::IDENTITY,
    }
}

/// A composition `ops[0] ∘ ops[1] ∘ ...`; the last entry acts first.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OperatorChain {
    pub ops: Vec<UnitaryOp>,
}

impl OperatorChain {
    pub fn identity() -> Self {
        OperatorChain { ops: Vec::new() }
    }

    pub fn new(ops: Vec<UnitaryOp>) -> Result<Self> {
        for op in &ops {
            op.validate()?;
        }
        Ok(OperatorChain { ops })
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    /// `op ∘ self`.
    pub fn then(&self, op: UnitaryOp) -> OperatorChain {
        let mut ops = Vec::with_capacity(self.ops.len() + 1);
        ops.push(op);
        ops.extend_from_slice(&self.ops);
        OperatorChain { ops }
    }

    /// `outer ∘ self`.
    pub fn then_chain(&self, outer: &OperatorChain) -> OperatorChain {
        let mut ops = outer.ops.clone();
        ops.extend_from_slice(&self.ops);
        OperatorChain { ops }
    }

    /// The inverse composition (up to a unimodular constant).
    pub fn inverse(&self) -> OperatorChain {
        OperatorChain { ops: self.ops.iter().rev().map(UnitaryOp::inverse).collect() }
    }

    /// Product of the operator matrices, in composition order.
    pub fn matrix(&self) -> Matrix2x2 {
        self.ops.iter().fold(Matrix2x2::IDENTITY, |m, op| m * op.matrix())
    }

    /// Merges neighbouring dilations, chirps and fractional Fourier
    /// transforms and drops identities. These merges are exact
    /// (`D_a D_b = D_{ab}`, `V_p V_q = V_{p+q}`, `F_r F_s = F_{r+s}`), so the
    /// simplified chain is the same operator, not just equal up to phase.
    pub fn simplified(&self) -> OperatorChain {
        let mut out: Vec<UnitaryOp> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let op = match *op {
                UnitaryOp::Fourier => UnitaryOp::Frft { r: FRAC_PI_2 },
                other => other,
            };
            if !op.is_identity() {
                out.push(op);
            }
            while out.len() >= 2 {
                let n = out.len();
                let merged = match (out[n - 2], out[n - 1]) {
                    (UnitaryOp::Dilation { a }, UnitaryOp::Dilation { a: b }) => UnitaryOp::Dilation { a: a * b },
                    (UnitaryOp::Chirp { q }, UnitaryOp::Chirp { q: p }) => UnitaryOp::Chirp { q: q + p },
                    (UnitaryOp::Frft { r }, UnitaryOp::Frft { r: s }) => UnitaryOp::Frft { r: wrap_angle(r + s) },
                    _ => break,
                };
                out.truncate(n - 2);
                if !merged.is_identity() {
                    out.push(merged);
                }
            }
        }
        OperatorChain { ops: out }
    }
}

/// `t -> e^{2 pi i omega t} f(t - x)`.
pub fn apply_tf_shift(z: TfPoint, f: &SampledFunction) -> Result<SampledFunction> {
    let grid = f.grid();
    if let Some((lo, hi)) = f.effective_support(1e-14) {
        if lo + z.x < grid.start || hi + z.x > grid.end() {
            return Err(Error::ShiftExceedsGrid { shift: z.x, lo, hi, extent: grid.half_extent() });
        }
    }
    let nodes = z.x / grid.step;
    let whole = nodes.round();
    let shifted = if (nodes - whole).abs() < 1e-12 {
        let offset = whole as i64;
        let values = (0..grid.len as i64)
            .map(|i| {
                let src = i - offset;
                if src >= 0 && (src as usize) < grid.len {
                    f.values()[src as usize]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        SampledFunction::new(grid, values)
    } else {
        SampledFunction::from_fn(grid, |t| f.at(t - z.x))
    };
    if z.omega == 0.0 {
        return Ok(shifted);
    }
    Ok(shifted.map_values(|t, v| v * Complex64::from_polar(1.0, 2.0 * PI * z.omega * t)))
}

/// `t -> a^{-1/2} f(t / a)`.
pub fn apply_dilation(a: f64, f: &SampledFunction) -> Result<SampledFunction> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidArgument(format!("dilation needs a > 0, got {a}")));
    }
    if a == 1.0 {
        return Ok(f.clone());
    }
    let grid = f.grid();
    if let Some((lo, hi)) = f.effective_support(1e-14) {
        if a * lo < grid.start || a * hi > grid.end() {
            return Err(Error::DilationExceedsGrid { factor: a, extent: grid.half_extent() });
        }
    }
    let norm = a.sqrt().recip();
    Ok(SampledFunction::from_fn(grid, |t| f.at(t / a) * norm))
}

/// `t -> e^{pi i q t^2} f(t)`.
pub fn apply_chirp(q: f64, f: &SampledFunction) -> SampledFunction {
    f.map_values(|t, v| v * Complex64::from_polar(1.0, PI * q * t * t))
}

/// The Fourier transform `F = F_{pi/2}`.
pub fn apply_fourier(f: &SampledFunction) -> Result<SampledFunction> {
    frft_quadrature(FRAC_PI_2, f)
}

/// Applies a single operator to a sampled function.
pub fn apply_op(op: &UnitaryOp, f: &SampledFunction, method: FrftMethod) -> Result<SampledFunction> {
    op.validate()?;
    match *op {
        UnitaryOp::Dilation { a } => apply_dilation(a, f),
        UnitaryOp::Chirp { q } => Ok(apply_chirp(q, f)),
        UnitaryOp::Frft { r } => apply_frft(r, f, method),
        UnitaryOp::Fourier => apply_frft(FRAC_PI_2, f, method),
        UnitaryOp::TfShift { x, omega } => apply_tf_shift(TfPoint::new(x, omega), f),
    }
}

/// Applies a chain, innermost operator first.
pub fn apply_chain(chain: &OperatorChain, f: &SampledFunction, method: FrftMethod) -> Result<SampledFunction> {
    chain.ops.iter().rev().try_fold(f.clone(), |acc, op| apply_op(op, &acc, method))
}

/// Matched-phase intertwining defect of `op` at `z` for the Hermite window
/// `h_n`:
///
/// `min_{|c|=1} || U pi(z) U^{-1} h_n - c pi(M z) h_n || / || h_n ||`.
///
/// The left side is built as the window `h_n` carrying the chain
/// `[U, pi(z), U^{-1}]`, so every operator is applied exactly as the frame
/// code applies it; the right side is evaluated in closed form.
pub fn intertwining_defect(op: &UnitaryOp, z: TfPoint, n: HermiteIndex, grid: Grid) -> Result<f64> {
    let chain = OperatorChain::new(vec![*op, UnitaryOp::shift(z), op.inverse()])?;
    let lhs = Window::new(n, chain).sample(grid)?;
    let image = op.matrix().apply(z);
    let rhs = Window::new(n, OperatorChain::new(vec![UnitaryOp::shift(image)])?).sample(grid)?;
    Ok(lhs.matched_phase_distance(&rhs).0)
}
