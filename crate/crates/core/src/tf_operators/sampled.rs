use num_complex::Complex64;
use rayon::prelude::*;

/// Uniform grid `start + i * step`, `i = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

/// Half extent of the default grid.
pub const DEFAULT_HALF_EXTENT: f64 = 12.0;
/// Step of the default grid.
pub const DEFAULT_STEP: f64 = 1.0 / 128.0;

impl Default for Grid {
    fn default() -> Self {
        Grid::symmetric(DEFAULT_HALF_EXTENT, DEFAULT_STEP)
    }
}

impl Grid {
    /// Grid on `[-half_extent, half_extent]` with the origin as a node.
    pub fn symmetric(half_extent: f64, step: f64) -> Self {
        assert!(step > 0.0 && half_extent > 0.0, "grid needs positive step and extent");
        let half = (half_extent / step).round() as usize;
        Grid { start: -(half as f64) * step, step, len: 2 * half + 1 }
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn end(&self) -> f64 {
        self.point(self.len - 1)
    }

    /// Half extent of a symmetric grid.
    pub fn half_extent(&self) -> f64 {
        self.end().max(-self.start)
    }

    pub fn is_symmetric(&self) -> bool {
        (self.start + self.end()).abs() <= 1e-12 * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(|i| self.point(i))
    }
}

const STENCIL: usize = 16;

/// Barycentric weights `(-1)^i C(STENCIL-1, i)` for equispaced nodes.
fn stencil_weights() -> [f64; STENCIL] {
    let mut w = [0.0; STENCIL];
    let mut binom = 1.0;
    for (i, wi) in w.iter_mut().enumerate() {
        *wi = if i % 2 == 0 { binom } else { -binom };
        binom = binom * (STENCIL - 1 - i) as f64 / (i + 1) as f64;
    }
    w
}

/// A complex function sampled on a uniform grid.
///
/// Values between nodes come from a 16-point centered Lagrange stencil; the
/// function is taken to vanish outside the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Self {
        assert_eq!(grid.len, values.len(), "sample count must match the grid");
        SampledFunction { grid, values }
    }

    pub fn from_fn<F>(grid: Grid, f: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Sync,
    {
        let values = (0..grid.len).into_par_iter().map(|i| f(grid.point(i))).collect();
        SampledFunction { grid, values }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Interpolated value at `t`.
    pub fn at(&self, t: f64) -> Complex64 {
        let g = &self.grid;
        let pos = (t - g.start) / g.step;
        if !pos.is_finite() || pos < -1.0 || pos > g.len as f64 {
            return Complex64::new(0.0, 0.0);
        }
        let nearest = pos.round();
        if (pos - nearest).abs() < 1e-13 {
            let i = nearest as i64;
            return if i >= 0 && (i as usize) < g.len { self.values[i as usize] } else { Complex64::new(0.0, 0.0) };
        }
        let base = pos.floor() as i64 - (STENCIL as i64 / 2 - 1);
        let weights = stencil_weights();
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        for (m, w) in weights.iter().enumerate() {
            let idx = base + m as i64;
            let c = w / (pos - idx as f64);
            den += c;
            if idx >= 0 && (idx as usize) < g.len {
                num += self.values[idx as usize] * c;
            }
        }
        num / den
    }

    /// `sum |f|^2 * step`.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.step
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self, other> = sum self * conj(other) * step` on a shared grid.
    pub fn inner(&self, other: &SampledFunction) -> Complex64 {
        assert_eq!(self.grid, other.grid, "inner product needs a shared grid");
        self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum::<Complex64>() * self.grid.step
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Smallest interval containing every node with `|f| > rel * max|f|`.
    pub fn effective_support(&self, rel: f64) -> Option<(f64, f64)> {
        let cut = rel * self.max_abs();
        let first = self.values.iter().position(|v| v.norm() > cut)?;
        let last = self.values.iter().rposition(|v| v.norm() > cut)?;
        Some((self.grid.point(first), self.grid.point(last)))
    }

    pub fn map_values<F>(&self, f: F) -> SampledFunction
    where
        F: Fn(f64, Complex64) -> Complex64 + Sync,
    {
        let values = self.values.par_iter().enumerate().map(|(i, v)| f(self.grid.point(i), *v)).collect();
        SampledFunction { grid: self.grid, values }
    }

    pub fn scale(&self, c: Complex64) -> SampledFunction {
        self.map_values(|_, v| v * c)
    }

    pub fn add(&self, other: &SampledFunction) -> SampledFunction {
        assert_eq!(self.grid, other.grid);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        SampledFunction { grid: self.grid, values }
    }

    pub fn sub(&self, other: &SampledFunction) -> SampledFunction {
        assert_eq!(self.grid, other.grid);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        SampledFunction { grid: self.grid, values }
    }

    /// `||self - other|| / ||other||`.
    pub fn relative_distance(&self, other: &SampledFunction) -> f64 {
        self.sub(other).norm() / other.norm()
    }

    /// `min_{|c| = 1} ||self - c other|| / ||other||` and the minimizing `c`.
    pub fn matched_phase_distance(&self, other: &SampledFunction) -> (f64, Complex64) {
        let ip = self.inner(other);
        let c = if ip.norm() > 0.0 { ip / ip.norm() } else { Complex64::new(1.0, 0.0) };
        (self.sub(&other.scale(c)).norm() / other.norm(), c)
    }

    /// `t -> f(-t)`; exact on symmetric grids.
    pub fn reflect(&self) -> SampledFunction {
        if self.grid.is_symmetric() {
            let mut values = self.values.clone();
            values.reverse();
            SampledFunction { grid: self.grid, values }
        } else {
            SampledFunction::from_fn(self.grid, |t| self.at(-t))
        }
    }
}
