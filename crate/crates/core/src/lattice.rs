//! Time-frequency point sets built from shifted copies of a lattice.
//!
//! A [`PointSet`] is `union_j (G Z^2 + s_j)` for a generator matrix `G` and a
//! finite list of coset shifts. Shifts are kept in canonical form: reduced to
//! the fundamental domain `G [0,1)^2`, deduplicated and ordered
//! lexicographically in generator coordinates, so two descriptions of the same
//! union compare equal field by field.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tf_operators::TfPoint;

/// Membership tolerance in generator coordinates.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// A real 2x2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[[f64; 2]; 2]", into = "[[f64; 2]; 2]")]
pub struct Matrix2x2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl From<[[f64; 2]; 2]> for Matrix2x2 {
    fn from(m: [[f64; 2]; 2]) -> Self {
        Matrix2x2::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl From<Matrix2x2> for [[f64; 2]; 2] {
    fn from(m: Matrix2x2) -> Self {
        [[m.a, m.b], [m.c, m.d]]
    }
}

impl fmt::Display for Matrix2x2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{:?}, {:?}], [{:?}, {:?}]]", self.a, self.b, self.c, self.d)
    }
}

impl std::ops::Mul for Matrix2x2 {
    type Output = Matrix2x2;

    fn mul(self, o: Matrix2x2) -> Matrix2x2 {
        Matrix2x2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Matrix2x2 {
    pub const IDENTITY: Matrix2x2 = Matrix2x2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Matrix2x2 { a, b, c, d }
    }

    /// `D_a = diag(a, 1/a)`.
    pub fn dilation(a: f64) -> Self {
        Matrix2x2::new(a, 0.0, 0.0, 1.0 / a)
    }

    /// `V_q = [[1, 0], [q, 1]]`.
    pub fn chirp(q: f64) -> Self {
        Matrix2x2::new(1.0, 0.0, q, 1.0)
    }

    /// `R_r = [[cos r, sin r], [-sin r, cos r]]`.
    pub fn rotation(r: f64) -> Self {
        let (s, c) = r.sin_cos();
        Matrix2x2::new(c, s, -s, c)
    }

    pub fn scalar(s: f64) -> Self {
        Matrix2x2::new(s, 0.0, 0.0, s)
    }

    pub fn scaled(self, s: f64) -> Self {
        Matrix2x2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Result<Matrix2x2> {
        let det = self.det();
        let scale = self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs());
        if !det.is_finite() || det.abs() <= 1e-14 * scale * scale {
            return Err(Error::SingularMatrix { det });
        }
        Ok(Matrix2x2::new(self.d / det, -self.b / det, -self.c / det, self.a / det))
    }

    pub fn apply(&self, p: TfPoint) -> TfPoint {
        TfPoint::new(self.a * p.x + self.b * p.omega, self.c * p.x + self.d * p.omega)
    }

    pub fn transpose(&self) -> Matrix2x2 {
        Matrix2x2::new(self.a, self.c, self.b, self.d)
    }

    pub fn max_abs_diff(&self, o: &Matrix2x2) -> f64 {
        (self.a - o.a).abs().max((self.b - o.b).abs()).max((self.c - o.c).abs()).max((self.d - o.d).abs())
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.max_abs_diff(&Matrix2x2::IDENTITY) <= tol
    }

    /// Rounds to an integer matrix if every entry is within `tol` of an integer.
    pub fn to_integer(&self, tol: f64) -> Option<[[i64; 2]; 2]> {
        let round = |v: f64| {
            let r = v.round();
            ((v - r).abs() <= tol && r.abs() < 1e15).then_some(r as i64)
        };
        Some([[round(self.a)?, round(self.b)?], [round(self.c)?, round(self.d)?]])
    }

    fn from_integer(m: [[i64; 2]; 2]) -> Matrix2x2 {
        Matrix2x2::new(m[0][0] as f64, m[0][1] as f64, m[1][0] as f64, m[1][1] as f64)
    }
}

/// Parameters of `M = s * R_r V_q D_a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IwasawaFactors {
    /// Rotation angle in `(-pi, pi]`.
    pub r: f64,
    /// Chirp (shear) parameter.
    pub q: f64,
    /// Dilation parameter, `a > 0`.
    pub a: f64,
    /// `sqrt(det M)`; equal to 1 for members of SL(2, R).
    pub scale: f64,
}

impl IwasawaFactors {
    pub fn recompose(&self) -> Matrix2x2 {
        (Matrix2x2::rotation(self.r) * Matrix2x2::chirp(self.q) * Matrix2x2::dilation(self.a)).scaled(self.scale)
    }

    /// The diagonal factor with the scale folded in, `s * D_a`.
    pub fn scaled_dilation(&self) -> Matrix2x2 {
        Matrix2x2::dilation(self.a).scaled(self.scale)
    }
}

/// Factors a matrix with positive determinant as `s * R_r V_q D_a`.
///
/// `V_q D_a = [[a, 0], [q a, 1/a]]` is lower triangular with positive
/// diagonal, so `R_r^T M / s` must be of that shape: the second column of
/// `M / s` fixes `a = 1 / |m_2|` and the angle `r`, and the first column then
/// gives `q`. The basis of `Z^2` is left untouched, so the recomposition
/// matches `M` itself rather than `M B` for some unimodular `B`.
///
/// Matrices with `det M != 1` are accepted; the scalar `s = sqrt(det M)`
/// is reported separately and multiplies the dilation.
pub fn iwasawa_factor(m: &Matrix2x2) -> Result<IwasawaFactors> {
    let det = m.det();
    if !det.is_finite() || det <= 0.0 {
        return Err(Error::NotUnimodular { det });
    }
    let scale = det.sqrt();
    let n = m.scaled(1.0 / scale);
    let (b, d) = (n.b, n.d);
    let len = b.hypot(d);
    let r = b.atan2(d);
    let a = 1.0 / len;
    let (s, c) = r.sin_cos();
    // second component of R_r^T (first column)
    let q = (s * n.a + c * n.c) / a;
    Ok(IwasawaFactors { r, q, a, scale })
}

/// A union of shifted copies of the lattice `generator * Z^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PointSetRepr", into = "PointSetRepr")]
pub struct PointSet {
    generator: Matrix2x2,
    shifts: Vec<TfPoint>,
}

fn origin_only() -> Vec<[f64; 2]> {
    vec![[0.0, 0.0]]
}

#[derive(Serialize, Deserialize)]
struct PointSetRepr {
    generator: [[f64; 2]; 2],
    #[serde(default = "origin_only")]
    shifts: Vec<[f64; 2]>,
}

impl TryFrom<PointSetRepr> for PointSet {
    type Error = Error;

    fn try_from(r: PointSetRepr) -> Result<Self> {
        PointSet::new(r.generator.into(), r.shifts.into_iter().map(|[x, w]| TfPoint::new(x, w)).collect())
    }
}

impl From<PointSet> for PointSetRepr {
    fn from(p: PointSet) -> Self {
        PointSetRepr { generator: p.generator.into(), shifts: p.shifts.iter().map(|s| [s.x, s.omega]).collect() }
    }
}

/// Reduces `v` into `[0, 1)`, mapping values within `tol` of 1 to 0.
fn wrap_unit(v: f64, tol: f64) -> f64 {
    let mut f = v - v.floor();
    if f >= 1.0 - tol {
        f = 0.0;
    }
    if f.abs() <= tol {
        f = 0.0;
    }
    f
}

impl PointSet {
    /// Builds a point set, normalizing the shifts. An empty shift list means
    /// the lattice itself.
    pub fn new(generator: Matrix2x2, shifts: Vec<TfPoint>) -> Result<Self> {
        let inv = generator.inverse()?;
        let shifts = if shifts.is_empty() { vec![TfPoint::ORIGIN] } else { shifts };
        let mut coords: Vec<(f64, f64)> = shifts
            .iter()
            .map(|s| {
                if !(s.x.is_finite() && s.omega.is_finite()) {
                    return Err(Error::InvalidArgument(format!("non-finite shift {s:?}")));
                }
                let c = inv.apply(*s);
                Ok((wrap_unit(c.x, MEMBERSHIP_TOL), wrap_unit(c.omega, MEMBERSHIP_TOL)))
            })
            .collect::<Result<_>>()?;
        coords.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
        coords.dedup_by(|p, q| (p.0 - q.0).abs() <= MEMBERSHIP_TOL && (p.1 - q.1).abs() <= MEMBERSHIP_TOL);
        let shifts = coords.into_iter().map(|(u, v)| generator.apply(TfPoint::new(u, v))).collect();
        Ok(PointSet { generator, shifts })
    }

    pub fn lattice(generator: Matrix2x2) -> Result<Self> {
        PointSet::new(generator, vec![TfPoint::ORIGIN])
    }

    /// `Z^2`.
    pub fn integer() -> Self {
        PointSet { generator: Matrix2x2::IDENTITY, shifts: vec![TfPoint::ORIGIN] }
    }

    /// `Z^2 ∪ (Z + 1/2)^2`.
    pub fn z2_union_half() -> Self {
        PointSet { generator: Matrix2x2::IDENTITY, shifts: vec![TfPoint::ORIGIN, TfPoint::new(0.5, 0.5)] }
    }

    /// The square lattice `2^{-1/2} Z^2` of density 2.
    pub fn sqrt2_square() -> Self {
        PointSet { generator: Matrix2x2::scalar(std::f64::consts::FRAC_1_SQRT_2), shifts: vec![TfPoint::ORIGIN] }
    }

    /// The rectangular lattice `D_{sqrt 2} Z^2`.
    pub fn d_sqrt2() -> Self {
        PointSet { generator: Matrix2x2::dilation(std::f64::consts::SQRT_2), shifts: vec![TfPoint::ORIGIN] }
    }

    pub fn generator(&self) -> Matrix2x2 {
        self.generator
    }

    pub fn shifts(&self) -> &[TfPoint] {
        &self.shifts
    }

    /// Points per unit area.
    pub fn density(&self) -> f64 {
        self.shifts.len() as f64 / self.generator.det().abs()
    }

    /// Whether this is exactly `Z^2` (identity generator, a single shift at 0).
    pub fn is_integer_lattice(&self) -> bool {
        self.generator.is_identity(1e-12)
            && self.shifts.len() == 1
            && self.shifts[0].x.abs() <= 1e-12
            && self.shifts[0].omega.abs() <= 1e-12
    }

    /// Adds another coset shift.
    pub fn with_shift(&self, z: TfPoint) -> Result<Self> {
        let mut shifts = self.shifts.clone();
        shifts.push(z);
        PointSet::new(self.generator, shifts)
    }

    /// Whether `p` belongs to the set, up to [`MEMBERSHIP_TOL`] in generator
    /// coordinates.
    pub fn contains(&self, p: TfPoint) -> bool {
        let Ok(inv) = self.generator.inverse() else { return false };
        self.shifts.iter().any(|s| {
            let c = inv.apply(TfPoint::new(p.x - s.x, p.omega - s.omega));
            (c.x - c.x.round()).abs() <= MEMBERSHIP_TOL && (c.omega - c.omega.round()).abs() <= MEMBERSHIP_TOL
        })
    }

    /// All points with max-norm at most `window`, lexicographically ordered
    /// and free of duplicates.
    pub fn enumerate(&self, window: f64) -> Vec<TfPoint> {
        let inv = match self.generator.inverse() {
            Ok(m) => m,
            Err(_) => return Vec::new(),
        };
        let row_norm = (inv.a.abs() + inv.b.abs()).max(inv.c.abs() + inv.d.abs());
        let slack = window * 1e-12 + 1e-12;
        let mut keyed: Vec<((i64, i64), TfPoint)> = Vec::new();
        for s in &self.shifts {
            let reach = row_norm * (window + s.x.abs().max(s.omega.abs())) + 1.0;
            let bound = reach.ceil() as i64;
            for i in -bound..=bound {
                for j in -bound..=bound {
                    let p = self.generator.apply(TfPoint::new(i as f64, j as f64));
                    let p = TfPoint::new(p.x + s.x, p.omega + s.omega);
                    if p.x.abs() <= window + slack && p.omega.abs() <= window + slack {
                        keyed.push((p.key(), p));
                    }
                }
            }
        }
        keyed.sort_by_key(|k| k.0);
        keyed.dedup_by(|a, b| a.0 == b.0);
        keyed.into_iter().map(|(_, p)| p).collect()
    }

    /// Whether both sets agree on the square `[-window, window]^2`.
    pub fn same_points(&self, other: &PointSet, window: f64) -> bool {
        let a: Vec<_> = self.enumerate(window).iter().map(|p| p.key()).collect();
        let b: Vec<_> = other.enumerate(window).iter().map(|p| p.key()).collect();
        a == b
    }

    /// The image `M * set`.
    pub fn transform(&self, m: &Matrix2x2) -> Result<PointSet> {
        m.inverse()?;
        PointSet::new(*m * self.generator, self.shifts.iter().map(|s| m.apply(*s)).collect())
    }

    /// The translate `set + z`.
    pub fn translate(&self, z: TfPoint) -> Result<PointSet> {
        PointSet::new(self.generator, self.shifts.iter().map(|s| TfPoint::new(s.x + z.x, s.omega + z.omega)).collect())
    }
}

/// Representatives of `Z^2 / C Z^2` for an integer matrix `C` with nonzero
/// determinant, returned in increasing order.
pub fn integer_coset_representatives(c: [[i64; 2]; 2]) -> Result<Vec<(i64, i64)>> {
    let det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
    if det == 0 {
        return Err(Error::SingularMatrix { det: 0.0 });
    }
    let m = det.abs();
    // v ~ w iff adj(C) (v - w) = 0 mod det
    let adj = [[c[1][1], -c[0][1]], [-c[1][0], c[0][0]]];
    let mut seen = std::collections::BTreeSet::new();
    let mut reps = Vec::with_capacity(m as usize);
    'outer: for i in 0..m {
        for j in 0..m {
            let k0 = (adj[0][0] * i + adj[0][1] * j).rem_euclid(m);
            let k1 = (adj[1][0] * i + adj[1][1] * j).rem_euclid(m);
            if seen.insert((k0, k1)) {
                reps.push((i, j));
                if reps.len() as i64 == m {
                    break 'outer;
                }
            }
        }
    }
    Ok(reps)
}

/// Writes `target * Z^2` as a union of cosets of `gen * Z^2`.
///
/// Requires `target^{-1} gen` to be an integer matrix; its determinant is the
/// number of cosets.
pub fn coset_split(gen: &Matrix2x2, target: &Matrix2x2) -> Result<PointSet> {
    let tinv = target.inverse()?;
    gen.inverse()?;
    let c = tinv * *gen;
    let ci = c
        .to_integer(MEMBERSHIP_TOL)
        .ok_or_else(|| Error::NotASublattice(format!("target^-1 * gen = {c} is not an integer matrix")))?;
    let index = (gen.det() / target.det()).abs();
    if (index - index.round()).abs() > 1e-9 * index.max(1.0) || index.round() < 1.0 {
        return Err(Error::NotASublattice(format!("index {index} is not a positive integer")));
    }
    let reps = integer_coset_representatives(ci)?;
    let shifts = reps.into_iter().map(|(i, j)| target.apply(TfPoint::new(i as f64, j as f64))).collect();
    PointSet::new(*gen, shifts)
}

/// Finds an integer matrix `C` with `det C = 1 / det G` (a positive integer)
/// such that `G C` is unimodular. Prefers `C = G^{-1}` when that is integral.
pub(crate) fn unimodular_sublattice(g: &Matrix2x2) -> Result<[[i64; 2]; 2]> {
    let det = g.det();
    if !(det.is_finite() && det > 0.0) {
        return Err(Error::IrreducibleSet(format!("generator determinant {det} is not positive")));
    }
    let m = 1.0 / det;
    let mr = m.round();
    if mr < 1.0 || (m - mr).abs() > 1e-9 * mr {
        return Err(Error::IrreducibleSet(format!(
            "generator covolume {det} is not the reciprocal of a positive integer"
        )));
    }
    if let Some(ci) = g.inverse()?.to_integer(MEMBERSHIP_TOL) {
        return Ok(ci);
    }
    Ok([[mr as i64, 0], [0, 1]])
}

pub(crate) fn integer_matrix(m: [[i64; 2]; 2]) -> Matrix2x2 {
    Matrix2x2::from_integer(m)
}

/// Normalizes an angle into `(-pi, pi]`.
pub fn wrap_angle(r: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut w = r.rem_euclid(two_pi);
    if w > PI {
        w -= two_pi;
    }
    w
}
