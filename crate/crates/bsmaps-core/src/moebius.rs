//! Holomorphic and antiholomorphic Möbius transformations of the unit disk
//! and the upper half-plane, together with geodesics and circle reflections.
//!
//! A map is stored as a normalized 2×2 complex matrix plus a flag saying
//! whether the argument is conjugated first:
//! `f(z) = (a·w + b) / (c·w + d)` with `w = z` or `w = conj(z)`.
//! Points of the ideal boundary are [`BoundaryPoint`]s; the point at infinity
//! of the half-plane model is an enum variant, never an IEEE infinity.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance used when comparing normalized matrices.
pub const MAP_EQ_TOL: f64 = 1e-10;

/// Tolerance around `|trace| = 2` used by [`MoebiusMap::classify`].
pub const TRACE_TOL: f64 = 1e-9;

/// Errors raised by Möbius-map construction and composition.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MoebiusError {
    /// The two operands live in different models.
    #[error("model mismatch: expected {expected}, found {found}")]
    ModelMismatch {
        /// Model required by the operation.
        expected: Model,
        /// Model actually supplied.
        found: Model,
    },
    /// The matrix has (numerically) zero determinant.
    #[error("singular matrix (determinant {0:e})")]
    Singular(f64),
    /// Geodesic endpoints coincide or are of the wrong kind.
    #[error("degenerate geodesic: {0}")]
    DegenerateGeodesic(String),
}

/// Model of the hyperbolic plane a point or map refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    /// The unit disk; boundary is the unit circle.
    #[serde(rename = "disk")]
    Disk,
    /// The upper half-plane; boundary is the extended real line.
    #[serde(rename = "half-plane")]
    HalfPlane,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Disk => write!(f, "disk"),
            Model::HalfPlane => write!(f, "half-plane"),
        }
    }
}

/// A point of the ideal boundary in one of the two models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    /// A point of the unit circle (modulus renormalized to 1).
    Disk(Complex64),
    /// A finite point of the real line.
    Real(f64),
    /// The point at infinity of the half-plane model.
    Infinity,
}

/// Reduce a turn value to `[0, 1)`.
pub fn wrap_turn(t: f64) -> f64 {
    let r = t.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Counter-clockwise distance in turns from `a` to `b`, in `[0, 1)`.
pub fn ccw_turns(a: f64, b: f64) -> f64 {
    wrap_turn(b - a)
}

/// Unit-circle point at the given angle measured in turns.
pub fn from_turn(t: f64) -> Complex64 {
    let th = 2.0 * PI * t;
    Complex64::new(th.cos(), th.sin())
}

/// Angle of a nonzero complex number in turns, in `[0, 1)`.
pub fn turn_of(z: Complex64) -> f64 {
    wrap_turn(z.im.atan2(z.re) / (2.0 * PI))
}

impl BoundaryPoint {
    /// Disk-model point, renormalized onto the unit circle.
    pub fn disk(z: Complex64) -> Self {
        let n = z.norm();
        if n == 0.0 {
            BoundaryPoint::Disk(Complex64::new(1.0, 0.0))
        } else {
            BoundaryPoint::Disk(z / n)
        }
    }

    /// Disk-model point at an angle given in turns.
    pub fn from_turn(t: f64) -> Self {
        BoundaryPoint::Disk(from_turn(t))
    }

    /// Model this point belongs to.
    pub fn model(&self) -> Model {
        match self {
            BoundaryPoint::Disk(_) => Model::Disk,
            _ => Model::HalfPlane,
        }
    }

    /// The complex value of a disk point.
    ///
    /// # Panics
    /// Panics on half-plane points.
    pub fn z(&self) -> Complex64 {
        match self {
            BoundaryPoint::Disk(z) => *z,
            _ => panic!("half-plane point has no unit-circle value"),
        }
    }

    /// Angle of a disk point in turns, in `[0, 1)`.
    pub fn turn(&self) -> f64 {
        turn_of(self.z())
    }

    /// Distance to another point of the same model; infinite points are at
    /// distance 0 from each other and `f64::INFINITY` from finite ones.
    pub fn distance(&self, other: &BoundaryPoint) -> f64 {
        match (self, other) {
            (BoundaryPoint::Disk(a), BoundaryPoint::Disk(b)) => (a - b).norm(),
            (BoundaryPoint::Real(a), BoundaryPoint::Real(b)) => (a - b).abs(),
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => 0.0,
            _ => f64::INFINITY,
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Disk(z) => write!(f, "{:.12}{:+.12}i", z.re, z.im),
            BoundaryPoint::Real(x) => write!(f, "{x:.12}"),
            BoundaryPoint::Infinity => write!(f, "∞"),
        }
    }
}

/// Conjugacy type of a holomorphic Möbius map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    /// The identity map.
    Identity,
    /// `|trace| < 2`.
    Elliptic,
    /// `|trace| = 2`, not the identity.
    Parabolic,
    /// `|trace| > 2`.
    Hyperbolic,
}

/// A normalized holomorphic or antiholomorphic Möbius map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MoebiusJson", into = "MoebiusJson")]
pub struct MoebiusMap {
    m: [Complex64; 4],
    anti: bool,
    domain: Model,
    codomain: Model,
}

#[derive(Serialize, Deserialize)]
struct MoebiusJson {
    model: Model,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    to: Option<Model>,
    anti: bool,
    m: [[f64; 2]; 4],
}

impl From<MoebiusMap> for MoebiusJson {
    fn from(f: MoebiusMap) -> Self {
        MoebiusJson {
            model: f.domain,
            to: (f.codomain != f.domain).then_some(f.codomain),
            anti: f.anti,
            m: f.m.map(|e| [e.re, e.im]),
        }
    }
}

impl TryFrom<MoebiusJson> for MoebiusMap {
    type Error = MoebiusError;
    fn try_from(j: MoebiusJson) -> Result<Self, Self::Error> {
        let [a, b, c, d] = j.m.map(|[re, im]| Complex64::new(re, im));
        MoebiusMap::between(a, b, c, d, j.anti, j.model, j.to.unwrap_or(j.model))
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl MoebiusMap {
    /// Build a map of the given model from matrix entries, normalizing the
    /// determinant to 1 and fixing the sign.
    pub fn new(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        anti: bool,
        model: Model,
    ) -> Result<Self, MoebiusError> {
        Self::between(a, b, c, d, anti, model, model)
    }

    /// Build a map from one model to another (used by the Cayley transform).
    pub fn between(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        anti: bool,
        domain: Model,
        codomain: Model,
    ) -> Result<Self, MoebiusError> {
        let det = a * d - b * c;
        let scale = [a, b, c, d].iter().map(|e| e.norm()).fold(0.0, f64::max);
        if !(det.norm() > 1e-24 * scale * scale.max(1.0)) || !det.norm().is_finite() {
            return Err(MoebiusError::Singular(det.norm()));
        }
        let s = det.sqrt();
        let mut m = [a / s, b / s, c / s, d / s];
        if let Some(first) = m.iter().find(|e| e.norm() > 1e-12) {
            let neg = first.re < -1e-14 || (first.re.abs() <= 1e-14 && first.im < 0.0);
            if neg {
                m = m.map(|e| -e);
            }
        }
        Ok(MoebiusMap {
            m,
            anti,
            domain,
            codomain,
        })
    }

    /// Identity map of the given model.
    pub fn identity(model: Model) -> Self {
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        MoebiusMap::new(one, zero, zero, one, false, model).expect("identity is regular")
    }

    /// Complex conjugation `z ↦ conj(z)` of the disk (reflection in the
    /// real diameter).
    pub fn conjugation() -> Self {
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        MoebiusMap::new(one, zero, zero, one, true, Model::Disk).expect("regular")
    }

    /// Rotation `z ↦ e^{2πi t} z` of the disk.
    pub fn rotation(turns: f64) -> Self {
        let h = from_turn(turns / 2.0);
        MoebiusMap::new(h, c(0.0, 0.0), c(0.0, 0.0), h.conj(), false, Model::Disk).expect("regular")
    }

    /// Normalized matrix entries `[a, b, c, d]`.
    pub fn matrix(&self) -> [Complex64; 4] {
        self.m
    }

    /// Whether the map is antiholomorphic.
    pub fn is_anti(&self) -> bool {
        self.anti
    }

    /// Model of the source.
    pub fn domain(&self) -> Model {
        self.domain
    }

    /// Model of the target.
    pub fn codomain(&self) -> Model {
        self.codomain
    }

    /// The map `self ∘ g`.
    pub fn compose(&self, g: &MoebiusMap) -> Result<MoebiusMap, MoebiusError> {
        if self.domain != g.codomain {
            return Err(MoebiusError::ModelMismatch {
                expected: self.domain,
                found: g.codomain,
            });
        }
        let [a, b, cc, d] = self.m;
        let [e, f, g0, h] = if self.anti { g.m.map(|x| x.conj()) } else { g.m };
        MoebiusMap::between(
            a * e + b * g0,
            a * f + b * h,
            cc * e + d * g0,
            cc * f + d * h,
            self.anti ^ g.anti,
            g.domain,
            self.codomain,
        )
    }

    /// The inverse map.
    pub fn inverse(&self) -> MoebiusMap {
        let [a, b, cc, d] = self.m;
        let mut inv = [d, -b, -cc, a];
        if self.anti {
            inv = inv.map(|x| x.conj());
        }
        MoebiusMap::between(
            inv[0],
            inv[1],
            inv[2],
            inv[3],
            self.anti,
            self.codomain,
            self.domain,
        )
        .expect("inverse of a regular matrix is regular")
    }

    /// `self` raised to an integer power (negative powers use the inverse).
    pub fn pow(&self, n: i64) -> MoebiusMap {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = MoebiusMap::identity(self.domain);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq).expect("same model");
            }
            sq = sq.compose(&sq).expect("same model");
            e >>= 1;
        }
        acc
    }

    /// Apply the map to a complex number in the domain model.
    /// Returns `None` at a pole.
    pub fn apply_complex(&self, z: Complex64) -> Option<Complex64> {
        let w = if self.anti { z.conj() } else { z };
        let [a, b, cc, d] = self.m;
        let num = a * w + b;
        let den = cc * w + d;
        if den.norm() <= 1e-14 * num.norm().max(1.0) {
            None
        } else {
            Some(num / den)
        }
    }

    /// Fast path for disk-model maps acting on unit-circle values.
    pub fn apply_disk(&self, z: Complex64) -> Complex64 {
        debug_assert_eq!(self.domain, Model::Disk);
        debug_assert_eq!(self.codomain, Model::Disk);
        let w = self.apply_complex(z).unwrap_or(c(1.0, 0.0));
        w / w.norm()
    }

    /// Apply the map to a boundary point.
    pub fn apply(&self, p: BoundaryPoint) -> Result<BoundaryPoint, MoebiusError> {
        if p.model() != self.domain {
            return Err(MoebiusError::ModelMismatch {
                expected: self.domain,
                found: p.model(),
            });
        }
        let image = match p {
            BoundaryPoint::Disk(z) => self.apply_complex(z),
            BoundaryPoint::Real(x) => self.apply_complex(c(x, 0.0)),
            BoundaryPoint::Infinity => {
                let [a, _, cc, _] = self.m;
                if cc.norm() <= 1e-14 * a.norm().max(1.0) {
                    None
                } else {
                    Some(a / cc)
                }
            }
        };
        Ok(match (self.codomain, image) {
            (Model::Disk, Some(w)) => BoundaryPoint::disk(w),
            (Model::Disk, None) => BoundaryPoint::disk(c(1.0, 0.0)),
            (Model::HalfPlane, Some(w)) => BoundaryPoint::Real(w.re),
            (Model::HalfPlane, None) => BoundaryPoint::Infinity,
        })
    }

    /// `|f′(p)|` at a boundary point, from the matrix entries.
    ///
    /// At the half-plane point ∞ the derivative is taken in the chart
    /// `u = 1/z` at the source and, if `f(∞) = ∞`, also at the target.
    pub fn circle_derivative(&self, p: BoundaryPoint) -> f64 {
        let [a, _, cc, d] = self.m;
        match p {
            BoundaryPoint::Disk(z) => {
                let w = if self.anti { z.conj() } else { z };
                1.0 / (cc * w + d).norm_sqr()
            }
            BoundaryPoint::Real(x) => 1.0 / (cc * x + d).norm_sqr(),
            BoundaryPoint::Infinity => {
                if cc.norm() > 1e-14 {
                    1.0 / cc.norm_sqr()
                } else {
                    1.0 / a.norm_sqr()
                }
            }
        }
    }

    /// Trace of the normalized matrix.
    pub fn trace(&self) -> Complex64 {
        self.m[0] + self.m[3]
    }

    /// Classify a holomorphic map by `|trace|`.
    pub fn classify(&self) -> ElementKind {
        if self.approx_eq(&MoebiusMap::identity(self.domain), MAP_EQ_TOL) {
            return ElementKind::Identity;
        }
        let t = self.trace().norm();
        if (t - 2.0).abs() <= TRACE_TOL {
            ElementKind::Parabolic
        } else if t < 2.0 {
            ElementKind::Elliptic
        } else {
            ElementKind::Hyperbolic
        }
    }

    /// Equality as projective maps: same flag and models, and entries equal
    /// within `tol` up to the overall sign.
    pub fn approx_eq(&self, other: &MoebiusMap, tol: f64) -> bool {
        if self.anti != other.anti || self.domain != other.domain || self.codomain != other.codomain {
            return false;
        }
        let plus = (0..4)
            .map(|i| (self.m[i] - other.m[i]).norm())
            .fold(0.0, f64::max);
        let minus = (0..4)
            .map(|i| (self.m[i] + other.m[i]).norm())
            .fold(0.0, f64::max);
        plus.min(minus) <= tol
    }

    /// Whether a disk map has the disk-preserving form `d = conj(a)`,
    /// `c = conj(b)` within `tol`.
    pub fn is_disk_form(&self, tol: f64) -> bool {
        let [a, b, cc, d] = self.m;
        (d - a.conj()).norm() <= tol && (cc - b.conj()).norm() <= tol
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, cc, d] = self.m;
        let z = if self.anti { "conj(z)" } else { "z" };
        write!(f, "({a:.6})·{z}+({b:.6}) / ({cc:.6})·{z}+({d:.6})")
    }
}

/// A hyperbolic geodesic given by its two ideal endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    a: BoundaryPoint,
    b: BoundaryPoint,
}

impl Geodesic {
    /// Geodesic between two distinct boundary points of the same model.
    pub fn new(a: BoundaryPoint, b: BoundaryPoint) -> Result<Self, MoebiusError> {
        if a.model() != b.model() {
            return Err(MoebiusError::DegenerateGeodesic(
                "endpoints in different models".into(),
            ));
        }
        if a.distance(&b) <= 1e-10 {
            return Err(MoebiusError::DegenerateGeodesic(format!(
                "endpoints {a} and {b} coincide"
            )));
        }
        Ok(Geodesic { a, b })
    }

    /// Geodesic between two unit-circle values.
    pub fn disk(a: Complex64, b: Complex64) -> Result<Self, MoebiusError> {
        Geodesic::new(BoundaryPoint::disk(a), BoundaryPoint::disk(b))
    }

    /// The two endpoints.
    pub fn endpoints(&self) -> (BoundaryPoint, BoundaryPoint) {
        (self.a, self.b)
    }

    /// For a disk geodesic with non-antipodal endpoints: center and radius of
    /// the circle orthogonal to the unit circle that contains it. `None` for
    /// diameters and half-plane geodesics.
    pub fn orthogonal_circle(&self) -> Option<(Complex64, f64)> {
        match (self.a, self.b) {
            (BoundaryPoint::Disk(p), BoundaryPoint::Disk(q)) => {
                if (p + q).norm() < 1e-12 {
                    None
                } else {
                    let center = (p + q) / (1.0 + (p * q.conj()).re);
                    Some((center, (center.norm_sqr() - 1.0).max(0.0).sqrt()))
                }
            }
            _ => None,
        }
    }
}

/// The antiholomorphic reflection fixing a geodesic pointwise.
pub fn reflection_in_geodesic(geo: &Geodesic) -> MoebiusMap {
    let zero = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    match geo.endpoints() {
        (BoundaryPoint::Disk(p), BoundaryPoint::Disk(_)) => match geo.orthogonal_circle() {
            None => MoebiusMap::new(p, zero, zero, p.conj(), true, Model::Disk),
            Some((center, _)) => MoebiusMap::new(center, -one, one, -center.conj(), true, Model::Disk),
        },
        (BoundaryPoint::Infinity, BoundaryPoint::Real(x))
        | (BoundaryPoint::Real(x), BoundaryPoint::Infinity) => {
            MoebiusMap::new(-one, c(2.0 * x, 0.0), zero, one, true, Model::HalfPlane)
        }
        (BoundaryPoint::Real(x), BoundaryPoint::Real(y)) => {
            let m = (x + y) / 2.0;
            let rho = (x - y).abs() / 2.0;
            MoebiusMap::new(
                c(m, 0.0),
                c(rho * rho - m * m, 0.0),
                one,
                c(-m, 0.0),
                true,
                Model::HalfPlane,
            )
        }
        _ => unreachable!("geodesic endpoints share a model"),
    }
    .expect("reflection matrices are regular")
}

/// Inversion `z ↦ center + r² / conj(z − center)` in a circle.
pub fn circle_inversion(center: Complex64, radius: f64) -> MoebiusMap {
    let r2 = radius * radius;
    MoebiusMap::new(
        center,
        c(r2, 0.0) - center.norm_sqr(),
        c(1.0, 0.0),
        -center.conj(),
        true,
        Model::Disk,
    )
    .expect("inversion matrix is regular")
}

/// The Cayley transform `M(z) = i(1 − z)/(1 + z)` from the disk to the
/// upper half-plane.
pub fn cayley_transform() -> MoebiusMap {
    MoebiusMap::between(
        c(0.0, -1.0),
        c(0.0, 1.0),
        c(1.0, 0.0),
        c(1.0, 0.0),
        false,
        Model::Disk,
        Model::HalfPlane,
    )
    .expect("regular")
}

/// Inverse of [`cayley_transform`].
pub fn cayley_inverse() -> MoebiusMap {
    cayley_transform().inverse()
}

/// Orientation-preserving disk automorphism sending three distinct
/// unit-circle points to three others (both triples in the same cyclic
/// order).
pub fn three_point_map(z: [Complex64; 3], w: [Complex64; 3]) -> Result<MoebiusMap, MoebiusError> {
    // S sends (z1, z2, z3) to (0, 1, ∞).
    let cross = |p: [Complex64; 3]| {
        MoebiusMap::new(
            p[1] - p[2],
            -p[0] * (p[1] - p[2]),
            p[1] - p[0],
            -p[2] * (p[1] - p[0]),
            false,
            Model::Disk,
        )
    };
    let sz = cross(z)?;
    let sw = cross(w)?;
    sw.inverse().compose(&sz)
}
