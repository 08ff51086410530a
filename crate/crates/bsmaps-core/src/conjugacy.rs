//! The circle homeomorphism `φ` conjugating `z ↦ z^D` to a Markov circle
//! map of degree `D` with `φ(1) = 1`, the pushforward of Haar measure
//! onto the rank-`n` preimage partition, the Minkowski question-mark
//! function and the interval conjugacy `H = M∘φ∘E`.
//!
//! `φ` is evaluated through inverse branches. The `D` preimages of the
//! anchor `1` cut the circle into sheets `[w_0, w_1), ..., [w_{D−1}, w_0)`,
//! each carried once around the circle by the map. Base-`D` digits of
//! `θ` select sheets, and composing the corresponding inverse branches
//! yields a nested arc whose midpoint is the returned value.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circle_maps::{Arc, CircleMapError, PiecewiseMap};
use crate::moebius::{ccw_turns, from_turn, turn_of, MoebiusMap};

/// Tolerance for matching sheet endpoints.
pub const SHEET_TOL: f64 = 1e-9;

/// Errors raised by the conjugacy layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConjugacyError {
    /// The anchor `1` is not fixed by the map.
    #[error("the anchor 1 is not fixed by the map")]
    AnchorNotFixed,
    /// The map is not an orientation-preserving covering of degree ≥ 2.
    #[error("unsupported covering degree {0}")]
    BadDegree(i64),
    /// Reflection-type maps are not supported.
    #[error("pieces must be holomorphic")]
    Antiholomorphic,
    /// Depth is zero or too small for the request.
    #[error("depth {0} is too small")]
    DepthTooSmall(usize),
    /// An input lies outside `[0, 1]`.
    #[error("value {0} lies outside [0, 1]")]
    OutOfRange(String),
    /// A continued fraction or binary expansion needs more steps.
    #[error("depth {0} exhausted")]
    DepthExhausted(usize),
    /// The arc is not a cell of the requested rank.
    #[error("arc {0} is not a rank-{1} cell")]
    NotACell(String, usize),
    /// Underlying circle-map failure.
    #[error(transparent)]
    Circle(#[from] CircleMapError),
}

#[derive(Debug, Clone, PartialEq)]
struct Segment {
    start_turn: f64,
    inverse: MoebiusMap,
    cum_start: f64,
    cum_end: f64,
}

/// A value of `φ`: midpoint of the nested arc and its diameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiValue {
    /// Midpoint in turns, in `[0, 1]`.
    pub turn: f64,
    /// Lower end of the nested arc in turns.
    pub lower: f64,
    /// Upper end of the nested arc in turns.
    pub upper: f64,
    /// Diameter of the nested arc in turns (the error bound).
    pub error: f64,
}

impl PhiValue {
    /// The value as a unit-circle point.
    pub fn point(&self) -> Complex64 {
        from_turn(self.turn)
    }
}

/// The conjugacy `φ` between `z ↦ z^D` and a Markov circle map.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleHomeo {
    map: PiecewiseMap,
    degree: usize,
    depth: usize,
    segments: Vec<Segment>,
    sheet_turns: Vec<f64>,
}

fn rational_from_f64(x: f64) -> Result<BigRational, ConjugacyError> {
    BigRational::from_float(x).ok_or_else(|| ConjugacyError::OutOfRange(x.to_string()))
}

impl CircleHomeo {
    /// Build `φ` for a holomorphic Markov covering of degree `D ≥ 2` fixing
    /// 1, evaluated to `depth` base-`D` digits.
    pub fn build(pm: &PiecewiseMap, depth: usize) -> Result<Self, ConjugacyError> {
        if depth == 0 {
            return Err(ConjugacyError::DepthTooSmall(depth));
        }
        if pm.is_reflection_type() {
            return Err(ConjugacyError::Antiholomorphic);
        }
        let one = Complex64::new(1.0, 0.0);
        if (pm.evaluate_z(one) - one).norm() > SHEET_TOL {
            return Err(ConjugacyError::AnchorNotFixed);
        }
        pm.check_markov()?;
        let deg = pm.covering_degree()?;
        if deg < 2 {
            return Err(ConjugacyError::BadDegree(deg));
        }
        // Segments counter-clockwise from the anchor, splitting the arc that
        // contains it if 1 is not a break point.
        let k = pm.len();
        let first = pm.locate(one);
        let mut raw = Vec::with_capacity(k + 1);
        for step in 0..k {
            let p = &pm.pieces()[(first + step) % k];
            let s = if step == 0 { one } else { p.arc.start() };
            raw.push((s, p.map));
        }
        if pm.break_index(one, SHEET_TOL).is_none() {
            let p = &pm.pieces()[first];
            raw.push((p.arc.start(), p.map));
        }
        let mut segments = Vec::with_capacity(raw.len());
        let mut cum = 0.0;
        for (idx, (s, g)) in raw.iter().enumerate() {
            let e = if idx + 1 < raw.len() { raw[idx + 1].0 } else { one };
            let len = ccw_turns(turn_of(g.apply_disk(*s)), turn_of(g.apply_disk(e)));
            let len = if len < 1e-15 { 1.0 } else { len };
            segments.push(Segment {
                start_turn: if idx == 0 { 0.0 } else { turn_of(*s) },
                inverse: g.inverse(),
                cum_start: cum,
                cum_end: cum + len,
            });
            cum += len;
        }
        let degree = deg as usize;
        let mut homeo = CircleHomeo {
            map: pm.clone(),
            degree,
            depth,
            segments,
            sheet_turns: Vec::new(),
        };
        homeo.sheet_turns = (0..=degree)
            .map(|i| {
                if i == degree {
                    1.0
                } else {
                    homeo.lift_point(i as f64)
                }
            })
            .collect();
        Ok(homeo)
    }

    /// Covering degree `D`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Default evaluation depth.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The underlying circle map.
    pub fn map(&self) -> &PiecewiseMap {
        &self.map
    }

    /// Sheet boundaries `w_0 = 0, w_1, ..., w_D = 1` in turns.
    pub fn sheet_turns(&self) -> &[f64] {
        &self.sheet_turns
    }

    /// The point whose image has lifted angle `s ∈ [0, D]`.
    fn lift_point(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        let idx = self
            .segments
            .partition_point(|g| g.cum_start <= s)
            .saturating_sub(1);
        let seg = &self.segments[idx];
        if s >= seg.cum_end {
            return 1.0;
        }
        let z = seg.inverse.apply_disk(from_turn(s));
        let mut t = turn_of(z);
        if t + 1e-12 < seg.start_turn {
            t += 1.0;
        }
        t
    }

    /// Inverse branch onto sheet `i`, taking and returning turns.
    fn branch(&self, i: usize, t: f64) -> f64 {
        if t <= 0.0 {
            return self.sheet_turns[i];
        }
        if t >= 1.0 {
            return self.sheet_turns[i + 1];
        }
        let v = self.lift_point(i as f64 + t);
        v.clamp(self.sheet_turns[i], self.sheet_turns[i + 1])
    }

    fn digits(&self, theta: &BigRational, depth: usize) -> (Vec<usize>, bool) {
        let dd = BigRational::from_integer(BigInt::from(self.degree));
        let mut x = theta.clone();
        let mut out = Vec::with_capacity(depth);
        for _ in 0..depth {
            if x.is_zero() {
                return (out, true);
            }
            let y = &x * &dd;
            let d = y.floor();
            out.push(d.to_integer().to_usize().unwrap_or(0).min(self.degree - 1));
            x = y - d;
        }
        let exact = x.is_zero();
        (out, exact)
    }

    fn compose_digits(&self, digits: &[usize], t: f64) -> f64 {
        digits.iter().rev().fold(t, |acc, &i| self.branch(i, acc))
    }

    /// `φ(θ)` for an exact rational `θ ∈ [0, 1]` at the given depth.
    pub fn eval_rational_at(&self, theta: &BigRational, depth: usize) -> Result<PhiValue, ConjugacyError> {
        if theta.is_negative() || theta > &BigRational::one() {
            return Err(ConjugacyError::OutOfRange(theta.to_string()));
        }
        if theta.is_one() {
            return Ok(PhiValue {
                turn: 1.0,
                lower: 1.0,
                upper: 1.0,
                error: 0.0,
            });
        }
        let (digits, exact) = self.digits(theta, depth);
        let lower = self.compose_digits(&digits, 0.0);
        if exact {
            return Ok(PhiValue {
                turn: lower,
                lower,
                upper: lower,
                error: 0.0,
            });
        }
        let upper = self.compose_digits(&digits, 1.0);
        Ok(PhiValue {
            turn: 0.5 * (lower + upper),
            lower,
            upper,
            error: upper - lower,
        })
    }

    /// `φ(θ)` for `θ` in turns at the default depth.
    pub fn eval(&self, theta: f64) -> Result<PhiValue, ConjugacyError> {
        self.eval_at(theta, self.depth)
    }

    /// `φ(θ)` for `θ` in turns at an explicit depth.
    pub fn eval_at(&self, theta: f64, depth: usize) -> Result<PhiValue, ConjugacyError> {
        if !(0.0..=1.0).contains(&theta) {
            return Err(ConjugacyError::OutOfRange(theta.to_string()));
        }
        self.eval_rational_at(&rational_from_f64(theta)?, depth)
    }

    /// Approximate `φ^{-1}(z)` in turns from the sheet itinerary of `z`.
    pub fn backward(&self, z: Complex64, depth: usize) -> f64 {
        let mut p = z;
        let mut theta = 0.0;
        let mut scale = 1.0;
        for _ in 0..depth {
            let t = turn_of(p);
            let i = self
                .sheet_turns
                .partition_point(|&w| w <= t)
                .saturating_sub(1)
                .min(self.degree - 1);
            scale /= self.degree as f64;
            theta += i as f64 * scale;
            p = self.map.evaluate_z(p);
        }
        theta + 0.5 * scale
    }

    /// The rank-`n` cell `[φ(j/D^n), φ((j+1)/D^n))` as an arc.
    pub fn cell(&self, n: usize, j: usize) -> Result<Arc, ConjugacyError> {
        let dn = BigInt::from(self.degree).pow(n as u32);
        if BigInt::from(j) >= dn {
            return Err(ConjugacyError::OutOfRange(format!("cell {j} of rank {n}")));
        }
        let a = BigRational::new(BigInt::from(j), dn.clone());
        let b = BigRational::new(BigInt::from(j + 1), dn);
        let lo = self.eval_rational_at(&a, n.max(1))?.turn;
        let hi = self.eval_rational_at(&b, n.max(1))?.turn;
        Ok(Arc::new(from_turn(lo), from_turn(hi))?)
    }
}

/// Haar mass `D^{-n}` of the rank-`n` cell with index `j`; the rank-0 cell
/// is the full circle of mass 1.
pub fn mme_cell_mass(homeo: &CircleHomeo, n: usize, j: usize) -> Result<BigRational, ConjugacyError> {
    let dn = BigInt::from(homeo.degree()).pow(n as u32);
    if BigInt::from(j) >= dn {
        return Err(ConjugacyError::OutOfRange(format!("cell {j} of rank {n}")));
    }
    Ok(BigRational::new(BigInt::one(), dn))
}

/// Mass of an arc that must coincide with a rank-`n` cell of the preimage
/// partition; `D^{-n}` exactly.
pub fn mme_arc_mass(homeo: &CircleHomeo, arc: &Arc, n: usize) -> Result<BigRational, ConjugacyError> {
    let count = homeo.degree().pow(n as u32);
    for j in 0..count {
        let c = homeo.cell(n, j)?;
        if (c.start() - arc.start()).norm() <= SHEET_TOL && (c.end() - arc.end()).norm() <= SHEET_TOL {
            return mme_cell_mass(homeo, n, j);
        }
    }
    Err(ConjugacyError::NotACell(arc.to_string(), n))
}

/// Continued-fraction partial quotients of a rational in `[0, 1]`.
pub fn continued_fraction(x: &BigRational) -> Vec<BigInt> {
    let mut out = Vec::new();
    let (mut p, mut q) = (x.numer().clone(), x.denom().clone());
    while !q.is_zero() {
        let (a, r) = p.div_rem(&q);
        out.push(a);
        p = q;
        q = r;
    }
    out
}

/// The Minkowski question-mark function on rationals:
/// `?([0; a_1, a_2, ...]) = 2 Σ (−1)^{k+1} 2^{−(a_1+⋯+a_k)}`. Fails when the
/// partial quotients sum beyond `depth`.
pub fn minkowski_q(x: &BigRational, depth: usize) -> Result<BigRational, ConjugacyError> {
    if x.is_negative() || x > &BigRational::one() {
        return Err(ConjugacyError::OutOfRange(x.to_string()));
    }
    if x.is_one() {
        return Ok(BigRational::one());
    }
    let cf = continued_fraction(x);
    let mut total: u64 = 0;
    let mut acc = BigRational::zero();
    let two = BigInt::from(2);
    for (k, a) in cf.iter().skip(1).enumerate() {
        total += a.to_u64().ok_or(ConjugacyError::DepthExhausted(depth))?;
        if total > depth as u64 {
            return Err(ConjugacyError::DepthExhausted(depth));
        }
        let term = BigRational::new(two.clone(), two.pow(total as u32));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Inverse of [`minkowski_q`] on dyadic rationals, by bisection of the
/// Farey tree. Fails when `y` is not dyadic within `depth` steps.
pub fn minkowski_q_inv(y: &BigRational, depth: usize) -> Result<BigRational, ConjugacyError> {
    if y.is_negative() || y > &BigRational::one() {
        return Err(ConjugacyError::OutOfRange(y.to_string()));
    }
    let int = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    if y.is_zero() || y.is_one() {
        return Ok(y.clone());
    }
    let (mut lo_n, mut lo_d) = (BigInt::zero(), BigInt::one());
    let (mut hi_n, mut hi_d) = (BigInt::one(), BigInt::one());
    let (mut ylo, mut yhi) = (int(0, 1), int(1, 1));
    for _ in 0..depth {
        let mn = &lo_n + &hi_n;
        let md = &lo_d + &hi_d;
        let ym = (&ylo + &yhi) / int(2, 1);
        match y.cmp(&ym) {
            std::cmp::Ordering::Equal => return Ok(BigRational::new(mn, md)),
            std::cmp::Ordering::Less => {
                hi_n = mn;
                hi_d = md;
                yhi = ym;
            }
            std::cmp::Ordering::Greater => {
                lo_n = mn;
                lo_d = md;
                ylo = ym;
            }
        }
    }
    Err(ConjugacyError::DepthExhausted(depth))
}

/// A value of `H` with its error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HValue {
    /// Midpoint estimate.
    pub value: f64,
    /// Half-width bound.
    pub error: f64,
}

/// `H(x) = M(φ(E(x)))` with `E(x) = e^{2πi x/4}` and `M` the Cayley
/// transform, for `φ` built from the degree-3 Bowen-Series map. On the
/// circle `M(e^{2πit}) = tan(πt)`.
pub fn h_map(homeo: &CircleHomeo, x: &BigRational, depth: usize) -> Result<HValue, ConjugacyError> {
    if x.is_negative() || x > &BigRational::one() {
        return Err(ConjugacyError::OutOfRange(x.to_string()));
    }
    let theta = x / BigRational::from_integer(BigInt::from(4));
    let v = homeo.eval_rational_at(&theta, depth)?;
    let m = |t: f64| (std::f64::consts::PI * t).tan();
    let (lo, hi) = (m(v.lower), m(v.upper));
    Ok(HValue {
        value: 0.5 * (lo + hi),
        error: 0.5 * (hi - lo).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn question_mark_values() {
        assert_eq!(minkowski_q(&q(1, 2), 64).unwrap(), q(1, 2));
        assert_eq!(minkowski_q(&q(1, 3), 64).unwrap(), q(1, 4));
        assert_eq!(minkowski_q(&q(2, 3), 64).unwrap(), q(3, 4));
        assert_eq!(minkowski_q(&q(0, 1), 64).unwrap(), q(0, 1));
        assert_eq!(minkowski_q(&q(1, 1), 64).unwrap(), q(1, 1));
        assert!(minkowski_q(&q(1, 100), 10).is_err());
    }

    #[test]
    fn question_mark_inverse_round_trip() {
        for (a, b) in [(1, 3), (2, 5), (5, 13), (3, 7)] {
            let y = minkowski_q(&q(a, b), 64).unwrap();
            assert_eq!(minkowski_q_inv(&y, 64).unwrap(), q(a, b));
        }
    }

    #[test]
    fn continued_fraction_of_five_thirteenths() {
        let cf: Vec<i64> = continued_fraction(&q(5, 13))
            .iter()
            .map(|a| a.to_i64().unwrap())
            .collect();
        assert_eq!(cf, vec![0, 2, 1, 1, 2]);
    }
}
