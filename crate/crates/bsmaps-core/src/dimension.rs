//! Exact-rational interval maps: the half-plane map `τ`, the interval maps
//! `F` of the Bowen-Series and higher Bowen-Series cases, rank-`n` vertex
//! enumeration, Lyapunov-exponent brackets against the maximal-entropy
//! measure and the resulting Hausdorff-dimension brackets `h / λ`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::moebius::{BoundaryPoint, Model, MoebiusMap};

/// Exact rational number.
pub type Rational = BigRational;

/// Largest rank accepted for the Bowen-Series interval map.
pub const MAX_RANK_BS: usize = 12;

/// Largest rank accepted for the higher Bowen-Series interval map.
pub const MAX_RANK_HBS: usize = 16;

/// Errors raised by the dimension layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DimensionError {
    /// Degenerate coefficients.
    #[error("piece coefficients have zero determinant")]
    Singular,
    /// The pieces do not partition `[0, 1)`.
    #[error("pieces do not partition [0, 1): {0}")]
    BadPartition(String),
    /// A point lies outside `[0, 1]`.
    #[error("point {0} lies outside [0, 1]")]
    OutOfRange(String),
    /// Requested rank exceeds the cap.
    #[error("rank {rank} exceeds the cap {cap}")]
    RankTooLarge {
        /// Requested rank.
        rank: usize,
        /// Cap for this map.
        cap: usize,
    },
    /// The target width is below the supported minimum.
    #[error("target width {0} is below 2e-3")]
    WidthTooSmall(f64),
    /// Unknown variant name.
    #[error("unknown variant {0}")]
    UnknownVariant(String),
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

/// `t ↦ (a t + b)/(c t + d)` on `[lo, hi)`, optionally reduced mod 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlPiece {
    /// Coefficients `a, b, c, d`.
    pub coeffs: [BigInt; 4],
    /// Left end of the domain (included).
    pub lo: Rational,
    /// Right end of the domain (excluded, except 1 for the last piece).
    pub hi: Rational,
    /// Whether the value is reduced mod 1.
    pub wrap: bool,
}

impl FlPiece {
    /// Build a piece from small integer coefficients.
    pub fn new(coeffs: [i64; 4], lo: Rational, hi: Rational, wrap: bool) -> Result<Self, DimensionError> {
        let [a, b, c, d] = coeffs;
        if a * d - b * c == 0 {
            return Err(DimensionError::Singular);
        }
        Ok(FlPiece {
            coeffs: coeffs.map(BigInt::from),
            lo,
            hi,
            wrap,
        })
    }

    /// `ad − bc`.
    pub fn det(&self) -> BigInt {
        let [a, b, c, d] = &self.coeffs;
        a * d - b * c
    }

    /// `+1` if orientation-preserving, `−1` otherwise.
    pub fn orientation(&self) -> i32 {
        if self.det().is_positive() {
            1
        } else {
            -1
        }
    }

    fn raw(&self, x: &Rational) -> Option<Rational> {
        let [a, b, c, d] = &self.coeffs;
        let num = Rational::from_integer(a.clone()) * x + Rational::from_integer(b.clone());
        let den = Rational::from_integer(c.clone()) * x + Rational::from_integer(d.clone());
        (!den.is_zero()).then(|| num / den)
    }

    /// Value at `x` (mod 1 when wrapping).
    pub fn apply(&self, x: &Rational) -> Option<Rational> {
        let v = self.raw(x)?;
        Some(if self.wrap { &v - v.floor() } else { v })
    }

    /// Exact `|F′(x)| = |ad − bc| / (cx + d)²`.
    pub fn abs_derivative(&self, x: &Rational) -> Option<Rational> {
        let [_, _, c, d] = &self.coeffs;
        let den = Rational::from_integer(c.clone()) * x + Rational::from_integer(d.clone());
        (!den.is_zero()).then(|| Rational::from_integer(self.det().abs()) / (&den * &den))
    }

    /// `ln |F′(x)|` from the exact derivative.
    pub fn log_deriv(&self, x: &Rational) -> f64 {
        self.abs_derivative(x)
            .and_then(|r| r.to_f64())
            .map(f64::ln)
            .unwrap_or(f64::INFINITY)
    }

    /// Solutions of `F(t) = y` in the domain `[lo, hi)`.
    pub fn preimages(&self, y: &Rational) -> Vec<Rational> {
        let [a, b, c, d] = &self.coeffs;
        let targets = if self.wrap {
            vec![y.clone(), y + int(1)]
        } else {
            vec![y.clone()]
        };
        let mut out = Vec::new();
        for t in targets {
            let den = Rational::from_integer(c.clone()) * &t - Rational::from_integer(a.clone());
            if den.is_zero() {
                continue;
            }
            let x = (Rational::from_integer(b.clone()) - Rational::from_integer(d.clone()) * &t) / den;
            if x >= self.lo && x < self.hi && self.apply(&x).as_ref() == Some(y) {
                out.push(x);
            }
        }
        out
    }
}

impl fmt::Display for FlPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coeffs;
        write!(
            f,
            "({a}t{:+})/({c}t{:+}) on [{}, {}){}",
            b,
            d,
            self.lo,
            self.hi,
            if self.wrap { " mod 1" } else { "" }
        )
    }
}

/// A piecewise linear-fractional self-map of `[0, 1)` with full branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalMarkovMap {
    name: String,
    pieces: Vec<FlPiece>,
    rank_cap: usize,
}

impl IntervalMarkovMap {
    /// Validate that the pieces partition `[0, 1)` in order.
    pub fn new(name: &str, pieces: Vec<FlPiece>, rank_cap: usize) -> Result<Self, DimensionError> {
        if pieces.is_empty() || !pieces[0].lo.is_zero() || !pieces.last().unwrap().hi.is_one() {
            return Err(DimensionError::BadPartition(
                "must start at 0 and end at 1".into(),
            ));
        }
        if pieces.windows(2).any(|w| w[0].hi != w[1].lo) || pieces.iter().any(|p| p.lo >= p.hi) {
            return Err(DimensionError::BadPartition("pieces are not consecutive".into()));
        }
        Ok(IntervalMarkovMap {
            name: name.to_string(),
            pieces,
            rank_cap,
        })
    }

    /// Short name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The pieces.
    pub fn pieces(&self) -> &[FlPiece] {
        &self.pieces
    }

    /// Number of full branches.
    pub fn branches(&self) -> usize {
        self.pieces.len()
    }

    /// Entropy `ln(branches)` of the maximal-entropy measure.
    pub fn entropy(&self) -> f64 {
        (self.branches() as f64).ln()
    }

    /// Largest supported rank.
    pub fn rank_cap(&self) -> usize {
        self.rank_cap
    }

    /// Break points `0 = b_0 < b_1 < ... < b_m = 1`.
    pub fn break_points(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.pieces.iter().map(|p| p.lo.clone()).collect();
        v.push(int(1));
        v
    }

    /// Index of the piece owning `x` (half-open; `1` belongs to the last).
    pub fn piece_index(&self, x: &Rational) -> Result<usize, DimensionError> {
        if x.is_negative() || x > &int(1) {
            return Err(DimensionError::OutOfRange(x.to_string()));
        }
        Ok(self
            .pieces
            .iter()
            .position(|p| x < &p.hi)
            .unwrap_or(self.pieces.len() - 1))
    }

    /// `F(x)` exactly.
    pub fn apply(&self, x: &Rational) -> Result<Rational, DimensionError> {
        let p = &self.pieces[self.piece_index(x)?];
        p.apply(x)
            .ok_or_else(|| DimensionError::OutOfRange(x.to_string()))
    }

    /// `ln |F′(x)|` from the owning piece.
    pub fn log_deriv(&self, x: &Rational) -> Result<f64, DimensionError> {
        Ok(self.pieces[self.piece_index(x)?].log_deriv(x))
    }

    /// One-sided `ln |F′|`: from the right uses the owning piece, from the
    /// left the piece whose domain ends at `x` (when `x` is a break point).
    pub fn log_deriv_left(&self, x: &Rational) -> Result<f64, DimensionError> {
        let i = self.piece_index(x)?;
        if i > 0 && &self.pieces[i].lo == x {
            Ok(self.pieces[i - 1].log_deriv(x))
        } else {
            Ok(self.pieces[i].log_deriv(x))
        }
    }

    /// All `x ∈ [0, 1)` with `F(x) ∈ targets`, sorted and deduplicated.
    pub fn preimages(&self, targets: &[Rational]) -> Vec<Rational> {
        let mut out: Vec<Rational> = targets
            .iter()
            .flat_map(|y| self.pieces.iter().flat_map(move |p| p.preimages(y)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Rank-`n` vertices: the solutions of `F^n(x) = 0` together with 1.
    pub fn vertex_set(&self, rank: usize) -> Result<Vec<Rational>, DimensionError> {
        Ok(self.vertex_sets(rank)?.pop().expect("nonempty"))
    }

    /// Vertex sets of ranks `0..=rank`.
    pub fn vertex_sets(&self, rank: usize) -> Result<Vec<Vec<Rational>>, DimensionError> {
        if rank > self.rank_cap {
            return Err(DimensionError::RankTooLarge {
                rank,
                cap: self.rank_cap,
            });
        }
        let mut zeros = vec![Rational::zero()];
        let mut out = vec![vec![Rational::zero(), int(1)]];
        for _ in 0..rank {
            zeros = self.preimages(&zeros);
            let mut v = zeros.clone();
            v.push(int(1));
            out.push(v);
        }
        Ok(out)
    }
}

/// Neumaier-compensated sum.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Lower and upper Riemann sums of `∫ ln|F′| dν` over the rank-`n` cells,
/// and the induced dimension bracket.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LyapunovBracket {
    /// Rank of the cells.
    pub rank: usize,
    /// Lower Lyapunov bound.
    pub lower: f64,
    /// Upper Lyapunov bound.
    pub upper: f64,
    /// Entropy `h`.
    pub entropy: f64,
    /// Dimension lower bound `h / upper`.
    pub hd_lower: f64,
    /// Dimension upper bound `min(1, h / lower)`.
    pub hd_upper: f64,
}

impl LyapunovBracket {
    /// Width of the dimension bracket.
    pub fn hd_width(&self) -> f64 {
        self.hd_upper - self.hd_lower
    }
}

fn bracket_from_vertices(imap: &IntervalMarkovMap, rank: usize, v: &[Rational]) -> LyapunovBracket {
    let cells = v.len() - 1;
    let mass = 1.0 / cells as f64;
    let mut lows = Vec::with_capacity(cells);
    let mut highs = Vec::with_capacity(cells);
    for w in v.windows(2) {
        // Each cell lies in the closure of the piece owning its left end;
        // ln|F′| is monotone there, so the extremes sit at the endpoints.
        let p = &imap.pieces[imap.piece_index(&w[0]).expect("in range")];
        let (a, b) = (p.log_deriv(&w[0]), p.log_deriv(&w[1]));
        lows.push(a.min(b) * mass);
        highs.push(a.max(b) * mass);
    }
    let lower = compensated_sum(lows);
    let upper = compensated_sum(highs);
    let h = imap.entropy();
    let hd_upper = if lower > 0.0 { (h / lower).min(1.0) } else { 1.0 };
    LyapunovBracket {
        rank,
        lower,
        upper,
        entropy: h,
        hd_lower: h / upper,
        hd_upper,
    }
}

/// Lyapunov bracket at a given rank.
pub fn lyapunov_bracket(imap: &IntervalMarkovMap, rank: usize) -> Result<LyapunovBracket, DimensionError> {
    let v = imap.vertex_set(rank)?;
    Ok(bracket_from_vertices(imap, rank, &v))
}

/// Catalog variants of the interval reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Bowen-Series map of the thrice-punctured sphere.
    Bs3,
    /// Higher Bowen-Series map of the thrice-punctured sphere.
    Hbs3,
}

impl std::str::FromStr for Variant {
    type Err = DimensionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bs3" => Ok(Variant::Bs3),
            "hbs3" => Ok(Variant::Hbs3),
            _ => Err(DimensionError::UnknownVariant(s.to_string())),
        }
    }
}

impl Variant {
    /// The interval map of this variant.
    pub fn interval_map(&self) -> IntervalMarkovMap {
        match self {
            Variant::Bs3 => f_bs(),
            Variant::Hbs3 => f_hbs(),
        }
    }
}

/// Result of [`hausdorff_mme`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HdEstimate {
    /// Dimension lower bound.
    pub lower: f64,
    /// Dimension upper bound.
    pub upper: f64,
    /// Rank used.
    pub rank: usize,
    /// Whether the target width was reached before the rank cap.
    pub reached: bool,
    /// The Lyapunov bracket at that rank.
    pub bracket: LyapunovBracket,
}

/// Raise the rank until the dimension bracket is at most `width` wide or
/// the rank cap is hit.
pub fn hausdorff_mme_map(imap: &IntervalMarkovMap, width: f64) -> Result<HdEstimate, DimensionError> {
    if width < 2e-3 {
        return Err(DimensionError::WidthTooSmall(width));
    }
    let mut zeros = vec![Rational::zero()];
    let mut last = None;
    for rank in 1..=imap.rank_cap() {
        zeros = imap.preimages(&zeros);
        let mut v = zeros.clone();
        v.push(int(1));
        let b = bracket_from_vertices(imap, rank, &v);
        let done = b.hd_width() <= width;
        last = Some(b);
        if done {
            break;
        }
    }
    let b = last.expect("rank cap is at least one");
    Ok(HdEstimate {
        lower: b.hd_lower,
        upper: b.hd_upper,
        rank: b.rank,
        reached: b.hd_width() <= width,
        bracket: b,
    })
}

/// [`hausdorff_mme_map`] for a catalog variant.
pub fn hausdorff_mme(variant: Variant, width: f64) -> Result<HdEstimate, DimensionError> {
    hausdorff_mme_map(&variant.interval_map(), width)
}

/// The interval map of the Bowen-Series case: `x/(1−2x)` on `[0, 1/3)`,
/// `(3x−1)/(1−x)` on `[1/3, 1/2)`, `(2x−1)/x` on `[1/2, 1)`.
pub fn f_bs() -> IntervalMarkovMap {
    let p = |c, lo, hi| FlPiece::new(c, lo, hi, false).expect("regular");
    IntervalMarkovMap::new(
        "bs3",
        vec![
            p([1, 0, -2, 1], int(0), ratio(1, 3)),
            p([3, -1, -1, 1], ratio(1, 3), ratio(1, 2)),
            p([2, -1, 1, 0], ratio(1, 2), int(1)),
        ],
        MAX_RANK_BS,
    )
    .expect("valid partition")
}

/// The interval map of the higher Bowen-Series case: `(2t−1)/(t−1) mod 1`
/// on `[0, 1/2)` and `(1−t)/t mod 1` on `[1/2, 1)`.
pub fn f_hbs() -> IntervalMarkovMap {
    let p = |c, lo, hi| FlPiece::new(c, lo, hi, true).expect("regular");
    IntervalMarkovMap::new(
        "hbs3",
        vec![
            p([2, -1, 1, -1], int(0), ratio(1, 2)),
            p([-1, 1, 1, 0], ratio(1, 2), int(1)),
        ],
        MAX_RANK_HBS,
    )
    .expect("valid partition")
}

/// The tripling map `x ↦ 3x mod 1` with affine branches.
pub fn tripling_map() -> IntervalMarkovMap {
    let p = |j: i64| FlPiece::new([3, -j, 0, 1], ratio(j, 3), ratio(j + 1, 3), false).expect("regular");
    IntervalMarkovMap::new("x3", vec![p(0), p(1), p(2)], MAX_RANK_BS).expect("valid partition")
}

/// A point of `ℝ ∪ {∞}` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendedRational {
    /// A finite rational.
    Finite(Rational),
    /// The point at infinity.
    Infinity,
}

/// One piece of `τ`: integer matrix on a closed interval of `ℝ ∪ {∞}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauPiece {
    /// Coefficients `a, b, c, d` of `t ↦ (at+b)/(ct+d)`.
    pub coeffs: [i64; 4],
    /// Lower end (`None` for `−∞`).
    pub lo: Option<Rational>,
    /// Upper end (`None` for `+∞`).
    pub hi: Option<Rational>,
}

/// The half-plane model of the degree-3 Bowen-Series map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauMap {
    pieces: Vec<TauPiece>,
}

/// `τ`: `t+2` on `[−∞, −1]`, `t/(1+2t)` on `[−1, 0]`, `t/(1−2t)` on
/// `[0, 1]`, `t−2` on `[1, +∞]`. Shared endpoints use the later piece.
pub fn tau_map() -> TauMap {
    TauMap {
        pieces: vec![
            TauPiece {
                coeffs: [1, 2, 0, 1],
                lo: None,
                hi: Some(int(-1)),
            },
            TauPiece {
                coeffs: [1, 0, 2, 1],
                lo: Some(int(-1)),
                hi: Some(int(0)),
            },
            TauPiece {
                coeffs: [1, 0, -2, 1],
                lo: Some(int(0)),
                hi: Some(int(1)),
            },
            TauPiece {
                coeffs: [1, -2, 0, 1],
                lo: Some(int(1)),
                hi: None,
            },
        ],
    }
}

impl TauMap {
    /// The four pieces.
    pub fn pieces(&self) -> &[TauPiece] {
        &self.pieces
    }

    fn index_of(&self, t: f64) -> usize {
        if t < -1.0 {
            0
        } else if t < 0.0 {
            1
        } else if t < 1.0 {
            2
        } else {
            3
        }
    }

    /// Exact value on `ℝ ∪ {∞}`.
    pub fn apply_exact(&self, t: &ExtendedRational) -> ExtendedRational {
        match t {
            // Near ∞ both outer pieces are translations fixing ∞.
            ExtendedRational::Infinity => ExtendedRational::Infinity,
            ExtendedRational::Finite(x) => {
                let i = if x < &int(-1) {
                    0
                } else if x.is_negative() {
                    1
                } else if x < &int(1) {
                    2
                } else {
                    3
                };
                let [a, b, c, d] = self.pieces[i].coeffs.map(int);
                let den = &c * x + &d;
                if den.is_zero() {
                    ExtendedRational::Infinity
                } else {
                    ExtendedRational::Finite((&a * x + &b) / den)
                }
            }
        }
    }

    /// Half-plane Möbius map of piece `i`.
    pub fn piece_map(&self, i: usize) -> MoebiusMap {
        let [a, b, c, d] = self.pieces[i]
            .coeffs
            .map(|v| num_complex::Complex64::new(v as f64, 0.0));
        MoebiusMap::new(a, b, c, d, false, Model::HalfPlane).expect("regular")
    }

    /// Floating value on a half-plane boundary point.
    pub fn apply(&self, p: BoundaryPoint) -> BoundaryPoint {
        match p {
            BoundaryPoint::Infinity => BoundaryPoint::Infinity,
            BoundaryPoint::Real(t) => self
                .piece_map(self.index_of(t))
                .apply(p)
                .expect("half-plane point"),
            BoundaryPoint::Disk(_) => p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_bs_exact_values() {
        let f = f_bs();
        assert_eq!(f.apply(&ratio(1, 7)).unwrap(), ratio(1, 5));
        assert_eq!(f.apply(&ratio(3, 7)).unwrap(), ratio(1, 2));
        assert_eq!(f_hbs().apply(&ratio(1, 4)).unwrap(), ratio(2, 3));
    }

    #[test]
    fn log_derivative_values() {
        let f = f_bs();
        assert_eq!(f.log_deriv(&int(0)).unwrap(), 0.0);
        assert_eq!(f.log_deriv(&int(1)).unwrap(), 0.0);
        assert!((f.log_deriv(&ratio(1, 4)).unwrap() - 4f64.ln()).abs() < 1e-15);
        assert!((f.log_deriv_left(&ratio(1, 3)).unwrap() - 9f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn rank_one_vertices() {
        assert_eq!(
            f_bs().vertex_set(1).unwrap(),
            vec![int(0), ratio(1, 3), ratio(1, 2), int(1)]
        );
        assert_eq!(f_hbs().vertex_set(1).unwrap(), vec![int(0), ratio(1, 2), int(1)]);
    }

    #[test]
    fn tau_exact_values() {
        let t = tau_map();
        let fin = |x| ExtendedRational::Finite(x);
        assert_eq!(t.apply_exact(&fin(ratio(1, 3))), fin(int(1)));
        assert_eq!(t.apply_exact(&fin(int(-3))), fin(int(-1)));
        assert_eq!(t.apply_exact(&fin(ratio(1, 2))), ExtendedRational::Infinity);
    }

    #[test]
    fn tripling_collapses_to_one() {
        let b = lyapunov_bracket(&tripling_map(), 1).unwrap();
        assert!((b.hd_lower - 1.0).abs() < 1e-15 && (b.hd_upper - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rank_cap_enforced() {
        assert!(matches!(
            f_bs().vertex_set(13),
            Err(DimensionError::RankTooLarge { .. })
        ));
        assert!(hausdorff_mme(Variant::Bs3, 1e-3).is_err());
    }

    #[test]
    fn compensated_sum_is_accurate() {
        let v = vec![1e16, 1.0, -1e16];
        assert_eq!(compensated_sum(v), 1.0);
    }
}
