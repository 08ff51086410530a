//! Piecewise-Möbius circle maps: evaluation, continuity, covering degree,
//! Markov partitions and transition matrices, iterates, minimality,
//! one-sided multipliers at periodic break points, the refinement-diameter
//! proxy for expansivity, fundamental domains and the mateability report.
//!
//! Arcs are half-open and counter-clockwise, `[start, end)`. Angles are
//! handled in turns in `[0, 1)`; differences are always taken
//! counter-clockwise with wraparound.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::GroupPresentation;
use crate::freegroup::FreeWord;
use crate::moebius::{
    ccw_turns, from_turn, turn_of, BoundaryPoint, Geodesic, Model, MoebiusError, MoebiusMap, MAP_EQ_TOL,
};
use crate::symbolic::{orbit_equivalence_heuristic, OeVerdict};

/// Tolerance for continuity and Markov endpoint matching.
pub const MATCH_TOL: f64 = 1e-9;

/// Tolerance for periodicity detection.
pub const PERIOD_TOL: f64 = 1e-9;

/// Largest period searched when classifying break points.
pub const MAX_PERIOD: usize = 12;

/// Tolerance used to compare multipliers with 1 and with each other.
pub const MULTIPLIER_TOL: f64 = 1e-7;

/// Largest iterate accepted by [`PiecewiseMap::refine_iterate`].
pub const MAX_REFINE: usize = 4;

/// Errors raised by circle-map construction and checks.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircleMapError {
    /// Break points are not in strict counter-clockwise order.
    #[error("break points are not in strict counter-clockwise order: {0}")]
    BadBreaks(String),
    /// Piece data is inconsistent with the break points.
    #[error("invalid piece data: {0}")]
    BadPieces(String),
    /// Winding of the image is not an integer.
    #[error("image winding {0} is not an integer")]
    NonIntegerWinding(f64),
    /// A piece image ends strictly inside an arc.
    #[error("not Markov: image of arc {arc} has endpoint {point} strictly inside an arc")]
    NonMarkov {
        /// Index of the offending arc.
        arc: usize,
        /// The stray image endpoint.
        point: String,
    },
    /// A point is not periodic within [`MAX_PERIOD`] steps.
    #[error("point {0} is not periodic within {MAX_PERIOD} steps")]
    NotPeriodic(String),
    /// A word is not admissible for the transition matrix.
    #[error("word {0:?} is not admissible")]
    Inadmissible(Vec<usize>),
    /// Requested iterate is too large.
    #[error("iterate {0} exceeds the cap {MAX_REFINE}")]
    IterateTooLarge(usize),
    /// Underlying Möbius failure.
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}

/// Which side of a point a one-sided quantity is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// The counter-clockwise side (`x⁺`).
    Right,
    /// The clockwise side (`x⁻`).
    Left,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        }
    }
}

/// A half-open counter-clockwise arc `[start, end)` of the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    start: Complex64,
    end: Complex64,
    t0: f64,
    len: f64,
}

impl Arc {
    /// Arc between two distinct unit-circle points.
    pub fn new(start: Complex64, end: Complex64) -> Result<Self, CircleMapError> {
        let s = start / start.norm();
        let e = end / end.norm();
        let t0 = turn_of(s);
        let len = ccw_turns(t0, turn_of(e));
        if len <= 1e-15 {
            return Err(CircleMapError::BadBreaks("arc endpoints coincide".into()));
        }
        Ok(Arc {
            start: s,
            end: e,
            t0,
            len,
        })
    }

    /// Start point.
    pub fn start(&self) -> Complex64 {
        self.start
    }

    /// End point.
    pub fn end(&self) -> Complex64 {
        self.end
    }

    /// Start angle in turns.
    pub fn start_turn(&self) -> f64 {
        self.t0
    }

    /// Angular length in turns, in `(0, 1)`.
    pub fn length(&self) -> f64 {
        self.len
    }

    /// Half-open membership `[start, end)`.
    pub fn contains(&self, z: Complex64) -> bool {
        ccw_turns(self.t0, turn_of(z)) < self.len
    }

    /// Closed membership with a tolerance in turns.
    pub fn contains_closed(&self, z: Complex64, tol: f64) -> bool {
        let r = ccw_turns(self.t0, turn_of(z));
        r <= self.len + tol || r >= 1.0 - tol
    }

    /// Point at the given fraction of the way from start to end.
    pub fn point_at(&self, frac: f64) -> Complex64 {
        from_turn(self.t0 + frac * self.len)
    }

    /// Midpoint of the arc.
    pub fn midpoint(&self) -> Complex64 {
        self.point_at(0.5)
    }

    /// Image of the arc under a Möbius map, as an arc (orientation of the
    /// image is handled for antiholomorphic maps).
    pub fn image(&self, f: &MoebiusMap) -> Result<Arc, CircleMapError> {
        let a = f.apply_disk(self.start);
        let b = f.apply_disk(self.end);
        if f.is_anti() {
            Arc::new(b, a)
        } else {
            Arc::new(a, b)
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.9}, {:.9})", self.t0, self.t0 + self.len)
    }
}

/// One piece of a piecewise map.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    /// The arc the piece acts on.
    pub arc: Arc,
    /// The Möbius map applied on the arc.
    pub map: MoebiusMap,
    /// Optional free-group word naming the map.
    pub label: Option<FreeWord>,
}

/// A continuous-or-not circle map given by Möbius maps on a circular list
/// of consecutive half-open arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseMap {
    pieces: Vec<Piece>,
    rel_starts: Vec<f64>,
    generator_names: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PiecewiseJson {
    breaks: Vec<f64>,
    pieces: Vec<MoebiusMap>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    generators: Vec<String>,
}

impl PiecewiseMap {
    /// Build from break points in strict counter-clockwise order, one map
    /// per arc `[breaks[j], breaks[j+1])`, and optional labels.
    pub fn new(
        breaks: Vec<Complex64>,
        maps: Vec<MoebiusMap>,
        labels: Option<Vec<FreeWord>>,
    ) -> Result<Self, CircleMapError> {
        let k = breaks.len();
        if k < 2 {
            return Err(CircleMapError::BadBreaks("need at least two break points".into()));
        }
        if maps.len() != k {
            return Err(CircleMapError::BadPieces(format!(
                "{} maps for {k} arcs",
                maps.len()
            )));
        }
        if let Some(l) = &labels {
            if l.len() != k {
                return Err(CircleMapError::BadPieces(format!(
                    "{} labels for {k} arcs",
                    l.len()
                )));
            }
        }
        if maps
            .iter()
            .any(|m| m.domain() != Model::Disk || m.codomain() != Model::Disk)
        {
            return Err(CircleMapError::BadPieces("pieces must be disk maps".into()));
        }
        let anti = maps[0].is_anti();
        if maps.iter().any(|m| m.is_anti() != anti) {
            return Err(CircleMapError::BadPieces(
                "pieces mix holomorphic and antiholomorphic maps".into(),
            ));
        }
        let turns: Vec<f64> = breaks.iter().map(|z| turn_of(*z)).collect();
        let mut total = 0.0;
        for j in 0..k {
            let gap = ccw_turns(turns[j], turns[(j + 1) % k]);
            if gap <= 1e-13 {
                return Err(CircleMapError::BadBreaks(format!("gap {gap:e} after break {j}")));
            }
            total += gap;
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(CircleMapError::BadBreaks(format!(
                "arcs wind {total} times around the circle"
            )));
        }
        let mut pieces = Vec::with_capacity(k);
        for j in 0..k {
            pieces.push(Piece {
                arc: Arc::new(breaks[j], breaks[(j + 1) % k])?,
                map: maps[j],
                label: labels.as_ref().map(|l| l[j].clone()),
            });
        }
        let rel_starts = turns.iter().map(|t| ccw_turns(turns[0], *t)).collect();
        Ok(PiecewiseMap {
            pieces,
            rel_starts,
            generator_names: Vec::new(),
        })
    }

    /// Attach generator names used when printing labels.
    pub fn with_generator_names(mut self, names: Vec<String>) -> Self {
        self.generator_names = names;
        self
    }

    /// Generator names used when printing labels.
    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    /// The pieces in counter-clockwise order.
    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Number of arcs.
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    /// Whether the map has no pieces (never true for a constructed map).
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Break points `x_1, ..., x_k`.
    pub fn break_points(&self) -> Vec<Complex64> {
        self.pieces.iter().map(|p| p.arc.start()).collect()
    }

    /// Whether all pieces are antiholomorphic (reflection-type maps).
    pub fn is_reflection_type(&self) -> bool {
        self.pieces[0].map.is_anti()
    }

    /// Piece labels, if every piece is labeled.
    pub fn labels(&self) -> Option<Vec<FreeWord>> {
        self.pieces.iter().map(|p| p.label.clone()).collect()
    }

    /// Label words rendered with the generator names.
    pub fn label_strings(&self) -> Vec<String> {
        self.pieces
            .iter()
            .map(|p| {
                p.label
                    .as_ref()
                    .map(|w| w.display_with(&self.generator_names))
                    .unwrap_or_default()
            })
            .collect()
    }

    /// Index of the arc containing `z` (half-open convention).
    pub fn locate(&self, z: Complex64) -> usize {
        let k = self.pieces.len();
        let t0 = self.pieces[0].arc.start_turn();
        let rel = ccw_turns(t0, turn_of(z));
        if 1.0 - rel < 1e-13 {
            return 0;
        }
        let idx = self.rel_starts.partition_point(|&s| s <= rel + 1e-13);
        (idx + k - 1) % k
    }

    /// Index of the break point within `tol` of `z`, if any.
    pub fn break_index(&self, z: Complex64, tol: f64) -> Option<usize> {
        self.pieces.iter().position(|p| (p.arc.start() - z).norm() <= tol)
    }

    /// Arc used for a one-sided quantity at `z`: at a break point the arc
    /// starting (right) or ending (left) there, otherwise the containing arc.
    pub fn locate_side(&self, z: Complex64, side: Side) -> usize {
        let k = self.pieces.len();
        match (self.break_index(z, MATCH_TOL), side) {
            (Some(j), Side::Right) => j,
            (Some(j), Side::Left) => (j + k - 1) % k,
            (None, _) => self.locate(z),
        }
    }

    /// Apply the map to a unit-circle value.
    pub fn evaluate_z(&self, z: Complex64) -> Complex64 {
        self.pieces[self.locate(z)].map.apply_disk(z)
    }

    /// Apply the map to a disk boundary point.
    pub fn evaluate(&self, p: BoundaryPoint) -> BoundaryPoint {
        BoundaryPoint::Disk(self.evaluate_z(p.z()))
    }

    /// Apply the `n`-th iterate.
    pub fn iterate_z(&self, z: Complex64, n: usize) -> Complex64 {
        (0..n).fold(z, |w, _| self.evaluate_z(w))
    }

    /// Snap a point onto a break point when within [`PERIOD_TOL`].
    pub fn snap(&self, z: Complex64) -> Complex64 {
        match self.break_index(z, PERIOD_TOL) {
            Some(j) => self.pieces[j].arc.start(),
            None => z,
        }
    }

    /// Points where consecutive pieces disagree by more than [`MATCH_TOL`].
    pub fn check_continuity(&self) -> ContinuityReport {
        let k = self.pieces.len();
        let mut bad = Vec::new();
        for j in 0..k {
            let next = &self.pieces[(j + 1) % k];
            let x = next.arc.start();
            let left = self.pieces[j].map.apply_disk(x);
            let right = next.map.apply_disk(x);
            if (left - right).norm() > MATCH_TOL {
                bad.push(BoundaryPoint::Disk(x));
            }
        }
        ContinuityReport { discontinuities: bad }
    }

    /// Signed angular length in turns of the image of arc `j`.
    pub fn signed_image_length(&self, j: usize) -> f64 {
        let p = &self.pieces[j];
        let a = turn_of(p.map.apply_disk(p.arc.start()));
        let b = turn_of(p.map.apply_disk(p.arc.end()));
        if p.map.is_anti() {
            -ccw_turns(b, a)
        } else {
            ccw_turns(a, b)
        }
    }

    /// Total signed winding of the image, as an integer.
    pub fn covering_degree(&self) -> Result<i64, CircleMapError> {
        let w: f64 = (0..self.pieces.len()).map(|j| self.signed_image_length(j)).sum();
        let r = w.round();
        if (w - r).abs() > 1e-6 {
            Err(CircleMapError::NonIntegerWinding(w))
        } else {
            Ok(r as i64)
        }
    }

    /// Image arc of piece `j`.
    pub fn image_arc(&self, j: usize) -> Result<Arc, CircleMapError> {
        let p = &self.pieces[j];
        p.arc.image(&p.map)
    }

    /// Check the Markov property and return the transition matrix with
    /// `M[j][l] = 1` iff the image of arc `j` contains arc `l`, rows and
    /// columns in counter-clockwise arc order.
    pub fn check_markov(&self) -> Result<TransitionMatrix, CircleMapError> {
        let k = self.pieces.len();
        let mut entries = vec![vec![0u8; k]; k];
        for j in 0..k {
            let img = self.image_arc(j)?;
            for end in [img.start(), img.end()] {
                if self.break_index(end, MATCH_TOL).is_none() {
                    return Err(CircleMapError::NonMarkov {
                        arc: j,
                        point: BoundaryPoint::Disk(end).to_string(),
                    });
                }
            }
            for (l, q) in self.pieces.iter().enumerate() {
                if img.contains_closed(q.arc.midpoint(), 0.0) {
                    entries[j][l] = 1;
                }
            }
        }
        Ok(TransitionMatrix {
            entries,
            order: (0..k).collect(),
        })
    }

    fn admissible(m: &TransitionMatrix, word: &[usize]) -> bool {
        word.windows(2).all(|w| m.entries[w[0]][w[1]] == 1)
    }

    /// Nested arc `I_{i_1} ∩ A^{-1}(I_{i_2}) ∩ ...` of an admissible word,
    /// together with the inverse branch `g_{i_1}^{-1} ∘ ... ∘ g_{i_{n-1}}^{-1}`
    /// carrying `I_{i_n}` onto it.
    pub fn cylinder(
        &self,
        matrix: &TransitionMatrix,
        word: &[usize],
    ) -> Result<(Arc, MoebiusMap), CircleMapError> {
        if word.is_empty() || word.iter().any(|&i| i >= self.pieces.len()) || !Self::admissible(matrix, word)
        {
            return Err(CircleMapError::Inadmissible(word.to_vec()));
        }
        let mut h = MoebiusMap::identity(Model::Disk);
        for &i in &word[..word.len() - 1] {
            h = h.compose(&self.pieces[i].map.inverse())?;
        }
        let arc = self.pieces[*word.last().unwrap()].arc.image(&h)?;
        Ok((arc, h))
    }

    /// Piecewise map of the `n`-th iterate on the rank-`n` Markov refinement.
    pub fn refine_iterate(&self, n: usize) -> Result<PiecewiseMap, CircleMapError> {
        if n > MAX_REFINE {
            return Err(CircleMapError::IterateTooLarge(n));
        }
        if n <= 1 {
            return Ok(self.clone());
        }
        let m = self.check_markov()?;
        let words = m.admissible_words(n);
        let t0 = self.pieces[0].arc.start_turn();
        let mut cells = Vec::with_capacity(words.len());
        for w in words {
            let (arc, _) = self.cylinder(&m, &w)?;
            let mut map = MoebiusMap::identity(Model::Disk);
            let mut label = Some(FreeWord::identity());
            for &i in &w {
                map = self.pieces[i].map.compose(&map)?;
                label = match (label, &self.pieces[i].label) {
                    (Some(acc), Some(l)) => Some(l.mul(&acc)),
                    _ => None,
                };
            }
            cells.push((ccw_turns(t0, arc.start_turn()), arc.start(), map, label));
        }
        cells.sort_by(|a, b| a.0.total_cmp(&b.0));
        let labels: Option<Vec<FreeWord>> = cells.iter().map(|c| c.3.clone()).collect();
        PiecewiseMap::new(
            cells.iter().map(|c| c.1).collect(),
            cells.iter().map(|c| c.2).collect(),
            labels,
        )
        .map(|p| p.with_generator_names(self.generator_names.clone()))
    }

    /// Merge consecutive arcs carrying equal maps.
    pub fn minimize(&self) -> PiecewiseMap {
        let k = self.pieces.len();
        let same = |a: usize, b: usize| self.pieces[a].map.approx_eq(&self.pieces[b].map, MAP_EQ_TOL);
        let keep: Vec<usize> = (0..k).filter(|&j| !same((j + k - 1) % k, j)).collect();
        if keep.len() < 2 {
            return self.clone();
        }
        let breaks = keep.iter().map(|&j| self.pieces[j].arc.start()).collect();
        let maps = keep.iter().map(|&j| self.pieces[j].map).collect();
        let labels = keep
            .iter()
            .map(|&j| self.pieces[j].label.clone())
            .collect::<Option<Vec<_>>>();
        PiecewiseMap::new(breaks, maps, labels)
            .expect("merging arcs keeps a valid partition")
            .with_generator_names(self.generator_names.clone())
    }

    /// Smallest `n ≤ MAX_PERIOD` with `A^n(z) = z` within [`PERIOD_TOL`].
    pub fn period_of(&self, z: Complex64) -> Option<usize> {
        let mut w = z;
        for n in 1..=MAX_PERIOD {
            w = self.snap(self.evaluate_z(w));
            if (w - z).norm() <= PERIOD_TOL {
                return Some(n);
            }
        }
        None
    }

    /// One-sided derivatives of the return map at a periodic point.
    pub fn one_sided_multipliers(&self, z: Complex64) -> Result<Multipliers, CircleMapError> {
        let period = self
            .period_of(z)
            .ok_or_else(|| CircleMapError::NotPeriodic(BoundaryPoint::Disk(z).to_string()))?;
        let side_product = |start: Side| {
            let mut side = start;
            let mut x = self.snap(z);
            let mut prod = 1.0;
            for _ in 0..period {
                let piece = &self.pieces[self.locate_side(x, side)];
                prod *= piece.map.circle_derivative(BoundaryPoint::Disk(x));
                x = self.snap(piece.map.apply_disk(x));
                if piece.map.is_anti() {
                    side = side.flip();
                }
            }
            prod
        };
        Ok(Multipliers {
            period,
            right: side_product(Side::Right),
            left: side_product(Side::Left),
        })
    }

    /// Periodicity and one-sided classification of every break point.
    pub fn classify_break_points(&self) -> BreakPointReport {
        let entries = self
            .pieces
            .iter()
            .map(|p| {
                let z = p.arc.start();
                match self.one_sided_multipliers(z) {
                    Ok(m) => BreakPointEntry {
                        point: z,
                        period: Some(m.period),
                        right: Some(m.right),
                        left: Some(m.left),
                        class: classify_multipliers(m.right, m.left),
                    },
                    Err(_) => BreakPointEntry {
                        point: z,
                        period: None,
                        right: None,
                        left: None,
                        class: BreakPointClass::Aperiodic,
                    },
                }
            })
            .collect();
        BreakPointReport { entries }
    }

    /// Maximum angular diameter of the rank-`n` cylinders for
    /// `n = 1..=depth`; passes when strictly decreasing and the last value
    /// is below `tol`.
    pub fn expansivity_proxy(&self, depth: usize, tol: f64) -> Result<ExpansivityProxy, CircleMapError> {
        let m = self.check_markov()?;
        let diameters = (1..=depth)
            .map(|n| self.max_cylinder_diameter(&m, n))
            .collect::<Result<Vec<_>, _>>()?;
        let decreasing = diameters.windows(2).all(|w| w[1] < w[0]);
        let passed = decreasing && diameters.last().is_some_and(|&d| d < tol);
        Ok(ExpansivityProxy {
            depth,
            tol,
            diameters,
            passed,
        })
    }

    fn max_cylinder_diameter(&self, m: &TransitionMatrix, n: usize) -> Result<f64, CircleMapError> {
        struct Node {
            diam: f64,
            depth: usize,
            last: usize,
            h: MoebiusMap,
        }
        impl PartialEq for Node {
            fn eq(&self, o: &Self) -> bool {
                self.diam == o.diam
            }
        }
        impl Eq for Node {}
        impl PartialOrd for Node {
            fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
                Some(self.cmp(o))
            }
        }
        impl Ord for Node {
            fn cmp(&self, o: &Self) -> Ordering {
                self.diam.total_cmp(&o.diam)
            }
        }
        let mut heap = BinaryHeap::new();
        for (i, p) in self.pieces.iter().enumerate() {
            heap.push(Node {
                diam: p.arc.length(),
                depth: 1,
                last: i,
                h: MoebiusMap::identity(Model::Disk),
            });
        }
        while let Some(node) = heap.pop() {
            if node.depth == n {
                return Ok(node.diam);
            }
            let h = node.h.compose(&self.pieces[node.last].map.inverse())?;
            for (a, p) in self.pieces.iter().enumerate() {
                if m.entries[node.last][a] == 1 {
                    let arc = p.arc.image(&h)?;
                    heap.push(Node {
                        diam: arc.length(),
                        depth: node.depth + 1,
                        last: a,
                        h,
                    });
                }
            }
        }
        Ok(0.0)
    }

    /// The ideal polygon on the break points and the exterior pieces of the
    /// closed disk, one per arc, each bounded by the arc and the geodesic
    /// joining its endpoints.
    pub fn fundamental_domain(&self) -> Result<FundamentalDomain, CircleMapError> {
        let polygon = IdealPolygon::new(self.break_points())?;
        let exterior = self
            .pieces
            .iter()
            .map(|p| Ok((p.arc, Geodesic::disk(p.arc.start(), p.arc.end())?)))
            .collect::<Result<Vec<_>, CircleMapError>>()?;
        Ok(FundamentalDomain { polygon, exterior })
    }

    /// Serialize to the JSON schema `{"breaks", "pieces", "labels"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let labels = if self.pieces.iter().all(|p| p.label.is_some()) {
            self.label_strings()
        } else {
            Vec::new()
        };
        serde_json::to_value(PiecewiseJson {
            breaks: self.pieces.iter().map(|p| p.arc.start_turn()).collect(),
            pieces: self.pieces.iter().map(|p| p.map).collect(),
            labels,
            generators: self.generator_names.clone(),
        })
        .expect("serializable")
    }

    /// Load from the JSON schema produced by [`PiecewiseMap::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<Self, CircleMapError> {
        let j: PiecewiseJson =
            serde_json::from_value(v.clone()).map_err(|e| CircleMapError::BadPieces(e.to_string()))?;
        let labels = if j.labels.is_empty() {
            None
        } else {
            Some(
                j.labels
                    .iter()
                    .map(|s| FreeWord::parse_with(s, &j.generators))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| CircleMapError::BadPieces(e.to_string()))?,
            )
        };
        Ok(
            PiecewiseMap::new(j.breaks.iter().map(|&t| from_turn(t)).collect(), j.pieces, labels)?
                .with_generator_names(j.generators),
        )
    }
}

/// Discontinuities found by [`PiecewiseMap::check_continuity`].
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityReport {
    /// Break points where the adjacent pieces disagree.
    pub discontinuities: Vec<BoundaryPoint>,
}

impl ContinuityReport {
    /// Whether the map is continuous.
    pub fn passed(&self) -> bool {
        self.discontinuities.is_empty()
    }
}

/// A 0/1 transition matrix over an ordered list of arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionMatrix {
    /// Entries `M[j][l]`.
    pub entries: Vec<Vec<u8>>,
    /// Original arc index of each row and column.
    pub order: Vec<usize>,
}

impl TransitionMatrix {
    /// Size `k`.
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Row sums.
    pub fn row_sums(&self) -> Vec<usize> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| x as usize).sum())
            .collect()
    }

    /// Rows and columns reordered so that new index `i` is old index
    /// `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> TransitionMatrix {
        let entries = perm
            .iter()
            .map(|&a| perm.iter().map(|&b| self.entries[a][b]).collect())
            .collect();
        TransitionMatrix {
            entries,
            order: perm.iter().map(|&i| self.order[i]).collect(),
        }
    }

    /// All admissible words of length `n` in lexicographic order.
    pub fn admissible_words(&self, n: usize) -> Vec<Vec<usize>> {
        let k = self.size();
        let mut words: Vec<Vec<usize>> = (0..k).map(|i| vec![i]).collect();
        for _ in 1..n {
            let mut next = Vec::with_capacity(words.len() * 2);
            for w in &words {
                let last = *w.last().unwrap();
                for a in 0..k {
                    if self.entries[last][a] == 1 {
                        let mut v = w.clone();
                        v.push(a);
                        next.push(v);
                    }
                }
            }
            words = next;
        }
        if n == 0 {
            words.clear();
        }
        words
    }

    /// CSV with a header row of arc indices.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("arc");
        for o in &self.order {
            s.push_str(&format!(",{o}"));
        }
        s.push('\n');
        for (o, row) in self.order.iter().zip(&self.entries) {
            s.push_str(&o.to_string());
            for x in row {
                s.push_str(&format!(",{x}"));
            }
            s.push('\n');
        }
        s
    }
}

/// Period and one-sided multipliers of a periodic point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Multipliers {
    /// Exact period.
    pub period: usize,
    /// `(A^n)′(x⁺)`.
    pub right: f64,
    /// `(A^n)′(x⁻)`.
    pub left: f64,
}

/// Classification of a break point by its one-sided multipliers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BreakPointClass {
    /// Both multipliers equal 1.
    SymmetricallyParabolic,
    /// Both multipliers equal and greater than 1.
    SymmetricallyHyperbolic,
    /// Both greater than 1 but different.
    AsymmetricallyHyperbolic,
    /// Hyperbolic on one side, parabolic on the other.
    Mixed,
    /// Parabolic on the right, attracting on the left.
    RightParabolic,
    /// Parabolic on the left, attracting on the right.
    LeftParabolic,
    /// At least one side attracting and no side parabolic.
    Attracting,
    /// Not periodic within the search bound.
    Aperiodic,
}

impl fmt::Display for BreakPointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("serializable");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

/// Classify a pair of one-sided multipliers at tolerance [`MULTIPLIER_TOL`].
pub fn classify_multipliers(right: f64, left: f64) -> BreakPointClass {
    let par = |x: f64| (x - 1.0).abs() <= MULTIPLIER_TOL;
    let hyp = |x: f64| x > 1.0 + MULTIPLIER_TOL;
    match (par(right), par(left), hyp(right), hyp(left)) {
        (true, true, _, _) => BreakPointClass::SymmetricallyParabolic,
        (_, _, true, true) => {
            if (right - left).abs() <= MULTIPLIER_TOL * right.max(left) {
                BreakPointClass::SymmetricallyHyperbolic
            } else {
                BreakPointClass::AsymmetricallyHyperbolic
            }
        }
        (true, false, _, true) | (false, true, true, _) => BreakPointClass::Mixed,
        (true, false, _, false) => BreakPointClass::RightParabolic,
        (false, true, false, _) => BreakPointClass::LeftParabolic,
        _ => BreakPointClass::Attracting,
    }
}

/// One row of a [`BreakPointReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct BreakPointEntry {
    /// The break point.
    pub point: Complex64,
    /// Period, if periodic within the bound.
    pub period: Option<usize>,
    /// Right multiplier.
    pub right: Option<f64>,
    /// Left multiplier.
    pub left: Option<f64>,
    /// Classification.
    pub class: BreakPointClass,
}

/// Classification of all break points.
#[derive(Debug, Clone, PartialEq)]
pub struct BreakPointReport {
    /// One entry per break point, in arc order.
    pub entries: Vec<BreakPointEntry>,
}

impl BreakPointReport {
    /// Whether no periodic break point is asymmetrically hyperbolic.
    pub fn passed(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.class != BreakPointClass::AsymmetricallyHyperbolic)
    }

    /// CSV with header `turn,period,right,left,class`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("turn,period,right,left,class\n");
        let opt = |x: Option<f64>| x.map(|v| format!("{v:.12}")).unwrap_or_default();
        for e in &self.entries {
            s.push_str(&format!(
                "{:.15},{},{},{},{}\n",
                turn_of(e.point),
                e.period.map(|p| p.to_string()).unwrap_or_default(),
                opt(e.right),
                opt(e.left),
                e.class
            ));
        }
        s
    }
}

/// Result of the refinement-diameter proxy for expansivity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansivityProxy {
    /// Deepest rank examined.
    pub depth: usize,
    /// Threshold for the deepest rank.
    pub tol: f64,
    /// Maximum cylinder diameter in turns for ranks `1..=depth`.
    pub diameters: Vec<f64>,
    /// Strictly decreasing and final value below `tol`.
    pub passed: bool,
}

/// An ideal polygon, vertices in strict counter-clockwise order.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPolygon {
    vertices: Vec<Complex64>,
}

impl IdealPolygon {
    /// Validate the cyclic order of the vertices.
    pub fn new(vertices: Vec<Complex64>) -> Result<Self, CircleMapError> {
        let k = vertices.len();
        if k < 2 {
            return Err(CircleMapError::BadBreaks("polygon needs two vertices".into()));
        }
        let turns: Vec<f64> = vertices.iter().map(|z| turn_of(*z)).collect();
        let total: f64 = (0..k).map(|j| ccw_turns(turns[j], turns[(j + 1) % k])).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(CircleMapError::BadBreaks("polygon vertices out of order".into()));
        }
        Ok(IdealPolygon { vertices })
    }

    /// The vertices.
    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    /// Edges as geodesics between consecutive vertices.
    pub fn edges(&self) -> Vec<Geodesic> {
        let k = self.vertices.len();
        (0..k)
            .map(|j| Geodesic::disk(self.vertices[j], self.vertices[(j + 1) % k]).expect("distinct vertices"))
            .collect()
    }
}

/// Fundamental domain data of a piecewise map.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalDomain {
    /// Ideal polygon on the break points.
    pub polygon: IdealPolygon,
    /// Complementary pieces: each arc with its bounding geodesic.
    pub exterior: Vec<(Arc, Geodesic)>,
}

/// Status of one mateability item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ItemStatus {
    /// Verified.
    Pass,
    /// Refuted.
    Fail,
    /// Passed a bounded heuristic search.
    HeuristicPass,
    /// Passed the refinement-diameter proxy.
    ProxyPass,
    /// Heuristic search neither confirmed nor refuted.
    Inconclusive,
    /// Could not be assessed (missing group data).
    NotAssessed,
}

impl ItemStatus {
    /// Whether the status counts as passing.
    pub fn is_pass(&self) -> bool {
        matches!(
            self,
            ItemStatus::Pass | ItemStatus::HeuristicPass | ItemStatus::ProxyPass
        )
    }
}

/// One item of the mateability report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportItem {
    /// Item number 1..5.
    pub item: usize,
    /// Short name.
    pub name: String,
    /// Outcome.
    pub status: ItemStatus,
    /// Human-readable detail.
    pub detail: String,
}

/// The five mateability conditions evaluated on a piecewise map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MateabilityReport {
    /// Items 1 to 5 in order.
    pub items: Vec<ReportItem>,
}

impl MateabilityReport {
    /// Whether all five items pass.
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status.is_pass())
    }

    /// The item with the given number.
    pub fn item(&self, n: usize) -> &ReportItem {
        &self.items[n - 1]
    }
}

impl fmt::Display for MateabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for it in &self.items {
            let st = serde_json::to_value(it.status).expect("serializable");
            writeln!(
                f,
                "item {} {:<28} {:<15} {}",
                it.item,
                it.name,
                st.as_str().unwrap_or("?"),
                it.detail
            )?;
        }
        Ok(())
    }
}

/// Evaluate the five mateability items. Orbit equivalence (item 1) needs
/// the group; without it the item is reported as not assessed.
pub fn mateability_report(
    pm: &PiecewiseMap,
    group: Option<&GroupPresentation>,
    oe_depth: usize,
) -> MateabilityReport {
    let mut items = Vec::with_capacity(5);

    let (st1, d1) = match group {
        Some(g) if pm.labels().is_some() => match orbit_equivalence_heuristic(pm, g, oe_depth, 100) {
            OeVerdict::HeuristicPass { pairs } => (
                ItemStatus::HeuristicPass,
                format!("{pairs} random pairs joined within depth {oe_depth}"),
            ),
            OeVerdict::FailWitness(w) => (ItemStatus::Fail, w.to_string()),
            OeVerdict::Inconclusive { unmatched } => (
                ItemStatus::Inconclusive,
                format!("{unmatched} pairs without a witness at depth {oe_depth}"),
            ),
        },
        _ => (ItemStatus::NotAssessed, "no labeled group data".into()),
    };
    items.push(ReportItem {
        item: 1,
        name: "orbit equivalence".into(),
        status: st1,
        detail: d1,
    });

    let cont = pm.check_continuity();
    items.push(ReportItem {
        item: 2,
        name: "piecewise analytic".into(),
        status: if cont.passed() {
            ItemStatus::Pass
        } else {
            ItemStatus::Fail
        },
        detail: if cont.passed() {
            format!("{} Möbius pieces, continuous", pm.len())
        } else {
            format!("{} discontinuities", cont.discontinuities.len())
        },
    });

    let degree = pm.covering_degree();
    let proxy = pm.expansivity_proxy(8, 0.1);
    let (st3, d3) = match (&degree, &proxy) {
        (Ok(d), Ok(p)) if d.abs() > 1 && p.passed => (
            ItemStatus::ProxyPass,
            format!(
                "degree {d}; max rank-8 diameter {:.3e} turns",
                p.diameters.last().copied().unwrap_or(0.0)
            ),
        ),
        (Ok(d), Ok(p)) => (
            ItemStatus::Fail,
            format!("degree {d}; proxy {}", if p.passed { "passed" } else { "failed" }),
        ),
        (Ok(d), Err(e)) => (ItemStatus::Fail, format!("degree {d}; {e}")),
        (Err(e), _) => (ItemStatus::Fail, e.to_string()),
    };
    items.push(ReportItem {
        item: 3,
        name: "expansive covering, degree>1".into(),
        status: st3,
        detail: d3,
    });

    let markov = pm.check_markov();
    items.push(ReportItem {
        item: 4,
        name: "Markov".into(),
        status: if markov.is_ok() {
            ItemStatus::Pass
        } else {
            ItemStatus::Fail
        },
        detail: match &markov {
            Ok(m) => format!("{}x{} transition matrix", m.size(), m.size()),
            Err(e) => e.to_string(),
        },
    });

    let bp = pm.classify_break_points();
    let periodic = bp.entries.iter().filter(|e| e.period.is_some()).count();
    items.push(ReportItem {
        item: 5,
        name: "no asym. hyperbolic break".into(),
        status: if bp.passed() {
            ItemStatus::Pass
        } else {
            ItemStatus::Fail
        },
        detail: format!("{periodic} periodic break points classified"),
    });

    MateabilityReport { items }
}
