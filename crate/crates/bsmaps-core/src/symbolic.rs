//! Subshifts of finite type, Perron data, Parry measures, topological
//! entropy, the coding map from cylinders to arcs, and the bounded-depth
//! grand-orbit search used as an orbit-equivalence heuristic.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::GroupPresentation;
use crate::circle_maps::{Arc, CircleMapError, PiecewiseMap, TransitionMatrix};
use crate::freegroup::FreeWord;
use crate::moebius::{Model, MoebiusMap};

/// Iteration cap for [`perron`].
pub const PERRON_MAX_ITER: usize = 200_000;

/// Numeric tolerance used to match points in [`grand_orbit_search`].
pub const ORBIT_MATCH_TOL: f64 = 1e-8;

/// Largest depth accepted by [`grand_orbit_search`].
pub const MAX_ORBIT_DEPTH: usize = 5;

/// Errors raised by the symbolic layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymbolicError {
    /// Power iteration did not settle.
    #[error("power iteration did not converge in {0} steps")]
    NotConverged(usize),
    /// The matrix is not irreducible.
    #[error("transition matrix is reducible")]
    Reducible,
    /// A word uses a forbidden transition or an unknown symbol.
    #[error("word {0:?} is not admissible")]
    Inadmissible(Vec<usize>),
    /// Exact masses need constant row and column sums.
    #[error("matrix does not have constant row and column sums")]
    NotUniform,
    /// No fixed point of the period block lies in its cylinder.
    #[error("no periodic point with itinerary {0:?}")]
    NoPeriodicPoint(Vec<usize>),
    /// Underlying circle-map failure.
    #[error(transparent)]
    Circle(#[from] CircleMapError),
}

/// A one-sided subshift of finite type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sft {
    matrix: TransitionMatrix,
}

impl Sft {
    /// Subshift defined by a transition matrix.
    pub fn new(matrix: TransitionMatrix) -> Self {
        Sft { matrix }
    }

    /// Subshift from raw 0/1 rows.
    pub fn from_rows(entries: Vec<Vec<u8>>) -> Self {
        let k = entries.len();
        Sft {
            matrix: TransitionMatrix {
                entries,
                order: (0..k).collect(),
            },
        }
    }

    /// Full shift on `m` symbols.
    pub fn full(m: usize) -> Self {
        Sft::from_rows(vec![vec![1; m]; m])
    }

    /// Alphabet size.
    pub fn alphabet(&self) -> usize {
        self.matrix.size()
    }

    /// The transition matrix.
    pub fn matrix(&self) -> &TransitionMatrix {
        &self.matrix
    }

    /// Whether `a → b` is allowed.
    pub fn allowed(&self, a: usize, b: usize) -> bool {
        self.matrix.entries[a][b] == 1
    }

    /// Whether a word is admissible.
    pub fn is_admissible(&self, word: &[usize]) -> bool {
        let k = self.alphabet();
        !word.is_empty() && word.iter().all(|&a| a < k) && word.windows(2).all(|w| self.allowed(w[0], w[1]))
    }

    /// All admissible words of length `n` in lexicographic order.
    pub fn admissible_words(&self, n: usize) -> Vec<Vec<usize>> {
        self.matrix.admissible_words(n)
    }

    /// Whether every symbol reaches every other symbol.
    pub fn is_irreducible(&self) -> bool {
        let k = self.alphabet();
        (0..k).all(|s| {
            let mut seen = vec![false; k];
            let mut stack = vec![s];
            while let Some(a) = stack.pop() {
                for b in 0..k {
                    if self.allowed(a, b) && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            seen.iter().all(|&x| x)
        })
    }

    /// Common row sum and column sum, if both are constant.
    pub fn uniform_degree(&self) -> Option<usize> {
        let rows = self.matrix.row_sums();
        let k = self.alphabet();
        let cols: Vec<usize> = (0..k)
            .map(|j| (0..k).map(|i| self.matrix.entries[i][j] as usize).sum())
            .collect();
        let r = rows[0];
        (rows.iter().all(|&x| x == r) && cols.iter().all(|&x| x == r)).then_some(r)
    }
}

/// A cylinder set `[w_1 ... w_n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cylinder {
    word: Vec<usize>,
}

impl Cylinder {
    /// Validate a word against a subshift.
    pub fn new(sft: &Sft, word: Vec<usize>) -> Result<Self, SymbolicError> {
        if sft.is_admissible(&word) {
            Ok(Cylinder { word })
        } else {
            Err(SymbolicError::Inadmissible(word))
        }
    }

    /// The defining word.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Rank (word length).
    pub fn rank(&self) -> usize {
        self.word.len()
    }
}

/// Perron eigenvalue with positive right and left eigenvectors normalized to
/// sum 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Perron {
    /// Leading eigenvalue.
    pub lambda: f64,
    /// Right eigenvector `A v = λ v`.
    pub right: Vec<f64>,
    /// Left eigenvector `u A = λ u`.
    pub left: Vec<f64>,
}

fn power_iterate(
    k: usize,
    apply: impl Fn(&[f64]) -> Vec<f64>,
    tol: f64,
) -> Result<(f64, Vec<f64>), SymbolicError> {
    let mut v = vec![1.0 / k as f64; k];
    let mut lambda = 0.0;
    for _ in 0..PERRON_MAX_ITER {
        // Iterating A + I keeps the spectrum shift-invariant and removes
        // periodicity of the leading eigenvalue.
        let w: Vec<f64> = apply(&v).iter().zip(&v).map(|(a, b)| a + b).collect();
        let s: f64 = w.iter().sum();
        if s <= 0.0 {
            return Err(SymbolicError::Reducible);
        }
        let w: Vec<f64> = w.iter().map(|x| x / s).collect();
        let next = s - 1.0;
        let diff = v.iter().zip(&w).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if diff <= tol && (next - lambda).abs() <= tol * next.abs().max(1.0) {
            return Ok((next, v));
        }
        lambda = next;
    }
    Err(SymbolicError::NotConverged(PERRON_MAX_ITER))
}

/// Perron data of an irreducible 0/1 matrix by power iteration.
pub fn perron(matrix: &TransitionMatrix, tol: f64) -> Result<Perron, SymbolicError> {
    let sft = Sft::new(matrix.clone());
    if !sft.is_irreducible() {
        return Err(SymbolicError::Reducible);
    }
    let k = matrix.size();
    let a = &matrix.entries;
    let (lambda, right) = power_iterate(
        k,
        |v| {
            (0..k)
                .map(|i| (0..k).map(|j| a[i][j] as f64 * v[j]).sum())
                .collect()
        },
        tol,
    )?;
    let (_, left) = power_iterate(
        k,
        |u| {
            (0..k)
                .map(|j| (0..k).map(|i| u[i] * a[i][j] as f64).sum())
                .collect()
        },
        tol,
    )?;
    Ok(Perron { lambda, right, left })
}

/// A stationary Markov measure on a subshift.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkovMeasure {
    /// Stationary vector.
    pub pi: Vec<f64>,
    /// Transition probabilities.
    pub p: Vec<Vec<f64>>,
}

impl MarkovMeasure {
    /// Mass of a cylinder; zero for inadmissible words.
    pub fn cylinder_mass(&self, word: &[usize]) -> f64 {
        let k = self.pi.len();
        if word.is_empty() {
            return 1.0;
        }
        if word.iter().any(|&a| a >= k) {
            return 0.0;
        }
        word.windows(2)
            .fold(self.pi[word[0]], |m, w| m * self.p[w[0]][w[1]])
    }
}

/// The Parry (maximal-entropy) measure: `P_ij = A_ij v_j / (λ v_i)`,
/// `π_i ∝ u_i v_i`.
pub fn parry_measure(sft: &Sft) -> Result<MarkovMeasure, SymbolicError> {
    let per = perron(sft.matrix(), 1e-14)?;
    let k = sft.alphabet();
    let a = &sft.matrix().entries;
    let p = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| a[i][j] as f64 * per.right[j] / (per.lambda * per.right[i]))
                .collect()
        })
        .collect();
    let raw: Vec<f64> = (0..k).map(|i| per.left[i] * per.right[i]).collect();
    let s: f64 = raw.iter().sum();
    Ok(MarkovMeasure {
        pi: raw.iter().map(|x| x / s).collect(),
        p,
    })
}

/// Exact Parry mass `1/(k·r^{n−1})` of a rank-`n` cylinder when all row and
/// column sums equal `r`; zero for inadmissible words.
pub fn exact_cylinder_mass(sft: &Sft, word: &[usize]) -> Result<BigRational, SymbolicError> {
    let r = sft.uniform_degree().ok_or(SymbolicError::NotUniform)?;
    if !sft.is_admissible(word) {
        return Ok(BigRational::zero());
    }
    let denom = BigInt::from(sft.alphabet()) * BigInt::from(r).pow(word.len() as u32 - 1);
    Ok(BigRational::new(BigInt::one(), denom))
}

/// Topological entropy `ln λ`.
pub fn entropy(sft: &Sft) -> Result<f64, SymbolicError> {
    Ok(perron(sft.matrix(), 1e-14)?.lambda.ln())
}

/// Subshift of the Markov partition of a piecewise map.
pub fn sft_of(pm: &PiecewiseMap) -> Result<Sft, SymbolicError> {
    Ok(Sft::new(pm.check_markov()?))
}

/// The arc `ψ([w]) = I_{w_1} ∩ A^{-1}(I_{w_2}) ∩ ...`.
pub fn coding_map(pm: &PiecewiseMap, word: &[usize]) -> Result<Arc, SymbolicError> {
    let m = pm.check_markov()?;
    Ok(pm.cylinder(&m, word)?.0)
}

fn holomorphic_fixed_points(f: &MoebiusMap) -> Vec<Complex64> {
    let [a, b, c, d] = f.matrix();
    let scale = a.norm() + b.norm() + c.norm() + d.norm();
    if c.norm() <= 1e-14 * scale {
        // Affine in the disk chart: fixed point -b/(a-d) when finite.
        if (a - d).norm() <= 1e-14 * scale {
            return Vec::new();
        }
        return vec![-b / (a - d)];
    }
    let bq = d - a;
    let disc = (bq * bq + 4.0 * b * c).sqrt();
    vec![(-bq + disc) / (2.0 * c), (-bq - disc) / (2.0 * c)]
}

/// The point with itinerary `prefix · period^∞`. The periodic part is the
/// attracting boundary fixed point of the inverse branch of the period
/// block; `tol` bounds how far that point may sit outside the block's
/// cylinder.
pub fn point_of_itinerary(
    pm: &PiecewiseMap,
    prefix: &[usize],
    period: &[usize],
    tol: f64,
) -> Result<Complex64, SymbolicError> {
    let m = pm.check_markov()?;
    let sft = Sft::new(m.clone());
    let mut cyc = period.to_vec();
    cyc.push(period[0]);
    let mut full = prefix.to_vec();
    full.extend_from_slice(&cyc);
    if period.is_empty() || !sft.is_admissible(&cyc) || !sft.is_admissible(&full) {
        return Err(SymbolicError::Inadmissible(full));
    }
    let pieces = pm.pieces();
    let branch = |word: &[usize]| -> Result<MoebiusMap, SymbolicError> {
        let mut h = MoebiusMap::identity(Model::Disk);
        for &i in word {
            h = h
                .compose(&pieces[i].map.inverse())
                .map_err(CircleMapError::from)?;
        }
        Ok(h)
    };
    let mut block = branch(period)?;
    if block.is_anti() {
        block = block.compose(&block).map_err(CircleMapError::from)?;
    }
    let arc = pm.cylinder(&m, &cyc)?.0;
    let x = holomorphic_fixed_points(&block)
        .into_iter()
        .filter(|z| (z.norm() - 1.0).abs() <= 1e-6)
        .map(|z| z / z.norm())
        .filter(|z| arc.contains_closed(*z, tol.max(1e-12)))
        .min_by(|p, q| {
            block
                .circle_derivative(crate::moebius::BoundaryPoint::Disk(*p))
                .total_cmp(&block.circle_derivative(crate::moebius::BoundaryPoint::Disk(*q)))
        })
        .ok_or_else(|| SymbolicError::NoPeriodicPoint(period.to_vec()))?;
    Ok(branch(prefix)?.apply_disk(x))
}

/// Confirmed witness that `γ·x` and `x` share a grand orbit:
/// `A^m(γ·x) = A^n(x)` with `V_m·γ = W_n` in the free group.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitWitness {
    /// Steps taken from `γ·x`.
    pub m: usize,
    /// Steps taken from `x`.
    pub n: usize,
    /// Word `V_m` realized by the first orbit.
    pub left: FreeWord,
    /// Word `W_n` realized by the second orbit.
    pub right: FreeWord,
}

fn orbit_words(pm: &PiecewiseMap, start: Complex64, depth: usize) -> Vec<(Complex64, FreeWord)> {
    let mut out = Vec::with_capacity(depth + 1);
    let mut z = start;
    let mut w = FreeWord::identity();
    out.push((z, w.clone()));
    for _ in 0..depth {
        let piece = &pm.pieces()[pm.locate(z)];
        let label = piece.label.clone().unwrap_or_default();
        w = label.mul(&w);
        z = piece.map.apply_disk(z);
        out.push((z, w.clone()));
    }
    out
}

/// Search `m, n ≤ depth` (in increasing `m + n`) for `A^m(γx) = A^n(x)`
/// numerically, confirming each hit by the free-group identity of the
/// visited piece labels.
pub fn grand_orbit_search(
    pm: &PiecewiseMap,
    group: &GroupPresentation,
    gamma: &FreeWord,
    x: Complex64,
    depth: usize,
) -> Option<OrbitWitness> {
    let depth = depth.min(MAX_ORBIT_DEPTH);
    let y = group.evaluate_word(gamma).apply_disk(x);
    let ys = orbit_words(pm, y, depth);
    let xs = orbit_words(pm, x, depth);
    for s in 0..=2 * depth {
        for m in 0..=s.min(depth) {
            let n = s - m;
            if n > depth {
                continue;
            }
            let (ym, vm) = &ys[m];
            let (xn, wn) = &xs[n];
            if (ym - xn).norm() <= ORBIT_MATCH_TOL && vm.mul(gamma) == *wn {
                return Some(OrbitWitness {
                    m,
                    n,
                    left: vm.clone(),
                    right: wn.clone(),
                });
            }
        }
    }
    None
}

/// Short human-readable name of a circle point (exact for `±1`, `±i`).
pub fn point_name(z: Complex64) -> String {
    const T: f64 = 1e-9;
    let named = [
        (Complex64::new(1.0, 0.0), "1"),
        (Complex64::new(-1.0, 0.0), "-1"),
        (Complex64::new(0.0, 1.0), "i"),
        (Complex64::new(0.0, -1.0), "-i"),
    ];
    for (p, s) in named {
        if (z - p).norm() <= T {
            return s.to_string();
        }
    }
    format!("({:.9}{:+.9}i)", z.re, z.im)
}

/// Rigorous refutation of orbit equivalence: `y = γ·x` with `x` and `y`
/// periodic in distinct cycles, so their forward orbits never meet.
#[derive(Debug, Clone, PartialEq)]
pub struct RefutationWitness {
    /// The generator word.
    pub gamma: String,
    /// The periodic point `x`.
    pub x: Complex64,
    /// The periodic point `γ·x`.
    pub y: Complex64,
    /// Period of `x`.
    pub period_x: usize,
    /// Period of `y`.
    pub period_y: usize,
}

impl fmt::Display for RefutationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = (point_name(self.x), point_name(self.y));
        let fixed = |p: usize| {
            if p == 1 {
                "fixed".to_string()
            } else {
                format!("period {p}")
            }
        };
        write!(
            f,
            "{}({x})={y}; A({x}) {} and A({y}) {} in distinct cycles",
            self.gamma,
            fixed(self.period_x),
            fixed(self.period_y)
        )
    }
}

/// Three-valued orbit-equivalence verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum OeVerdict {
    /// Every sampled pair was joined by a confirmed witness.
    HeuristicPass {
        /// Number of pairs tested.
        pairs: usize,
    },
    /// A rigorous refutation witness was found.
    FailWitness(RefutationWitness),
    /// Some sampled pairs found no witness within the depth.
    Inconclusive {
        /// Number of pairs without a witness.
        unmatched: usize,
    },
}

fn cycle_of(pm: &PiecewiseMap, x: Complex64, period: usize) -> Vec<Complex64> {
    let mut out = vec![x];
    let mut z = x;
    for _ in 1..period {
        z = pm.snap(pm.evaluate_z(z));
        out.push(z);
    }
    out
}

/// Search for a refutation witness among periodic break points and periodic
/// points of period at most two.
pub fn refutation_search(pm: &PiecewiseMap, group: &GroupPresentation) -> Option<RefutationWitness> {
    let mut candidates: Vec<Complex64> = pm.break_points();
    if let Ok(m) = pm.check_markov() {
        for len in 1..=2 {
            for w in m.admissible_words(len) {
                if let Ok(z) = point_of_itinerary(pm, &[], &w, 1e-9) {
                    candidates.push(z);
                }
            }
        }
    }
    let gens = group.generator_words_symmetric();
    for x in candidates {
        let x = pm.snap(x);
        let Some(px) = pm.period_of(x) else { continue };
        let cx = cycle_of(pm, x, px);
        for (gamma, f) in &gens {
            let y = pm.snap(f.apply_disk(x));
            let Some(py) = pm.period_of(y) else { continue };
            if cx.iter().all(|c| (c - y).norm() > 1e-7) {
                return Some(RefutationWitness {
                    gamma: gamma.display_with(group.names()),
                    x,
                    y,
                    period_x: px,
                    period_y: py,
                });
            }
        }
    }
    None
}

/// Bounded-depth orbit-equivalence heuristic: first a rigorous refutation
/// search, then a grand-orbit search on `samples` deterministic
/// (point, generator) pairs.
pub fn orbit_equivalence_heuristic(
    pm: &PiecewiseMap,
    group: &GroupPresentation,
    depth: usize,
    samples: usize,
) -> OeVerdict {
    if let Some(w) = refutation_search(pm, group) {
        return OeVerdict::FailWitness(w);
    }
    let gens = group.generator_words_symmetric();
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let mut unmatched = 0;
    for s in 0..samples {
        let t = (0.5 + s as f64 * golden).fract();
        let x = crate::moebius::from_turn(t);
        let (gamma, _) = &gens[s % gens.len()];
        if grand_orbit_search(pm, group, gamma, x, depth).is_none() {
            unmatched += 1;
        }
    }
    if unmatched == 0 {
        OeVerdict::HeuristicPass { pairs: samples }
    } else {
        OeVerdict::Inconclusive { unmatched }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_shift_entropy() {
        let e = entropy(&Sft::full(5)).unwrap();
        assert!((e - 5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn one_by_one_identity() {
        let p = perron(Sft::full(1).matrix(), 1e-14).unwrap();
        assert!((p.lambda - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reducible_matrix_rejected() {
        let s = Sft::from_rows(vec![vec![1, 1], vec![0, 1]]);
        assert!(!s.is_irreducible());
        assert_eq!(perron(s.matrix(), 1e-12), Err(SymbolicError::Reducible));
    }

    #[test]
    fn golden_mean_shift_parry_measure() {
        let s = Sft::from_rows(vec![vec![1, 1], vec![1, 0]]);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((entropy(&s).unwrap() - phi.ln()).abs() < 1e-12);
        let mu = parry_measure(&s).unwrap();
        // Stationarity and row sums.
        for j in 0..2 {
            let v: f64 = (0..2).map(|i| mu.pi[i] * mu.p[i][j]).sum();
            assert!((v - mu.pi[j]).abs() < 1e-10);
        }
        assert!(mu.p.iter().all(|r| (r.iter().sum::<f64>() - 1.0).abs() < 1e-12));
        assert_eq!(mu.cylinder_mass(&[1, 1]), 0.0);
        assert!(exact_cylinder_mass(&s, &[0]).is_err());
    }

    #[test]
    fn exact_mass_full_shift() {
        let s = Sft::full(3);
        let m = exact_cylinder_mass(&s, &[0, 2, 1]).unwrap();
        assert_eq!(m, BigRational::new(BigInt::one(), BigInt::from(27)));
    }
}
