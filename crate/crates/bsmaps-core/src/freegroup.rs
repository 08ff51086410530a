//! Reduced words in a free group, Cayley balls for arbitrary finite
//! generating sets, cones, Patterson-Sullivan partial measures, Poincaré
//! series and boundary-cylinder correspondences.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::symbolic::Sft;

/// Upper bound on the number of elements a Cayley ball may hold.
pub const MAX_BALL_ELEMENTS: usize = 10_000_000;

/// Errors raised by free-group computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FreeGroupError {
    /// The Cayley ball would exceed [`MAX_BALL_ELEMENTS`].
    #[error("Cayley ball of radius {radius} exceeds {MAX_BALL_ELEMENTS} elements")]
    BallOverflow {
        /// Radius that overflowed.
        radius: usize,
    },
    /// A generating set is empty, contains the identity or repeats a word.
    #[error("invalid generating set: {0}")]
    InvalidGenSet(String),
    /// A query needs distances beyond the computed ball.
    #[error("ball radius {radius} does not cover a word of length > {radius}")]
    RadiusInsufficient {
        /// Radius of the ball that was queried.
        radius: usize,
    },
    /// A word string could not be parsed.
    #[error("cannot parse word {0:?}")]
    Parse(String),
    /// Admissible cylinders and sphere elements disagree.
    #[error("cylinder/sphere mismatch at radius {radius}: {cylinders} cylinders, {sphere} sphere elements")]
    Mismatch {
        /// Radius compared.
        radius: usize,
        /// Number of admissible rank-r words.
        cylinders: usize,
        /// Number of radius-r sphere elements.
        sphere: usize,
    },
}

/// A reduced word. Letter `+j` is the basis generator `a_j` and `-j` its
/// inverse (`j ≥ 1`). The word `[l1, l2, ..., ln]` is the product
/// `l1 · l2 ⋯ ln`, so as a map it applies `ln` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    /// The empty word.
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    /// A single generator letter.
    pub fn letter(l: i32) -> Self {
        assert!(l != 0, "letter 0 is not a generator");
        FreeWord(vec![l])
    }

    /// Freely reduce an arbitrary letter sequence.
    pub fn from_letters(letters: &[i32]) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    /// The reduced letters.
    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    /// Word length in the basis.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether this is the identity.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product `self · other`.
    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    /// Inverse word.
    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Largest generator index used.
    pub fn max_generator(&self) -> usize {
        self.0
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Render with generator names, e.g. `h*g^-1`; the identity is `1`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&l| {
                let idx = l.unsigned_abs() as usize;
                let name = names.get(idx - 1).cloned().unwrap_or_else(|| format!("a{idx}"));
                if l < 0 {
                    format!("{name}^-1")
                } else {
                    name
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Parse the format produced by [`FreeWord::display_with`]. Unknown
    /// names of the form `a<j>` are accepted as generator `j`.
    pub fn parse_with(s: &str, names: &[String]) -> Result<FreeWord, FreeGroupError> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(FreeWord::identity());
        }
        let mut letters = Vec::new();
        for tok in s.split('*') {
            let tok = tok.trim();
            let (name, inv) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let idx = match names.iter().position(|n| n == name) {
                Some(p) => p + 1,
                None => name
                    .strip_prefix('a')
                    .and_then(|r| r.parse::<usize>().ok())
                    .filter(|&j| j >= 1)
                    .ok_or_else(|| FreeGroupError::Parse(s.to_string()))?,
            };
            let l = idx as i32;
            letters.push(if inv { -l } else { l });
        }
        Ok(FreeWord::from_letters(&letters))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

/// A finite generating set of a free group of the given rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSet {
    rank: usize,
    elements: Vec<FreeWord>,
}

impl GenSet {
    /// Validate and wrap a list of generators.
    pub fn new(rank: usize, elements: Vec<FreeWord>) -> Result<Self, FreeGroupError> {
        if elements.is_empty() {
            return Err(FreeGroupError::InvalidGenSet("empty".into()));
        }
        let mut seen = HashSet::new();
        for e in &elements {
            if e.is_empty() {
                return Err(FreeGroupError::InvalidGenSet("contains the identity".into()));
            }
            if e.max_generator() > rank {
                return Err(FreeGroupError::InvalidGenSet(format!(
                    "{e} uses a letter beyond rank {rank}"
                )));
            }
            if !seen.insert(e.clone()) {
                return Err(FreeGroupError::InvalidGenSet(format!("repeated element {e}")));
            }
        }
        Ok(GenSet { rank, elements })
    }

    /// The standard symmetric set `{a_1^{±1}, ..., a_d^{±1}}`.
    pub fn standard(d: usize) -> Self {
        let elements = (1..=d as i32)
            .flat_map(|j| [FreeWord::letter(j), FreeWord::letter(-j)])
            .collect();
        GenSet::new(d, elements).expect("standard set is valid")
    }

    /// The six-element set `{g^{±1}, h^{±1}, g·h^{-1}, h·g^{-1}}` of the
    /// rank-2 free group, with `g = a_1` and `h = a_2`.
    pub fn hbs() -> Self {
        let w = FreeWord::from_letters;
        GenSet::new(
            2,
            vec![w(&[1]), w(&[-1]), w(&[2]), w(&[-2]), w(&[1, -2]), w(&[2, -1])],
        )
        .expect("valid")
    }

    /// Rank of the ambient free group.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The generators.
    pub fn elements(&self) -> &[FreeWord] {
        &self.elements
    }
}

/// Breadth-first Cayley ball: every element within `radius` of the identity
/// in the word metric of a generating set, grouped by sphere.
#[derive(Debug, Clone)]
pub struct CayleyBall {
    radius: usize,
    spheres: Vec<Vec<FreeWord>>,
    dist: HashMap<FreeWord, usize>,
}

impl CayleyBall {
    /// Run the BFS to the given radius.
    pub fn build(gs: &GenSet, radius: usize) -> Result<Self, FreeGroupError> {
        let mut dist = HashMap::new();
        dist.insert(FreeWord::identity(), 0usize);
        let mut spheres = vec![vec![FreeWord::identity()]];
        for r in 1..=radius {
            let mut next = Vec::new();
            for w in &spheres[r - 1] {
                for s in gs.elements() {
                    let v = w.mul(s);
                    if !dist.contains_key(&v) {
                        dist.insert(v.clone(), r);
                        next.push(v);
                        if dist.len() > MAX_BALL_ELEMENTS {
                            return Err(FreeGroupError::BallOverflow { radius: r });
                        }
                    }
                }
            }
            next.sort();
            spheres.push(next);
        }
        Ok(CayleyBall {
            radius,
            spheres,
            dist,
        })
    }

    /// Radius of the ball.
    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Elements at distance exactly `r`, sorted.
    pub fn sphere(&self, r: usize) -> &[FreeWord] {
        &self.spheres[r]
    }

    /// Word-metric length of `w`, if it lies in the ball.
    pub fn length(&self, w: &FreeWord) -> Option<usize> {
        self.dist.get(w).copied()
    }

    /// `d(g, h) = |g^{-1} h|`, if it lies in the ball.
    pub fn distance(&self, g: &FreeWord, h: &FreeWord) -> Option<usize> {
        self.length(&g.inverse().mul(h))
    }

    /// Whether `h` lies in the cone of `g`: `|h| = |g| + d(g, h)`. Both
    /// elements must lie in the ball; a distance beyond the radius exceeds
    /// `|h| − |g|` and so rules membership out.
    pub fn cone_membership(&self, g: &FreeWord, h: &FreeWord) -> Result<bool, FreeGroupError> {
        let err = FreeGroupError::RadiusInsufficient { radius: self.radius };
        let lg = self.length(g).ok_or_else(|| err.clone())?;
        let lh = self.length(h).ok_or(err)?;
        Ok(self.distance(g, h).is_some_and(|dgh| lh == lg + dgh))
    }
}

/// Sphere sizes `|S_0|, ..., |S_rmax|`.
pub fn sphere_sizes(gs: &GenSet, rmax: usize) -> Result<Vec<u64>, FreeGroupError> {
    let ball = CayleyBall::build(gs, rmax)?;
    Ok((0..=rmax).map(|r| ball.sphere(r).len() as u64).collect())
}

/// Finite-radius and (when detected) exact volume entropy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeEntropy {
    /// `ln(|S_rmax| / |S_{rmax-1}|)`.
    pub finite_ratio: f64,
    /// `ln q` when the sphere sizes are exactly geometric with integer or
    /// rational ratio `q` from radius 2 on.
    pub exact: Option<f64>,
}

/// Volume entropy of a generating set from its sphere sizes.
pub fn volume_entropy(gs: &GenSet, rmax: usize) -> Result<VolumeEntropy, FreeGroupError> {
    let rmax = rmax.max(2);
    let s = sphere_sizes(gs, rmax)?;
    let finite_ratio = (s[rmax] as f64 / s[rmax - 1] as f64).ln();
    let geometric = (3..=rmax).all(|r| s[r] as u128 * s[r - 2] as u128 == (s[r - 1] as u128).pow(2));
    Ok(VolumeEntropy {
        finite_ratio,
        exact: geometric.then(|| (s[2] as f64 / s[1] as f64).ln()),
    })
}

/// Partial Poincaré sum `Σ_{r ≤ rmax} |S_r| e^{-s r}`.
pub fn poincare_partial(gs: &GenSet, s: f64, rmax: usize) -> Result<f64, FreeGroupError> {
    let sizes = sphere_sizes(gs, rmax)?;
    Ok(sizes
        .iter()
        .enumerate()
        .map(|(r, &n)| n as f64 * (-s * r as f64).exp())
        .sum())
}

/// Outcome of the geometric ratio test on a Poincaré series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesVerdict {
    /// `e^{-s} · growth < 1` on the tail.
    Converges,
    /// `e^{-s} · growth > 1` on the tail.
    Diverges,
    /// The test is not decisive.
    Undecided,
}

fn tail_ratios(sizes: &[u64]) -> Vec<f64> {
    let rmax = sizes.len() - 1;
    let from = (rmax / 2).max(2);
    (from..=rmax)
        .map(|r| sizes[r] as f64 / sizes[r - 1] as f64)
        .collect()
}

/// Ratio test for `Σ |S_r| e^{-s r}` using the growth ratios on the upper
/// half of the radius range.
pub fn poincare_ratio_test(gs: &GenSet, s: f64, rmax: usize) -> Result<SeriesVerdict, FreeGroupError> {
    let sizes = sphere_sizes(gs, rmax.max(4))?;
    let ratios = tail_ratios(&sizes);
    let q = (-s).exp();
    Ok(if ratios.iter().all(|r| q * r < 1.0) {
        SeriesVerdict::Converges
    } else if ratios.iter().all(|r| q * r > 1.0) {
        SeriesVerdict::Diverges
    } else {
        SeriesVerdict::Undecided
    })
}

/// Bracket `[s_low, s_high]` for the critical exponent: the ratio test
/// certifies divergence at `s_low` and convergence at `s_high`.
pub fn critical_exponent_bracket(gs: &GenSet, rmax: usize, eps: f64) -> Result<(f64, f64), FreeGroupError> {
    let sizes = sphere_sizes(gs, rmax.max(4))?;
    let ratios = tail_ratios(&sizes);
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    Ok((lo.ln() - eps, hi.ln() + eps))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pow_int(b: i64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(b), e)
}

/// Mass of the cone at a length-`r` element of `F_d` (standard generating
/// set) under the weighted measure on the ball of radius `n + r`:
/// `(1 / (1 + 2d(n+r)/(2d−1))) · ((n+1) / (2d−1)^r)`. The cone of the
/// identity is the whole group, so `r = 0` gives 1.
pub fn ps_partial_cone_mass(d: usize, n: usize, r: usize) -> BigRational {
    if r == 0 {
        return BigRational::one();
    }
    let q = 2 * d as i64 - 1;
    let total = BigRational::one() + rat(2 * d as i64 * (n + r) as i64, q);
    let cone = BigRational::new(BigInt::from(n as i64 + 1), pow_int(q, r));
    cone / total
}

/// Limit `n → ∞` of [`ps_partial_cone_mass`]: `1 / (2d (2d−1)^{r−1})`.
pub fn ps_limit_cone_mass(d: usize, r: usize) -> BigRational {
    if r == 0 {
        return BigRational::one();
    }
    let q = 2 * d as i64 - 1;
    BigRational::new(BigInt::one(), BigInt::from(2 * d as i64) * pow_int(q, r - 1))
}

/// Weighted mass of the cone at `g` inside the ball of radius `n_total`,
/// counting elements directly: each `h` carries weight `(2d−1)^{-|h|}`.
/// Used as an independent check of [`ps_partial_cone_mass`].
pub fn cone_mass_by_count(
    ball: &CayleyBall,
    g: &FreeWord,
    weight_base: i64,
) -> Result<BigRational, FreeGroupError> {
    let mut total = BigRational::zero();
    let mut cone = BigRational::zero();
    for r in 0..=ball.radius() {
        let w = BigRational::new(BigInt::one(), pow_int(weight_base, r));
        for h in ball.sphere(r) {
            total += &w;
            if ball.cone_membership(g, h)? {
                cone += &w;
            }
        }
    }
    Ok(cone / total)
}

/// Result of pairing radius-`r` sphere elements with rank-`r` cylinders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderCorrespondence {
    /// Radius compared.
    pub radius: usize,
    /// Number of radius-`r` elements.
    pub sphere_count: usize,
    /// Number of admissible rank-`r` words.
    pub cylinder_count: usize,
    /// Whether `[i_1 ... i_r] ↦ ℓ(i_1)^{-1} ⋯ ℓ(i_r)^{-1}` is a bijection
    /// from admissible words onto the sphere.
    pub bijective: bool,
}

/// Check that radius-`r` sphere elements of `gs` correspond to rank-`r`
/// cylinders of `sft`, where arc `i` carries the piece label `labels[i]`:
/// the cylinder `[i_1 ... i_r]` is sent to `labels[i_1]^{-1} ⋯ labels[i_r]^{-1}`.
pub fn boundary_cylinder_counts(
    gs: &GenSet,
    sft: &Sft,
    labels: &[FreeWord],
    r: usize,
) -> Result<CylinderCorrespondence, FreeGroupError> {
    let ball = CayleyBall::build(gs, r)?;
    let sphere: HashSet<&FreeWord> = ball.sphere(r).iter().collect();
    let words = sft.admissible_words(r);
    let mut images = HashSet::new();
    let mut all_in_sphere = true;
    for w in &words {
        let g = w
            .iter()
            .fold(FreeWord::identity(), |acc, &i| acc.mul(&labels[i].inverse()));
        all_in_sphere &= sphere.contains(&g);
        images.insert(g);
    }
    let out = CylinderCorrespondence {
        radius: r,
        sphere_count: sphere.len(),
        cylinder_count: words.len(),
        bijective: all_in_sphere && images.len() == words.len() && images.len() == sphere.len(),
    };
    if out.sphere_count != out.cylinder_count {
        return Err(FreeGroupError::Mismatch {
            radius: r,
            cylinders: out.cylinder_count,
            sphere: out.sphere_count,
        });
    }
    Ok(out)
}
